//! Convergents, semiconvergents, the gcd invariant c(θ), the d_i chain and the
//! CRT construction of irrationals whose even denominators keep gaining primes.

use crate::error::{Error, Result};
use crate::exact_numbers::{IrrationalNumber, QuotientSource, ReducedFraction};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentRow {
    pub i: i64,
    pub beta: ReducedFraction,
    /// a_i; absent for the row i = −1.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_big")]
    pub a: Option<BigInt>,
}

mod opt_big {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "crate::bigjson")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(W).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentTable {
    pub theta: IrrationalNumber,
    pub rows: Vec<ConvergentRow>,
}

/// Rows −1..=n of the convergent table.
pub fn convergents(theta: &IrrationalNumber, n: usize) -> Result<ConvergentTable> {
    let mut rows = vec![ConvergentRow { i: -1, beta: ReducedFraction::infinity(), a: None }];
    for i in 0..=n {
        rows.push(ConvergentRow {
            i: i as i64,
            beta: theta.convergent_fraction(i as i64)?,
            a: Some(theta.quotient(i)?),
        });
    }
    Ok(ConvergentTable { theta: theta.clone(), rows })
}

/// β_{i,m} = (p_i + m p_{i+1})/(q_i + m q_{i+1}) for m = 0..=a_{i+2}, valid for i ≥ −1.
pub fn semiconvergents(theta: &IrrationalNumber, i: i64) -> Result<Vec<ReducedFraction>> {
    if i < -1 {
        return Err(Error::invalid("semiconvergent index must be at least -1"));
    }
    let (p0, q0) = theta.convergent(i)?;
    let (p1, q1) = theta.convergent(i + 1)?;
    let a = theta.quotient((i + 2) as usize)?;
    let count = a.to_usize().ok_or_else(|| Error::invalid("partial quotient too large to enumerate"))?;
    (0..=count)
        .map(|m| {
            let m = BigInt::from(m);
            ReducedFraction::new(&p0 + &m * &p1, &q0 + &m * &q1)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CThetaStatus {
    /// c(θ) = c exactly (eventually periodic θ).
    Stabilized {
        #[serde(with = "crate::bigjson")]
        c: BigInt,
    },
    /// Only divisors of c(θ) are known; `last` is the deepest recorded c_i.
    LowerBoundOnly {
        #[serde(with = "crate::bigjson")]
        last: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CValue {
    pub i: usize,
    #[serde(with = "crate::bigjson")]
    pub c: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CThetaReport {
    pub c_values: Vec<CValue>,
    pub status: CThetaStatus,
}

impl CThetaReport {
    pub fn stabilized(&self) -> Option<&BigInt> {
        match &self.status {
            CThetaStatus::Stabilized { c } => Some(c),
            CThetaStatus::LowerBoundOnly { .. } => None,
        }
    }
}

/// Cap on the number of residue states explored when locating the cycle of
/// q_{2i} mod G for periodic θ.
pub const C_THETA_STATE_CAP: usize = 4_000_000;

/// c_i(θ) = gcd(q_{2i}, a_{2i+2}, a_{2i+4}, …) for every i with 2i + 2 ≤ budget, and
/// c(θ) = lim c_i when it can be certified.
///
/// For eventually periodic θ the tail gcd G of even-index quotients is exact,
/// and (phase, q_{2i−1} mod G, q_{2i} mod G) runs through a finite state space.
/// Since c_i | c_{i+1} | G, the eventual value is read off the first repeated state.
/// For a finite prefix the gcds are taken over the available quotients only.
pub fn c_theta(theta: &IrrationalNumber, budget: usize) -> Result<CThetaReport> {
    if budget < 2 {
        return Err(Error::invalid("c_theta needs a budget of at least 2"));
    }
    match theta.source() {
        QuotientSource::FinitePrefix { .. } => {
            let n = theta.available().unwrap_or(0);
            if n < 3 {
                return Err(Error::exhausted(3));
            }
            let top = budget.min(n - 1);
            let mut c_values = Vec::new();
            let mut i = 0;
            while 2 * i + 2 <= top {
                let (_, q) = theta.convergent(2 * i as i64)?;
                let mut g = q;
                let mut k = 2 * i + 2;
                while k < n {
                    g = g.gcd(&theta.quotient(k)?);
                    k += 2;
                }
                c_values.push(CValue { i, c: g });
                i += 1;
            }
            let last = c_values.last().map(|v| v.c.clone()).unwrap_or_else(BigInt::one);
            Ok(CThetaReport { c_values, status: CThetaStatus::LowerBoundOnly { last } })
        }
        QuotientSource::EventuallyPeriodic { preperiod, period } => {
            let pre = preperiod.len();
            let l = period.len();
            // gcd of the even-index quotients that recur forever.
            let mut g_tail = BigInt::zero();
            for j in pre..pre + 2 * l {
                if j % 2 == 0 {
                    g_tail = g_tail.gcd(&theta.quotient(j)?);
                }
            }
            let tail_gcd = |i: usize| -> Result<BigInt> {
                let mut g = g_tail.clone();
                let mut k = 2 * i + 2;
                while k < pre {
                    g = g.gcd(&theta.quotient(k)?);
                    k += 2;
                }
                Ok(g)
            };
            let mut c_values = Vec::new();
            let mut i = 0;
            while 2 * i + 2 <= budget {
                let (_, q) = theta.convergent(2 * i as i64)?;
                c_values.push(CValue { i, c: q.gcd(&tail_gcd(i)?) });
                i += 1;
            }
            let status = match eventual_c(theta, pre, l, &g_tail)? {
                Some(c) => CThetaStatus::Stabilized { c },
                None => CThetaStatus::LowerBoundOnly { last: c_values.last().expect("budget >= 2").c.clone() },
            };
            Ok(CThetaReport { c_values, status })
        }
    }
}

fn eventual_c(theta: &IrrationalNumber, pre: usize, l: usize, g: &BigInt) -> Result<Option<BigInt>> {
    if g.is_one() {
        return Ok(Some(BigInt::one()));
    }
    let start = if pre % 2 == 0 { pre } else { pre + 1 };
    let (_, q_prev) = theta.convergent(start as i64 - 1)?;
    let (_, q_cur) = theta.convergent(start as i64)?;
    let (mut prev, mut cur) = (q_prev.mod_floor(g), q_cur.mod_floor(g));
    let mut k = start;
    let mut seen: HashMap<(usize, BigInt, BigInt), usize> = HashMap::new();
    let mut trail: Vec<BigInt> = Vec::new();
    loop {
        let key = ((k - pre) % l, prev.clone(), cur.clone());
        if let Some(&first) = seen.get(&key) {
            let cycle = &trail[first..];
            let c = cur.gcd(g);
            debug_assert!(cycle.iter().all(|r| r.gcd(g) == c), "c_i must be constant on the cycle");
            return Ok(Some(c));
        }
        if seen.len() >= C_THETA_STATE_CAP {
            return Ok(None);
        }
        seen.insert(key, trail.len());
        trail.push(cur.clone());
        let a1 = theta.quotient(k + 1)?;
        let a2 = theta.quotient(k + 2)?;
        let next = (&a1 * &cur + &prev).mod_floor(g);
        let after = (&a2 * &next + &cur).mod_floor(g);
        prev = next;
        cur = after;
        k += 2;
    }
}

/// d_i = gcd(q_{2i}, a_{2i+2}) for i = 0..n, cross-checked against gcd(q_{2i}, q_{2i+2}).
pub fn d_chain(theta: &IrrationalNumber, n: usize) -> Result<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let (_, q0) = theta.convergent(2 * i as i64)?;
            let (_, q2) = theta.convergent(2 * i as i64 + 2)?;
            let a = theta.quotient(2 * i + 2)?;
            let d = q0.gcd(&a);
            assert_eq!(d, q0.gcd(&q2), "gcd(q_2i, a_2i+2) must equal gcd(q_2i, q_2i+2)");
            assert_eq!(d, a.gcd(&q2), "gcd(q_2i, a_2i+2) must equal gcd(a_2i+2, q_2i+2)");
            Ok(d)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientBound {
    #[serde(with = "crate::bigjson")]
    pub bound: BigInt,
    /// True when the bound holds for the whole expansion.
    pub exact: bool,
    /// Depth up to which the bound was checked (equal to the request for prefixes).
    pub verified_depth: usize,
}

/// max(a_1..a_depth); for eventually periodic θ the global maximum.
pub fn bounded_quotients(theta: &IrrationalNumber, depth: usize) -> Result<QuotientBound> {
    match theta.source() {
        QuotientSource::EventuallyPeriodic { preperiod, period } => {
            let bound = preperiod[1..].iter().chain(period.iter()).max().expect("period is nonempty").clone();
            Ok(QuotientBound { bound, exact: true, verified_depth: depth })
        }
        QuotientSource::FinitePrefix { .. } => {
            if depth == 0 {
                return Err(Error::invalid("depth must be at least 1"));
            }
            let mut bound = BigInt::zero();
            for i in 1..=depth {
                bound = bound.max(theta.quotient(i)?);
            }
            Ok(QuotientBound { bound, exact: false, verified_depth: depth })
        }
    }
}

/// Rule for the odd-index quotients of a constructed θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OddQuotients {
    Constant(u64),
    /// Uniform in 1..=max from a ChaCha8 stream.
    Seeded { seed: u64, max: u64 },
}

impl Default for OddQuotients {
    fn default() -> Self {
        OddQuotients::Constant(1)
    }
}

/// How the fresh prime P_{k+1} is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimePicker {
    /// Smallest prime dividing neither q_{2k} nor q_{2k+1}, searched below `cap`.
    SmallestFresh { cap: u64 },
}

impl Default for PrimePicker {
    fn default() -> Self {
        PrimePicker::SmallestFresh { cap: 1_000_000 }
    }
}

/// Distinct prime factors of |n|, ascending.
pub fn prime_factors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m: BigUint = n.magnitude().clone();
    if m <= BigUint::one() {
        return Ok(Vec::new());
    }
    let (found, rest) = num_prime::nt_funcs::factors(m, None);
    if let Some(rest) = rest {
        let shown = rest.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("*");
        return Err(Error::FactorizationIncomplete(shown));
    }
    Ok(found.into_keys().map(|p| BigInt::from_biguint(Sign::Plus, p)).collect())
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Builds a prefix [a_0; a_1, …, a_{2·depth+2}] such that for every constructed
/// even index 2i: (1) each prime of q_{2i−2} divides a_{2i} exactly once, and
/// (2) q_{2i} has a prime factor not dividing q_{2i−2}.
///
/// Step k picks P = the fresh prime, writes a_{2k+2} = rad(q_{2k})·x with
/// x ≡ −q_{2k+1}⁻¹·q_{2k}/rad(q_{2k}) (mod P) and gcd(x, rad) = 1, which makes P | q_{2k+2}.
pub fn construct_special_theta(
    a0: &BigInt,
    a1: &BigInt,
    a2: &BigInt,
    depth: usize,
    odd: &OddQuotients,
    picker: &PrimePicker,
) -> Result<IrrationalNumber> {
    if !a1.is_positive() || !a2.is_positive() {
        return Err(Error::invalid("a1 and a2 must be positive"));
    }
    let a2_primes = prime_factors(a2)?;
    let rad_a2: BigInt = a2_primes.iter().product();
    if &rad_a2 != a2 {
        return Err(Error::SeedRejected(a2.to_string()));
    }
    let PrimePicker::SmallestFresh { cap } = *picker;
    let mut rng = match odd {
        OddQuotients::Seeded { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        OddQuotients::Constant(_) => None,
    };
    let mut next_odd = || -> BigInt {
        match odd {
            OddQuotients::Constant(c) => BigInt::from((*c).max(1)),
            OddQuotients::Seeded { max, .. } => {
                BigInt::from(rng.as_mut().expect("seeded rng").gen_range(1..=(*max).max(1)))
            }
        }
    };

    let mut quotients = vec![a0.clone(), a1.clone(), a2.clone()];
    // q_1 = a_1, q_2 = a_2 a_1 + 1 (q_0 = 1).
    let mut q_prev = a1.clone();
    let mut q_even = a2 * a1 + BigInt::one();
    let mut primes = prime_factors(&q_even)?;
    for _ in 1..=depth {
        let a_odd = next_odd();
        let q_odd = &a_odd * &q_even + &q_prev;
        quotients.push(a_odd);

        let rad: BigInt = primes.iter().product();
        let big_p = (2..cap)
            .filter(|&c| is_small_prime(c))
            .find(|&c| {
                let c = BigInt::from(c);
                !q_even.is_multiple_of(&c) && !q_odd.is_multiple_of(&c)
            })
            .ok_or(Error::PrimePickerExhausted { cap })?;
        let pb = BigInt::from(big_p);
        let cofactor = &q_even / &rad;
        let inv = mod_inverse(&q_odd.mod_floor(&pb), &pb);
        let x0 = (-(inv * &cofactor)).mod_floor(&pb);
        let mut x = x0;
        while !x.gcd(&rad).is_one() || x.is_zero() {
            x += &pb;
        }
        let a_even = &rad * &x;
        let m = &cofactor + &x * &q_odd;
        let q_next = &a_even * &q_odd + &q_even;
        debug_assert_eq!(q_next, &rad * &m);
        let mut next_primes = primes.clone();
        for p in prime_factors(&m)? {
            if !next_primes.contains(&p) {
                next_primes.push(p);
            }
        }
        next_primes.sort();
        quotients.push(a_even);
        q_prev = q_odd;
        q_even = q_next;
        primes = next_primes;
    }
    let n = quotients.len();
    IrrationalNumber::finite_prefix(quotients, n)
}

/// Inverse of a modulo a prime p (a ≢ 0).
fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}
