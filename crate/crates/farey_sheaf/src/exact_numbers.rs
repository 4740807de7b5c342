//! Exact representations of Q∞ = Q ∪ {1/0}, irrational numbers given by their
//! partial quotients, and the rank-two lattice L_θ = Zθ + Z.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

/// An element p/q of Q∞ in lowest terms with q ≥ 0. Infinity is the unique 1/0.
///
/// The pair (p, q) is also the primitive integral vector (degree, rank) of the
/// stable class with slope p/q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    p: BigInt,
    q: BigInt,
}

impl ReducedFraction {
    /// Builds p/q from any nonzero integer vector, reducing and fixing signs.
    /// Vectors (p, 0) with p ≠ 0 all map to 1/0.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::invalid("0/0 is not an element of Q∞"));
        }
        if q.is_zero() {
            return Ok(Self::infinity());
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        Ok(Self { p: p / &g, q: q / g })
    }

    pub fn infinity() -> Self {
        Self { p: BigInt::one(), q: BigInt::zero() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { p: n.into(), q: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    /// det((p, q), (r, s)) = p·s − r·q.
    pub fn det(&self, other: &Self) -> BigInt {
        &self.p * &other.q - &other.p * &self.q
    }

    /// Farey adjacency: |ps − rq| = 1.
    pub fn is_farey_neighbor(&self, other: &Self) -> bool {
        self.det(other).abs().is_one()
    }

    /// Vector sum (p + r)/(q + s), with ∞ taken as (1, 0).
    pub fn mediant(&self, other: &Self) -> Self {
        Self::new(&self.p + &other.p, &self.q + &other.q).expect("sum of upper half-plane vectors is nonzero")
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            return f64::INFINITY;
        }
        ratio_f64(&self.p, &self.q)
    }
}

/// p/q as a double without overflowing on huge operands.
pub(crate) fn ratio_f64(p: &BigInt, q: &BigInt) -> f64 {
    let shift = p.bits().max(q.bits()).saturating_sub(1000);
    let (p, q) = (p >> shift, q >> shift);
    p.to_f64().unwrap_or(f64::NAN) / q.to_f64().unwrap_or(f64::NAN)
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for ReducedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected a fraction p/q, got {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q).map_err(|_| bad())
            }
            None => Ok(Self::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for ReducedFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ReducedFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where the partial quotients of an irrational number come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientSource {
    /// A quadratic irrational: `preperiod` starts with a_0, then `period` repeats forever.
    EventuallyPeriodic { preperiod: Vec<BigInt>, period: Vec<BigInt> },
    /// A known prefix of an irrational number; only the first `budget` quotients may be used.
    FinitePrefix { quotients: Vec<BigInt>, budget: usize },
}

/// An irrational number θ = [a_0; a_1, a_2, ...] with a thread-safe convergent cache.
#[derive(Clone)]
pub struct IrrationalNumber {
    source: Arc<QuotientSource>,
    memo: Arc<RwLock<Vec<(BigInt, BigInt)>>>,
}

fn check_tail(qs: &[BigInt]) -> Result<()> {
    if qs.iter().any(|a| a < &BigInt::one()) {
        return Err(Error::invalid("partial quotients after a_0 must be positive"));
    }
    Ok(())
}

impl IrrationalNumber {
    pub fn eventually_periodic(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if preperiod.is_empty() {
            return Err(Error::invalid("the preperiod must contain a_0"));
        }
        if period.is_empty() {
            return Err(Error::invalid("an empty period describes a rational number"));
        }
        check_tail(&preperiod[1..])?;
        check_tail(&period)?;
        Ok(Self::from_source(QuotientSource::EventuallyPeriodic { preperiod, period }))
    }

    pub fn finite_prefix(quotients: Vec<BigInt>, budget: usize) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::invalid("a prefix needs at least a_0"));
        }
        check_tail(&quotients[1..])?;
        Ok(Self::from_source(QuotientSource::FinitePrefix { quotients, budget }))
    }

    /// Convenience constructor from small integers: `periodic_i64(&[1], &[2])` is √2.
    pub fn periodic_i64(preperiod: &[i64], period: &[i64]) -> Result<Self> {
        Self::eventually_periodic(
            preperiod.iter().map(|&a| BigInt::from(a)).collect(),
            period.iter().map(|&a| BigInt::from(a)).collect(),
        )
    }

    pub fn prefix_i64(quotients: &[i64]) -> Result<Self> {
        Self::finite_prefix(quotients.iter().map(|&a| BigInt::from(a)).collect(), quotients.len())
    }

    fn from_source(source: QuotientSource) -> Self {
        Self { source: Arc::new(source), memo: Arc::new(RwLock::new(Vec::new())) }
    }

    pub fn source(&self) -> &QuotientSource {
        &self.source
    }

    pub fn is_periodic(&self) -> bool {
        matches!(*self.source, QuotientSource::EventuallyPeriodic { .. })
    }

    /// Same prefix with a different consumption limit. Periodic numbers are unchanged.
    pub fn with_budget(&self, budget: usize) -> Self {
        match &*self.source {
            QuotientSource::FinitePrefix { quotients, .. } => {
                Self::from_source(QuotientSource::FinitePrefix { quotients: quotients.clone(), budget })
            }
            QuotientSource::EventuallyPeriodic { .. } => self.clone(),
        }
    }

    /// Number of usable quotients, or `None` when the expansion is infinite.
    pub fn available(&self) -> Option<usize> {
        match &*self.source {
            QuotientSource::FinitePrefix { quotients, budget } => Some(quotients.len().min(*budget)),
            QuotientSource::EventuallyPeriodic { .. } => None,
        }
    }

    /// The partial quotient a_i.
    pub fn quotient(&self, i: usize) -> Result<BigInt> {
        match &*self.source {
            QuotientSource::EventuallyPeriodic { preperiod, period } => Ok(if i < preperiod.len() {
                preperiod[i].clone()
            } else {
                period[(i - preperiod.len()) % period.len()].clone()
            }),
            QuotientSource::FinitePrefix { quotients, budget } => {
                if i < quotients.len().min(*budget) {
                    Ok(quotients[i].clone())
                } else {
                    Err(Error::exhausted(i + 1))
                }
            }
        }
    }

    /// Convergent (p_i, q_i) for i ≥ −2, with (p_{−2}, q_{−2}) = (0, 1) and (p_{−1}, q_{−1}) = (1, 0).
    pub fn convergent(&self, i: i64) -> Result<(BigInt, BigInt)> {
        if i == -2 {
            return Ok((BigInt::zero(), BigInt::one()));
        }
        if i == -1 {
            return Ok((BigInt::one(), BigInt::zero()));
        }
        assert!(i >= 0, "convergent index must be at least -2");
        let idx = i as usize;
        {
            let memo = self.memo.read().expect("memo lock poisoned");
            if idx < memo.len() {
                return Ok(memo[idx].clone());
            }
        }
        let mut memo = self.memo.write().expect("memo lock poisoned");
        while memo.len() <= idx {
            let k = memo.len();
            let a = self.quotient(k)?;
            let (p1, q1) = if k >= 1 { memo[k - 1].clone() } else { (BigInt::one(), BigInt::zero()) };
            let (p2, q2) = if k >= 2 {
                memo[k - 2].clone()
            } else if k == 1 {
                (BigInt::one(), BigInt::zero())
            } else {
                (BigInt::zero(), BigInt::one())
            };
            memo.push((&a * &p1 + p2, &a * &q1 + q2));
        }
        Ok(memo[idx].clone())
    }

    /// β_i = p_i/q_i as a fraction.
    pub fn convergent_fraction(&self, i: i64) -> Result<ReducedFraction> {
        let (p, q) = self.convergent(i)?;
        ReducedFraction::new(p, q)
    }

    /// Number of convergents currently cached.
    pub fn memoized(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    /// Canonical description used for equality: minimal period, shortest preperiod,
    /// and for prefixes only the usable quotients.
    pub fn canonical(&self) -> QuotientSource {
        match &*self.source {
            QuotientSource::EventuallyPeriodic { preperiod, period } => {
                let l = period.len();
                let d = (1..=l)
                    .find(|d| l % d == 0 && (0..l).all(|j| period[j] == period[j % d]))
                    .unwrap_or(l);
                let mut pre = preperiod.clone();
                let mut per: Vec<BigInt> = period[..d].to_vec();
                while pre.len() > 1 && pre.last() == per.last() {
                    pre.pop();
                    per.rotate_right(1);
                }
                QuotientSource::EventuallyPeriodic { preperiod: pre, period: per }
            }
            QuotientSource::FinitePrefix { quotients, budget } => {
                let n = quotients.len().min(*budget);
                QuotientSource::FinitePrefix { quotients: quotients[..n].to_vec(), budget: n }
            }
        }
    }

    /// Floating-point value from a deep convergent. Rendering and cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let limit = self.available().map(|n| n as i64 - 1).unwrap_or(80);
        let mut best = f64::NAN;
        for i in 0..=limit.max(0) {
            match self.convergent(i) {
                Ok((p, q)) => {
                    best = ratio_f64(&p, &q);
                    if q.bits() > 80 {
                        break;
                    }
                }
                Err(_) => break,
            }
        }
        best
    }

    pub(crate) fn same_source(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source) || self == other
    }
}

impl PartialEq for IrrationalNumber {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source) || self.canonical() == other.canonical()
    }
}

impl Eq for IrrationalNumber {}

fn join(qs: &[BigInt]) -> String {
    qs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for IrrationalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, period) = match &*self.source {
            QuotientSource::EventuallyPeriodic { preperiod, period } => (&preperiod[..], Some(period)),
            QuotientSource::FinitePrefix { quotients, budget } => (&quotients[..quotients.len().min(*budget)], None),
        };
        write!(f, "[{}", head.first().map(|a| a.to_string()).unwrap_or_default())?;
        let tail = if head.len() > 1 { &head[1..] } else { &[][..] };
        if !tail.is_empty() || period.is_some() {
            write!(f, ";{}", join(tail))?;
            if let Some(per) = period {
                if !tail.is_empty() {
                    write!(f, ",")?;
                }
                write!(f, "({})", join(per))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IrrationalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<BigInt>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad partial quotient {t:?} in {whole:?}"))))
        .collect()
}

impl FromStr for IrrationalNumber {
    type Err = Error;

    /// Grammar: `[a0;a1,...,ak,(b1,...,bm)]` (periodic) or `[a0;a1,...,ak]` (finite prefix).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("{why} in {s:?}"));
        let body = compact
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| bad("expected [a0;a1,...]"))?;
        let (a0, rest) = match body.split_once(';') {
            Some((a0, rest)) => (a0, rest),
            None => (body, ""),
        };
        let a0: BigInt = a0.parse().map_err(|_| bad("bad a0"))?;
        if let Some(open) = rest.find('(') {
            let close = rest.rfind(')').ok_or_else(|| bad("unclosed period"))?;
            if close != rest.len() - 1 || close < open {
                return Err(bad("the period must close the expansion"));
            }
            let before = &rest[..open];
            let before = before.strip_suffix(',').unwrap_or(before);
            if !rest[..open].is_empty() && !rest[..open].ends_with(',') {
                return Err(bad("missing comma before the period"));
            }
            let mut pre = vec![a0];
            pre.extend(parse_list(before, s)?);
            let period = parse_list(&rest[open + 1..close], s)?;
            Self::eventually_periodic(pre, period)
        } else {
            let mut qs = vec![a0];
            qs.extend(parse_list(rest, s)?);
            let n = qs.len();
            Self::finite_prefix(qs, n)
        }
    }
}

impl Serialize for IrrationalNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IrrationalNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact order between θ and a rational r (θ ≠ r always holds).
///
/// Lexicographic comparison of continued fractions with the usual parity flip:
/// at the first index where the tails differ, a larger tail means a larger
/// number at even depth and a smaller one at odd depth.
pub fn compare_theta_rational(theta: &IrrationalNumber, r: &ReducedFraction) -> Result<Ordering> {
    if r.is_infinite() {
        return Ok(Ordering::Less);
    }
    let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
    let mut i = 0usize;
    loop {
        let (b, rem) = num.div_mod_floor(&den);
        let a = theta.quotient(i)?;
        // θ's tail at i lies strictly inside (a, a + 1).
        let tail = if rem.is_zero() {
            if a >= b {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else {
            a.cmp(&b)
        };
        if tail != Ordering::Equal {
            return Ok(if i % 2 == 0 { tail } else { tail.reverse() });
        }
        num = den;
        den = rem;
        i += 1;
    }
}

/// Exact order between two irrationals. `Equal` only for identical expansions.
pub fn compare_irrationals(x: &IrrationalNumber, y: &IrrationalNumber) -> Result<Ordering> {
    let bound = match (x.source(), y.source()) {
        (
            QuotientSource::EventuallyPeriodic { preperiod: p1, period: l1 },
            QuotientSource::EventuallyPeriodic { preperiod: p2, period: l2 },
        ) => Some(p1.len().max(p2.len()) + l1.len().lcm(&l2.len())),
        _ => None,
    };
    let mut i = 0usize;
    loop {
        if bound == Some(i) {
            return Ok(Ordering::Equal);
        }
        let a = x.quotient(i)?;
        let b = y.quotient(i)?;
        if a != b {
            let tail = a.cmp(&b);
            return Ok(if i % 2 == 0 { tail } else { tail.reverse() });
        }
        i += 1;
    }
}

/// Integer coordinates (m, n) of m·θ + n, as written in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeCoords {
    #[serde(with = "crate::bigjson")]
    pub m: BigInt,
    #[serde(with = "crate::bigjson")]
    pub n: BigInt,
}

/// The element m·θ + n of L_θ.
#[derive(Clone)]
pub struct ThetaLatticeElement {
    pub m: BigInt,
    pub n: BigInt,
    theta: IrrationalNumber,
}

impl ThetaLatticeElement {
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>, theta: &IrrationalNumber) -> Self {
        Self { m: m.into(), n: n.into(), theta: theta.clone() }
    }

    pub fn zero(theta: &IrrationalNumber) -> Self {
        Self::new(0, 0, theta)
    }

    pub fn theta(&self) -> &IrrationalNumber {
        &self.theta
    }

    pub fn coords(&self) -> LatticeCoords {
        LatticeCoords { m: self.m.clone(), n: self.n.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.n.is_zero()
    }

    /// Sign of m·θ + n, decided exactly.
    pub fn sign(&self) -> Result<Ordering> {
        if self.m.is_zero() {
            return Ok(self.n.cmp(&BigInt::zero()));
        }
        let root = ReducedFraction::new(-&self.n, self.m.clone())?;
        let side = compare_theta_rational(&self.theta, &root)?;
        Ok(if self.m.is_positive() { side } else { side.reverse() })
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.sign()? == Ordering::Greater)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.theta.same_source(&other.theta) {
            Ok(())
        } else {
            Err(Error::MismatchedTheta)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { m: &self.m + &other.m, n: &self.n + &other.n, theta: self.theta.clone() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { m: &self.m - &other.m, n: &self.n - &other.n, theta: self.theta.clone() })
    }

    pub fn neg(&self) -> Self {
        Self { m: -&self.m, n: -&self.n, theta: self.theta.clone() }
    }

    /// Exact comparison of values.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering> {
        self.checked_sub(other)?.sign()
    }

    /// (m·p_k + n·q_k)/q_k for a convergent with q_k² well beyond |m|, so large
    /// coordinates do not cancel in floating point.
    pub fn to_f64(&self) -> f64 {
        let need = 2 * (self.m.bits() + 64);
        let limit = self.theta.available().map(|n| n as i64 - 1).unwrap_or(i64::MAX);
        let mut best = None;
        let mut i = 0;
        while i <= limit {
            match self.theta.convergent(i) {
                Ok((p, q)) => {
                    let done = 2 * q.bits() >= need;
                    best = Some((p, q));
                    if done {
                        break;
                    }
                }
                Err(_) => break,
            }
            i += 1;
        }
        match best {
            Some((p, q)) => ratio_f64(&(&self.m * p + &self.n * &q), &q),
            None => f64::NAN,
        }
    }

    /// Same value with a differently sourced θ (used after a budget change).
    pub fn rebase(&self, theta: &IrrationalNumber) -> Self {
        Self { m: self.m.clone(), n: self.n.clone(), theta: theta.clone() }
    }
}

impl PartialEq for ThetaLatticeElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.theta.same_source(&other.theta)
    }
}

impl Eq for ThetaLatticeElement {}

impl fmt::Debug for ThetaLatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})θ+({})", self.m, self.n)
    }
}

impl Serialize for ThetaLatticeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

/// χ(mθ + n, m'θ + n') = m'n − mn'.
pub fn chi(x: &ThetaLatticeElement, y: &ThetaLatticeElement) -> Result<BigInt> {
    x.check(y)?;
    Ok(&y.m * &x.n - &x.m * &y.n)
}

/// |r|_θ = |qθ − p| as the positive one of (q, −p) and (−q, p). |1/0|_θ = (0, 1).
pub fn theta_norm(r: &ReducedFraction, theta: &IrrationalNumber) -> Result<ThetaLatticeElement> {
    let e = ThetaLatticeElement::new(r.denom().clone(), -r.numer(), theta);
    Ok(if e.is_positive()? { e } else { e.neg() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> IrrationalNumber {
        "[1;(1)]".parse().unwrap()
    }

    fn frac(s: &str) -> ReducedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn fraction_normalization() {
        assert_eq!(ReducedFraction::new(2, -4).unwrap(), frac("-1/2"));
        assert_eq!(ReducedFraction::new(-7, 0).unwrap(), ReducedFraction::infinity());
        assert!(ReducedFraction::new(0, 0).is_err());
        assert_eq!(frac("1/0").to_string(), "1/0");
        assert_eq!(frac("5").to_string(), "5/1");
        assert!(frac("1/0") > frac("1000000/1"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["[1;(1)]", "[1;(2)]", "[0;1,2,(1,3)]", "[3;1,4,1,5]", "[-2;(1,4)]", "[7]"] {
            let x: IrrationalNumber = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("[1;2,(0)]".parse::<IrrationalNumber>().is_err());
        assert!("[1;()]".parse::<IrrationalNumber>().is_err());
        assert!("1;2".parse::<IrrationalNumber>().is_err());
    }

    #[test]
    fn canonical_equality() {
        let a: IrrationalNumber = "[1;(1)]".parse().unwrap();
        let b: IrrationalNumber = "[1;1,1,(1,1)]".parse().unwrap();
        assert_eq!(a, b);
        let c: IrrationalNumber = "[0;1,2,(1,3)]".parse().unwrap();
        let d: IrrationalNumber = "[0;1,2,1,3,(1,3)]".parse().unwrap();
        assert_eq!(c, d);
        assert_ne!(a, c);
    }

    #[test]
    fn compare_examples() {
        let g = golden();
        assert_eq!(compare_theta_rational(&g, &frac("3/2")).unwrap(), Ordering::Greater);
        assert_eq!(compare_theta_rational(&g, &frac("2/1")).unwrap(), Ordering::Less);
        let s2: IrrationalNumber = "[1;(2)]".parse().unwrap();
        assert_eq!(compare_theta_rational(&s2, &frac("1/1")).unwrap(), Ordering::Greater);
        assert_eq!(compare_theta_rational(&s2, &frac("1/0")).unwrap(), Ordering::Less);
    }

    #[test]
    fn prefix_exhaustion_reports_depth() {
        let p = IrrationalNumber::prefix_i64(&[1, 1, 1]).unwrap();
        // 8/5 = [1;1,1,2] needs a_3.
        assert_eq!(compare_theta_rational(&p, &frac("8/5")), Err(Error::PrecisionExhausted { needed: 4 }));
        // 3/2 = [1;2] is decided by a_1.
        assert_eq!(compare_theta_rational(&p, &frac("3/2")).unwrap(), Ordering::Greater);
    }

    #[test]
    fn norm_examples() {
        let g = golden();
        let inf = theta_norm(&ReducedFraction::infinity(), &g).unwrap();
        assert_eq!((inf.m.clone(), inf.n.clone()), (0.into(), 1.into()));
        let one = theta_norm(&frac("1/1"), &g).unwrap();
        assert_eq!((one.m.clone(), one.n.clone()), (1.into(), (-1).into()));
        let two = theta_norm(&frac("2/1"), &g).unwrap();
        assert_eq!((two.m.clone(), two.n.clone()), ((-1).into(), 2.into()));
        assert_eq!(chi(&one, &one).unwrap(), 0.into());
        assert_eq!(chi(&one, &inf).unwrap(), (-1).into());
        assert_eq!(chi(&two, &inf).unwrap(), 1.into());
    }

    #[test]
    fn mismatched_theta() {
        let a = ThetaLatticeElement::new(1, 0, &golden());
        let b = ThetaLatticeElement::new(1, 0, &"[1;(2)]".parse().unwrap());
        assert_eq!(chi(&a, &b), Err(Error::MismatchedTheta));
    }

    #[test]
    fn memo_is_shared_across_threads() {
        let g: IrrationalNumber = "[2;(1,1,1,4)]".parse().unwrap();
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let g = g.clone();
                std::thread::spawn(move || (0..60).map(|i| g.convergent((i * 7 + t) % 60).unwrap()).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert!(g.memoized() >= 60);
        for i in 0..59 {
            let (p0, q0) = g.convergent(i).unwrap();
            let (p1, q1) = g.convergent(i + 1).unwrap();
            let expect = if i % 2 == 0 { -1 } else { 1 };
            assert_eq!(p0 * q1 - p1 * q0, BigInt::from(expect));
        }
    }

    fn arb_theta() -> impl Strategy<Value = IrrationalNumber> {
        (-5i64..6, prop::collection::vec(1i64..6, 0..4), prop::collection::vec(1i64..6, 1..4)).prop_map(
            |(a0, mut pre, per)| {
                pre.insert(0, a0);
                IrrationalNumber::periodic_i64(&pre, &per).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn compare_agrees_with_floats(theta in arb_theta(), p in -200i64..200, q in 1i64..60) {
            let r = ReducedFraction::new(p, q).unwrap();
            let t = theta.to_f64();
            let x = r.to_f64();
            prop_assume!((t - x).abs() > 1e-9);
            let ord = compare_theta_rational(&theta, &r).unwrap();
            prop_assert_eq!(ord, t.partial_cmp(&x).unwrap());
        }

        #[test]
        fn chi_matches_determinant(theta in arb_theta(), p in -50i64..50, q in 0i64..30, r in -50i64..50, s in 0i64..30) {
            prop_assume!(!(p == 0 && q == 0) && !(r == 0 && s == 0));
            let a = ReducedFraction::new(p, q).unwrap();
            let b = ReducedFraction::new(r, s).unwrap();
            let x = theta_norm(&a, &theta).unwrap();
            let y = theta_norm(&b, &theta).unwrap();
            prop_assert!(x.is_positive().unwrap() && y.is_positive().unwrap());
            prop_assert_eq!(chi(&x, &y).unwrap().abs(), a.det(&b).abs());
            prop_assert_eq!(chi(&x, &x).unwrap(), BigInt::zero());
        }

        #[test]
        fn determinant_identity(theta in arb_theta(), n in 0i64..40) {
            let (p0, q0) = theta.convergent(n).unwrap();
            let (p1, q1) = theta.convergent(n + 1).unwrap();
            let expect = if n % 2 == 0 { -1 } else { 1 };
            prop_assert_eq!(p0 * q1 - p1 * q0, BigInt::from(expect));
        }

        #[test]
        fn print_parse_round_trip(theta in arb_theta()) {
            let s = theta.to_string();
            let back: IrrationalNumber = s.parse().unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, theta);
        }

        #[test]
        fn irrational_order_matches_floats(x in arb_theta(), y in arb_theta()) {
            let (a, b) = (x.to_f64(), y.to_f64());
            let ord = compare_irrationals(&x, &y).unwrap();
            if (a - b).abs() > 1e-9 {
                prop_assert_eq!(ord, a.partial_cmp(&b).unwrap());
            }
            prop_assert_eq!(ord == Ordering::Equal, x == y);
        }
    }
}
