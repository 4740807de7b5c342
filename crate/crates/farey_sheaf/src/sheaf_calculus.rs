//! Class-level calculus of coherent sheaves on the Fargues–Fontaine curve.
//!
//! A stable sheaf is recorded by its primitive vector v = (degree, rank);
//! torsion lives at the single point ∞ with vector (m, 0). Hom and Ext¹ are
//! described by Dim pairs (dimension, height) as for Banach–Colmez spaces.

use crate::continued_fractions::{bounded_quotients, c_theta, CThetaStatus};
use crate::error::{Error, Result};
use crate::exact_numbers::{compare_irrationals, compare_theta_rational, IrrationalNumber, ReducedFraction};
use crate::farey_geometry::bottom;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// The class of 𝒪(d/r): a stable bundle (r ≥ 1, gcd(d, r) = 1) or torsion of degree d at ∞ (r = 0, d ≥ 1).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClass", into = "RawClass")]
pub struct StableClass {
    d: BigInt,
    r: BigInt,
}

#[derive(Serialize, Deserialize)]
struct RawClass {
    #[serde(with = "crate::bigjson")]
    d: BigInt,
    #[serde(with = "crate::bigjson")]
    r: BigInt,
}

impl TryFrom<RawClass> for StableClass {
    type Error = Error;
    fn try_from(c: RawClass) -> Result<Self> {
        StableClass::new(c.d, c.r)
    }
}

impl From<StableClass> for RawClass {
    fn from(c: StableClass) -> Self {
        RawClass { d: c.d, r: c.r }
    }
}

impl StableClass {
    pub fn new(d: impl Into<BigInt>, r: impl Into<BigInt>) -> Result<Self> {
        let (d, r) = (d.into(), r.into());
        if r.is_negative() {
            return Err(Error::invalid("rank must be nonnegative"));
        }
        if r.is_zero() {
            if !d.is_positive() {
                return Err(Error::invalid("torsion needs positive degree"));
            }
        } else if !d.gcd(&r).is_one() {
            return Err(Error::invalid(format!("({d}, {r}) is not primitive")));
        }
        Ok(Self { d, r })
    }

    /// 𝒪(λ) for λ ∈ Q∞; λ = 1/0 gives the degree-one torsion sheaf.
    pub fn from_slope(lam: &ReducedFraction) -> Self {
        Self { d: lam.numer().clone(), r: lam.denom().clone() }
    }

    pub fn torsion(m: impl Into<BigInt>) -> Result<Self> {
        Self::new(m, 0)
    }

    pub fn degree(&self) -> &BigInt {
        &self.d
    }

    pub fn rank(&self) -> &BigInt {
        &self.r
    }

    pub fn is_torsion(&self) -> bool {
        self.r.is_zero()
    }

    pub fn vector(&self) -> (BigInt, BigInt) {
        (self.d.clone(), self.r.clone())
    }

    /// Slope d/r, with every torsion class at 1/0.
    pub fn slope(&self) -> ReducedFraction {
        ReducedFraction::new(self.d.clone(), self.r.clone()).expect("nonzero vector")
    }

    /// Primitive in Z²: always for bundles, only degree one for torsion.
    pub fn is_primitive(&self) -> bool {
        !self.is_torsion() || self.d.is_one()
    }
}

impl fmt::Display for StableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}/{})", self.d, self.r)
    }
}

impl fmt::Debug for StableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for StableClass {
    type Err = Error;

    /// `O(d/r)`, `d/r` or an integer; `m/0` is torsion of degree m.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix("O(").and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let bad = || Error::Parse(format!("expected a class d/r, got {s:?}"));
        match inner.split_once('/') {
            Some((d, r)) => {
                Self::new(d.trim().parse::<BigInt>().map_err(|_| bad())?, r.trim().parse::<BigInt>().map_err(|_| bad())?)
            }
            None => Self::new(inner.parse::<BigInt>().map_err(|_| bad())?, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub class: StableClass,
    /// 0 or 1.
    pub shift: u8,
    #[serde(with = "crate::bigjson")]
    pub mult: BigInt,
}

/// A finite direct sum of shifted stable sheaves.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SheafClass {
    pub summands: Vec<Summand>,
}

impl SheafClass {
    pub fn push(&mut self, class: StableClass, shift: u8, mult: impl Into<BigInt>) -> Result<()> {
        let mult = mult.into();
        if shift > 1 || !mult.is_positive() {
            return Err(Error::invalid("shift must be 0 or 1 and multiplicity positive"));
        }
        self.summands.push(Summand { class, shift, mult });
        Ok(())
    }

    /// v(E) = Σ mult·(−1)^shift·(d, r).
    pub fn vector(&self) -> (BigInt, BigInt) {
        let mut v = (BigInt::zero(), BigInt::zero());
        for s in &self.summands {
            let k = if s.shift == 0 { s.mult.clone() } else { -&s.mult };
            v.0 += &k * s.class.degree();
            v.1 += &k * s.class.rank();
        }
        v
    }

    /// Membership in the heart cut at θ: unshifted summands have slope > θ, shifted ones slope < θ.
    pub fn in_heart(&self, theta: &IrrationalNumber) -> Result<bool> {
        for s in &self.summands {
            let above = compare_theta_rational(theta, &s.class.slope())? == Ordering::Less;
            if above != (s.shift == 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimPair {
    #[serde(with = "crate::bigjson")]
    pub dim: BigInt,
    #[serde(with = "crate::bigjson")]
    pub ht: BigInt,
}

impl DimPair {
    pub fn new(dim: impl Into<BigInt>, ht: impl Into<BigInt>) -> Self {
        Self { dim: dim.into(), ht: ht.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }
}

impl Add for DimPair {
    type Output = DimPair;
    fn add(self, o: DimPair) -> DimPair {
        DimPair { dim: self.dim + o.dim, ht: self.ht + o.ht }
    }
}

impl Sub for DimPair {
    type Output = DimPair;
    fn sub(self, o: DimPair) -> DimPair {
        DimPair { dim: self.dim - o.dim, ht: self.ht - o.ht }
    }
}

impl Neg for DimPair {
    type Output = DimPair;
    fn neg(self) -> DimPair {
        DimPair { dim: -self.dim, ht: -self.ht }
    }
}

/// χ(v₁, v₂) = (qr − ps, qs) for v₁ = (p, q), v₂ = (r, s).
pub fn chi_pair(v1: &(BigInt, BigInt), v2: &(BigInt, BigInt)) -> DimPair {
    let ((p, q), (r, s)) = (v1, v2);
    DimPair { dim: q * r - p * s, ht: q * s }
}

/// (Hom, Ext¹) between stable classes, or `None` for two torsion sheaves.
pub fn hom_ext_dims(a: &StableClass, b: &StableClass) -> Option<(DimPair, DimPair)> {
    if a.is_torsion() && b.is_torsion() {
        return None;
    }
    let chi = chi_pair(&a.vector(), &b.vector());
    if a.slope() <= b.slope() {
        Some((chi, DimPair::zero()))
    } else {
        Some((DimPair::zero(), -chi))
    }
}

/// E → F → G → E[1] is minimal iff the slopes form a Farey triangle with F the mediant.
pub fn is_minimal_triangle(e: &StableClass, f: &StableClass, g: &StableClass) -> bool {
    if !(e.is_primitive() && f.is_primitive() && g.is_primitive()) {
        return false;
    }
    let (ve, vf, vg) = (e.vector(), f.vector(), g.vector());
    if vf != (&ve.0 + &vg.0, &ve.1 + &vg.1) {
        return false;
    }
    let (se, sf, sg) = (e.slope(), f.slope(), g.slope());
    se < sf && sf < sg && se.is_farey_neighbor(&sf) && sf.is_farey_neighbor(&sg)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalTriangle {
    pub e: StableClass,
    pub f: StableClass,
    pub g: StableClass,
}

/// All minimal triangles whose classes have rank ≤ max_rank and whose finite
/// slopes lie in [lo, hi]; G may be the degree-one torsion sheaf.
pub fn enumerate_minimal_triangles(max_rank: u32, lo: i64, hi: i64) -> Result<Vec<MinimalTriangle>> {
    if max_rank == 0 || lo > hi {
        return Err(Error::invalid("need max_rank ≥ 1 and lo ≤ hi"));
    }
    let n = max_rank as i64;
    let mut slopes: Vec<(i64, i64)> = Vec::new();
    for q in 1..=n {
        for p in lo * q..=hi * q {
            if p.gcd(&q) == 1 {
                slopes.push((p, q));
            }
        }
    }
    slopes.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    let mut gs = slopes.clone();
    gs.push((1, 0));
    let mut out = Vec::new();
    for (i, e) in slopes.iter().enumerate() {
        for g in &gs[i + 1..] {
            if (e.0 * g.1 - e.1 * g.0).abs() != 1 {
                continue;
            }
            let f = (e.0 + g.0, e.1 + g.1);
            if f.1 > n || f.0 > hi * f.1 {
                continue;
            }
            let (e, f, g) = (StableClass::new(e.0, e.1)?, StableClass::new(f.0, f.1)?, StableClass::new(g.0, g.1)?);
            if is_minimal_triangle(&e, &f, &g) {
                out.push(MinimalTriangle { e, f, g });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassRow {
    pub i: usize,
    /// v(𝒪(β₀)) + Σ_{j≤i} a_{2j+2}·v(𝒪(β_{2j+1})).
    pub partial_sum: StableClassVector,
    /// v(𝒪(β_{2i+2})).
    pub target: StableClassVector,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableClassVector {
    #[serde(with = "crate::bigjson")]
    pub d: BigInt,
    #[serde(with = "crate::bigjson")]
    pub r: BigInt,
}

impl From<(BigInt, BigInt)> for StableClassVector {
    fn from((d, r): (BigInt, BigInt)) -> Self {
        Self { d, r }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassReport {
    pub rows: Vec<KClassRow>,
    pub all_hold: bool,
}

/// Telescoping identity behind the colimit 𝒪(θ⁻): checks each i < depth.
pub fn kclass_colimit_check(theta: &IrrationalNumber, depth: usize) -> Result<KClassReport> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let (mut sd, mut sr) = theta.convergent(0)?;
    let mut rows = Vec::with_capacity(depth);
    for i in 0..depth {
        let a = theta.quotient(2 * i + 2)?;
        let (p, q) = theta.convergent(2 * i as i64 + 1)?;
        sd += &a * p;
        sr += &a * q;
        let target = theta.convergent(2 * i as i64 + 2)?;
        let holds = (sd.clone(), sr.clone()) == target;
        rows.push(KClassRow { i, partial_sum: (sd.clone(), sr.clone()).into(), target: target.into(), holds });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(KClassReport { rows, all_hold })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// 𝒪(θ⁺): limit of surjections between odd convergents.
    Plus,
    /// 𝒪(θ⁻): colimit of injections between even convergents.
    Minus,
}

/// 𝒪(θ^±) up to the choice of transition morphisms, which is kept as an opaque tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitObjectDescriptor {
    pub theta: IrrationalNumber,
    pub side: Side,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub morphisms: String,
}

impl LimitObjectDescriptor {
    pub fn new(theta: &IrrationalNumber, side: Side) -> Self {
        Self { theta: theta.clone(), side, morphisms: String::new() }
    }

    /// Convergent indices used by the (co)limit diagram: even for θ⁻, odd for θ⁺.
    pub fn uses_even_convergents(&self) -> bool {
        self.side == Side::Minus
    }
}

impl fmt::Display for LimitObjectDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.side == Side::Plus { '+' } else { '-' };
        write!(f, "O({}{s})", self.theta)
    }
}

/// Either a stable sheaf or a limit/colimit object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SheafObject {
    Stable(StableClass),
    Limit(LimitObjectDescriptor),
}

impl fmt::Display for SheafObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafObject::Stable(c) => write!(f, "{c}"),
            SheafObject::Limit(l) => write!(f, "{l}"),
        }
    }
}

impl FromStr for SheafObject {
    type Err = Error;

    /// `[a0;…]+` or `[a0;…]-` (optionally wrapped in `O(…)`) for limit objects, else a class.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix("O(").and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if inner.starts_with('[') {
            let side = match inner.chars().last() {
                Some('+') => Side::Plus,
                Some('-') => Side::Minus,
                _ => return Err(Error::Parse(format!("limit object {s:?} needs a trailing + or -"))),
            };
            let theta: IrrationalNumber = inner[..inner.len() - 1].parse()?;
            return Ok(SheafObject::Limit(LimitObjectDescriptor::new(&theta, side)));
        }
        Ok(SheafObject::Stable(t.parse()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoBound {
    pub c_status: CThetaStatus,
    /// c(θ)² when c(θ) is known exactly.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_big")]
    pub bound: Option<BigInt>,
    /// Every partial quotient after a₀ is 1 or 2 (certified for periodic θ, on the prefix otherwise).
    pub in_c2: bool,
    /// Dimensions allowed by the bound (the divisors of c²), or {1, 2, 4} from membership in 𝒞₂ alone.
    #[serde(with = "crate::bigjson::vec")]
    pub possible_dims: Vec<BigInt>,
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

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("bound fits in u64");
    let mut out: Vec<BigInt> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).map(BigInt::from).collect();
    out.sort();
    out.dedup();
    out
}

/// dim_Qp End(𝒪(θ⁻)) divides c(θ)².
pub fn endo_dim_bound(desc: &LimitObjectDescriptor, budget: usize) -> Result<EndoBound> {
    if desc.side != Side::Minus {
        return Err(Error::invalid("the endomorphism bound concerns 𝒪(θ⁻)"));
    }
    let report = c_theta(&desc.theta, budget.max(2))?;
    let depth = desc.theta.available().map(|n| n.saturating_sub(1)).unwrap_or(budget).max(1);
    let in_c2 = bounded_quotients(&desc.theta, depth)?.bound <= BigInt::from(2);
    let bound = report.stabilized().map(|c| c * c);
    let possible_dims = match &bound {
        Some(b) if b.to_u64().is_some_and(|x| x <= 1 << 40) => divisors(b),
        Some(_) => Vec::new(),
        None if in_c2 => vec![1.into(), 2.into(), 4.into()],
        None => Vec::new(),
    };
    Ok(EndoBound { c_status: report.status, bound, in_c2, possible_dims })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vanishing {
    Hom,
    Ext,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFactor {
    pub i: usize,
    /// dim End(𝒪(β_i)) = q_i².
    #[serde(with = "crate::bigjson")]
    pub end_dim: BigInt,
    /// a_{i+1}.
    #[serde(with = "crate::bigjson")]
    pub exponent: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HomReport {
    /// Stable classes: explicit Dim pairs.
    Dims {
        #[serde(with = "crate::bigjson")]
        hom_dim: BigInt,
        #[serde(with = "crate::bigjson")]
        hom_ht: BigInt,
        #[serde(with = "crate::bigjson")]
        ext1_dim: BigInt,
        #[serde(with = "crate::bigjson")]
        ext1_ht: BigInt,
    },
    /// Hom or all higher Ext vanish.
    Zero { vanishing: Vanishing, clause: String },
    /// End(𝒪(θ⁻)) is a division algebra of dimension dividing c(θ)²; higher Ext vanish.
    FiniteDivisionAlgebraBound {
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_big")]
        bound: Option<BigInt>,
        c_status: CThetaStatus,
    },
    /// 0 → Π End(𝒪(β_i))^{a_{i+1}} → Hom(𝒪(θ⁻), 𝒪(θ⁺)) → C → 0; first factors listed.
    SesWithCQuotient { kernel_factors: Vec<KernelFactor> },
    Unknown { reason: String },
}

fn zero(v: Vanishing, clause: &str) -> HomReport {
    HomReport::Zero { vanishing: v, clause: clause.to_string() }
}

fn unknown(reason: &str) -> HomReport {
    HomReport::Unknown { reason: reason.to_string() }
}

/// Is γ above θ? Torsion counts as slope ∞.
fn above(theta: &IrrationalNumber, c: &StableClass) -> Result<bool> {
    Ok(compare_theta_rational(theta, &c.slope())? == Ordering::Less)
}

/// Hom/Ext between stable sheaves and limit objects, following the vanishing rules.
/// `budget` bounds the number of quotients examined for c(θ) and the kernel listing.
pub fn hom_classify(x: &SheafObject, y: &SheafObject, budget: usize) -> Result<HomReport> {
    use SheafObject::{Limit, Stable};
    match (x, y) {
        (Stable(a), Stable(b)) => Ok(match hom_ext_dims(a, b) {
            Some((h, e)) => HomReport::Dims { hom_dim: h.dim, hom_ht: h.ht, ext1_dim: e.dim, ext1_ht: e.ht },
            None => unknown("Hom between torsion sheaves is not determined by classes"),
        }),
        (Stable(g), Limit(t)) => Ok(if above(&t.theta, g)? {
            zero(Vanishing::Hom, "Hom(O(γ), O(θ±)) = 0 for γ > θ")
        } else {
            zero(Vanishing::Ext, "Ext^i(O(γ), O(θ±)) = 0 for i ≥ 1 and γ < θ")
        }),
        (Limit(t), Stable(g)) => match t.side {
            Side::Plus => Ok(unknown("no vanishing rule is known with O(θ+) as source")),
            Side::Minus => Ok(if above(&t.theta, g)? {
                zero(Vanishing::Ext, "Ext^i(O(θ-), O(γ)) = 0 for i ≥ 1 and γ > θ")
            } else {
                zero(Vanishing::Hom, "Hom(O(θ-), O(γ)) = 0 for γ < θ")
            }),
        },
        (Limit(s), Limit(t)) => {
            if s.side == Side::Plus {
                return Ok(unknown("no vanishing rule is known with O(θ+) as source"));
            }
            let order = compare_irrationals(&t.theta, &s.theta)?;
            match (order, t.side) {
                (Ordering::Less, _) => Ok(zero(Vanishing::Hom, "Hom(O(θ-), O(θ'±)) = 0 for θ' < θ")),
                (Ordering::Greater, Side::Plus) => Ok(zero(Vanishing::Ext, "Ext^i(O(θ-), O(θ'+)) = 0 for i ≥ 1 and θ' > θ")),
                (Ordering::Greater, Side::Minus) => Ok(zero(Vanishing::Ext, "Ext^i(O(θ-), O(θ'-)) = 0 for i ≥ 1 and θ' ≥ θ")),
                (Ordering::Equal, Side::Minus) => {
                    let report = c_theta(&s.theta, budget.max(2))?;
                    Ok(HomReport::FiniteDivisionAlgebraBound {
                        bound: report.stabilized().map(|c| c * c),
                        c_status: report.status,
                    })
                }
                (Ordering::Equal, Side::Plus) => {
                    let n = budget.min(s.theta.available().map(|a| a.saturating_sub(1)).unwrap_or(budget));
                    let mut kernel_factors = Vec::new();
                    for i in 0..n {
                        let (_, q) = s.theta.convergent(i as i64)?;
                        kernel_factors.push(KernelFactor { i, end_dim: &q * &q, exponent: s.theta.quotient(i + 1)? });
                    }
                    Ok(HomReport::SesWithCQuotient { kernel_factors })
                }
            }
        }
    }
}

/// The image class of a composite of Farey-type morphisms through θ < via₁ < … < θ':
/// among the bottoms of consecutive pairs, the one of least denominator (smaller on ties).
pub fn farey_type_image(theta: &IrrationalNumber, theta_prime: &IrrationalNumber, via: &[IrrationalNumber]) -> Result<StableClass> {
    let chain: Vec<&IrrationalNumber> = std::iter::once(theta).chain(via.iter()).chain(std::iter::once(theta_prime)).collect();
    for w in chain.windows(2) {
        if compare_irrationals(w[0], w[1])? != Ordering::Less {
            return Err(Error::invalid("the chain must increase strictly"));
        }
    }
    let mut best: Option<ReducedFraction> = None;
    for w in chain.windows(2) {
        let b = bottom(w[0], w[1])?;
        best = Some(match best {
            None => b,
            Some(cur) => match b.denom().cmp(cur.denom()) {
                Ordering::Less => b,
                Ordering::Equal if b < cur => b,
                _ => cur,
            },
        });
    }
    Ok(StableClass::from_slope(&best.expect("chain has at least one link")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowKind {
    Surjection,
    Injection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complement {
    /// "kernel" for a surjection, "cokernel" for an injection.
    pub role: String,
    pub class: StableClass,
    #[serde(with = "crate::bigjson")]
    pub mult: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub from: String,
    pub to: String,
    pub kind: ArrowKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Complement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChain {
    /// Odd convergent of θ in (θ, r) with larger denominator than r.
    pub u: ReducedFraction,
    pub r: ReducedFraction,
    /// Even convergent of θ' in (r, θ') with larger denominator than r.
    pub w: ReducedFraction,
    pub links: Vec<ChainLink>,
}

/// Arrow between adjacent-slope bundles a < b: its kind and its kernel or cokernel class.
fn bundle_arrow(a: &ReducedFraction, b: &ReducedFraction) -> Result<(ArrowKind, Complement)> {
    let dp = b.numer() - a.numer();
    let dq = b.denom() - a.denom();
    let kind = if b.denom() >= a.denom() { ArrowKind::Injection } else { ArrowKind::Surjection };
    let (vp, vq, role) = match kind {
        ArrowKind::Injection => (dp, dq, "cokernel"),
        ArrowKind::Surjection => (-dp, -dq, "kernel"),
    };
    let d = vp.gcd(&vq);
    Ok((kind, Complement { role: role.into(), class: StableClass::new(&vp / &d, &vq / &d)?, mult: d }))
}

/// θ⁺ ↠ 𝒪(u) ↠ 𝒪(r) ↪ 𝒪(w) ↪ θ'⁻, exhibiting 𝒪(r) as the image of a morphism 𝒪(θ⁺) → 𝒪(θ'⁻).
pub fn witness_image_chain(theta: &IrrationalNumber, theta_prime: &IrrationalNumber, r: &ReducedFraction) -> Result<WitnessChain> {
    if r.is_infinite()
        || compare_theta_rational(theta, r)? != Ordering::Less
        || compare_theta_rational(theta_prime, r)? != Ordering::Greater
    {
        return Err(Error::invalid("need θ < r < θ'"));
    }
    let mut k = 1i64;
    let u = loop {
        let c = theta.convergent_fraction(k)?;
        if c < *r && c.denom() > r.denom() {
            break c;
        }
        k += 2;
    };
    let mut k = 0i64;
    let w = loop {
        let c = theta_prime.convergent_fraction(k)?;
        if c > *r && c.denom() > r.denom() {
            break c;
        }
        k += 2;
    };
    let (k1, c1) = bundle_arrow(&u, r)?;
    let (k2, c2) = bundle_arrow(r, &w)?;
    let name = |f: &ReducedFraction| StableClass::from_slope(f).to_string();
    let links = vec![
        ChainLink { from: format!("O({theta}+)"), to: name(&u), kind: ArrowKind::Surjection, complement: None },
        ChainLink { from: name(&u), to: name(r), kind: k1, complement: Some(c1) },
        ChainLink { from: name(r), to: name(&w), kind: k2, complement: Some(c2) },
        ChainLink { from: name(&w), to: format!("O({theta_prime}-)"), kind: ArrowKind::Injection, complement: None },
    ];
    Ok(WitnessChain { u, r: r.clone(), w, links })
}

/// b = |q·d − p·r|: multiplicity of the simple object in the image of v = (d, r)
/// in the quotient category at λ = p/q.
pub fn quotient_multiplicity(v: &(BigInt, BigInt), lam: &ReducedFraction) -> BigInt {
    (lam.denom() * &v.0 - lam.numer() * &v.1).abs()
}
