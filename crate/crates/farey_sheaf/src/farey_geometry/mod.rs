//! The Farey tessellation seen from an irrational θ: diagrams F_{θ,r}, their
//! L/R types and l/r labels, cutting sequences and the binary trees T_{θ,r}.
//!
//! Everything runs on raw integer vectors v = (p, q) and the linear form
//! f(v) = θq − p, whose sign is decided exactly from the partial quotients.
//! An edge straddling θ is kept as (x, y) with f(x) > 0 > f(y) and
//! det(x, y) = −1; its next triangle toward θ has third vertex x + y.

mod coaster;
mod product;

pub use coaster::{roller_coaster, shortest_path_bundle, CoasterEdge, EdgeClass, PathBundle, RollerCoaster};
pub use product::{bottom, bottom_triangle, crosses, theta_product};

use crate::error::{Error, Result};
use crate::exact_numbers::{compare_irrationals, compare_theta_rational, IrrationalNumber, ReducedFraction, ThetaLatticeElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

pub(crate) type Vec2 = (BigInt, BigInt);

pub(crate) fn raw(r: &ReducedFraction) -> Vec2 {
    (r.numer().clone(), r.denom().clone())
}

pub(crate) fn frac(v: &Vec2) -> ReducedFraction {
    ReducedFraction::new(v.0.clone(), v.1.clone()).expect("walk vectors are nonzero")
}

fn add(a: &Vec2, b: &Vec2) -> Vec2 {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn scale(k: &BigInt, a: &Vec2) -> Vec2 {
    (k * &a.0, k * &a.1)
}

fn neg(a: &Vec2) -> Vec2 {
    (-&a.0, -&a.1)
}

fn det(a: &Vec2, b: &Vec2) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Sign of f(v) = θq − p.
pub(crate) fn side(theta: &IrrationalNumber, v: &Vec2) -> Result<Ordering> {
    ThetaLatticeElement::new(v.1.clone(), -&v.0, theta).sign()
}

/// Largest k with `pred(k)`, for a predicate that is true up to some integer and false after.
pub(crate) fn largest_true(mut pred: impl FnMut(&BigInt) -> Result<bool>) -> Result<BigInt> {
    let (mut lo, mut hi);
    if pred(&BigInt::zero())? {
        lo = BigInt::zero();
        hi = BigInt::one();
        while pred(&hi)? {
            lo = hi.clone();
            hi *= 2;
        }
    } else {
        hi = BigInt::zero();
        lo = BigInt::from(-1);
        while !pred(&lo)? {
            hi = lo.clone();
            lo *= 2;
        }
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        if pred(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// An endpoint of a geodesic: a point of Q∞ or an irrational number.
#[derive(Clone, PartialEq, Eq)]
pub enum Endpoint {
    Rational(ReducedFraction),
    Irrational(IrrationalNumber),
}

impl Endpoint {
    pub fn as_rational(&self) -> Option<&ReducedFraction> {
        match self {
            Endpoint::Rational(r) => Some(r),
            Endpoint::Irrational(_) => None,
        }
    }

    /// Order on the real line with ∞ on top.
    pub fn cmp_point(&self, other: &Endpoint) -> Result<Ordering> {
        match (self, other) {
            (Endpoint::Rational(a), Endpoint::Rational(b)) => Ok(a.cmp(b)),
            (Endpoint::Irrational(t), Endpoint::Rational(r)) => compare_theta_rational(t, r),
            (Endpoint::Rational(r), Endpoint::Irrational(t)) => Ok(compare_theta_rational(t, r)?.reverse()),
            (Endpoint::Irrational(a), Endpoint::Irrational(b)) => compare_irrationals(a, b),
        }
    }

    pub fn cmp_fraction(&self, r: &ReducedFraction) -> Result<Ordering> {
        match self {
            Endpoint::Rational(a) => Ok(a.cmp(r)),
            Endpoint::Irrational(t) => compare_theta_rational(t, r),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::Rational(r) => r.to_f64(),
            Endpoint::Irrational(t) => t.to_f64(),
        }
    }
}

impl From<ReducedFraction> for Endpoint {
    fn from(r: ReducedFraction) -> Self {
        Endpoint::Rational(r)
    }
}

impl From<IrrationalNumber> for Endpoint {
    fn from(t: IrrationalNumber) -> Self {
        Endpoint::Irrational(t)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Rational(r) => write!(f, "{r}"),
            Endpoint::Irrational(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            Ok(Endpoint::Irrational(s.parse()?))
        } else {
            Ok(Endpoint::Rational(s.parse()?))
        }
    }
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Is z strictly inside the boundary arc running anticlockwise (increasing,
/// through ∞) from `from` to `to`?
pub fn in_open_arc(z: &Endpoint, from: &Endpoint, to: &Endpoint) -> Result<bool> {
    let after_from = z.cmp_point(from)? == Ordering::Greater;
    let before_to = z.cmp_point(to)? == Ordering::Less;
    Ok(if from.cmp_point(to)? == Ordering::Less { after_from && before_to } else { after_from || before_to })
}

pub fn is_farey_geodesic(a: &ReducedFraction, b: &ReducedFraction) -> bool {
    a != b && a.is_farey_neighbor(b)
}

/// Three pairwise Farey-adjacent vertices, stored in increasing order (∞ last).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ReducedFraction>", into = "Vec<ReducedFraction>")]
pub struct FareyTriangle {
    vertices: [ReducedFraction; 3],
}

impl FareyTriangle {
    pub fn new(a: ReducedFraction, b: ReducedFraction, c: ReducedFraction) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort();
        if !(is_farey_geodesic(&v[0], &v[1]) && is_farey_geodesic(&v[1], &v[2]) && is_farey_geodesic(&v[0], &v[2])) {
            return Err(Error::invalid(format!("{}, {}, {} is not a Farey triangle", v[0], v[1], v[2])));
        }
        Ok(Self { vertices: v })
    }

    pub fn vertices(&self) -> &[ReducedFraction; 3] {
        &self.vertices
    }

    pub fn contains(&self, v: &ReducedFraction) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, a: &ReducedFraction, b: &ReducedFraction) -> bool {
        a != b && self.contains(a) && self.contains(b)
    }

    /// The vertex opposite the edge (a, b).
    pub fn third(&self, a: &ReducedFraction, b: &ReducedFraction) -> Option<&ReducedFraction> {
        if !self.has_edge(a, b) {
            return None;
        }
        self.vertices.iter().find(|v| *v != a && *v != b)
    }

    pub fn edges(&self) -> [(ReducedFraction, ReducedFraction); 3] {
        let [a, b, c] = self.vertices.clone();
        [(a.clone(), b.clone()), (b, c.clone()), (a, c)]
    }

    /// Number of shared vertices with another triangle.
    pub fn shared_vertices(&self, other: &FareyTriangle) -> usize {
        self.vertices.iter().filter(|v| other.contains(v)).count()
    }
}

impl TryFrom<Vec<ReducedFraction>> for FareyTriangle {
    type Error = Error;

    fn try_from(v: Vec<ReducedFraction>) -> Result<Self> {
        let [a, b, c]: [ReducedFraction; 3] =
            v.try_into().map_err(|_| Error::invalid("a triangle has exactly three vertices"))?;
        Self::new(a, b, c)
    }
}

impl From<FareyTriangle> for Vec<ReducedFraction> {
    fn from(t: FareyTriangle) -> Self {
        t.vertices.to_vec()
    }
}

impl fmt::Debug for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.vertices;
        write!(f, "{{{a}, {b}, {c}}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleType {
    L,
    R,
    Start,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramTriangle {
    pub vertices: FareyTriangle,
    #[serde(rename = "type")]
    pub kind: TriangleType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub index: i64,
    pub vertex: ReducedFraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyDiagram {
    pub theta: IrrationalNumber,
    pub r: Endpoint,
    /// Ordered from the r end toward θ.
    pub triangles: Vec<DiagramTriangle>,
    pub left_labels: Vec<Label>,
    pub right_labels: Vec<Label>,
    pub edges: Vec<(ReducedFraction, ReducedFraction)>,
}

impl FareyDiagram {
    pub fn label_of(&self, v: &ReducedFraction) -> Option<String> {
        if let Endpoint::Rational(r) = &self.r {
            if r == v {
                return Some("r".into());
            }
        }
        let find = |ls: &[Label], c: char| ls.iter().find(|l| &l.vertex == v).map(|l| format!("{c}{}", l.index));
        find(&self.left_labels, 'l').or_else(|| find(&self.right_labels, 'r'))
    }
}

/// Type of a triangle crossed by the geodesic r → θ. Two vertices inside the
/// arc from r anticlockwise to θ make it L; two inside the arc from θ to r make it R.
pub fn triangle_type(theta: &IrrationalNumber, r: &Endpoint, t: &FareyTriangle) -> Result<TriangleType> {
    if let Endpoint::Rational(rr) = r {
        if t.contains(rr) {
            return Ok(TriangleType::Start);
        }
    }
    let th = Endpoint::Irrational(theta.clone());
    let mut on_left = 0;
    for v in t.vertices() {
        if in_open_arc(&Endpoint::Rational(v.clone()), &th, r)? {
            on_left += 1;
        }
    }
    match on_left {
        1 => Ok(TriangleType::L),
        2 => Ok(TriangleType::R),
        _ => Err(Error::invalid(format!("{t:?} is not crossed by the geodesic from {r}"))),
    }
}

/// Orients an edge (u, v) for the walk toward θ.
pub(crate) fn orient(theta: &IrrationalNumber, u: &Vec2, v: &Vec2) -> Result<(Vec2, Vec2)> {
    let su = side(theta, u)?;
    let sv = side(theta, v)?;
    let signed = |w: &Vec2, s: Ordering, want: Ordering| if s == want { w.clone() } else { neg(w) };
    let x = signed(u, su, Ordering::Greater);
    let y = signed(v, sv, Ordering::Less);
    if det(&x, &y) == BigInt::from(-1) {
        Ok((x, y))
    } else {
        Ok((signed(v, sv, Ordering::Greater), signed(u, su, Ordering::Less)))
    }
}

/// Step-by-step mediant descent toward θ.
#[derive(Clone, Debug)]
pub(crate) struct Walker {
    pub theta: IrrationalNumber,
    pub x: Vec2,
    pub y: Vec2,
}

pub(crate) struct Step {
    pub triangle: FareyTriangle,
    pub kind: TriangleType,
    pub new_vertex: ReducedFraction,
}

impl Walker {
    pub fn new(theta: &IrrationalNumber, u: &Vec2, v: &Vec2) -> Result<Self> {
        let (x, y) = orient(theta, u, v)?;
        Ok(Self { theta: theta.clone(), x, y })
    }

    pub fn step(&mut self) -> Result<Step> {
        let w = add(&self.x, &self.y);
        let triangle = FareyTriangle::new(frac(&self.x), frac(&self.y), frac(&w))?;
        let kind = if side(&self.theta, &w)? == Ordering::Greater {
            self.x = w.clone();
            TriangleType::L
        } else {
            self.y = w.clone();
            TriangleType::R
        };
        Ok(Step { triangle, kind, new_vertex: frac(&w) })
    }

    /// The current edge as fractions (below-θ side first).
    pub fn edge(&self) -> (ReducedFraction, ReducedFraction) {
        (frac(&self.x), frac(&self.y))
    }
}

/// The first triangle of F_{θ,r}, as (r, x, y) with the edge (x, y) oriented for the walk.
pub(crate) fn start_edge(theta: &IrrationalNumber, r: &ReducedFraction) -> Result<(Vec2, Vec2)> {
    let rho = raw(r);
    let s0: Vec2 = if r.is_infinite() {
        (BigInt::zero(), BigInt::one())
    } else {
        let e = rho.0.extended_gcd(&rho.1);
        debug_assert!(e.gcd.is_one());
        (e.y, -e.x)
    };
    // Neighbors of r are s0 + k·ρ; f is linear in k, so exactly one step changes sign.
    let sigma = side(theta, &rho)?;
    let vk = |k: &BigInt| add(&s0, &scale(k, &rho));
    let k = largest_true(|k| Ok(side(theta, &vk(k))? != sigma))?;
    let a = vk(&k);
    let b = add(&a, &rho);
    orient(theta, &a, &b)
}

/// (l₁, r₁): the left and right vertices of F_{θ,r}.
pub fn left_right_vertices(theta: &IrrationalNumber, r: &ReducedFraction) -> Result<(ReducedFraction, ReducedFraction)> {
    let (x, y) = start_edge(theta, r)?;
    Ok((frac(&y), frac(&x)))
}

fn collect_edges(triangles: &[DiagramTriangle]) -> Vec<(ReducedFraction, ReducedFraction)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in triangles {
        for e in t.vertices.edges() {
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
    }
    out
}

/// F_{θ,r} truncated to `depth` triangles (rational r, counting the starting
/// triangle) or `depth` triangles on each side of the canonical triangle
/// between θ and r (irrational r).
pub fn farey_diagram(theta: &IrrationalNumber, r: &Endpoint, depth: usize) -> Result<FareyDiagram> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    match r {
        Endpoint::Rational(rr) => one_ended(theta, rr, depth),
        Endpoint::Irrational(t) => two_ended(theta, t, depth),
    }
}

fn one_ended(theta: &IrrationalNumber, r: &ReducedFraction, depth: usize) -> Result<FareyDiagram> {
    let (x, y) = start_edge(theta, r)?;
    let mut walker = Walker { theta: theta.clone(), x, y };
    let (r1, l1) = walker.edge();
    let mut triangles = vec![DiagramTriangle {
        vertices: FareyTriangle::new(r.clone(), l1.clone(), r1.clone())?,
        kind: TriangleType::Start,
    }];
    let mut left = vec![Label { index: 1, vertex: l1 }];
    let mut right = vec![Label { index: 1, vertex: r1 }];
    for _ in 1..depth {
        let s = walker.step()?;
        let labels = if s.kind == TriangleType::L { &mut right } else { &mut left };
        labels.push(Label { index: labels.len() as i64 + 1, vertex: s.new_vertex });
        triangles.push(DiagramTriangle { vertices: s.triangle, kind: s.kind });
    }
    let edges = collect_edges(&triangles);
    Ok(FareyDiagram { theta: theta.clone(), r: Endpoint::Rational(r.clone()), triangles, left_labels: left, right_labels: right, edges })
}

fn two_ended(theta: &IrrationalNumber, rp: &IrrationalNumber, depth: usize) -> Result<FareyDiagram> {
    let order = compare_irrationals(theta, rp)?;
    if order == Ordering::Equal {
        return Err(Error::invalid("the two ends of a diagram must differ"));
    }
    let (lo, hi) = if order == Ordering::Less { (theta, rp) } else { (rp, theta) };
    let [a, s, b] = bottom_triangle(lo, hi)?;
    let central = FareyTriangle::new(a.clone(), s.clone(), b.clone())?;
    // (a, s) straddles lo and (s, b) straddles hi.
    let low_edge = (raw(&a), raw(&s));
    let high_edge = (raw(&s), raw(&b));
    let walk = |target: &IrrationalNumber, (u, v): &(Vec2, Vec2)| -> Result<Vec<FareyTriangle>> {
        let mut w = Walker::new(target, u, v)?;
        (0..depth).map(|_| w.step().map(|s| s.triangle)).collect()
    };
    let (theta_edge, r_edge) = if order == Ordering::Less { (&low_edge, &high_edge) } else { (&high_edge, &low_edge) };
    let toward_theta = walk(theta, theta_edge)?;
    let toward_r = walk(rp, r_edge)?;
    let list: Vec<FareyTriangle> =
        toward_r.into_iter().rev().chain(std::iter::once(central.clone())).chain(toward_theta).collect();

    let r_end = Endpoint::Irrational(rp.clone());
    let th = Endpoint::Irrational(theta.clone());
    let mut triangles = Vec::with_capacity(list.len());
    for t in list {
        triangles.push(DiagramTriangle { kind: triangle_type(theta, &r_end, &t)?, vertices: t });
    }
    // Labels are numbered along the diagram; index 0 is the first vertex of the
    // central triangle met on each arc.
    let mut left_seen: Vec<ReducedFraction> = Vec::new();
    let mut right_seen: Vec<ReducedFraction> = Vec::new();
    for t in &triangles {
        for v in t.vertices.vertices() {
            let list = if in_open_arc(&Endpoint::Rational(v.clone()), &th, &r_end)? { &mut left_seen } else { &mut right_seen };
            if !list.contains(v) {
                list.push(v.clone());
            }
        }
    }
    let number = |seen: Vec<ReducedFraction>| -> Vec<Label> {
        let base = seen.iter().position(|v| central.contains(v)).unwrap_or(0) as i64;
        seen.into_iter().enumerate().map(|(i, vertex)| Label { index: i as i64 - base, vertex }).collect()
    };
    let edges = collect_edges(&triangles);
    Ok(FareyDiagram {
        theta: theta.clone(),
        r: r_end,
        triangles,
        left_labels: number(left_seen),
        right_labels: number(right_seen),
        edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Letter {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub letter: Letter,
    #[serde(with = "crate::bigjson")]
    pub count: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuttingSequence {
    /// Integer translation applied first (nonzero only for θ < 0).
    #[serde(with = "crate::bigjson")]
    pub shift: BigInt,
    pub runs: Vec<Run>,
}

impl fmt::Display for CuttingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.runs {
            write!(f, "{:?}^{}", r.letter, r.count)?;
        }
        Ok(())
    }
}

/// The first `depth` runs of the cutting sequence of θ, starting at the edge
/// (0, ∞), or (⌊θ⌋, ∞) when θ < 0. Runs are found by exponential search, so huge
/// partial quotients cost O(log a) sign tests.
pub fn cutting_sequence(theta: &IrrationalNumber, depth: usize) -> Result<CuttingSequence> {
    let a0 = theta.quotient(0)?;
    let shift = if a0.is_negative() { a0 } else { BigInt::zero() };
    let mut x: Vec2 = (shift.clone(), BigInt::one());
    let mut y: Vec2 = (BigInt::one(), BigInt::zero());
    let mut runs = Vec::new();
    let mut letter = Letter::L;
    while runs.len() < depth {
        let count = match letter {
            Letter::L => {
                let k = largest_true(|k| Ok(side(theta, &add(&x, &scale(k, &y)))? == Ordering::Greater))?;
                x = add(&x, &scale(&k, &y));
                k
            }
            Letter::R => {
                let k = largest_true(|k| Ok(side(theta, &add(&y, &scale(k, &x)))? == Ordering::Less))?;
                y = add(&y, &scale(&k, &x));
                k
            }
        };
        if count.is_positive() {
            runs.push(Run { letter, count });
        }
        letter = if letter == Letter::L { Letter::R } else { Letter::L };
    }
    Ok(CuttingSequence { shift, runs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub vertex: ReducedFraction,
    pub label: String,
    /// Empty at the leaves, otherwise [left vertex, right vertex].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn leaves(&self) -> Vec<&TreeNode> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.leaves()).collect()
        }
    }

    pub fn level(&self, n: usize) -> Vec<&TreeNode> {
        if n == 0 {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.level(n - 1)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyTree {
    pub theta: IrrationalNumber,
    pub depth: usize,
    pub root: TreeNode,
}

fn grow(theta: &IrrationalNumber, v: &ReducedFraction, depth: usize) -> Result<TreeNode> {
    let mut node = TreeNode { vertex: v.clone(), label: String::new(), children: Vec::new() };
    if depth > 0 {
        let (l, r) = left_right_vertices(theta, v)?;
        node.children = vec![grow(theta, &l, depth - 1)?, grow(theta, &r, depth - 1)?];
    }
    Ok(node)
}

fn collect_vertices(n: &TreeNode, out: &mut HashSet<ReducedFraction>) {
    out.insert(n.vertex.clone());
    for c in &n.children {
        collect_vertices(c, out);
    }
}

fn apply_labels(n: &mut TreeNode, names: &HashMap<ReducedFraction, String>) {
    n.label = names[&n.vertex].clone();
    for c in &mut n.children {
        apply_labels(c, names);
    }
}

/// T_{θ,r} to the given depth. Every vertex of the tree is a vertex of F_{θ,r};
/// labels are read off a walk of that diagram.
pub fn farey_tree(theta: &IrrationalNumber, r: &ReducedFraction, depth: usize) -> Result<FareyTree> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let mut root = grow(theta, r, depth)?;
    let mut wanted = HashSet::new();
    collect_vertices(&root, &mut wanted);

    let mut names: HashMap<ReducedFraction, String> = HashMap::new();
    names.insert(r.clone(), "r".into());
    let (x, y) = start_edge(theta, r)?;
    let mut walker = Walker { theta: theta.clone(), x, y };
    let (r1, l1) = walker.edge();
    names.insert(l1, "l1".into());
    names.insert(r1, "r1".into());
    let (mut nl, mut nr) = (1, 1);
    while !wanted.iter().all(|v| names.contains_key(v)) {
        let s = walker.step()?;
        let name = if s.kind == TriangleType::L {
            nr += 1;
            format!("r{nr}")
        } else {
            nl += 1;
            format!("l{nl}")
        };
        names.insert(s.new_vertex, name);
    }
    apply_labels(&mut root, &names);
    Ok(FareyTree { theta: theta.clone(), depth, root })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_numbers::{chi, theta_norm};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn th(s: &str) -> IrrationalNumber {
        s.parse().unwrap()
    }

    fn fr(s: &str) -> ReducedFraction {
        s.parse().unwrap()
    }

    fn tri(a: &str, b: &str, c: &str) -> FareyTriangle {
        FareyTriangle::new(fr(a), fr(b), fr(c)).unwrap()
    }

    #[test]
    fn geodesic_examples() {
        assert!(is_farey_geodesic(&fr("0/1"), &fr("1/1")));
        assert!(is_farey_geodesic(&fr("1/0"), &fr("5/1")));
        assert!(!is_farey_geodesic(&fr("1/2"), &fr("1/4")));
    }

    #[test]
    fn golden_diagram_from_infinity() {
        let d = farey_diagram(&th("[1;(1)]"), &Endpoint::Rational(fr("1/0")), 4).unwrap();
        let got: Vec<_> = d.triangles.iter().map(|t| t.vertices.clone()).collect();
        assert_eq!(got, vec![tri("1/0", "1", "2"), tri("1", "2", "3/2"), tri("3/2", "2", "5/3"), tri("3/2", "5/3", "8/5")]);
        let kinds: Vec<_> = d.triangles.iter().map(|t| t.kind).collect();
        assert_eq!(kinds, [TriangleType::Start, TriangleType::L, TriangleType::R, TriangleType::L]);
    }

    #[test]
    fn left_right_examples() {
        let g = th("[1;(1)]");
        assert_eq!(left_right_vertices(&g, &fr("1/0")).unwrap(), (fr("2"), fr("1")));
        assert_eq!(left_right_vertices(&g, &fr("2")).unwrap(), (fr("5/3"), fr("3/2")));
        let d = farey_diagram(&th("[1;(2)]"), &Endpoint::Rational(fr("3/2")), 3).unwrap();
        let first = &d.triangles[0].vertices;
        assert!(first.contains(&fr("3/2")));
    }

    #[test]
    fn cutting_examples() {
        assert_eq!(cutting_sequence(&th("[1;(1)]"), 4).unwrap().to_string(), "L^1R^1L^1R^1");
        assert_eq!(cutting_sequence(&th("[1;(2)]"), 4).unwrap().to_string(), "L^1R^2L^2R^2");
        assert_eq!(cutting_sequence(&th("[0;(3)]"), 3).unwrap().to_string(), "R^3L^3R^3");
        let neg = cutting_sequence(&th("[-2;(1,4)]"), 3).unwrap();
        assert_eq!((neg.shift.clone(), neg.to_string()), (BigInt::from(-2), "R^1L^4R^1".to_string()));
    }

    #[test]
    fn tree_examples() {
        let g = th("[1;(1)]");
        let t = farey_tree(&g, &fr("1/0"), 1).unwrap();
        assert_eq!(t.root.children[0].vertex, fr("2"));
        assert_eq!(t.root.children[0].label, "l1");
        assert_eq!(t.root.children[1].label, "r1");

        let s = farey_tree(&th("[1;(2)]"), &fr("1"), 3).unwrap();
        let mut checks = 0;
        fn walk(n: &TreeNode, checks: &mut usize) {
            for c in &n.children {
                assert!(n.vertex.is_farey_neighbor(&c.vertex));
                *checks += 1;
                walk(c, checks);
            }
        }
        walk(&s.root, &mut checks);
        assert_eq!(checks, 14);
    }

    #[test]
    fn two_ended_diagram_is_a_strip() {
        let d = farey_diagram(&th("[1;(2)]"), &Endpoint::Irrational(th("[1;(1)]")), 5).unwrap();
        assert_eq!(d.triangles.len(), 11);
        assert!(d.triangles[5].vertices.contains(&fr("3/2")));
        for w in d.triangles.windows(2) {
            assert_eq!(w[0].vertices.shared_vertices(&w[1].vertices), 2);
        }
        assert!(d.triangles.iter().all(|t| t.kind != TriangleType::Start));
    }

    /// Brute force: every fraction p/q with |p|, q ≤ bound strictly inside the lattice triangle 0, v1, v2.
    fn lattice_interior_empty(t: &FareyTriangle) -> bool {
        let vs: Vec<(i64, i64)> =
            t.vertices().iter().map(|v| (v.numer().to_i64().unwrap(), v.denom().to_i64().unwrap())).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (vs[i], vs[j]);
                let cross = |p: (i64, i64), q: (i64, i64)| p.0 * q.1 - p.1 * q.0;
                let area = cross(a, b);
                let lo_x = 0.min(a.0).min(b.0);
                let hi_x = 0.max(a.0).max(b.0);
                let lo_y = 0.min(a.1).min(b.1);
                let hi_y = 0.max(a.1).max(b.1);
                for x in lo_x..=hi_x {
                    for y in lo_y..=hi_y {
                        let p = (x, y);
                        if p == (0, 0) || p == a || p == b {
                            continue;
                        }
                        let (s, u) = (cross(p, b), cross(a, p));
                        let inside = if area > 0 { s >= 0 && u >= 0 && s + u <= area } else { s <= 0 && u <= 0 && s + u >= area };
                        if inside {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn arb_theta() -> impl Strategy<Value = IrrationalNumber> {
        (-3i64..4, prop::collection::vec(1i64..5, 0..4), prop::collection::vec(1i64..5, 1..4)).prop_map(
            |(a0, mut pre, per)| {
                pre.insert(0, a0);
                IrrationalNumber::periodic_i64(&pre, &per).unwrap()
            },
        )
    }

    fn arb_fraction() -> impl Strategy<Value = ReducedFraction> {
        prop_oneof![
            1 => Just(ReducedFraction::infinity()),
            8 => (-12i64..12, 1i64..9).prop_map(|(p, q)| ReducedFraction::new(p, q).unwrap()),
        ]
    }

    #[test]
    fn pick_interior_emptiness() {
        let g = th("[0;(1,2,3)]");
        for r in ["1/0", "0", "3/7", "-2/3"] {
            let d = farey_diagram(&g, &Endpoint::Rational(fr(r)), 12).unwrap();
            for t in &d.triangles {
                if t.vertices.vertices().iter().all(|v| v.denom() <= &BigInt::from(50)) {
                    assert!(lattice_interior_empty(&t.vertices), "{:?}", t.vertices);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn calibration(theta in arb_theta()) {
            let cs = cutting_sequence(&theta, 15).unwrap();
            let a0 = theta.quotient(0).unwrap();
            let first = if a0.is_positive() { 0 } else { 1 };
            for (i, run) in cs.runs.iter().enumerate() {
                let k = first + i;
                prop_assert_eq!(&run.count, &theta.quotient(k).unwrap());
                let want = if k % 2 == 0 { Letter::L } else { Letter::R };
                prop_assert_eq!(run.letter, want);
            }
        }

        #[test]
        fn division_point_conditions(theta in arb_theta(), r in arb_fraction()) {
            let (l1, r1) = left_right_vertices(&theta, &r).unwrap();
            let nr = theta_norm(&r, &theta).unwrap();
            let nl = theta_norm(&l1, &theta).unwrap();
            let nrr = theta_norm(&r1, &theta).unwrap();
            prop_assert_eq!(chi(&nl, &nr).unwrap(), BigInt::one());
            prop_assert_eq!(chi(&nrr, &nr).unwrap(), BigInt::from(-1));
            prop_assert_eq!(nl.cmp_value(&nr).unwrap(), Ordering::Less);
            prop_assert_eq!(nrr.cmp_value(&nr).unwrap(), Ordering::Less);
            prop_assert_eq!(nl.checked_add(&nrr).unwrap(), nr);
        }

        #[test]
        fn diagram_strip(theta in arb_theta(), r in arb_fraction(), depth in 1usize..25) {
            let d = farey_diagram(&theta, &Endpoint::Rational(r.clone()), depth).unwrap();
            prop_assert_eq!(d.triangles.len(), depth);
            let th_end = Endpoint::Irrational(theta.clone());
            for (i, t) in d.triangles.iter().enumerate() {
                prop_assert_eq!(triangle_type(&theta, &d.r, &t.vertices).unwrap(), t.kind);
                prop_assert_eq!(t.kind == TriangleType::Start, i == 0);
                prop_assert!(crosses(&t.vertices, &d.r, &theta).unwrap());
            }
            for w in d.triangles.windows(2) {
                let shared: Vec<_> = w[0].vertices.vertices().iter().filter(|v| w[1].vertices.contains(v)).cloned().collect();
                prop_assert_eq!(shared.len(), 2);
                let (a, b) = (Endpoint::Rational(shared[0].clone()), Endpoint::Rational(shared[1].clone()));
                prop_assert!(in_open_arc(&th_end, &a, &b).unwrap() != in_open_arc(&d.r, &a, &b).unwrap());
            }
        }

        #[test]
        fn tree_leaves_sum_to_root_norm(theta in arb_theta(), r in arb_fraction(), depth in 1usize..6) {
            let t = farey_tree(&theta, &r, depth).unwrap();
            let leaves = t.root.leaves();
            prop_assert_eq!(leaves.len(), 1 << depth);
            let mut sum = ThetaLatticeElement::zero(&theta);
            for l in leaves {
                sum = sum.checked_add(&theta_norm(&l.vertex, &theta).unwrap()).unwrap();
            }
            prop_assert_eq!(sum, theta_norm(&r, &theta).unwrap());
        }

        #[test]
        fn two_ended_types_and_adjacency(t1 in arb_theta(), t2 in arb_theta(), depth in 1usize..8) {
            prop_assume!(t1 != t2);
            let d = farey_diagram(&t1, &Endpoint::Irrational(t2.clone()), depth).unwrap();
            prop_assert_eq!(d.triangles.len(), 2 * depth + 1);
            for w in d.triangles.windows(2) {
                prop_assert_eq!(w[0].vertices.shared_vertices(&w[1].vertices), 2);
            }
            for t in &d.triangles {
                prop_assert!(crosses(&t.vertices, &d.r, &t1).unwrap());
            }
        }
    }
}
