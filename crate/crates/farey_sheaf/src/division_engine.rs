//! Interval division driven by the binary tree T_{θ,r}, and the game of beads.
//!
//! The root interval is [0, |r|_θ] in L_θ. A node with vertex v and interval
//! [x, y] splits at x + |l|_θ, where (l, r') are the left and right vertices of
//! F_{θ,v}; the left child carries l, the right child r'.

use crate::error::{Error, Result};
use crate::exact_numbers::{compare_theta_rational, theta_norm, IrrationalNumber, LatticeCoords, ReducedFraction, ThetaLatticeElement};
use crate::farey_geometry::left_right_vertices;
use crate::sheaf_calculus::{SheafClass, StableClass};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

/// Deepest level searched when locating division points or approximating a rank.
pub const DEPTH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionInterval {
    pub a: ThetaLatticeElement,
    pub b: ThetaLatticeElement,
    /// The label v with b − a = |v|_θ.
    pub vertex: ReducedFraction,
}

impl DivisionInterval {
    /// [0, |r|_θ].
    pub fn root(theta: &IrrationalNumber, r: &ReducedFraction) -> Result<Self> {
        Ok(Self { a: ThetaLatticeElement::zero(theta), b: theta_norm(r, theta)?, vertex: r.clone() })
    }

    pub fn length(&self) -> Result<ThetaLatticeElement> {
        self.b.checked_sub(&self.a)
    }

    pub fn theta(&self) -> &IrrationalNumber {
        self.a.theta()
    }
}

/// Split at a + |l₁|_θ: the left piece carries l₁, the right piece r₁.
pub fn divide(iv: &DivisionInterval) -> Result<(DivisionInterval, DivisionInterval)> {
    let theta = iv.theta();
    let (l, r) = left_right_vertices(theta, &iv.vertex)?;
    let mid = iv.a.checked_add(&theta_norm(&l, theta)?)?;
    debug_assert_eq!(mid.checked_add(&theta_norm(&r, theta)?)?, iv.b);
    Ok((
        DivisionInterval { a: iv.a.clone(), b: mid.clone(), vertex: l },
        DivisionInterval { a: mid, b: iv.b.clone(), vertex: r },
    ))
}

/// O_v = O(v) for v > θ and O(v)[1] for v < θ; returns the shift.
pub fn shift_of(theta: &IrrationalNumber, v: &ReducedFraction) -> Result<u8> {
    Ok(if compare_theta_rational(theta, v)? == Ordering::Less { 0 } else { 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionNode {
    pub vertex: ReducedFraction,
    pub shift: u8,
    pub a: LatticeCoords,
    pub b: LatticeCoords,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<DivisionNode>,
}

fn dump(iv: &DivisionInterval, depth: usize) -> Result<DivisionNode> {
    let mut node = DivisionNode {
        vertex: iv.vertex.clone(),
        shift: shift_of(iv.theta(), &iv.vertex)?,
        a: iv.a.coords(),
        b: iv.b.coords(),
        children: Vec::new(),
    };
    if depth > 0 {
        let (l, r) = divide(iv)?;
        node.children = vec![dump(&l, depth - 1)?, dump(&r, depth - 1)?];
    }
    Ok(node)
}

/// The division tree of [0, |r|_θ] to the given depth.
pub fn division_tree(theta: &IrrationalNumber, r: &ReducedFraction, depth: usize) -> Result<DivisionNode> {
    dump(&DivisionInterval::root(theta, r)?, depth)
}

/// Intervals of level n, left to right.
pub fn level_intervals(theta: &IrrationalNumber, r: &ReducedFraction, n: usize) -> Result<Vec<DivisionInterval>> {
    let mut cur = vec![DivisionInterval::root(theta, r)?];
    for _ in 0..n {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for iv in &cur {
            let (l, r) = divide(iv)?;
            next.push(l);
            next.push(r);
        }
        cur = next;
    }
    Ok(cur)
}

/// All endpoints at tree depth ≤ depth, increasing.
pub fn division_points(theta: &IrrationalNumber, r: &ReducedFraction, depth: usize) -> Result<Vec<ThetaLatticeElement>> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let level = level_intervals(theta, r, depth)?;
    let mut out: Vec<_> = level.iter().map(|iv| iv.a.clone()).collect();
    out.push(level.last().expect("nonempty level").b.clone());
    Ok(out)
}

/// The first level at which x is an endpoint, or NotDivisionPoint.
pub fn locate(theta: &IrrationalNumber, r: &ReducedFraction, x: &ThetaLatticeElement) -> Result<usize> {
    let mut iv = DivisionInterval::root(theta, r)?;
    for level in 0..=DEPTH_CAP {
        let lo = x.cmp_value(&iv.a)?;
        let hi = x.cmp_value(&iv.b)?;
        if lo == Ordering::Equal || hi == Ordering::Equal {
            return Ok(level);
        }
        if lo == Ordering::Less || hi == Ordering::Greater {
            break;
        }
        let (l, rr) = divide(&iv)?;
        iv = if x.cmp_value(&l.b)? == Ordering::Greater { rr } else { l };
    }
    Err(Error::NotDivisionPoint(format!("{x:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bead {
    pub vertex: ReducedFraction,
    pub shift: u8,
    pub a: LatticeCoords,
    pub b: LatticeCoords,
    pub level: usize,
    /// Side in its branch; `None` for the root.
    pub is_left: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeadObject {
    pub c: LatticeCoords,
    pub d: LatticeCoords,
    /// Rest positions, left to right.
    pub beads: Vec<Bead>,
    pub summands: SheafClass,
    /// d − c.
    pub rank_theta: LatticeCoords,
}

impl BeadObject {
    fn phases(&self) -> impl Iterator<Item = (u8, ReducedFraction)> + '_ {
        self.beads.iter().map(|b| (b.shift, b.vertex.clone()))
    }
}

fn check_slope(theta: &IrrationalNumber, r: &ReducedFraction) -> Result<()> {
    let below = compare_theta_rational(theta, r)? == Ordering::Less;
    let shifted = ReducedFraction::new(r.numer() - r.denom(), r.denom().clone())?;
    let within = !r.is_infinite() && compare_theta_rational(theta, &shifted)? == Ordering::Greater;
    if below && within {
        Ok(())
    } else {
        Err(Error::invalid(format!("the bead game needs 0 < {r} − θ < 1")))
    }
}

fn assemble(c: &ThetaLatticeElement, d: &ThetaLatticeElement, beads: Vec<Bead>) -> Result<BeadObject> {
    let mut counts: BTreeMap<(u8, ReducedFraction), BigInt> = BTreeMap::new();
    for b in &beads {
        *counts.entry((b.shift, b.vertex.clone())).or_default() += 1;
    }
    let mut summands = SheafClass::default();
    for ((shift, v), mult) in counts {
        summands.push(StableClass::from_slope(&v), shift, mult)?;
    }
    Ok(BeadObject { c: c.coords(), d: d.coords(), beads, summands, rank_theta: d.checked_sub(c)?.coords() })
}

fn bead_of(iv: &DivisionInterval, level: usize, is_left: Option<bool>) -> Result<Bead> {
    Ok(Bead {
        vertex: iv.vertex.clone(),
        shift: shift_of(iv.theta(), &iv.vertex)?,
        a: iv.a.coords(),
        b: iv.b.coords(),
        level,
        is_left,
    })
}

fn collect(
    iv: &DivisionInterval,
    level: usize,
    is_left: Option<bool>,
    c: &ThetaLatticeElement,
    d: &ThetaLatticeElement,
    out: &mut Vec<Bead>,
) -> Result<()> {
    if iv.b.cmp_value(c)? != Ordering::Greater || iv.a.cmp_value(d)? != Ordering::Less {
        return Ok(());
    }
    if iv.a.cmp_value(c)? != Ordering::Less && iv.b.cmp_value(d)? != Ordering::Greater {
        out.push(bead_of(iv, level, is_left)?);
        return Ok(());
    }
    if level >= DEPTH_CAP {
        return Err(Error::exhausted(DEPTH_CAP + 1));
    }
    let (l, r) = divide(iv)?;
    collect(&l, level + 1, Some(true), c, d, out)?;
    collect(&r, level + 1, Some(false), c, d, out)
}

fn validate(theta: &IrrationalNumber, r: &ReducedFraction, pts: &[&ThetaLatticeElement]) -> Result<()> {
    check_slope(theta, r)?;
    for w in pts.windows(2) {
        if w[0].cmp_value(w[1])? != Ordering::Less {
            return Err(Error::invalid("division points must increase strictly"));
        }
    }
    for p in pts {
        locate(theta, r, p)?;
    }
    Ok(())
}

/// E_{[c,d]}: beads dropped from the finest level merge whenever both children of a node
/// carry one, so the rest positions are the maximal tree intervals inside [c, d].
pub fn beads(theta: &IrrationalNumber, r: &ReducedFraction, c: &ThetaLatticeElement, d: &ThetaLatticeElement) -> Result<BeadObject> {
    validate(theta, r, &[c, d])?;
    let mut out = Vec::new();
    collect(&DivisionInterval::root(theta, r)?, 0, None, c, d, &mut out)?;
    assemble(c, d, out)
}

/// The game played literally: beads on the level-n intervals inside [c, d], then
/// repeated merging of sibling pairs. c and d must be endpoints at level ≤ n.
pub fn beads_from_level(
    theta: &IrrationalNumber,
    r: &ReducedFraction,
    c: &ThetaLatticeElement,
    d: &ThetaLatticeElement,
    n: usize,
) -> Result<BeadObject> {
    validate(theta, r, &[c, d])?;
    let mut intervals = vec![vec![DivisionInterval::root(theta, r)?]];
    for k in 0..n {
        let mut next = Vec::with_capacity(intervals[k].len() * 2);
        for iv in &intervals[k] {
            let (l, r) = divide(iv)?;
            next.push(l);
            next.push(r);
        }
        intervals.push(next);
    }
    let mut marked: Vec<Vec<bool>> = vec![Vec::new(); n + 1];
    marked[n] = intervals[n]
        .iter()
        .map(|iv| Ok(iv.a.cmp_value(c)? != Ordering::Less && iv.b.cmp_value(d)? != Ordering::Greater))
        .collect::<Result<_>>()?;
    // Merge sibling pairs upward; a merged pair leaves its children empty.
    for k in (0..n).rev() {
        marked[k] = (0..intervals[k].len()).map(|i| marked[k + 1][2 * i] && marked[k + 1][2 * i + 1]).collect();
        for i in 0..intervals[k].len() {
            if marked[k][i] {
                marked[k + 1][2 * i] = false;
                marked[k + 1][2 * i + 1] = false;
            }
        }
    }
    let mut rest: Vec<(ThetaLatticeElement, Bead)> = Vec::new();
    for (k, ivs) in intervals.iter().enumerate() {
        for (i, iv) in ivs.iter().enumerate() {
            if marked[k][i] {
                let side = if k == 0 { None } else { Some(i % 2 == 0) };
                rest.push((iv.a.clone(), bead_of(iv, k, side)?));
            }
        }
    }
    let mut err = None;
    rest.sort_by(|x, y| {
        x.0.cmp_value(&y.0).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    assemble(c, d, rest.into_iter().map(|(_, b)| b).collect())
}

/// rk_θ(V) = deg(V) − rank(V)·θ, as the element (−rank)·θ + deg.
pub fn rotated_rank(v: &SheafClass, theta: &IrrationalNumber) -> ThetaLatticeElement {
    let (d, r) = v.vector();
    ThetaLatticeElement::new(-r, d, theta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesVerdict {
    pub class_additive: bool,
    pub rank_additive: bool,
    pub phase_ok: bool,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

/// Checks 0 → E_{[c,e]} → E_{[c,d]} → E_{[e,d]} → 0 at the level of classes, rotated
/// ranks and phases. Phases compare shift first, then slope.
///
/// When the last bead of E_{[c,e]} is a left vertex, every other summand of E_{[c,e]}
/// must have phase at least its phase (so the relevant Ext¹ vanishes); symmetrically,
/// when the first bead of E_{[e,d]} is a right vertex, every other summand of E_{[e,d]}
/// must have phase at most its phase.
pub fn ses_check(
    theta: &IrrationalNumber,
    r: &ReducedFraction,
    c: &ThetaLatticeElement,
    e: &ThetaLatticeElement,
    d: &ThetaLatticeElement,
) -> Result<SesVerdict> {
    validate(theta, r, &[c, e, d])?;
    let ce = beads(theta, r, c, e)?;
    let ed = beads(theta, r, e, d)?;
    let cd = beads(theta, r, c, d)?;
    verdict(theta, [c, e, d], &ce, &ed, &cd)
}

fn verdict(
    theta: &IrrationalNumber,
    [c, e, d]: [&ThetaLatticeElement; 3],
    ce: &BeadObject,
    ed: &BeadObject,
    cd: &BeadObject,
) -> Result<SesVerdict> {
    let mut violations = Vec::new();

    let (v1, v2, v) = (ce.summands.vector(), ed.summands.vector(), cd.summands.vector());
    let class_additive = v == (&v1.0 + &v2.0, &v1.1 + &v2.1);
    if !class_additive {
        violations.push("class".into());
    }

    let mut rank_additive = true;
    for (obj, lo, hi) in [(ce, c, e), (ed, e, d), (cd, c, d)] {
        if rotated_rank(&obj.summands, theta) != hi.checked_sub(lo)? {
            rank_additive = false;
            violations.push("rk_θ".into());
        }
    }

    let mut phase_ok = true;
    if let Some(last) = ce.beads.last().filter(|b| b.is_left == Some(true)) {
        let key = (last.shift, last.vertex.clone());
        if ce.phases().take(ce.beads.len() - 1).any(|p| p < key) {
            phase_ok = false;
            violations.push(format!("sub-object summand below the phase of {}", last.vertex));
        }
    }
    if let Some(first) = ed.beads.first().filter(|b| b.is_left == Some(false)) {
        let key = (first.shift, first.vertex.clone());
        if ed.phases().skip(1).any(|p| p > key) {
            phase_ok = false;
            violations.push(format!("quotient summand above the phase of {}", first.vertex));
        }
    }
    Ok(SesVerdict { class_additive, rank_additive, phase_ok, pass: class_additive && rank_additive && phase_ok, violations })
}

/// Largest depth a [`DivisionGrid`] will materialize (2^depth intervals).
pub const GRID_CAP: usize = 20;

/// Every division interval down to a fixed level, built once for many queries.
/// Points are found by their lattice coordinates and bead decompositions are
/// read off the tree positions, so each query costs no exact comparisons.
pub struct DivisionGrid {
    levels: Vec<Vec<DivisionInterval>>,
    shifts: Vec<Vec<u8>>,
    index: HashMap<LatticeCoords, usize>,
}

impl DivisionGrid {
    pub fn new(theta: &IrrationalNumber, r: &ReducedFraction, depth: usize) -> Result<Self> {
        check_slope(theta, r)?;
        if depth == 0 || depth > GRID_CAP {
            return Err(Error::invalid(format!("grid depth must lie in 1..={GRID_CAP}")));
        }
        let mut levels = vec![vec![DivisionInterval::root(theta, r)?]];
        for k in 0..depth {
            let mut next = Vec::with_capacity(levels[k].len() * 2);
            for iv in &levels[k] {
                let (l, r) = divide(iv)?;
                next.push(l);
                next.push(r);
            }
            levels.push(next);
        }
        let shifts = levels
            .iter()
            .map(|ivs| ivs.iter().map(|iv| shift_of(theta, &iv.vertex)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let finest = &levels[depth];
        let mut index: HashMap<LatticeCoords, usize> = finest.iter().enumerate().map(|(i, iv)| (iv.a.coords(), i)).collect();
        index.insert(finest[finest.len() - 1].b.coords(), finest.len());
        Ok(Self { levels, shifts, index })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Endpoints of the finest level, increasing.
    pub fn points(&self) -> Vec<ThetaLatticeElement> {
        let finest = &self.levels[self.depth()];
        let mut out: Vec<_> = finest.iter().map(|iv| iv.a.clone()).collect();
        out.push(finest[finest.len() - 1].b.clone());
        out
    }

    fn position(&self, x: &ThetaLatticeElement) -> Result<usize> {
        if !x.theta().same_source(self.levels[0][0].theta()) {
            return Err(Error::MismatchedTheta);
        }
        self.index.get(&x.coords()).copied().ok_or_else(|| Error::NotDivisionPoint(format!("{x:?} within depth {}", self.depth())))
    }

    fn cover(&self, level: usize, idx: usize, [i, j]: [usize; 2], out: &mut Vec<Bead>) {
        let span = 1usize << (self.depth() - level);
        let (lo, hi) = (idx * span, (idx + 1) * span);
        if hi <= i || lo >= j {
            return;
        }
        if i <= lo && hi <= j {
            let iv = &self.levels[level][idx];
            out.push(Bead {
                vertex: iv.vertex.clone(),
                shift: self.shifts[level][idx],
                a: iv.a.coords(),
                b: iv.b.coords(),
                level,
                is_left: if level == 0 { None } else { Some(idx % 2 == 0) },
            });
            return;
        }
        self.cover(level + 1, 2 * idx, [i, j], out);
        self.cover(level + 1, 2 * idx + 1, [i, j], out);
    }

    /// Same result as [`beads`] for points of this grid.
    pub fn beads(&self, c: &ThetaLatticeElement, d: &ThetaLatticeElement) -> Result<BeadObject> {
        let (i, j) = (self.position(c)?, self.position(d)?);
        if i >= j {
            return Err(Error::invalid("division points must increase strictly"));
        }
        let mut out = Vec::new();
        self.cover(0, 0, [i, j], &mut out);
        assemble(c, d, out)
    }

    /// Same result as [`ses_check`] for points of this grid.
    pub fn ses_check(&self, c: &ThetaLatticeElement, e: &ThetaLatticeElement, d: &ThetaLatticeElement) -> Result<SesVerdict> {
        let (ce, ed, cd) = (self.beads(c, e)?, self.beads(e, d)?, self.beads(c, d)?);
        verdict(self.levels[0][0].theta(), [c, e, d], &ce, &ed, &cd)
    }
}

/// E_{[a,d₁]} ⊂ E_{[a,d₂]} ⊂ … with d_k − a within tol of the target.
pub fn approximate_rank(theta: &IrrationalNumber, r: &ReducedFraction, target: f64, tol: f64) -> Result<Vec<BeadObject>> {
    check_slope(theta, r)?;
    let root = DivisionInterval::root(theta, r)?;
    let total = root.b.to_f64();
    if !(target > 0.0 && target < total) || !(tol > 0.0) {
        return Err(Error::invalid(format!("need 0 < target < {total} and tol > 0")));
    }
    // Gaps below a few ulps of the target cannot be certified in f64.
    if tol < 4.0 * f64::EPSILON * total {
        return Err(Error::TolTooTight { cap: DEPTH_CAP });
    }
    let a = root.a.clone();
    let mut iv = root;
    let mut chain = Vec::new();
    for _ in 0..DEPTH_CAP {
        let (l, rr) = divide(&iv)?;
        let mid = l.b.checked_sub(&a)?.to_f64();
        if mid <= target {
            chain.push(beads(theta, r, &a, &l.b)?);
            if target - mid < tol {
                return Ok(chain);
            }
            iv = rr;
        } else {
            iv = l;
        }
    }
    Err(Error::TolTooTight { cap: DEPTH_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn th(s: &str) -> IrrationalNumber {
        s.parse().unwrap()
    }

    fn fr(s: &str) -> ReducedFraction {
        s.parse().unwrap()
    }

    fn elem(c: &LatticeCoords, theta: &IrrationalNumber) -> ThetaLatticeElement {
        ThetaLatticeElement::new(c.m.clone(), c.n.clone(), theta)
    }

    #[test]
    fn golden_first_division() {
        let g = th("[1;(1)]");
        let (l, r) = divide(&DivisionInterval::root(&g, &ReducedFraction::infinity()).unwrap()).unwrap();
        let phi = g.to_f64();
        assert!((l.length().unwrap().to_f64() - (2.0 - phi)).abs() < 1e-12);
        assert!((r.length().unwrap().to_f64() - (phi - 1.0)).abs() < 1e-12);
        let mut set = [l.vertex.clone(), r.vertex.clone()];
        set.sort();
        assert_eq!(set, [fr("1"), fr("2")]);
    }

    /// Oracle: floor(|l₁|/|r₁|) left steps before the first right step (Euclidean algorithm).
    #[test]
    fn euclidean_run_pattern() {
        for (t, v) in [("[1;(1)]", "1/0"), ("[1;(2)]", "1/0"), ("[0;(3,1)]", "1"), ("[2;(1,4)]", "3")] {
            let theta = th(t);
            let root = DivisionInterval::root(&theta, &fr(v)).unwrap();
            let (l, r) = divide(&root).unwrap();
            let (big, small, big_is_left) = if l.length().unwrap().to_f64() > r.length().unwrap().to_f64() {
                (l, r, true)
            } else {
                (r, l, false)
            };
            let n = (big.length().unwrap().to_f64() / small.length().unwrap().to_f64()).floor() as usize;
            // Subdividing the longer piece peels off n copies of |small|.
            let mut cur = big;
            for _ in 0..n {
                let (a, b) = divide(&cur).unwrap();
                let (piece, rest) = if big_is_left { (b, a) } else { (a, b) };
                assert_eq!(piece.length().unwrap(), small.length().unwrap(), "{t}");
                cur = rest;
            }
            assert_eq!(cur.length().unwrap().cmp_value(&small.length().unwrap()).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn points_depth_one_and_density() {
        let g = th("[1;(1)]");
        let pts = division_points(&g, &ReducedFraction::infinity(), 1).unwrap();
        assert_eq!(pts.len(), 3);
        let pts = division_points(&g, &ReducedFraction::infinity(), 10).unwrap();
        let gap = pts.windows(2).map(|w| w[1].to_f64() - w[0].to_f64()).fold(0.0, f64::max);
        assert!(gap < 0.09, "{gap}");
        for w in pts.windows(2) {
            assert_eq!(w[0].cmp_value(&w[1]).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn beads_trivial_cases() {
        let g = th("[1;(1)]");
        let r = fr("2");
        let pts = division_points(&g, &r, 1).unwrap();
        let whole = beads(&g, &r, &pts[0], &pts[2]).unwrap();
        assert_eq!(whole.beads.len(), 1);
        assert_eq!(whole.beads[0].vertex, r);
        let (l, rr) = left_right_vertices(&g, &r).unwrap();
        assert_eq!(beads(&g, &r, &pts[0], &pts[1]).unwrap().beads[0].vertex, l);
        assert_eq!(beads(&g, &r, &pts[1], &pts[2]).unwrap().beads[0].vertex, rr);
        assert!(matches!(beads(&g, &fr("3"), &pts[0], &pts[1]), Err(Error::InvalidInput(_))));
        let off = ThetaLatticeElement::new(0, 1, &g);
        assert!(matches!(beads(&g, &r, &pts[0], &off), Err(Error::NotDivisionPoint(_))));
    }

    #[test]
    fn three_piece_union_straddling_a_branch() {
        let g = th("[1;(1)]");
        let r = fr("2");
        let pts = division_points(&g, &r, 3).unwrap();
        let obj = beads(&g, &r, &pts[1], &pts[4]).unwrap();
        assert_eq!(obj, beads_from_level(&g, &r, &pts[1], &pts[4], 3).unwrap());
        assert_eq!(obj, beads_from_level(&g, &r, &pts[1], &pts[4], 4).unwrap());
        assert!(obj.beads.len() >= 2);
    }

    #[test]
    fn rotated_rank_examples() {
        let g = th("[1;(1)]");
        let mut v = SheafClass::default();
        v.push(StableClass::new(5, 2).unwrap(), 0, 1).unwrap();
        let rk = rotated_rank(&v, &g);
        assert!((rk.to_f64() - (5.0 - 2.0 * g.to_f64())).abs() < 1e-12);
        let mut s = SheafClass::default();
        s.push(StableClass::new(5, 2).unwrap(), 1, 1).unwrap();
        assert_eq!(rotated_rank(&s, &g), rk.neg());
        v.push(StableClass::new(1, 1).unwrap(), 1, 2).unwrap();
        assert!((rotated_rank(&v, &g).to_f64() - (rk.to_f64() + 2.0 * (g.to_f64() - 1.0))).abs() < 1e-12);
    }

    #[test]
    fn approximate_golden() {
        let g = th("[1;(1)]");
        let chain = approximate_rank(&g, &fr("2"), 0.2, 1e-4).unwrap();
        assert!(chain.len() <= 30);
        let last = elem(&chain.last().unwrap().rank_theta, &g).to_f64();
        assert!((last - 0.2).abs() < 1e-4);
        for w in chain.windows(2) {
            let (x, y) = (w[0].summands.vector(), w[1].summands.vector());
            let piece = beads(&g, &fr("2"), &elem(&w[0].d, &g), &elem(&w[1].d, &g)).unwrap().summands.vector();
            assert_eq!(y, (&x.0 + &piece.0, &x.1 + &piece.1));
        }
        assert!(matches!(approximate_rank(&g, &fr("2"), 0.2, 1e-30), Err(Error::TolTooTight { .. })));
        // Large quotients make the Euclidean steps slow: depth 64 is not enough.
        let slow = th("[0;(60)]");
        assert!(matches!(approximate_rank(&slow, &fr("1"), 0.5, 1e-9), Err(Error::TolTooTight { .. })));
        let top = 2.0 - g.to_f64();
        let near_top = approximate_rank(&g, &fr("2"), top - 1e-3, 1e-2).unwrap();
        assert!(elem(&near_top.last().unwrap().rank_theta, &g).to_f64() > top - 1e-2);
    }

    /// Quadratic θ together with an r satisfying 0 < r − θ < 1.
    fn arb_setup() -> impl Strategy<Value = (IrrationalNumber, ReducedFraction)> {
        (0i64..3, prop::collection::vec(1i64..4, 0..3), prop::collection::vec(1i64..4, 1..3), 1i64..4, 0i64..4).prop_map(
            |(a0, mut pre, per, q, k)| {
                pre.insert(0, a0);
                let theta = IrrationalNumber::periodic_i64(&pre, &per).unwrap();
                // Smallest p/q above θ with denominator q, nudged up by k/q while staying below θ + 1.
                let t = theta.to_f64();
                let base = (t * q as f64).floor() as i64 + 1;
                let mut p = base + k;
                while (p as f64) / (q as f64) - t >= 1.0 {
                    p -= 1;
                }
                (theta, ReducedFraction::new(p, q).unwrap())
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn equation_one_at_every_node((theta, r) in arb_setup()) {
            let tree = division_tree(&theta, &r, 8).unwrap();
            let mut stack = vec![&tree];
            while let Some(n) = stack.pop() {
                if let [l, rr] = n.children.as_slice() {
                    prop_assert_eq!(&l.a, &n.a);
                    prop_assert_eq!(&l.b, &rr.a);
                    prop_assert_eq!(&rr.b, &n.b);
                    let len = |x: &DivisionNode| elem(&x.b, &theta).checked_sub(&elem(&x.a, &theta)).unwrap();
                    prop_assert_eq!(len(n), theta_norm(&n.vertex, &theta).unwrap());
                    stack.push(l);
                    stack.push(rr);
                }
            }
        }

        #[test]
        fn density_gap_nonincreasing((theta, r) in arb_setup()) {
            let mut prev = f64::INFINITY;
            for depth in 1..10 {
                let pts = division_points(&theta, &r, depth).unwrap();
                let gap = pts.windows(2).map(|w| w[1].to_f64() - w[0].to_f64()).fold(0.0, f64::max);
                prop_assert!(gap <= prev + 1e-12);
                prev = gap;
            }
        }

        #[test]
        fn float_cross_check((theta, r) in arb_setup(), path in prop::collection::vec(any::<bool>(), 20)) {
            // The exact value of each point lies within 1e-9 of its f64 evaluation.
            let close = |x: &ThetaLatticeElement| {
                let f = x.to_f64();
                let scale = BigInt::from(1u64 << 40);
                [f - 1e-9, f + 1e-9].map(|g| {
                    let p = BigInt::from((g * (1u64 << 40) as f64).round() as i64);
                    ThetaLatticeElement::new(&x.m * &scale, &x.n * &scale - p, &theta).sign().unwrap()
                }) == [Ordering::Greater, Ordering::Less]
            };
            for x in division_points(&theta, &r, 10).unwrap() {
                prop_assert!(close(&x));
            }
            let mut iv = DivisionInterval::root(&theta, &r).unwrap();
            for go_left in path {
                let (l, rr) = divide(&iv).unwrap();
                prop_assert!(close(&l.b));
                iv = if go_left { l } else { rr };
            }
        }

        #[test]
        fn level_independence((theta, r) in arb_setup(), i in 0usize..64, j in 0usize..64) {
            let pts = division_points(&theta, &r, 6).unwrap();
            let (i, j) = (i % pts.len(), j % pts.len());
            prop_assume!(i < j);
            let obj = beads(&theta, &r, &pts[i], &pts[j]).unwrap();
            prop_assert_eq!(&obj, &beads_from_level(&theta, &r, &pts[i], &pts[j], 6).unwrap());
            prop_assert_eq!(&obj, &beads_from_level(&theta, &r, &pts[i], &pts[j], 7).unwrap());
            prop_assert_eq!(rotated_rank(&obj.summands, &theta), pts[j].checked_sub(&pts[i]).unwrap());
            prop_assert!(obj.summands.in_heart(&theta).unwrap());
        }

        #[test]
        fn ses_random_triples((theta, r) in arb_setup(), i in 0usize..256, j in 0usize..256, k in 0usize..256) {
            let pts = division_points(&theta, &r, 7).unwrap();
            let mut idx = [i % pts.len(), j % pts.len(), k % pts.len()];
            idx.sort();
            prop_assume!(idx[0] < idx[1] && idx[1] < idx[2]);
            let v = ses_check(&theta, &r, &pts[idx[0]], &pts[idx[1]], &pts[idx[2]]).unwrap();
            prop_assert!(v.pass, "{:?}", v.violations);
        }
    }

    #[test]
    fn ses_exhaustive_sqrt2() {
        let theta = th("[1;(2)]");
        let r = fr("3/2");
        let grid = DivisionGrid::new(&theta, &r, 5).unwrap();
        let pts = grid.points();
        assert_eq!(pts, division_points(&theta, &r, 5).unwrap());
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                for c in b + 1..pts.len() {
                    let v = grid.ses_check(&pts[a], &pts[b], &pts[c]).unwrap();
                    assert!(v.pass, "{a} {b} {c}: {:?}", v.violations);
                }
            }
        }
        assert!(ses_check(&theta, &r, &pts[0], &pts[0], &pts[3]).is_err());
        assert!(grid.ses_check(&pts[0], &pts[0], &pts[3]).is_err());
    }

    #[test]
    fn grid_agrees_with_direct_queries() {
        let theta = th("[0;(1,2)]");
        let r = fr("1/1");
        let grid = DivisionGrid::new(&theta, &r, 4).unwrap();
        let pts = grid.points();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                assert_eq!(grid.beads(&pts[a], &pts[b]).unwrap(), beads(&theta, &r, &pts[a], &pts[b]).unwrap());
                for c in b + 1..pts.len() {
                    let direct = ses_check(&theta, &r, &pts[a], &pts[b], &pts[c]).unwrap();
                    assert_eq!(grid.ses_check(&pts[a], &pts[b], &pts[c]).unwrap(), direct);
                }
            }
        }
        let deeper = division_points(&theta, &r, 5).unwrap();
        assert!(matches!(grid.beads(&deeper[0], &deeper[1]), Err(Error::NotDivisionPoint(_))));
        assert!(DivisionGrid::new(&theta, &fr("2/1"), 3).is_err());
    }
}
