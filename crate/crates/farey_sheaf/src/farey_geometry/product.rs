//! The product ·_θ and the bottom b_{θ,θ'}.

use super::{farey_diagram, start_edge, Endpoint, FareyTriangle, Walker};
use crate::error::{Error, Result};
use crate::exact_numbers::{compare_irrationals, IrrationalNumber, ReducedFraction};
use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;

/// Index of the complementary arc of t holding z: 0 for (v0, v1), 1 for (v1, v2),
/// 2 for the arc through ∞. z must not be a vertex.
fn arc_index(t: &FareyTriangle, z: &Endpoint) -> Result<usize> {
    let [v0, v1, v2] = t.vertices();
    if z.cmp_fraction(v0)? == Ordering::Greater && z.cmp_fraction(v1)? == Ordering::Less {
        Ok(0)
    } else if z.cmp_fraction(v1)? == Ordering::Greater && z.cmp_fraction(v2)? == Ordering::Less {
        Ok(1)
    } else {
        Ok(2)
    }
}

/// Does the geodesic from a to θ pass through the interior of t?
pub fn crosses(t: &FareyTriangle, a: &Endpoint, theta: &IrrationalNumber) -> Result<bool> {
    let th = Endpoint::Irrational(theta.clone());
    let theta_arc = arc_index(t, &th)?;
    if let Endpoint::Rational(r) = a {
        if let Some(i) = t.vertices().iter().position(|v| v == r) {
            // From a vertex the geodesic enters t only if θ lies across the opposite edge.
            return Ok(theta_arc == (i + 1) % 3);
        }
    }
    Ok(arc_index(t, a)? != theta_arc)
}

/// The rational p/q whose diagram starts at F0, the first triangle shared by two diagrams.
fn vertex_opposite_exit(t: &FareyTriangle, theta: &IrrationalNumber) -> Result<ReducedFraction> {
    let [r0, s0, t0] = t.vertices().clone();
    let th = Endpoint::Irrational(theta.clone());
    Ok(match arc_index(t, &th)? {
        1 => r0,
        0 => t0,
        _ => s0,
    })
}

/// r₁ ·_θ r₂: the p/q with F_{θ,r₁} ∩ F_{θ,r₂} = F_{θ,p/q}.
pub fn theta_product(r1: &Endpoint, r2: &Endpoint, theta: &IrrationalNumber) -> Result<Endpoint> {
    let is_theta = |e: &Endpoint| matches!(e, Endpoint::Irrational(t) if t == theta);
    if is_theta(r1) || is_theta(r2) {
        return Ok(Endpoint::Irrational(theta.clone()));
    }
    if r1 == r2 {
        return Ok(r1.clone());
    }
    match (r1, r2) {
        (Endpoint::Rational(a), other) => along_rational(a, other, theta),
        (other, Endpoint::Rational(b)) => along_rational(b, other, theta),
        (Endpoint::Irrational(a), _) => {
            let mut depth = 8;
            loop {
                let d = farey_diagram(theta, &Endpoint::Irrational(a.clone()), depth)?;
                let first = d.triangles.iter().map(|t| crosses(&t.vertices, r2, theta)).collect::<Result<Vec<_>>>()?;
                match first.iter().position(|&c| c) {
                    Some(i) if i > 0 => {
                        return Ok(Endpoint::Rational(vertex_opposite_exit(&d.triangles[i].vertices, theta)?));
                    }
                    _ => depth *= 2,
                }
            }
        }
    }
}

fn along_rational(r: &ReducedFraction, other: &Endpoint, theta: &IrrationalNumber) -> Result<Endpoint> {
    let (x, y) = start_edge(theta, r)?;
    let mut walker = Walker { theta: theta.clone(), x, y };
    let (a, b) = walker.edge();
    let mut t = FareyTriangle::new(r.clone(), a, b)?;
    loop {
        if crosses(&t, other, theta)? {
            return Ok(Endpoint::Rational(vertex_opposite_exit(&t, theta)?));
        }
        t = walker.step()?.triangle;
    }
}

/// The unique Farey triangle r₀ < θ < s₀ < θ' < t₀ (t₀ may be ∞), for θ < θ'.
///
/// With k the first index where the expansions differ and m = min(a_k, b_k) + 1,
/// s₀ = m·β_{k−1} + β_{k−2}, and its Farey parents are s₀ − β_{k−1} and β_{k−1}.
pub fn bottom_triangle(theta: &IrrationalNumber, theta_prime: &IrrationalNumber) -> Result<[ReducedFraction; 3]> {
    if compare_irrationals(theta, theta_prime)? != Ordering::Less {
        return Err(Error::invalid("the bottom needs θ < θ'"));
    }
    let mut k = 0usize;
    while theta.quotient(k)? == theta_prime.quotient(k)? {
        k += 1;
    }
    let m = theta.quotient(k)?.min(theta_prime.quotient(k)?) + BigInt::one();
    let (p1, q1) = theta.convergent(k as i64 - 1)?;
    let (p2, q2) = theta.convergent(k as i64 - 2)?;
    let s = ReducedFraction::new(&m * &p1 + &p2, &m * &q1 + &q2)?;
    let m1 = &m - BigInt::one();
    let u = ReducedFraction::new(&m1 * &p1 + &p2, &m1 * &q1 + &q2)?;
    let v = ReducedFraction::new(p1, q1)?;
    Ok(FareyTriangle::new(u, s, v)?.vertices().clone())
}

/// b_{θ,θ'}: the fraction of least denominator in (θ, θ'); among integers the smallest.
pub fn bottom(theta: &IrrationalNumber, theta_prime: &IrrationalNumber) -> Result<ReducedFraction> {
    let [_, s, _] = bottom_triangle(theta, theta_prime)?;
    Ok(s)
}
