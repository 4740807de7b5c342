//! Exact arithmetic for Farey tessellations, continued fractions and the
//! class-level calculus of stable bundles on the Fargues–Fontaine curve.
//!
//! Irrational numbers are handled only through their partial quotients, so
//! every predicate (order, sign, adjacency) is decided with integer
//! arithmetic. Floating point appears in [`render`] and nowhere else.

pub mod bigjson;
pub mod continued_fractions;
pub mod division_engine;
pub mod error;
pub mod exact_numbers;
pub mod farey_geometry;
pub mod render;
pub mod sheaf_calculus;

pub use error::{Error, Result};
pub use exact_numbers::{
    chi, compare_irrationals, compare_theta_rational, theta_norm, IrrationalNumber, LatticeCoords, QuotientSource,
    ReducedFraction, ThetaLatticeElement,
};
pub use render::{Geodesic32, Geodesic64, Point32, Point64};
