//! Sums of products of Hermite-Biehler polynomials.
//!
//! Given a real entire function `G` with only real zeros, positive shifts
//! `a_k` and polynomials `w_k` with all roots in the upper half-plane,
//! `H_n(z) = sum_S G(-i sum_{S'} a + i sum_S a) prod_{S'} w_k* prod_S w_k`
//! has only real zeros. This crate builds `H_n` and its relatives in exact
//! ℚ(i) arithmetic, certifies zero loci with Sturm sequences, and
//! cross-checks everything with a binary64 root finder and an
//! argument-principle zero counter.

pub mod certify;
pub mod construct;
pub mod error;
pub mod fuzz;
pub mod hb;
pub mod json;
pub mod numeric;
pub mod poly;
pub mod roots;

pub use certify::{Certificate, Locus, Verdict};
pub use construct::{CouplingMatrix, ExpSum, Instance, Limits, RealRootedG};
pub use error::{Error, ErrorClass, Result};
pub use hb::HBPoly;
pub use numeric::{ComplexF, GaussianRational, Rational, TolerancePolicy};
pub use poly::{CPoly, ExactPoly, FloatPoly, Poly, RPoly};
pub use roots::{ContourBox, RootSet};
