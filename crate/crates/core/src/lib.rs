//! Exact potential theory on metrized graphs, specialised to the dual graphs
//! of semistable genus-2 fibres.
//!
//! The crate is organised bottom-up:
//!
//! - [`metric_graph`]: graphs with rational edge lengths, points, divisors,
//!   measures, piecewise-quadratic functions and their measure-valued Laplacian.
//! - [`green_solver`]: the admissible Green function `g_mu(P, .)` solved exactly,
//!   plus a floating-point discretisation used as an independent oracle.
//! - [`genus2_catalog`]: the seven semistable genus-2 fibre types, their dual
//!   graphs and reference measures, and the local invariants `delta_y`, `d_y`, `e_y`.
//! - [`bogomolov`]: global self-intersection bookkeeping, the effective lower
//!   bound and the extremal-ratio scanner.
//!
//! All core arithmetic is exact over [`Rational`]. Floating point only appears
//! in the discretisation oracle and in decimal renderings of reports.

pub mod bogomolov;
pub mod genus2_catalog;
pub mod green_solver;
pub mod metric_graph;

pub use num::BigRational as Rational;

use num::{BigInt, One, Zero};

/// Shorthand for the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The rational integer `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn is_positive(x: &Rational) -> bool {
    x > &Rational::zero()
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
