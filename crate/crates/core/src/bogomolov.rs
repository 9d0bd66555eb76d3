//! Global bookkeeping over the singular fibres of a genus-2 fibration.
//!
//! Per fibre the contribution to the admissible self-intersection is
//! `(6/5) d_y - delta_y - e_y`. Summing gives `(omega^a . omega^a)_a`, whose
//! square root (times `g - 1 = 1`) is the effective lower bound; the
//! uniform floor is `sqrt((2/135) delta)`. Square roots are only ever taken in
//! floating point for display: the exact objects are their radicands.

use std::fmt;

use num::{Signed, Zero};

use crate::genus2_catalog::{
    d_invariant, d_of, delta_invariant, delta_of, e_closed_form, e_from_green, e_of, to_f64, CatalogError, FiberSpec,
    FiberType,
};
use crate::{int, is_positive, rat, Rational};

/// The genus the whole module is about.
pub const GENUS: i64 = 2;

/// The constant in `(omega^a . omega^a)_a >= (2/135) delta`.
pub fn floor_constant() -> Rational {
    rat(2, 135)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("inequality inputs must be positive, got {0}")]
    NonpositiveInput(Rational),
    #[error("type I has no singular points, so its ratio is undefined")]
    SmoothType,
    #[error("scan resolution must be at least 10, got {0}")]
    ResolutionTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub spec: FiberSpec,
    pub delta: Rational,
    pub d: Rational,
    pub e: Rational,
    /// `(6/5) d - delta - e`.
    pub contribution: Rational,
}

impl FiberReport {
    fn assemble(spec: &FiberSpec, e: Rational) -> Self {
        let delta = delta_invariant(spec);
        let d = d_invariant(spec);
        let contribution = rat(6, 5) * &d - &delta - &e;
        FiberReport { spec: spec.clone(), delta, d, e, contribution }
    }

    /// `delta * (omega . omega)` part: `(6/5) d - delta`.
    pub fn omega_squared(&self) -> Rational {
        rat(6, 5) * &self.d - &self.delta
    }
}

/// Contribution of one fibre from the tabulated closed forms.
pub fn fiber_contribution(spec: &FiberSpec) -> FiberReport {
    FiberReport::assemble(spec, e_closed_form(spec))
}

/// Contribution of one fibre with `e_y` recomputed by the Green solver.
pub fn fiber_contribution_via_green(spec: &FiberSpec) -> Result<FiberReport, CatalogError> {
    Ok(FiberReport::assemble(spec, e_from_green(spec)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// No singular fibre: a non-isotrivial genus-2 family is never smooth,
    /// so this configuration cannot come from one.
    AllSmooth,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::AllSmooth => f.write_str(
                "no singular fibres (delta = 0): a non-isotrivial genus-2 family is never smooth, \
                 so this configuration is inconsistent with one; bound reported as 0",
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    pub fibers: Vec<FiberReport>,
    pub delta: Rational,
    /// `(omega . omega)`.
    pub omega2: Rational,
    pub sum_e: Rational,
    /// `(omega^a . omega^a)_a`.
    pub omega2_admissible: Rational,
    /// `deg det f_* omega = sum d_y / 10`.
    pub deg_det: Rational,
    /// `(g - 1) (omega^a . omega^a)_a`, or 0 when that is not positive.
    pub bound_radicand: Rational,
    /// `(2/135) delta`.
    pub floor_radicand: Rational,
    pub warnings: Vec<Warning>,
}

impl GlobalReport {
    pub fn bound(&self) -> f64 {
        to_f64(&self.bound_radicand).sqrt()
    }

    pub fn floor(&self) -> f64 {
        to_f64(&self.floor_radicand).sqrt()
    }

    /// Whether the effective bound meets the uniform floor exactly.
    pub fn is_equality(&self) -> bool {
        self.bound_radicand == self.floor_radicand
    }
}

pub fn global_report(specs: &[FiberSpec]) -> GlobalReport {
    summarize(specs.iter().map(fiber_contribution).collect())
}

pub fn global_report_via_green(specs: &[FiberSpec]) -> Result<GlobalReport, CatalogError> {
    let fibers = specs.iter().map(fiber_contribution_via_green).collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(fibers))
}

/// Builds the global quantities from already computed fibre reports.
pub fn summarize(fibers: Vec<FiberReport>) -> GlobalReport {
    let zero = Rational::zero;
    let delta = fibers.iter().fold(zero(), |acc, f| acc + &f.delta);
    let omega2 = fibers.iter().fold(zero(), |acc, f| acc + f.omega_squared());
    let sum_e = fibers.iter().fold(zero(), |acc, f| acc + &f.e);
    let omega2_admissible = fibers.iter().fold(zero(), |acc, f| acc + &f.contribution);
    let deg_det = fibers.iter().fold(zero(), |acc, f| acc + &f.d) / int(10);
    let admissible_term = int(GENUS - 1) * &omega2_admissible;
    let bound_radicand = if is_positive(&admissible_term) { admissible_term } else { zero() };
    let floor_radicand = floor_constant() * &delta;
    let warnings = if delta.is_zero() { vec![Warning::AllSmooth] } else { vec![] };
    GlobalReport {
        fibers,
        delta,
        omega2,
        sum_e,
        omega2_admissible,
        deg_det,
        bound_radicand,
        floor_radicand,
        warnings,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmGmCheck {
    /// `abc / (ab + bc + ca)`.
    pub lhs: Rational,
    /// `(a + b + c) / 9`.
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

pub fn check_amgm_inequality(a: &Rational, b: &Rational, c: &Rational) -> Result<AmGmCheck, BoundError> {
    for x in [a, b, c] {
        if !is_positive(x) {
            return Err(BoundError::NonpositiveInput(x.clone()));
        }
    }
    let lhs = a * b * c / (a * b + b * c + c * a);
    let rhs = (a + b + c) / int(9);
    Ok(AmGmCheck { holds: lhs <= rhs, equality: lhs == rhs, lhs, rhs })
}

/// Where the infimum of the ratio over the open simplex sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infimum {
    /// The scanned minimum is not beaten anywhere on the boundary.
    Attained,
    /// The ratio extends to a face of the simplex with a smaller value; it is
    /// approached as lengths shrink to zero but never reached.
    BoundaryLimit { value: Rational, at: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanCertificate {
    pub kind: FiberType,
    pub resolution: usize,
    /// Smallest `contribution / delta` over the evaluated interior points.
    pub minimum: Rational,
    /// Lengths (summing to 1) where it occurs; lexicographically first on ties.
    pub argmin: Vec<Rational>,
    pub evaluations: usize,
    pub infimum: Infimum,
}

impl ScanCertificate {
    /// The infimum of the ratio as far as the scan can tell.
    pub fn infimum_value(&self) -> &Rational {
        match &self.infimum {
            Infimum::Attained => &self.minimum,
            Infimum::BoundaryLimit { value, .. } => value,
        }
    }

    /// Whether no evaluated point falls below the `2/135` floor.
    pub fn respects_floor(&self) -> bool {
        self.minimum >= floor_constant()
    }
}

/// `contribution / delta` for raw lengths, zeros allowed where defined.
fn ratio(kind: FiberType, lengths: &[Rational]) -> Option<Rational> {
    let delta = delta_of(kind, lengths);
    if !is_positive(&delta) {
        return None;
    }
    let e = e_of(kind, lengths)?;
    Some((rat(6, 5) * d_of(kind, lengths) - &delta - e) / delta)
}

/// Minimises `contribution / delta_y` over lengths summing to 1.
///
/// The ratio is homogeneous of degree 0, so the simplex covers every shape.
/// Grid points with denominators `resolution` are evaluated exactly, then a
/// `10x` finer grid around the best point. Boundary faces are evaluated
/// separately to detect infima that are only approached.
pub fn minimize_contribution_ratio(kind: FiberType, resolution: usize) -> Result<ScanCertificate, BoundError> {
    if kind == FiberType::I {
        return Err(BoundError::SmoothType);
    }
    if resolution < 10 {
        return Err(BoundError::ResolutionTooSmall(resolution));
    }
    let arity = kind.arity();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut evaluations = 0;
    let mut consider = |point: Vec<Rational>, best: &mut Option<(Rational, Vec<Rational>)>| {
        if let Some(r) = ratio(kind, &point) {
            evaluations += 1;
            let better = match best {
                None => true,
                Some((m, at)) => r < *m || (r == *m && point < *at),
            };
            if better {
                *best = Some((r, point));
            }
        }
    };

    let coarse = int(resolution as i64);
    for parts in compositions(resolution as i64, arity, 1) {
        consider(parts.into_iter().map(|p| int(p) / &coarse).collect(), &mut best);
    }

    let centre = best.as_ref().expect("the open simplex has grid points").1.clone();
    let fine = int(10 * resolution as i64);
    for offsets in offset_box(arity - 1, 10) {
        let mut point: Vec<Rational> =
            centre.iter().zip(&offsets).map(|(c, &o)| c + int(o) / &fine).collect();
        let rest = int(1) - point.iter().fold(Rational::zero(), |acc, x| acc + x);
        point.push(rest);
        if point.iter().all(is_positive) {
            consider(point, &mut best);
        }
    }
    let (minimum, argmin) = best.expect("nonempty scan");

    let mut boundary: Option<(Rational, Vec<Rational>)> = None;
    for parts in compositions(resolution as i64, arity, 0) {
        if parts.iter().all(|&p| p > 0) {
            continue;
        }
        let point: Vec<Rational> = parts.into_iter().map(|p| int(p) / &coarse).collect();
        if let Some(r) = ratio(kind, &point) {
            if boundary.as_ref().map_or(true, |(m, _)| r < *m) {
                boundary = Some((r, point));
            }
        }
    }
    let infimum = match boundary {
        Some((value, at)) if value < minimum => Infimum::BoundaryLimit { value, at },
        _ => Infimum::Attained,
    };

    Ok(ScanCertificate { kind, resolution, minimum, argmin, evaluations, infimum })
}

/// All ways to write `total` as an ordered sum of `parts` integers `>= min`,
/// in lexicographic order.
fn compositions(total: i64, parts: usize, min: i64) -> Vec<Vec<i64>> {
    if parts == 1 {
        return if total >= min { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in min..=total - min * (parts as i64 - 1) {
        for mut rest in compositions(total - first, parts - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `{-radius..=radius}^dims` in lexicographic order.
fn offset_box(dims: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-radius..=radius).map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o);
                    p
                })
            })
            .collect();
    }
    out
}

/// `x` to 12 significant digits.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Decimal rendering of an exact rational.
pub fn decimal(x: &Rational) -> String {
    format_decimal(to_f64(x))
}

/// Decimal rendering of `sqrt(x)` for `x >= 0`.
pub fn sqrt_decimal(x: &Rational) -> String {
    format_decimal(to_f64(&x.abs()).sqrt())
}
