//! The seven types of semistable genus-2 fibres and their local invariants.
//!
//! A fibre type is fixed by the stable model; the lengths `a`, `b`, `c` are the
//! lengths of the chains of (-2)-curves sitting over its nodes. Geometrically
//! they are positive integers, but every formula here is rational in them, so
//! any positive rational is accepted (which is what makes scaling tests
//! possible).
//!
//! | type | dual graph | `mu` |
//! |------|------------|------|
//! | I | point `P` (genus 2) | `delta_P` |
//! | II(a) | segment `P - Q` of length a | `delta_P/2 + delta_Q/2` |
//! | III(a) | loop of length a at `P` | `delta_P/2 + dt/(2a)` |
//! | IV(a,b) | segment `P - Q` of length a, loop b at `Q` | `delta_P/2 + dt/(2b)` |
//! | V(a,b) | loops a and b at `P` | `ds/(2a) + dt/(2b)` |
//! | VI(a,b,c) | segment a, loop b at `P`, loop c at `Q` | `dt/(2b) + du/(2c)` |
//! | VII(a,b,c) | three parallel edges a, b, c from `P` to `Q` | `ds/(3a) + dt/(3b) + du/(3c)` |
//!
//! The measures for III and V are reconstructed by analogy with IV and VI;
//! they reproduce the tabulated `e_y = a/6` and `(a+b)/6` exactly.
//!
//! With `D = P + Q` the correction is `e = -g(D,D) + 4c` where
//! `c = g(P,P) + g(P,D)`, which collapses to `6 g(P,P) + 2 g(P,Q)` once
//! `g(P,P) = g(Q,Q)`. For one-component types `D = 2P`, so `g(D,D) = 4 g(P,P)`,
//! `c = 3 g(P,P)` and `e = 8 g(P,P)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{ToPrimitive, Zero};

use crate::green_solver::{discretize_green, GreenCache, OracleError, SolveError};
use crate::metric_graph::{
    build_graph, Divisor, EdgeId, EdgeSpec, GraphError, GraphPoint, Measure, MetricGraph, VertexId, VertexSpec,
};
use crate::{int, is_positive, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl FiberType {
    pub const ALL: [FiberType; 7] =
        [FiberType::I, FiberType::II, FiberType::III, FiberType::IV, FiberType::V, FiberType::VI, FiberType::VII];

    /// Number of length parameters.
    pub fn arity(self) -> usize {
        match self {
            FiberType::I => 0,
            FiberType::II | FiberType::III => 1,
            FiberType::IV | FiberType::V => 2,
            FiberType::VI | FiberType::VII => 3,
        }
    }

    /// Whether the stable model has two irreducible components.
    pub fn is_two_component(self) -> bool {
        matches!(self, FiberType::II | FiberType::IV | FiberType::VI | FiberType::VII)
    }

    pub fn name(self) -> &'static str {
        match self {
            FiberType::I => "I",
            FiberType::II => "II",
            FiberType::III => "III",
            FiberType::IV => "IV",
            FiberType::V => "V",
            FiberType::VI => "VI",
            FiberType::VII => "VII",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FiberType::I => "a smooth curve of genus 2",
            FiberType::II => "two elliptic curves meeting at one point transversally",
            FiberType::III => "an elliptic curve with one node",
            FiberType::IV => "a smooth elliptic curve and a rational curve with one node, meeting at one point",
            FiberType::V => "a rational curve with two nodes",
            FiberType::VI => "two rational curves with one node each, meeting at one point",
            FiberType::VII => "two smooth rational curves meeting at three points",
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FiberType {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FiberType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| SpecError::UnknownType(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("unknown fibre type `{0}`")]
    UnknownType(String),
    #[error("type {kind} takes {expected} length parameter(s), got {got}")]
    Arity { kind: FiberType, expected: usize, got: usize },
    #[error("length parameter {value} of type {kind} is not positive")]
    NonpositiveLength { kind: FiberType, value: Rational },
}

/// A fibre type with its chain lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberSpec {
    kind: FiberType,
    lengths: Vec<Rational>,
}

impl FiberSpec {
    pub fn new(kind: FiberType, lengths: Vec<Rational>) -> Result<Self, SpecError> {
        if lengths.len() != kind.arity() {
            return Err(SpecError::Arity { kind, expected: kind.arity(), got: lengths.len() });
        }
        if let Some(bad) = lengths.iter().find(|l| !is_positive(l)) {
            return Err(SpecError::NonpositiveLength { kind, value: bad.clone() });
        }
        Ok(Self { kind, lengths })
    }

    pub fn smooth() -> Self {
        Self { kind: FiberType::I, lengths: vec![] }
    }

    pub fn kind(&self) -> FiberType {
        self.kind
    }

    /// Parameters in the order `a, b, c`.
    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    /// The same type with every length multiplied by `factor > 0`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self, SpecError> {
        Self::new(self.kind, self.lengths.iter().map(|l| l * factor).collect())
    }
}

impl fmt::Display for FiberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.lengths.is_empty() {
            let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Dual graph of a fibre with its canonical divisor and reference measure.
#[derive(Debug, Clone)]
pub struct FiberModel {
    pub spec: FiberSpec,
    pub graph: Arc<MetricGraph>,
    /// `D_y`, of degree 2.
    pub divisor: Divisor,
    pub mu: Measure,
    /// `P`, followed by `Q` for two-component types.
    pub stable_vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("Green identity violated for {spec}: {detail}")]
    IdentityViolated { spec: String, detail: String },
}

const P: VertexId = VertexId(0);
const Q: VertexId = VertexId(1);

pub fn build_model(spec: &FiberSpec) -> Result<FiberModel, CatalogError> {
    let l = spec.lengths();
    let (vertices, edges) = match spec.kind() {
        FiberType::I => (vec![VertexSpec::with_genus("P", 2)], vec![]),
        FiberType::II => (
            vec![VertexSpec::with_genus("P", 1), VertexSpec::with_genus("Q", 1)],
            vec![EdgeSpec::new("G", "P", "Q", l[0].clone())],
        ),
        FiberType::III => (vec![VertexSpec::with_genus("P", 1)], vec![EdgeSpec::new("G", "P", "P", l[0].clone())]),
        FiberType::IV => (
            vec![VertexSpec::with_genus("P", 1), VertexSpec::new("Q")],
            vec![EdgeSpec::new("G1", "P", "Q", l[0].clone()), EdgeSpec::new("G2", "Q", "Q", l[1].clone())],
        ),
        FiberType::V => (
            vec![VertexSpec::new("P")],
            vec![EdgeSpec::new("G1", "P", "P", l[0].clone()), EdgeSpec::new("G2", "P", "P", l[1].clone())],
        ),
        FiberType::VI => (
            vec![VertexSpec::new("P"), VertexSpec::new("Q")],
            vec![
                EdgeSpec::new("G1", "P", "Q", l[0].clone()),
                EdgeSpec::new("G2", "P", "P", l[1].clone()),
                EdgeSpec::new("G3", "Q", "Q", l[2].clone()),
            ],
        ),
        FiberType::VII => (
            vec![VertexSpec::new("P"), VertexSpec::new("Q")],
            vec![
                EdgeSpec::new("G1", "P", "Q", l[0].clone()),
                EdgeSpec::new("G2", "P", "Q", l[1].clone()),
                EdgeSpec::new("G3", "P", "Q", l[2].clone()),
            ],
        ),
    };
    let graph = build_graph(vertices, edges)?;
    let half = rat(1, 2);
    let third = rat(1, 3);
    let e = EdgeId;
    let mu = match spec.kind() {
        FiberType::I => Measure::dirac(&graph, P)?,
        FiberType::II => Measure::zero(&graph).with_atom(P, half.clone())?.with_atom(Q, half)?,
        FiberType::III => Measure::zero(&graph).with_atom(P, half.clone())?.with_edge_mass(e(0), half)?,
        FiberType::IV => Measure::zero(&graph).with_atom(P, half.clone())?.with_edge_mass(e(1), half)?,
        FiberType::V => Measure::zero(&graph).with_edge_mass(e(0), half.clone())?.with_edge_mass(e(1), half)?,
        FiberType::VI => Measure::zero(&graph).with_edge_mass(e(1), half.clone())?.with_edge_mass(e(2), half)?,
        FiberType::VII => Measure::zero(&graph)
            .with_edge_mass(e(0), third.clone())?
            .with_edge_mass(e(1), third.clone())?
            .with_edge_mass(e(2), third)?,
    };
    let (divisor, stable_vertices) = if spec.kind().is_two_component() {
        (Divisor::new().with(&graph, P, int(1))?.with(&graph, Q, int(1))?, vec![P, Q])
    } else {
        (Divisor::new().with(&graph, P, int(2))?, vec![P])
    };
    Ok(FiberModel { spec: spec.clone(), graph, divisor, mu, stable_vertices })
}

/// `delta_y`: the number of nodes of the fibre.
pub fn delta_invariant(spec: &FiberSpec) -> Rational {
    delta_of(spec.kind(), spec.lengths())
}

/// `d_y`: order of vanishing of the canonical section of `det(f_* omega)^10`.
pub fn d_invariant(spec: &FiberSpec) -> Rational {
    d_of(spec.kind(), spec.lengths())
}

/// Tabulated `e_y`.
pub fn e_closed_form(spec: &FiberSpec) -> Rational {
    e_of(spec.kind(), spec.lengths()).expect("positive lengths keep every denominator nonzero")
}

fn sum(l: &[Rational]) -> Rational {
    l.iter().fold(Rational::zero(), |acc, x| acc + x)
}

pub(crate) fn delta_of(kind: FiberType, l: &[Rational]) -> Rational {
    match kind {
        FiberType::I => Rational::zero(),
        _ => sum(l),
    }
}

pub(crate) fn d_of(kind: FiberType, l: &[Rational]) -> Rational {
    match kind {
        FiberType::I => Rational::zero(),
        FiberType::II | FiberType::IV | FiberType::VI => sum(l) + &l[0],
        FiberType::III | FiberType::V | FiberType::VII => sum(l),
    }
}

/// `None` only when type VII has two vanishing lengths, which the boundary
/// scan can ask about.
pub(crate) fn e_of(kind: FiberType, l: &[Rational]) -> Option<Rational> {
    let sixth = rat(1, 6);
    Some(match kind {
        FiberType::I => Rational::zero(),
        FiberType::II => l[0].clone(),
        FiberType::III => &l[0] * &sixth,
        FiberType::IV => &l[0] + &l[1] * &sixth,
        FiberType::V => (&l[0] + &l[1]) * &sixth,
        FiberType::VI => &l[0] + (&l[1] + &l[2]) * &sixth,
        FiberType::VII => {
            let (a, b, c) = (&l[0], &l[1], &l[2]);
            let pairs = a * b + b * c + c * a;
            if pairs.is_zero() {
                return None;
            }
            rat(2, 27) * sum(l) + a * b * c / pairs
        }
    })
}

/// Green-function values entering `e_y`, with every intermediate kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenBreakdown {
    pub g_pp: Rational,
    /// `g(P,Q)`, `g(Q,Q)` and `c` computed from `Q`; two-component types only.
    pub g_pq: Option<Rational>,
    pub g_qq: Option<Rational>,
    pub c_from_p: Rational,
    pub c_from_q: Option<Rational>,
    /// `-g(D,D) + 4c`.
    pub e_general: Rational,
    /// `6 g(P,P) + 2 g(P,Q)`, or `8 g(P,P)` for one-component types.
    pub e_reduced: Rational,
}

/// Solves the Green functions of the fibre and evaluates both forms of `e_y`.
pub fn green_breakdown(spec: &FiberSpec) -> Result<GreenBreakdown, CatalogError> {
    let model = build_model(spec)?;
    let cache = GreenCache::new(&model.graph, &model.mu)?;
    let pairing = |x: &GraphPoint, d: &Divisor| -> Result<Rational, CatalogError> {
        let x = x.as_vertex().expect("catalog divisors sit on vertices");
        let mut acc = Rational::zero();
        for (y, coefficient) in d.iter() {
            acc += coefficient * cache.value(x, y)?;
        }
        Ok(acc)
    };
    let mut g_dd = Rational::zero();
    for (x, coefficient) in model.divisor.iter() {
        g_dd += coefficient * pairing(x, &model.divisor)?;
    }
    let g_pp = cache.between(P, P)?;
    let c_from_p = &g_pp + pairing(&GraphPoint::Vertex(P), &model.divisor)?;
    let e_general = -g_dd + int(4) * &c_from_p;

    let (g_pq, g_qq, c_from_q, e_reduced) = if spec.kind().is_two_component() {
        let g_pq = cache.between(P, Q)?;
        let g_qq = cache.between(Q, Q)?;
        let c_from_q = &g_qq + pairing(&GraphPoint::Vertex(Q), &model.divisor)?;
        let e = int(6) * &g_pp + int(2) * &g_pq;
        (Some(g_pq), Some(g_qq), Some(c_from_q), e)
    } else {
        (None, None, None, int(8) * &g_pp)
    };
    Ok(GreenBreakdown { g_pp, g_pq, g_qq, c_from_p, c_from_q, e_general, e_reduced })
}

/// `e_y` recomputed from first principles.
///
/// Fails with [`CatalogError::IdentityViolated`] if `g(P,P) != g(Q,Q)`, if the
/// two expressions for `c` differ, or if the general and reduced formulas for
/// `e_y` disagree.
pub fn e_from_green(spec: &FiberSpec) -> Result<Rational, CatalogError> {
    let b = green_breakdown(spec)?;
    let violated = |detail: String| CatalogError::IdentityViolated { spec: spec.to_string(), detail };
    if let Some(g_qq) = &b.g_qq {
        if g_qq != &b.g_pp {
            return Err(violated(format!("g(P,P) = {} but g(Q,Q) = {}", b.g_pp, g_qq)));
        }
    }
    if let Some(c_q) = &b.c_from_q {
        if c_q != &b.c_from_p {
            return Err(violated(format!("c from P = {} but c from Q = {}", b.c_from_p, c_q)));
        }
    }
    if b.e_general != b.e_reduced {
        return Err(violated(format!("-g(D,D)+4c = {} but reduced form = {}", b.e_general, b.e_reduced)));
    }
    Ok(b.e_reduced)
}

/// `e_y` from the discretisation oracle at `n` subdivisions per edge.
pub fn e_discrete(spec: &FiberSpec, n: usize) -> Result<f64, CatalogError> {
    let model = build_model(spec)?;
    if model.graph.edge_count() == 0 {
        return Ok(0.0);
    }
    let from_p = discretize_green(&model.graph, &model.mu, P, n)?;
    Ok(if spec.kind().is_two_component() {
        6.0 * from_p.vertex_value(P) + 2.0 * from_p.vertex_value(Q)
    } else {
        8.0 * from_p.vertex_value(P)
    })
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
