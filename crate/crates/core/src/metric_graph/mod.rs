//! Metrized graphs and calculus on them.
//!
//! Every edge carries a fixed coordinate running from its tail (`x = 0`) to its
//! head (`x = length`); a self-loop uses one coordinate with both ends glued at
//! the same vertex. Functions are continuous and quadratic on each edge, and
//! measures are vertex atoms plus constant edge densities, so the Laplacian of
//! a function is again a measure of the same shape and everything stays exact.

mod graph;
mod measure;
mod point;
mod quadratic;

pub use graph::{build_graph, Edge, EdgeId, EdgeSpec, EdgeSplit, MetricGraph, Vertex, VertexId, VertexSpec};
pub use measure::Measure;
pub use point::{Divisor, GraphPoint};
pub use quadratic::{PiecewiseQuadratic, QuadraticPiece};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` has nonpositive length {length}")]
    NonpositiveLength { edge: String, length: Rational },
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("graph is disconnected: vertex `{0}` is unreachable")]
    Disconnected(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("offset {offset} is not inside edge {edge}")]
    OffsetOutOfRange { edge: EdgeId, offset: Rational },
    #[error("function is discontinuous at {vertex} along {edge}")]
    Discontinuous { edge: EdgeId, vertex: VertexId },
    #[error("objects live on different graphs")]
    GraphMismatch,
    #[error("scale factor {0} is not positive")]
    NonpositiveScale(Rational),
}

/// Exact value of `f` at `x`.
pub fn evaluate(f: &PiecewiseQuadratic, x: &GraphPoint) -> Result<Rational, GraphError> {
    f.evaluate(x)
}

/// Exact `integral f dm`.
pub fn integrate_against(f: &PiecewiseQuadratic, m: &Measure) -> Result<Rational, GraphError> {
    f.integrate_against(m)
}

/// See [`PiecewiseQuadratic::laplacian`] for the sign convention.
pub fn laplacian_of(f: &PiecewiseQuadratic) -> Measure {
    f.laplacian()
}
