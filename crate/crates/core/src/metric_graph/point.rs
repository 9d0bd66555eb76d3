use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::graph::{EdgeId, MetricGraph, VertexId};
use super::GraphError;
use crate::Rational;

/// A location on a metrized graph.
///
/// Endpoints of edges are always represented as [`GraphPoint::Vertex`]; use
/// [`MetricGraph::point_on_edge`] to get the canonical form of an arbitrary
/// offset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Vertex(VertexId),
    /// `0 < offset < length`, measured from the edge's tail.
    EdgeInterior { edge: EdgeId, offset: Rational },
}

impl From<VertexId> for GraphPoint {
    fn from(v: VertexId) -> Self {
        GraphPoint::Vertex(v)
    }
}

impl GraphPoint {
    pub fn as_vertex(&self) -> Option<VertexId> {
        match self {
            GraphPoint::Vertex(v) => Some(*v),
            GraphPoint::EdgeInterior { .. } => None,
        }
    }
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphPoint::Vertex(v) => write!(f, "{v}"),
            GraphPoint::EdgeInterior { edge, offset } => write!(f, "{edge}+{offset}"),
        }
    }
}

/// A finitely supported rational combination of points.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    coefficients: BTreeMap<GraphPoint, Rational>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coefficient * point`, dropping the entry if it cancels to zero.
    pub fn add(
        &mut self,
        graph: &MetricGraph,
        point: GraphPoint,
        coefficient: Rational,
    ) -> Result<(), GraphError> {
        let point = canonical(graph, point)?;
        let entry = self.coefficients.entry(point).or_insert_with(Rational::zero);
        *entry += coefficient;
        self.coefficients.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn with(
        mut self,
        graph: &MetricGraph,
        point: impl Into<GraphPoint>,
        coefficient: Rational,
    ) -> Result<Self, GraphError> {
        self.add(graph, point.into(), coefficient)?;
        Ok(self)
    }

    pub fn degree(&self) -> Rational {
        self.coefficients.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn coefficient(&self, point: &GraphPoint) -> Rational {
        self.coefficients.get(point).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GraphPoint, &Rational)> {
        self.coefficients.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GraphPoint> {
        self.coefficients.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

fn canonical(graph: &MetricGraph, point: GraphPoint) -> Result<GraphPoint, GraphError> {
    match point {
        GraphPoint::Vertex(v) => graph.vertex(v).map(|_| GraphPoint::Vertex(v)),
        GraphPoint::EdgeInterior { edge, offset } => graph.point_on_edge(edge, offset),
    }
}
