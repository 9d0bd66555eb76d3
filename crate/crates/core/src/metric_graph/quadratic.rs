use std::sync::Arc;

use num::Zero;

use super::graph::{EdgeId, MetricGraph, VertexId};
use super::measure::Measure;
use super::point::GraphPoint;
use super::GraphError;
use crate::{int, Rational};

/// `q * x^2 / 2 + l * x + v0` in an edge's coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPiece {
    pub q: Rational,
    pub l: Rational,
    pub v0: Rational,
}

impl QuadraticPiece {
    pub fn new(q: Rational, l: Rational, v0: Rational) -> Self {
        Self { q, l, v0 }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.q * x * x / int(2) + &self.l * x + &self.v0
    }

    pub fn derivative(&self, x: &Rational) -> Rational {
        &self.q * x + &self.l
    }

    /// Integral over `[0, length]`.
    pub fn integral(&self, length: &Rational) -> Rational {
        let l2 = length * length;
        &self.q * &l2 * length / int(6) + &self.l * &l2 / int(2) + &self.v0 * length
    }
}

/// A continuous function on a metrized graph that is quadratic on every edge.
///
/// Continuity at vertices is checked exactly when the function is built, so
/// every value of this type satisfies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseQuadratic {
    graph: Arc<MetricGraph>,
    vertex_values: Vec<Rational>,
    pieces: Vec<QuadraticPiece>,
}

impl PiecewiseQuadratic {
    pub fn new(
        graph: &Arc<MetricGraph>,
        vertex_values: Vec<Rational>,
        pieces: Vec<QuadraticPiece>,
    ) -> Result<Self, GraphError> {
        if vertex_values.len() != graph.vertex_count() || pieces.len() != graph.edge_count() {
            return Err(GraphError::GraphMismatch);
        }
        for (i, (edge, piece)) in graph.edges().iter().zip(&pieces).enumerate() {
            let at_tail = piece.v0.clone();
            let at_head = piece.eval(&edge.length);
            if at_tail != vertex_values[edge.tail.0] {
                return Err(GraphError::Discontinuous { edge: EdgeId(i), vertex: edge.tail });
            }
            if at_head != vertex_values[edge.head.0] {
                return Err(GraphError::Discontinuous { edge: EdgeId(i), vertex: edge.head });
            }
        }
        Ok(Self { graph: Arc::clone(graph), vertex_values, pieces })
    }

    /// The unique such function with the given vertex values and second
    /// derivative `q_e` on each edge.
    pub fn from_vertex_values(
        graph: &Arc<MetricGraph>,
        vertex_values: Vec<Rational>,
        second_derivatives: &[Rational],
    ) -> Result<Self, GraphError> {
        if vertex_values.len() != graph.vertex_count()
            || second_derivatives.len() != graph.edge_count()
        {
            return Err(GraphError::GraphMismatch);
        }
        let pieces = graph
            .edges()
            .iter()
            .zip(second_derivatives)
            .map(|(e, q)| {
                let tail = &vertex_values[e.tail.0];
                let head = &vertex_values[e.head.0];
                let l = (head - tail) / &e.length - q * &e.length / int(2);
                QuadraticPiece::new(q.clone(), l, tail.clone())
            })
            .collect();
        Self::new(graph, vertex_values, pieces)
    }

    pub fn constant(graph: &Arc<MetricGraph>, c: Rational) -> Self {
        Self {
            graph: Arc::clone(graph),
            vertex_values: vec![c.clone(); graph.vertex_count()],
            pieces: (0..graph.edge_count())
                .map(|_| QuadraticPiece::new(Rational::zero(), Rational::zero(), c.clone()))
                .collect(),
        }
    }

    pub fn graph(&self) -> &Arc<MetricGraph> {
        &self.graph
    }

    pub fn piece(&self, e: EdgeId) -> Result<&QuadraticPiece, GraphError> {
        self.pieces.get(e.0).ok_or(GraphError::UnknownEdge(e))
    }

    pub fn vertex_value(&self, v: VertexId) -> Result<&Rational, GraphError> {
        self.vertex_values.get(v.0).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn vertex_values(&self) -> &[Rational] {
        &self.vertex_values
    }

    pub fn evaluate(&self, x: &GraphPoint) -> Result<Rational, GraphError> {
        self.graph.check_point(x)?;
        match x {
            GraphPoint::Vertex(v) => Ok(self.vertex_values[v.0].clone()),
            GraphPoint::EdgeInterior { edge, offset } => Ok(self.pieces[edge.0].eval(offset)),
        }
    }

    /// `sum_v atom_v f(v) + sum_e density_e * integral_e f`.
    pub fn integrate_against(&self, m: &Measure) -> Result<Rational, GraphError> {
        if m.graph() != &self.graph {
            return Err(GraphError::GraphMismatch);
        }
        let atoms = m
            .atoms()
            .fold(Rational::zero(), |acc, (v, mass)| acc + mass * &self.vertex_values[v.0]);
        Ok(m.densities().fold(atoms, |acc, (e, d)| {
            acc + d * self.pieces[e.0].integral(&self.graph.edges()[e.0].length)
        }))
    }

    /// The measure-valued Laplacian
    /// `Delta f = -f''(x) dx - sum_v (sum of outgoing derivatives at v) delta_v`.
    ///
    /// With this sign, `g = -s/2 + a/4` on a single edge `[0, a]` has
    /// `Delta g = delta_0 / 2 - delta_a / 2`.
    pub fn laplacian(&self) -> Measure {
        let mut out = Measure::zero(&self.graph);
        for (i, (edge, piece)) in self.graph.edges().iter().zip(&self.pieces).enumerate() {
            let e = EdgeId(i);
            out.add_density(e, -piece.q.clone()).expect("edge on own graph");
            let out_of_tail = piece.derivative(&Rational::zero());
            let out_of_head = -piece.derivative(&edge.length);
            out.add_atom(edge.tail, -out_of_tail).expect("vertex on own graph");
            out.add_atom(edge.head, -out_of_head).expect("vertex on own graph");
        }
        out
    }

    pub fn shifted(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for v in &mut out.vertex_values {
            *v += c;
        }
        for p in &mut out.pieces {
            p.v0 += c;
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            graph: Arc::clone(&self.graph),
            vertex_values: self.vertex_values.iter().map(|v| v * factor).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|p| QuadraticPiece::new(&p.q * factor, &p.l * factor, &p.v0 * factor))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GraphError> {
        if self.graph != other.graph {
            return Err(GraphError::GraphMismatch);
        }
        Ok(Self {
            graph: Arc::clone(&self.graph),
            vertex_values: self
                .vertex_values
                .iter()
                .zip(&other.vertex_values)
                .map(|(a, b)| a + b)
                .collect(),
            pieces: self
                .pieces
                .iter()
                .zip(&other.pieces)
                .map(|(a, b)| QuadraticPiece::new(&a.q + &b.q, &a.l + &b.l, &a.v0 + &b.v0))
                .collect(),
        })
    }
}
