use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num::Zero;

use super::point::GraphPoint;
use super::GraphError;
use crate::{is_positive, Rational};

/// Index of a vertex in its [`MetricGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an edge in its [`MetricGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Input record for a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSpec {
    pub name: String,
    /// Genus of the component the vertex stands for.
    pub genus: u32,
}

impl VertexSpec {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), genus: 0 }
    }

    pub fn with_genus(name: impl Into<String>, genus: u32) -> Self {
        Self { name: name.into(), genus }
    }
}

/// Input record for an edge, endpoints given by vertex name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub name: String,
    pub tail: String,
    pub head: String,
    pub length: Rational,
}

impl EdgeSpec {
    pub fn new(
        name: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
        length: Rational,
    ) -> Self {
        Self { name: name.into(), tail: tail.into(), head: head.into(), length }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub genus: u32,
}

/// A segment with a fixed coordinate `x in [0, length]`, `x = 0` at the tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
    pub length: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A finite connected graph whose edges are segments of positive rational length.
///
/// Self-loops and parallel edges are allowed. Vertices and edges keep the
/// order in which they were supplied, so every downstream linear system is
/// assembled in the same order on every run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// Validates and builds a graph.
pub fn build_graph(
    vertices: Vec<VertexSpec>,
    edges: Vec<EdgeSpec>,
) -> Result<Arc<MetricGraph>, GraphError> {
    MetricGraph::new(vertices, edges).map(Arc::new)
}

impl MetricGraph {
    pub fn new(vertices: Vec<VertexSpec>, edges: Vec<EdgeSpec>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.name.as_str()) {
                return Err(GraphError::DuplicateVertex(v.name.clone()));
            }
        }
        let lookup = |name: &str, edge: &str| {
            vertices
                .iter()
                .position(|v| v.name == name)
                .map(VertexId)
                .ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: edge.to_string(),
                    vertex: name.to_string(),
                })
        };
        let mut edge_names = BTreeSet::new();
        let mut built = Vec::with_capacity(edges.len());
        for e in &edges {
            if !edge_names.insert(e.name.as_str()) {
                return Err(GraphError::DuplicateEdge(e.name.clone()));
            }
            if !is_positive(&e.length) {
                return Err(GraphError::NonpositiveLength {
                    edge: e.name.clone(),
                    length: e.length.clone(),
                });
            }
            built.push(Edge {
                name: e.name.clone(),
                tail: lookup(&e.tail, &e.name)?,
                head: lookup(&e.head, &e.name)?,
                length: e.length.clone(),
            });
        }
        let graph = MetricGraph {
            vertices: vertices
                .into_iter()
                .map(|v| Vertex { name: v.name, genus: v.genus })
                .collect(),
            edges: built,
        };
        if let Some(v) = graph.first_unreachable() {
            return Err(GraphError::Disconnected(graph.vertices[v.0].name.clone()));
        }
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<VertexId> {
        let mut reached = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([VertexId(0)]);
        reached[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                let other = if e.tail == v {
                    e.head
                } else if e.head == v {
                    e.tail
                } else {
                    continue;
                };
                if !reached[other.0] {
                    reached[other.0] = true;
                    queue.push_back(other);
                }
            }
        }
        reached.iter().position(|r| !r).map(VertexId)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, id: VertexId) -> Result<&Vertex, GraphError> {
        self.vertices.get(id.0).ok_or(GraphError::UnknownVertex(id))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge, GraphError> {
        self.edges.get(id.0).ok_or(GraphError::UnknownEdge(id))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name).map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    /// Sum of the vertex genera plus the first Betti number.
    pub fn arithmetic_genus(&self) -> u64 {
        let genera: u64 = self.vertices.iter().map(|v| u64::from(v.genus)).sum();
        genera + (self.edges.len() + 1 - self.vertices.len()) as u64
    }

    pub fn total_length(&self) -> Rational {
        self.edges.iter().fold(Rational::zero(), |acc, e| acc + &e.length)
    }

    /// The canonical point at `offset` along `edge`: endpoints become vertices.
    pub fn point_on_edge(&self, edge: EdgeId, offset: Rational) -> Result<GraphPoint, GraphError> {
        let e = self.edge(edge)?;
        if offset.is_zero() {
            Ok(GraphPoint::Vertex(e.tail))
        } else if offset == e.length {
            Ok(GraphPoint::Vertex(e.head))
        } else if is_positive(&offset) && offset < e.length {
            Ok(GraphPoint::EdgeInterior { edge, offset })
        } else {
            Err(GraphError::OffsetOutOfRange { edge, offset })
        }
    }

    /// Checks that `point` lies on this graph and is in canonical form.
    pub fn check_point(&self, point: &GraphPoint) -> Result<(), GraphError> {
        match point {
            GraphPoint::Vertex(v) => self.vertex(*v).map(|_| ()),
            GraphPoint::EdgeInterior { edge, offset } => {
                let e = self.edge(*edge)?;
                if is_positive(offset) && offset < &e.length {
                    Ok(())
                } else {
                    Err(GraphError::OffsetOutOfRange { edge: *edge, offset: offset.clone() })
                }
            }
        }
    }

    /// Every edge multiplied in length by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<MetricGraph, GraphError> {
        if !is_positive(factor) {
            return Err(GraphError::NonpositiveScale(factor.clone()));
        }
        let mut out = self.clone();
        for e in &mut out.edges {
            e.length = &e.length * factor;
        }
        Ok(out)
    }

    /// Inserts a new vertex at an interior point of `edge`.
    ///
    /// The split edge keeps its id as the half at the tail side; the half on
    /// the head side is appended as the last edge, the new vertex as the last
    /// vertex (genus 0).
    pub fn split_edge(&self, edge: EdgeId, offset: &Rational) -> Result<EdgeSplit, GraphError> {
        let point = self.point_on_edge(edge, offset.clone())?;
        if !matches!(point, GraphPoint::EdgeInterior { .. }) {
            return Err(GraphError::OffsetOutOfRange { edge, offset: offset.clone() });
        }
        let original = self.edges[edge.0].clone();
        let mut out = self.clone();
        let new_vertex = VertexId(out.vertices.len());
        let mut name = format!("{}@{}", original.name, offset);
        while out.vertices.iter().any(|v| v.name == name) {
            name.push('\'');
        }
        out.vertices.push(Vertex { name, genus: 0 });
        let mut second_name = format!("{}'", original.name);
        while out.edges.iter().any(|e| e.name == second_name) {
            second_name.push('\'');
        }
        out.edges[edge.0] = Edge {
            name: original.name.clone(),
            tail: original.tail,
            head: new_vertex,
            length: offset.clone(),
        };
        let second = EdgeId(out.edges.len());
        out.edges.push(Edge {
            name: second_name,
            tail: new_vertex,
            head: original.head,
            length: &original.length - offset,
        });
        Ok(EdgeSplit {
            graph: Arc::new(out),
            vertex: new_vertex,
            first: edge,
            second,
            offset: offset.clone(),
        })
    }
}

/// Result of [`MetricGraph::split_edge`], with helpers to carry points and
/// measures across to the refined graph.
#[derive(Debug, Clone)]
pub struct EdgeSplit {
    pub graph: Arc<MetricGraph>,
    pub vertex: VertexId,
    pub first: EdgeId,
    pub second: EdgeId,
    pub offset: Rational,
}

impl EdgeSplit {
    pub fn transfer_point(&self, point: &GraphPoint) -> GraphPoint {
        match point {
            GraphPoint::EdgeInterior { edge, offset } if *edge == self.first => {
                if offset < &self.offset {
                    point.clone()
                } else if offset == &self.offset {
                    GraphPoint::Vertex(self.vertex)
                } else {
                    GraphPoint::EdgeInterior { edge: self.second, offset: offset - &self.offset }
                }
            }
            _ => point.clone(),
        }
    }
}
