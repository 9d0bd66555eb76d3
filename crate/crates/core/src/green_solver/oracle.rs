//! Floating-point finite-difference oracle for the exact solver.
//!
//! Each edge is cut into `n` equal segments. Edge densities are lumped onto the
//! subdivision nodes with half of each segment's mass at either end, and the
//! resulting weighted graph Laplacian is solved in `f64` by sparse elimination
//! with one grounded node. Nothing here shares code with the exact path.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::ToPrimitive;

use crate::metric_graph::{GraphPoint, Measure, MetricGraph, VertexId};
use crate::{int, Rational};

/// Residual threshold for the discrete linear system.
pub const RESIDUAL_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("need at least 2 subdivisions per edge, got {0}")]
    TooFewSubdivisions(usize),
    #[error("reference measure has total mass {0}, expected 1")]
    MassNotOne(Rational),
    #[error("measure lives on a different graph")]
    GraphMismatch,
    #[error("unknown base vertex {0}")]
    UnknownVertex(VertexId),
    #[error("discrete system is singular at node {0}")]
    Singular(usize),
    #[error("residual {0:e} exceeds threshold {RESIDUAL_THRESHOLD:e}")]
    ResidualTooLarge(f64),
}

/// Node values of the discretised Green function.
///
/// Nodes `0..vertex_count` are the graph's vertices; after them come the
/// interior subdivision nodes of each edge in edge order, from tail to head.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    pub subdivisions: usize,
    pub positions: Vec<GraphPoint>,
    pub values: Vec<f64>,
    /// Max-norm residual of the full (ungrounded) discrete system.
    pub residual: f64,
    /// `|sum_i g_i * mu_i|` for the lumped measure after normalisation.
    pub normalization: f64,
}

impl DiscreteSolution {
    pub fn vertex_value(&self, v: VertexId) -> f64 {
        self.values[v.0]
    }

    pub fn value_at(&self, point: &GraphPoint) -> Option<f64> {
        self.positions.iter().position(|p| p == point).map(|i| self.values[i])
    }
}

pub fn discretize_green(
    graph: &Arc<MetricGraph>,
    mu: &Measure,
    base: VertexId,
    n: usize,
) -> Result<DiscreteSolution, OracleError> {
    if n < 2 {
        return Err(OracleError::TooFewSubdivisions(n));
    }
    if mu.graph() != graph {
        return Err(OracleError::GraphMismatch);
    }
    let mass = mu.total_mass();
    if mass != int(1) {
        return Err(OracleError::MassNotOne(mass));
    }
    if base.0 >= graph.vertex_count() {
        return Err(OracleError::UnknownVertex(base));
    }

    let mut positions: Vec<GraphPoint> = graph.vertex_ids().map(GraphPoint::Vertex).collect();
    let mut matrix: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); positions.len()];
    let mut lumped = vec![0.0; positions.len()];
    for (v, m) in mu.atoms() {
        lumped[v.0] += to_f64(m);
    }

    for e in graph.edge_ids() {
        let edge = &graph.edges()[e.0];
        let step = &edge.length / int(n as i64);
        let conductance = 1.0 / to_f64(&step);
        let segment_mass = to_f64(&(mu.density(e) * &step));
        let mut chain = vec![edge.tail.0];
        for k in 1..n {
            chain.push(positions.len());
            positions.push(GraphPoint::EdgeInterior { edge: e, offset: &step * int(k as i64) });
            matrix.push(BTreeMap::new());
            lumped.push(0.0);
        }
        chain.push(edge.head.0);
        for pair in chain.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            lumped[i] += segment_mass / 2.0;
            lumped[j] += segment_mass / 2.0;
            *matrix[i].entry(i).or_default() += conductance;
            *matrix[j].entry(j).or_default() += conductance;
            *matrix[i].entry(j).or_default() -= conductance;
            *matrix[j].entry(i).or_default() -= conductance;
        }
    }

    let mut load: Vec<f64> = lumped.iter().map(|m| -m).collect();
    load[base.0] += 1.0;

    let ground = 0;
    let mut values = eliminate(matrix.clone(), load.clone(), ground, graph.vertex_count())?;

    let residual = matrix
        .iter()
        .zip(&load)
        .map(|(row, b)| (row.iter().map(|(&j, a)| a * values[j]).sum::<f64>() - b).abs())
        .fold(0.0, f64::max);
    if residual > RESIDUAL_THRESHOLD {
        return Err(OracleError::ResidualTooLarge(residual));
    }

    let total: f64 = lumped.iter().sum();
    let shift = values.iter().zip(&lumped).map(|(g, m)| g * m).sum::<f64>() / total;
    for g in &mut values {
        *g -= shift;
    }
    let normalization = values.iter().zip(&lumped).map(|(g, m)| g * m).sum::<f64>().abs();

    Ok(DiscreteSolution { subdivisions: n, positions, values, residual, normalization })
}

/// Symmetric sparse Gaussian elimination with `ground` pinned to zero.
///
/// Subdivision nodes (index `>= vertex_count`) are eliminated first; along a
/// chain this keeps fill-in to one entry per step.
fn eliminate(
    mut rows: Vec<BTreeMap<usize, f64>>,
    mut load: Vec<f64>,
    ground: usize,
    vertex_count: usize,
) -> Result<Vec<f64>, OracleError> {
    let size = rows.len();
    for row in &mut rows {
        row.remove(&ground);
    }
    rows[ground].clear();
    load[ground] = 0.0;

    let order: Vec<usize> = (vertex_count..size).chain((0..vertex_count).filter(|&v| v != ground)).collect();
    let mut done = vec![false; size];
    done[ground] = true;
    let mut eliminated: Vec<(usize, f64, Vec<(usize, f64)>)> = Vec::with_capacity(order.len());

    for &k in &order {
        let pivot = rows[k].get(&k).copied().unwrap_or(0.0);
        if pivot.abs() < f64::EPSILON {
            return Err(OracleError::Singular(k));
        }
        let coupled: Vec<(usize, f64)> =
            rows[k].iter().filter(|(&j, _)| j != k && !done[j]).map(|(&j, &a)| (j, a)).collect();
        for &(i, a_ik) in &coupled {
            let factor = a_ik / pivot;
            rows[i].remove(&k);
            for &(j, a_kj) in &coupled {
                *rows[i].entry(j).or_default() -= factor * a_kj;
            }
            load[i] -= factor * load[k];
        }
        done[k] = true;
        eliminated.push((k, pivot, coupled));
    }

    let mut x = vec![0.0; size];
    for (k, pivot, coupled) in eliminated.into_iter().rev() {
        let acc: f64 = coupled.iter().map(|&(j, a)| a * x[j]).sum();
        x[k] = (load[k] - acc) / pivot;
    }
    Ok(x)
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
