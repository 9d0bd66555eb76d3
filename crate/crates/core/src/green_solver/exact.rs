use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use super::linalg::solve_dense;
use super::SolveError;
use crate::metric_graph::{GraphPoint, Measure, MetricGraph, PiecewiseQuadratic, VertexId};
use crate::{int, Rational};

/// The admissible Green function `g_mu(base, .)`: the unique function with
/// `Delta g = delta_base - mu` and `integral g dmu = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenFunction {
    pub base: VertexId,
    pub mu: Measure,
    pub values: PiecewiseQuadratic,
}

impl GreenFunction {
    pub fn value(&self, y: &GraphPoint) -> Result<Rational, SolveError> {
        Ok(self.values.evaluate(y)?)
    }

    pub fn at_vertex(&self, v: VertexId) -> Result<Rational, SolveError> {
        Ok(self.values.vertex_value(v)?.clone())
    }

    /// Checks both defining identities exactly.
    pub fn verify(&self) -> bool {
        let target = match Measure::dirac(self.values.graph(), self.base) {
            Ok(d) => &d - &self.mu,
            Err(_) => return false,
        };
        self.values.laplacian() == target
            && self.values.integrate_against(&self.mu).map(|v| v.is_zero()).unwrap_or(false)
    }
}

/// Solves for `g_mu(base, .)`, grounding the lexicographically first vertex name.
pub fn solve_green(
    graph: &Arc<MetricGraph>,
    mu: &Measure,
    base: VertexId,
) -> Result<GreenFunction, SolveError> {
    let ground = graph
        .vertex_ids()
        .min_by(|a, b| graph.vertices()[a.0].name.cmp(&graph.vertices()[b.0].name))
        .expect("graphs are nonempty");
    solve_green_grounded(graph, mu, base, ground)
}

/// Like [`solve_green`] for an arbitrary base point; interior points must be
/// turned into vertices first with [`MetricGraph::split_edge`].
pub fn solve_green_at(
    graph: &Arc<MetricGraph>,
    mu: &Measure,
    base: &GraphPoint,
) -> Result<GreenFunction, SolveError> {
    match base {
        GraphPoint::Vertex(v) => solve_green(graph, mu, *v),
        GraphPoint::EdgeInterior { .. } => Err(SolveError::BaseNotVertex(base.clone())),
    }
}

/// [`solve_green`] with an explicit grounded vertex. The normalised result
/// does not depend on `ground`.
pub fn solve_green_grounded(
    graph: &Arc<MetricGraph>,
    mu: &Measure,
    base: VertexId,
    ground: VertexId,
) -> Result<GreenFunction, SolveError> {
    check_inputs(graph, mu, base)?;
    graph.vertex(ground)?;

    let n = graph.vertex_count();
    let mut conductance = vec![vec![Rational::zero(); n]; n];
    let mut rhs: Vec<Rational> = graph.vertex_ids().map(|v| -mu.atom(v)).collect();
    rhs[base.0] += Rational::one();
    let mut second_derivatives = Vec::with_capacity(graph.edge_count());

    for e in graph.edge_ids() {
        let edge = &graph.edges()[e.0];
        let density = mu.density(e);
        // each edge end carries half of the edge's mass; a loop puts both at its vertex
        let half_mass = &density * &edge.length / int(2);
        rhs[edge.tail.0] -= &half_mass;
        rhs[edge.head.0] -= &half_mass;
        if !edge.is_loop() {
            let c = Rational::one() / &edge.length;
            let (t, h) = (edge.tail.0, edge.head.0);
            conductance[t][t] += &c;
            conductance[h][h] += &c;
            conductance[t][h] -= &c;
            conductance[h][t] -= &c;
        }
        second_derivatives.push(density);
    }

    let keep: Vec<usize> = (0..n).filter(|&i| i != ground.0).collect();
    let reduced: Vec<Vec<Rational>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| conductance[i][j].clone()).collect())
        .collect();
    let reduced_rhs: Vec<Rational> = keep.iter().map(|&i| rhs[i].clone()).collect();
    let solution = solve_dense(reduced, reduced_rhs).ok_or(SolveError::SingularSystem)?;

    let mut values = vec![Rational::zero(); n];
    for (&i, x) in keep.iter().zip(solution) {
        values[i] = x;
    }
    // the grounded row is implied by the others only when the total mass is 1
    let ground_residual = (0..n).fold(-rhs[ground.0].clone(), |acc, j| acc + &conductance[ground.0][j] * &values[j]);
    if !ground_residual.is_zero() {
        return Err(SolveError::SingularSystem);
    }

    let unshifted = PiecewiseQuadratic::from_vertex_values(graph, values, &second_derivatives)?;
    let offset = unshifted.integrate_against(mu)?;
    let values = unshifted.shifted(&-offset);
    Ok(GreenFunction { base, mu: mu.clone(), values })
}

fn check_inputs(graph: &Arc<MetricGraph>, mu: &Measure, base: VertexId) -> Result<(), SolveError> {
    if mu.graph() != graph {
        return Err(SolveError::Graph(crate::metric_graph::GraphError::GraphMismatch));
    }
    let mass = mu.total_mass();
    if !mass.is_one() {
        return Err(SolveError::MassNotOne(mass));
    }
    graph.vertex(base)?;
    Ok(())
}

/// `g_mu(x, y)` for a vertex `x`.
pub fn green_value(
    graph: &Arc<MetricGraph>,
    mu: &Measure,
    x: VertexId,
    y: &GraphPoint,
) -> Result<Rational, SolveError> {
    solve_green(graph, mu, x)?.value(y)
}

/// Green functions of one `(graph, mu)` pair, solved on demand and memoised per
/// base vertex. Safe to share between threads.
#[derive(Debug)]
pub struct GreenCache {
    graph: Arc<MetricGraph>,
    mu: Measure,
    solved: RwLock<HashMap<VertexId, Arc<GreenFunction>>>,
}

impl GreenCache {
    pub fn new(graph: &Arc<MetricGraph>, mu: &Measure) -> Result<Self, SolveError> {
        let mass = mu.total_mass();
        if mu.graph() != graph {
            return Err(SolveError::Graph(crate::metric_graph::GraphError::GraphMismatch));
        }
        if !mass.is_one() {
            return Err(SolveError::MassNotOne(mass));
        }
        Ok(Self { graph: Arc::clone(graph), mu: mu.clone(), solved: RwLock::new(HashMap::new()) })
    }

    pub fn graph(&self) -> &Arc<MetricGraph> {
        &self.graph
    }

    pub fn mu(&self) -> &Measure {
        &self.mu
    }

    pub fn function(&self, base: VertexId) -> Result<Arc<GreenFunction>, SolveError> {
        if let Some(g) = self.solved.read().expect("cache lock poisoned").get(&base) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(solve_green(&self.graph, &self.mu, base)?);
        let mut solved = self.solved.write().expect("cache lock poisoned");
        Ok(Arc::clone(solved.entry(base).or_insert(g)))
    }

    pub fn value(&self, x: VertexId, y: &GraphPoint) -> Result<Rational, SolveError> {
        self.function(x)?.value(y)
    }

    /// `g_mu(x, y)` for two vertices.
    pub fn between(&self, x: VertexId, y: VertexId) -> Result<Rational, SolveError> {
        self.function(x)?.at_vertex(y)
    }

    pub fn cached(&self) -> usize {
        self.solved.read().expect("cache lock poisoned").len()
    }
}
