#![allow(dead_code)]

use std::sync::Arc;

use genus2_bogomolov::genus2_catalog::{FiberSpec, FiberType};
use genus2_bogomolov::metric_graph::{build_graph, EdgeId, EdgeSpec, Measure, MetricGraph, VertexId, VertexSpec};
use genus2_bogomolov::{int, rat, Rational};
use rand::Rng;

/// A random rational `p/q` in `[1/4, 8]` with `q <= 12`.
pub fn random_length<R: Rng>(rng: &mut R) -> Rational {
    let q: i64 = rng.gen_range(1..=12);
    let lo = (q + 3) / 4;
    let p: i64 = rng.gen_range(lo..=8 * q);
    rat(p, q)
}

pub fn random_spec<R: Rng>(rng: &mut R, kind: FiberType) -> FiberSpec {
    FiberSpec::new(kind, (0..kind.arity()).map(|_| random_length(rng)).collect()).unwrap()
}

pub fn random_any_spec<R: Rng>(rng: &mut R) -> FiberSpec {
    let kind = FiberType::ALL[rng.gen_range(0..7)];
    random_spec(rng, kind)
}

pub fn unit_spec(kind: FiberType) -> FiberSpec {
    FiberSpec::new(kind, vec![int(1); kind.arity()]).unwrap()
}

/// A random connected multigraph (loops and parallel edges included) with a
/// random nonnegative probability measure on it.
pub fn random_graph_with_measure<R: Rng>(rng: &mut R) -> (Arc<MetricGraph>, Measure) {
    let n = rng.gen_range(1..=5);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push((parent, i));
    }
    for _ in 0..rng.gen_range(0..=3) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let graph = build_graph(
        names.iter().map(|s| VertexSpec::new(s.clone())).collect(),
        edges
            .iter()
            .enumerate()
            .map(|(k, &(t, h))| EdgeSpec::new(format!("e{k}"), names[t].clone(), names[h].clone(), random_length(rng)))
            .collect(),
    )
    .unwrap();

    let mut raw = Measure::zero(&graph);
    for v in graph.vertex_ids() {
        if rng.gen_bool(0.5) {
            raw.add_atom(v, rat(rng.gen_range(1..=5), rng.gen_range(1..=4))).unwrap();
        }
    }
    for e in graph.edge_ids() {
        if rng.gen_bool(0.5) {
            raw.add_density(e, rat(rng.gen_range(1..=5), rng.gen_range(1..=4))).unwrap();
        }
    }
    if raw.is_zero() {
        raw.add_atom(VertexId(0), int(1)).unwrap();
    }
    let mass = raw.total_mass();
    let mu = raw.scale(&(int(1) / mass));
    (graph, mu)
}

/// The graph with every edge length multiplied by `factor`, and `mu` carried over.
pub fn scaled(graph: &Arc<MetricGraph>, mu: &Measure, factor: &Rational) -> (Arc<MetricGraph>, Measure) {
    let g = Arc::new(graph.scaled(factor).unwrap());
    let m = mu.rescaled_to(&g, factor).unwrap();
    (g, m)
}

pub fn edge(i: usize) -> EdgeId {
    EdgeId(i)
}
