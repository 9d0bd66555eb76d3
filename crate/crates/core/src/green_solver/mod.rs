//! Admissible Green functions on metrized graphs.
//!
//! [`solve_green`] is exact. On each edge the solution is
//! `q x^2 / 2 + l x + v0` with `q` equal to the edge density of `mu`, so only
//! the vertex values are unknown. They satisfy a weighted Laplacian system
//! with conductance `1 / length` per non-loop edge and right-hand side
//! `[v = base] - atom_v(mu) - (half the mass of each incident edge end)`.
//! The system has a one-dimensional kernel (constants): one vertex is
//! grounded, and the constant is then fixed by `integral g dmu = 0`.
//!
//! [`discretize_green`] is an independent `f64` oracle on a subdivided graph.

mod exact;
mod linalg;
mod oracle;

pub use exact::{green_value, solve_green, solve_green_at, solve_green_grounded, GreenCache, GreenFunction};
pub use oracle::{discretize_green, DiscreteSolution, OracleError, RESIDUAL_THRESHOLD};

use crate::metric_graph::{GraphError, GraphPoint};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("reference measure has total mass {0}, expected 1")]
    MassNotOne(Rational),
    #[error("base point {0} is not a vertex; split the edge first")]
    BaseNotVertex(GraphPoint),
    /// The grounded Laplacian of a connected graph is always invertible, so
    /// this indicates an assembly bug rather than bad input.
    #[error("internal error: Laplacian system is singular beyond its constant kernel")]
    SingularSystem,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::metric_graph::{build_graph, EdgeId, EdgeSpec, Measure, MetricGraph, VertexId, VertexSpec};
    use crate::{int, rat};

    const P: VertexId = VertexId(0);
    const Q: VertexId = VertexId(1);

    fn type_two(a: Rational) -> (Arc<MetricGraph>, Measure) {
        let g = build_graph(
            vec![VertexSpec::with_genus("P", 1), VertexSpec::with_genus("Q", 1)],
            vec![EdgeSpec::new("G", "P", "Q", a)],
        )
        .unwrap();
        let mu = Measure::zero(&g).with_atom(P, rat(1, 2)).unwrap().with_atom(Q, rat(1, 2)).unwrap();
        (g, mu)
    }

    fn type_three(a: Rational) -> (Arc<MetricGraph>, Measure) {
        let g = build_graph(vec![VertexSpec::with_genus("P", 1)], vec![EdgeSpec::new("G", "P", "P", a)]).unwrap();
        let mu = Measure::zero(&g).with_atom(P, rat(1, 2)).unwrap().with_edge_mass(EdgeId(0), rat(1, 2)).unwrap();
        (g, mu)
    }

    #[test]
    fn type_two_values() {
        let (g, mu) = type_two(int(1));
        let green = solve_green(&g, &mu, P).unwrap();
        assert_eq!(green.at_vertex(P).unwrap(), rat(1, 4));
        assert_eq!(green.at_vertex(Q).unwrap(), rat(-1, 4));
        assert!(green.verify());
    }

    #[test]
    fn single_vertex_is_zero() {
        let g = build_graph(vec![VertexSpec::with_genus("P", 2)], vec![]).unwrap();
        let mu = Measure::dirac(&g, P).unwrap();
        let green = solve_green(&g, &mu, P).unwrap();
        assert_eq!(green.at_vertex(P).unwrap(), int(0));
        assert!(green.verify());
        let d = discretize_green(&g, &mu, P, 4).unwrap();
        assert_eq!(d.values, vec![0.0]);
    }

    #[test]
    fn type_three_loop() {
        // hand integration: on the loop g = t^2/(4a) - t/4 + V, and
        // V/2 + (1/(2a)) * integral_0^a g = V - a/48 = 0
        let (g, mu) = type_three(int(1));
        let green = solve_green(&g, &mu, P).unwrap();
        assert_eq!(green.at_vertex(P).unwrap(), rat(1, 48));
        assert!(green.verify());
        let d = discretize_green(&g, &mu, P, 10_000).unwrap();
        assert!((d.vertex_value(P) - 1.0 / 48.0).abs() < 1e-6);
    }

    #[test]
    fn value_at_interior_point() {
        let (g, mu) = type_two(int(1));
        let mid = g.point_on_edge(EdgeId(0), rat(1, 2)).unwrap();
        assert_eq!(green_value(&g, &mu, P, &mid).unwrap(), int(0));
        assert!(matches!(solve_green_at(&g, &mu, &mid), Err(SolveError::BaseNotVertex(_))));
    }

    #[test]
    fn interior_base_via_split() {
        let (g, mu) = type_two(int(2));
        let split = g.split_edge(EdgeId(0), &int(1)).unwrap();
        let mu2 = mu.transfer(&split);
        let green = solve_green(&split.graph, &mu2, split.vertex).unwrap();
        assert!(green.verify());
        // midpoint of a symmetric segment: g(M, P) = g(M, Q) = 0
        assert_eq!(green.at_vertex(P).unwrap(), int(0));
        assert_eq!(green.at_vertex(Q).unwrap(), int(0));
        // splitting does not change values between original vertices
        let before = solve_green(&g, &mu, P).unwrap();
        let after = solve_green(&split.graph, &mu2, P).unwrap();
        assert_eq!(before.at_vertex(Q).unwrap(), after.at_vertex(Q).unwrap());
    }

    #[test]
    fn rejects_bad_mass_and_base() {
        let (g, _) = type_two(int(1));
        let heavy = Measure::dirac(&g, P).unwrap().with_atom(Q, int(1)).unwrap();
        assert_eq!(solve_green(&g, &heavy, P).unwrap_err(), SolveError::MassNotOne(int(2)));
        let mu = Measure::dirac(&g, P).unwrap();
        assert!(matches!(solve_green(&g, &mu, VertexId(9)), Err(SolveError::Graph(GraphError::UnknownVertex(_)))));
        assert_eq!(discretize_green(&g, &mu, P, 1).unwrap_err(), OracleError::TooFewSubdivisions(1));
        assert!(matches!(discretize_green(&g, &heavy, P, 4), Err(OracleError::MassNotOne(_))));
    }

    #[test]
    fn grounding_does_not_matter() {
        let (g, mu) = type_two(rat(3, 7));
        let a = solve_green_grounded(&g, &mu, P, P).unwrap();
        let b = solve_green_grounded(&g, &mu, P, Q).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cache_memoises() {
        let (g, mu) = type_two(int(1));
        let cache = GreenCache::new(&g, &mu).unwrap();
        assert_eq!(cache.between(P, Q).unwrap(), rat(-1, 4));
        assert_eq!(cache.between(Q, P).unwrap(), rat(-1, 4));
        assert_eq!(cache.between(P, P).unwrap(), rat(1, 4));
        assert_eq!(cache.cached(), 2);
    }

    #[test]
    fn oracle_matches_linear_case_to_roundoff() {
        let (g, mu) = type_two(int(1));
        let d = discretize_green(&g, &mu, P, 100).unwrap();
        assert!((d.vertex_value(P) - 0.25).abs() < 1e-9);
        assert!(d.residual <= RESIDUAL_THRESHOLD);
        assert!(d.normalization < 1e-12);
        let mid = g.point_on_edge(EdgeId(0), rat(1, 2)).unwrap();
        assert!(d.value_at(&mid).unwrap().abs() < 1e-9);
    }
}
