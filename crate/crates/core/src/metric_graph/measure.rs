use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num::Zero;

use super::graph::{EdgeId, EdgeSplit, MetricGraph, VertexId};
use super::GraphError;
use crate::Rational;

/// A finite signed measure: rational atoms at vertices plus a constant density
/// on each edge (mass on the edge = density * length).
///
/// Zero entries are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    graph: Arc<MetricGraph>,
    atoms: BTreeMap<VertexId, Rational>,
    densities: BTreeMap<EdgeId, Rational>,
}

impl Measure {
    pub fn zero(graph: &Arc<MetricGraph>) -> Self {
        Self { graph: Arc::clone(graph), atoms: BTreeMap::new(), densities: BTreeMap::new() }
    }

    /// The Dirac mass at `v`.
    pub fn dirac(graph: &Arc<MetricGraph>, v: VertexId) -> Result<Self, GraphError> {
        Self::zero(graph).with_atom(v, crate::one())
    }

    pub fn with_atom(mut self, v: VertexId, mass: Rational) -> Result<Self, GraphError> {
        self.add_atom(v, mass)?;
        Ok(self)
    }

    pub fn with_density(mut self, e: EdgeId, density: Rational) -> Result<Self, GraphError> {
        self.add_density(e, density)?;
        Ok(self)
    }

    /// Spreads `mass` uniformly over edge `e`.
    pub fn with_edge_mass(self, e: EdgeId, mass: Rational) -> Result<Self, GraphError> {
        let density = mass / &self.graph.edge(e)?.length;
        self.with_density(e, density)
    }

    pub fn add_atom(&mut self, v: VertexId, mass: Rational) -> Result<(), GraphError> {
        self.graph.vertex(v)?;
        accumulate(&mut self.atoms, v, mass);
        Ok(())
    }

    pub fn add_density(&mut self, e: EdgeId, density: Rational) -> Result<(), GraphError> {
        self.graph.edge(e)?;
        accumulate(&mut self.densities, e, density);
        Ok(())
    }

    pub fn graph(&self) -> &Arc<MetricGraph> {
        &self.graph
    }

    pub fn atom(&self, v: VertexId) -> Rational {
        self.atoms.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn density(&self, e: EdgeId) -> Rational {
        self.densities.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (VertexId, &Rational)> {
        self.atoms.iter().map(|(v, m)| (*v, m))
    }

    pub fn densities(&self) -> impl Iterator<Item = (EdgeId, &Rational)> {
        self.densities.iter().map(|(e, d)| (*e, d))
    }

    pub fn edge_mass(&self, e: EdgeId) -> Rational {
        match self.densities.get(&e) {
            Some(d) => d * &self.graph.edges()[e.0].length,
            None => Rational::zero(),
        }
    }

    pub fn total_mass(&self) -> Rational {
        let atoms = self.atoms.values().fold(Rational::zero(), |acc, m| acc + m);
        self.graph.edge_ids().fold(atoms, |acc, e| acc + self.edge_mass(e))
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.densities.is_empty()
    }

    pub fn scale(&self, factor: &Rational) -> Measure {
        let mut out = Measure::zero(&self.graph);
        for (v, m) in &self.atoms {
            accumulate(&mut out.atoms, *v, m * factor);
        }
        for (e, d) in &self.densities {
            accumulate(&mut out.densities, *e, d * factor);
        }
        out
    }

    /// The same measure on a graph whose edge lengths were all scaled by
    /// `factor`: atoms unchanged, densities divided by `factor`.
    pub fn rescaled_to(&self, graph: &Arc<MetricGraph>, factor: &Rational) -> Result<Measure, GraphError> {
        ensure_same_shape(&self.graph, graph)?;
        let mut out = Measure::zero(graph);
        out.atoms = self.atoms.clone();
        for (e, d) in &self.densities {
            accumulate(&mut out.densities, *e, d / factor);
        }
        Ok(out)
    }

    /// Pushes the measure forward to the refined graph of an edge split. The
    /// density of the split edge is carried to both halves.
    pub fn transfer(&self, split: &EdgeSplit) -> Measure {
        let mut out = Measure::zero(&split.graph);
        out.atoms = self.atoms.clone();
        out.densities = self.densities.clone();
        if let Some(d) = self.densities.get(&split.first) {
            accumulate(&mut out.densities, split.second, d.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Measure) -> Result<Measure, GraphError> {
        if self.graph != other.graph {
            return Err(GraphError::GraphMismatch);
        }
        let mut out = self.clone();
        for (v, m) in &other.atoms {
            accumulate(&mut out.atoms, *v, m.clone());
        }
        for (e, d) in &other.densities {
            accumulate(&mut out.densities, *e, d.clone());
        }
        Ok(out)
    }
}

impl Neg for &Measure {
    type Output = Measure;

    fn neg(self) -> Measure {
        self.scale(&-crate::one())
    }
}

/// Panics if the measures live on different graphs; use [`Measure::try_add`]
/// for a fallible version.
impl Add for &Measure {
    type Output = Measure;

    fn add(self, rhs: &Measure) -> Measure {
        self.try_add(rhs).expect("measures on different graphs")
    }
}

impl Sub for &Measure {
    type Output = Measure;

    fn sub(self, rhs: &Measure) -> Measure {
        self + &(-rhs)
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, value: Rational) {
    let entry = map.entry(key).or_insert_with(Rational::zero);
    *entry += value;
    if entry.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

pub(crate) fn ensure_same_shape(a: &MetricGraph, b: &MetricGraph) -> Result<(), GraphError> {
    let same = a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.edges().iter().zip(b.edges()).all(|(x, y)| x.tail == y.tail && x.head == y.head);
    if same {
        Ok(())
    } else {
        Err(GraphError::GraphMismatch)
    }
}
