//! Open circuits: impedance-labelled graphs on the apex of a cospan.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::finset::{FinCospan, FinFunction, Generator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<F> {
    pub src: usize,
    pub tgt: usize,
    pub impedance: F,
}

/// A multigraph whose edges carry nonzero impedances. Self-loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph<F> {
    num_nodes: usize,
    edges: Vec<Edge<F>>,
}

impl<F: Field> LabelledGraph<F> {
    /// Impedances must be nonzero, and positive wherever the field is ordered.
    pub fn new(num_nodes: usize, edges: Vec<Edge<F>>) -> Result<Self> {
        for (k, e) in edges.iter().enumerate() {
            if e.src >= num_nodes || e.tgt >= num_nodes {
                return Err(Error::InvalidArgument(format!(
                    "edge {k} ({} → {}) leaves the {num_nodes} nodes",
                    e.src, e.tgt
                )));
            }
            if e.impedance.is_zero() {
                return Err(Error::InvalidArgument(format!("edge {k} has impedance 0")));
            }
            if e.impedance.positivity() == Some(false) {
                return Err(Error::InvalidArgument(format!("edge {k} has negative impedance {}", e.impedance)));
            }
        }
        Ok(LabelledGraph { num_nodes, edges })
    }

    pub fn edgeless(num_nodes: usize) -> Self {
        LabelledGraph { num_nodes, edges: Vec::new() }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[Edge<F>] {
        &self.edges
    }

    /// Pushes the graph forward along a map of node sets.
    fn relabel(&self, f: &FinFunction) -> Vec<Edge<F>> {
        self.edges
            .iter()
            .map(|e| Edge { src: f.apply(e.src), tgt: f.apply(e.tgt), impedance: e.impedance.clone() })
            .collect()
    }
}

/// A labelled graph with input and output terminals `X → N ← Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenCircuit<F> {
    graph: LabelledGraph<F>,
    cospan: FinCospan,
}

impl<F: Field> OpenCircuit<F> {
    pub fn new(graph: LabelledGraph<F>, cospan: FinCospan) -> Result<Self> {
        if cospan.apex_size() != graph.num_nodes() {
            return Err(Error::SizeMismatch(format!(
                "cospan apex has {} points but the graph has {} nodes",
                cospan.apex_size(),
                graph.num_nodes()
            )));
        }
        Ok(OpenCircuit { graph, cospan })
    }

    /// A single edge `0 → 1` with input terminal 0 and output terminal 1.
    pub fn resistor(impedance: F) -> Result<Self> {
        let graph = LabelledGraph::new(2, vec![Edge { src: 0, tgt: 1, impedance }])?;
        let cospan = FinCospan::new(FinFunction::new(vec![0], 2)?, FinFunction::new(vec![1], 2)?)?;
        OpenCircuit::new(graph, cospan)
    }

    pub fn identity(n: usize) -> Self {
        OpenCircuit { graph: LabelledGraph::edgeless(n), cospan: FinCospan::identity(n) }
    }

    /// An edgeless circuit on the apex of a hypergraph generator.
    pub fn generator(g: Generator) -> Self {
        let cospan = g.cospan();
        OpenCircuit { graph: LabelledGraph::edgeless(cospan.apex_size()), cospan }
    }

    pub fn graph(&self) -> &LabelledGraph<F> {
        &self.graph
    }

    pub fn cospan(&self) -> &FinCospan {
        &self.cospan
    }

    pub fn input_size(&self) -> usize {
        self.cospan.left_size()
    }

    pub fn output_size(&self) -> usize {
        self.cospan.right_size()
    }

    /// Sorted terminal nodes `∂N`.
    pub fn boundary(&self) -> Vec<usize> {
        self.cospan.boundary()
    }

    /// Glues `self`'s outputs to `next`'s inputs. Edges of `self` come first.
    pub fn compose(&self, next: &OpenCircuit<F>) -> Result<OpenCircuit<F>> {
        let po = self.cospan.pushout(&next.cospan)?;
        let mut edges = self.graph.relabel(&po.from_first);
        edges.extend(next.graph.relabel(&po.from_second));
        let graph = LabelledGraph { num_nodes: po.cospan.apex_size(), edges };
        Ok(OpenCircuit { graph, cospan: po.cospan })
    }

    /// Side-by-side union; `other`'s nodes are shifted past `self`'s.
    pub fn tensor(&self, other: &OpenCircuit<F>) -> OpenCircuit<F> {
        let shift = self.graph.num_nodes;
        let mut edges = self.graph.edges.clone();
        edges.extend(other.graph.edges.iter().map(|e| Edge {
            src: e.src + shift,
            tgt: e.tgt + shift,
            impedance: e.impedance.clone(),
        }));
        OpenCircuit {
            graph: LabelledGraph { num_nodes: shift + other.graph.num_nodes, edges },
            cospan: self.cospan.tensor(&other.cospan),
        }
    }

    /// The same circuit read from outputs to inputs.
    pub fn opposite(&self) -> OpenCircuit<F> {
        OpenCircuit { graph: self.graph.clone(), cospan: self.cospan.opposite() }
    }
}
