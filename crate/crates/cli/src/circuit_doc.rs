//! The JSON circuit format: named nodes, resistive edges, and the input and
//! output terminals listed by node name.

use std::collections::HashMap;

use opennet::circuit::{Edge, LabelledGraph, OpenCircuit};
use opennet::field::{parse_expr, Field};
use opennet::finset::{FinCospan, FinFunction};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDocument {
    pub field: String,
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDocument>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub src: String,
    pub tgt: String,
    pub impedance: Scalar,
}

/// A scalar written either as a JSON number or as an expression string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Number(serde_json::Number),
}

impl Scalar {
    pub fn source(&self) -> String {
        match self {
            Scalar::Text(s) => s.clone(),
            Scalar::Number(n) => n.to_string(),
        }
    }
}

/// A circuit together with the names of its nodes.
#[derive(Debug, Clone)]
pub struct NamedCircuit<F> {
    pub names: Vec<String>,
    pub circuit: OpenCircuit<F>,
}

/// Parses and validates a circuit document in the field `F`. A document over
/// ℚ may be read over ℚ(s); the converse needs constant impedances.
pub fn parse_circuit<F: Field>(text: &str) -> Result<NamedCircuit<F>, CliError> {
    let doc: CircuitDocument = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    doc.resolve()
}

impl CircuitDocument {
    pub fn resolve<F: Field>(&self) -> Result<NamedCircuit<F>, CliError> {
        let parse_err = |ctx: String, msg: String| CliError::Parse(format!("{ctx}: {msg}"));
        if self.field != "Q" && self.field != "Q(s)" {
            return Err(parse_err("field".into(), format!("expected \"Q\" or \"Q(s)\", found {:?}", self.field)));
        }
        let mut index = HashMap::new();
        for (k, name) in self.nodes.iter().enumerate() {
            if name.is_empty() {
                return Err(parse_err(format!("nodes[{k}]"), "empty node name".into()));
            }
            if index.insert(name.as_str(), k).is_some() {
                return Err(parse_err(format!("nodes[{k}]"), format!("duplicate node name {name:?}")));
            }
        }
        let lookup = |ctx: String, name: &str| {
            index.get(name).copied().ok_or_else(|| parse_err(ctx, format!("unknown node {name:?}")))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let src = lookup(format!("edges[{k}].src"), &e.src)?;
            let tgt = lookup(format!("edges[{k}].tgt"), &e.tgt)?;
            let ctx = format!("edges[{k}] ({} → {}).impedance", e.src, e.tgt);
            let source = e.impedance.source();
            let value = parse_expr(&source).map_err(|err| parse_err(ctx.clone(), format!("{source:?} {err}")))?;
            if self.field == "Q" && value.as_constant().is_none() {
                return Err(parse_err(ctx, format!("{source:?} is not a rational number")));
            }
            let impedance = F::from_rational_function(&value)
                .ok_or_else(|| parse_err(ctx.clone(), format!("{source:?} does not lie in {}", F::NAME)))?;
            if impedance.is_zero() {
                return Err(parse_err(ctx, "impedance must be nonzero".into()));
            }
            if impedance.positivity() == Some(false) {
                return Err(parse_err(ctx, format!("impedance {impedance} must be positive")));
            }
            edges.push(Edge { src, tgt, impedance });
        }
        let leg = |what: &str, names: &[String]| -> Result<FinFunction, CliError> {
            let table = names
                .iter()
                .enumerate()
                .map(|(k, n)| lookup(format!("{what}[{k}]"), n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FinFunction::new(table, self.nodes.len())?)
        };
        let cospan = FinCospan::new(leg("inputs", &self.inputs)?, leg("outputs", &self.outputs)?)?;
        let graph = LabelledGraph::new(self.nodes.len(), edges)?;
        Ok(NamedCircuit { names: self.nodes.clone(), circuit: OpenCircuit::new(graph, cospan)? })
    }
}

impl<F: Field> NamedCircuit<F> {
    pub fn document(&self) -> CircuitDocument {
        let name = |k: usize| self.names[k].clone();
        let cospan = self.circuit.cospan();
        CircuitDocument {
            field: F::NAME.to_string(),
            nodes: self.names.clone(),
            edges: self
                .circuit
                .graph()
                .edges()
                .iter()
                .map(|e| EdgeDocument { src: name(e.src), tgt: name(e.tgt), impedance: Scalar::Text(e.impedance.to_string()) })
                .collect(),
            inputs: cospan.left().table().iter().map(|&k| name(k)).collect(),
            outputs: cospan.right().table().iter().map(|&k| name(k)).collect(),
        }
    }

    /// Canonical JSON text, newline-terminated.
    pub fn print(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.document()).expect("documents serialize");
        text.push('\n');
        text
    }

    /// Glues `self`'s outputs to `next`'s inputs. A glued node keeps the
    /// first name it was given; clashing names from `next` gain primes.
    pub fn compose(&self, next: &NamedCircuit<F>) -> Result<NamedCircuit<F>, CliError> {
        let circuit = self.circuit.compose(&next.circuit)?;
        let po = self.circuit.cospan().pushout(next.circuit.cospan())?;
        let mut names: Vec<Option<String>> = vec![None; po.cospan.apex_size()];
        let mut taken = std::collections::HashSet::new();
        let sources = self
            .names
            .iter()
            .zip(po.from_first.table())
            .chain(next.names.iter().zip(po.from_second.table()));
        for (name, &k) in sources {
            if names[k].is_some() {
                continue;
            }
            let mut candidate = name.clone();
            while !taken.insert(candidate.clone()) {
                candidate.push('\'');
            }
            names[k] = Some(candidate);
        }
        let names = names.into_iter().map(|n| n.expect("pushout is jointly surjective")).collect();
        Ok(NamedCircuit { names, circuit })
    }

    /// Names of the terminal nodes, in ascending node order.
    pub fn boundary_names(&self) -> Vec<String> {
        self.circuit.boundary().into_iter().map(|k| self.names[k].clone()).collect()
    }
}
