//! Graph files: a JSON interchange format and Graphviz DOT.
//!
//! JSON layout, with coefficient vectors constant term first:
//!
//! ```json
//! { "min_poly": [-1, -1, 1], "depth": "complete", "pruned": false,
//!   "vertices": [[0, 0], [1, 0], [-1, 0]], "edges": [[0, 0, 0], [0, 1, 1]] }
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use garsia_core::graph::{Depth, TransitionGraph};
use garsia_core::numberfield::{FieldElement, IntPolynomial};
use garsia_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DepthField {
    Truncated(usize),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub min_poly: Vec<i64>,
    pub depth: DepthField,
    pub pruned: bool,
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<(u32, i64, u32)>,
}

impl GraphFile {
    pub fn from_graph(g: &TransitionGraph) -> Result<Self> {
        let small = |e: &FieldElement| e.to_i64().ok_or(Error::Overflow);
        Ok(GraphFile {
            min_poly: g.min_poly().coeffs_i64().ok_or(Error::Overflow)?,
            depth: match g.depth() {
                Depth::Complete => DepthField::Named("complete".into()),
                Depth::Truncated(d) => DepthField::Truncated(d),
            },
            pruned: g.is_pruned(),
            vertices: g.vertices().iter().map(small).collect::<Result<_>>()?,
            edges: g.edge_list(),
        })
    }

    /// Rebuild and structurally validate the graph.
    pub fn into_graph(self) -> Result<TransitionGraph> {
        let p = IntPolynomial::from_i64(&self.min_poly)?;
        let depth = match self.depth {
            DepthField::Truncated(d) => Depth::Truncated(d),
            DepthField::Named(s) if s == "complete" => Depth::Complete,
            DepthField::Named(s) => return Err(Error::InvalidGraph(format!("unknown depth '{s}'"))),
        };
        let vertices = self.vertices.iter().map(|v| FieldElement::from_i64(v)).collect();
        TransitionGraph::from_parts(p, vertices, &self.edges, depth, self.pruned)
    }
}

pub fn to_json(g: &TransitionGraph) -> Result<String> {
    let file = GraphFile::from_graph(g)?;
    Ok(serde_json::to_string(&file).expect("graph serializes"))
}

pub fn from_json(text: &str) -> Result<TransitionGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
    file.into_graph()
}

/// Hex SHA-256 of the compact JSON form.
pub fn graph_hash(g: &TransitionGraph) -> Result<String> {
    Ok(hex::encode(Sha256::digest(to_json(g)?.as_bytes())))
}

pub fn to_dot(g: &TransitionGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph transitions {{");
    let _ = writeln!(out, "  // {}", g.min_poly());
    let _ = writeln!(out, "  node [shape=box];");
    for (i, v) in g.vertices().iter().enumerate() {
        let style = if i == 0 { ", style=bold" } else { "" };
        let _ = writeln!(out, "  v{i} [label=\"{v}\"{style}];");
    }
    for (s, e, t) in g.edge_list() {
        let _ = writeln!(out, "  v{s} -> v{t} [label=\"{e}\"];");
    }
    out.push_str("}\n");
    out
}
