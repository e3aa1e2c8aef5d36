//! JSON interchange formats.
//!
//! ```text
//! design          {"n": 7, "k": 3, "blocks": [[0,1,2], ...]}
//! graph           {"n": 5, "edges": [[0,1], ...]}          (i < j)
//! decomposition   {"k": 3, "cliques": [[0,1,2], ...]}
//! colouring       {"classes": [[0,2], [1,3]]}
//! certificate     {"kind": "star_obstruction", "z": 0, "A0": [3,4,5]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::ObstructionCertificate;
use crate::decomp::CliqueDecomposition;
use crate::design::PartialDesign;
use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::pipeline::{Outcome, PipelineResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignJson {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub k: usize,
    pub cliques: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringJson {
    pub classes: Vec<Vec<usize>>,
}

/// Either input format, told apart by the `blocks` / `edges` key.
#[derive(Clone, Debug)]
pub enum Document {
    Design(PartialDesign),
    Graph(DenseGraph),
}

impl From<&PartialDesign> for DesignJson {
    fn from(d: &PartialDesign) -> Self {
        DesignJson { n: d.n(), k: d.k(), blocks: d.blocks().to_vec() }
    }
}

impl From<DesignJson> for PartialDesign {
    fn from(d: DesignJson) -> Self {
        PartialDesign::new(d.n, d.k, d.blocks)
    }
}

impl From<&DenseGraph> for GraphJson {
    fn from(g: &DenseGraph) -> Self {
        GraphJson { n: g.order(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for DenseGraph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = g.edges.iter().map(|&[u, v]| (u, v)).collect();
        DenseGraph::from_edges(g.n, &edges)
    }
}

impl From<&CliqueDecomposition> for DecompositionJson {
    fn from(d: &CliqueDecomposition) -> Self {
        DecompositionJson { k: d.k, cliques: d.cliques.clone() }
    }
}

impl From<DecompositionJson> for CliqueDecomposition {
    fn from(d: DecompositionJson) -> Self {
        CliqueDecomposition::new(d.k, d.cliques)
    }
}

pub fn parse_design(text: &str) -> Result<PartialDesign> {
    Ok(serde_json::from_str::<DesignJson>(text)?.into())
}

pub fn parse_graph(text: &str) -> Result<DenseGraph> {
    serde_json::from_str::<GraphJson>(text)?.try_into()
}

pub fn parse_certificate(text: &str) -> Result<ObstructionCertificate> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("blocks").is_some() {
        Ok(Document::Design(serde_json::from_value::<DesignJson>(value)?.into()))
    } else if value.get("edges").is_some() {
        Ok(Document::Graph(serde_json::from_value::<GraphJson>(value)?.try_into()?))
    } else {
        Err(Error::InvalidParameters("expected a design (\"blocks\") or graph (\"edges\") object".into()))
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    parse_document(&std::fs::read_to_string(path)?)
}

pub fn design_to_json(d: &PartialDesign) -> String {
    serde_json::to_string(&DesignJson::from(d)).expect("plain data serializes")
}

pub fn graph_to_json(g: &DenseGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("plain data serializes")
}

/// How a pipeline run ended, independent of its payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Solved,
    Impossible,
    Unknown,
}

fn outcome_json<T>(result: &PipelineResult<T>, solved: &str, impossible: &str, render: impl FnOnce(&T) -> Value) -> (Verdict, Value) {
    match &result.outcome {
        Outcome::Solved { value, path } => {
            let mut body = render(value);
            body["status"] = json!(solved);
            body["path"] = json!(path);
            body["diagnostics"] = json!(result.diagnostics);
            (Verdict::Solved, body)
        }
        Outcome::Impossible { certificate } => (
            Verdict::Impossible,
            json!({ "status": impossible, "certificate": certificate, "diagnostics": result.diagnostics }),
        ),
        Outcome::BudgetExceeded => (
            Verdict::Unknown,
            json!({ "status": "unknown", "reason": "search budget exhausted", "diagnostics": result.diagnostics }),
        ),
    }
}

/// `{"status": "completed", "path": ..., "design": {...}}`, or the
/// `uncompletable` / `unknown` forms.
pub fn completion_json(result: &PipelineResult<PartialDesign>) -> (Verdict, Value) {
    outcome_json(result, "completed", "uncompletable", |d| json!({ "design": DesignJson::from(d) }))
}

/// `{"status": "decomposed", "path": ..., "decomposition": {...}}` with
/// cliques in canonical order, or the `indecomposable` / `unknown` forms.
pub fn decomposition_json(result: &PipelineResult<CliqueDecomposition>) -> (Verdict, Value) {
    outcome_json(result, "decomposed", "indecomposable", |d| {
        json!({ "decomposition": DecompositionJson::from(&d.clone().canonical()) })
    })
}
