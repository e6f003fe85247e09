//! JSON documents for graphs and metric graphs.
//!
//! ```json
//! {"vertices": [{"id": "a", "weight": 0, "legs": 0}, {"id": "b", "weight": 1, "legs": 0}],
//!  "edges": [{"id": "e1", "ends": ["a", "b"]}, {"id": "e2", "ends": ["b", "b"]}],
//!  "lengths": {"e1": 1.5, "e2": "inf"}}
//! ```
//!
//! `lengths` is only read by [`parse_metric_graph`]; unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::tropical::{EdgeLength, MetricGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: String,
    #[serde(default)]
    pub weight: u32,
    #[serde(default)]
    pub legs: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LengthRecord {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<BTreeMap<String, LengthRecord>>,
}

impl GraphDocument {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphDocument {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    weight: v.weight,
                    legs: v.legs,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.clone(),
                    ends: [g.vertices()[e.ends.0].id.clone(), g.vertices()[e.ends.1].id.clone()],
                })
                .collect(),
            lengths: None,
        }
    }

    pub fn from_metric_graph(m: &MetricGraph) -> Self {
        let mut doc = Self::from_graph(m.graph());
        doc.lengths = Some(
            m.graph()
                .edges()
                .iter()
                .zip(m.lengths())
                .map(|(e, l)| {
                    let rec = match *l {
                        EdgeLength::Finite(x) => LengthRecord::Number(x),
                        EdgeLength::Infinite => LengthRecord::Text("inf".into()),
                    };
                    (e.id.clone(), rec)
                })
                .collect(),
        );
        doc
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.id.clone(), v.weight, v.legs)?;
        }
        for e in &self.edges {
            g.add_edge(e.id.clone(), &e.ends[0], &e.ends[1])?;
        }
        Ok(g)
    }

    /// Every edge needs a length; a missing `lengths` field is an error.
    pub fn to_metric_graph(&self) -> Result<MetricGraph> {
        let g = self.to_graph()?;
        let empty = BTreeMap::new();
        let lengths = self.lengths.as_ref().unwrap_or(&empty);
        if let Some(id) = lengths.keys().find(|id| g.edge_index(id).is_none()) {
            return Err(Error::UnknownEdge(id.clone()));
        }
        let mut out = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let l = match lengths.get(&e.id) {
                None => return Err(Error::MissingLength(e.id.clone())),
                Some(LengthRecord::Number(x)) => EdgeLength::Finite(*x),
                Some(LengthRecord::Text(t)) if t == "inf" => EdgeLength::Infinite,
                Some(LengthRecord::Text(t)) => {
                    return Err(Error::InvalidLength {
                        edge: e.id.clone(),
                        length: format!("{t:?}"),
                    })
                }
            };
            out.push(l);
        }
        MetricGraph::new(g, out)
    }
}

pub fn parse_document(text: &str) -> Result<GraphDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Parses a graph document. A `lengths` field is accepted and ignored.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    parse_document(text)?.to_graph()
}

pub fn parse_metric_graph(text: &str) -> Result<MetricGraph> {
    parse_document(text)?.to_metric_graph()
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&GraphDocument::from_graph(g)).expect("plain data")
}

pub fn metric_graph_to_json(m: &MetricGraph) -> String {
    serde_json::to_string_pretty(&GraphDocument::from_metric_graph(m)).expect("plain data")
}
