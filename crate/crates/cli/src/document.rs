//! Network documents: a TOML (or JSON) file with `nodes`, `edges` and an
//! optional `controls` list, all given by label.
//!
//! ```toml
//! nodes = ["v1", "v2", "v3"]
//! edges = [["v1", "v2"], ["v2", "v3"], ["v3", "v1"]]
//! controls = ["v2"]
//! ```

use std::collections::HashMap;
use std::fmt;

use cbn_core::{ControlSpec, Digraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controls: Option<Vec<String>>,
}

/// A parse failure, located at a 1-based line and column when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// A resolved network with dense indices in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    pub graph: Digraph,
    pub controls: Option<ControlSpec>,
}

impl Network {
    pub fn labels(&self) -> &[String] {
        self.graph.labels().expect("parsed networks are labelled")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Resolves a comma-separated label list into a control set.
    pub fn resolve_controls(&self, list: &str) -> Result<ControlSpec, ParseError> {
        let mut nodes = Vec::new();
        for label in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let v = self
                .index_of(label)
                .ok_or_else(|| ParseError::plain(format!("unknown control node '{label}'")))?;
            nodes.push(v);
        }
        ControlSpec::new(self.graph.node_count(), nodes)
            .map_err(|e| ParseError::plain(e.to_string()))
    }

    pub fn to_document(&self) -> NetworkDocument {
        let labels = self.labels();
        NetworkDocument {
            nodes: labels.to_vec(),
            edges: self
                .graph
                .edges()
                .map(|(a, b)| [labels[a].clone(), labels[b].clone()])
                .collect(),
            controls: self
                .controls
                .as_ref()
                .map(|spec| spec.nodes().iter().map(|&v| labels[v].clone()).collect()),
        }
    }
}

impl ParseError {
    pub fn plain(message: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let (line, column) = line_col(text, offset);
        ParseError {
            message: message.into(),
            line: Some(line),
            column: Some(column),
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

/// Offset of the `nth` quoted occurrence of `label` at or after `from`.
fn find_label(text: &str, label: &str, from: usize, nth: usize) -> Option<usize> {
    let needle = format!("\"{label}\"");
    text.get(from..)?
        .match_indices(&needle)
        .nth(nth)
        .map(|(i, _)| from + i)
}

fn locate(text: &str, label: &str, section: &str, nth: usize, message: String) -> ParseError {
    let from = text.find(section).unwrap_or(0);
    match find_label(text, label, from, nth) {
        Some(offset) => ParseError::at(text, offset, message),
        None => ParseError::plain(message),
    }
}

/// Reads a document. Text whose first non-blank character is `{` is read as
/// JSON, anything else as TOML.
pub fn parse_document(text: &str) -> Result<NetworkDocument, ParseError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| ParseError {
            message: e.to_string(),
            line: Some(e.line()),
            column: Some(e.column()),
        })
    } else {
        toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => ParseError::at(text, span.start, e.message().trim().to_string()),
            None => ParseError::plain(e.message().trim().to_string()),
        })
    }
}

/// Parses and resolves a network document.
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let doc = parse_document(text)?;
    if doc.nodes.is_empty() {
        let offset = text.find("nodes").unwrap_or(0);
        return Err(ParseError::at(text, offset, "node list is empty"));
    }
    let mut index = HashMap::with_capacity(doc.nodes.len());
    for (i, label) in doc.nodes.iter().enumerate() {
        if label.is_empty() {
            return Err(locate(text, label, "nodes", 0, "empty node label".into()));
        }
        if index.insert(label.as_str(), i).is_some() {
            return Err(locate(
                text,
                label,
                "nodes",
                1,
                format!("duplicate node '{label}'"),
            ));
        }
    }
    let resolve = |label: &str, section: &str| {
        index.get(label).copied().ok_or_else(|| {
            locate(
                text,
                label,
                section,
                0,
                format!("undeclared node '{label}'"),
            )
        })
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for [a, b] in &doc.edges {
        edges.push((resolve(a, "edges")?, resolve(b, "edges")?));
    }
    let graph = Digraph::with_labels(doc.nodes.clone(), edges)
        .map_err(|e| ParseError::plain(e.to_string()))?;
    let controls = match &doc.controls {
        None => None,
        Some(list) => {
            let nodes = list
                .iter()
                .map(|label| resolve(label, "controls"))
                .collect::<Result<Vec<_>, _>>()?;
            Some(
                ControlSpec::new(graph.node_count(), nodes)
                    .map_err(|e| ParseError::plain(e.to_string()))?,
            )
        }
    };
    Ok(Network { graph, controls })
}

/// TOML rendering that [`parse_network`] reads back to the same network.
pub fn serialize_network(net: &Network) -> String {
    toml::to_string(&net.to_document()).expect("documents always serialize")
}

/// Labels a bare graph `v1..vn` and wraps it as a network.
pub fn label_graph(graph: &Digraph, controls: Option<ControlSpec>) -> Network {
    let labels = (0..graph.node_count()).map(|v| graph.label(v)).collect();
    let graph = Digraph::with_labels(labels, graph.edges()).expect("edges come from a valid graph");
    Network { graph, controls }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
nodes = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"]
edges = [
  ["v1", "v2"], ["v2", "v3"], ["v3", "v4"], ["v4", "v5"], ["v5", "v6"], ["v6", "v1"],
  ["v2", "v7"], ["v7", "v8"], ["v8", "v1"],
]
controls = ["v4", "v7"]
"#;

    #[test]
    fn parses_the_example() {
        let net = parse_network(EXAMPLE).unwrap();
        assert_eq!(net.graph.node_count(), 8);
        assert_eq!(net.graph.edge_count(), 9);
        assert_eq!(net.controls.unwrap().nodes(), &[3, 6]);
        assert_eq!(net.graph, cbn_core::fixtures::eight_node_example());
    }

    #[test]
    fn json_documents_are_accepted() {
        let net =
            parse_network(r#"{"nodes": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}"#).unwrap();
        assert_eq!(net.graph.edge_count(), 2);
        assert!(net.controls.is_none());
    }

    #[test]
    fn empty_node_list_is_rejected() {
        let err = parse_network("nodes = []\n").unwrap_err();
        assert!(err.message.contains("empty"));
        assert_eq!(err.line, Some(1));
    }

    #[test]
    fn undeclared_edge_label_is_named_and_located() {
        let err = parse_network("nodes = [\"a\", \"b\"]\nedges = [[\"a\", \"zz\"]]\n").unwrap_err();
        assert!(err.message.contains("'zz'"), "{err}");
        assert_eq!((err.line, err.column), (Some(2), Some(16)));
    }

    #[test]
    fn duplicate_node_points_at_second_occurrence() {
        let err = parse_network("nodes = [\"a\", \"b\", \"a\"]\n").unwrap_err();
        assert!(err.message.contains("duplicate node 'a'"));
        assert_eq!((err.line, err.column), (Some(1), Some(20)));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_network("nodes = [\"a\"\nedges = ]\n").unwrap_err();
        assert!(err.line.is_some(), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse_network("nodes = [\"a\"]\nedgs = []\n").is_err());
    }

    #[test]
    fn round_trip() {
        let net = parse_network(EXAMPLE).unwrap();
        assert_eq!(parse_network(&serialize_network(&net)).unwrap(), net);
    }
}
