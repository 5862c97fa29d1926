//! Graph file formats: plain edge-list text, JSON, and DOT export.
//!
//! Text format: first non-comment line `n m`, then `m` lines `u v` with
//! 0-based vertex indices. Blank lines and `#` comments are ignored.
//!
//! JSON format: `{"n": 5, "edges": [[0,1], ...]}`. Graphs whose ids are not
//! `0..n` carry an extra `"vertices"` array listing the ids.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn parse_text(input: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let line_no = lineno + 1;
        let mut fields = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            let tok = tok.ok_or_else(|| Error::Parse { line: line_no, msg: "expected two integers".into() })?;
            tok.parse::<usize>().map_err(|e| Error::Parse { line: line_no, msg: format!("{tok:?}: {e}") })
        };
        let a = parse(fields.next())?;
        let b = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
        }
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                if a >= n || b >= n {
                    return Err(Error::Parse { line: line_no, msg: format!("vertex index out of range 0..{n}") });
                }
                edges.push((a as Vertex, b as Vertex));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing `n m` header".into() })?;
    if edges.len() != m {
        return Err(Error::Parse { line: 0, msg: format!("header announces {m} edges, found {}", edges.len()) });
    }
    Graph::from_edges(n, &edges)
}

/// Writes the text format. Vertices are written by index, so graphs whose
/// ids are not `0..n` are relabelled in ascending order.
pub fn to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (i, j) in g.edges_idx() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vertex>>,
    edges: Vec<[Vertex; 2]>,
}

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    let contiguous = g.ids().iter().enumerate().all(|(i, &v)| v as usize == i);
    let doc = GraphJson {
        n: g.n(),
        vertices: (!contiguous).then(|| g.ids().to_vec()),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_value(doc).expect("graph serializes")
}

pub fn graph_from_json(value: serde_json::Value) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_value(value)?;
    let edges = doc.edges.into_iter().map(|[u, v]| (u, v));
    match doc.vertices {
        Some(ids) => {
            if ids.len() != doc.n {
                return Err(Error::Invalid(format!("n = {} but {} vertex ids listed", doc.n, ids.len())));
            }
            Graph::new(ids, edges)
        }
        None => Graph::new(0..doc.n as Vertex, edges),
    }
}

/// Parses either format; input starting with `{` is read as JSON.
pub fn parse_graph(input: &str) -> Result<Graph> {
    if input.trim_start().starts_with('{') {
        graph_from_json(serde_json::from_str(input)?)
    } else {
        parse_text(input)
    }
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for &v in g.ids() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
