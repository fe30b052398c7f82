//! Plain-text file formats.
//!
//! Graphs: a header `p <n> <m>` followed by `e <u> <v>` lines with `u < v`,
//! sorted, 0-based, LF endings. Parsing accepts either orientation and any
//! order; emitting always normalizes. Colorings are `c <vertex> <color>`
//! lines and Specker vertex maps are `v <rank> <subset>` lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chroma::Coloring;
use crate::graphcore::{Graph, GraphError};
use crate::typealg::OrdinalSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("malformed header {0:?}; expected `p <vertices> <edges>`")]
    MalformedHeader(String),
    #[error("line {line}: malformed {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: vertex {vertex} colored twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("vertex {0} has no color")]
    MissingVertex(usize),
    #[error("empty input")]
    Empty,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<const N: usize>(tag: &str, line: usize, text: &str) -> Result<[usize; N], TextError> {
    let bad = || TextError::MalformedLine {
        line,
        text: text.to_string(),
    };
    let mut parts = text.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(bad());
    }
    let mut out = [0usize; N];
    for slot in &mut out {
        *slot = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
    }
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph, TextError> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or(TextError::Empty)?;
    let [n, m] = numbers::<2>("p", 1, header).map_err(|_| TextError::MalformedHeader(header.to_string()))?;
    let mut g = Graph::new(n);
    let mut found = 0;
    for (line, text) in lines {
        let [u, v] = numbers::<2>("e", line, text)?;
        if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
            return Err(TextError::VertexOutOfRange { line, vertex, n });
        }
        match g.add_edge(u, v) {
            Ok(true) => found += 1,
            Ok(false) => return Err(TextError::DuplicateEdge { line, u, v }),
            Err(GraphError::Loop(vertex)) => return Err(TextError::Loop { line, vertex }),
            Err(_) => unreachable!("range checked above"),
        }
    }
    if found != m {
        return Err(TextError::EdgeCountMismatch { declared: m, found });
    }
    Ok(g)
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn emit_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, color) in c.colors.iter().enumerate() {
        let _ = writeln!(out, "c {v} {color}");
    }
    out
}

/// Parses `c <vertex> <color>` lines; every vertex in `0..n` must appear
/// exactly once. The palette is one more than the largest color.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, TextError> {
    let mut colors = vec![None; n];
    for (line, text) in content_lines(text) {
        let [v, c] = numbers::<2>("c", line, text)?;
        let slot = colors
            .get_mut(v)
            .ok_or(TextError::VertexOutOfRange { line, vertex: v, n })?;
        if slot.replace(c).is_some() {
            return Err(TextError::DuplicateVertex { line, vertex: v });
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(TextError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Coloring::from_colors(colors))
}

/// `v <rank> <subset>` lines, one per vertex in rank order.
pub fn emit_vertex_map<'a, I>(subsets: I) -> String
where
    I: IntoIterator<Item = &'a OrdinalSet>,
{
    let mut out = String::new();
    for (rank, s) in subsets.into_iter().enumerate() {
        let _ = writeln!(out, "v {rank} {s}");
    }
    out
}
