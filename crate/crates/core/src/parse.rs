//! Text formats for graphs, weightings and amplitudes.
//!
//! Edge lists: the first line is the vertex count, every following line is
//! `u v` with 0-based endpoints. `#` starts a comment. Bipartite input may add
//! a second header line `X: i j k …` naming the side-X vertices; without it
//! the sides are found by two-colouring.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeWeighting, Multigraph};
use crate::linalg::C64;
use crate::operators::AmplitudeAssignment;

// (1-based line number, content) for every non-empty line after comments are stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers<T: FromStr>(line: usize, body: &str) -> Result<Vec<T>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<T>()
                .map_err(|_| parse_err(line, format!("cannot read `{tok}` as a number")))
        })
        .collect()
}

struct EdgeList {
    vertex_count: usize,
    x_side: Option<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut lines = content_lines(text).peekable();
    let (line, body) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let vertex_count = body
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("vertex count `{body}` is not a nonnegative integer")))?;
    let mut x_side = None;
    if let Some(&(line, body)) = lines.peek() {
        if let Some(rest) = body.strip_prefix("X:") {
            x_side = Some(numbers::<usize>(line, rest)?);
            lines.next();
        }
    }
    let mut edges = Vec::new();
    for (line, body) in lines {
        let ends = numbers::<usize>(line, body)?;
        if ends.len() != 2 {
            return Err(parse_err(line, format!("expected `u v`, found `{body}`")));
        }
        edges.push((ends[0], ends[1]));
    }
    Ok(EdgeList {
        vertex_count,
        x_side,
        edges,
    })
}

/// Reads an edge list; an `X:` header, if present, is ignored.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let list = parse_edge_list(text)?;
    Multigraph::new(list.vertex_count, list.edges)
}

/// Reads an edge list with an optional `X:` header.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let list = parse_edge_list(text)?;
    let g = Multigraph::new(list.vertex_count, list.edges)?;
    match list.x_side {
        Some(x) => BipartiteGraph::new(g, &x),
        None => BipartiteGraph::two_colour(g),
    }
}

/// One `p q` line per edge, in edge order.
pub fn parse_weighting(text: &str, bg: &BipartiteGraph) -> Result<EdgeWeighting> {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (line, body) in content_lines(text) {
        let vals = numbers::<f64>(line, body)?;
        if vals.len() != 2 {
            return Err(parse_err(line, format!("expected `p q`, found `{body}`")));
        }
        p.push(vals[0]);
        q.push(vals[1]);
    }
    EdgeWeighting::new(bg, p, q)
}

/// One line per edge: `a b` (real) or `a_re a_im b_re b_im`.
pub fn parse_amplitudes(text: &str, h: &BipartiteGraph) -> Result<AmplitudeAssignment> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (line, body) in content_lines(text) {
        let vals = numbers::<f64>(line, body)?;
        match vals[..] {
            [x, y] => {
                a.push(C64::new(x, 0.0));
                b.push(C64::new(y, 0.0));
            }
            [ar, ai, br, bi] => {
                a.push(C64::new(ar, ai));
                b.push(C64::new(br, bi));
            }
            _ => {
                return Err(parse_err(
                    line,
                    format!("expected 2 or 4 numbers, found {}", vals.len()),
                ))
            }
        }
    }
    AmplitudeAssignment::new(h, a, b)
}
