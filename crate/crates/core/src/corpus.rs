//! Named test graphs.

use crate::graph::{BipartiteGraph, Multigraph};

fn build(n: usize, edges: Vec<(usize, usize)>) -> Multigraph {
    Multigraph::new(n, edges).expect("corpus graph is well formed")
}

/// Path with `n` vertices.
pub fn path(n: usize) -> Multigraph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle with `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Multigraph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn complete(n: usize) -> Multigraph {
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    build(n, edges)
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Multigraph {
    build(k + 1, (1..=k).map(|i| (0, i)).collect())
}

/// `K_{a,b}` on `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let edges = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, a + j)))
        .collect();
    build(a + b, edges)
}

/// `d`-dimensional hypercube.
pub fn hypercube(d: u32) -> Multigraph {
    let n = 1usize << d;
    let edges = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    build(n, edges)
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, edges)
}

/// `K_{2,2}` with `X = {0, 1}`, edges `0–2, 0–3, 1–2, 1–3`.
pub fn k22() -> BipartiteGraph {
    BipartiteGraph::new(complete_bipartite(2, 2), &[0, 1]).expect("K22 is bipartite")
}

/// Triangle with a loop at vertex 0.
pub fn looped_triangle() -> Multigraph {
    build(3, vec![(0, 1), (1, 2), (2, 0), (0, 0)])
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Multigraph {
    build(2, vec![(0, 1), (0, 1), (0, 1)])
}

/// Path 0–1–2 with a doubled middle edge and a loop at 2.
pub fn multi_path() -> Multigraph {
    build(3, vec![(0, 1), (1, 2), (1, 2), (2, 2)])
}

/// Square with a diagonal and a loop at each end of the diagonal.
pub fn looped_square() -> Multigraph {
    build(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 0), (2, 2)])
}

/// One loop on a single vertex.
pub fn single_loop() -> Multigraph {
    build(1, vec![(0, 0)])
}

/// Every connected named graph with at most 8 vertices.
pub fn small_connected() -> Vec<(String, Multigraph)> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push((format!("P{n}"), path(n)));
    }
    for n in 3..=8 {
        out.push((format!("C{n}"), cycle(n)));
    }
    for n in 2..=8 {
        out.push((format!("K{n}"), complete(n)));
    }
    for k in 2..=7 {
        out.push((format!("K1,{k}"), star(k)));
    }
    for (a, b) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4)] {
        out.push((format!("K{a},{b}"), complete_bipartite(a, b)));
    }
    out.push(("Q3".into(), hypercube(3)));
    out.push(("looped-triangle".into(), looped_triangle()));
    out.push(("theta".into(), theta()));
    out.push(("multi-path".into(), multi_path()));
    out.push(("looped-square".into(), looped_square()));
    out.push(("single-loop".into(), single_loop()));
    out
}

/// Regular simple graphs with degree at least 2.
pub fn regular() -> Vec<(String, Multigraph)> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push((format!("C{n}"), cycle(n)));
    }
    for n in 3..=7 {
        out.push((format!("K{n}"), complete(n)));
    }
    out.push(("K3,3".into(), complete_bipartite(3, 3)));
    out.push(("Q3".into(), hypercube(3)));
    out.push(("Q4".into(), hypercube(4)));
    out.push(("Petersen".into(), petersen()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(hypercube(3).edge_count(), 12);
        assert_eq!(petersen().regular_degree(), Some(3));
        assert_eq!(complete(5).edge_count(), 10);
        assert!(star(4).is_tree());
    }

    #[test]
    fn small_corpus_is_connected() {
        for (name, g) in small_connected() {
            assert!(g.is_connected(), "{name}");
            assert!(g.vertex_count() <= 8, "{name}");
        }
    }
}
