//! Seeded random instances: isometries, graphs, weightings and amplitudes.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::graph::{BipartiteGraph, EdgeWeighting, Multigraph};
use crate::linalg::{ComplexMatrix, C64};
use crate::operators::AmplitudeAssignment;

/// Gaussian `N × k` matrix with orthonormalised columns.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> ComplexMatrix {
    assert!(k <= n, "isometry needs k <= n");
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for c in &cols {
                let dot: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= dot * ci;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, k, |i, j| cols[j][i])
}

/// Uniformly random labelled tree on `n ≥ 1` vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Multigraph {
    let edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Multigraph::new(n, edges).expect("tree endpoints in range")
}

/// Random tree plus `extra` edges; loops allowed when `loops` is set.
pub fn random_multigraph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    extra: usize,
    loops: bool,
) -> Multigraph {
    let mut edges = random_tree(rng, n).edges().to_vec();
    while edges.len() + 1 < n + extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v || loops {
            edges.push((u, v));
        }
    }
    Multigraph::new(n, edges).expect("endpoints in range")
}

/// Connected bipartite graph with sides `0..m` and `m..m+n`.
pub fn random_bipartite<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    extra: usize,
) -> BipartiteGraph {
    assert!(m >= 1 && n >= 1);
    // spanning tree grown by attaching each new vertex to the other side
    let mut edges = Vec::new();
    let mut xs = vec![0];
    let mut ys = vec![m];
    edges.push((0, m));
    let mut pending: Vec<usize> = (1..m).chain(m + 1..m + n).collect();
    while !pending.is_empty() {
        let v = pending.swap_remove(rng.gen_range(0..pending.len()));
        if v < m {
            edges.push((v, ys[rng.gen_range(0..ys.len())]));
            xs.push(v);
        } else {
            edges.push((xs[rng.gen_range(0..xs.len())], v));
            ys.push(v);
        }
    }
    for _ in 0..extra {
        edges.push((rng.gen_range(0..m), m + rng.gen_range(0..n)));
    }
    let g = Multigraph::new(m + n, edges).expect("endpoints in range");
    BipartiteGraph::new(g, &(0..m).collect::<Vec<_>>()).expect("edges cross sides")
}

fn normalised_groups<R: Rng + ?Sized>(rng: &mut R, groups: &[usize], count: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..groups.len()).map(|_| rng.gen_range(0.05..1.0)).collect();
    let mut sums = vec![0.0; count];
    for (&g, &r) in groups.iter().zip(&raw) {
        sums[g] += r;
    }
    groups.iter().zip(&raw).map(|(&g, &r)| r / sums[g]).collect()
}

/// Strictly positive random weighting.
pub fn random_weighting<R: Rng + ?Sized>(rng: &mut R, bg: &BipartiteGraph) -> EdgeWeighting {
    let nv = bg.graph().vertex_count();
    let xs: Vec<usize> = (0..bg.edge_count()).map(|e| bg.x_of(e)).collect();
    let ys: Vec<usize> = (0..bg.edge_count()).map(|e| bg.y_of(e)).collect();
    let p = normalised_groups(rng, &xs, nv);
    let q = normalised_groups(rng, &ys, nv);
    EdgeWeighting::new(bg, p, q).expect("normalised by construction")
}

/// Random moduli with uniformly random phases.
pub fn random_amplitudes<R: Rng + ?Sized>(rng: &mut R, bg: &BipartiteGraph) -> AmplitudeAssignment {
    let w = random_weighting(rng, bg);
    let mut phase = |r: f64| C64::from_polar(r.sqrt(), rng.gen_range(0.0..2.0 * PI));
    let a = w.p().iter().map(|&p| phase(p)).collect();
    let b = w.q().iter().map(|&q| phase(q)).collect();
    AmplitudeAssignment::new(bg, a, b).expect("normalised by construction")
}
