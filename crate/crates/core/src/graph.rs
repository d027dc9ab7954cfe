//! Multigraphs with loops, arc sets, bipartite graphs and the derived graphs
//! the walks are built on: line graphs and the bipartite duplication.
//!
//! Degree convention: a loop contributes 2 to the degree of its vertex and 2
//! to the diagonal of the adjacency matrix. Edge order is the order edges were
//! supplied in, and every edge-indexed matrix uses it.

use crate::error::{validation, Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Finite undirected graph; parallel edges and loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// An oriented edge. `inverse` is the index of the reversed arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
    pub inverse: usize,
}

/// The `2ε` arcs of a graph: `e_1..e_ε` in edge order, then `e_1⁻¹..e_ε⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn get(&self, i: usize) -> Arc {
        self.arcs[i]
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some((i, &(u, v))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| u >= vertex_count || v >= vertex_count)
        {
            return Err(validation(format!(
                "edge {i} = ({u}, {v}) has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Common degree when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected with exactly `ν − 1` edges.
    pub fn is_tree(&self) -> bool {
        self.vertex_count > 0 && self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn arcs(&self) -> ArcSet {
        let eps = self.edges.len();
        let forward = self.edges.iter().enumerate().map(|(i, &(u, v))| Arc {
            origin: u,
            terminus: v,
            inverse: i + eps,
        });
        let backward = self.edges.iter().enumerate().map(|(i, &(u, v))| Arc {
            origin: v,
            terminus: u,
            inverse: i,
        });
        ArcSet {
            arcs: forward.chain(backward).collect(),
        }
    }

    /// Entry `(u, v)` counts the edges between `u` and `v`; a loop adds 2 to
    /// its diagonal entry.
    pub fn adjacency_matrix(&self) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(self.vertex_count, self.vertex_count);
        for &(u, v) in &self.edges {
            a[(u, v)] += C64::new(1.0, 0.0);
            a[(v, u)] += C64::new(1.0, 0.0);
        }
        a
    }

    /// Simple random walk `T_uv = mult(u, v) / deg(u)`.
    pub fn random_walk_matrix(&self) -> Result<ComplexMatrix> {
        let deg = self.degrees();
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(Error::DegreeZero(v));
        }
        let a = self.adjacency_matrix();
        Ok(ComplexMatrix::from_fn(self.vertex_count, self.vertex_count, |u, v| {
            a[(u, v)] / deg[u] as f64
        }))
    }

    /// `D^{-1/2}·A·D^{-1/2}`, the symmetric matrix similar to the random walk.
    pub fn normalized_adjacency(&self) -> Result<ComplexMatrix> {
        let deg = self.degrees();
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(Error::DegreeZero(v));
        }
        let a = self.adjacency_matrix();
        Ok(ComplexMatrix::from_fn(self.vertex_count, self.vertex_count, |u, v| {
            a[(u, v)] / ((deg[u] * deg[v]) as f64).sqrt()
        }))
    }

    /// Line graph: one vertex per edge, one edge per shared endpoint.
    pub fn line_graph(&self) -> Multigraph {
        let ends = |(u, v): (usize, usize)| if u == v { vec![u] } else { vec![u, v] };
        let mut edges = Vec::new();
        for i in 0..self.edges.len() {
            let a = ends(self.edges[i]);
            for j in i + 1..self.edges.len() {
                let b = ends(self.edges[j]);
                let shared = a.iter().filter(|x| b.contains(x)).count();
                edges.extend(std::iter::repeat_n((i, j), shared));
            }
        }
        Multigraph {
            vertex_count: self.edges.len(),
            edges,
        }
    }

    /// Bipartite duplication on `V ⊔ V′` with `v′ = ν + v`.
    pub fn duplication(&self) -> BipartiteGraph {
        self.duplication_with_mirror().0
    }

    /// Duplication together with the mirror map sending the edge `u–v′` to
    /// `v–u′` (a loop's single edge is its own mirror).
    pub fn duplication_with_mirror(&self) -> (BipartiteGraph, Vec<usize>) {
        let n = self.vertex_count;
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        let mut mirror = Vec::with_capacity(2 * self.edges.len());
        for &(u, v) in &self.edges {
            let k = edges.len();
            if u == v {
                edges.push((u, n + u));
                mirror.push(k);
            } else {
                edges.push((u, n + v));
                edges.push((v, n + u));
                mirror.push(k + 1);
                mirror.push(k);
            }
        }
        let graph = Multigraph {
            vertex_count: 2 * n,
            edges,
        };
        let x: Vec<usize> = (0..n).collect();
        let bg = BipartiteGraph::new(graph, &x).expect("duplication is bipartite");
        (bg, mirror)
    }
}

/// Side of a bipartite vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Multigraph with a fixed bipartition `(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Multigraph,
    sides: Vec<Side>,
    x_vertices: Vec<usize>,
    y_vertices: Vec<usize>,
    // position of each vertex inside its own side
    position: Vec<usize>,
    edge_x: Vec<usize>,
    edge_y: Vec<usize>,
}

impl BipartiteGraph {
    /// `x_set` lists the side-X vertices; everything else is side Y.
    pub fn new(graph: Multigraph, x_set: &[usize]) -> Result<Self> {
        let n = graph.vertex_count();
        let mut sides = vec![Side::Y; n];
        for &x in x_set {
            if x >= n {
                return Err(validation(format!("X vertex {x} outside 0..{n}")));
            }
            sides[x] = Side::X;
        }
        let mut position = vec![0; n];
        let mut x_vertices = Vec::new();
        let mut y_vertices = Vec::new();
        for v in 0..n {
            match sides[v] {
                Side::X => {
                    position[v] = x_vertices.len();
                    x_vertices.push(v);
                }
                Side::Y => {
                    position[v] = y_vertices.len();
                    y_vertices.push(v);
                }
            }
        }
        let mut edge_x = Vec::with_capacity(graph.edge_count());
        let mut edge_y = Vec::with_capacity(graph.edge_count());
        for (i, &(u, v)) in graph.edges().iter().enumerate() {
            match (sides[u], sides[v]) {
                (Side::X, Side::Y) => {
                    edge_x.push(u);
                    edge_y.push(v);
                }
                (Side::Y, Side::X) => {
                    edge_x.push(v);
                    edge_y.push(u);
                }
                _ => {
                    return Err(validation(format!(
                        "edge {i} = ({u}, {v}) does not cross the bipartition"
                    )))
                }
            }
        }
        Ok(Self {
            graph,
            sides,
            x_vertices,
            y_vertices,
            position,
            edge_x,
            edge_y,
        })
    }

    /// Two-colours a bipartite graph, putting the first vertex of every
    /// component on side X.
    pub fn two_colour(graph: Multigraph) -> Result<Self> {
        let n = graph.vertex_count();
        let adj = graph.neighbours();
        let mut colour: Vec<Option<Side>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(Side::X);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let other = match colour[u] {
                    Some(Side::X) => Side::Y,
                    _ => Side::X,
                };
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(other);
                            stack.push(w);
                        }
                        Some(c) if c != other => {
                            return Err(validation("graph is not bipartite"));
                        }
                        _ => {}
                    }
                }
            }
        }
        let x: Vec<usize> = (0..n).filter(|&v| colour[v] == Some(Side::X)).collect();
        Self::new(graph, &x)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn side_of(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn x_vertices(&self) -> &[usize] {
        &self.x_vertices
    }

    pub fn y_vertices(&self) -> &[usize] {
        &self.y_vertices
    }

    /// `|X|`
    pub fn m(&self) -> usize {
        self.x_vertices.len()
    }

    /// `|Y|`
    pub fn n(&self) -> usize {
        self.y_vertices.len()
    }

    /// Index of `v` within its own side.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Endpoint of edge `e` on side X.
    pub fn x_of(&self, e: usize) -> usize {
        self.edge_x[e]
    }

    /// Endpoint of edge `e` on side Y.
    pub fn y_of(&self, e: usize) -> usize {
        self.edge_y[e]
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

/// Transition probabilities `p` (seen from X) and `q` (seen from Y) on the
/// edges of a bipartite graph.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeWeighting {
    p: Vec<f64>,
    q: Vec<f64>,
}

/// Row-sum tolerance for weightings.
pub const WEIGHT_TOL: f64 = 1e-12;

impl EdgeWeighting {
    /// Validates that `p` sums to one around every X vertex and `q` around
    /// every Y vertex.
    pub fn new(bg: &BipartiteGraph, p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        let w = Self { p, q };
        w.validate(bg)?;
        Ok(w)
    }

    /// `p(e) = 1/deg X(e)`, `q(e) = 1/deg Y(e)`.
    pub fn uniform(bg: &BipartiteGraph) -> Self {
        let deg = bg.graph().degrees();
        let p = (0..bg.edge_count()).map(|e| 1.0 / deg[bg.x_of(e)] as f64).collect();
        let q = (0..bg.edge_count()).map(|e| 1.0 / deg[bg.y_of(e)] as f64).collect();
        Self { p, q }
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn validate(&self, bg: &BipartiteGraph) -> Result<()> {
        let eps = bg.edge_count();
        if self.p.len() != eps || self.q.len() != eps {
            return Err(validation(format!(
                "weighting has {} p and {} q values for {eps} edges",
                self.p.len(),
                self.q.len()
            )));
        }
        for (e, (&p, &q)) in self.p.iter().zip(&self.q).enumerate() {
            if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
                return Err(validation(format!("edge {e}: p = {p}, q = {q} outside [0, 1]")));
            }
        }
        let nv = bg.graph().vertex_count();
        let mut sum_p = vec![0.0; nv];
        let mut sum_q = vec![0.0; nv];
        for e in 0..eps {
            sum_p[bg.x_of(e)] += self.p[e];
            sum_q[bg.y_of(e)] += self.q[e];
        }
        for &x in bg.x_vertices() {
            if (sum_p[x] - 1.0).abs() > WEIGHT_TOL {
                return Err(validation(format!("p sums to {} at X vertex {x}", sum_p[x])));
            }
        }
        for &y in bg.y_vertices() {
            if (sum_q[y] - 1.0).abs() > WEIGHT_TOL {
                return Err(validation(format!("q sums to {} at Y vertex {y}", sum_q[y])));
            }
        }
        Ok(())
    }
}

/// Role of an edge of the search edge space `E_M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    /// Neither endpoint marked.
    Ordinary,
    /// Exactly one endpoint marked.
    MarkedIncident,
    /// Duplication edge with both endpoints marked; carries no amplitude.
    MarkedPair,
    /// Added edge `u–u′` for a marked `u`.
    Matching,
}

/// One element of `E_M`. Endpoints are base-graph vertex indices: `v` on the
/// `V` side and `w` on the copy side (standing for `w′`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchEdge {
    pub v: usize,
    pub w: usize,
    pub class: EdgeClass,
    /// Index in the duplication, `None` for matching edges.
    pub duplication_index: Option<usize>,
    /// Modified weights `p′`, `q′`.
    pub p: f64,
    pub q: f64,
}

/// Everything needed for the marked-vertex search walk on a base graph.
#[derive(Clone, Debug)]
pub struct SearchInstance {
    base: Multigraph,
    duplication: BipartiteGraph,
    mirror: Vec<usize>,
    weighting: EdgeWeighting,
    marked: Vec<usize>,
    is_marked: Vec<bool>,
    edges: Vec<SearchEdge>,
    r: usize,
    s: usize,
}

impl SearchInstance {
    pub fn base(&self) -> &Multigraph {
        &self.base
    }

    pub fn duplication(&self) -> &BipartiteGraph {
        &self.duplication
    }

    /// Mirror map on duplication edges (`u–v′ ↦ v–u′`).
    pub fn mirror(&self) -> &[usize] {
        &self.mirror
    }

    /// Unmodified weighting on the duplication.
    pub fn weighting(&self) -> &EdgeWeighting {
        &self.weighting
    }

    /// Marked vertices, ascending.
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.is_marked[v]
    }

    /// `E_M`: duplication edges in duplication order, then one matching edge
    /// per marked vertex.
    pub fn edges(&self) -> &[SearchEdge] {
        &self.edges
    }

    /// `n = |V(G)|`
    pub fn n(&self) -> usize {
        self.base.vertex_count()
    }

    /// `m = |M|`
    pub fn m(&self) -> usize {
        self.marked.len()
    }

    /// Number of base edges `ε`.
    pub fn epsilon(&self) -> usize {
        self.base.edge_count()
    }

    /// Edges with both endpoints unmarked.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Edges from an unmarked vertex to a marked copy.
    pub fn s(&self) -> usize {
        self.s
    }

    /// `ε′ = r + 2s + m`, the edges that carry amplitude.
    pub fn epsilon_prime(&self) -> usize {
        self.r + 2 * self.s + self.m()
    }

    /// Indices into `E_M` of edges joining two marked vertices (other than
    /// the matching edges).
    pub fn marked_pair_edges(&self) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.class == EdgeClass::MarkedPair)
            .map(|(i, _)| i)
            .collect()
    }

    /// Unmarked vertices, ascending.
    pub fn unmarked(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.is_marked[v]).collect()
    }
}

/// `p(e) = 1/deg(V(e))`, `q(e) = 1/deg(V′(e))` on the duplication, with
/// degrees taken in the duplication (a base loop contributes one edge there).
pub fn uniform_search_weighting(g: &Multigraph) -> EdgeWeighting {
    EdgeWeighting::uniform(&g.duplication())
}

/// Weighting on the duplication whose `q` mirrors `p`: the `q` value on
/// `u–v′` is the `p` value on `v–u′`.
pub fn mirrored_search_weighting(g: &Multigraph, p: Vec<f64>) -> Result<EdgeWeighting> {
    let (dup, mirror) = g.duplication_with_mirror();
    if p.len() != dup.edge_count() {
        return Err(validation(format!(
            "{} p values for {} duplication edges",
            p.len(),
            dup.edge_count()
        )));
    }
    let q = mirror.iter().map(|&k| p[k]).collect();
    EdgeWeighting::new(&dup, p, q)
}

/// Builds the search edge space and the modified weights `p′`, `q′`.
pub fn build_search_instance(
    g: &Multigraph,
    weighting: EdgeWeighting,
    marked: &[usize],
) -> Result<SearchInstance> {
    let n = g.vertex_count();
    if marked.is_empty() {
        return Err(validation("marked set is empty"));
    }
    let mut is_marked = vec![false; n];
    for &v in marked {
        if v >= n {
            return Err(validation(format!("marked vertex {v} outside 0..{n}")));
        }
        if is_marked[v] {
            return Err(validation(format!("marked vertex {v} listed twice")));
        }
        is_marked[v] = true;
    }
    let (duplication, mirror) = g.duplication_with_mirror();
    weighting.validate(&duplication)?;

    let mut edges = Vec::with_capacity(duplication.edge_count() + marked.len());
    let (mut r, mut s) = (0, 0);
    for k in 0..duplication.edge_count() {
        let v = duplication.x_of(k);
        let w = duplication.y_of(k) - n;
        let class = match (is_marked[v], is_marked[w]) {
            (false, false) => {
                r += 1;
                EdgeClass::Ordinary
            }
            (false, true) => {
                s += 1;
                EdgeClass::MarkedIncident
            }
            (true, false) => EdgeClass::MarkedIncident,
            (true, true) => EdgeClass::MarkedPair,
        };
        let p = if is_marked[v] { 0.0 } else { weighting.p()[k] };
        let q = if is_marked[w] { 0.0 } else { weighting.q()[k] };
        edges.push(SearchEdge {
            v,
            w,
            class,
            duplication_index: Some(k),
            p,
            q,
        });
    }
    let mut sorted = marked.to_vec();
    sorted.sort_unstable();
    for &u in &sorted {
        edges.push(SearchEdge {
            v: u,
            w: u,
            class: EdgeClass::Matching,
            duplication_index: None,
            p: 1.0,
            q: 1.0,
        });
    }
    Ok(SearchInstance {
        base: g.clone(),
        duplication,
        mirror,
        weighting,
        marked: sorted,
        is_marked,
        edges,
        r,
        s,
    })
}
