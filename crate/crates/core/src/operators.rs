//! Walk unitaries and their discriminant matrices.
//!
//! Every walk here is a product of two reflections `(2BB* − I)(2AA* − I)`
//! about the column spaces of isometries `A` and `B`. The discriminant is the
//! small Hermitian matrix `*B·A·*A·B` whose eigenvalues, all in `[0, 1]`,
//! determine the spectrum of the product.

use crate::error::{validation, Error, Result};
use crate::graph::{BipartiteGraph, EdgeWeighting, Multigraph, SearchInstance, WEIGHT_TOL};
use crate::linalg::{eig_hermitian, ComplexMatrix, C64};

/// Tolerance for unitarity, Hermiticity and involution checks.
pub const OPERATOR_TOL: f64 = 1e-9;

const ZERO: C64 = C64::new(0.0, 0.0);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkKind {
    Grover,
    Szegedy,
    Staggered,
    Search,
}

/// What the rows and columns of a walk operator are indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Arcs `e_1..e_ε, e_1⁻¹..e_ε⁻¹`.
    Arcs,
    /// Edges of the graph, in edge order.
    Edges,
    /// The search edge space `E_M`.
    SearchEdges,
}

/// A unitary evolution operator together with its construction data.
#[derive(Clone, Debug)]
pub struct WalkOperator {
    matrix: ComplexMatrix,
    kind: WalkKind,
    basis: Basis,
    factors: Option<(ComplexMatrix, ComplexMatrix)>,
}

impl WalkOperator {
    /// `R1·R0` from two reflections.
    fn from_reflections(r0: ComplexMatrix, r1: ComplexMatrix, kind: WalkKind, basis: Basis) -> Self {
        let matrix = &r1 * &r0;
        Self {
            matrix,
            kind,
            basis,
            factors: Some((r0, r1)),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// The reflections `(R0, R1)` with `U = R1·R0`; absent for Grover.
    pub fn factors(&self) -> Option<(&ComplexMatrix, &ComplexMatrix)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.matrix.is_unitary(tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscriminantKind {
    /// `T_BA·T_AB` for arbitrary isometries.
    Generic,
    /// `½(I + D^{-1/2}·A·D^{-1/2})` of the Grover walk.
    Grover,
    /// `A_p = ᵗK·L·ᵗL·K` on side X.
    SzegedyP,
    /// `A_q = ᵗL·K·ᵗK·L` on side Y.
    SzegedyQ,
    /// `Â = *K·L·*L·K` of a staggered walk.
    Staggered,
    /// `Â′_p` of the search walk.
    Search,
}

/// Hermitian PSD matrix `*B·A·*A·B` of size `t`, where `A` is `N × s` and `B`
/// is `N × t`.
#[derive(Clone, Debug)]
pub struct Discriminant {
    matrix: ComplexMatrix,
    n: usize,
    s: usize,
    t: usize,
    kind: DiscriminantKind,
}

impl Discriminant {
    /// `*B·A·*A·B` from isometries `a` (`N × s`) and `b` (`N × t`).
    pub fn from_isometries(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        if a.rows() != b.rows() {
            return Err(Error::Dimension(format!(
                "isometries have {} and {} rows",
                a.rows(),
                b.rows()
            )));
        }
        for (name, m) in [("A", a), ("B", b)] {
            if !m.is_isometry(OPERATOR_TOL) {
                return Err(validation(format!("{name} is not an isometry")));
            }
        }
        let tba = b.conj_transpose().matmul(a)?;
        let matrix = tba.matmul(&tba.conj_transpose())?;
        Ok(Self {
            matrix,
            n: a.rows(),
            s: a.cols(),
            t: b.cols(),
            kind: DiscriminantKind::Generic,
        })
    }

    fn with_kind(mut self, kind: DiscriminantKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> DiscriminantKind {
        self.kind
    }

    /// Row count `N` of the isometries.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Column count of the partner isometry.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Size of the matrix.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(&self.matrix)?.values)
    }
}

/// Grover matrix on arcs: `U_ef = 2/d_{t(f)}` when `t(f) = o(e)`, minus one
/// more when `f = e⁻¹`.
pub fn grover_matrix(g: &Multigraph) -> Result<WalkOperator> {
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|&d| d == 0) {
        return Err(Error::DegreeZero(v));
    }
    let arcs = g.arcs();
    let n = arcs.len();
    let matrix = ComplexMatrix::from_fn(n, n, |e, f| {
        let (ae, af) = (arcs.get(e), arcs.get(f));
        let mut x = 0.0;
        if af.terminus == ae.origin {
            x += 2.0 / deg[af.terminus] as f64;
        }
        if ae.inverse == f {
            x -= 1.0;
        }
        re(x)
    });
    Ok(WalkOperator {
        matrix,
        kind: WalkKind::Grover,
        basis: Basis::Arcs,
        factors: None,
    })
}

/// Isometries `(A, B)` with `U = (2BB* − I)(2AA* − I)`: `A` is `2ε × ν` with
/// `A_{g,v} = 1/√d_v` when `t(g) = v`, and `B` is `2ε × ε` pairing each arc
/// with its inverse.
pub fn grover_isometries(g: &Multigraph) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|&d| d == 0) {
        return Err(Error::DegreeZero(v));
    }
    let arcs = g.arcs();
    let eps = g.edge_count();
    let a = ComplexMatrix::from_fn(arcs.len(), g.vertex_count(), |e, v| {
        if arcs.get(e).terminus == v {
            re(1.0 / (deg[v] as f64).sqrt())
        } else {
            ZERO
        }
    });
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let b = ComplexMatrix::from_fn(arcs.len(), eps, |e, k| {
        if e == k || e == k + eps {
            re(h)
        } else {
            ZERO
        }
    });
    Ok((a, b))
}

/// `½(I + D^{-1/2}·A·D^{-1/2})`, the `ν × ν` discriminant of the Grover walk.
pub fn grover_discriminant(g: &Multigraph) -> Result<Discriminant> {
    let (a, b) = grover_isometries(g)?;
    let d = Discriminant::from_isometries(&b, &a)?.with_kind(DiscriminantKind::Grover);
    debug_assert!(d.matrix.max_abs_diff(&grover_discriminant_oracle(g)?) <= 1e-12);
    Ok(d)
}

/// Direct formula for the Grover discriminant from the graph.
pub fn grover_discriminant_oracle(g: &Multigraph) -> Result<ComplexMatrix> {
    let t = g.normalized_adjacency()?;
    let n = g.vertex_count();
    Ok(ComplexMatrix::from_fn(n, n, |u, v| {
        let delta = if u == v { 1.0 } else { 0.0 };
        (t[(u, v)] + delta) * 0.5
    }))
}

/// 0/1 matrix marking the strictly positive (real) entries.
pub fn positive_support(f: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(f.rows(), f.cols(), |i, j| {
        if f[(i, j)].re > 0.0 {
            re(1.0)
        } else {
            ZERO
        }
    })
}

/// `K` (`ε × m`, `K_ex = √p(e)`) and `L` (`ε × n`, `L_ey = √q(e)`), columns
/// ordered by position within each side.
pub fn szegedy_isometries(
    bg: &BipartiteGraph,
    w: &EdgeWeighting,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    w.validate(bg)?;
    let eps = bg.edge_count();
    let mut k = ComplexMatrix::zeros(eps, bg.m());
    let mut l = ComplexMatrix::zeros(eps, bg.n());
    for e in 0..eps {
        k[(e, bg.position(bg.x_of(e)))] = re(w.p()[e].sqrt());
        l[(e, bg.position(bg.y_of(e)))] = re(w.q()[e].sqrt());
    }
    Ok((k, l))
}

fn check_reflection_pair(k: &ComplexMatrix, l: &ComplexMatrix) -> Result<()> {
    if k.rows() != l.rows() {
        return Err(Error::Dimension(format!(
            "isometries have {} and {} rows",
            k.rows(),
            l.rows()
        )));
    }
    for (name, m) in [("K", k), ("L", l)] {
        if !m.is_isometry(OPERATOR_TOL) {
            return Err(validation(format!("{name} is not an isometry")));
        }
    }
    Ok(())
}

/// `W = R1·R0` with `R0 = 2K·*K − I`, `R1 = 2L·*L − I`.
pub fn szegedy_walk(k: &ComplexMatrix, l: &ComplexMatrix) -> Result<WalkOperator> {
    check_reflection_pair(k, l)?;
    Ok(WalkOperator::from_reflections(
        k.reflection(),
        l.reflection(),
        WalkKind::Szegedy,
        Basis::Edges,
    ))
}

/// `A_p = ᵗK·L·ᵗL·K` (`m × m`).
pub fn discriminant_ap(k: &ComplexMatrix, l: &ComplexMatrix) -> Result<Discriminant> {
    check_reflection_pair(k, l)?;
    Ok(Discriminant::from_isometries(l, k)?.with_kind(DiscriminantKind::SzegedyP))
}

/// `A_q = ᵗL·K·ᵗK·L` (`n × n`).
pub fn discriminant_aq(k: &ComplexMatrix, l: &ComplexMatrix) -> Result<Discriminant> {
    check_reflection_pair(k, l)?;
    Ok(Discriminant::from_isometries(k, l)?.with_kind(DiscriminantKind::SzegedyQ))
}

/// Sum over length-two paths `x – y – x′` of `√(p(e)q(e)p(f)q(f))`, for the
/// side given by `side_x` (true: X, false: Y).
pub fn two_path_oracle(bg: &BipartiteGraph, w: &EdgeWeighting, side_x: bool) -> ComplexMatrix {
    let amp: Vec<C64> = (0..bg.edge_count())
        .map(|e| re((w.p()[e] * w.q()[e]).sqrt()))
        .collect();
    two_path_sum(bg, side_x, |e, f| amp[e] * amp[f])
}

// Σ over ordered edge pairs (e, f) sharing their far endpoint of term(e, f),
// keyed by the near endpoints.
fn two_path_sum(
    bg: &BipartiteGraph,
    side_x: bool,
    term: impl Fn(usize, usize) -> C64,
) -> ComplexMatrix {
    let (near, far): (Vec<usize>, Vec<usize>) = (0..bg.edge_count())
        .map(|e| {
            if side_x {
                (bg.x_of(e), bg.y_of(e))
            } else {
                (bg.y_of(e), bg.x_of(e))
            }
        })
        .unzip();
    let size = if side_x { bg.m() } else { bg.n() };
    let mut out = ComplexMatrix::zeros(size, size);
    for e in 0..bg.edge_count() {
        for f in 0..bg.edge_count() {
            if far[e] == far[f] {
                let (i, j) = (bg.position(near[e]), bg.position(near[f]));
                out[(i, j)] += term(e, f);
            }
        }
    }
    out
}

/// Complex amplitudes on the edges of a root bipartite graph `H`: `a_e`
/// spans the stars around X vertices and `b_e` those around Y vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeAssignment {
    a: Vec<C64>,
    b: Vec<C64>,
}

impl AmplitudeAssignment {
    /// Checks `Σ_{x∈e} |a_e|² = 1` for every X vertex and likewise for `b`.
    pub fn new(h: &BipartiteGraph, a: Vec<C64>, b: Vec<C64>) -> Result<Self> {
        let eps = h.edge_count();
        if a.len() != eps || b.len() != eps {
            return Err(validation(format!(
                "{} a and {} b amplitudes for {eps} edges",
                a.len(),
                b.len()
            )));
        }
        let nv = h.graph().vertex_count();
        let mut sa = vec![0.0; nv];
        let mut sb = vec![0.0; nv];
        for e in 0..eps {
            sa[h.x_of(e)] += a[e].norm_sqr();
            sb[h.y_of(e)] += b[e].norm_sqr();
        }
        for &x in h.x_vertices() {
            if (sa[x] - 1.0).abs() > WEIGHT_TOL {
                return Err(validation(format!("|a|² sums to {} at X vertex {x}", sa[x])));
            }
        }
        for &y in h.y_vertices() {
            if (sb[y] - 1.0).abs() > WEIGHT_TOL {
                return Err(validation(format!("|b|² sums to {} at Y vertex {y}", sb[y])));
            }
        }
        Ok(Self { a, b })
    }

    /// Real amplitudes `√p`, `√q`; the staggered walk then coincides with
    /// the Szegedy walk of `(H, w)`.
    pub fn from_weighting(h: &BipartiteGraph, w: &EdgeWeighting) -> Result<Self> {
        w.validate(h)?;
        let a = w.p().iter().map(|&p| re(p.sqrt())).collect();
        let b = w.q().iter().map(|&q| re(q.sqrt())).collect();
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[C64] {
        &self.a
    }

    pub fn b(&self) -> &[C64] {
        &self.b
    }
}

/// Staggered walk on `L(H)` with its reflections and discriminant.
#[derive(Clone, Debug)]
pub struct StaggeredWalk {
    pub walk: WalkOperator,
    pub discriminant: Discriminant,
    pub k: ComplexMatrix,
    pub l: ComplexMatrix,
}

/// `U = U1·U0` on the vertices of `L(H)` (the edges of `H`), with
/// `U0 = 2K·*K − I`, `U1 = 2L·*L − I`, `K_ex = a_e`, `L_ey = b_e`, and
/// `Â = *K·L·*L·K`.
pub fn sqw_operators(h: &BipartiteGraph, amps: &AmplitudeAssignment) -> Result<StaggeredWalk> {
    AmplitudeAssignment::new(h, amps.a.clone(), amps.b.clone())?;
    let eps = h.edge_count();
    let mut k = ComplexMatrix::zeros(eps, h.m());
    let mut l = ComplexMatrix::zeros(eps, h.n());
    for e in 0..eps {
        k[(e, h.position(h.x_of(e)))] = amps.a[e];
        l[(e, h.position(h.y_of(e)))] = amps.b[e];
    }
    check_reflection_pair(&k, &l)?;
    let walk = WalkOperator::from_reflections(
        k.reflection(),
        l.reflection(),
        WalkKind::Staggered,
        Basis::Edges,
    );
    let discriminant = Discriminant::from_isometries(&l, &k)?.with_kind(DiscriminantKind::Staggered);
    debug_assert!(discriminant.matrix.max_abs_diff(&sqw_two_path_oracle(h, amps)) <= 1e-12);
    Ok(StaggeredWalk {
        walk,
        discriminant,
        k,
        l,
    })
}

/// `â_{xx′} = Σ ā_e b_e a_f b̄_f` over length-two paths `x – y – x′` in `H`.
pub fn sqw_two_path_oracle(h: &BipartiteGraph, amps: &AmplitudeAssignment) -> ComplexMatrix {
    two_path_sum(h, true, |e, f| {
        amps.a[e].conj() * amps.b[e] * amps.a[f] * amps.b[f].conj()
    })
}

/// The search walk and its associated stochastic matrices.
#[derive(Clone, Debug)]
pub struct SearchOperators {
    /// `W′ = R′1·R′0` on `E_M`.
    pub walk: WalkOperator,
    /// `Â′_p = ᵗK·L·ᵗL·K` (`n × n`).
    pub discriminant: Discriminant,
    pub k: ComplexMatrix,
    pub l: ComplexMatrix,
    /// Unmodified `2n × 2n` chain on `V ⊔ V′`.
    pub p: ComplexMatrix,
    /// Modified chain built from `p′`, `q′`.
    pub p_prime: ComplexMatrix,
    /// `(n−m) × (n−m)` Dirichlet block on the unmarked vertices (ascending).
    pub p_m: ComplexMatrix,
}

/// Builds `W′`, `Â′_p`, `P`, `P′` and `P_M` for a search instance.
pub fn search_operators(si: &SearchInstance) -> Result<SearchOperators> {
    let n = si.n();
    let dim = si.edges().len();
    let mut k = ComplexMatrix::zeros(dim, n);
    let mut l = ComplexMatrix::zeros(dim, n);
    let mut p_prime = ComplexMatrix::zeros(2 * n, 2 * n);
    for (i, e) in si.edges().iter().enumerate() {
        k[(i, e.v)] = re(e.p.sqrt());
        l[(i, e.w)] = re(e.q.sqrt());
        p_prime[(e.v, n + e.w)] += re(e.p);
        p_prime[(n + e.w, e.v)] += re(e.q);
    }
    check_reflection_pair(&k, &l)?;
    let walk = WalkOperator::from_reflections(
        k.reflection(),
        l.reflection(),
        WalkKind::Search,
        Basis::SearchEdges,
    );
    let discriminant = Discriminant::from_isometries(&l, &k)?.with_kind(DiscriminantKind::Search);
    debug_assert!(discriminant.matrix.max_abs_diff(&search_two_path_oracle(si)) <= 1e-12);

    let dup = si.duplication();
    let w = si.weighting();
    let mut p = ComplexMatrix::zeros(2 * n, 2 * n);
    for e in 0..dup.edge_count() {
        let (u, v) = (dup.x_of(e), dup.y_of(e));
        p[(u, v)] += re(w.p()[e]);
        p[(v, u)] += re(w.q()[e]);
    }
    let unmarked = si.unmarked();
    let p_m = ComplexMatrix::from_fn(unmarked.len(), unmarked.len(), |i, j| {
        p[(unmarked[i], n + unmarked[j])]
    });
    Ok(SearchOperators {
        walk,
        discriminant,
        k,
        l,
        p,
        p_prime,
        p_m,
    })
}

/// `Â′_p` from its definition: Σ over length-two paths `u – w′ – v` in `E_M`
/// of `√(p′(e)q′(e)p′(f)q′(f))`.
pub fn search_two_path_oracle(si: &SearchInstance) -> ComplexMatrix {
    let n = si.n();
    let edges = si.edges();
    let mut out = ComplexMatrix::zeros(n, n);
    for e in edges {
        for f in edges {
            if e.w == f.w {
                out[(e.v, f.v)] += re((e.p * e.q * f.p * f.q).sqrt());
            }
        }
    }
    out
}

/// Witness for the detailed balance condition `p′(e)π(V(e)) = q′(e)π(V′(e))`.
#[derive(Clone, Debug)]
pub struct BalanceCertificate {
    /// `π` on `V ⊔ V′` (copy `v′` at index `n + v`); 1 on marked vertices.
    pub pi: Vec<f64>,
    /// Largest relative violation of the balance equations.
    pub balance_residual: f64,
    /// Whether `q` is the mirror image of `p`, the setting in which
    /// `Â′_p = (D ⊕ I)·P′_M²·(D ⊕ I)⁻¹` holds.
    pub mirrored: bool,
    /// `‖Â′_p − D̃·P′_M²·D̃⁻¹‖_max` with `D̃ = diag √π` on `V`.
    pub similarity_residual: f64,
}

/// Relative tolerance for the balance equations.
pub const BALANCE_TOL: f64 = 1e-9;

/// Solves for `π` by propagating ratios across the unmarked support and
/// verifying every edge; `None` when no positive solution exists.
pub fn detailed_balance(si: &SearchInstance) -> Result<Option<BalanceCertificate>> {
    let n = si.n();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); 2 * n];
    let mut support = Vec::new();
    for e in si.edges() {
        if si.is_marked(e.v) || si.is_marked(e.w) {
            continue;
        }
        let (a, b) = (e.v, n + e.w);
        match (e.p > 0.0, e.q > 0.0) {
            (false, false) => continue,
            (true, true) => {}
            _ => return Ok(None),
        }
        // π(b) = π(a)·p′/q′
        adj[a].push((b, e.p / e.q));
        adj[b].push((a, e.q / e.p));
        support.push((a, b, e.p, e.q));
    }
    let mut pi = vec![0.0; 2 * n];
    for v in 0..n {
        if si.is_marked(v) {
            pi[v] = 1.0;
            pi[n + v] = 1.0;
        }
    }
    let mut seen: Vec<bool> = pi.iter().map(|&x| x > 0.0).collect();
    for root in 0..2 * n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        pi[root] = 1.0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &(w, ratio) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    pi[w] = pi[u] * ratio;
                    stack.push(w);
                }
            }
        }
    }
    let balance_residual = support
        .iter()
        .map(|&(a, b, p, q)| (p * pi[a] - q * pi[b]).abs() / (p * pi[a]).max(q * pi[b]))
        .fold(0.0, f64::max);
    if balance_residual > BALANCE_TOL {
        return Ok(None);
    }

    let w = si.weighting();
    let mirrored = si
        .mirror()
        .iter()
        .enumerate()
        .all(|(k, &j)| (w.q()[k] - w.p()[j]).abs() <= WEIGHT_TOL);
    let ops = search_operators(si)?;
    let similarity_residual = balance_similarity_residual(si, &ops, &pi)?;
    Ok(Some(BalanceCertificate {
        pi,
        balance_residual,
        mirrored,
        similarity_residual,
    }))
}

/// `P′_M = P_M ⊕ I_m` laid out on `V` in vertex order.
pub fn p_m_prime(si: &SearchInstance, p_m: &ComplexMatrix) -> ComplexMatrix {
    let n = si.n();
    let unmarked = si.unmarked();
    let mut out = ComplexMatrix::zeros(n, n);
    for (i, &u) in unmarked.iter().enumerate() {
        for (j, &v) in unmarked.iter().enumerate() {
            out[(u, v)] = p_m[(i, j)];
        }
    }
    for &u in si.marked() {
        out[(u, u)] = re(1.0);
    }
    out
}

fn balance_similarity_residual(
    si: &SearchInstance,
    ops: &SearchOperators,
    pi: &[f64],
) -> Result<f64> {
    let n = si.n();
    let pm = p_m_prime(si, &ops.p_m);
    let sq = pm.matmul(&pm)?;
    let similar = ComplexMatrix::from_fn(n, n, |u, v| sq[(u, v)] * (pi[u] / pi[v]).sqrt());
    Ok(ops.discriminant.matrix().max_abs_diff(&similar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{build_search_instance, uniform_search_weighting};

    fn k22_uniform() -> (BipartiteGraph, EdgeWeighting) {
        let bg = corpus::k22();
        let w = EdgeWeighting::uniform(&bg);
        (bg, w)
    }

    #[test]
    fn single_edge_grover_bounces() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let u = grover_matrix(&g).unwrap();
        assert_eq!(u.matrix(), &ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]));
    }

    #[test]
    fn grover_factorises_through_isometries() {
        for g in [corpus::complete(4), corpus::looped_triangle(), corpus::theta()] {
            let u = grover_matrix(&g).unwrap();
            let (a, b) = grover_isometries(&g).unwrap();
            let sc = &b.reflection() * &a.reflection();
            assert!(u.matrix().max_abs_diff(&sc) < 1e-12);
            assert!(u.is_unitary(1e-12));
        }
    }

    #[test]
    fn grover_discriminant_matches_graph_formula() {
        for g in [corpus::cycle(5), corpus::looped_square(), corpus::multi_path()] {
            let d = grover_discriminant(&g).unwrap();
            let oracle = grover_discriminant_oracle(&g).unwrap();
            assert!(d.matrix().max_abs_diff(&oracle) < 1e-12);
        }
    }

    #[test]
    fn positive_support_keeps_zeros() {
        let i = ComplexMatrix::identity(3);
        assert_eq!(positive_support(&i), i);
        let m = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 0.5, 0.0]);
        assert_eq!(positive_support(&m), ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn k22_isometries_and_walk() {
        let (bg, w) = k22_uniform();
        let (k, l) = szegedy_isometries(&bg, &w).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let k_expected = ComplexMatrix::from_real(4, 2, &[h, 0.0, h, 0.0, 0.0, h, 0.0, h]);
        let l_expected = ComplexMatrix::from_real(4, 2, &[h, 0.0, 0.0, h, h, 0.0, 0.0, h]);
        assert!(k.max_abs_diff(&k_expected) < 1e-15);
        assert!(l.max_abs_diff(&l_expected) < 1e-15);
        let walk = szegedy_walk(&k, &l).unwrap();
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0,
            ],
        );
        assert!(walk.matrix().max_abs_diff(&expected) < 1e-12, "{:?}", walk.matrix());
        let ap = discriminant_ap(&k, &l).unwrap();
        assert!(ap.matrix().max_abs_diff(&ComplexMatrix::from_real(2, 2, &[0.5; 4])) < 1e-12);
    }

    #[test]
    fn single_edge_szegedy() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let bg = BipartiteGraph::new(g, &[0]).unwrap();
        let w = EdgeWeighting::new(&bg, vec![1.0], vec![1.0]).unwrap();
        let (k, l) = szegedy_isometries(&bg, &w).unwrap();
        assert_eq!(k, ComplexMatrix::identity(1));
        let walk = szegedy_walk(&k, &l).unwrap();
        assert_eq!(walk.matrix(), &ComplexMatrix::identity(1));
        assert_eq!(discriminant_ap(&k, &l).unwrap().matrix(), &ComplexMatrix::identity(1));
    }

    #[test]
    fn star_rooted_in_x() {
        let bg = BipartiteGraph::new(corpus::star(2), &[0]).unwrap();
        let w = EdgeWeighting::new(&bg, vec![0.5, 0.5], vec![1.0, 1.0]).unwrap();
        let (k, l) = szegedy_isometries(&bg, &w).unwrap();
        assert_eq!((k.rows(), k.cols()), (2, 1));
        assert!((k[(0, 0)].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(l, ComplexMatrix::identity(2));
        assert!(k.is_isometry(1e-15));
    }

    #[test]
    fn path_ap_matches_two_paths() {
        let bg = BipartiteGraph::new(corpus::path(3), &[0, 2]).unwrap();
        let w = EdgeWeighting::uniform(&bg);
        let (k, l) = szegedy_isometries(&bg, &w).unwrap();
        let ap = discriminant_ap(&k, &l).unwrap();
        assert!(ap.matrix().max_abs_diff(&two_path_oracle(&bg, &w, true)) < 1e-12);
        let aq = discriminant_aq(&k, &l).unwrap();
        assert!(aq.matrix().max_abs_diff(&two_path_oracle(&bg, &w, false)) < 1e-12);
        assert_eq!(aq.t(), 1);
    }

    #[test]
    fn sqw_single_edge() {
        let h = BipartiteGraph::new(Multigraph::new(2, vec![(0, 1)]).unwrap(), &[0]).unwrap();
        let amps = AmplitudeAssignment::new(&h, vec![C64::new(0.0, 1.0)], vec![re(1.0)]).unwrap();
        let sqw = sqw_operators(&h, &amps).unwrap();
        assert!(sqw.walk.matrix().max_abs_diff(&ComplexMatrix::identity(1)) < 1e-15);
        assert!(sqw.discriminant.matrix().max_abs_diff(&ComplexMatrix::identity(1)) < 1e-15);
    }

    #[test]
    fn sqw_rejects_unnormalised() {
        let h = corpus::k22();
        assert!(AmplitudeAssignment::new(&h, vec![re(0.5); 4], vec![re(0.5); 4]).is_err());
    }

    #[test]
    fn all_marked_search_is_identity() {
        let g = corpus::complete(3);
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[0, 1, 2]).unwrap();
        let ops = search_operators(&si).unwrap();
        assert!(ops.walk.matrix().max_abs_diff(&ComplexMatrix::identity(9)) < 1e-12);
        assert!(ops.discriminant.matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn single_edge_search_discriminant() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[1]).unwrap();
        let ops = search_operators(&si).unwrap();
        assert!(ops.discriminant.matrix().max_abs_diff(&search_two_path_oracle(&si)) < 1e-15);
    }

    #[test]
    fn uniform_weighting_is_balanced() {
        let g = corpus::looped_square();
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[3]).unwrap();
        let cert = detailed_balance(&si).unwrap().expect("balanced");
        assert!(cert.mirrored);
        assert!(cert.similarity_residual < 1e-12);
        let deg = g.duplication().graph().degrees();
        // π is proportional to the degree within each support component
        let (a, b) = (0, 1);
        assert!((cert.pi[a] / cert.pi[b] - deg[a] as f64 / deg[b] as f64).abs() < 1e-12);
    }

    #[test]
    fn skewed_weighting_is_unbalanced() {
        // the unmarked support of K4 minus a vertex is a 6-cycle
        let g = corpus::complete(4);
        let dup = g.duplication();
        let mut w = EdgeWeighting::uniform(&dup);
        let mut p = w.p().to_vec();
        // vertex 0 has edges 0 (0–1′), 2 (0–2′) and 4 (0–3′)
        p[0] = 0.5;
        p[2] = 1.0 / 6.0;
        w = EdgeWeighting::new(&dup, p, w.q().to_vec()).unwrap();
        let si = build_search_instance(&g, w, &[3]).unwrap();
        assert!(detailed_balance(&si).unwrap().is_none());
    }
}
