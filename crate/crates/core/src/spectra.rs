//! Spectra of walk operators from their discriminants.
//!
//! For isometries `A` (`N × s`) and `B` (`N × t`) and `U = (2BB* − I)(2AA* − I)`,
//!
//! ```text
//! det(I − uU) = (1 − u)^{N−s−t} (1 + u)^{s−t} det((1 + u)² I_t − 4u·*B·A·*A·B)
//! ```
//!
//! so each discriminant eigenvalue `λ ∈ [0, 1]` contributes the pair
//! `e^{±2i·arccos√λ}`, the prefactor contributes `±1`, and when an exponent
//! is negative the matching number of forced `λ = 0` or `λ = 1` values
//! cancel against it.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{validation, Error, Result};
use crate::graph::{BipartiteGraph, EdgeWeighting, Multigraph, SearchInstance};
use crate::linalg::{eig_general, eig_hermitian, multiset_equal, ComplexMatrix, EigenMultiset, MatchReport, C64};
use crate::operators::{
    discriminant_ap, discriminant_aq, grover_discriminant, grover_matrix, positive_support,
    search_operators, sqw_operators, szegedy_isometries, szegedy_walk, AmplitudeAssignment,
    WalkOperator, OPERATOR_TOL,
};

/// Discriminant eigenvalues this close to 0 or 1 are snapped exactly.
pub const SNAP_TOL: f64 = 1e-7;

/// Default tolerance for formula-versus-direct comparisons.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Lifted from discriminant eigenvalues.
    Formula,
    /// Eigendecomposition of the full operator.
    Direct,
}

/// Sign of the `(1 − u)` exponent `N − s − t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `N ≥ s + t`: the prefactor supplies `N − s − t` eigenvalues 1.
    Surplus,
    /// `N < s + t` (trees, small marked sets): forced `λ = 1` values cancel.
    Deficit,
}

/// `λ ↦ e^{±2i·arccos√λ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedPair {
    pub lambda: f64,
    pub plus: C64,
    pub minus: C64,
}

impl LiftedPair {
    pub fn new(lambda: f64) -> Self {
        let lambda = lambda.clamp(0.0, 1.0);
        let theta = lambda.sqrt().clamp(0.0, 1.0).acos();
        Self {
            lambda,
            plus: C64::from_polar(1.0, 2.0 * theta),
            minus: C64::from_polar(1.0, -2.0 * theta),
        }
    }
}

/// Bookkeeping of a lift from discriminant eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftDetails {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    /// Discriminant eigenvalues after clamping and snapping, ascending.
    pub discriminant: Vec<f64>,
    /// `|N − s − t|`
    pub plus_one: usize,
    /// `|t − s|`
    pub minus_one: usize,
    pub pairs: Vec<LiftedPair>,
    /// Forced `λ = 0` values consumed when `t > s`.
    pub forced_zero: usize,
    /// Forced `λ = 1` values consumed when `N < s + t`.
    pub forced_one: usize,
    pub branch: Branch,
}

/// An eigenvalue multiset and how it was obtained.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub provenance: Provenance,
    pub values: EigenMultiset,
    pub lift: Option<LiftDetails>,
}

impl SpectrumReport {
    pub fn direct(values: EigenMultiset) -> Self {
        Self {
            provenance: Provenance::Direct,
            values,
            lift: None,
        }
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }
}

/// Formula and direct spectra of one walk, and whether they agree.
#[derive(Clone, Debug)]
pub struct WalkSpectrum {
    pub formula: SpectrumReport,
    pub direct: SpectrumReport,
    pub agreement: MatchReport,
}

impl WalkSpectrum {
    pub fn matches(&self) -> bool {
        self.agreement.equal
    }

    fn compare(formula: SpectrumReport, direct: SpectrumReport, tol: f64) -> Result<Self> {
        let agreement = multiset_equal(&formula.values, &direct.values, tol)?;
        Ok(Self {
            formula,
            direct,
            agreement,
        })
    }
}

/// `|N − (s+t)| + |t − s| + 2(min(t, N−s) − max(0, t−s))`, which must equal `N`.
pub fn lift_count(n: usize, s: usize, t: usize) -> usize {
    let pairs = t.min(n - s).saturating_sub(t.saturating_sub(s));
    n.abs_diff(s + t) + t.abs_diff(s) + 2 * pairs
}

/// Lifts `t` discriminant eigenvalues to the `N` eigenvalues of the walk.
pub fn lift_spectrum(disc: &[f64], n: usize, s: usize, t: usize) -> Result<SpectrumReport> {
    if disc.len() != t {
        return Err(Error::Dimension(format!(
            "{} discriminant eigenvalues for t = {t}",
            disc.len()
        )));
    }
    if s > n || t > n {
        return Err(Error::Dimension(format!("isometry widths {s}, {t} exceed N = {n}")));
    }
    let mut lam: Vec<f64> = disc
        .iter()
        .map(|&x| {
            let x = x.clamp(0.0, 1.0);
            if x <= SNAP_TOL {
                0.0
            } else if x >= 1.0 - SNAP_TOL {
                1.0
            } else {
                x
            }
        })
        .collect();
    lam.sort_by(f64::total_cmp);

    let forced_zero = t.saturating_sub(s);
    let forced_one = (s + t).saturating_sub(n);
    for (j, &x) in lam.iter().enumerate().take(forced_zero) {
        let raw = sorted_raw(disc)[j];
        if x != 0.0 {
            return Err(Error::Inconsistent(format!(
                "expected {forced_zero} zero eigenvalues, entry {} is {raw}",
                j + 1
            )));
        }
    }
    for (j, &x) in lam.iter().enumerate().skip(t - forced_one) {
        let raw = sorted_raw(disc)[j];
        if x != 1.0 {
            return Err(Error::Inconsistent(format!(
                "expected {forced_one} unit eigenvalues, entry {} is {raw}",
                j + 1
            )));
        }
    }

    let pairs: Vec<LiftedPair> = lam[forced_zero..t - forced_one]
        .iter()
        .map(|&x| LiftedPair::new(x))
        .collect();
    let plus_one = n.abs_diff(s + t);
    let minus_one = t.abs_diff(s);
    debug_assert_eq!(lift_count(n, s, t), n);

    let mut values = Vec::with_capacity(n);
    values.extend(std::iter::repeat_n(C64::new(1.0, 0.0), plus_one));
    values.extend(std::iter::repeat_n(C64::new(-1.0, 0.0), minus_one));
    for p in &pairs {
        values.push(p.plus);
        values.push(p.minus);
    }
    if values.len() != n {
        return Err(Error::Inconsistent(format!(
            "lift produced {} values for N = {n}",
            values.len()
        )));
    }
    Ok(SpectrumReport {
        provenance: Provenance::Formula,
        values: EigenMultiset::new(values),
        lift: Some(LiftDetails {
            n,
            s,
            t,
            discriminant: lam,
            plus_one,
            minus_one,
            pairs,
            forced_zero,
            forced_one,
            branch: if n >= s + t { Branch::Surplus } else { Branch::Deficit },
        }),
    })
}

fn sorted_raw(disc: &[f64]) -> Vec<f64> {
    let mut v = disc.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Eigenvalues of the full operator.
pub fn direct_spectrum(op: &WalkOperator) -> Result<SpectrumReport> {
    Ok(SpectrumReport::direct(eig_general(op.matrix())?))
}

/// Random `u` with `|u| ≤ 0.9`, which keeps it at least 0.1 away from `±1`.
pub fn sample_point<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..2.0 * PI))
}

fn relative_gap(lhs: C64, rhs: C64) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

/// Largest relative residuals of the determinant identity, using the
/// `t × t` discriminant and the `s × s` one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityResidual {
    pub t_side: f64,
    pub s_side: f64,
}

impl IdentityResidual {
    pub fn max(&self) -> f64 {
        self.t_side.max(self.s_side)
    }
}

/// Evaluates both sides of the determinant identity for `U = (2BB*−I)(2AA*−I)`
/// at `samples` random points.
pub fn key_identity_check<R: Rng + ?Sized>(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    samples: usize,
    rng: &mut R,
) -> Result<IdentityResidual> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "isometries have {} and {} rows",
            a.rows(),
            b.rows()
        )));
    }
    if !a.is_isometry(OPERATOR_TOL) || !b.is_isometry(OPERATOR_TOL) {
        return Err(validation("key identity needs isometries"));
    }
    let (n, s, t) = (a.rows(), a.cols(), b.cols());
    let u_mat = &b.reflection() * &a.reflection();
    let tba = b.conj_transpose().matmul(a)?;
    let tab = tba.conj_transpose();
    let disc_t = tba.matmul(&tab)?;
    let disc_s = tab.matmul(&tba)?;
    let e1 = n as i32 - (s + t) as i32;
    let e2 = s as i32 - t as i32;
    let mut res = IdentityResidual {
        t_side: 0.0,
        s_side: 0.0,
    };
    for _ in 0..samples {
        let u = sample_point(rng);
        let one = C64::new(1.0, 0.0);
        let lhs = ComplexMatrix::identity(n).sub(&u_mat.scale(u))?.determinant()?;
        let pre = (one - u).powi(e1);
        let shifted = |d: &ComplexMatrix| -> Result<C64> {
            let k = d.rows();
            ComplexMatrix::identity(k)
                .scale((one + u) * (one + u))
                .sub(&d.scale(4.0 * u))?
                .determinant()
        };
        let rhs_t = pre * (one + u).powi(e2) * shifted(&disc_t)?;
        let rhs_s = pre * (one + u).powi(-e2) * shifted(&disc_s)?;
        res.t_side = res.t_side.max(relative_gap(lhs, rhs_t));
        res.s_side = res.s_side.max(relative_gap(lhs, rhs_s));
    }
    Ok(res)
}

/// `det(λI − U) = (λ² − 1)^{ε−ν} det((λ² + 1)I − 2λT)` at random points;
/// returns the largest relative residual.
pub fn grover_charpoly_check<R: Rng + ?Sized>(
    g: &Multigraph,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let u = grover_matrix(g)?;
    let t = g.random_walk_matrix()?;
    let exp = g.edge_count() as i32 - g.vertex_count() as i32;
    let one = C64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let lambda = sample_point(rng);
        let lhs = ComplexMatrix::identity(u.dimension())
            .scale(lambda)
            .sub(u.matrix())?
            .determinant()?;
        let inner = ComplexMatrix::identity(g.vertex_count())
            .scale(lambda * lambda + one)
            .sub(&t.scale(2.0 * lambda))?
            .determinant()?;
        let rhs = (lambda * lambda - one).powi(exp) * inner;
        worst = worst.max(relative_gap(lhs, rhs));
    }
    Ok(worst)
}

/// Grover spectrum from `Spec(T)` (lifted through `λ_q = (1 + λ_T)/2`)
/// against the eigenvalues of `U`.
pub fn grover_spectrum(g: &Multigraph, tol: f64) -> Result<WalkSpectrum> {
    let d = grover_discriminant(g)?;
    let formula = lift_spectrum(&d.eigenvalues()?, d.n(), d.s(), d.t())?;
    let direct = direct_spectrum(&grover_matrix(g)?)?;
    WalkSpectrum::compare(formula, direct, tol)
}

/// Spectrum of the positive support of the Grover matrix of a `k`-regular
/// graph: `λ_A/2 ± i√(k − 1 − λ_A²/4)` for each adjacency eigenvalue, plus
/// `ε − ν` each of `1` and `−1`.
pub fn positive_support_spectrum(g: &Multigraph, tol: f64) -> Result<WalkSpectrum> {
    let k = g
        .regular_degree()
        .ok_or_else(|| validation("positive support formula needs a regular graph"))?;
    if k < 2 {
        return Err(validation("positive support formula needs degree at least 2"));
    }
    if g.loop_count() > 0 {
        return Err(validation("positive support formula needs a loop-free graph"));
    }
    if !g.is_connected() {
        return Err(validation("positive support formula needs a connected graph"));
    }
    let spec_a = eig_hermitian(&g.adjacency_matrix())?.values;
    let extra = g.edge_count() - g.vertex_count();
    let mut values = Vec::with_capacity(2 * g.edge_count());
    for &la in &spec_a {
        let half = C64::new(la / 2.0, 0.0);
        let root = C64::new(k as f64 - 1.0 - la * la / 4.0, 0.0).sqrt();
        let i_root = C64::new(0.0, 1.0) * root;
        values.push(half + i_root);
        values.push(half - i_root);
    }
    values.extend(std::iter::repeat_n(C64::new(1.0, 0.0), extra));
    values.extend(std::iter::repeat_n(C64::new(-1.0, 0.0), extra));
    let formula = SpectrumReport {
        provenance: Provenance::Formula,
        values: EigenMultiset::new(values),
        lift: None,
    };
    let support = positive_support(grover_matrix(g)?.matrix());
    let direct = SpectrumReport::direct(eig_general(&support)?);
    WalkSpectrum::compare(formula, direct, tol)
}

/// Szegedy spectrum from the discriminant of the smaller side.
pub fn szegedy_spectrum(bg: &BipartiteGraph, w: &EdgeWeighting, tol: f64) -> Result<WalkSpectrum> {
    let (k, l) = szegedy_isometries(bg, w)?;
    let d = if bg.m() <= bg.n() {
        discriminant_ap(&k, &l)?
    } else {
        discriminant_aq(&k, &l)?
    };
    let formula = lift_spectrum(&d.eigenvalues()?, d.n(), d.s(), d.t())?;
    let direct = direct_spectrum(&szegedy_walk(&k, &l)?)?;
    WalkSpectrum::compare(formula, direct, tol)
}

/// Staggered-walk spectrum from `Â`.
pub fn sqw_spectrum(h: &BipartiteGraph, amps: &AmplitudeAssignment, tol: f64) -> Result<WalkSpectrum> {
    let sqw = sqw_operators(h, amps)?;
    let d = &sqw.discriminant;
    let formula = lift_spectrum(&d.eigenvalues()?, d.n(), d.s(), d.t())?;
    let direct = direct_spectrum(&sqw.walk)?;
    WalkSpectrum::compare(formula, direct, tol)
}

/// Search-walk spectrum from `Â′_p` with `N = 2ε + m`, `s = t = n`.
pub fn search_spectrum(si: &SearchInstance, tol: f64) -> Result<WalkSpectrum> {
    let ops = search_operators(si)?;
    let d = &ops.discriminant;
    let formula = lift_spectrum(&d.eigenvalues()?, d.n(), d.s(), d.t())?;
    let direct = direct_spectrum(&ops.walk)?;
    WalkSpectrum::compare(formula, direct, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{build_search_instance, uniform_search_weighting};
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn expect(values: &[C64], report: &SpectrumReport, tol: f64) {
        let want = EigenMultiset::new(values.to_vec());
        let m = multiset_equal(&want, &report.values, tol).unwrap();
        assert!(m.equal, "{:?} vs {:?}", values, report.values.sorted());
    }

    fn cube_roots() -> [C64; 2] {
        let h = 3f64.sqrt() / 2.0;
        [c(-0.5, h), c(-0.5, -h)]
    }

    #[test]
    fn lift_k22() {
        let r = lift_spectrum(&[0.0, 1.0], 4, 2, 2).unwrap();
        expect(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)], &r, 1e-12);
        let lift = r.lift.unwrap();
        assert_eq!((lift.plus_one, lift.minus_one), (0, 0));
    }

    #[test]
    fn lift_k3_search() {
        let r = lift_spectrum(&[0.25, 0.25, 1.0], 7, 3, 3).unwrap();
        let [w, wb] = cube_roots();
        expect(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), w, w, wb, wb], &r, 1e-12);
        assert_eq!(r.lift.unwrap().plus_one, 1);
    }

    #[test]
    fn lift_one_by_one() {
        let r = lift_spectrum(&[1.0], 1, 1, 1).unwrap();
        expect(&[c(1.0, 0.0)], &r, 0.0);
        assert_eq!(r.lift.unwrap().branch, Branch::Deficit);
    }

    #[test]
    fn lift_rejects_missing_forced_values() {
        assert!(matches!(lift_spectrum(&[0.5], 1, 1, 1), Err(Error::Inconsistent(_))));
        assert!(matches!(lift_spectrum(&[0.5, 0.7], 4, 1, 2), Err(Error::Inconsistent(_))));
        assert!(lift_spectrum(&[0.5], 4, 1, 2).is_err());
    }

    #[test]
    fn key_identity_on_k22_and_identity() {
        let bg = corpus::k22();
        let (k, l) = szegedy_isometries(&bg, &EdgeWeighting::uniform(&bg)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(key_identity_check(&k, &l, 20, &mut rng).unwrap().max() <= 1e-9);
        let i = ComplexMatrix::identity(5);
        assert!(key_identity_check(&i, &i, 20, &mut rng).unwrap().max() <= 1e-12);
    }

    #[test]
    fn key_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = sample::random_isometry(&mut rng, 9, 4);
        let b = sample::random_isometry(&mut rng, 9, 3);
        assert!(key_identity_check(&a, &b, 20, &mut rng).unwrap().max() <= 1e-8);
        let bad = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]);
        assert!(key_identity_check(&bad, &bad, 1, &mut rng).is_err());
    }

    #[test]
    fn grover_charpoly_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in [corpus::complete(3), corpus::cycle(4), corpus::complete(4)] {
            assert!(grover_charpoly_check(&g, 20, &mut rng).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn grover_c4_and_k3() {
        let r = grover_spectrum(&corpus::cycle(4), MATCH_TOL).unwrap();
        assert!(r.matches());
        let (one, i) = (c(1.0, 0.0), c(0.0, 1.0));
        expect(&[one, one, -one, -one, i, i, -i, -i], &r.formula, 1e-12);
        let r = grover_spectrum(&corpus::complete(3), MATCH_TOL).unwrap();
        let [w, wb] = cube_roots();
        expect(&[one, one, w, w, wb, wb], &r.formula, 1e-12);
        assert!(r.matches());
    }

    #[test]
    fn grover_tree_branch() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let r = grover_spectrum(&g, MATCH_TOL).unwrap();
        assert!(r.matches());
        expect(&[c(1.0, 0.0), c(-1.0, 0.0)], &r.formula, 1e-12);
        assert_eq!(r.formula.lift.unwrap().branch, Branch::Deficit);
    }

    #[test]
    fn positive_support_k4() {
        let r = positive_support_spectrum(&corpus::complete(4), MATCH_TOL).unwrap();
        assert!(r.matches(), "{:?}", r.direct.values.sorted());
        let h = 7f64.sqrt() / 2.0;
        let (a, b) = (c(-0.5, h), c(-0.5, -h));
        let one = c(1.0, 0.0);
        expect(&[c(2.0, 0.0), one, a, a, a, b, b, b, one, one, -one, -one], &r.formula, 1e-12);
    }

    #[test]
    fn positive_support_cycles() {
        for n in [3, 4, 7] {
            assert!(positive_support_spectrum(&corpus::cycle(n), MATCH_TOL).unwrap().matches());
        }
        assert!(positive_support_spectrum(&corpus::path(3), MATCH_TOL).is_err());
    }

    #[test]
    fn szegedy_k22() {
        let bg = corpus::k22();
        let r = szegedy_spectrum(&bg, &EdgeWeighting::uniform(&bg), MATCH_TOL).unwrap();
        assert!(r.matches());
        let one = c(1.0, 0.0);
        expect(&[one, one, -one, -one], &r.formula, 1e-12);
        expect(&[one, one, -one, -one], &r.direct, 1e-9);
    }

    #[test]
    fn szegedy_star_tree_branch() {
        let bg = BipartiteGraph::new(corpus::star(3), &[0]).unwrap();
        let r = szegedy_spectrum(&bg, &EdgeWeighting::uniform(&bg), MATCH_TOL).unwrap();
        assert!(r.matches());
        let lift = r.formula.lift.unwrap();
        assert_eq!(lift.branch, Branch::Deficit);
        assert_eq!((lift.plus_one, lift.minus_one), (1, 2));
    }

    #[test]
    fn szegedy_c6() {
        let bg = BipartiteGraph::two_colour(corpus::cycle(6)).unwrap();
        let r = szegedy_spectrum(&bg, &EdgeWeighting::uniform(&bg), MATCH_TOL).unwrap();
        assert!(r.matches());
        assert_eq!(r.formula.lift.unwrap().plus_one, 0);
    }

    #[test]
    fn sqw_matches_szegedy_on_k22() {
        let bg = corpus::k22();
        let w = EdgeWeighting::uniform(&bg);
        let amps = AmplitudeAssignment::from_weighting(&bg, &w).unwrap();
        let sq = sqw_spectrum(&bg, &amps, MATCH_TOL).unwrap();
        let sz = szegedy_spectrum(&bg, &w, MATCH_TOL).unwrap();
        assert!(sq.matches());
        assert!(multiset_equal(&sq.formula.values, &sz.formula.values, 1e-12).unwrap().equal);
    }

    #[test]
    fn sqw_random_phases() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p3 = BipartiteGraph::new(corpus::path(3), &[1]).unwrap();
        let amps = sample::random_amplitudes(&mut rng, &p3);
        assert!(sqw_spectrum(&p3, &amps, MATCH_TOL).unwrap().matches());
        let h = sample::random_bipartite(&mut rng, 3, 4, 3);
        let amps = sample::random_amplitudes(&mut rng, &h);
        let r = sqw_spectrum(&h, &amps, 1e-7).unwrap();
        assert!(r.matches(), "{}", r.agreement.max_distance);
    }

    #[test]
    fn search_k3() {
        let g = corpus::complete(3);
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[2]).unwrap();
        let r = search_spectrum(&si, 1e-9).unwrap();
        assert!(r.matches());
        let [w, wb] = cube_roots();
        let one = c(1.0, 0.0);
        expect(&[one, one, one, w, w, wb, wb], &r.direct, 1e-9);
    }

    #[test]
    fn search_single_edge_tree_branch() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[1]).unwrap();
        let r = search_spectrum(&si, MATCH_TOL).unwrap();
        assert!(r.matches());
        assert_eq!(r.formula.lift.unwrap().branch, Branch::Deficit);
    }

    #[test]
    fn search_with_marked_pair() {
        let g = corpus::complete(3);
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[1, 2]).unwrap();
        assert!(!si.marked_pair_edges().is_empty());
        assert!(si.epsilon_prime() < 2 * si.epsilon() + si.m());
        assert!(search_spectrum(&si, MATCH_TOL).unwrap().matches());
    }

    fn triple() -> impl Strategy<Value = (usize, usize, usize)> {
        (1usize..20).prop_flat_map(|n| (Just(n), 0..=n, 0..=n))
    }

    proptest! {
        #[test]
        fn lift_count_identity((n, s, t) in triple()) {
            prop_assert_eq!(lift_count(n, s, t), n);
        }

        #[test]
        fn lift_is_unit_and_conjugate_closed(
            (n, s, t) in triple(),
            raw in proptest::collection::vec(0.0f64..=1.0, 20),
        ) {
            let forced_zero = t.saturating_sub(s);
            let forced_one = (s + t).saturating_sub(n);
            let mut disc: Vec<f64> = raw[..t].to_vec();
            disc.sort_by(f64::total_cmp);
            for x in disc.iter_mut().take(forced_zero) {
                *x = 0.0;
            }
            for x in disc.iter_mut().skip(t - forced_one) {
                *x = 1.0;
            }
            let r = lift_spectrum(&disc, n, s, t).unwrap();
            prop_assert_eq!(r.values.len(), n);
            for z in r.values.values() {
                prop_assert!((z.norm() - 1.0).abs() <= 1e-12);
                prop_assert!(r.values.count_near(z.conj()) >= 1);
            }
            for p in &r.lift.unwrap().pairs {
                prop_assert!((p.plus * p.minus - 1.0).norm() <= 1e-12);
            }
        }
    }
}
