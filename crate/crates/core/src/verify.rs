//! Randomised and corpus-wide verification suites.
//!
//! Every suite is deterministic for a given seed: trial `i` draws from its
//! own ChaCha stream.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::error::{validation, Error, Result};
use crate::graph::{build_search_instance, uniform_search_weighting, BipartiteGraph, EdgeWeighting, Multigraph};
use crate::linalg::{eig_hermitian, multiset_equal, ComplexMatrix, EigenMultiset};
use crate::operators::{
    discriminant_ap, grover_discriminant, search_operators, sqw_operators, szegedy_isometries,
    AmplitudeAssignment, Discriminant,
};
use crate::sample;
use crate::spectra::{
    grover_charpoly_check, grover_spectrum, key_identity_check, positive_support_spectrum,
    search_spectrum, sqw_spectrum, szegedy_spectrum, WalkSpectrum, MATCH_TOL,
};

/// Determinant evaluations per identity check.
pub const SAMPLES: usize = 20;
/// Relative residual allowed in determinant identities.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Slack outside `[0, 1]` allowed for discriminant eigenvalues.
pub const RANGE_TOL: f64 = 1e-9;
/// Multiset tolerance for the zero-padding identity.
pub const PADDING_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    KeyIdentity,
    DiscriminantRange,
    ZeroPadding,
    GroverCharpoly,
    FormulaVsDirect,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::KeyIdentity,
        Suite::DiscriminantRange,
        Suite::ZeroPadding,
        Suite::GroverCharpoly,
        Suite::FormulaVsDirect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::KeyIdentity => "key-identity",
            Suite::DiscriminantRange => "discriminant-range",
            Suite::ZeroPadding => "zero-padding",
            Suite::GroverCharpoly => "grover-charpoly",
            Suite::FormulaVsDirect => "formula-vs-direct",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::KeyIdentity | Suite::GroverCharpoly => IDENTITY_TOL,
            Suite::DiscriminantRange => RANGE_TOL,
            Suite::ZeroPadding => PADDING_TOL,
            Suite::FormulaVsDirect => MATCH_TOL,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "key-identity" => Ok(Suite::KeyIdentity),
            "discriminant-range" | "lemma32" => Ok(Suite::DiscriminantRange),
            "zero-padding" | "remark33" => Ok(Suite::ZeroPadding),
            "grover-charpoly" => Ok(Suite::GroverCharpoly),
            "formula-vs-direct" => Ok(Suite::FormulaVsDirect),
            other => Err(validation(format!("unknown suite `{other}`"))),
        }
    }
}

/// Result of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    /// Largest residual, violation or match distance observed.
    pub worst: f64,
    pub tolerance: f64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, tolerance: f64) -> Self {
        Self {
            suite,
            cases: 0,
            worst: 0.0,
            tolerance,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, label: impl FnOnce() -> String, value: f64) {
        self.cases += 1;
        self.worst = self.worst.max(value);
        if value.is_nan() || value > self.tolerance {
            self.failures.push(format!("{}: {value:.3e}", label()));
        }
    }
}

/// Independent stream for trial `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Signs of `N − (s+t)` and `s − t`: regime `r` has `N < s+t` when `r & 2`
/// is set and `s < t` when `r & 1` is set.
pub fn isometry_shape<R: Rng + ?Sized>(rng: &mut R, regime: usize, max_n: usize) -> (usize, usize, usize) {
    loop {
        let n = rng.gen_range(2..=max_n);
        let s = rng.gen_range(1..=n);
        let t = rng.gen_range(1..=n);
        if (n < s + t) == (regime & 2 != 0) && (s < t) == (regime & 1 != 0) {
            return (n, s, t);
        }
    }
}

/// Random isometry pair `(A, B)` of shapes `N × s`, `N × t` in the given regime.
pub fn isometry_pair<R: Rng + ?Sized>(rng: &mut R, regime: usize) -> (ComplexMatrix, ComplexMatrix) {
    let (n, s, t) = isometry_shape(rng, regime, 20);
    (sample::random_isometry(rng, n, s), sample::random_isometry(rng, n, t))
}

/// Runs a suite. `trials` counts random instances; corpus-driven suites
/// also cover the bundled graphs.
pub fn run_suite(suite: Suite, seed: u64, trials: usize, tol: Option<f64>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite, tol.unwrap_or(suite.default_tolerance()));
    match suite {
        Suite::KeyIdentity => key_identity(&mut report, seed, trials)?,
        Suite::DiscriminantRange => discriminant_range(&mut report, seed, trials)?,
        Suite::ZeroPadding => zero_padding(&mut report, seed, trials)?,
        Suite::GroverCharpoly => grover_charpoly(&mut report, seed, trials)?,
        Suite::FormulaVsDirect => formula_vs_direct(&mut report, seed, trials)?,
    }
    Ok(report)
}

fn key_identity(report: &mut SuiteReport, seed: u64, trials: usize) -> Result<()> {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let (a, b) = isometry_pair(&mut rng, i % 4);
        let r = key_identity_check(&a, &b, SAMPLES, &mut rng)?;
        report.record(
            || format!("trial {i} (N={}, s={}, t={})", a.rows(), a.cols(), b.cols()),
            r.max(),
        );
    }
    Ok(())
}

fn range_violation(d: &Discriminant) -> Result<f64> {
    Ok(d.eigenvalues()?
        .iter()
        .map(|&x| (-x).max(x - 1.0).max(0.0))
        .fold(0.0, f64::max))
}

fn discriminant_range(report: &mut SuiteReport, seed: u64, trials: usize) -> Result<()> {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let (a, b) = isometry_pair(&mut rng, i % 4);
        let generic = Discriminant::from_isometries(&a, &b)?;
        report.record(|| format!("trial {i} generic"), range_violation(&generic)?);

        let g = small_multigraph(&mut rng, 8, 5);
        report.record(|| format!("trial {i} grover"), range_violation(&grover_discriminant(&g)?)?);

        let bg = small_bipartite(&mut rng);
        let w = sample::random_weighting(&mut rng, &bg);
        let (k, l) = szegedy_isometries(&bg, &w)?;
        report.record(|| format!("trial {i} szegedy"), range_violation(&discriminant_ap(&k, &l)?)?);

        let amps = sample::random_amplitudes(&mut rng, &bg);
        let sqw = sqw_operators(&bg, &amps)?;
        report.record(|| format!("trial {i} staggered"), range_violation(&sqw.discriminant)?);

        let si = random_search_instance(&mut rng, &g)?;
        let ops = search_operators(&si)?;
        report.record(|| format!("trial {i} search"), range_violation(&ops.discriminant)?);
    }
    Ok(())
}

fn small_multigraph<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_extra: usize) -> Multigraph {
    let n = rng.gen_range(1..=max_n);
    // a lone vertex needs a loop to have positive degree
    let extra = rng.gen_range(usize::from(n == 1)..max_extra);
    sample::random_multigraph(rng, n, extra, true)
}

fn small_bipartite<R: Rng + ?Sized>(rng: &mut R) -> BipartiteGraph {
    let (m, n, extra) = (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(0..5));
    sample::random_bipartite(rng, m, n, extra)
}

fn random_search_instance<R: Rng + ?Sized>(rng: &mut R, g: &Multigraph) -> Result<crate::graph::SearchInstance> {
    let n = g.vertex_count();
    let m = rng.gen_range(1..=n);
    let mut marked: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = rng.gen_range(i..n);
        marked.swap(i, j);
    }
    marked.truncate(m);
    let w = sample::random_weighting(rng, &g.duplication());
    build_search_instance(g, w, &marked)
}

/// `Spec(T_AB·T_BA) = {0}^{s−t} ∪ Spec(T_BA·T_AB)` for `s ≥ t`; returns the
/// match distance.
pub fn zero_padding_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let (a, b) = if a.cols() >= b.cols() { (a, b) } else { (b, a) };
    let tba = b.conj_transpose().matmul(a)?;
    let tab = tba.conj_transpose();
    let big = eig_hermitian(&tab.matmul(&tba)?)?.values;
    let mut padded = vec![0.0; a.cols() - b.cols()];
    padded.extend(eig_hermitian(&tba.matmul(&tab)?)?.values);
    let m = multiset_equal(&EigenMultiset::from_real(&big), &EigenMultiset::from_real(&padded), f64::INFINITY)?;
    Ok(m.max_distance)
}

fn zero_padding(report: &mut SuiteReport, seed: u64, trials: usize) -> Result<()> {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let (a, b) = isometry_pair(&mut rng, i % 4);
        let d = zero_padding_distance(&a, &b)?;
        report.record(|| format!("trial {i} (N={}, s={}, t={})", a.rows(), a.cols(), b.cols()), d);
    }
    Ok(())
}

fn grover_charpoly(report: &mut SuiteReport, seed: u64, trials: usize) -> Result<()> {
    let mut rng = trial_rng(seed, u64::MAX);
    for (name, g) in corpus::small_connected() {
        let r = grover_charpoly_check(&g, SAMPLES, &mut rng)?;
        report.record(|| name.clone(), r);
    }
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let g = small_multigraph(&mut rng, 8, 6);
        let r = grover_charpoly_check(&g, SAMPLES, &mut rng)?;
        report.record(|| format!("trial {i} ({} vertices, {} edges)", g.vertex_count(), g.edge_count()), r);
    }
    Ok(())
}

/// Named walk instances whose formula spectrum is compared with the direct one.
pub fn corpus_spectra(tol: f64) -> Result<Vec<(String, WalkSpectrum)>> {
    let mut out = Vec::new();
    for (name, g) in corpus::small_connected() {
        out.push((format!("grover {name}"), grover_spectrum(&g, tol)?));
    }
    for (name, g) in corpus::regular() {
        out.push((format!("positive-support {name}"), positive_support_spectrum(&g, tol)?));
    }
    for (name, g) in corpus::small_connected() {
        if let Ok(bg) = BipartiteGraph::two_colour(g.clone()) {
            let w = EdgeWeighting::uniform(&bg);
            out.push((format!("szegedy {name}"), szegedy_spectrum(&bg, &w, tol)?));
            let swapped = BipartiteGraph::new(g.clone(), bg.y_vertices())?;
            let w = EdgeWeighting::uniform(&swapped);
            out.push((format!("szegedy {name} (sides swapped)"), szegedy_spectrum(&swapped, &w, tol)?));
            let amps = AmplitudeAssignment::from_weighting(&bg, &EdgeWeighting::uniform(&bg))?;
            out.push((format!("staggered {name}"), sqw_spectrum(&bg, &amps, tol)?));
        }
    }
    for (name, g) in corpus::small_connected() {
        let n = g.vertex_count();
        let mut sets = vec![vec![0], vec![n - 1]];
        if n >= 3 {
            sets.push(vec![0, 1]);
        }
        for marked in sets {
            let si = build_search_instance(&g, uniform_search_weighting(&g), &marked)?;
            out.push((format!("search {name} M={marked:?}"), search_spectrum(&si, tol)?));
        }
    }
    Ok(out)
}

fn formula_vs_direct(report: &mut SuiteReport, seed: u64, trials: usize) -> Result<()> {
    let tol = report.tolerance;
    for (name, s) in corpus_spectra(tol)? {
        report.record(|| name.clone(), s.agreement.max_distance);
    }
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let bg = small_bipartite(&mut rng);
        let w = sample::random_weighting(&mut rng, &bg);
        let s = szegedy_spectrum(&bg, &w, tol)?;
        report.record(|| format!("trial {i} szegedy"), s.agreement.max_distance);
        let amps = sample::random_amplitudes(&mut rng, &bg);
        let s = sqw_spectrum(&bg, &amps, tol)?;
        report.record(|| format!("trial {i} staggered"), s.agreement.max_distance);
        let g = small_multigraph(&mut rng, 7, 5);
        let s = grover_spectrum(&g, tol)?;
        report.record(|| format!("trial {i} grover"), s.agreement.max_distance);
        let si = random_search_instance(&mut rng, &g)?;
        let s = search_spectrum(&si, tol)?;
        report.record(|| format!("trial {i} search"), s.agreement.max_distance);
    }
    Ok(())
}
