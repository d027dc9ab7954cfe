//! Search dynamics of the marked-vertex walk: initial state, evolution,
//! the running-average statistic `F(T)` and the quantum hitting time.

use crate::error::{Error, Result};
use crate::graph::SearchInstance;
use crate::linalg::{eig_general, ComplexMatrix, C64};
use crate::operators::{search_operators, szegedy_isometries, szegedy_walk, WalkOperator};

/// Norm drift tolerated per evolution step.
pub const NORM_TOL: f64 = 1e-9;

/// Amplitudes over an edge space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    norm: f64,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Self { amplitudes, norm }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// `‖self − other‖²`
    pub fn distance_sq(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum()
    }

    fn step(&self, w: &ComplexMatrix) -> Result<Self> {
        let next = Self::new(w.mul_vec(&self.amplitudes)?);
        if (next.norm - self.norm).abs() > NORM_TOL {
            return Err(Error::Inconsistent(format!(
                "norm drifted from {} to {}",
                self.norm, next.norm
            )));
        }
        Ok(next)
    }
}

/// `ψ(0) = n^{-1/2} Σ_{e ∈ E(G₂)} √p(e)|e⟩` on `E_M`, zero on matching edges.
pub fn initial_state(si: &SearchInstance) -> Result<StateVector> {
    let n = si.n() as f64;
    let p = si.weighting().p();
    let amps = si
        .edges()
        .iter()
        .map(|e| match e.duplication_index {
            Some(k) => C64::new((p[k] / n).sqrt(), 0.0),
            None => C64::new(0.0, 0.0),
        })
        .collect();
    let psi = StateVector::new(amps);
    if (psi.norm - 1.0).abs() > 1e-12 {
        return Err(Error::Inconsistent(format!("initial state has norm {}", psi.norm)));
    }
    Ok(psi)
}

/// `W^steps·ψ`.
pub fn evolve(w: &WalkOperator, psi: &StateVector, steps: usize) -> Result<StateVector> {
    check_dim(w, psi)?;
    let mut cur = psi.clone();
    for _ in 0..steps {
        cur = cur.step(w.matrix())?;
    }
    Ok(cur)
}

fn check_dim(w: &WalkOperator, psi: &StateVector) -> Result<()> {
    if w.dimension() != psi.len() {
        return Err(Error::Dimension(format!(
            "operator of size {} applied to a state of length {}",
            w.dimension(),
            psi.len()
        )));
    }
    Ok(())
}

/// `F(0), …, F(t_max)` where `F(T) = (T+1)⁻¹ Σ_{t≤T} ‖ψ(t) − ψ(0)‖²`.
pub fn f_trajectory(w: &WalkOperator, psi0: &StateVector, t_max: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(t_max + 1);
    run_f(w, psi0, |t, f| {
        out.push(f);
        t >= t_max
    })?;
    Ok(out)
}

/// `F(T)`.
pub fn f_statistic(w: &WalkOperator, psi0: &StateVector, t: usize) -> Result<f64> {
    Ok(*f_trajectory(w, psi0, t)?.last().expect("trajectory is nonempty"))
}

// Feeds (T, F(T)) to `stop` for T = 0, 1, … until it returns true.
fn run_f(
    w: &WalkOperator,
    psi0: &StateVector,
    mut stop: impl FnMut(usize, f64) -> bool,
) -> Result<()> {
    check_dim(w, psi0)?;
    let mut cur = psi0.clone();
    let mut sum = 0.0;
    let mut t = 0;
    loop {
        sum += cur.distance_sq(psi0);
        if stop(t, sum / (t + 1) as f64) {
            return Ok(());
        }
        cur = cur.step(w.matrix())?;
        t += 1;
    }
}

/// Outcome of a hitting-time search.
#[derive(Clone, Debug)]
pub struct HittingReport {
    /// Smallest `T` with `F(T) ≥ 1 − m/n`, if reached within the cap.
    pub hitting_time: Option<usize>,
    /// `F(0), …` up to the hitting time or the cap.
    pub f_values: Vec<f64>,
    pub threshold: f64,
    pub cap: usize,
    /// `1 − ρ(P_M)`.
    pub spectral_gap: f64,
    /// Whether `p_{uv′} = p_{v′u}` for all `u, v`.
    pub doubly_stochastic: bool,
    pub warnings: Vec<String>,
}

/// Default step cap `10·n²`.
pub fn default_cap(n: usize) -> usize {
    10 * n * n
}

/// Largest `|p_{uv′} − p_{v′u}|` of the unmodified chain.
pub fn doubly_stochastic_defect(si: &SearchInstance) -> Result<f64> {
    let p = search_operators(si)?.p;
    let n = si.n();
    let mut worst: f64 = 0.0;
    for u in 0..n {
        for v in 0..n {
            worst = worst.max((p[(u, n + v)] - p[(n + v, u)]).norm());
        }
    }
    Ok(worst)
}

/// `1 − ρ(P_M)`; 1 when every vertex is marked.
pub fn spectral_gap(p_m: &ComplexMatrix) -> Result<f64> {
    if p_m.rows() == 0 {
        return Ok(1.0);
    }
    let rho = eig_general(p_m)?
        .values()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    Ok(1.0 - rho)
}

/// Runs `W′` from `ψ(0)` until `F(T) ≥ 1 − m/n` or `cap` steps.
pub fn quantum_hitting_time(si: &SearchInstance, cap: usize) -> Result<HittingReport> {
    let ops = search_operators(si)?;
    let psi0 = initial_state(si)?;
    let threshold = 1.0 - si.m() as f64 / si.n() as f64;
    let mut f_values = Vec::new();
    let mut hitting_time = None;
    run_f(&ops.walk, &psi0, |t, f| {
        f_values.push(f);
        if f >= threshold {
            hitting_time = Some(t);
        }
        hitting_time.is_some() || t >= cap
    })?;
    let defect = doubly_stochastic_defect(si)?;
    let doubly_stochastic = defect <= 1e-12;
    let mut warnings = Vec::new();
    if !doubly_stochastic {
        warnings.push(format!(
            "chain is not symmetric (max |p_uv' - p_v'u| = {defect:.3e}); hitting time is diagnostic only"
        ));
    }
    if hitting_time.is_none() {
        warnings.push(format!("threshold {threshold} not reached within {cap} steps"));
    }
    Ok(HittingReport {
        hitting_time,
        f_values,
        threshold,
        cap,
        spectral_gap: spectral_gap(&ops.p_m)?,
        doubly_stochastic,
        warnings,
    })
}

/// Szegedy walk of the duplication with the unmodified weighting, and
/// `ψ(0)` on `E(G₂)`.
pub fn unmodified_walk(si: &SearchInstance) -> Result<(WalkOperator, StateVector)> {
    let (k, l) = szegedy_isometries(si.duplication(), si.weighting())?;
    let w = szegedy_walk(&k, &l)?;
    let psi = initial_state(si)?;
    let dup_len = si.duplication().edge_count();
    Ok((w, StateVector::new(psi.amplitudes()[..dup_len].to_vec())))
}

/// Mean classical hitting time of `M` from a uniform start: solves
/// `(I − P_M)h = 1` and averages over all `n` vertices (zero on `M`).
pub fn classical_hitting_time(si: &SearchInstance) -> Result<f64> {
    let p_m = search_operators(si)?.p_m;
    let k = p_m.rows();
    if k == 0 {
        return Ok(0.0);
    }
    let system = ComplexMatrix::identity(k).sub(&p_m)?;
    let h = system.solve(&vec![C64::new(1.0, 0.0); k])?;
    Ok(h.iter().map(|z| z.re).sum::<f64>() / si.n() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{build_search_instance, uniform_search_weighting, Multigraph};

    fn k3_instance() -> SearchInstance {
        let g = corpus::complete(3);
        build_search_instance(&g, uniform_search_weighting(&g), &[2]).unwrap()
    }

    #[test]
    fn k3_initial_state() {
        let psi = initial_state(&k3_instance()).unwrap();
        let a = (1.0f64 / 6.0).sqrt();
        for z in &psi.amplitudes()[..6] {
            assert!((z.re - a).abs() < 1e-15);
        }
        assert_eq!(psi.amplitudes()[6], C64::new(0.0, 0.0));
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_edge_initial_state() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[1]).unwrap();
        let psi = initial_state(&si).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let re: Vec<f64> = psi.amplitudes().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![h, h, 0.0]);
    }

    #[test]
    fn evolution_preserves_norm() {
        let si = k3_instance();
        let w = search_operators(&si).unwrap().walk;
        let psi = initial_state(&si).unwrap();
        assert_eq!(evolve(&w, &psi, 0).unwrap(), psi);
        assert!((evolve(&w, &psi, 3).unwrap().norm() - 1.0).abs() < 1e-9);
        assert!(evolve(&w, &StateVector::new(vec![C64::new(1.0, 0.0)]), 1).is_err());
    }

    #[test]
    fn f_bounds() {
        let si = k3_instance();
        let w = search_operators(&si).unwrap().walk;
        let psi = initial_state(&si).unwrap();
        assert_eq!(f_statistic(&w, &psi, 0).unwrap(), 0.0);
        for f in f_trajectory(&w, &psi, 50).unwrap() {
            assert!((0.0..=4.0).contains(&f));
        }
    }

    #[test]
    fn unmodified_walk_fixes_initial_state_on_symmetric_chain() {
        let si = k3_instance();
        let (w, psi) = unmodified_walk(&si).unwrap();
        assert!(evolve(&w, &psi, 1).unwrap().distance_sq(&psi) < 1e-18);
    }

    #[test]
    fn all_marked_hits_immediately() {
        let g = corpus::complete(3);
        let si = build_search_instance(&g, uniform_search_weighting(&g), &[0, 1, 2]).unwrap();
        let r = quantum_hitting_time(&si, 10).unwrap();
        assert_eq!(r.hitting_time, Some(0));
        assert_eq!(r.threshold, 0.0);
    }

    #[test]
    fn k3_hitting_time() {
        let r = quantum_hitting_time(&k3_instance(), default_cap(3)).unwrap();
        let t = r.hitting_time.expect("hit within cap");
        assert!(r.f_values[t] >= 2.0 / 3.0);
        assert!(r.f_values[..t].iter().all(|&f| f < 2.0 / 3.0));
        assert!(r.doubly_stochastic);
        assert!((r.spectral_gap - 0.5).abs() < 1e-12);
        eprintln!("K3 hitting time {t}, F = {:?}", r.f_values);
    }

    #[test]
    fn classical_hitting_on_k3() {
        // from either unmarked vertex: h = 1 + h/2, so h = 2; mean over 3 vertices
        let h = classical_hitting_time(&k3_instance()).unwrap();
        assert!((h - 4.0 / 3.0).abs() < 1e-12);
    }
}
