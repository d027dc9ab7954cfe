use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use qwalk::operators::{detailed_balance, AmplitudeAssignment};
use qwalk::search::{classical_hitting_time, default_cap, f_trajectory, initial_state, quantum_hitting_time};
use qwalk::spectra::{grover_spectrum, positive_support_spectrum, search_spectrum, sqw_spectrum, szegedy_spectrum};
use qwalk::verify::{run_suite, Suite};
use qwalk::{
    build_search_instance, parse, uniform_search_weighting, BipartiteGraph, EdgeWeighting, Multigraph,
};
use serde::Serialize;

use crate::report::{Num, Spectrum};

/// Pretty JSON and whether every check in it passed.
pub struct Output {
    pub json: String,
    pub passed: bool,
}

impl Output {
    fn new(report: &impl Serialize, passed: bool) -> Result<Self> {
        Ok(Self {
            json: serde_json::to_string_pretty(report)?,
            passed,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    parse::parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_bipartite(path: &Path) -> Result<BipartiteGraph> {
    parse::parse_bipartite(&read(path)?).with_context(|| format!("in {}", path.display()))
}

#[derive(Serialize)]
struct GraphInfo {
    vertices: usize,
    edges: usize,
    loops: usize,
    connected: bool,
    tree: bool,
    regular_degree: Option<usize>,
}

impl GraphInfo {
    fn new(g: &Multigraph) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            loops: g.loop_count(),
            connected: g.is_connected(),
            tree: g.is_tree(),
            regular_degree: g.regular_degree(),
        }
    }
}

#[derive(Serialize)]
struct BipartiteInfo {
    x: Vec<usize>,
    y: Vec<usize>,
    edges: usize,
    tree: bool,
}

impl BipartiteInfo {
    fn new(bg: &BipartiteGraph) -> Self {
        Self {
            x: bg.x_vertices().to_vec(),
            y: bg.y_vertices().to_vec(),
            edges: bg.edge_count(),
            tree: bg.graph().is_tree(),
        }
    }
}

#[derive(Serialize)]
struct GroverReport {
    command: &'static str,
    graph: GraphInfo,
    spectrum: Spectrum,
    #[serde(skip_serializing_if = "Option::is_none")]
    positive_support: Option<Spectrum>,
}

pub fn grover(path: &Path, support: bool, tol: f64) -> Result<Output> {
    let g = load_graph(path)?;
    let ws = grover_spectrum(&g, tol)?;
    let ps = if support {
        Some(positive_support_spectrum(&g, tol)?)
    } else {
        None
    };
    let passed = ws.matches() && ps.as_ref().is_none_or(|p| p.matches());
    let report = GroverReport {
        command: "grover",
        graph: GraphInfo::new(&g),
        spectrum: Spectrum::new(&ws, "grover"),
        positive_support: ps.as_ref().map(|p| Spectrum::new(p, "adjacency")),
    };
    Output::new(&report, passed)
}

#[derive(Serialize)]
struct BipartiteReport {
    command: &'static str,
    graph: BipartiteInfo,
    weighting: &'static str,
    spectrum: Spectrum,
}

pub fn szegedy(path: &Path, weights: Option<&Path>, tol: f64) -> Result<Output> {
    let bg = load_bipartite(path)?;
    let (w, mode) = match weights {
        Some(p) => (
            parse::parse_weighting(&read(p)?, &bg).with_context(|| format!("in {}", p.display()))?,
            "file",
        ),
        None => (EdgeWeighting::uniform(&bg), "uniform"),
    };
    let ws = szegedy_spectrum(&bg, &w, tol)?;
    let label = if bg.m() <= bg.n() { "A_p" } else { "A_q" };
    let report = BipartiteReport {
        command: "szegedy",
        graph: BipartiteInfo::new(&bg),
        weighting: mode,
        spectrum: Spectrum::new(&ws, label),
    };
    Output::new(&report, ws.matches())
}

pub fn sqw(path: &Path, amplitudes: Option<&Path>, tol: f64) -> Result<Output> {
    let h = load_bipartite(path)?;
    let (amps, mode) = match amplitudes {
        Some(p) => (
            parse::parse_amplitudes(&read(p)?, &h).with_context(|| format!("in {}", p.display()))?,
            "file",
        ),
        None => (
            AmplitudeAssignment::from_weighting(&h, &EdgeWeighting::uniform(&h))?,
            "uniform",
        ),
    };
    let ws = sqw_spectrum(&h, &amps, tol)?;
    let report = BipartiteReport {
        command: "sqw",
        graph: BipartiteInfo::new(&h),
        weighting: mode,
        spectrum: Spectrum::new(&ws, "A_hat"),
    };
    Output::new(&report, ws.matches())
}

#[derive(Serialize)]
struct InstanceInfo {
    n: usize,
    m: usize,
    epsilon: usize,
    edge_space: usize,
    r: usize,
    s: usize,
    epsilon_prime: usize,
    marked_pair_edges: Vec<usize>,
}

#[derive(Serialize)]
struct Balance {
    holds: bool,
    mirrored: bool,
    balance_residual: Num,
    similarity_residual: Num,
    pi: Vec<Num>,
}

#[derive(Serialize)]
struct Hitting {
    hitting_time: Option<usize>,
    f_at_hitting_time: Option<Num>,
    threshold: Num,
    cap: usize,
    spectral_gap: Num,
    doubly_stochastic: bool,
    classical_hitting_time: Num,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct SearchReport {
    command: &'static str,
    graph: GraphInfo,
    marked: Vec<usize>,
    weighting: &'static str,
    instance: InstanceInfo,
    spectrum: Spectrum,
    detailed_balance: Option<Balance>,
    hitting: Hitting,
}

pub fn search(
    path: &Path,
    marked: &[usize],
    weights: Option<&Path>,
    cap: Option<usize>,
    trajectory: Option<&Path>,
    tol: f64,
) -> Result<Output> {
    let g = load_graph(path)?;
    let (w, mode) = match weights {
        Some(p) => (
            parse::parse_weighting(&read(p)?, &g.duplication())
                .with_context(|| format!("in {}", p.display()))?,
            "file",
        ),
        None => (uniform_search_weighting(&g), "uniform"),
    };
    let si = build_search_instance(&g, w, marked)?;
    let ws = search_spectrum(&si, tol)?;
    let cap = cap.unwrap_or_else(|| default_cap(si.n()));
    let hr = quantum_hitting_time(&si, cap)?;
    if let Some(out) = trajectory {
        let ops = qwalk::operators::search_operators(&si)?;
        let f = f_trajectory(&ops.walk, &initial_state(&si)?, cap)?;
        let mut csv = String::from("T,F\n");
        for (t, x) in f.iter().enumerate() {
            csv.push_str(&format!("{t},{}\n", crate::report::round12(*x)));
        }
        fs::write(out, csv).with_context(|| format!("cannot write {}", out.display()))?;
    }
    let balance = detailed_balance(&si)?.map(|c| Balance {
        holds: true,
        mirrored: c.mirrored,
        balance_residual: Num(c.balance_residual),
        similarity_residual: Num(c.similarity_residual),
        pi: c.pi.iter().map(|&x| Num(x)).collect(),
    });
    let report = SearchReport {
        command: "search",
        graph: GraphInfo::new(&g),
        marked: si.marked().to_vec(),
        weighting: mode,
        instance: InstanceInfo {
            n: si.n(),
            m: si.m(),
            epsilon: si.epsilon(),
            edge_space: si.edges().len(),
            r: si.r(),
            s: si.s(),
            epsilon_prime: si.epsilon_prime(),
            marked_pair_edges: si.marked_pair_edges(),
        },
        spectrum: Spectrum::new(&ws, "A'_p"),
        detailed_balance: balance,
        hitting: Hitting {
            hitting_time: hr.hitting_time,
            f_at_hitting_time: hr.hitting_time.map(|t| Num(hr.f_values[t])),
            threshold: Num(hr.threshold),
            cap: hr.cap,
            spectral_gap: Num(hr.spectral_gap),
            doubly_stochastic: hr.doubly_stochastic,
            classical_hitting_time: Num(classical_hitting_time(&si)?),
            warnings: hr.warnings,
        },
    };
    Output::new(&report, ws.matches())
}

#[derive(Serialize)]
struct VerifyReport {
    suite: &'static str,
    seed: u64,
    trials: usize,
    cases: usize,
    worst: Num,
    tolerance: Num,
    passed: bool,
    failures: Vec<String>,
}

/// `tol` overrides the suite tolerance only for the spectrum-matching suite.
pub fn verify(suite: Suite, seed: u64, trials: usize, tol: Option<f64>) -> Result<Output> {
    let tol = tol.filter(|_| suite == Suite::FormulaVsDirect);
    let r = run_suite(suite, seed, trials, tol)?;
    let report = VerifyReport {
        suite: suite.name(),
        seed,
        trials,
        cases: r.cases,
        worst: Num(r.worst),
        tolerance: Num(r.tolerance),
        passed: r.passed(),
        failures: r.failures.clone(),
    };
    Output::new(&report, r.passed())
}
