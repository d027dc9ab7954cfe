//! `qwalk`: spectra of Grover, Szegedy, staggered and search walks, and the
//! numerical verification suites.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qwalk::verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Quantum walk spectra and search simulations")]
struct Cli {
    /// Tolerance for matching formula and direct spectra.
    #[arg(long, global = true, env = "QWALK_TOL", value_parser = positive_f64)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grover walk of a graph.
    Grover {
        graph: PathBuf,
        /// Also report the positive support of the Grover matrix (regular graphs only).
        #[arg(long)]
        support: bool,
    },
    /// Szegedy walk of a weighted bipartite graph.
    Szegedy {
        graph: PathBuf,
        /// Weighting file with one `p q` line per edge; uniform when omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Staggered walk on the line graph of a bipartite root graph.
    Sqw {
        root: PathBuf,
        /// Amplitude file with one `a b` or `a_re a_im b_re b_im` line per edge;
        /// uniform real amplitudes when omitted.
        #[arg(long)]
        amplitudes: Option<PathBuf>,
    },
    /// Modified search walk with a set of marked vertices.
    Search(SearchArgs),
    /// Run a verification suite.
    Verify {
        /// key-identity, discriminant-range (lemma32), zero-padding (remark33),
        /// grover-charpoly or formula-vs-direct.
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    graph: PathBuf,
    /// Comma-separated marked vertices.
    #[arg(long, value_delimiter = ',')]
    marked: Vec<usize>,
    /// Weighting of the duplication graph; `p = q = 1/deg` when omitted.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Maximum number of steps; defaults to 10n².
    #[arg(long)]
    hitting_cap: Option<usize>,
    /// Write `T,F` for every step up to the cap as CSV.
    #[arg(long)]
    trajectory: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: qwalk::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli.tol.unwrap_or(qwalk::spectra::MATCH_TOL);
    let outcome = match cli.command {
        Command::Grover { graph, support } => commands::grover(&graph, support, tol),
        Command::Szegedy { graph, weights } => commands::szegedy(&graph, weights.as_deref(), tol),
        Command::Sqw { root, amplitudes } => commands::sqw(&root, amplitudes.as_deref(), tol),
        Command::Search(a) => commands::search(
            &a.graph,
            &a.marked,
            a.weights.as_deref(),
            a.hitting_cap,
            a.trajectory.as_deref(),
            tol,
        ),
        Command::Verify { suite, seed, trials } => commands::verify(suite, seed, trials, cli.tol),
    };
    match outcome {
        Ok(output) => {
            // a closed pipe (`qwalk … | head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", output.json);
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
