use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use definetti::compute::{compute, usage, SUBCOMMANDS};
use definetti::figure::{figure_table, FigureId, FigureSpec, Span};
use definetti::render::parse_rational;
use definetti::verify::{run_suite, Mutation, Suite, VerifyOptions};
use definetti::Error;
use definetti_core::TwoJ;

const USAGE_ERROR: u8 = 2;
const FAILURE: u8 = 1;

#[derive(Parser)]
#[command(name = "definetti", version, about = "de Finetti approximation errors: closed forms, oracles and figure data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one closed form, e.g. `compute sym-epsilon n=4 k=2 r=0 d=2`.
    Compute {
        /// One of su2-delta, sym-epsilon, sym-bound, heis-delta, heis-epsilon,
        /// coherent-bound, exact-radius, closed-form-sum.
        sub: String,
        /// Parameters as key=value.
        params: Vec<String>,
    },
    /// Write the CSV behind figure 1, 2 or 3 (1 - delta against r).
    Figure {
        id: FigureId,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        j1: Option<TwoJ>,
        #[arg(long)]
        j2: Option<TwoJ>,
        /// Projection of the fixed |j2 m2> state (default m2 = j2).
        #[arg(long, allow_hyphen_values = true)]
        m2: Option<TwoJ>,
        /// Total spins as lo..hi, inclusive (figures 1 and 2).
        #[arg(long = "j")]
        j_range: Option<Span<TwoJ>>,
        /// Radii as lo..hi, inclusive.
        #[arg(long = "r")]
        r_range: Option<Span<u64>>,
        /// Excitation numbers as lo..hi, inclusive (figure 3).
        #[arg(long = "delta")]
        delta_range: Option<Span<u64>>,
        /// Figure 3 representation parameter mu (integer, p/q or decimal).
        #[arg(long)]
        mu: Option<String>,
        /// Figure 3 representation parameter nu.
        #[arg(long)]
        nu: Option<String>,
        /// Figure 3: omit the SU(2) comparison columns.
        #[arg(long)]
        no_overlay: bool,
    },
    /// Run a verification suite: weights, cg, symmetric, heisenberg, mc or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for every floating-point oracle comparison.
        #[arg(long)]
        tol: Option<f64>,
        /// Run checks concurrently (output order is unchanged).
        #[arg(long)]
        parallel: bool,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, hide = true)]
        inject_mutation: Option<Mutation>,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn run_compute(sub: &str, params: &[String]) -> ExitCode {
    match compute(sub, params) {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match usage(sub) {
                Some(u) => eprintln!("usage: definetti compute {u}"),
                None => eprintln!("usage: definetti compute <{}> key=value...", SUBCOMMANDS.join("|")),
            }
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn run_figure(spec: FigureSpec, out: Option<PathBuf>) -> ExitCode {
    let table = match figure_table(&spec) {
        Ok(t) => t,
        Err(Error::Io(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(FAILURE);
        }
        Err(e) => return usage_error(e),
    };
    let csv = table.to_csv();
    let written = match &out {
        Some(path) => fs::write(path, csv.as_bytes()),
        None => std::io::stdout().lock().write_all(csv.as_bytes()),
    };
    match written {
        Ok(()) => {
            if let Some(path) = out {
                eprintln!("wrote {} rows x {} curves to {}", table.r.len(), table.columns.len(), path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: cannot write CSV: {e}");
            ExitCode::from(FAILURE)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Compute { sub, params } => run_compute(&sub, &params),
        Command::Figure {
            id,
            out,
            j1,
            j2,
            m2,
            j_range,
            r_range,
            delta_range,
            mu,
            nu,
            no_overlay,
        } => {
            let mut spec = FigureSpec::default_for(id);
            spec.j1 = j1.unwrap_or(spec.j1);
            spec.j2 = j2.unwrap_or(spec.j2);
            spec.m2 = m2;
            spec.j = j_range.unwrap_or(spec.j);
            spec.r = r_range.unwrap_or(spec.r);
            spec.excitation = delta_range.unwrap_or(spec.excitation);
            spec.overlay = !no_overlay;
            for (raw, slot) in [(mu, &mut spec.mu), (nu, &mut spec.nu)] {
                if let Some(raw) = raw {
                    match parse_rational(&raw) {
                        Some(v) => *slot = v,
                        None => return usage_error(format!("cannot parse {raw:?} as a number")),
                    }
                }
            }
            run_figure(spec, out)
        }
        Command::Verify {
            suite,
            seed,
            tol,
            parallel,
            samples,
            inject_mutation,
        } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            if tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
                return usage_error("--tol must be a positive number");
            }
            let mut opts = VerifyOptions { seed, tol, parallel, mc_samples: samples, ..VerifyOptions::default() };
            if let Some(m) = inject_mutation {
                eprintln!("note: running with injected mutation {m}");
                opts.formulas = m.formulas();
            }
            let checks = run_suite(suite, &opts, |c| println!("{c}"));
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{} checks, {} passed, {} failed", checks.len(), checks.len() - failed, failed);
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FAILURE)
            }
        }
    }
}
