//! Command-line experiment runner.
//!
//! One subcommand per experiment; every run emits a JSON report (stdout or
//! `--out`) and optionally a CSV of per-case rows. Exit codes: 0 pass,
//! 1 fail, 2 usage error, 3 inconclusive (budget exhausted).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jumpcode::experiments::{
    BoundParams, CertifyParams, CorruptedLimitParams, DecayMixingParams, ExperimentSpec,
    FiveBitFailureParams, InvarianceParams, SearchParams, SweepErrorsParams, TrajectoriesParams,
};

#[derive(Parser)]
#[command(
    name = "jumpcode",
    version,
    about = "Experiments on qubit codes under spontaneous-emission dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write per-case rows as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Code-space invariance under no-emission decay.
    Invariance(InvarianceArgs),
    /// Full correction cycles over the single-error alphabet.
    SweepErrors(SweepArgs),
    /// Exactness of the decay-mixing identities.
    DecayMixing(DecayMixingArgs),
    /// Residual error of the five-qubit code under pure decay.
    FiveBitFailure(FailureArgs),
    /// Long-time corrupted-state limit of the five-qubit pipeline.
    Eq6Limit(LimitArgs),
    /// Seeded trajectory ensembles with post-correction fidelities.
    Trajectories(TrajectoriesArgs),
    /// Condition checks, dimensions, and table structure for both codes.
    Certify,
    /// Sphere-packing bound scan.
    Bound(BoundArgs),
    /// Search for equal-excitation coset codes.
    Search(SearchArgs),
}

#[derive(Args)]
struct InvarianceArgs {
    /// Decay durations; repeat the flag for a grid.
    #[arg(long = "gamma-t")]
    gamma_t: Vec<f64>,
    /// Random logical states per grid point.
    #[arg(long, default_value_t = 50)]
    states: usize,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Decay before the error; repeatable.
    #[arg(long = "gamma-t-before")]
    gamma_t_before: Vec<f64>,
    /// Decay after the error; repeatable.
    #[arg(long = "gamma-t-after")]
    gamma_t_after: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    states: usize,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct DecayMixingArgs {
    #[arg(long = "gamma-t")]
    gamma_t: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    states: usize,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct FailureArgs {
    #[arg(long = "gamma-t")]
    gamma_t: Vec<f64>,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long = "gamma-t", default_value_t = 20.0)]
    gamma_t: f64,
    #[arg(long)]
    alpha_re: Option<f64>,
    #[arg(long)]
    alpha_im: Option<f64>,
    #[arg(long)]
    beta_re: Option<f64>,
    #[arg(long)]
    beta_im: Option<f64>,
}

#[derive(Args)]
struct TrajectoriesArgs {
    /// Total decay duration per trajectory.
    #[arg(long = "gamma-t", default_value_t = 0.4)]
    gamma_t: f64,
    /// Trajectories required in the one-jump and two-jump buckets.
    #[arg(long, default_value_t = 1000)]
    per_bucket: usize,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long)]
    seed: u64,
    /// Write one JSON record per trajectory here.
    #[arg(long)]
    jsonl: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// Logical qubits.
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Correctable errors.
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long = "n-max", default_value_t = 10)]
    n_max: u32,
}

#[derive(Args)]
struct SearchArgs {
    /// Register width to search.
    #[arg(long)]
    n: usize,
    /// 1 = character signs only, 2 = quadratic sign forms.
    #[arg(long, default_value_t = 2)]
    sign_degree: u8,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 600)]
    budget: u64,
    /// Cap on subspaces scanned this run (mainly for testing resume).
    #[arg(long)]
    budget_subspaces: Option<u64>,
    /// Progress file for interruption and resume.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

fn spec_from_command(command: Command) -> ExperimentSpec {
    match command {
        Command::Invariance(a) => {
            let mut p = InvarianceParams {
                gamma_ts: a.gamma_t,
                n_states: a.states,
                tolerance: a.tolerance,
                seed: a.seed,
            };
            if p.gamma_ts.is_empty() {
                p.gamma_ts = vec![0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
            }
            ExperimentSpec::Invariance(p)
        }
        Command::SweepErrors(a) => {
            let or_zero = |v: Vec<f64>| if v.is_empty() { vec![0.0] } else { v };
            ExperimentSpec::SweepErrors(SweepErrorsParams {
                n_states: a.states,
                gamma_t_before: or_zero(a.gamma_t_before),
                gamma_t_after: or_zero(a.gamma_t_after),
                tolerance: a.tolerance,
                seed: a.seed,
            })
        }
        Command::DecayMixing(a) => {
            let mut p = DecayMixingParams {
                gamma_ts: a.gamma_t,
                n_states: a.states,
                tolerance: a.tolerance,
                seed: a.seed,
            };
            if p.gamma_ts.is_empty() {
                p.gamma_ts = vec![0.1, 0.5, 1.0, 2.0];
            }
            ExperimentSpec::DecayMixing(p)
        }
        Command::FiveBitFailure(a) => {
            let mut p = FiveBitFailureParams { gamma_ts: a.gamma_t };
            if p.gamma_ts.is_empty() {
                p.gamma_ts = (0..9).map(|k| 1e-3 * 10f64.powf(k as f64 / 4.0)).collect();
            }
            ExperimentSpec::FiveBitFailure(p)
        }
        Command::Eq6Limit(a) => ExperimentSpec::Eq6Limit(CorruptedLimitParams {
            gamma_t: a.gamma_t,
            alpha_re: a.alpha_re,
            alpha_im: a.alpha_im,
            beta_re: a.beta_re,
            beta_im: a.beta_im,
        }),
        Command::Trajectories(a) => ExperimentSpec::Trajectories(TrajectoriesParams {
            gamma_t_total: a.gamma_t,
            per_bucket: a.per_bucket,
            tolerance: a.tolerance,
            seed: a.seed,
            jsonl_out: a.jsonl,
        }),
        Command::Certify => ExperimentSpec::Certify(CertifyParams {}),
        Command::Bound(a) => {
            ExperimentSpec::Bound(BoundParams { l: a.l, t: a.t, n_max: a.n_max })
        }
        Command::Search(a) => ExperimentSpec::Search(SearchParams {
            n: a.n,
            sign_degree: a.sign_degree,
            budget_subspaces: a.budget_subspaces,
            budget_millis: a.budget * 1000,
            checkpoint: a.checkpoint,
        }),
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let spec = spec_from_command(cli.command);
    let report = jumpcode::experiments::run_experiment(&spec).map_err(|e| {
        let code = match e {
            jumpcode::Error::InvalidParameter(_) | jumpcode::Error::NotNormalized(_) => 2u8,
            _ => 1u8,
        };
        (code, e.to_string())
    })?;
    let rendered = report.to_json_pretty();
    match &cli.out {
        Some(path) => std::fs::write(path, &rendered)
            .map_err(|e| (1u8, format!("writing {}: {e}", path.display())))?,
        None => println!("{rendered}"),
    }
    if let Some(path) = &cli.csv {
        match report.cases_csv() {
            Some(csv) => std::fs::write(path, csv)
                .map_err(|e| (1u8, format!("writing {}: {e}", path.display())))?,
            None => eprintln!("note: this experiment has no flat per-case rows; CSV skipped"),
        }
    }
    eprintln!(
        "{}: {} ({} ms)",
        match report.spec {
            ExperimentSpec::Invariance(_) => "invariance",
            ExperimentSpec::SweepErrors(_) => "sweep-errors",
            ExperimentSpec::DecayMixing(_) => "decay-mixing",
            ExperimentSpec::FiveBitFailure(_) => "five-bit-failure",
            ExperimentSpec::Eq6Limit(_) => "eq6-limit",
            ExperimentSpec::Trajectories(_) => "trajectories",
            ExperimentSpec::Certify(_) => "certify",
            ExperimentSpec::Bound(_) => "bound",
            ExperimentSpec::Search(_) => "search",
        },
        match report.status {
            jumpcode::experiments::Status::Pass => "pass",
            jumpcode::experiments::Status::Fail => "FAIL",
            jumpcode::experiments::Status::Inconclusive => "inconclusive",
        },
        report.wall_ms
    );
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
