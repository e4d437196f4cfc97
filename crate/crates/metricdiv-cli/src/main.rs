//! Command-line front end: compute invariants from files, sweep scale
//! profiles, run the verification harness, and compare oracles.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
//! 3 invalid metric, 4 size limit exceeded. Primary output goes to stdout
//! (or `--output`); diagnostics go to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use metricdiv::harness::registry;
use metricdiv::{
    complexity_profile, io, max_diversity_exact_with_cap, simplex_oracle, Error,
    DEFAULT_N_MAX,
};

#[derive(Parser)]
#[command(
    name = "metricdiv",
    version,
    about = "Similarity-sensitive diversity invariants of finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute maximum diversity of a space at one scale.
    Compute(ComputeArgs),
    /// Sweep maximum diversity over a grid of scales.
    Profile(ProfileArgs),
    /// Run the randomized verification harness.
    Verify(VerifyArgs),
    /// Compare simplex oracles against exact enumeration.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    /// Distance-matrix CSV or point-cloud JSON.
    #[arg(long)]
    input: PathBuf,
    /// Kernel scale.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write primary output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    input: PathBuf,
    /// Single scale (shorthand for a one-point grid).
    #[arg(long, conflicts_with_all = ["t_min", "t_max", "t_steps"])]
    t: Option<f64>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 10)]
    t_steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check names; default is every check except
    /// selftest_violation.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Override every check's default trial count.
    #[arg(long)]
    trials: Option<usize>,
    /// Override every check's default tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// List available checks and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Comma-separated orders; `inf` is accepted.
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2,inf")]
    alpha: Vec<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Profile(args) => cmd_profile(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    if err.is_invalid_metric() {
        3
    } else if matches!(err, Error::TooLarge { .. }) {
        4
    } else {
        2
    }
}

/// Enumeration cap, overridable through `METRICDIV_MAX_N`.
fn enumeration_cap() -> Result<usize, Error> {
    match std::env::var("METRICDIV_MAX_N") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::Parse(format!("METRICDIV_MAX_N: bad value {v:?}"))),
        Err(_) => Ok(DEFAULT_N_MAX),
    }
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Floats in CSV output carry 12 significant digits.
fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{:.11e}", v)
}

#[derive(Serialize)]
struct ComputeOutput {
    #[serde(rename = "D")]
    d: f64,
    #[serde(rename = "C")]
    c: f64,
    kappa: f64,
    support: Vec<String>,
    maximizer: Vec<f64>,
    certificate_gap: f64,
    t: f64,
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, Error> {
    let (space, _) = io::load_space(&args.input)?;
    let cap = enumeration_cap()?;
    let result = max_diversity_exact_with_cap(&space, args.t, cap)?;
    let out = ComputeOutput {
        d: result.d,
        c: result.c,
        kappa: result.kappa,
        support: result
            .support_subset
            .iter()
            .map(|&i| space.label(i).to_string())
            .collect(),
        maximizer: result.maximizer.as_slice().to_vec(),
        certificate_gap: result.certificate_gap,
        t: args.t,
    };
    let text = match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&out).expect("output serializes")
        ),
        Format::Csv => format!(
            "D,C,kappa,certificate_gap,t\n{},{},{},{},{}\n",
            sig12(out.d),
            sig12(out.c),
            sig12(out.kappa),
            sig12(out.certificate_gap),
            sig12(out.t),
        ),
    };
    emit(text, &args.output)?;
    Ok(ExitCode::SUCCESS)
}

fn profile_grid(args: &ProfileArgs) -> Result<Vec<f64>, Error> {
    if let Some(t) = args.t {
        return Ok(vec![t]);
    }
    let (Some(t_min), Some(t_max)) = (args.t_min, args.t_max) else {
        return Err(Error::Parse(
            "profile needs either --t or both --t-min and --t-max".into(),
        ));
    };
    if args.t_steps == 0 {
        return Err(Error::Parse("--t-steps must be at least 1".into()));
    }
    if args.t_steps == 1 {
        return Ok(vec![t_min]);
    }
    let step = (t_max - t_min) / (args.t_steps - 1) as f64;
    Ok((0..args.t_steps)
        .map(|i| t_min + step * i as f64)
        .collect())
}

fn cmd_profile(args: ProfileArgs) -> Result<ExitCode, Error> {
    let (space, _) = io::load_space(&args.input)?;
    let cap = enumeration_cap()?;
    if space.n() > cap {
        return Err(Error::TooLarge {
            n: space.n(),
            max: cap,
        });
    }
    let grid = profile_grid(&args)?;
    let profile = complexity_profile(&space, &grid)?;
    let text = match args.format {
        Format::Csv => {
            let mut out = String::from("t,D,C,kappa\n");
            for e in &profile.entries {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    sig12(e.t),
                    sig12(e.d),
                    sig12(e.c),
                    sig12(e.kappa)
                ));
            }
            out
        }
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&profile.entries).expect("entries serialize")
        ),
    };
    emit(text, &args.output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    if args.list {
        let mut out = String::new();
        for def in registry::CHECKS {
            out.push_str(&format!(
                "{:<26} trials={:<4} tol={:<6e} {}{}\n",
                def.name,
                def.default_trials,
                def.default_tol,
                if def.exploratory { "[exploratory] " } else { "" },
                def.description
            ));
        }
        emit(out, &args.output)?;
        return Ok(ExitCode::SUCCESS);
    }

    let names: Vec<String> = if args.checks.is_empty() {
        registry::CHECKS
            .iter()
            .filter(|d| d.name != "selftest_violation")
            .map(|d| d.name.to_string())
            .collect()
    } else {
        args.checks.clone()
    };
    for name in &names {
        if registry::find(name).is_none() {
            return Err(Error::Parse(format!(
                "unknown check {name:?}; available: {}",
                registry::check_names().join(", ")
            )));
        }
    }

    let mut reports = Vec::new();
    let mut failed = false;
    for name in &names {
        let report = registry::run_check(name, args.seed, args.trials, args.tol)
            .expect("name validated above");
        let exploratory = registry::find(name).expect("validated").exploratory;
        eprintln!(
            "{:<26} {} ({} trials, worst slack {:+.3e}, {:.2}s)",
            report.check_name,
            if report.passed() {
                "ok"
            } else if exploratory {
                "noted"
            } else {
                "VIOLATED"
            },
            report.trials,
            report.worst_slack,
            report.elapsed
        );
        if !report.passed() && !exploratory {
            failed = true;
        }
        reports.push(report);
    }

    let text = match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&reports).expect("reports serialize")
        ),
        Format::Csv => {
            let mut out = String::from("check_name,trials,violations,worst_slack,seed\n");
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.check_name,
                    r.trials,
                    r.violations.len(),
                    sig12(r.worst_slack),
                    r.seed
                ));
            }
            out
        }
    };
    emit(text, &args.output)?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_alpha(text: &str) -> Result<f64, Error> {
    let trimmed = text.trim();
    if trimmed.eq_ignore_ascii_case("inf") || trimmed == "∞" {
        return Ok(f64::INFINITY);
    }
    let v: f64 = trimmed
        .parse()
        .map_err(|_| Error::Parse(format!("bad order {trimmed:?}")))?;
    if v < 0.0 || v.is_nan() {
        return Err(Error::NegativeAlpha(v));
    }
    Ok(v)
}

fn alpha_display(alpha: f64) -> String {
    if alpha == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{alpha}")
    }
}

#[derive(Serialize)]
struct OracleEntry {
    alpha: String,
    value: f64,
    abs_error: f64,
}

#[derive(Serialize)]
struct OracleOutput {
    t: f64,
    exact_d: f64,
    entries: Vec<OracleEntry>,
    max_spread: f64,
}

const ORACLE_ITERATIONS: usize = 20_000;

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode, Error> {
    let (space, _) = io::load_space(&args.input)?;
    let cap = enumeration_cap()?;
    let exact = max_diversity_exact_with_cap(&space, args.t, cap)?.d;
    let alphas: Vec<f64> = args
        .alpha
        .iter()
        .map(|a| parse_alpha(a))
        .collect::<Result<_, _>>()?;

    let mut entries = Vec::new();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for alpha in alphas {
        let value = simplex_oracle(&space, args.t, alpha, ORACLE_ITERATIONS, args.seed)?;
        lo = lo.min(value);
        hi = hi.max(value);
        entries.push(OracleEntry {
            alpha: alpha_display(alpha),
            value,
            abs_error: (value - exact).abs(),
        });
    }
    let out = OracleOutput {
        t: args.t,
        exact_d: exact,
        entries,
        max_spread: if hi >= lo { hi - lo } else { 0.0 },
    };
    let text = match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&out).expect("output serializes")
        ),
        Format::Csv => {
            let mut s = String::from("alpha,oracle_D,exact_D,abs_error\n");
            for e in &out.entries {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    e.alpha,
                    sig12(e.value),
                    sig12(out.exact_d),
                    sig12(e.abs_error)
                ));
            }
            s
        }
    };
    emit(text, &args.output)?;
    Ok(ExitCode::SUCCESS)
}
