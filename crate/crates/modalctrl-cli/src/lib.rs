//! Command dispatch and machine-readable reports for the `modalctrl` binary.
//!
//! Four subcommands cover the analysis surface:
//!
//! * `spectrum`: root localization and exponential-type estimation for a
//!   quasi-polynomial model;
//! * `minimality`: Gram margins and biorthogonal residuals for the
//!   exponential family of a modal model;
//! * `check`: per-mode controllability verdicts;
//! * `attain`: the closure-independence experiment over a horizon list.
//!
//! Every run emits a single JSON report with sorted keys: identical
//! invocations produce byte-identical reports apart from the timestamp,
//! which `--no-timestamp` removes entirely. Exit codes form a contract for
//! CI pipelines: 0 = pass, 2 = criterion failed, 1 = error, 64 = usage.
//! The `TOOL_THREADS` environment variable caps worker parallelism.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use modalctrl::attainable::{closure_independence_experiment, IndependenceOptions, PairOutcome};
use modalctrl::controllability::{controllability_report, SystemVerdict};
use modalctrl::minimality::ExponentialFamily;
use modalctrl::model::{LoadedModel, SCHEMA_VERSION};
use modalctrl::quasipoly::{exponential_type, find_roots, Region};
use modalctrl::spectral::ModalSystem;
use modalctrl::{Error, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CRITERION_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "modalctrl",
    version,
    about = "Spectral attainability and controllability toolkit",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Locate roots of a quasi-polynomial model and estimate its exponential type.
    Spectrum(SpectrumArgs),
    /// Minimality margins and biorthogonal residuals of the exponential family.
    Minimality(MinimalityArgs),
    /// Per-mode approximate null-controllability verdicts.
    Check(CheckArgs),
    /// Attainable-subspace comparison across horizons.
    Attain(AttainArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Model file (JSON; kinds: modal, quasipoly, preset).
    #[arg(long)]
    pub model: String,
    /// Omit the timestamp so identical runs are byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Search rectangle re_min,re_max,im_min,im_max.
    #[arg(long, default_value = "-5,5,-5,5", allow_hyphen_values = true)]
    pub region: String,
    /// Root residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Radii for the exponential-type estimate.
    #[arg(long, default_value = "50,100,200")]
    pub radii: String,
    /// Sample directions per radius (>= 8).
    #[arg(long, default_value_t = 16)]
    pub directions: usize,
}

#[derive(Debug, Args)]
pub struct MinimalityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Section size n (default: the whole family).
    #[arg(long)]
    pub sections: Option<usize>,
    /// Relative margin gate for the biorthogonal inversion.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Examine only the first N modes.
    #[arg(long)]
    pub modes: Option<usize>,
    /// Relative singular-value cutoff for the rank decision.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct AttainArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Strictly increasing horizon list t1,t2,...
    #[arg(long)]
    pub horizons: String,
    /// Truncate to the first N modes (default: all).
    #[arg(long)]
    pub modes: Option<usize>,
    /// Relative Gramian rank tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Gap tolerance for horizon pairs above T + nu.
    #[arg(long, default_value_t = 1e-6)]
    pub distance_tol: f64,
}

/// One JSON report per run; serialized with sorted keys.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub toolkit_version: &'static str,
    /// Echo of the effective command line.
    pub command: String,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub warnings: Vec<String>,
    pub results: Results,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub path: String,
    pub sha256: String,
    pub kind: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Results {
    Spectrum {
        region: [f64; 4],
        tol: f64,
        roots: Vec<RootOut>,
        exponential_type: TypeOut,
    },
    Minimality {
        nu: f64,
        family_size: usize,
        sections: usize,
        margin: f64,
        gram_condition: Option<f64>,
        biorthogonal_residual: Option<f64>,
        verdict: String,
    },
    Check {
        rel_tol: f64,
        modes: Vec<ModeOut>,
        verdict: String,
        horizon_note: String,
    },
    Attain {
        horizons: Vec<f64>,
        dimensions: Vec<usize>,
        threshold_time: f64,
        distances: Vec<Vec<f64>>,
        gramian_spectra: Vec<Vec<f64>>,
        pairs: Vec<PairOut>,
        monotone_dimensions: bool,
        verdict: String,
    },
}

#[derive(Debug, Serialize)]
pub struct RootOut {
    pub location: [f64; 2],
    pub multiplicity: usize,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct TypeOut {
    pub omega: f64,
    pub spread: f64,
    pub radius: f64,
}

#[derive(Debug, Serialize)]
pub struct ModeOut {
    pub index: usize,
    pub lambda: [f64; 2],
    pub beta: usize,
    pub rank: usize,
    pub passes: bool,
    pub margin: f64,
}

#[derive(Debug, Serialize)]
pub struct PairOut {
    pub horizons: [f64; 2],
    pub distance: f64,
    pub dimensions: [usize; 2],
    pub verdict: String,
}

fn parse_list(raw: &str, what: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse {what} entry '{p}'")))
        })
        .collect()
}

fn require_modal<'a>(model: &'a LoadedModel, command: &str) -> Result<&'a ModalSystem> {
    match model {
        LoadedModel::Modal(sys) => Ok(sys),
        LoadedModel::QuasiPolynomial(_) => Err(Error::InvalidArgument(format!(
            "`{command}` needs modal data; bridge a quasipoly model through \
             root finding and per-root couplings first"
        ))),
    }
}

fn truncate(system: &ModalSystem, modes: Option<usize>) -> Result<ModalSystem> {
    match modes {
        None => Ok(system.clone()),
        Some(n) => {
            if n == 0 || n > system.mode_count() {
                return Err(Error::InvalidArgument(format!(
                    "--modes {n} out of range 1..={}",
                    system.mode_count()
                )));
            }
            ModalSystem::new(
                system.modes()[..n].to_vec(),
                system.input_dim(),
                system.expansion_time(),
                system.minimality_interval(),
            )
        }
    }
}

struct Loaded {
    model: LoadedModel,
    echo: InputEcho,
}

fn load(common: &CommonArgs) -> Result<Loaded> {
    let bytes = std::fs::read(&common.model)?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let model =
        modalctrl::model::parse_model(std::str::from_utf8(&bytes).map_err(|e| Error::Schema {
            path: ".".into(),
            message: format!("model file is not UTF-8: {e}"),
        })?)?;
    let echo = InputEcho {
        path: common.model.clone(),
        sha256: hex,
        kind: model.kind().to_string(),
    };
    Ok(Loaded { model, echo })
}

/// Executes a parsed command; returns the report and the exit code.
pub fn run(cli: &Cli) -> Result<(RunReport, i32)> {
    match &cli.command {
        Command::Spectrum(args) => run_spectrum(args),
        Command::Minimality(args) => run_minimality(args),
        Command::Check(args) => run_check(args),
        Command::Attain(args) => run_attain(args),
    }
}

fn finish(
    common: &CommonArgs,
    command: String,
    echo: InputEcho,
    warnings: Vec<String>,
    results: Results,
    exit: i32,
) -> (RunReport, i32) {
    let timestamp = if common.no_timestamp {
        None
    } else {
        Some(chrono::Utc::now().to_rfc3339())
    };
    (
        RunReport {
            schema_version: SCHEMA_VERSION,
            toolkit_version: env!("CARGO_PKG_VERSION"),
            command,
            input: echo,
            timestamp,
            warnings,
            results,
        },
        exit,
    )
}

fn run_spectrum(args: &SpectrumArgs) -> Result<(RunReport, i32)> {
    let loaded = load(&args.common)?;
    let q = match &loaded.model {
        LoadedModel::QuasiPolynomial(q) => q,
        LoadedModel::Modal(_) => {
            return Err(Error::InvalidArgument(
                "`spectrum` needs a quasipoly model; modal data already lists its eigenvalues"
                    .into(),
            ))
        }
    };
    let bounds = parse_list(&args.region, "--region")?;
    if bounds.len() != 4 {
        return Err(Error::InvalidArgument(
            "--region needs four values re_min,re_max,im_min,im_max".into(),
        ));
    }
    let region = Region::new(bounds[0], bounds[1], bounds[2], bounds[3])?;
    let radii = parse_list(&args.radii, "--radii")?;
    let roots = find_roots(q, &region, args.tol)?;
    let estimate = exponential_type(q, &radii, args.directions)?;
    let warnings = vec![
        format!(
            "exponential type is an estimate at radius {} (spread {:.3e}); the true omega is a limsup",
            estimate.radius, estimate.spread
        ),
        "root list covers the requested region only".to_string(),
    ];
    let results = Results::Spectrum {
        region: [bounds[0], bounds[1], bounds[2], bounds[3]],
        tol: args.tol,
        roots: roots
            .iter()
            .map(|r| RootOut {
                location: [r.location.re, r.location.im],
                multiplicity: r.multiplicity,
                residual: r.residual,
            })
            .collect(),
        exponential_type: TypeOut {
            omega: estimate.omega,
            spread: estimate.spread,
            radius: estimate.radius,
        },
    };
    let command = format!(
        "spectrum --model {} --region {} --tol {:e} --radii {} --directions {}",
        args.common.model, args.region, args.tol, args.radii, args.directions
    );
    Ok(finish(
        &args.common,
        command,
        loaded.echo,
        warnings,
        results,
        EXIT_PASS,
    ))
}

fn run_minimality(args: &MinimalityArgs) -> Result<(RunReport, i32)> {
    let loaded = load(&args.common)?;
    let system = require_modal(&loaded.model, "minimality")?;
    let family = ExponentialFamily::from_system(system)?;
    let sections = args.sections.unwrap_or(family.len());
    let margin = family.minimality_margin(sections)?;
    let truncation = family.biorthogonal_truncation_with_threshold(sections, args.tol);
    let (gram_condition, residual, pass) = match &truncation {
        Ok(t) => (Some(t.gram_condition()), Some(t.residual()), true),
        Err(Error::IllConditionedFamily { .. }) => (None, None, false),
        Err(e) => return Err(clone_error(e)),
    };
    let verdict = format!(
        "sections 1..{sections} {} with margin {margin:.6e}",
        if pass {
            "independent"
        } else {
            "ill-conditioned"
        }
    );
    let warnings = vec![
        "finite-section evidence, not a proof of minimality of the infinite family".to_string(),
        format!(
            "only the first {sections} of {} family members were examined",
            family.len()
        ),
    ];
    let results = Results::Minimality {
        nu: family.interval_end(),
        family_size: family.len(),
        sections,
        margin,
        gram_condition,
        biorthogonal_residual: residual,
        verdict,
    };
    let command = format!(
        "minimality --model {} --sections {sections} --tol {:e}",
        args.common.model, args.tol
    );
    let exit = if pass { EXIT_PASS } else { EXIT_CRITERION_FAIL };
    Ok(finish(
        &args.common,
        command,
        loaded.echo,
        warnings,
        results,
        exit,
    ))
}

// Error does not implement Clone (it can carry io errors); rebuild the one
// variant we need to pass through.
fn clone_error(e: &Error) -> Error {
    Error::InvalidArgument(e.to_string())
}

fn run_check(args: &CheckArgs) -> Result<(RunReport, i32)> {
    let loaded = load(&args.common)?;
    let system = truncate(require_modal(&loaded.model, "check")?, args.modes)?;
    let report = controllability_report(&system, args.tol)?;
    let verdict = match report.verdict {
        SystemVerdict::PassUpTo(n) => format!("pass-up-to-{n}"),
        SystemVerdict::FailAt(j) => format!("fail-at-{j}"),
    };
    let warnings = vec![
        format!(
            "pass-up-to-N covers only the {} examined modes; unchecked modes may still fail",
            report.modes_checked
        ),
        report.horizon_note.clone(),
    ];
    let results = Results::Check {
        rel_tol: args.tol,
        modes: report
            .verdicts
            .iter()
            .zip(system.modes())
            .map(|(v, m)| ModeOut {
                index: v.mode_index,
                lambda: [m.lambda().re, m.lambda().im],
                beta: v.beta,
                rank: v.rank_found,
                passes: v.passes,
                margin: v.margin,
            })
            .collect(),
        verdict,
        horizon_note: report.horizon_note.clone(),
    };
    let command = format!(
        "check --model {}{} --tol {:e}",
        args.common.model,
        args.modes
            .map(|n| format!(" --modes {n}"))
            .unwrap_or_default(),
        args.tol
    );
    let exit = if report.passed() {
        EXIT_PASS
    } else {
        EXIT_CRITERION_FAIL
    };
    Ok(finish(
        &args.common,
        command,
        loaded.echo,
        warnings,
        results,
        exit,
    ))
}

fn run_attain(args: &AttainArgs) -> Result<(RunReport, i32)> {
    let loaded = load(&args.common)?;
    let system = require_modal(&loaded.model, "attain")?;
    let horizons = parse_list(&args.horizons, "--horizons")?;
    let n = args.modes.unwrap_or(system.mode_count());
    let options = IndependenceOptions {
        rank_tol: args.tol,
        distance_tol: args.distance_tol,
        ..IndependenceOptions::default()
    };
    let report = closure_independence_experiment(system, &horizons, n, &options)?;

    // keep the Gramian spectra auditable alongside the rank decisions
    let realization = modalctrl::attainable::TruncatedRealization::from_system(system, n)?;
    let spectra: Vec<Vec<f64>> = horizons
        .iter()
        .map(|&t| {
            realization
                .attainable_subspace(t, args.tol, &options.quad)
                .map(|b| b.gramian_spectrum().to_vec())
        })
        .collect::<Result<_>>()?;

    let pairs = report
        .pairs
        .iter()
        .map(|p| PairOut {
            horizons: [report.horizons[p.pair.0], report.horizons[p.pair.1]],
            distance: p.distance,
            dimensions: [p.dims.0, p.dims.1],
            verdict: match p.verdict {
                PairOutcome::Pass => "pass".to_string(),
                PairOutcome::Fail => "fail".to_string(),
                PairOutcome::Undetermined => {
                    "undetermined (horizon at or below T + nu)".to_string()
                }
            },
        })
        .collect();
    let passed = report.passed();
    let warnings = vec![
        format!(
            "finite truncation of {n} modes; the closure statement itself is not a finite computation"
        ),
        format!(
            "threshold T + nu = {:.6} uses the model's declared nu, which may itself be an estimate",
            report.threshold_time
        ),
    ];
    let results = Results::Attain {
        horizons: report.horizons.clone(),
        dimensions: report.dimensions.clone(),
        threshold_time: report.threshold_time,
        distances: (0..horizons.len())
            .map(|i| {
                (0..horizons.len())
                    .map(|j| report.distances[(i, j)])
                    .collect()
            })
            .collect(),
        gramian_spectra: spectra,
        pairs,
        monotone_dimensions: report.monotone_dimensions,
        verdict: if passed { "pass".into() } else { "fail".into() },
    };
    let command = format!(
        "attain --model {} --horizons {} --modes {n} --tol {:e} --distance-tol {:e}",
        args.common.model, args.horizons, args.tol, args.distance_tol
    );
    let exit = if passed {
        EXIT_PASS
    } else {
        EXIT_CRITERION_FAIL
    };
    Ok(finish(
        &args.common,
        command,
        loaded.echo,
        warnings,
        results,
        exit,
    ))
}

/// Serializes a report with deterministic key order.
pub fn render_report(report: &RunReport) -> Result<String> {
    let value = serde_json::to_value(report)?;
    Ok(serde_json::to_string_pretty(&value)?)
}

/// Full CLI flow: run, emit, map to the exit-code contract.
pub fn execute(cli: &Cli) -> i32 {
    let common = match &cli.command {
        Command::Spectrum(a) => &a.common,
        Command::Minimality(a) => &a.common,
        Command::Check(a) => &a.common,
        Command::Attain(a) => &a.common,
    };
    match run(cli) {
        Ok((report, exit)) => {
            let text = match render_report(&report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_ERROR;
                }
            };
            match &common.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write report to {path}: {e}");
                        return EXIT_ERROR;
                    }
                }
                None => println!("{text}"),
            }
            exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
