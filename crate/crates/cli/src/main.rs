//! `qcorr`: skew-information correlation indicators from the command line.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid input,
//! 3 optimizer did not converge (the report is still written).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcorr_core::indicators::{allow_unconverged, bell_mixture_closed_forms};
use qcorr_core::io::parse_state;
use qcorr_core::verify::{probe_monotonicity, run_suite, Suite, VerifyOptions};
use qcorr_core::{
    bell_mixture, indicator_basis_gwys, indicator_basis_metric, indicator_spectrum, Error, IndicatorResult, MeanKernel,
    OptimizerConfig, SkewExponent, SkewParams,
};
use sha2::{Digest, Sha256};

use report::{compute_csv, sweep_csv, InputInfo, Parameters, ResultRecord, RunReport, SweepRow};

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Skew-information nonclassical correlation indicators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one indicator for a state file.
    Compute(ComputeArgs),
    /// Closed-form and optimized indicators along the two-Bell-state mixture.
    SweepExample2(SweepArgs),
    /// Run randomized property suites.
    Verify(VerifyArgs),
    /// Report channel monotonicity violations at an arbitrary (ω, s).
    /// Experimental: nothing is asserted and the exit code is 0.
    Probe(ProbeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum IndicatorKind {
    BasisGwys,
    BasisMetric,
    Spectrum,
}

impl IndicatorKind {
    fn name(self) -> &'static str {
        match self {
            IndicatorKind::BasisGwys => "basis-gwys",
            IndicatorKind::BasisMetric => "basis-metric",
            IndicatorKind::Spectrum => "spectrum",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Wyd,
    Sld,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SkewArgs {
    /// Weight ω, strictly between 0 and 1.
    #[arg(long, default_value_t = 0.5)]
    omega: f64,
    /// Exponent s <= 0, or "-inf".
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    s: String,
}

impl SkewArgs {
    fn params(&self) -> Result<SkewParams, Error> {
        let s: SkewExponent = self.s.parse()?;
        SkewParams::with_exponent(self.omega, s)
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    state: PathBuf,
    #[arg(long, value_enum)]
    indicator: IndicatorKind,
    #[command(flatten)]
    skew: SkewArgs,
    /// Metric kernel for basis-metric (default sld); wyd uses --omega.
    #[arg(long, value_enum)]
    kernel: Option<KernelArg>,
    /// Fixed spectrum for the spectrum indicator, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    chi: Option<Vec<f64>>,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include wall time in the report (makes reports run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    points: usize,
    #[command(flatten)]
    skew: SkewArgs,
    #[arg(long, value_enum, default_value = "sld")]
    kernel: KernelArg,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplies every property tolerance.
    #[arg(long, default_value_t = 1.0, hide = true)]
    tolerance_scale: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    skew: SkewArgs,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure reported as `{"error": code, "message": ...}` on stderr.
struct Failure {
    code: &'static str,
    message: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
            exit: 2,
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: "InvalidParams",
        message: message.into(),
        exit: 2,
    }
}

fn kernel_for(arg: KernelArg, omega: f64) -> Result<MeanKernel, Error> {
    match arg {
        KernelArg::Wyd => MeanKernel::wyd(omega),
        KernelArg::Sld => Ok(MeanKernel::Sld),
    }
}

fn optimizer(restarts: usize, seed: u64) -> Result<OptimizerConfig, Error> {
    let cfg = OptimizerConfig {
        restarts,
        seed,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: "Io",
            message: format!("cannot write {}: {e}", path.display()),
            exit: 2,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn compute(args: ComputeArgs, argv: Vec<String>) -> Result<u8, Failure> {
    let started = Instant::now();
    let params = args.skew.params()?;
    if args.kernel.is_some() && !matches!(args.indicator, IndicatorKind::BasisMetric) {
        return Err(invalid("--kernel only applies to --indicator basis-metric"));
    }
    if args.chi.is_some() && !matches!(args.indicator, IndicatorKind::Spectrum) {
        return Err(invalid("--chi only applies to --indicator spectrum"));
    }
    let cfg = optimizer(args.restarts, args.seed)?;
    let bytes = fs::read(&args.state).map_err(|e| Failure {
        code: "StateFile",
        message: format!("cannot read {}: {e}", args.state.display()),
        exit: 2,
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure {
        code: "StateFile",
        message: "state file is not UTF-8".into(),
        exit: 2,
    })?;
    let rho = parse_state(&text)?;
    let d1 = rho.dims().d1();

    let kernel = match args.indicator {
        IndicatorKind::BasisMetric => Some(kernel_for(args.kernel.unwrap_or(KernelArg::Sld), params.omega())?),
        _ => None,
    };
    let chi = match args.indicator {
        // evenly spaced from 1 to -1 unless given
        IndicatorKind::Spectrum => Some(
            args.chi
                .clone()
                .unwrap_or_else(|| (0..d1).map(|k| 1.0 - 2.0 * k as f64 / (d1 - 1) as f64).collect()),
        ),
        _ => None,
    };
    let outcome = match args.indicator {
        IndicatorKind::BasisGwys => indicator_basis_gwys(&rho, &params, &cfg),
        IndicatorKind::BasisMetric => indicator_basis_metric(&rho, kernel.as_ref().expect("kernel set"), &cfg),
        IndicatorKind::Spectrum => indicator_spectrum(&rho, chi.as_deref().expect("chi set"), &params, &cfg),
    };
    let (result, converged): (IndicatorResult, bool) = match outcome {
        Ok(r) => (r, true),
        Err(Error::OptimizerDidNotConverge(r)) => (*r, false),
        Err(e) => return Err(e.into()),
    };

    let wall = started.elapsed().as_secs_f64();
    let report = RunReport {
        tool: "qcorr",
        version: env!("CARGO_PKG_VERSION"),
        command: argv,
        input: InputInfo {
            path: args.state.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
            d1,
            d2: rho.dims().d2(),
        },
        parameters: Parameters {
            indicator: args.indicator.name(),
            omega: params.omega(),
            s: params.s().to_string(),
            kernel: kernel.map(|k| k.name()),
            chi,
            restarts: cfg.restarts,
            seed: cfg.seed,
            max_iters: cfg.max_iters,
            objective_tol: cfg.objective_tol,
            step_init: cfg.step_init,
        },
        result: ResultRecord::from_result(&result),
        wall_time_seconds: args.timing.then_some(wall),
    };
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => compute_csv(&report),
    };
    emit(&text, args.out.as_deref())?;
    if args.timing {
        eprintln!("wall time: {wall:.3} s");
    }
    if converged {
        Ok(0)
    } else {
        eprintln!(
            "{}",
            serde_json::json!({"error": "OptimizerDidNotConverge", "message": "no restart met the tolerance"})
        );
        Ok(3)
    }
}

fn sweep(args: SweepArgs) -> Result<u8, Failure> {
    if args.points < 2 {
        return Err(invalid("--points must be at least 2"));
    }
    let params = args.skew.params()?;
    let kernel = kernel_for(args.kernel, params.omega())?;
    let cfg = optimizer(args.restarts, args.seed)?;
    let mut rows = Vec::with_capacity(args.points);
    let mut all_converged = true;
    for k in 0..args.points {
        let mix = k as f64 / (args.points - 1) as f64;
        let rho = bell_mixture(mix)?;
        let closed = bell_mixture_closed_forms(mix, &params, &kernel)?;
        let mut run = |r: Result<IndicatorResult, Error>| -> Result<f64, Failure> {
            let r = match r {
                Err(Error::OptimizerDidNotConverge(_)) => {
                    all_converged = false;
                    allow_unconverged(r)?
                }
                other => other?,
            };
            Ok(r.value)
        };
        rows.push(SweepRow {
            mix,
            closed_form_basis_gwys: closed.basis_gwys,
            closed_form_basis_metric: closed.basis_metric,
            closed_form_spectrum: closed.spectrum,
            optimizer_basis_gwys: run(indicator_basis_gwys(&rho, &params, &cfg))?,
            optimizer_basis_metric: run(indicator_basis_metric(&rho, &kernel, &cfg))?,
            optimizer_spectrum: run(indicator_spectrum(&rho, &[1.0, -1.0], &params, &cfg))?,
        });
    }
    let text = match args.format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => to_json(&rows),
    };
    emit(&text, args.out.as_deref())?;
    Ok(if all_converged { 0 } else { 3 })
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let suite: Suite = args.suite.parse()?;
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
        tolerance_scale: args.tolerance_scale,
        ..VerifyOptions::default()
    };
    let report = run_suite(suite, &opts)?;
    emit(&to_json(&report), args.out.as_deref())?;
    Ok(if report.passed { 0 } else { 1 })
}

#[derive(serde::Serialize)]
struct ProbeReport {
    omega: f64,
    s: String,
    trials: usize,
    seed: u64,
    /// `worst_violation` is the largest observed increase under the channel.
    properties: Vec<qcorr_core::verify::PropertyOutcome>,
}

fn probe(args: ProbeArgs) -> Result<u8, Failure> {
    if args.trials == 0 {
        return Err(invalid("--trials must be positive"));
    }
    let params = args.skew.params()?;
    let cfg = optimizer(args.restarts, args.seed)?;
    let properties = probe_monotonicity(&params, args.trials, args.seed, &cfg)?.to_vec();
    let report = ProbeReport {
        omega: params.omega(),
        s: params.s().to_string(),
        trials: args.trials,
        seed: args.seed,
        properties,
    };
    emit(&to_json(&report), args.out.as_deref())?;
    Ok(0)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("QCORR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| invalid(format!("QCORR_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| invalid(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| match cli.command {
        Command::Compute(args) => compute(args, argv),
        Command::SweepExample2(args) => sweep(args),
        Command::Verify(args) => verify(args),
        Command::Probe(args) => probe(args),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", serde_json::json!({"error": f.code, "message": f.message}));
            ExitCode::from(f.exit)
        }
    }
}
