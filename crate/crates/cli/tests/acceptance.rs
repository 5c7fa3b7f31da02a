//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use qcorr_core::indicators::{
    allow_unconverged, bell_mixture_closed_forms, classify_qubit_basis, pure_closed_form_basis,
    pure_closed_form_spectrum, MetricBranch,
};
use qcorr_core::random::{random_density_with, random_observable_with, random_pure_state_with, rng};
use qcorr_core::verify::{
    basis_concurrence_relation, classical_quantum_zero, cptp_monotonicity, info_suite, local_unitary_invariance,
    oracle_equivalence, pure_parameter_independence, random_unitary_monotonicity, spectrum_concurrence_relation,
    PropertyOutcome, INDICATOR_OMEGAS, INDICATOR_S, OPTIMIZER_TOL, ORACLE_TOL,
};
use qcorr_core::{
    bell_mixture, gwys_info, indicator_basis_gwys, indicator_basis_metric, indicator_spectrum, metric_adjusted_info,
    BipartiteDims, MeanKernel, OptimizerConfig, Result, SkewParams,
};

struct Verdict {
    passed: bool,
    detail: String,
}

fn within(limit: Duration, elapsed: Duration) -> String {
    format!("{:.1}s of {}s", elapsed.as_secs_f64(), limit.as_secs())
}

fn properties(outcomes: &[PropertyOutcome]) -> Verdict {
    let failed: Vec<&str> = outcomes.iter().filter(|p| !p.passed).map(|p| p.name).collect();
    let detail = outcomes
        .iter()
        .map(|p| format!("{}={:.3e}/{:.0e}", p.name, p.worst_violation, p.tolerance))
        .collect::<Vec<_>>()
        .join(" ");
    Verdict {
        passed: failed.is_empty(),
        detail,
    }
}

fn dims(d1: usize, d2: usize) -> BipartiteDims {
    BipartiteDims::new(d1, d2).unwrap()
}

fn pure_basis_values(cfg: &OptimizerConfig) -> Result<Verdict> {
    let limit = Duration::from_secs(120);
    let start = Instant::now();
    let mut r = rng(101);
    let (mut worst, mut count, mut unconverged) = (0.0f64, 0usize, 0usize);
    for (d1, d2) in [(2, 2), (2, 3), (3, 3)] {
        for _ in 0..20 {
            let psi = random_pure_state_with(dims(d1, d2), &mut r);
            let rho = psi.density();
            let expected = pure_closed_form_basis(&psi)?;
            let mut record = |res: Result<_>| -> Result<()> {
                if res.is_err() {
                    unconverged += 1;
                }
                let v = allow_unconverged(res)?.value;
                worst = worst.max((v - expected).abs());
                count += 1;
                Ok(())
            };
            for &omega in &INDICATOR_OMEGAS {
                for &s in &INDICATOR_S {
                    record(indicator_basis_gwys(&rho, &SkewParams::new(omega, s)?, cfg))?;
                }
                record(indicator_basis_metric(&rho, &MeanKernel::wyd(omega)?, cfg))?;
            }
            record(indicator_basis_metric(&rho, &MeanKernel::Sld, cfg))?;
        }
    }
    let elapsed = start.elapsed();
    Ok(Verdict {
        passed: worst <= OPTIMIZER_TOL && elapsed <= limit,
        detail: format!(
            "{count} values, max gap {worst:.3e}, unconverged {unconverged}, {}",
            within(limit, elapsed)
        ),
    })
}

fn pure_spectrum_values(cfg: &OptimizerConfig) -> Result<Verdict> {
    let mut r = rng(102);
    let p = SkewParams::quantum_fisher();
    let mut worst = 0.0f64;
    for d2 in [2, 3, 4] {
        for _ in 0..20 {
            let psi = random_pure_state_with(dims(2, d2), &mut r);
            let v = allow_unconverged(indicator_spectrum(&psi.density(), &[1.0, -1.0], &p, cfg))?.value;
            worst = worst.max((v - pure_closed_form_spectrum(&psi)?).abs());
        }
    }
    Ok(Verdict {
        passed: worst <= OPTIMIZER_TOL,
        detail: format!("60 states, max gap {worst:.3e}"),
    })
}

fn bell_mixture_sweep(cfg: &OptimizerConfig) -> Result<Verdict> {
    let limit = Duration::from_secs(180);
    let start = Instant::now();
    let points = 99;
    let mut worst = 0.0f64;
    let mut branch_mismatch = Vec::new();
    let mut boundary = 0;
    for (params, kernel) in [
        (SkewParams::wyd(0.5)?, MeanKernel::Sld),
        (SkewParams::wyd(0.3)?, MeanKernel::wyd(0.3)?),
        (SkewParams::quantum_fisher(), MeanKernel::wyd(0.7)?),
    ] {
        for k in 0..points {
            let mix = k as f64 / (points - 1) as f64;
            let rho = bell_mixture(mix)?;
            let closed = bell_mixture_closed_forms(mix, &params, &kernel)?;
            let g = allow_unconverged(indicator_basis_gwys(&rho, &params, cfg))?;
            let m = allow_unconverged(indicator_basis_metric(&rho, &kernel, cfg))?;
            let s = allow_unconverged(indicator_spectrum(&rho, &[1.0, -1.0], &params, cfg))?;
            worst = worst
                .max((g.value - closed.basis_gwys).abs())
                .max((m.value - closed.basis_metric).abs())
                .max((s.value - closed.spectrum).abs());
            if closed.branch == MetricBranch::Boundary {
                boundary += 1;
            } else if classify_qubit_basis(m.argmin.frame()) != Some(closed.branch) {
                branch_mismatch.push(format!("{kernel}@{mix:.4}"));
            }
        }
    }
    let elapsed = start.elapsed();
    Ok(Verdict {
        passed: worst <= OPTIMIZER_TOL && branch_mismatch.is_empty() && elapsed <= limit,
        detail: format!(
            "3 parameter sets x {points} points, max gap {worst:.3e}, boundary points {boundary}, branch mismatches {:?}, {}",
            branch_mismatch,
            within(limit, elapsed)
        ),
    })
}

fn info_measure_properties() -> Result<Verdict> {
    let limit = Duration::from_secs(120);
    let start = Instant::now();
    let mut v = properties(&info_suite(200, 2024)?);
    let elapsed = start.elapsed();
    v.passed &= elapsed <= limit;
    v.detail = format!("{} | {}", v.detail, within(limit, elapsed));
    Ok(v)
}

fn indicator_properties(cfg: &OptimizerConfig) -> Result<Verdict> {
    Ok(properties(&[
        classical_quantum_zero(50, 2025, cfg)?,
        local_unitary_invariance(30, 2025, cfg)?,
        cptp_monotonicity(100, 2025, cfg)?,
        random_unitary_monotonicity(100, 2025, cfg)?,
        pure_parameter_independence(30, 2025, cfg)?,
    ]))
}

fn oracle_agreement(cfg: &OptimizerConfig) -> Result<Verdict> {
    let outcomes = oracle_equivalence(30, 2026, cfg, &Default::default())?;
    let agreement = &outcomes[0];
    let mut v = properties(&outcomes);
    v.passed = agreement.passed && agreement.tolerance == ORACLE_TOL;
    Ok(v)
}

fn concurrence_relations(cfg: &OptimizerConfig) -> Result<Verdict> {
    Ok(properties(&[
        basis_concurrence_relation(20, 2027, cfg)?,
        spectrum_concurrence_relation(20, 2027, cfg)?,
    ]))
}

fn consistency_identities() -> Result<Verdict> {
    let mut r = rng(2028);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let d = 2 + k % 3;
        let rho = random_density_with(BipartiteDims::single(d), &mut r);
        let x = random_observable_with(d, &mut r);
        let omega = 0.05 + 0.9 * (k as f64 / 99.0);
        let a = gwys_info(&rho, &x, &SkewParams::wyd(omega)?)?;
        let b = metric_adjusted_info(&rho, &x, &MeanKernel::wyd(omega)?)?;
        let c = gwys_info(&rho, &x, &SkewParams::quantum_fisher())?;
        let e = metric_adjusted_info(&rho, &x, &MeanKernel::Sld)?;
        worst = worst.max((a - b).abs()).max((c - e).abs());
    }
    Ok(Verdict {
        passed: worst <= 1e-9,
        detail: format!("100 pairs, max gap {worst:.3e}"),
    })
}

fn deterministic_reports() -> Result<Verdict> {
    let state = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/cq.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qcorr"))
            .args([
                "compute",
                "--state",
                state.to_str().unwrap(),
                "--indicator",
                "basis-gwys",
            ])
            .args(["--omega", "0.3", "--s", "-2", "--seed", "11"])
            .output()
            .expect("qcorr runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    Ok(Verdict {
        passed: ok,
        detail: format!("{} bytes per report", a.stdout.len()),
    })
}

fn main() {
    let cfg = OptimizerConfig::default();
    type Check<'a> = Box<dyn Fn() -> Result<Verdict> + 'a>;
    let checks: Vec<(&str, Check)> = vec![
        (
            "pure-state basis indicators match closed form",
            Box::new(|| pure_basis_values(&cfg)),
        ),
        (
            "pure-state spectrum indicator matches 2(1 - Tr rho1^2)",
            Box::new(|| pure_spectrum_values(&cfg)),
        ),
        (
            "Bell-mixture sweep matches closed forms and branches",
            Box::new(|| bell_mixture_sweep(&cfg)),
        ),
        ("information-measure property suite", Box::new(info_measure_properties)),
        ("indicator property suite", Box::new(|| indicator_properties(&cfg))),
        ("grid oracle agrees with optimizer", Box::new(|| oracle_agreement(&cfg))),
        (
            "concurrence relations on pure states",
            Box::new(|| concurrence_relations(&cfg)),
        ),
        (
            "gwys and metric-adjusted consistency identities",
            Box::new(consistency_identities),
        ),
        (
            "qcorr compute reports are byte-identical",
            Box::new(deterministic_reports),
        ),
    ];
    let mut failures = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let verdict = check().unwrap_or_else(|e| Verdict {
            passed: false,
            detail: format!("error: {e}"),
        });
        if !verdict.passed {
            failures += 1;
        }
        println!(
            "{} criterion {}: {name} ({}) [{:.1}s]",
            if verdict.passed { "PASS" } else { "FAIL" },
            k + 1,
            verdict.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", checks.len() - failures, checks.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
