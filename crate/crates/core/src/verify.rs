//! Randomized property suites.
//!
//! Every property draws its samples from its own seeded stream, records a
//! signed violation per sample (positive means the property is broken by
//! that much) and passes when the worst violation stays within
//! `tolerance * tolerance_scale`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channel::apply_local_channel;
use crate::entanglement::{concurrence_relation_basis, concurrence_relation_spectrum, i_concurrence_pure};
use crate::error::{Error, Result};
use crate::indicators::{
    allow_unconverged, indicator_basis_gwys, indicator_basis_metric, indicator_spectrum, objective_basis_gwys,
    objective_basis_metric, objective_spectrum, pure_closed_form_basis, pure_closed_form_spectrum, Argmin,
    IndicatorResult, LocalBasis,
};
use crate::measures::{gwys_info, metric_adjusted_info, variance, MeanKernel, SkewParams};
use crate::oracle::{grid_min_basis, grid_min_spectrum, BasisFunctional, BlochGrid};
use crate::random::{
    dirichlet_uniform, haar_unitary_with, random_classical_quantum_with, random_density_with, random_kraus_channel,
    random_observable_with, random_pure_state_with, random_unitary_channel, rng, with_maximally_mixed_marginal,
};
use crate::search::OptimizerConfig;
use crate::state::{embed_local, BipartiteDims, CMatrix, DensityMatrix, Observable, PureState};

/// `s` values of the monotonicity chain, from `0` down to `-∞`.
pub const S_CHAIN: [f64; 6] = [0.0, -0.5, -1.0, -2.0, -8.0, f64::NEG_INFINITY];
pub const OMEGA_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
/// `(ω, s)` pairs used for the indicator checks.
pub const INDICATOR_OMEGAS: [f64; 3] = [0.3, 0.5, 0.7];
pub const INDICATOR_S: [f64; 3] = [0.0, -1.0, f64::NEG_INFINITY];

pub const OPTIMIZER_TOL: f64 = 2e-4;
pub const ZERO_TOL: f64 = 1e-5;
pub const ORACLE_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Info,
    Indicators,
    Entanglement,
    Oracle,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "info" => Ok(Suite::Info),
            "indicators" => Ok(Suite::Indicators),
            "entanglement" => Ok(Suite::Entanglement),
            "oracle" => Ok(Suite::Oracle),
            other => Err(Error::InvalidParams(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::All => "all",
            Suite::Info => "info",
            Suite::Indicators => "indicators",
            Suite::Entanglement => "entanglement",
            Suite::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Multiplies every tolerance; `1.0` is the documented setting.
    pub tolerance_scale: f64,
    pub optimizer: OptimizerConfig,
    pub grid: BlochGrid,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 20,
            seed: 0,
            tolerance_scale: 1.0,
            optimizer: OptimizerConfig::default(),
            grid: BlochGrid::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub suite: Suite,
    pub name: &'static str,
    pub samples: usize,
    pub worst_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
    pub passed: bool,
}

struct Tally {
    suite: Suite,
    name: &'static str,
    tolerance: f64,
    samples: usize,
    worst: f64,
}

impl Tally {
    fn new(suite: Suite, name: &'static str, tolerance: f64) -> Self {
        Self {
            suite,
            name,
            tolerance,
            samples: 0,
            worst: f64::NEG_INFINITY,
        }
    }

    fn record(&mut self, violation: f64) {
        self.samples += 1;
        // NaN counts as a failure
        self.worst = if violation.is_nan() {
            f64::INFINITY
        } else {
            self.worst.max(violation)
        };
    }

    fn finish(self) -> PropertyOutcome {
        let tolerance = self.tolerance;
        PropertyOutcome {
            suite: self.suite,
            name: self.name,
            samples: self.samples,
            worst_violation: self.worst,
            tolerance,
            passed: self.samples > 0 && self.worst <= tolerance,
        }
    }
}

/// Independent stream per property so that suites can be run piecemeal.
fn stream(seed: u64, property: u64) -> ChaCha8Rng {
    rng(seed ^ property.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn pick<T: Copy, R: Rng>(items: &[T], r: &mut R) -> T {
    items[r.random_range(0..items.len())]
}

fn dims(d1: usize, d2: usize) -> BipartiteDims {
    BipartiteDims::new(d1, d2).expect("dimensions are at least 2")
}

const MIXED_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

fn random_params<R: Rng>(r: &mut R) -> SkewParams {
    SkewParams::new(pick(&OMEGA_GRID, r), pick(&S_CHAIN, r)).expect("grid values are valid")
}

fn kernels_for(omega: f64) -> [MeanKernel; 2] {
    [MeanKernel::Wyd { omega }, MeanKernel::Sld]
}

fn value(r: Result<IndicatorResult>) -> Result<f64> {
    Ok(allow_unconverged(r)?.value)
}

// ---------------------------------------------------------------------------
// information measures

pub fn monotone_in_s(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "monotone_in_s", 1e-10);
    let mut r = stream(seed, 1);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_density_with(dims(d1, d2), &mut r);
        let x = random_observable_with(d1 * d2, &mut r);
        let omega = pick(&OMEGA_GRID, &mut r);
        let values = S_CHAIN
            .iter()
            .map(|&s| gwys_info(&rho, &x, &SkewParams::new(omega, s)?))
            .collect::<Result<Vec<f64>>>()?;
        let worst = values.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max);
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn scalar_mean_inequality(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "scalar_mean_inequality", 1e-12);
    let mut r = stream(seed, 2);
    for k in 0..trials {
        let a: f64 = if k % 10 == 0 { 0.0 } else { r.random() };
        let b: f64 = r.random();
        let mut worst = f64::NEG_INFINITY;
        for &omega in &OMEGA_GRID {
            let s_random = -30.0 * r.random::<f64>();
            for s in S_CHAIN.iter().copied().chain([s_random]) {
                let p = SkewParams::new(omega, s)?;
                worst = worst.max(p.mean(a, b) - (omega * a + (1.0 - omega) * b));
            }
        }
        t.record(worst);
    }
    Ok(t.finish())
}

/// Random observable sharing the eigenbasis of `rho`.
fn commuting_observable<R: Rng>(rho: &DensityMatrix, r: &mut R) -> Result<Observable> {
    let spectral = rho.spectral()?;
    let diag: Vec<f64> = (0..rho.dim()).map(|_| r.random_range(-1.0..1.0)).collect();
    Observable::from_real_diagonal(&diag).rotated(&spectral.eigenvectors.adjoint())
}

pub fn nonnegative_and_zero_iff_commuting(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    const ZERO: f64 = 1e-10;
    let mut t = Tally::new(Suite::Info, "nonnegative_and_zero_iff_commuting", 1e-10);
    let mut r = stream(seed, 3);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_density_with(dims(d1, d2), &mut r);
        let p = random_params(&mut r);
        let kernels = kernels_for(p.omega());
        let mut worst = f64::NEG_INFINITY;
        let commuting = commuting_observable(&rho, &mut r)?;
        let generic = random_observable_with(d1 * d2, &mut r);
        for x in [&commuting, &generic] {
            let values = [
                gwys_info(&rho, x, &p)?,
                metric_adjusted_info(&rho, x, &kernels[0])?,
                metric_adjusted_info(&rho, x, &kernels[1])?,
            ];
            let commutes = x.commutator_norm(&rho)? <= ZERO;
            for v in values {
                worst = worst.max(-v);
                if (v <= ZERO) != commutes {
                    // a mismatch fails regardless of magnitude
                    worst = worst.max(1.0);
                }
            }
        }
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn unitary_invariance(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "unitary_invariance", 1e-9);
    let mut r = stream(seed, 4);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let n = d1 * d2;
        let rho = random_density_with(dims(d1, d2), &mut r);
        let x = random_observable_with(n, &mut r);
        let u = haar_unitary_with(n, &mut r);
        let p = random_params(&mut r);
        let lhs = gwys_info(&rho.conjugated(&u)?, &x, &p)?;
        let rhs = gwys_info(&rho, &x.rotated(&u)?, &p)?;
        t.record((lhs - rhs).abs());
    }
    Ok(t.finish())
}

pub fn convex_over_pure_decompositions(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "convex_over_pure_decompositions", 1e-10);
    let mut r = stream(seed, 5);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let dd = dims(d1, d2);
        let m = r.random_range(2..=4);
        let q = dirichlet_uniform(m, &mut r);
        let states: Vec<PureState> = (0..m).map(|_| random_pure_state_with(dd, &mut r)).collect();
        let n = dd.total();
        let mut mix = CMatrix::zeros(n, n);
        for (qj, psi) in q.iter().zip(&states) {
            mix += psi.density().matrix().scale(*qj);
        }
        let rho = DensityMatrix::new(mix, dd)?;
        let x = random_observable_with(n, &mut r);
        // proven range -1 <= s <= 0
        let p = SkewParams::new(pick(&OMEGA_GRID, &mut r), -r.random::<f64>())?;
        let bound: f64 = q
            .iter()
            .zip(&states)
            .map(|(qj, psi)| variance(&psi.density(), &x).map(|v| qj * v))
            .sum::<Result<f64>>()?;
        t.record(gwys_info(&rho, &x, &p)? - bound);
    }
    Ok(t.finish())
}

pub fn metric_convexity(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "metric_convexity", 1e-10);
    let mut r = stream(seed, 6);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let dd = dims(d1, d2);
        let m = r.random_range(2..=3);
        let p = dirichlet_uniform(m, &mut r);
        let states: Vec<DensityMatrix> = (0..m).map(|_| random_density_with(dd, &mut r)).collect();
        let n = dd.total();
        let mut mix = CMatrix::zeros(n, n);
        for (pj, rho) in p.iter().zip(&states) {
            mix += rho.matrix().scale(*pj);
        }
        let rho = DensityMatrix::new(mix, dd)?;
        let x = random_observable_with(n, &mut r);
        let mut worst = f64::NEG_INFINITY;
        for kernel in kernels_for(pick(&OMEGA_GRID, &mut r)) {
            let bound: f64 = p
                .iter()
                .zip(&states)
                .map(|(pj, s)| metric_adjusted_info(s, &x, &kernel).map(|v| pj * v))
                .sum::<Result<f64>>()?;
            worst = worst.max(metric_adjusted_info(&rho, &x, &kernel)? - bound);
        }
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn additivity(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "additivity", 1e-9);
    let mut r = stream(seed, 7);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho1 = random_density_with(BipartiteDims::single(d1), &mut r);
        let rho2 = random_density_with(BipartiteDims::single(d2), &mut r);
        let x1 = random_observable_with(d1, &mut r);
        let x2 = random_observable_with(d2, &mut r);
        let rho = rho1.tensor(&rho2);
        let x = embed_local(&x1, d2).add(&Observable::identity(d1).tensor(&x2))?;
        let p = random_params(&mut r);
        let mut worst = (gwys_info(&rho, &x, &p)? - gwys_info(&rho1, &x1, &p)? - gwys_info(&rho2, &x2, &p)?).abs();
        for kernel in kernels_for(p.omega()) {
            let gap = metric_adjusted_info(&rho, &x, &kernel)?
                - metric_adjusted_info(&rho1, &x1, &kernel)?
                - metric_adjusted_info(&rho2, &x2, &kernel)?;
            worst = worst.max(gap.abs());
        }
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn pure_state_collapse(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "pure_state_collapse", 1e-10);
    let mut r = stream(seed, 8);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_pure_state_with(dims(d1, d2), &mut r).density();
        let x = random_observable_with(d1 * d2, &mut r);
        let v = variance(&rho, &x)?;
        let mut worst = f64::NEG_INFINITY;
        for &omega in &OMEGA_GRID {
            for &s in &S_CHAIN {
                worst = worst.max((gwys_info(&rho, &x, &SkewParams::new(omega, s)?)? - v).abs());
            }
            for kernel in kernels_for(omega) {
                worst = worst.max((metric_adjusted_info(&rho, &x, &kernel)? - v).abs());
            }
        }
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn mixing_order_at_fisher_point(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Info, "mixing_order_at_fisher_point", 1e-10);
    let mut r = stream(seed, 9);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_density_with(dims(d1, d2), &mut r);
        let x = random_observable_with(d1 * d2, &mut r);
        let reference = gwys_info(&rho, &x, &SkewParams::quantum_fisher())?;
        let mut worst = f64::NEG_INFINITY;
        for &omega in &OMEGA_GRID {
            worst = worst.max(gwys_info(&rho, &x, &SkewParams::new(omega, -1.0)?)? - reference);
        }
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn info_suite(trials: usize, seed: u64) -> Result<Vec<PropertyOutcome>> {
    Ok(vec![
        monotone_in_s(trials, seed)?,
        scalar_mean_inequality(trials, seed)?,
        nonnegative_and_zero_iff_commuting(trials, seed)?,
        unitary_invariance(trials, seed)?,
        convex_over_pure_decompositions(trials, seed)?,
        metric_convexity(trials, seed)?,
        additivity(trials, seed)?,
        pure_state_collapse(trials, seed)?,
        mixing_order_at_fisher_point(trials, seed)?,
    ])
}

// ---------------------------------------------------------------------------
// indicators

/// Distinct spectrum of length `d` in `[-1, 1]`.
fn spectrum_for(d: usize) -> Vec<f64> {
    (0..d).map(|k| 1.0 - 2.0 * k as f64 / (d - 1) as f64).collect()
}

/// The three indicators for one parameter choice.
fn all_indicators(rho: &DensityMatrix, p: &SkewParams, kernel: &MeanKernel, cfg: &OptimizerConfig) -> Result<[f64; 3]> {
    let chi = spectrum_for(rho.dims().d1());
    Ok([
        value(indicator_basis_gwys(rho, p, cfg))?,
        value(indicator_basis_metric(rho, kernel, cfg))?,
        value(indicator_spectrum(rho, &chi, p, cfg))?,
    ])
}

pub const CQ_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

/// `per_dims` random classical-quantum states for each of 2x2, 2x3, 3x2.
pub fn classical_quantum_zero(per_dims: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, "classical_quantum_zero", ZERO_TOL);
    let mut r = stream(seed, 10);
    for &(d1, d2) in &CQ_DIMS {
        for _ in 0..per_dims {
            let m = r.random_range(1..=d1);
            let rho = random_classical_quantum_with(dims(d1, d2), m, &mut r)?;
            let p = random_params(&mut r);
            let kernel = pick(&kernels_for(p.omega()), &mut r);
            let v = all_indicators(&rho, &p, &kernel, cfg)?;
            t.record(v.into_iter().fold(f64::NEG_INFINITY, f64::max));
        }
    }
    Ok(t.finish())
}

pub fn bell_state_positive(cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, "bell_state_positive", 0.0);
    let rho = PureState::bell().density();
    for &omega in &INDICATOR_OMEGAS {
        for &s in &INDICATOR_S {
            for kernel in kernels_for(omega) {
                let v = all_indicators(&rho, &SkewParams::new(omega, s)?, &kernel, cfg)?;
                t.record(0.1 - v.into_iter().fold(f64::INFINITY, f64::min));
            }
        }
    }
    Ok(t.finish())
}

fn local_unitary(d1: usize, d2: usize, r: &mut ChaCha8Rng) -> CMatrix {
    haar_unitary_with(d1, r).kronecker(&haar_unitary_with(d2, r))
}

pub fn local_unitary_invariance(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, "local_unitary_invariance", OPTIMIZER_TOL);
    let mut r = stream(seed, 11);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_density_with(dims(d1, d2), &mut r);
        let moved = rho.conjugated(&local_unitary(d1, d2, &mut r))?;
        let p = random_params(&mut r);
        let kernel = pick(&kernels_for(p.omega()), &mut r);
        let a = all_indicators(&rho, &p, &kernel, cfg)?;
        let b = all_indicators(&moved, &p, &kernel, cfg)?;
        t.record(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    Ok(t.finish())
}

/// Indicator cases with proven monotonicity under local channels on the
/// second subsystem.
#[derive(Clone, Copy, Debug)]
pub enum MonotoneCase {
    BasisGwys(SkewParams),
    BasisMetric(MeanKernel),
    Spectrum(SkewParams),
}

impl MonotoneCase {
    pub fn evaluate(&self, rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<f64> {
        match self {
            MonotoneCase::BasisGwys(p) => value(indicator_basis_gwys(rho, p, cfg)),
            MonotoneCase::BasisMetric(k) => value(indicator_basis_metric(rho, k, cfg)),
            MonotoneCase::Spectrum(p) => value(indicator_spectrum(rho, &spectrum_for(rho.dims().d1()), p, cfg)),
        }
    }
}

/// `(ω = 1/2, s = -1)`, `(ω, s = 0)` for a sampled `ω`, and both kernels.
pub fn proven_monotone_cases<R: Rng>(r: &mut R) -> Result<Vec<MonotoneCase>> {
    let omega = pick(&OMEGA_GRID, r);
    let wyd = SkewParams::wyd(omega)?;
    Ok(vec![
        MonotoneCase::BasisGwys(SkewParams::quantum_fisher()),
        MonotoneCase::BasisGwys(wyd),
        MonotoneCase::BasisMetric(MeanKernel::Wyd { omega }),
        MonotoneCase::BasisMetric(MeanKernel::Sld),
        MonotoneCase::Spectrum(SkewParams::quantum_fisher()),
        MonotoneCase::Spectrum(wyd),
    ])
}

const CHANNEL_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

/// Largest `indicator(after) - indicator(before)` over one trial's cases.
fn worst_increase(
    before: &DensityMatrix,
    after: &DensityMatrix,
    cases: &[MonotoneCase],
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for case in cases {
        worst = worst.max(case.evaluate(after, cfg)? - case.evaluate(before, cfg)?);
    }
    Ok(worst)
}

type CaseSource<'a> = dyn FnMut(&mut ChaCha8Rng) -> Result<Vec<MonotoneCase>> + 'a;

fn general_channel_trials(
    name: &'static str,
    trials: usize,
    seed: u64,
    cfg: &OptimizerConfig,
    cases: &mut CaseSource<'_>,
) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, name, OPTIMIZER_TOL);
    let mut r = stream(seed, 12);
    for k in 0..trials {
        let (d1, d2) = CHANNEL_DIMS[k % CHANNEL_DIMS.len()];
        let rho = random_density_with(dims(d1, d2), &mut r);
        let channel = random_kraus_channel(d2, r.random_range(2..=3), r.random())?;
        let out = apply_local_channel(&rho, &channel)?;
        t.record(worst_increase(&rho, &out, &cases(&mut r)?, cfg)?);
    }
    Ok(t.finish())
}

fn random_unitary_trials(
    name: &'static str,
    trials: usize,
    seed: u64,
    cfg: &OptimizerConfig,
    cases: &mut CaseSource<'_>,
) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, name, OPTIMIZER_TOL);
    let mut r = stream(seed, 13);
    for k in 0..trials {
        let (d1, d2) = CHANNEL_DIMS[k % CHANNEL_DIMS.len()];
        let rho = with_maximally_mixed_marginal(&random_density_with(dims(d1, d2), &mut r))?;
        let channel = random_unitary_channel(d2, r.random_range(1..=3), r.random())?;
        let out = apply_local_channel(&rho, &channel)?;
        t.record(worst_increase(&rho, &out, &cases(&mut r)?, cfg)?);
    }
    Ok(t.finish())
}

/// Each trial draws a state and a general CPTP channel on the second subsystem.
pub fn cptp_monotonicity(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    general_channel_trials("cptp_monotonicity", trials, seed, cfg, &mut |r| {
        proven_monotone_cases(r)
    })
}

/// Random-unitary channels on states whose second marginal is maximally mixed.
pub fn random_unitary_monotonicity(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    random_unitary_trials("random_unitary_monotonicity", trials, seed, cfg, &mut |r| {
        proven_monotone_cases(r)
    })
}

/// Both channel experiments for `𝓘^ω_s` and `𝓘^χ` at a parameter point where
/// monotonicity is not established. Outcomes are informational.
pub fn probe_monotonicity(
    params: &SkewParams,
    trials: usize,
    seed: u64,
    cfg: &OptimizerConfig,
) -> Result<[PropertyOutcome; 2]> {
    let cases = [MonotoneCase::BasisGwys(*params), MonotoneCase::Spectrum(*params)];
    Ok([
        general_channel_trials("probe_cptp", trials, seed, cfg, &mut |_| Ok(cases.to_vec()))?,
        random_unitary_trials("probe_random_unitary", trials, seed, cfg, &mut |_| Ok(cases.to_vec()))?,
    ])
}

pub fn pure_parameter_independence(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, "pure_parameter_independence", OPTIMIZER_TOL);
    let mut r = stream(seed, 14);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_pure_state_with(dims(d1, d2), &mut r).density();
        let mut values = Vec::new();
        for &omega in &INDICATOR_OMEGAS {
            for &s in &INDICATOR_S {
                values.push(value(indicator_basis_gwys(&rho, &SkewParams::new(omega, s)?, cfg))?);
            }
        }
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        t.record(hi - lo);
    }
    Ok(t.finish())
}

/// At a fixed basis the basis objective follows the `s` chain of `I^ω_s`.
pub fn fixed_basis_monotone_in_s(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Indicators, "fixed_basis_monotone_in_s", 1e-10);
    let mut r = stream(seed, 15);
    for k in 0..trials {
        let (d1, d2) = MIXED_DIMS[k % MIXED_DIMS.len()];
        let rho = random_density_with(dims(d1, d2), &mut r);
        let basis = LocalBasis::new(haar_unitary_with(d1, &mut r))?;
        let omega = pick(&OMEGA_GRID, &mut r);
        let values = S_CHAIN
            .iter()
            .map(|&s| objective_basis_gwys(&rho, &basis, &SkewParams::new(omega, s)?))
            .collect::<Result<Vec<f64>>>()?;
        t.record(values.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max));
    }
    Ok(t.finish())
}

pub fn indicator_suite(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<Vec<PropertyOutcome>> {
    let per_dims = trials.div_ceil(CQ_DIMS.len()).max(1);
    Ok(vec![
        classical_quantum_zero(per_dims, seed, cfg)?,
        bell_state_positive(cfg)?,
        local_unitary_invariance(trials, seed, cfg)?,
        cptp_monotonicity(trials, seed, cfg)?,
        random_unitary_monotonicity(trials, seed, cfg)?,
        pure_parameter_independence(trials, seed, cfg)?,
        fixed_basis_monotone_in_s(trials, seed)?,
    ])
}

// ---------------------------------------------------------------------------
// entanglement

const PURE_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

pub fn basis_concurrence_relation(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Entanglement, "basis_concurrence_relation", OPTIMIZER_TOL);
    let mut r = stream(seed, 20);
    for k in 0..trials {
        let (d1, d2) = PURE_DIMS[k % PURE_DIMS.len()];
        let psi = random_pure_state_with(dims(d1, d2), &mut r);
        let p = SkewParams::new(pick(&INDICATOR_OMEGAS, &mut r), pick(&INDICATOR_S, &mut r))?;
        let kernel = pick(&kernels_for(p.omega()), &mut r);
        let rel = concurrence_relation_basis(&psi, &p, &kernel, cfg).or_else(|e| match e {
            Error::OptimizerDidNotConverge(_) => concurrence_relation_basis(&psi, &p, &kernel, &relaxed(cfg)),
            other => Err(other),
        })?;
        t.record(rel.max_abs_gap);
    }
    Ok(t.finish())
}

pub fn spectrum_concurrence_relation(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Entanglement, "spectrum_concurrence_relation", OPTIMIZER_TOL);
    let mut r = stream(seed, 21);
    for k in 0..trials {
        let d2 = 2 + k % 3;
        let psi = random_pure_state_with(dims(2, d2), &mut r);
        let p = SkewParams::new(pick(&INDICATOR_OMEGAS, &mut r), pick(&INDICATOR_S, &mut r))?;
        let rel = concurrence_relation_spectrum(&psi, &p, cfg).or_else(|e| match e {
            Error::OptimizerDidNotConverge(_) => concurrence_relation_spectrum(&psi, &p, &relaxed(cfg)),
            other => Err(other),
        })?;
        t.record(rel.gap);
    }
    Ok(t.finish())
}

/// A configuration with a larger sweep budget, used when the first attempt
/// ran out of sweeps on every start.
fn relaxed(cfg: &OptimizerConfig) -> OptimizerConfig {
    OptimizerConfig {
        max_iters: cfg.max_iters * 4,
        ..cfg.clone()
    }
}

pub fn concurrence_local_unitary_invariance(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Entanglement, "concurrence_local_unitary_invariance", 1e-10);
    let mut r = stream(seed, 22);
    for k in 0..trials {
        let (d1, d2) = PURE_DIMS[k % PURE_DIMS.len()];
        let psi = random_pure_state_with(dims(d1, d2), &mut r);
        let moved = psi.local_unitary(&haar_unitary_with(d1, &mut r), &haar_unitary_with(d2, &mut r))?;
        t.record((i_concurrence_pure(&psi)?.value() - i_concurrence_pure(&moved)?.value()).abs());
    }
    Ok(t.finish())
}

/// `C = 0` exactly for Schmidt rank one; checked on random product and
/// random entangled states.
pub fn concurrence_zero_iff_product(trials: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Entanglement, "concurrence_zero_iff_product", 1e-10);
    let mut r = stream(seed, 23);
    for k in 0..trials {
        let (d1, d2) = PURE_DIMS[k % PURE_DIMS.len()];
        let dd = dims(d1, d2);
        let a = random_pure_state_with(BipartiteDims::single(d1), &mut r);
        let b = random_pure_state_with(BipartiteDims::single(d2), &mut r);
        let product = PureState::normalized(a.amplitudes().kronecker(b.amplitudes()), dd)?;
        let entangled = random_pure_state_with(dd, &mut r);
        let mut worst = f64::NEG_INFINITY;
        for psi in [&product, &entangled] {
            let rank_one = psi.schmidt()?.coefficients.get(1).is_none_or(|&c2| c2 <= 1e-10);
            let cval = i_concurrence_pure(psi)?.value();
            let violation = if rank_one {
                cval
            } else if cval > 0.0 {
                0.0
            } else {
                1.0
            };
            worst = worst.max(violation);
        }
        t.record(worst);
    }
    Ok(t.finish())
}

pub fn entanglement_suite(trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<Vec<PropertyOutcome>> {
    Ok(vec![
        basis_concurrence_relation(trials, seed, cfg)?,
        spectrum_concurrence_relation(trials, seed, cfg)?,
        concurrence_local_unitary_invariance(trials, seed)?,
        concurrence_zero_iff_product(trials, seed)?,
    ])
}

// ---------------------------------------------------------------------------
// oracle

/// Optimizer and grid values for the three indicators on one qubit-first state.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OracleComparison {
    pub optimizer: [f64; 3],
    pub oracle: [f64; 3],
    /// Largest `|objective(argmin) - value|` over the three indicators.
    pub argmin_mismatch: f64,
}

pub fn compare_with_oracle(
    rho: &DensityMatrix,
    p: &SkewParams,
    kernel: &MeanKernel,
    cfg: &OptimizerConfig,
    grid: &BlochGrid,
) -> Result<OracleComparison> {
    let chi = [1.0, -1.0];
    let g = allow_unconverged(indicator_basis_gwys(rho, p, cfg))?;
    let m = allow_unconverged(indicator_basis_metric(rho, kernel, cfg))?;
    let s = allow_unconverged(indicator_spectrum(rho, &chi, p, cfg))?;
    let mut mismatch: f64 = 0.0;
    if let Argmin::Basis(b) = &g.argmin {
        mismatch = mismatch.max((objective_basis_gwys(rho, b, p)?.sqrt() - g.value).abs());
    }
    if let Argmin::Basis(b) = &m.argmin {
        mismatch = mismatch.max((objective_basis_metric(rho, b, kernel)?.sqrt() - m.value).abs());
    }
    if let Argmin::Spectrum(o) = &s.argmin {
        mismatch = mismatch.max((objective_spectrum(rho, o, p)? - s.value).abs());
    }
    Ok(OracleComparison {
        optimizer: [g.value, m.value, s.value],
        oracle: [
            grid_min_basis(rho, &BasisFunctional::Gwys(*p), grid)?,
            grid_min_basis(rho, &BasisFunctional::Metric(*kernel), grid)?,
            grid_min_spectrum(rho, &chi, p, grid)?,
        ],
        argmin_mismatch: mismatch,
    })
}

/// Agreement within `ORACLE_TOL`, the optimizer never worse than the grid,
/// and the objective at the returned argmin reproducing the value.
pub fn oracle_equivalence(
    trials: usize,
    seed: u64,
    cfg: &OptimizerConfig,
    grid: &BlochGrid,
) -> Result<[PropertyOutcome; 3]> {
    let mut agree = Tally::new(Suite::Oracle, "oracle_agreement", ORACLE_TOL);
    let mut not_worse = Tally::new(Suite::Oracle, "optimizer_not_above_grid", 1e-10);
    let mut argmin = Tally::new(Suite::Oracle, "argmin_reproduces_value", 1e-10);
    let mut r = stream(seed, 30);
    for k in 0..trials {
        let d2 = 2 + k % 2;
        let rho = random_density_with(dims(2, d2), &mut r);
        let p = random_params(&mut r);
        let kernel = pick(&kernels_for(p.omega()), &mut r);
        let cmp = compare_with_oracle(&rho, &p, &kernel, cfg, grid)?;
        let diffs = cmp.optimizer.iter().zip(&cmp.oracle).map(|(o, g)| o - g);
        agree.record(diffs.clone().map(f64::abs).fold(0.0, f64::max));
        not_worse.record(diffs.fold(f64::NEG_INFINITY, f64::max));
        argmin.record(cmp.argmin_mismatch);
    }
    Ok([agree.finish(), not_worse.finish(), argmin.finish()])
}

pub fn grid_refinement(trials: usize, seed: u64, grid: &BlochGrid) -> Result<PropertyOutcome> {
    let mut t = Tally::new(Suite::Oracle, "grid_refinement_monotone", 1e-12);
    let mut r = stream(seed, 31);
    let fine = grid.refined();
    for k in 0..trials {
        let rho = random_density_with(dims(2, 2 + k % 2), &mut r);
        let p = random_params(&mut r);
        let f = BasisFunctional::Gwys(p);
        let coarse_v = grid_min_basis(&rho, &f, grid)?;
        let fine_v = grid_min_basis(&rho, &f, &fine)?;
        let coarse_s = grid_min_spectrum(&rho, &[1.0, -1.0], &p, grid)?;
        let fine_s = grid_min_spectrum(&rho, &[1.0, -1.0], &p, &fine)?;
        t.record((fine_v - coarse_v).max(fine_s - coarse_s));
    }
    Ok(t.finish())
}

pub fn oracle_suite(trials: usize, seed: u64, cfg: &OptimizerConfig, grid: &BlochGrid) -> Result<Vec<PropertyOutcome>> {
    let mut out = oracle_equivalence(trials, seed, cfg, grid)?.to_vec();
    // the refined grid has four times the points; a few samples suffice
    out.push(grid_refinement(trials.clamp(1, 3), seed, grid)?);
    Ok(out)
}

// ---------------------------------------------------------------------------

/// Runs one suite (or all of them) and rescales the tolerances.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.trials == 0 {
        return Err(Error::InvalidParams("trials must be positive".into()));
    }
    let (n, seed, cfg) = (opts.trials, opts.seed, &opts.optimizer);
    let mut properties = Vec::new();
    if matches!(suite, Suite::All | Suite::Info) {
        properties.extend(info_suite(n, seed)?);
    }
    if matches!(suite, Suite::All | Suite::Indicators) {
        properties.extend(indicator_suite(n, seed, cfg)?);
    }
    if matches!(suite, Suite::All | Suite::Entanglement) {
        properties.extend(entanglement_suite(n, seed, cfg)?);
    }
    if matches!(suite, Suite::All | Suite::Oracle) {
        properties.extend(oracle_suite(n, seed, cfg, &opts.grid)?);
    }
    for p in properties.iter_mut() {
        p.tolerance *= opts.tolerance_scale;
        p.passed = p.samples > 0 && p.worst_violation <= p.tolerance;
    }
    let passed = properties.iter().all(|p| p.passed);
    Ok(VerifyReport {
        suite,
        trials: n,
        seed,
        properties,
        passed,
    })
}

/// Example state used by the closed-form checks: `√0.9|00> + √0.1|11>`.
pub fn skewed_two_qubit_state() -> PureState {
    PureState::from_schmidt_weights(&[0.9f64.sqrt(), 0.1f64.sqrt()], dims(2, 2)).expect("weights are normalized")
}

/// `|closed form - optimizer|` of the basis indicators on a pure state.
pub fn pure_basis_gap(psi: &PureState, p: &SkewParams, kernel: &MeanKernel, cfg: &OptimizerConfig) -> Result<f64> {
    let rho = psi.density();
    let expected = pure_closed_form_basis(psi)?;
    let g = value(indicator_basis_gwys(&rho, p, cfg))?;
    let m = value(indicator_basis_metric(&rho, kernel, cfg))?;
    Ok((g - expected).abs().max((m - expected).abs()))
}

/// `|2(1 - Tr ρ1²) - 𝓘^χ|` with `χ = (1, -1)` on a pure state.
pub fn pure_spectrum_gap(psi: &PureState, p: &SkewParams, cfg: &OptimizerConfig) -> Result<f64> {
    let expected = pure_closed_form_spectrum(psi)?;
    let v = value(indicator_spectrum(&psi.density(), &[1.0, -1.0], p, cfg))?;
    Ok((v - expected).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::All,
            Suite::Info,
            Suite::Indicators,
            Suite::Entanglement,
            Suite::Oracle,
        ] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn info_suite_passes_small() {
        for p in info_suite(12, 3).unwrap() {
            assert!(p.passed, "{p:?}");
        }
    }

    #[test]
    fn zero_tolerance_scale_fails() {
        let opts = VerifyOptions {
            trials: 3,
            tolerance_scale: 0.0,
            ..VerifyOptions::default()
        };
        assert!(!run_suite(Suite::Info, &opts).unwrap().passed);
    }
}
