//! Nonclassical-correlation indicators.
//!
//! * `𝓘(ρ) = min_{χ} [Σ_l I^ω_s(ρ, |χ_l><χ_l| ⊗ 1)]^{1/2}` over orthonormal
//!   bases of the first subsystem,
//! * `𝓕(ρ)`, the same with `F_f` in place of `I^ω_s`,
//! * `𝓘^χ(ρ) = min_U I^ω_s(ρ, U diag(χ) U† ⊗ 1)` for a fixed nondegenerate
//!   spectrum `χ`.
//!
//! All three vanish exactly on classical-quantum states. The minimization is
//! a multi-start local search (see [`crate::search`]); the square root is
//! taken after minimizing.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{MeanKernel, MonotoneMetric, SkewParams, SkewWeights};
use crate::random::haar_random_unitary;
use crate::search::{descend, FrameKind, FrameLandscape, OptimizerConfig};
use crate::state::{embed_local, hermitian_eigen, CMatrix, DensityMatrix, Observable, PureState, Subsystem};

const UNITARY_TOL: f64 = 1e-10;
/// Smallest admissible gap between entries of a fixed spectrum.
pub const SPECTRUM_GAP: f64 = 1e-9;

fn unitarity_error(u: &CMatrix) -> f64 {
    let n = u.ncols();
    (u.adjoint() * u - CMatrix::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

fn check_unitary(u: &CMatrix) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            found: u.ncols(),
        });
    }
    let err = unitarity_error(u);
    if err > UNITARY_TOL {
        return Err(Error::InvalidParams(format!(
            "frame is not unitary (deviation {err:.3e})"
        )));
    }
    Ok(())
}

/// An orthonormal basis `{|χ_l>}` of the first subsystem, stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalBasis {
    vectors: CMatrix,
}

impl LocalBasis {
    pub fn new(vectors: CMatrix) -> Result<Self> {
        check_unitary(&vectors)?;
        Ok(Self { vectors })
    }

    pub fn computational(d: usize) -> Self {
        Self {
            vectors: CMatrix::identity(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn projectors(&self) -> Vec<Observable> {
        self.vectors
            .column_iter()
            .map(|col| Observable::projector(&col.into_owned()))
            .collect()
    }
}

/// Sorts `χ` descending and checks that neighbouring entries differ.
pub fn check_spectrum(chi: &[f64]) -> Result<Vec<f64>> {
    if chi.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParams("spectrum entries must be finite".into()));
    }
    let mut sorted = chi.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let gap = sorted.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    if gap <= SPECTRUM_GAP {
        return Err(Error::DegenerateSpectrum(gap));
    }
    Ok(sorted)
}

/// `Π_χ = U diag(χ) U†` with `χ` strictly decreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedSpectrumObservable {
    spectrum: Vec<f64>,
    frame: CMatrix,
}

impl FixedSpectrumObservable {
    /// `spectrum` is sorted descending; column `l` of `frame` carries the
    /// `l`-th entry of the sorted spectrum.
    pub fn new(spectrum: &[f64], frame: CMatrix) -> Result<Self> {
        let spectrum = check_spectrum(spectrum)?;
        check_unitary(&frame)?;
        if frame.nrows() != spectrum.len() {
            return Err(Error::DimensionMismatch {
                expected: spectrum.len(),
                found: frame.nrows(),
            });
        }
        Ok(Self { spectrum, frame })
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.spectrum.len()
    }

    pub fn operator(&self) -> Observable {
        let d = Observable::from_real_diagonal(&self.spectrum);
        d.rotated(&self.frame.adjoint())
            .expect("frame dimension matches spectrum")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Argmin {
    Basis(LocalBasis),
    Spectrum(FixedSpectrumObservable),
}

impl Argmin {
    /// The optimal frame: basis vectors or eigenvectors of `Π_χ` as columns.
    pub fn frame(&self) -> &CMatrix {
        match self {
            Argmin::Basis(b) => b.vectors(),
            Argmin::Spectrum(o) => o.frame(),
        }
    }
}

/// Outcome of a multi-start minimization.
///
/// Starts are ordered: the computational basis, the eigenbasis of `ρ1`, then
/// one Haar-random frame per restart. `restart_values` are on the reported
/// scale (square-rooted for the two basis indicators).
#[derive(Clone, Debug)]
pub struct IndicatorResult {
    pub value: f64,
    pub argmin: Argmin,
    pub restart_values: Vec<f64>,
    pub converged: Vec<bool>,
    pub sweeps: Vec<usize>,
    pub best_start: usize,
}

impl IndicatorResult {
    pub fn any_converged(&self) -> bool {
        self.converged.iter().any(|&c| c)
    }
}

/// Treats a non-converged optimization as a usable result.
pub fn allow_unconverged(result: Result<IndicatorResult>) -> Result<IndicatorResult> {
    match result {
        Err(Error::OptimizerDidNotConverge(r)) => Ok(*r),
        other => other,
    }
}

fn basis_projectors(rho: &DensityMatrix, basis: &LocalBasis) -> Result<Vec<Observable>> {
    let dims = rho.dims();
    if basis.dim() != dims.d1() {
        return Err(Error::DimensionMismatch {
            expected: dims.d1(),
            found: basis.dim(),
        });
    }
    Ok(basis.projectors().iter().map(|p| embed_local(p, dims.d2())).collect())
}

fn sum_over_basis(weights: &SkewWeights, projectors: &[Observable]) -> Result<f64> {
    projectors.iter().map(|x| weights.evaluate(x)).sum()
}

/// `Σ_l I^ω_s(ρ, |χ_l><χ_l| ⊗ 1)`, before the square root.
pub fn objective_basis_gwys(rho: &DensityMatrix, basis: &LocalBasis, params: &SkewParams) -> Result<f64> {
    let projectors = basis_projectors(rho, basis)?;
    sum_over_basis(&SkewWeights::gwys(&rho.spectral()?, params), &projectors)
}

/// `Σ_l F_f(ρ, |χ_l><χ_l| ⊗ 1)`, before the square root.
pub fn objective_basis_metric<K: MonotoneMetric + ?Sized>(
    rho: &DensityMatrix,
    basis: &LocalBasis,
    kernel: &K,
) -> Result<f64> {
    let projectors = basis_projectors(rho, basis)?;
    sum_over_basis(&SkewWeights::metric(&rho.spectral()?, kernel), &projectors)
}

/// `I^ω_s(ρ, Π_χ ⊗ 1)`.
pub fn objective_spectrum(
    rho: &DensityMatrix,
    observable: &FixedSpectrumObservable,
    params: &SkewParams,
) -> Result<f64> {
    let dims = rho.dims();
    if observable.dim() != dims.d1() {
        return Err(Error::DimensionMismatch {
            expected: dims.d1(),
            found: observable.dim(),
        });
    }
    SkewWeights::gwys(&rho.spectral()?, params).evaluate(&embed_local(&observable.operator(), dims.d2()))
}

fn require_bipartite(rho: &DensityMatrix) -> Result<()> {
    if rho.dims().is_bipartite() {
        Ok(())
    } else {
        Err(Error::InvalidDims("indicators need a bipartite state".into()))
    }
}

fn starting_frames(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Vec<CMatrix>> {
    let d1 = rho.dims().d1();
    let (_, eigenbasis) = hermitian_eigen(rho.partial_trace(Subsystem::First).matrix())?;
    let mut starts = vec![CMatrix::identity(d1, d1), eigenbasis];
    starts.extend((0..cfg.restarts as u64).map(|r| haar_random_unitary(d1, cfg.seed.wrapping_add(r))));
    Ok(starts)
}

enum Target {
    Basis,
    Spectrum(Vec<f64>),
}

fn minimize(
    rho: &DensityMatrix,
    weights: SkewWeights,
    target: Target,
    cfg: &OptimizerConfig,
) -> Result<IndicatorResult> {
    require_bipartite(rho)?;
    cfg.validate()?;
    let dims = rho.dims();
    let (kind, report): (FrameKind, fn(f64) -> f64) = match &target {
        Target::Basis => (FrameKind::Basis, f64::sqrt),
        Target::Spectrum(chi) => (FrameKind::Spectrum(chi.clone()), |f| f),
    };
    let landscape = FrameLandscape::new(&weights, dims.d1(), dims.d2(), kind);
    let starts = starting_frames(rho, cfg)?;
    let outcomes: Vec<_> = starts.par_iter().map(|u| descend(&landscape, u, cfg, report)).collect();

    // Reported values are recomputed on the explicit operators, so the value
    // at the returned argmin is reproducible by the objective functions.
    let mut restart_values = Vec::with_capacity(outcomes.len());
    let mut argmins = Vec::with_capacity(outcomes.len());
    for out in &outcomes {
        let (value, argmin) = match &target {
            Target::Basis => {
                let basis = LocalBasis { vectors: out.u.clone() };
                let f = sum_over_basis(&weights, &basis_projectors(rho, &basis)?)?;
                (f.sqrt(), Argmin::Basis(basis))
            }
            Target::Spectrum(chi) => {
                let obs = FixedSpectrumObservable {
                    spectrum: chi.clone(),
                    frame: out.u.clone(),
                };
                let f = weights.evaluate(&embed_local(&obs.operator(), dims.d2()))?;
                (f, Argmin::Spectrum(obs))
            }
        };
        restart_values.push(value);
        argmins.push(argmin);
    }
    let mut best_start = 0;
    for (k, &v) in restart_values.iter().enumerate() {
        if v < restart_values[best_start] {
            best_start = k;
        }
    }
    let result = IndicatorResult {
        value: restart_values[best_start],
        argmin: argmins.swap_remove(best_start),
        restart_values,
        converged: outcomes.iter().map(|o| o.converged).collect(),
        sweeps: outcomes.iter().map(|o| o.sweeps).collect(),
        best_start,
    };
    if result.any_converged() {
        Ok(result)
    } else {
        Err(Error::OptimizerDidNotConverge(Box::new(result)))
    }
}

/// `𝓘^ω_s(ρ)`.
pub fn indicator_basis_gwys(
    rho: &DensityMatrix,
    params: &SkewParams,
    cfg: &OptimizerConfig,
) -> Result<IndicatorResult> {
    let weights = SkewWeights::gwys(&rho.spectral()?, params);
    minimize(rho, weights, Target::Basis, cfg)
}

/// `𝓕_f(ρ)` for one of the named kernels.
pub fn indicator_basis_metric(
    rho: &DensityMatrix,
    kernel: &MeanKernel,
    cfg: &OptimizerConfig,
) -> Result<IndicatorResult> {
    indicator_basis_metric_with(rho, kernel, cfg)
}

/// `𝓕_f(ρ)` for any monotone metric.
pub fn indicator_basis_metric_with<K: MonotoneMetric + ?Sized>(
    rho: &DensityMatrix,
    kernel: &K,
    cfg: &OptimizerConfig,
) -> Result<IndicatorResult> {
    let weights = SkewWeights::metric(&rho.spectral()?, kernel);
    minimize(rho, weights, Target::Basis, cfg)
}

/// `𝓘^χ_{ω,s}(ρ)`; `chi` must have `d1` pairwise distinct entries.
pub fn indicator_spectrum(
    rho: &DensityMatrix,
    chi: &[f64],
    params: &SkewParams,
    cfg: &OptimizerConfig,
) -> Result<IndicatorResult> {
    let chi = check_spectrum(chi)?;
    if chi.len() != rho.dims().d1() {
        return Err(Error::DimensionMismatch {
            expected: rho.dims().d1(),
            found: chi.len(),
        });
    }
    let weights = SkewWeights::gwys(&rho.spectral()?, params);
    minimize(rho, weights, Target::Spectrum(chi), cfg)
}

/// `√(1 - Σ c_i⁴)` from the Schmidt coefficients; the value of both basis
/// indicators on a pure state, for every `(ω, s)` and kernel.
pub fn pure_closed_form_basis(psi: &PureState) -> Result<f64> {
    let sum4: f64 = psi.schmidt()?.coefficients.iter().map(|c| c.powi(4)).sum();
    Ok((1.0 - sum4).max(0.0).sqrt())
}

/// `2(1 - Tr ρ1²)`, the spectrum indicator of a pure state with `χ = (1, -1)`.
pub fn pure_closed_form_spectrum(psi: &PureState) -> Result<f64> {
    let d1 = psi.dims().d1();
    if d1 != 2 {
        return Err(Error::RequiresQubitSubsystem(d1));
    }
    let purity = psi.density().partial_trace(Subsystem::First).purity();
    Ok((2.0 * (1.0 - purity)).max(0.0))
}

/// Which local basis minimizes `𝓕_f` on the Bell mixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricBranch {
    /// `{|0>, |1>}`
    Computational,
    /// `{(|0> ± |1>)/√2}`
    Diagonal,
    /// Both bases give `√(1/2)`.
    Boundary,
}

/// Closed forms of the three indicators on `λ|ψ1><ψ1| + (1-λ)|ψ2><ψ2|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellMixtureValues {
    pub basis_gwys: f64,
    pub basis_metric: f64,
    pub spectrum: f64,
    /// `f(0)(2λ-1)² / (λ f((1-λ)/λ))`, compared against 1.
    pub branch_ratio: f64,
    pub branch: MetricBranch,
}

const BRANCH_TIE: f64 = 1e-12;

/// Values for [`crate::state::bell_mixture`] with `χ = (1, -1)`.
pub fn bell_mixture_closed_forms(mix: f64, params: &SkewParams, kernel: &MeanKernel) -> Result<BellMixtureValues> {
    if !(0.0..=1.0).contains(&mix) {
        return Err(Error::InvalidParams(format!("mixing weight {mix} outside [0, 1]")));
    }
    let (a, b) = (mix, 1.0 - mix);
    let spectrum = (1.0 - params.mean(a, b) - params.mean(b, a)).max(0.0);
    let basis_gwys = (0.5 * spectrum).sqrt();

    // λ f((1-λ)/λ) = max(λ,1-λ) f(min/max) by the symmetry of f
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let branch_ratio = kernel.value_at_zero() * (a - b).powi(2) / (hi * kernel.value(lo / hi));
    let (basis_metric, branch) = if (branch_ratio - 1.0).abs() <= BRANCH_TIE {
        (std::f64::consts::FRAC_1_SQRT_2, MetricBranch::Boundary)
    } else if branch_ratio < 1.0 {
        ((0.5 * branch_ratio).sqrt(), MetricBranch::Computational)
    } else {
        (std::f64::consts::FRAC_1_SQRT_2, MetricBranch::Diagonal)
    };
    Ok(BellMixtureValues {
        basis_gwys,
        basis_metric,
        spectrum,
        branch_ratio,
        branch,
    })
}

/// Classifies a qubit basis as computational or diagonal by the weight of
/// its first vector on `|0>`; `None` for anything in between.
pub fn classify_qubit_basis(frame: &CMatrix) -> Option<MetricBranch> {
    if frame.nrows() != 2 {
        return None;
    }
    let a = frame[(0, 0)].norm_sqr();
    if (a - 0.5).abs() > 0.45 {
        Some(MetricBranch::Computational)
    } else if (a - 0.5).abs() < 0.05 {
        Some(MetricBranch::Diagonal)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{bell_mixture, c, BipartiteDims};

    const BELL_MIX_QUARTER: [f64; 3] = [
        0.258_819_045_102_520_7,
        0.353_553_390_593_273_8,
        0.133_974_596_215_561_4,
    ];

    #[test]
    fn spectrum_validation() {
        assert_eq!(check_spectrum(&[-1.0, 1.0]).unwrap(), vec![1.0, -1.0]);
        assert!(matches!(check_spectrum(&[1.0, 1.0]), Err(Error::DegenerateSpectrum(_))));
        assert!(check_spectrum(&[0.0, 1e-10]).is_err());
        let obs = FixedSpectrumObservable::new(&[-1.0, 1.0], CMatrix::identity(2, 2)).unwrap();
        assert_eq!(obs.operator().matrix(), Observable::pauli_z().matrix());
    }

    #[test]
    fn basis_objective_on_bell_mixture() {
        let rho = bell_mixture(0.25).unwrap();
        let p = SkewParams::wyd(0.5).unwrap();
        let f = objective_basis_gwys(&rho, &LocalBasis::computational(2), &p).unwrap();
        assert!((f - BELL_MIX_QUARTER[0].powi(2)).abs() < 1e-12);
    }

    #[test]
    fn classical_quantum_defining_basis_gives_zero() {
        let rho = bell_mixture(0.5).unwrap();
        let basis = LocalBasis::computational(2);
        let p = SkewParams::new(0.3, -2.0).unwrap();
        assert!(objective_basis_gwys(&rho, &basis, &p).unwrap() < 1e-15);
        assert!(objective_basis_metric(&rho, &basis, &MeanKernel::Sld).unwrap() < 1e-15);
    }

    #[test]
    fn product_state_with_schmidt_vector_gives_zero() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let psi = PureState::product_basis(1, 2, dims).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // {|1>, |0>} in swapped order still contains the Schmidt vector
        let swapped = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        for basis in [LocalBasis::computational(2), LocalBasis::new(swapped).unwrap()] {
            let v = objective_basis_gwys(&psi.density(), &basis, &SkewParams::quantum_fisher()).unwrap();
            assert!(v < 1e-15);
        }
        let diag = CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]);
        let v = objective_basis_gwys(
            &psi.density(),
            &LocalBasis::new(diag).unwrap(),
            &SkewParams::quantum_fisher(),
        )
        .unwrap();
        assert!(v > 0.1);
    }

    #[test]
    fn bell_mixture_closed_form_values() {
        let p = SkewParams::wyd(0.5).unwrap();
        let v = bell_mixture_closed_forms(0.25, &p, &MeanKernel::Sld).unwrap();
        assert!((v.basis_gwys - BELL_MIX_QUARTER[0]).abs() < 1e-12);
        assert!((v.basis_metric - BELL_MIX_QUARTER[1]).abs() < 1e-12);
        assert!((v.spectrum - BELL_MIX_QUARTER[2]).abs() < 1e-12);
        assert_eq!(v.branch, MetricBranch::Computational);

        let v = bell_mixture_closed_forms(0.5, &p, &MeanKernel::Sld).unwrap();
        assert_eq!((v.basis_gwys, v.basis_metric, v.spectrum), (0.0, 0.0, 0.0));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        for mix in [0.0, 1.0] {
            let v = bell_mixture_closed_forms(mix, &p, &MeanKernel::Sld).unwrap();
            assert!((v.basis_gwys - h).abs() < 1e-15);
            assert!((v.basis_metric - h).abs() < 1e-15);
            assert!((v.spectrum - 1.0).abs() < 1e-15);
            assert_eq!(v.branch, MetricBranch::Boundary);
        }
        assert!(bell_mixture_closed_forms(1.5, &p, &MeanKernel::Sld).is_err());
    }

    #[test]
    fn branch_ratio_equals_reduced_pair_coefficient() {
        let p = SkewParams::quantum_fisher();
        for kernel in [MeanKernel::Sld, MeanKernel::wyd(0.3).unwrap()] {
            for k in 1..20 {
                let mix = k as f64 / 20.0;
                let v = bell_mixture_closed_forms(mix, &p, &kernel).unwrap();
                let c = kernel.pair_coefficient(mix, 1.0 - mix);
                assert!((v.branch_ratio - c).abs() < 1e-12, "{kernel} {mix}");
                assert!(v.branch_ratio <= 1.0);
            }
        }
    }

    #[test]
    fn pure_closed_forms() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        let bell = PureState::bell();
        assert!((pure_closed_form_basis(&bell).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((pure_closed_form_spectrum(&bell).unwrap() - 1.0).abs() < 1e-14);
        let prod = PureState::product_basis(0, 0, dims).unwrap();
        assert!(pure_closed_form_basis(&prod).unwrap() < 1e-7);
        assert!(pure_closed_form_spectrum(&prod).unwrap() < 1e-14);
        let skewed = PureState::from_schmidt_weights(&[0.9f64.sqrt(), 0.1f64.sqrt()], dims).unwrap();
        assert!((pure_closed_form_basis(&skewed).unwrap() - 0.18f64.sqrt()).abs() < 1e-12);
        assert!((pure_closed_form_spectrum(&skewed).unwrap() - 0.36).abs() < 1e-12);
        let qutrit = PureState::product_basis(0, 0, BipartiteDims::new(3, 2).unwrap()).unwrap();
        assert!(matches!(
            pure_closed_form_spectrum(&qutrit),
            Err(Error::RequiresQubitSubsystem(3))
        ));
    }

    #[test]
    fn optimizer_on_bell_state() {
        let rho = PureState::bell().density();
        let cfg = OptimizerConfig::default();
        let p = SkewParams::wyd(0.5).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((indicator_basis_gwys(&rho, &p, &cfg).unwrap().value - h).abs() < 1e-4);
        assert!((indicator_basis_metric(&rho, &MeanKernel::Sld, &cfg).unwrap().value - h).abs() < 1e-4);
        assert!((indicator_spectrum(&rho, &[1.0, -1.0], &p, &cfg).unwrap().value - 1.0).abs() < 1e-4);
    }

    #[test]
    fn optimizer_on_bell_mixture() {
        let cfg = OptimizerConfig::default();
        let p = SkewParams::wyd(0.5).unwrap();
        let rho = bell_mixture(0.25).unwrap();
        let g = indicator_basis_gwys(&rho, &p, &cfg).unwrap();
        assert!((g.value - BELL_MIX_QUARTER[0]).abs() < 1e-4);
        let m = indicator_basis_metric(&rho, &MeanKernel::Sld, &cfg).unwrap();
        assert!((m.value - BELL_MIX_QUARTER[1]).abs() < 1e-4);
        assert_eq!(
            classify_qubit_basis(m.argmin.frame()),
            Some(MetricBranch::Computational)
        );
        let s = indicator_spectrum(&rho, &[1.0, -1.0], &p, &cfg).unwrap();
        assert!((s.value - BELL_MIX_QUARTER[2]).abs() < 1e-4);

        let cq = bell_mixture(0.5).unwrap();
        assert!(indicator_basis_gwys(&cq, &p, &cfg).unwrap().value < 1e-5);
        assert!(indicator_basis_metric(&cq, &MeanKernel::Sld, &cfg).unwrap().value < 1e-5);
        assert!(indicator_spectrum(&cq, &[1.0, -1.0], &p, &cfg).unwrap().value < 1e-5);
    }

    #[test]
    fn result_bookkeeping() {
        let rho = crate::random::random_density(BipartiteDims::new(2, 3).unwrap(), 12);
        let cfg = OptimizerConfig {
            restarts: 4,
            ..OptimizerConfig::default()
        };
        let r = indicator_basis_gwys(&rho, &SkewParams::quantum_fisher(), &cfg).unwrap();
        assert_eq!(r.restart_values.len(), 6);
        let min = r.restart_values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(r.value, min);
        let Argmin::Basis(basis) = &r.argmin else {
            panic!("basis argmin expected")
        };
        let direct = objective_basis_gwys(&rho, basis, &SkewParams::quantum_fisher())
            .unwrap()
            .sqrt();
        assert!((direct - r.value).abs() < 1e-10);
        let again = indicator_basis_gwys(&rho, &SkewParams::quantum_fisher(), &cfg).unwrap();
        assert_eq!(again.restart_values, r.restart_values);
    }

    #[test]
    fn spectrum_indicator_rejects_bad_input() {
        let rho = PureState::bell().density();
        let p = SkewParams::quantum_fisher();
        let cfg = OptimizerConfig::default();
        assert!(matches!(
            indicator_spectrum(&rho, &[1.0, 1.0], &p, &cfg),
            Err(Error::DegenerateSpectrum(_))
        ));
        assert!(matches!(
            indicator_spectrum(&rho, &[1.0, 0.0, -1.0], &p, &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
