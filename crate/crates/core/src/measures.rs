//! Skew-information functionals.
//!
//! Both functionals are quadratic forms in the matrix elements of `X` in the
//! eigenbasis of `ρ`:
//!
//! ```text
//! I(ρ, X) = Σ_{i≠j} w_ij |<ψ_i|X|ψ_j>|²
//! ```
//!
//! with pair weights that depend only on the spectrum. [`SkewWeights`]
//! precomputes those weights once per state so that repeated evaluations
//! (optimizers, grid searches) only pay for the basis change of `X`.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::state::{CMatrix, DensityMatrix, Observable, SpectralDecomposition, ZERO_EIGENVALUE};

/// Eigenvalue pairs closer than this get a zero metric-adjusted coefficient.
pub const DEGENERATE_GAP: f64 = 1e-10;
/// Largest negative round-off accepted before a functional is reported as a failure.
pub const NEGATIVE_SLACK: f64 = 1e-10;

const SMALL_EXPONENT: f64 = 1e-3;

/// The exponent `s` of the mean family: a finite `s <= 0` or the `s = -∞` limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SkewExponent {
    Finite(f64),
    NegInfinity,
}

impl fmt::Display for SkewExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewExponent::Finite(s) => write!(f, "{s}"),
            SkewExponent::NegInfinity => write!(f, "-inf"),
        }
    }
}

impl std::str::FromStr for SkewExponent {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        match t.to_ascii_lowercase().as_str() {
            "-inf" | "-infinity" => return Ok(SkewExponent::NegInfinity),
            _ => {}
        }
        let s: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParams(format!("cannot parse s = {text:?}")))?;
        SkewExponent::from_f64(s)
    }
}

impl SkewExponent {
    pub fn from_f64(s: f64) -> Result<Self> {
        if s == f64::NEG_INFINITY {
            Ok(SkewExponent::NegInfinity)
        } else if s.is_nan() || s > 0.0 || s.is_infinite() {
            Err(Error::InvalidParams(format!("s must satisfy s <= 0, got {s}")))
        } else {
            // normalizes -0.0
            Ok(SkewExponent::Finite(if s == 0.0 { 0.0 } else { s }))
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            SkewExponent::Finite(s) => *s,
            SkewExponent::NegInfinity => f64::NEG_INFINITY,
        }
    }
}

/// `(ω, s)` with `0 < ω < 1` and `s ∈ [-∞, 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewParams {
    omega: f64,
    s: SkewExponent,
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("omega must lie in (0, 1), got {omega}")))
    }
}

impl SkewParams {
    /// `s = f64::NEG_INFINITY` selects the `min` branch.
    pub fn new(omega: f64, s: f64) -> Result<Self> {
        Self::with_exponent(omega, SkewExponent::from_f64(s)?)
    }

    pub fn with_exponent(omega: f64, s: SkewExponent) -> Result<Self> {
        check_omega(omega)?;
        if let SkewExponent::Finite(v) = s {
            SkewExponent::from_f64(v)?;
        }
        Ok(Self { omega, s })
    }

    /// Wigner-Yanase-Dyson point `s = 0`.
    pub fn wyd(omega: f64) -> Result<Self> {
        Self::new(omega, 0.0)
    }

    /// `ω = 1/2, s = -1`, the quantum Fisher information point.
    pub fn quantum_fisher() -> Self {
        Self {
            omega: 0.5,
            s: SkewExponent::Finite(-1.0),
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn s(&self) -> SkewExponent {
        self.s
    }

    /// The weighted power mean `f^ω_s(a, b)`; zero when either argument is
    /// below [`ZERO_EIGENVALUE`].
    pub fn mean(&self, a: f64, b: f64) -> f64 {
        if a < ZERO_EIGENVALUE || b < ZERO_EIGENVALUE {
            return 0.0;
        }
        if a == b {
            return a;
        }
        let w = self.omega;
        match self.s {
            SkewExponent::NegInfinity => a.min(b),
            SkewExponent::Finite(0.0) => (w * a.ln() + (1.0 - w) * b.ln()).exp(),
            SkewExponent::Finite(s) if s.abs() < SMALL_EXPONENT => {
                // ln(ω a^s + (1-ω) b^s) without cancellation as s -> 0
                let t = w * (s * a.ln()).exp_m1() + (1.0 - w) * (s * b.ln()).exp_m1();
                (t.ln_1p() / s).exp()
            }
            SkewExponent::Finite(s) => {
                let x = w.ln() + s * a.ln();
                let y = (1.0 - w).ln() + s * b.ln();
                let m = x.max(y);
                let lse = m + ((x - m).exp() + (y - m).exp()).ln();
                (lse / s).exp()
            }
        }
    }
}

impl fmt::Display for SkewParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega={}, s={}", self.omega, self.s)
    }
}

/// `f^ω_s(a, b)` with argument checking.
pub fn mean_f(a: f64, b: f64, params: &SkewParams) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParams(format!(
            "mean arguments must be finite and nonnegative, got ({a}, {b})"
        )));
    }
    Ok(params.mean(a, b))
}

/// An operator monotone `f` with `f(0) > 0` and `x f(1/x) = f(x)`, the index
/// of a metric-adjusted skew information.
pub trait MonotoneMetric: Sync {
    fn value(&self, x: f64) -> f64;

    fn value_at_zero(&self) -> f64 {
        self.value(0.0)
    }

    /// `c(a, b) = f(0) (a - b)² / (b f(a/b))`, the coefficient of
    /// `|X_ij|²/2` in `F_f`.
    ///
    /// `b f(a/b)` is evaluated as `max · f(min/max)`, which equals it by the
    /// symmetry of `f` and stays finite when one eigenvalue vanishes.
    fn pair_coefficient(&self, a: f64, b: f64) -> f64 {
        let a = if a < ZERO_EIGENVALUE { 0.0 } else { a };
        let b = if b < ZERO_EIGENVALUE { 0.0 } else { b };
        if (a - b).abs() < DEGENERATE_GAP {
            return 0.0;
        }
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        self.value_at_zero() * (a - b).powi(2) / (hi * self.value(lo / hi))
    }
}

/// The two metric kernels used throughout: Wigner-Yanase-Dyson and the
/// symmetric logarithmic derivative (quantum Fisher information).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum MeanKernel {
    Wyd { omega: f64 },
    Sld,
}

impl MeanKernel {
    pub fn wyd(omega: f64) -> Result<Self> {
        check_omega(omega)?;
        Ok(MeanKernel::Wyd { omega })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MeanKernel::Wyd { .. } => "wyd",
            MeanKernel::Sld => "sld",
        }
    }
}

impl fmt::Display for MeanKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKernel::Wyd { omega } => write!(f, "wyd(omega={omega})"),
            MeanKernel::Sld => write!(f, "sld"),
        }
    }
}

impl MonotoneMetric for MeanKernel {
    fn value(&self, x: f64) -> f64 {
        match *self {
            MeanKernel::Wyd { omega } => {
                if (x - 1.0).abs() < 1e-6 {
                    // f(1) = 1 and f'(1) = 1/2 for every symmetric kernel
                    return 1.0 + 0.5 * (x - 1.0);
                }
                omega * (1.0 - omega) * (x - 1.0).powi(2) / ((x.powf(omega) - 1.0) * (x.powf(1.0 - omega) - 1.0))
            }
            MeanKernel::Sld => 0.5 * (1.0 + x),
        }
    }

    fn value_at_zero(&self) -> f64 {
        match *self {
            MeanKernel::Wyd { omega } => omega * (1.0 - omega),
            MeanKernel::Sld => 0.5,
        }
    }

    /// Closed-form limits: `(a^ω - b^ω)(a^{1-ω} - b^{1-ω})` for WYD and
    /// `(a - b)² / (a + b)` for SLD.
    fn pair_coefficient(&self, a: f64, b: f64) -> f64 {
        let a = if a < ZERO_EIGENVALUE { 0.0 } else { a };
        let b = if b < ZERO_EIGENVALUE { 0.0 } else { b };
        if (a - b).abs() < DEGENERATE_GAP {
            return 0.0;
        }
        match *self {
            MeanKernel::Wyd { omega } => (a.powf(omega) - b.powf(omega)) * (a.powf(1.0 - omega) - b.powf(1.0 - omega)),
            MeanKernel::Sld => (a - b).powi(2) / (a + b),
        }
    }
}

/// Symmetric pair weights of a skew functional for one state.
#[derive(Clone, Debug)]
pub struct SkewWeights {
    weights: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

fn zeroed(eigenvalues: &[f64]) -> Vec<f64> {
    eigenvalues
        .iter()
        .map(|&v| if v < ZERO_EIGENVALUE { 0.0 } else { v })
        .collect()
}

impl SkewWeights {
    /// Weights `(λ_i + λ_j - f(λ_i, λ_j) - f(λ_j, λ_i)) / 2` of `I^ω_s`.
    pub fn gwys(spectral: &SpectralDecomposition, params: &SkewParams) -> Self {
        let lam = zeroed(&spectral.eigenvalues);
        let n = lam.len();
        let weights = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                let (a, b) = (lam[i], lam[j]);
                0.5 * (a + b - params.mean(a, b) - params.mean(b, a))
            }
        });
        Self {
            weights,
            eigenvalues: lam,
            eigenvectors: spectral.eigenvectors.clone(),
        }
    }

    /// Weights `c(λ_i, λ_j) / 2` of `F_f`.
    pub fn metric<K: MonotoneMetric + ?Sized>(spectral: &SpectralDecomposition, kernel: &K) -> Self {
        let lam = zeroed(&spectral.eigenvalues);
        let n = lam.len();
        let weights = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                0.5 * kernel.pair_coefficient(lam[i], lam[j])
            }
        });
        Self {
            weights,
            eigenvalues: lam,
            eigenvectors: spectral.eigenvectors.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// Pairs `i < j` with nonzero weight, each carrying `2 w_ij`.
    pub fn active_pairs(&self) -> Vec<(usize, usize, f64)> {
        let n = self.dim();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = self.weights[(i, j)];
                if w != 0.0 {
                    pairs.push((i, j, 2.0 * w));
                }
            }
        }
        pairs
    }

    /// `Σ w_ij |Y_ij|²` for `Y = Ψ† X Ψ` already in the eigenbasis.
    pub fn contract(&self, rotated: &CMatrix) -> f64 {
        let n = self.dim();
        let mut total = 0.0;
        for j in 0..n {
            for i in 0..n {
                let w = self.weights[(i, j)];
                if w != 0.0 {
                    total += w * rotated[(i, j)].norm_sqr();
                }
            }
        }
        total
    }

    pub fn evaluate(&self, x: &Observable) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        let rotated = self.eigenvectors.adjoint() * x.matrix() * &self.eigenvectors;
        finalize(self.contract(&rotated))
    }
}

/// Clamps round-off negatives to zero; larger negatives signal a failure.
pub(crate) fn finalize(value: f64) -> Result<f64> {
    if value < -NEGATIVE_SLACK || value.is_nan() {
        Err(Error::NumericalFailure(format!(
            "skew functional evaluated to {value:.3e}"
        )))
    } else {
        Ok(value.max(0.0))
    }
}

/// Generalized Wigner-Yanase skew information `I^ω_s(ρ, X)`.
pub fn gwys_info(rho: &DensityMatrix, x: &Observable, params: &SkewParams) -> Result<f64> {
    check_dim(rho.dim(), x.dim())?;
    SkewWeights::gwys(&rho.spectral()?, params).evaluate(x)
}

/// Metric-adjusted skew information `F_f(ρ, X)` for one of the named kernels.
pub fn metric_adjusted_info(rho: &DensityMatrix, x: &Observable, kernel: &MeanKernel) -> Result<f64> {
    metric_adjusted_info_with(rho, x, kernel)
}

/// `F_f(ρ, X)` for any monotone metric.
pub fn metric_adjusted_info_with<K: MonotoneMetric + ?Sized>(
    rho: &DensityMatrix,
    x: &Observable,
    kernel: &K,
) -> Result<f64> {
    check_dim(rho.dim(), x.dim())?;
    SkewWeights::metric(&rho.spectral()?, kernel).evaluate(x)
}

/// `Tr(ρ X²) - Tr(ρ X)²`.
pub fn variance(rho: &DensityMatrix, x: &Observable) -> Result<f64> {
    check_dim(rho.dim(), x.dim())?;
    let rx = rho.matrix() * x.matrix();
    let mean = rx.trace().re;
    let second = (&rx * x.matrix()).trace().re;
    finalize(second - mean * mean)
}
