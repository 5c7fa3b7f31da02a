//! I-concurrence of pure states and its relation to the indicators.
//!
//! On a pure state both basis indicators equal `C/√2` and the square root of
//! the `χ = (1, -1)` spectrum indicator equals `C`. Monotonicity of the
//! indicators under LOCC on average is inherited from that of `C` through the
//! first identity and is not checked separately.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indicators::{indicator_basis_gwys, indicator_basis_metric, indicator_spectrum};
use crate::measures::{MeanKernel, SkewParams};
use crate::search::OptimizerConfig;
use crate::state::PureState;

/// `C(|ψ>) = √(2(1 - Tr ρ1²))`, between 0 and `√(2(d-1)/d)` for the smaller
/// local dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct ConcurrenceValue(f64);

impl ConcurrenceValue {
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Schmidt coefficients at or below this count as zero.
pub const SCHMIDT_RANK_TOL: f64 = 1e-10;

/// Uses `1 - Σp² = 2 Σ_{i<j} p_i p_j` with `p = c²`, which is exactly zero
/// for Schmidt rank one instead of a square-rooted rounding residue.
pub fn i_concurrence_pure(psi: &PureState) -> Result<ConcurrenceValue> {
    let p: Vec<f64> = psi
        .schmidt()?
        .coefficients
        .iter()
        .filter(|&&c| c > SCHMIDT_RANK_TOL)
        .map(|c| c * c)
        .collect();
    let total: f64 = p.iter().sum();
    let mut cross = 0.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            cross += p[i] * p[j];
        }
    }
    Ok(ConcurrenceValue((4.0 * cross / (total * total)).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasisRelation {
    pub lhs_gwys: f64,
    pub lhs_metric: f64,
    /// `C/√2`
    pub rhs: f64,
    pub max_abs_gap: f64,
}

/// Compares optimizer values of `𝓘^ω_s` and `𝓕_f` with `C(|ψ>)/√2`.
pub fn concurrence_relation_basis(
    psi: &PureState,
    params: &SkewParams,
    kernel: &MeanKernel,
    cfg: &OptimizerConfig,
) -> Result<BasisRelation> {
    let rho = psi.density();
    let lhs_gwys = indicator_basis_gwys(&rho, params, cfg)?.value;
    let lhs_metric = indicator_basis_metric(&rho, kernel, cfg)?.value;
    let rhs = i_concurrence_pure(psi)?.value() * std::f64::consts::FRAC_1_SQRT_2;
    Ok(BasisRelation {
        lhs_gwys,
        lhs_metric,
        rhs,
        max_abs_gap: (lhs_gwys - rhs).abs().max((lhs_metric - rhs).abs()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumRelation {
    /// `√(𝓘^χ)` with `χ = (1, -1)`
    pub lhs: f64,
    /// `C`
    pub rhs: f64,
    pub gap: f64,
}

/// Compares `√(𝓘^χ_{ω,s}(|ψ><ψ|))` for `χ = (1, -1)` with `C(|ψ>)`.
pub fn concurrence_relation_spectrum(
    psi: &PureState,
    params: &SkewParams,
    cfg: &OptimizerConfig,
) -> Result<SpectrumRelation> {
    let d1 = psi.dims().d1();
    if d1 != 2 {
        return Err(Error::RequiresQubitSubsystem(d1));
    }
    let lhs = indicator_spectrum(&psi.density(), &[1.0, -1.0], params, cfg)?
        .value
        .sqrt();
    let rhs = i_concurrence_pure(psi)?.value();
    Ok(SpectrumRelation {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}
