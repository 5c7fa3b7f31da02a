//! Skew information and optimization-based nonclassical correlation
//! indicators for bipartite quantum states.
//!
//! * [`state`]: density matrices, observables, pure states, Schmidt forms.
//! * [`measures`]: the mean family `f^ω_s`, generalized Wigner-Yanase skew
//!   information `I^ω_s(ρ, X)` and metric-adjusted skew information `F_f(ρ, X)`.
//! * [`indicators`]: the basis indicators `𝓘^ω_s`, `𝓕_f` and the
//!   fixed-spectrum indicator `𝓘^χ_{ω,s}`, with closed forms.
//! * [`entanglement`]: I-concurrence and its relations to the indicators.
//! * [`oracle`]: exhaustive Bloch-sphere search for qubit first subsystems.
//! * [`verify`]: randomized property suites.
//!
//! Basis ordering of bipartite vectors is `|i1 i2> ↦ i1 * d2 + i2`.

pub mod channel;
pub mod entanglement;
pub mod error;
pub mod indicators;
pub mod io;
pub mod measures;
pub mod oracle;
pub mod random;
pub mod search;
pub mod state;
pub mod verify;

pub use channel::{apply_local_channel, KrausChannel};
pub use error::{Error, Result};
pub use indicators::{
    indicator_basis_gwys, indicator_basis_metric, indicator_spectrum, Argmin, FixedSpectrumObservable, IndicatorResult,
    LocalBasis,
};
pub use measures::{gwys_info, mean_f, metric_adjusted_info, variance, MeanKernel, SkewExponent, SkewParams};
pub use search::OptimizerConfig;
pub use state::{
    bell_mixture, classical_quantum_state, embed_local, schmidt, spectral_decompose, BipartiteDims, CMatrix, CVector,
    DensityMatrix, Observable, PureState, SchmidtForm, SpectralDecomposition, Subsystem,
};
