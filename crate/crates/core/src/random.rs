//! Seeded samplers for unitaries, states, observables and channels.
//!
//! Every sampler is a pure function of its seed: the generator is a
//! `ChaCha8Rng` seeded from the `u64`, so draws are identical across
//! platforms and runs.

use nalgebra::linalg::QR;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::channel::KrausChannel;
use crate::error::Result;
use crate::state::{
    c, classical_quantum_state, BipartiteDims, CMatrix, CVector, DensityMatrix, Observable, PureState, Subsystem,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// `rows x cols` matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(gaussian(rng), gaussian(rng)).unscale(std::f64::consts::SQRT_2)
    })
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn haar_unitary_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    assert!(d >= 1, "unitary dimension must be positive");
    let z = ginibre(d, d, rng);
    let qr = QR::new(z);
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / rkk.norm()
        } else {
            c(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, k)] *= phase;
        }
    }
    q
}

pub fn haar_random_unitary(d: usize, seed: u64) -> CMatrix {
    haar_unitary_with(d, &mut rng(seed))
}

/// Haar-random pure state on `dims`.
pub fn random_pure_state_with<R: Rng + ?Sized>(dims: BipartiteDims, rng: &mut R) -> PureState {
    let n = dims.total();
    let v = CVector::from_fn(n, |_, _| c(gaussian(rng), gaussian(rng)));
    PureState::normalized(v, dims).expect("Gaussian vector is nonzero")
}

pub fn random_pure_state(dims: BipartiteDims, seed: u64) -> PureState {
    random_pure_state_with(dims, &mut rng(seed))
}

/// Hilbert-Schmidt random state `W W† / Tr(W W†)`.
pub fn random_density_with<R: Rng + ?Sized>(dims: BipartiteDims, rng: &mut R) -> DensityMatrix {
    let n = dims.total();
    let w = ginibre(n, n, rng);
    let m = &w * w.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.unscale(tr), dims).expect("Wishart matrix is a valid state")
}

pub fn random_density(dims: BipartiteDims, seed: u64) -> DensityMatrix {
    random_density_with(dims, &mut rng(seed))
}

/// Random Hermitian observable `(G + G†)/2` with Ginibre `G`.
pub fn random_observable_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Observable {
    let g = ginibre(d, d, rng);
    Observable::new((&g + g.adjoint()).scale(0.5)).expect("symmetrized matrix is Hermitian")
}

/// Uniform point of the probability simplex (Dirichlet(1, ..., 1)).
pub fn dirichlet_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Random classical-quantum state `Σ_l p_l |φ_l><φ_l| ⊗ τ_l` with a Haar
/// basis `{φ_l}` and Hilbert-Schmidt random `τ_l`; `m` components with
/// `1 <= m <= d1`.
pub fn random_classical_quantum_with<R: Rng + ?Sized>(
    dims: BipartiteDims,
    m: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let u = haar_unitary_with(dims.d1(), rng);
    let basis = u.columns(0, m).into_owned();
    let probs = dirichlet_uniform(m, rng);
    let states: Vec<DensityMatrix> = (0..m)
        .map(|_| random_density_with(BipartiteDims::single(dims.d2()), rng))
        .collect();
    classical_quantum_state(&probs, &basis, &states)
}

/// Rescales `ρ` so that its second marginal becomes `1/d2`:
/// `(1 ⊗ ρ2^{-1/2}) ρ (1 ⊗ ρ2^{-1/2}) / d2`. Requires a full-rank marginal.
pub fn with_maximally_mixed_marginal(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let rho2 = rho.partial_trace(Subsystem::Second);
    let (values, vectors) = crate::state::hermitian_eigen(rho2.matrix())?;
    if values.iter().any(|&v| v <= 1e-12) {
        return Err(crate::error::Error::NumericalFailure(
            "second marginal is rank deficient".into(),
        ));
    }
    let inv_sqrt = nalgebra::DVector::from_iterator(values.len(), values.iter().map(|&v| c(v.powf(-0.5), 0.0)));
    let a = &vectors * CMatrix::from_diagonal(&inv_sqrt) * vectors.adjoint();
    let op = CMatrix::identity(dims.d1(), dims.d1()).kronecker(&a);
    let m = (&op * rho.matrix() * op.adjoint()).unscale(dims.d2() as f64);
    DensityMatrix::new(m, dims)
}

/// Random-unitary channel `ρ -> Σ_k p_k U_k ρ U_k†` with Haar `U_k` and
/// Dirichlet-uniform weights.
pub fn random_unitary_channel(d: usize, n_terms: usize, seed: u64) -> Result<KrausChannel> {
    if n_terms == 0 {
        return Err(crate::error::Error::InvalidParams("n_terms must be at least 1".into()));
    }
    let mut r = rng(seed);
    let probs = if n_terms == 1 {
        vec![1.0]
    } else {
        dirichlet_uniform(n_terms, &mut r)
    };
    let ops = probs
        .iter()
        .map(|&p| haar_unitary_with(d, &mut r).scale(p.sqrt()))
        .collect();
    KrausChannel::new(ops)
}

/// General CPTP channel with `n_ops` Kraus operators taken from the blocks of
/// a Haar-random isometry `C^d -> C^{d n_ops}`.
pub fn random_kraus_channel(d: usize, n_ops: usize, seed: u64) -> Result<KrausChannel> {
    if n_ops == 0 {
        return Err(crate::error::Error::InvalidParams("n_ops must be at least 1".into()));
    }
    let u = haar_random_unitary(d * n_ops, seed);
    let ops = (0..n_ops).map(|k| u.view((k * d, 0), (d, d)).into_owned()).collect();
    KrausChannel::new(ops)
}
