//! Bipartite states, observables and the linear algebra that connects them.
//!
//! Composite indices follow `|i1 i2>  ->  i1 * d2 + i2` everywhere: in
//! [`tensor`](DensityMatrix::tensor), [`partial_trace`](DensityMatrix::partial_trace),
//! [`embed_local`] and the JSON state file.

use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Asymmetry tolerated on input before a matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-8;
/// Trace deviation tolerated on input.
pub const TRACE_TOL: f64 = 1e-8;
/// Eigenvalues in `(-CLIP_TOL, 0)` are clipped to zero; below that the input is rejected.
pub const CLIP_TOL: f64 = 1e-8;
/// Eigenvalues below this are treated as exact zeros by the information measures.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

const EIGEN_MAX_ITERS: usize = 10_000;

/// Which factor of a bipartite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    First,
    Second,
}

/// Dimensions `(d1, d2)` of a bipartite Hilbert space.
///
/// Bipartite dimensions require both factors to be at least 2. States of a
/// single system (reduced states, local states) use `d2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDims {
    d1: usize,
    d2: usize,
}

impl BipartiteDims {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 < 2 || d2 < 2 {
            return Err(Error::InvalidDims(format!(
                "bipartite dimensions must be at least 2, got {d1}x{d2}"
            )));
        }
        Ok(Self { d1, d2 })
    }

    /// A single system of dimension `d`, paired with a trivial second factor.
    pub fn single(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        Self { d1: d, d2: 1 }
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn total(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn is_bipartite(&self) -> bool {
        self.d2 > 1
    }
}

fn max_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigenvalues of a Hermitian matrix in descending order with matching
/// eigenvector columns.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, EIGEN_MAX_ITERS)
        .ok_or_else(|| Error::NumericalFailure("Hermitian eigensolver did not converge".into()))?;
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// A validated density matrix on a (possibly trivial) bipartite space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` as a state on `dims`.
    ///
    /// Small negative eigenvalues (above `-CLIP_TOL`) are clipped and the
    /// spectrum renormalized; the stored matrix is Hermitian with unit trace.
    pub fn new(matrix: CMatrix, dims: BipartiteDims) -> Result<Self> {
        let n = dims.total();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if matrix.nrows() != n {
                    matrix.nrows()
                } else {
                    matrix.ncols()
                },
            });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NumericalFailure("matrix has non-finite entries".into()));
        }
        let asym = max_asymmetry(&matrix);
        if asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized((tr - 1.0).abs()));
        }
        let herm = hermitian_part(&matrix);
        let (values, vectors) = hermitian_eigen(&herm)?;
        let min = values.last().copied().unwrap_or(0.0);
        if min < -CLIP_TOL {
            return Err(Error::NotPositive(min));
        }
        let matrix = if min < 0.0 {
            let clipped: Vec<f64> = values.iter().map(|&v| v.max(0.0)).collect();
            let total: f64 = clipped.iter().sum();
            let diag = DVector::from_iterator(n, clipped.iter().map(|&v| Complex64::new(v / total, 0.0)));
            let m = &vectors * CMatrix::from_diagonal(&diag) * vectors.adjoint();
            hermitian_part(&m)
        } else {
            herm.unscale(tr)
        };
        Ok(Self { dims, matrix })
    }

    /// A state of a single system of dimension `matrix.nrows()`.
    pub fn single(matrix: CMatrix) -> Result<Self> {
        let d = matrix.nrows();
        Self::new(matrix, BipartiteDims::single(d.max(1)))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        Self {
            dims: psi.dims(),
            matrix: a * a.adjoint(),
        }
    }

    /// The maximally mixed state `1/D` on `dims`.
    pub fn maximally_mixed(dims: BipartiteDims) -> Self {
        let n = dims.total();
        Self {
            dims,
            matrix: CMatrix::identity(n, n).unscale(n as f64),
        }
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        spectral_decompose(self)
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Reduced state of the `keep` factor. The result is a single-system state.
    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix {
        let (d1, d2) = (self.dims.d1, self.dims.d2);
        let m = &self.matrix;
        let reduced = match keep {
            Subsystem::First => CMatrix::from_fn(d1, d1, |a, b| (0..d2).map(|k| m[(a * d2 + k, b * d2 + k)]).sum()),
            Subsystem::Second => CMatrix::from_fn(d2, d2, |k, l| (0..d1).map(|a| m[(a * d2 + k, a * d2 + l)]).sum()),
        };
        let d = reduced.nrows();
        DensityMatrix {
            dims: BipartiteDims::single(d),
            matrix: hermitian_part(&reduced),
        }
    }

    /// `self ⊗ other`; the result has dims `(self.dim(), other.dim())`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            dims: BipartiteDims {
                d1: self.dim(),
                d2: other.dim(),
            },
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// `U ρ U†` for a unitary `U` of matching dimension.
    pub fn conjugated(&self, unitary: &CMatrix) -> Result<DensityMatrix> {
        check_dim(self.dim(), unitary.nrows())?;
        check_dim(self.dim(), unitary.ncols())?;
        let m = unitary * &self.matrix * unitary.adjoint();
        Ok(DensityMatrix {
            dims: self.dims,
            matrix: hermitian_part(&m),
        })
    }
}

/// Eigenvalues (descending, clipped, summing to 1) and eigenvectors of a state.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let diag = DVector::from_iterator(n, self.eigenvalues.iter().map(|&v| Complex64::new(v, 0.0)));
        &self.eigenvectors * CMatrix::from_diagonal(&diag) * self.eigenvectors.adjoint()
    }

    /// Number of eigenvalues above [`ZERO_EIGENVALUE`].
    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&v| v >= ZERO_EIGENVALUE).count()
    }
}

pub fn spectral_decompose(rho: &DensityMatrix) -> Result<SpectralDecomposition> {
    let (mut values, vectors) = hermitian_eigen(rho.matrix())?;
    for v in values.iter_mut() {
        *v = v.max(0.0);
    }
    let total: f64 = values.iter().sum();
    if total <= 0.0 {
        return Err(Error::NumericalFailure("spectrum sums to zero".into()));
    }
    for v in values.iter_mut() {
        *v /= total;
    }
    Ok(SpectralDecomposition {
        eigenvalues: values,
        eigenvectors: vectors,
    })
}

/// A Hermitian operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: CMatrix,
}

impl Observable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let asym = max_asymmetry(&matrix);
        if asym > 1e-10 * scale {
            return Err(Error::NotHermitian(asym));
        }
        Ok(Self {
            matrix: hermitian_part(&matrix),
        })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self {
            matrix: CMatrix::from_diagonal(&v),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            matrix: CMatrix::identity(d, d),
        }
    }

    /// Rank-one projector onto the normalized direction of `v`.
    pub fn projector(v: &CVector) -> Self {
        let n = v.norm();
        let u = v.unscale(n);
        Self {
            matrix: &u * u.adjoint(),
        }
    }

    pub fn pauli_x() -> Self {
        Self::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ))
        .expect("Pauli X is Hermitian")
    }

    pub fn pauli_y() -> Self {
        Self::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        ))
        .expect("Pauli Y is Hermitian")
    }

    pub fn pauli_z() -> Self {
        Self::from_real_diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn tensor(&self, other: &Observable) -> Observable {
        Observable {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// `U† X U`.
    pub fn rotated(&self, unitary: &CMatrix) -> Result<Observable> {
        check_dim(self.dim(), unitary.nrows())?;
        let m = unitary.adjoint() * &self.matrix * unitary;
        Ok(Observable {
            matrix: hermitian_part(&m),
        })
    }

    pub fn add(&self, other: &Observable) -> Result<Observable> {
        check_dim(self.dim(), other.dim())?;
        Ok(Observable {
            matrix: &self.matrix + &other.matrix,
        })
    }

    /// Largest entry of the commutator `[ρ, X]` in absolute value.
    pub fn commutator_norm(&self, rho: &DensityMatrix) -> Result<f64> {
        check_dim(self.dim(), rho.dim())?;
        let comm = rho.matrix() * &self.matrix - &self.matrix * rho.matrix();
        Ok(comm.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

/// `X1 ⊗ 1_{d2}`.
pub fn embed_local(x1: &Observable, d2: usize) -> Observable {
    x1.tensor(&Observable::identity(d2))
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A normalized bipartite state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: BipartiteDims,
    amplitudes: CVector,
}

impl PureState {
    /// Accepts amplitudes whose norm is within `1e-8` of one and renormalizes.
    pub fn new(amplitudes: CVector, dims: BipartiteDims) -> Result<Self> {
        check_dim(dims.total(), amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(Self {
            dims,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// Normalizes any nonzero vector.
    pub fn normalized(amplitudes: CVector, dims: BipartiteDims) -> Result<Self> {
        check_dim(dims.total(), amplitudes.len())?;
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(1.0));
        }
        Ok(Self {
            dims,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// Superposition `Σ_k w_k |k k>` of matching computational basis products.
    pub fn from_schmidt_weights(weights: &[f64], dims: BipartiteDims) -> Result<Self> {
        if weights.len() > dims.d1.min(dims.d2) {
            return Err(Error::DimensionMismatch {
                expected: dims.d1.min(dims.d2),
                found: weights.len(),
            });
        }
        let mut amps = CVector::zeros(dims.total());
        for (k, &w) in weights.iter().enumerate() {
            amps[k * dims.d2 + k] = c(w, 0.0);
        }
        Self::new(amps, dims)
    }

    /// `(|00> + |11>)/√2` on two qubits.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_schmidt_weights(&[h, h], BipartiteDims { d1: 2, d2: 2 }).expect("Bell state is normalized")
    }

    /// `|a>|b>` in the computational basis.
    pub fn product_basis(a: usize, b: usize, dims: BipartiteDims) -> Result<Self> {
        if a >= dims.d1 || b >= dims.d2 {
            return Err(Error::InvalidDims(format!(
                "basis index ({a},{b}) outside {}x{}",
                dims.d1, dims.d2
            )));
        }
        let mut amps = CVector::zeros(dims.total());
        amps[a * dims.d2 + b] = c(1.0, 0.0);
        Self::new(amps, dims)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// The `d1 x d2` coefficient matrix `M[i1, i2] = <i1 i2|ψ>`.
    pub fn amplitude_matrix(&self) -> CMatrix {
        let d2 = self.dims.d2;
        CMatrix::from_fn(self.dims.d1, d2, |i, j| self.amplitudes[i * d2 + j])
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    pub fn schmidt(&self) -> Result<SchmidtForm> {
        schmidt(self)
    }

    /// `(U1 ⊗ U2)|ψ>`.
    pub fn local_unitary(&self, u1: &CMatrix, u2: &CMatrix) -> Result<PureState> {
        check_dim(self.dims.d1, u1.nrows())?;
        check_dim(self.dims.d2, u2.nrows())?;
        let m = u1 * self.amplitude_matrix() * u2.transpose();
        let d2 = self.dims.d2;
        let amps = CVector::from_fn(self.dims.total(), |k, _| m[(k / d2, k % d2)]);
        PureState::normalized(amps, self.dims)
    }
}

/// `|ψ> = Σ_k c_k |u_k>|v_k>` with descending `c_k`.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    /// `d1 x r` matrix whose columns are `|u_k>`.
    pub left_vectors: CMatrix,
    /// `d2 x r` matrix whose columns are `|v_k>`.
    pub right_vectors: CMatrix,
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> CVector {
        let (d1, d2) = (self.left_vectors.nrows(), self.right_vectors.nrows());
        let mut out = CVector::zeros(d1 * d2);
        for (k, &ck) in self.coefficients.iter().enumerate() {
            for i in 0..d1 {
                for j in 0..d2 {
                    out[i * d2 + j] += self.left_vectors[(i, k)] * self.right_vectors[(j, k)] * ck;
                }
            }
        }
        out
    }

    /// Number of coefficients above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|&&c| c > tol).count()
    }
}

pub fn schmidt(psi: &PureState) -> Result<SchmidtForm> {
    let m = psi.amplitude_matrix();
    let svd = SVD::try_new(m, true, true, f64::EPSILON, EIGEN_MAX_ITERS)
        .ok_or_else(|| Error::NumericalFailure("SVD did not converge".into()))?;
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let r = svd.singular_values.len();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let coefficients = order.iter().map(|&k| svd.singular_values[k]).collect();
    let left_vectors = CMatrix::from_fn(u.nrows(), r, |i, k| u[(i, order[k])]);
    // M = U Σ V†, so the right Schmidt vectors are the rows of V† read as columns.
    let right_vectors = CMatrix::from_fn(v_t.ncols(), r, |j, k| v_t[(order[k], j)]);
    Ok(SchmidtForm {
        coefficients,
        left_vectors,
        right_vectors,
    })
}

/// `Σ_l p_l |φ_l><φ_l| ⊗ τ_l` for orthonormal columns `φ_l` of `basis`.
pub fn classical_quantum_state(probs: &[f64], basis: &CMatrix, states: &[DensityMatrix]) -> Result<DensityMatrix> {
    let m = probs.len();
    check_dim(m, basis.ncols())?;
    check_dim(m, states.len())?;
    let d1 = basis.nrows();
    if m == 0 || m > d1 {
        return Err(Error::DimensionMismatch { expected: d1, found: m });
    }
    let d2 = states[0].dim();
    for tau in states {
        check_dim(d2, tau.dim())?;
    }
    if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
        return Err(Error::InvalidParams("probabilities must be nonnegative".into()));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized((total - 1.0).abs()));
    }
    let gram = basis.adjoint() * basis;
    let dev = (&gram - CMatrix::identity(m, m))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if dev > 1e-10 {
        return Err(Error::InvalidParams(format!(
            "basis columns are not orthonormal (deviation {dev:.3e})"
        )));
    }
    let mut out = CMatrix::zeros(d1 * d2, d1 * d2);
    for ((&p, phi), tau) in probs.iter().zip(basis.column_iter()).zip(states) {
        let proj = phi * phi.adjoint();
        out += proj.kronecker(tau.matrix()).scale(p);
    }
    DensityMatrix::new(out, BipartiteDims::new(d1, d2)?)
}

/// `λ|ψ1><ψ1| + (1-λ)|ψ2><ψ2|` with `|ψ1,2> = (|00> ± |11>)/√2`.
pub fn bell_mixture(mix: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&mix) {
        return Err(Error::InvalidParams(format!("mixing weight {mix} outside [0, 1]")));
    }
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = c(0.5, 0.0);
    m[(3, 3)] = c(0.5, 0.0);
    m[(0, 3)] = c(mix - 0.5, 0.0);
    m[(3, 0)] = c(mix - 0.5, 0.0);
    DensityMatrix::new(m, BipartiteDims::new(2, 2)?)
}
