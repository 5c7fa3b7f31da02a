use crate::error::{check_dim, Error, Result};
use crate::state::{c, CMatrix, DensityMatrix};

/// A CPTP map on the second subsystem given by Kraus operators `K_k`
/// with `Σ K_k† K_k = 1`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<CMatrix>,
}

const COMPLETENESS_TOL: f64 = 1e-9;

impl KrausChannel {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::InvalidParams("channel needs at least one Kraus operator".into()))?;
        let d = first.nrows();
        for k in &operators {
            check_dim(d, k.nrows())?;
            check_dim(d, k.ncols())?;
        }
        let channel = Self { operators };
        let err = channel.completeness_error();
        if err > COMPLETENESS_TOL {
            return Err(Error::InvalidParams(format!(
                "Kraus operators are not trace preserving (deviation {err:.3e})"
            )));
        }
        Ok(channel)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            operators: vec![CMatrix::identity(d, d)],
        }
    }

    /// `ρ -> Tr(ρ) 1/d`, with Kraus operators `|i><j| / √d`.
    pub fn fully_depolarizing(d: usize) -> Self {
        let scale = 1.0 / (d as f64).sqrt();
        let mut operators = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut k = CMatrix::zeros(d, d);
                k[(i, j)] = c(scale, 0.0);
                operators.push(k);
            }
        }
        Self { operators }
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    /// Largest entry of `Σ K_k† K_k - 1`.
    pub fn completeness_error(&self) -> f64 {
        let d = self.dim();
        let sum = self
            .operators
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, k| acc + k.adjoint() * k);
        (sum - CMatrix::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `ρ -> Σ K ρ K†` on a single system.
    pub fn apply_single(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        check_dim(self.dim(), rho.dim())?;
        let out = self
            .operators
            .iter()
            .fold(CMatrix::zeros(rho.dim(), rho.dim()), |acc, k| {
                acc + k * rho.matrix() * k.adjoint()
            });
        DensityMatrix::new(out, rho.dims())
    }
}

/// `(I_1 ⊗ ε_2)(ρ) = Σ_k (1 ⊗ K_k) ρ (1 ⊗ K_k)†`.
pub fn apply_local_channel(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    let dims = rho.dims();
    check_dim(dims.d2(), channel.dim())?;
    let id = CMatrix::identity(dims.d1(), dims.d1());
    let n = dims.total();
    let out = channel.operators.iter().fold(CMatrix::zeros(n, n), |acc, k| {
        let lifted = id.kronecker(k);
        acc + &lifted * rho.matrix() * lifted.adjoint()
    });
    DensityMatrix::new(out, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_kraus_channel, random_unitary_channel, with_maximally_mixed_marginal};
    use crate::state::{BipartiteDims, PureState, Subsystem};

    fn max_dev(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_channel_leaves_state_unchanged() {
        let rho = random_density(BipartiteDims::new(2, 3).unwrap(), 4);
        let out = apply_local_channel(&rho, &KrausChannel::identity(3)).unwrap();
        assert!(max_dev(out.matrix(), rho.matrix()) < 1e-14);
    }

    #[test]
    fn full_depolarization_of_bell_state() {
        let rho = PureState::bell().density();
        let out = apply_local_channel(&rho, &KrausChannel::fully_depolarizing(2)).unwrap();
        assert!(max_dev(out.matrix(), &CMatrix::identity(4, 4).unscale(4.0)) < 1e-14);
    }

    #[test]
    fn rejects_mismatched_channel() {
        let rho = random_density(BipartiteDims::new(2, 2).unwrap(), 1);
        assert!(apply_local_channel(&rho, &KrausChannel::identity(3)).is_err());
        let bad = vec![CMatrix::identity(2, 2).scale(0.5)];
        assert!(KrausChannel::new(bad).is_err());
    }

    #[test]
    fn unital_channel_keeps_maximally_mixed_state() {
        let ch = random_unitary_channel(3, 4, 8).unwrap();
        let mm = crate::state::DensityMatrix::maximally_mixed(BipartiteDims::single(3));
        let out = ch.apply_single(&mm).unwrap();
        assert!(max_dev(out.matrix(), mm.matrix()) < 1e-12);
    }

    #[test]
    fn random_unitary_channels_preserve_maximally_mixed_marginal() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        for seed in 0..10 {
            let rho = with_maximally_mixed_marginal(&random_density(dims, seed)).unwrap();
            let out = apply_local_channel(&rho, &random_unitary_channel(3, 3, 100 + seed).unwrap()).unwrap();
            let r2 = out.partial_trace(Subsystem::Second);
            assert!(max_dev(r2.matrix(), &CMatrix::identity(3, 3).unscale(3.0)) < 1e-10);
        }
    }

    #[test]
    fn channels_preserve_trace_and_hermiticity() {
        let dims = BipartiteDims::new(3, 2).unwrap();
        for seed in 0..10 {
            let rho = random_density(dims, seed);
            let ch = random_kraus_channel(2, 3, 50 + seed).unwrap();
            let raw = channel_output_raw(&rho, &ch);
            assert!((raw.trace().re - 1.0).abs() < 1e-9);
            assert!(max_dev(&raw, &raw.adjoint()) < 1e-10);
        }
    }

    fn channel_output_raw(rho: &DensityMatrix, ch: &KrausChannel) -> CMatrix {
        let d1 = rho.dims().d1();
        let n = rho.dim();
        ch.operators().iter().fold(CMatrix::zeros(n, n), |acc, k| {
            let lifted = CMatrix::identity(d1, d1).kronecker(k);
            acc + &lifted * rho.matrix() * lifted.adjoint()
        })
    }
}
