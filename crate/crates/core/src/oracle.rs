//! Exhaustive grid minimization for a qubit first subsystem.
//!
//! A qubit basis is fixed by one Bloch direction:
//! `|χ1> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`,
//! `|χ2> = -e^{-iφ} sin(θ/2)|0> + cos(θ/2)|1>`.
//! The grid has `θ_i = π i/(n_θ - 1)` (poles included) and
//! `φ_k = 2π k/n_φ`. Each point evaluates the projectors `|χ_l><χ_l| ⊗ 1`
//! in the eigenbasis of `ρ`; this shares nothing with the frame search
//! beyond the pair weights.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::indicators::check_spectrum;
use crate::measures::{MeanKernel, SkewParams, SkewWeights};
use crate::state::{c, embed_local, CMatrix, DensityMatrix, Observable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlochGrid {
    n_theta: usize,
    n_phi: usize,
}

impl Default for BlochGrid {
    fn default() -> Self {
        Self {
            n_theta: 400,
            n_phi: 800,
        }
    }
}

impl BlochGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 2 {
            return Err(Error::InvalidParams("grid needs at least 2 points per axis".into()));
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Halves the spacing on both axes; every original point is kept.
    pub fn refined(&self) -> Self {
        Self {
            n_theta: 2 * self.n_theta - 1,
            n_phi: 2 * self.n_phi,
        }
    }

    pub fn angles(&self, i: usize, k: usize) -> (f64, f64) {
        let theta = std::f64::consts::PI * i as f64 / (self.n_theta - 1) as f64;
        let phi = 2.0 * std::f64::consts::PI * k as f64 / self.n_phi as f64;
        (theta, phi)
    }
}

/// The basis `(|χ1>, |χ2>)` as columns.
pub fn bloch_basis(theta: f64, phi: f64) -> CMatrix {
    let (s, co) = (0.5 * theta).sin_cos();
    let e = c(phi.cos(), phi.sin());
    CMatrix::from_row_slice(2, 2, &[c(co, 0.0), -e.conj() * s, e * s, c(co, 0.0)])
}

#[derive(Clone, Copy, Debug)]
pub enum BasisFunctional {
    Gwys(SkewParams),
    Metric(MeanKernel),
}

/// Evaluates `weights` on `P1 = (1 + n·σ)/2` and `P2 = 1 - P1` via the
/// rotated Pauli operators `S_a = Ψ† (σ_a ⊗ 1) Ψ`.
struct QubitProbe {
    weights: SkewWeights,
    identity: CMatrix,
    paulis: [CMatrix; 3],
}

impl QubitProbe {
    fn new(rho: &DensityMatrix, weights: SkewWeights) -> Self {
        let d2 = rho.dims().d2();
        let psi = weights.eigenvectors().clone();
        let rotate = |x: Observable| psi.adjoint() * embed_local(&x, d2).matrix() * &psi;
        let paulis = [
            rotate(Observable::pauli_x()),
            rotate(Observable::pauli_y()),
            rotate(Observable::pauli_z()),
        ];
        let n = psi.ncols();
        Self {
            weights,
            identity: CMatrix::identity(n, n),
            paulis,
        }
    }

    /// `(I(P1), I(P2))` for the Bloch vector of `|χ1>`.
    fn projector_values(&self, theta: f64, phi: f64) -> (f64, f64) {
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let bloch = &self.paulis[0] * c(n[0], 0.0) + &self.paulis[1] * c(n[1], 0.0) + &self.paulis[2] * c(n[2], 0.0);
        let p1 = (&self.identity + &bloch) * c(0.5, 0.0);
        let p2 = (&self.identity - &bloch) * c(0.5, 0.0);
        (self.weights.contract(&p1), self.weights.contract(&p2))
    }
}

fn require_qubit(rho: &DensityMatrix) -> Result<()> {
    let d1 = rho.dims().d1();
    if d1 != 2 || !rho.dims().is_bipartite() {
        return Err(Error::RequiresQubitSubsystem(d1));
    }
    Ok(())
}

/// Global grid minimum with ties broken by the smallest `(i, k)`.
fn grid_min(grid: &BlochGrid, eval: impl Fn(f64, f64) -> f64 + Sync) -> (f64, usize, usize) {
    let rows: Vec<(f64, usize, usize)> = (0..grid.n_theta)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::INFINITY, i, 0);
            for k in 0..grid.n_phi {
                let (theta, phi) = grid.angles(i, k);
                let v = eval(theta, phi);
                if v < best.0 {
                    best = (v, i, k);
                }
            }
            best
        })
        .collect();
    rows.into_iter()
        .fold((f64::INFINITY, 0, 0), |acc, r| if r.0 < acc.0 { r } else { acc })
}

/// Grid minimum of the basis objective, square-rooted.
pub fn grid_min_basis(rho: &DensityMatrix, functional: &BasisFunctional, grid: &BlochGrid) -> Result<f64> {
    require_qubit(rho)?;
    let spectral = rho.spectral()?;
    let weights = match functional {
        BasisFunctional::Gwys(p) => SkewWeights::gwys(&spectral, p),
        BasisFunctional::Metric(k) => SkewWeights::metric(&spectral, k),
    };
    let probe = QubitProbe::new(rho, weights);
    let (best, _, _) = grid_min(grid, |theta, phi| {
        let (a, b) = probe.projector_values(theta, phi);
        a + b
    });
    Ok(best.max(0.0).sqrt())
}

/// Grid minimum of `I^ω_s(ρ, Π_χ ⊗ 1)` over `Π_χ = χ1|χ1><χ1| + χ2|χ2><χ2|`.
pub fn grid_min_spectrum(rho: &DensityMatrix, chi: &[f64], params: &SkewParams, grid: &BlochGrid) -> Result<f64> {
    require_qubit(rho)?;
    let chi = check_spectrum(chi)?;
    if chi.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: chi.len(),
        });
    }
    let probe = QubitProbe::new(rho, SkewWeights::gwys(&rho.spectral()?, params));
    let (x1, x2) = (c(chi[0], 0.0), c(chi[1], 0.0));
    let (best, _, _) = grid_min(grid, |theta, phi| {
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let bloch = &probe.paulis[0] * c(n[0], 0.0) + &probe.paulis[1] * c(n[1], 0.0) + &probe.paulis[2] * c(n[2], 0.0);
        let p1 = (&probe.identity + &bloch) * c(0.5, 0.0);
        let p2 = (&probe.identity - &bloch) * c(0.5, 0.0);
        probe.weights.contract(&(p1 * x1 + p2 * x2))
    });
    Ok(best.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicators::{objective_basis_gwys, LocalBasis};
    use crate::random::random_density;
    use crate::state::{bell_mixture, BipartiteDims, PureState};

    fn coarse() -> BlochGrid {
        BlochGrid::new(101, 200).unwrap()
    }

    #[test]
    fn bloch_basis_is_unitary_with_expected_columns() {
        let u = bloch_basis(0.7, 2.1);
        let dev = (u.adjoint() * &u - CMatrix::identity(2, 2))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-15);
        assert!((u[(1, 0)] - c(2.1f64.cos(), 2.1f64.sin()) * 0.35f64.sin()).norm() < 1e-15);
    }

    #[test]
    fn probe_matches_explicit_projectors() {
        let rho = random_density(BipartiteDims::new(2, 3).unwrap(), 21);
        let p = SkewParams::new(0.35, -1.7).unwrap();
        let probe = QubitProbe::new(&rho, SkewWeights::gwys(&rho.spectral().unwrap(), &p));
        let (theta, phi) = (1.1, 4.0);
        let (a, b) = probe.projector_values(theta, phi);
        let basis = LocalBasis::new(bloch_basis(theta, phi)).unwrap();
        let direct = objective_basis_gwys(&rho, &basis, &p).unwrap();
        assert!((a + b - direct).abs() < 1e-12);
    }

    #[test]
    fn named_states() {
        let grid = BlochGrid::default();
        let p = SkewParams::wyd(0.5).unwrap();
        let rho = bell_mixture(0.25).unwrap();
        assert!((grid_min_basis(&rho, &BasisFunctional::Gwys(p), &grid).unwrap() - 0.258_819_0).abs() < 1e-3);
        assert!((grid_min_spectrum(&rho, &[1.0, -1.0], &p, &grid).unwrap() - 0.133_974_6).abs() < 1e-3);
        let bell = PureState::bell().density();
        assert!(
            (grid_min_basis(&bell, &BasisFunctional::Gwys(p), &grid).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs()
                < 1e-3
        );
        assert!((grid_min_spectrum(&bell, &[1.0, -1.0], &p, &grid).unwrap() - 1.0).abs() < 1e-3);
        let cq = bell_mixture(0.5).unwrap();
        assert!(grid_min_basis(&cq, &BasisFunctional::Metric(MeanKernel::Sld), &grid).unwrap() <= 1e-6);
        let mm = DensityMatrix::maximally_mixed(BipartiteDims::new(2, 2).unwrap());
        assert!(grid_min_spectrum(&mm, &[1.0, -1.0], &p, &grid).unwrap() <= 1e-6);
    }

    #[test]
    fn refinement_never_increases_minimum() {
        let grid = coarse();
        assert_eq!(grid.refined(), BlochGrid::new(201, 400).unwrap());
        let p = SkewParams::quantum_fisher();
        for seed in 0..3 {
            let rho = random_density(BipartiteDims::new(2, 2).unwrap(), seed);
            let f = BasisFunctional::Gwys(p);
            let a = grid_min_basis(&rho, &f, &grid).unwrap();
            let b = grid_min_basis(&rho, &f, &grid.refined()).unwrap();
            assert!(b <= a + 1e-12);
        }
    }

    #[test]
    fn rejects_non_qubit_and_degenerate_input() {
        let rho = random_density(BipartiteDims::new(3, 2).unwrap(), 0);
        let p = SkewParams::quantum_fisher();
        assert!(matches!(
            grid_min_basis(&rho, &BasisFunctional::Gwys(p), &coarse()),
            Err(Error::RequiresQubitSubsystem(3))
        ));
        let rho = random_density(BipartiteDims::new(2, 2).unwrap(), 0);
        assert!(matches!(
            grid_min_spectrum(&rho, &[0.5, 0.5], &p, &coarse()),
            Err(Error::DegenerateSpectrum(_))
        ));
        assert!(BlochGrid::new(1, 10).is_err());
    }
}
