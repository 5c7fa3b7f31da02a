//! Worked examples through the public API.

use num_complex::Complex64;
use qcorr_core::entanglement::{concurrence_relation_basis, concurrence_relation_spectrum, i_concurrence_pure};
use qcorr_core::indicators::{
    bell_mixture_closed_forms, classify_qubit_basis, objective_basis_gwys, pure_closed_form_basis,
    pure_closed_form_spectrum, MetricBranch,
};
use qcorr_core::oracle::{grid_min_basis, grid_min_spectrum, BasisFunctional, BlochGrid};
use qcorr_core::*;

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// `1 - 2√(3/16)`, the spectrum indicator of the mixture at weight 1/4.
const QUARTER_SPECTRUM: f64 = 0.1339745962155614;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn qubit(diag: [f64; 2]) -> DensityMatrix {
    DensityMatrix::single(CMatrix::from_diagonal(&CVector::from_iterator(
        2,
        diag.iter().map(|&x| Complex64::new(x, 0.0)),
    )))
    .unwrap()
}

fn plus() -> DensityMatrix {
    let h = Complex64::new(SQRT_HALF, 0.0);
    PureState::new(CVector::from_vec(vec![h, h]), BipartiteDims::single(2))
        .unwrap()
        .density()
}

fn skewed() -> PureState {
    PureState::from_schmidt_weights(&[0.9f64.sqrt(), 0.1f64.sqrt()], BipartiteDims::new(2, 2).unwrap()).unwrap()
}

#[test]
fn mean_function_branches() {
    let m = |a, b, w, s| mean_f(a, b, &SkewParams::new(w, s).unwrap()).unwrap();
    assert_eq!(m(0.5, 0.5, 0.3, -2.0), 0.5);
    assert_eq!(m(0.7, 0.0, 0.5, -1.0), 0.0);
    assert!(close(m(0.25, 1.0, 0.5, 0.0), 0.5, 1e-15));
    assert_eq!(m(0.3, 0.7, 0.5, f64::NEG_INFINITY), 0.3);
}

#[test]
fn skew_information_examples() {
    let z = Observable::pauli_z();
    let x = Observable::pauli_x();
    for (w, s) in [(0.5, 0.0), (0.2, -1.0), (0.8, f64::NEG_INFINITY)] {
        let p = SkewParams::new(w, s).unwrap();
        assert!(gwys_info(&qubit([0.6, 0.4]), &z, &p).unwrap().abs() < 1e-15);
        assert!(close(gwys_info(&plus(), &z, &p).unwrap(), 1.0, 1e-12));
    }
    let p = SkewParams::wyd(0.5).unwrap();
    assert!(close(
        gwys_info(&qubit([0.75, 0.25]), &x, &p).unwrap(),
        QUARTER_SPECTRUM,
        1e-12
    ));
    for k in [MeanKernel::Sld, MeanKernel::wyd(0.4).unwrap()] {
        assert!(metric_adjusted_info(&qubit([0.6, 0.4]), &z, &k).unwrap().abs() < 1e-15);
        assert!(close(metric_adjusted_info(&plus(), &z, &k).unwrap(), 1.0, 1e-12));
    }
    assert_eq!(variance(&qubit([1.0, 0.0]), &z).unwrap(), 0.0);
    assert!(close(variance(&plus(), &z).unwrap(), 1.0, 1e-15));
    assert!(close(variance(&qubit([0.5, 0.5]), &z).unwrap(), 1.0, 1e-15));
}

#[test]
fn mixture_objective_in_computational_basis() {
    let rho = bell_mixture(0.25).unwrap();
    let p = SkewParams::wyd(0.5).unwrap();
    let v = objective_basis_gwys(&rho, &LocalBasis::computational(2), &p).unwrap();
    assert!(close(v, QUARTER_SPECTRUM / 2.0, 1e-12));
}

#[test]
fn indicator_examples() {
    let cfg = OptimizerConfig::default();
    let p = SkewParams::wyd(0.5).unwrap();
    let bell = PureState::bell().density();
    assert!(close(
        indicator_basis_gwys(&bell, &p, &cfg).unwrap().value,
        SQRT_HALF,
        1e-4
    ));
    assert!(close(
        indicator_basis_metric(&bell, &MeanKernel::Sld, &cfg).unwrap().value,
        SQRT_HALF,
        1e-4
    ));
    assert!(close(
        indicator_spectrum(&bell, &[1.0, -1.0], &p, &cfg).unwrap().value,
        1.0,
        1e-4
    ));

    let half = bell_mixture(0.5).unwrap();
    assert!(indicator_basis_gwys(&half, &p, &cfg).unwrap().value <= 1e-5);
    assert!(indicator_basis_metric(&half, &MeanKernel::Sld, &cfg).unwrap().value <= 1e-5);
    assert!(indicator_spectrum(&half, &[1.0, -1.0], &p, &cfg).unwrap().value <= 1e-5);

    let quarter = bell_mixture(0.25).unwrap();
    assert!(close(
        indicator_basis_gwys(&quarter, &p, &cfg).unwrap().value,
        0.2588190,
        1e-4
    ));
    let m = indicator_basis_metric(&quarter, &MeanKernel::Sld, &cfg).unwrap();
    assert!(close(m.value, 0.3535534, 1e-4));
    assert_eq!(
        classify_qubit_basis(m.argmin.frame()),
        Some(MetricBranch::Computational)
    );
    assert!(close(
        indicator_spectrum(&quarter, &[1.0, -1.0], &p, &cfg).unwrap().value,
        QUARTER_SPECTRUM,
        1e-4
    ));
}

#[test]
fn classical_quantum_states_vanish() {
    let cfg = OptimizerConfig::default();
    let p = SkewParams::new(0.3, -2.0).unwrap();
    let basis = CMatrix::identity(2, 2);
    let states = [qubit([1.0, 0.0]), qubit([0.0, 1.0])];
    let rho = classical_quantum_state(&[0.5, 0.5], &basis, &states).unwrap();
    let mix = bell_mixture(0.5).unwrap();
    assert!((rho.matrix() - mix.matrix()).iter().all(|z| z.norm() < 1e-15));
    let tilted = classical_quantum_state(&[0.7, 0.3], &basis, &[qubit([0.2, 0.8]), plus()]).unwrap();
    assert!(indicator_basis_gwys(&tilted, &p, &cfg).unwrap().value <= 1e-5);
    assert!(indicator_spectrum(&tilted, &[2.0, -1.0], &p, &cfg).unwrap().value <= 1e-5);
}

#[test]
fn pure_state_closed_forms() {
    let bell = PureState::bell();
    assert!(close(pure_closed_form_basis(&bell).unwrap(), SQRT_HALF, 1e-15));
    assert!(close(pure_closed_form_spectrum(&bell).unwrap(), 1.0, 1e-15));
    let prod = PureState::product_basis(0, 0, BipartiteDims::new(2, 2).unwrap()).unwrap();
    assert_eq!(pure_closed_form_basis(&prod).unwrap(), 0.0);
    assert!(close(pure_closed_form_basis(&skewed()).unwrap(), 0.18f64.sqrt(), 1e-12));
    assert!(close(pure_closed_form_spectrum(&skewed()).unwrap(), 0.36, 1e-12));
}

#[test]
fn mixture_closed_forms() {
    let p = SkewParams::wyd(0.5).unwrap();
    let v = bell_mixture_closed_forms(0.5, &p, &MeanKernel::Sld).unwrap();
    assert_eq!((v.basis_gwys, v.basis_metric, v.spectrum), (0.0, 0.0, 0.0));
    let v = bell_mixture_closed_forms(1.0, &p, &MeanKernel::Sld).unwrap();
    assert!(close(v.basis_gwys, SQRT_HALF, 1e-15) && close(v.basis_metric, SQRT_HALF, 1e-15));
    assert!(close(v.spectrum, 1.0, 1e-15));
    let v = bell_mixture_closed_forms(0.25, &p, &MeanKernel::Sld).unwrap();
    assert!(close(v.basis_gwys, 0.2588190451025207, 1e-15));
    assert!(close(v.basis_metric, 0.3535533905932738, 1e-15));
    assert!(close(v.spectrum, QUARTER_SPECTRUM, 1e-15));
}

#[test]
fn concurrence_examples() {
    let cfg = OptimizerConfig::default();
    let p = SkewParams::quantum_fisher();
    assert!(close(
        i_concurrence_pure(&PureState::bell()).unwrap().value(),
        1.0,
        1e-14
    ));
    assert!(close(i_concurrence_pure(&skewed()).unwrap().value(), 0.6, 1e-12));
    let r = concurrence_relation_basis(&skewed(), &p, &MeanKernel::Sld, &cfg).unwrap();
    assert!(r.max_abs_gap <= 2e-4);
    let s = concurrence_relation_spectrum(&skewed(), &p, &cfg).unwrap();
    assert!(close(s.lhs, 0.6, 2e-4) && close(s.rhs, 0.6, 1e-12));
}

#[test]
fn oracle_examples() {
    let grid = BlochGrid::default();
    let p = SkewParams::wyd(0.5).unwrap();
    let quarter = bell_mixture(0.25).unwrap();
    assert!(close(
        grid_min_basis(&quarter, &BasisFunctional::Gwys(p), &grid).unwrap(),
        0.2588190,
        1e-3
    ));
    assert!(close(
        grid_min_spectrum(&quarter, &[1.0, -1.0], &p, &grid).unwrap(),
        QUARTER_SPECTRUM,
        1e-3
    ));
    let half = bell_mixture(0.5).unwrap();
    assert!(grid_min_basis(&half, &BasisFunctional::Metric(MeanKernel::Sld), &grid).unwrap() <= 1e-6);
}

#[test]
fn state_files_round_trip() {
    let rho = bell_mixture(0.25).unwrap();
    let text = qcorr_core::io::write_state(&rho);
    let back = qcorr_core::io::parse_state(&text).unwrap();
    assert_eq!(back.matrix(), rho.matrix());
    assert_eq!(back.dims(), rho.dims());
}
