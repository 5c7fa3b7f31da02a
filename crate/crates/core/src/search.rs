//! Derivative-free descent over local frames `U ∈ U(d1)`.
//!
//! A frame is improved by right-multiplying it with planar rotations
//! `exp(iθG)`, where `G` runs over the off-diagonal Hermitian generators
//! `E_pq + E_qp` and `-iE_pq + iE_qp`. Diagonal generators only rephase the
//! columns and leave every objective unchanged, so they are skipped.
//!
//! The objectives handled here are quadratic forms in the matrix elements
//! `<ψ_i|(|u_l><u_l| ⊗ 1)|ψ_j>`. Writing each eigenvector as a `d1 x d2`
//! amplitude matrix `Ψ_i`, the element equals `Σ_k conj(A^i_lk) A^j_lk` with
//! `A^i = U† Ψ_i`. A rotation of columns `p, q` of `U` only touches rows
//! `p, q` of every `A^i`, which keeps a trial move at `O(n d2)` work.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::SkewWeights;
use crate::state::{c, CMatrix};

const MIN_STEP: f64 = 1e-6;
const MAX_STEP: f64 = std::f64::consts::FRAC_PI_2;
/// Consecutive low-gain sweeps required before declaring convergence.
const QUIET_SWEEPS: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Haar-random starting frames, in addition to the two warm starts.
    pub restarts: usize,
    /// Maximum number of sweeps over all generators per start.
    pub max_iters: usize,
    /// Stop once a sweep improves the reported value by less than this.
    pub objective_tol: f64,
    pub step_init: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iters: 2000,
            objective_tol: 1e-8,
            step_init: 0.3,
            seed: 42,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParams("restarts and max_iters must be positive".into()));
        }
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.objective_tol) || !positive(self.step_init) {
            return Err(Error::InvalidParams(
                "objective_tol and step_init must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `E_pq + E_qp`
    Real,
    /// `-i E_pq + i E_qp`
    Imaginary,
}

/// The `2 x 2` block `[[m00, m01], [m10, m11]]` of `exp(iθG)` on rows and
/// columns `p, q`.
pub fn planar_rotation(generator: Generator, theta: f64) -> [Complex64; 4] {
    let (s, co) = theta.sin_cos();
    match generator {
        Generator::Real => [c(co, 0.0), c(0.0, s), c(0.0, s), c(co, 0.0)],
        Generator::Imaginary => [c(co, 0.0), c(s, 0.0), c(-s, 0.0), c(co, 0.0)],
    }
}

/// `U ← U · R` where `R` is the identity except for the block on `p, q`.
pub fn rotate_columns(u: &mut CMatrix, p: usize, q: usize, m: &[Complex64; 4]) {
    for r in 0..u.nrows() {
        let (a, b) = (u[(r, p)], u[(r, q)]);
        u[(r, p)] = m[0] * a + m[2] * b;
        u[(r, q)] = m[1] * a + m[3] * b;
    }
}

/// `exp(iH)` with `H` Hermitian built from `d²` reals: the first `d` fill the
/// diagonal, then each pair `p < q` (row-major) contributes `(a, b)` with
/// `H_pq = a - ib`, `H_qp = a + ib`.
pub fn unitary_from_params(d: usize, params: &[f64]) -> Result<CMatrix> {
    if params.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: params.len(),
        });
    }
    let mut h = CMatrix::zeros(d, d);
    for k in 0..d {
        h[(k, k)] = c(params[k], 0.0);
    }
    let mut idx = d;
    for p in 0..d {
        for q in (p + 1)..d {
            let (a, b) = (params[idx], params[idx + 1]);
            h[(p, q)] = c(a, -b);
            h[(q, p)] = c(a, b);
            idx += 2;
        }
    }
    Ok((h * c(0.0, 1.0)).exp())
}

#[derive(Clone, Debug)]
pub(crate) enum FrameKind {
    /// `Σ_l I(ρ, |u_l><u_l| ⊗ 1)`
    Basis,
    /// `I(ρ, Σ_l χ_l |u_l><u_l| ⊗ 1)`
    Spectrum(Vec<f64>),
}

/// A skew objective restricted to local frames, prepared for fast updates.
pub(crate) struct FrameLandscape {
    d1: usize,
    amplitudes: Vec<CMatrix>,
    pairs: Vec<(usize, usize, f64)>,
    kind: FrameKind,
}

#[derive(Clone, Debug)]
pub(crate) struct FrameState {
    pub u: CMatrix,
    /// `rows[l][(i, k)] = A^i_lk`
    rows: Vec<CMatrix>,
    /// `grams[l][pair] = Σ_k conj(A^i_lk) A^j_lk`
    grams: Vec<Vec<Complex64>>,
    pub value: f64,
}

struct Trial {
    col_p: Vec<Complex64>,
    col_q: Vec<Complex64>,
    row_p: CMatrix,
    row_q: CMatrix,
    gram_p: Vec<Complex64>,
    gram_q: Vec<Complex64>,
    value: f64,
}

impl FrameLandscape {
    pub fn new(weights: &SkewWeights, d1: usize, d2: usize, kind: FrameKind) -> Self {
        let all = weights.active_pairs();
        let mut used: Vec<usize> = all.iter().flat_map(|&(i, j, _)| [i, j]).collect();
        used.sort_unstable();
        used.dedup();
        let slot = |k: usize| used.binary_search(&k).expect("index is used");
        let pairs = all.iter().map(|&(i, j, w)| (slot(i), slot(j), w)).collect();
        let vecs = weights.eigenvectors();
        let amplitudes = used
            .iter()
            .map(|&k| CMatrix::from_fn(d1, d2, |a, b| vecs[(a * d2 + b, k)]))
            .collect();
        Self {
            d1,
            amplitudes,
            pairs,
            kind,
        }
    }

    fn row(&self, col: impl Fn(usize) -> Complex64) -> CMatrix {
        let n = self.amplitudes.len();
        let d2 = self.amplitudes.first().map_or(0, |a| a.ncols());
        let mut out = CMatrix::zeros(n, d2);
        for (i, amp) in self.amplitudes.iter().enumerate() {
            for m in 0..self.d1 {
                let w = col(m).conj();
                for k in 0..d2 {
                    out[(i, k)] += w * amp[(m, k)];
                }
            }
        }
        out
    }

    fn gram(&self, row: &CMatrix) -> Vec<Complex64> {
        self.pairs
            .iter()
            .map(|&(i, j, _)| (0..row.ncols()).map(|k| row[(i, k)].conj() * row[(j, k)]).sum())
            .collect()
    }

    fn value_of(&self, grams: &[&[Complex64]]) -> f64 {
        match &self.kind {
            FrameKind::Basis => grams
                .iter()
                .map(|g| {
                    self.pairs
                        .iter()
                        .zip(g.iter())
                        .map(|(&(_, _, w), z)| w * z.norm_sqr())
                        .sum::<f64>()
                })
                .sum(),
            FrameKind::Spectrum(chi) => self
                .pairs
                .iter()
                .enumerate()
                .map(|(k, &(_, _, w))| {
                    let t: Complex64 = grams.iter().zip(chi).map(|(g, &x)| g[k] * x).sum();
                    w * t.norm_sqr()
                })
                .sum(),
        }
    }

    pub fn prepare(&self, u: &CMatrix) -> FrameState {
        let rows: Vec<CMatrix> = (0..self.d1).map(|l| self.row(|m| u[(m, l)])).collect();
        let grams: Vec<Vec<Complex64>> = rows.iter().map(|r| self.gram(r)).collect();
        let refs: Vec<&[Complex64]> = grams.iter().map(|g| g.as_slice()).collect();
        let value = self.value_of(&refs);
        FrameState {
            u: u.clone(),
            rows,
            grams,
            value,
        }
    }

    fn trial(&self, st: &FrameState, p: usize, q: usize, m: &[Complex64; 4]) -> Trial {
        let d = self.d1;
        let col_p: Vec<Complex64> = (0..d).map(|r| m[0] * st.u[(r, p)] + m[2] * st.u[(r, q)]).collect();
        let col_q: Vec<Complex64> = (0..d).map(|r| m[1] * st.u[(r, p)] + m[3] * st.u[(r, q)]).collect();
        let row_p = &st.rows[p] * m[0].conj() + &st.rows[q] * m[2].conj();
        let row_q = &st.rows[p] * m[1].conj() + &st.rows[q] * m[3].conj();
        let gram_p = self.gram(&row_p);
        let gram_q = self.gram(&row_q);
        let refs: Vec<&[Complex64]> = (0..d)
            .map(|l| match l {
                _ if l == p => gram_p.as_slice(),
                _ if l == q => gram_q.as_slice(),
                _ => st.grams[l].as_slice(),
            })
            .collect();
        let value = self.value_of(&refs);
        Trial {
            col_p,
            col_q,
            row_p,
            row_q,
            gram_p,
            gram_q,
            value,
        }
    }

    fn commit(&self, st: &mut FrameState, p: usize, q: usize, t: Trial) {
        for r in 0..self.d1 {
            st.u[(r, p)] = t.col_p[r];
            st.u[(r, q)] = t.col_q[r];
        }
        st.rows[p] = t.row_p;
        st.rows[q] = t.row_q;
        st.grams[p] = t.gram_p;
        st.grams[q] = t.gram_q;
        st.value = t.value;
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    pub u: CMatrix,
    pub converged: bool,
    pub sweeps: usize,
}

/// Coordinate descent with a parabolic step per generator.
///
/// Each generator keeps its own step `h`. Trial points `±h` are fitted with
/// a parabola whose vertex (clamped to `±4h`) is tried too; the best strict
/// improvement is taken. Steps track the accepted move: `|t|` after a
/// vertex move, `2h` after an endpoint move and `h/2` when nothing helped.
///
/// `report` maps the objective onto the scale on which `objective_tol` is
/// measured.
pub(crate) fn descend(
    land: &FrameLandscape,
    start: &CMatrix,
    cfg: &OptimizerConfig,
    report: fn(f64) -> f64,
) -> SearchOutcome {
    let d = land.d1;
    let mut coords = Vec::with_capacity(d * (d - 1));
    for p in 0..d {
        for q in (p + 1)..d {
            coords.push((p, q, Generator::Real));
            coords.push((p, q, Generator::Imaginary));
        }
    }
    let mut steps = vec![cfg.step_init.min(MAX_STEP); coords.len()];
    let mut st = land.prepare(start);
    let mut quiet = 0;
    let mut sweeps = 0;
    let mut converged = false;

    while sweeps < cfg.max_iters {
        sweeps += 1;
        let before = st.value;
        for (k, &(p, q, g)) in coords.iter().enumerate() {
            let h = steps[k];
            let f0 = st.value;
            let plus = land.trial(&st, p, q, &planar_rotation(g, h));
            let minus = land.trial(&st, p, q, &planar_rotation(g, -h));
            let curvature = plus.value + minus.value - 2.0 * f0;
            let vertex = if curvature > 0.0 {
                let t = (h * (minus.value - plus.value) / (2.0 * curvature)).clamp(-4.0 * h, 4.0 * h);
                (t != 0.0 && t.is_finite()).then(|| (t, land.trial(&st, p, q, &planar_rotation(g, t))))
            } else {
                None
            };

            let mut best: Option<(Trial, Option<f64>)> = None;
            let mut best_value = f0;
            if let Some((t, trial)) = vertex {
                if trial.value < best_value {
                    best_value = trial.value;
                    best = Some((trial, Some(t)));
                }
            }
            for trial in [plus, minus] {
                if trial.value < best_value {
                    best_value = trial.value;
                    best = Some((trial, None));
                }
            }
            match best {
                Some((trial, Some(t))) => {
                    steps[k] = t.abs().clamp(MIN_STEP, MAX_STEP);
                    land.commit(&mut st, p, q, trial);
                }
                Some((trial, None)) => {
                    steps[k] = (2.0 * h).min(MAX_STEP);
                    land.commit(&mut st, p, q, trial);
                }
                None => steps[k] = (0.5 * h).max(MIN_STEP),
            }
        }
        // rebuild from U so that incremental round-off does not accumulate
        st = land.prepare(&st.u);
        let gain = report(before) - report(st.value);
        if gain < cfg.objective_tol {
            quiet += 1;
            if quiet >= QUIET_SWEEPS {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    SearchOutcome {
        u: st.u,
        converged,
        sweeps,
    }
}
