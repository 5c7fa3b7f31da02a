//! Serializable report records and CSV rendering.

use qcorr_core::indicators::{Argmin, IndicatorResult};
use qcorr_core::CMatrix;
use serde::Serialize;

#[derive(Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub d1: usize,
    pub d2: usize,
}

#[derive(Serialize)]
pub struct Parameters {
    pub indicator: &'static str,
    pub omega: f64,
    pub s: String,
    pub kernel: Option<&'static str>,
    pub chi: Option<Vec<f64>>,
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub objective_tol: f64,
    pub step_init: f64,
}

#[derive(Serialize)]
pub struct ArgminRecord {
    /// `basis` or `spectrum`
    pub kind: &'static str,
    /// Column `l` is the `l`-th basis vector or eigenvector.
    pub frame_real: Vec<Vec<f64>>,
    pub frame_imag: Vec<Vec<f64>>,
    pub spectrum: Option<Vec<f64>>,
}

#[derive(Serialize)]
pub struct ResultRecord {
    pub value: f64,
    pub converged: bool,
    pub best_start: usize,
    pub restart_values: Vec<f64>,
    pub restart_converged: Vec<bool>,
    pub restart_sweeps: Vec<usize>,
    pub argmin: ArgminRecord,
}

#[derive(Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub input: InputInfo,
    pub parameters: Parameters,
    pub result: ResultRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

fn split(m: &CMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let rows = |f: fn(&CMatrix, usize, usize) -> f64| {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| f(m, i, j)).collect())
            .collect()
    };
    (rows(|m, i, j| m[(i, j)].re), rows(|m, i, j| m[(i, j)].im))
}

impl ResultRecord {
    pub fn from_result(r: &IndicatorResult) -> Self {
        let (kind, spectrum) = match &r.argmin {
            Argmin::Basis(_) => ("basis", None),
            Argmin::Spectrum(o) => ("spectrum", Some(o.spectrum().to_vec())),
        };
        let (frame_real, frame_imag) = split(r.argmin.frame());
        Self {
            value: r.value,
            converged: r.any_converged(),
            best_start: r.best_start,
            restart_values: r.restart_values.clone(),
            restart_converged: r.converged.clone(),
            restart_sweeps: r.sweeps.clone(),
            argmin: ArgminRecord {
                kind,
                frame_real,
                frame_imag,
                spectrum,
            },
        }
    }
}

/// Shortest round-trip form, switching to exponent notation for tiny values.
fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

pub const COMPUTE_CSV_HEADER: &str = "indicator,omega,s,kernel,chi,value,converged,best_start,sha256";

pub fn compute_csv(report: &RunReport) -> String {
    let p = &report.parameters;
    let chi = p
        .chi
        .as_ref()
        .map(|c| c.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    format!(
        "{COMPUTE_CSV_HEADER}\n{},{},{},{},{},{},{},{},{}\n",
        p.indicator,
        num(p.omega),
        p.s,
        p.kernel.unwrap_or(""),
        chi,
        num(report.result.value),
        report.result.converged,
        report.result.best_start,
        report.input.sha256
    )
}

#[derive(Serialize)]
pub struct SweepRow {
    pub mix: f64,
    pub closed_form_basis_gwys: f64,
    pub closed_form_basis_metric: f64,
    pub closed_form_spectrum: f64,
    pub optimizer_basis_gwys: f64,
    pub optimizer_basis_metric: f64,
    pub optimizer_spectrum: f64,
}

pub const SWEEP_CSV_HEADER: &str = "mix,closed_form_basis_gwys,closed_form_basis_metric,closed_form_spectrum,optimizer_basis_gwys,optimizer_basis_metric,optimizer_spectrum";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            num(r.mix),
            num(r.closed_form_basis_gwys),
            num(r.closed_form_basis_metric),
            num(r.closed_form_spectrum),
            num(r.optimizer_basis_gwys),
            num(r.optimizer_basis_metric),
            num(r.optimizer_spectrum)
        ));
    }
    out
}
