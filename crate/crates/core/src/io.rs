//! JSON state files.
//!
//! ```json
//! {"d1": 2, "d2": 2, "matrix_real": [[...], ...], "matrix_imag": [[...], ...]}
//! ```
//!
//! Rows are listed in order, row index `i1 * d2 + i2`. Numbers are written
//! with the shortest representation that round-trips to the same `f64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{c, BipartiteDims, CMatrix, DensityMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub d1: usize,
    pub d2: usize,
    pub matrix_real: Vec<Vec<f64>>,
    pub matrix_imag: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let n = m.nrows();
        let rows = |f: fn(&num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..n).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        Self {
            d1: rho.dims().d1(),
            d2: rho.dims().d2(),
            matrix_real: rows(|z| z.re),
            matrix_imag: rows(|z| z.im),
        }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dims = BipartiteDims::new(self.d1, self.d2)?;
        let n = dims.total();
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.matrix_real) || !shape_ok(&self.matrix_imag) {
            return Err(Error::StateFile(format!(
                "matrix_real and matrix_imag must both be {n}x{n}"
            )));
        }
        let m = CMatrix::from_fn(n, n, |i, j| c(self.matrix_real[i][j], self.matrix_imag[i][j]));
        DensityMatrix::new(m, dims)
    }
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
    file.to_density()
}

pub fn write_state(rho: &DensityMatrix) -> String {
    serde_json::to_string(&StateFile::from_density(rho)).expect("state file serializes")
}
