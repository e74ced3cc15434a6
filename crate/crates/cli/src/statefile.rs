//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2], "matrix": [[[0.5, 0.0], [0.0, 0.0], ...], ...]}
//! {"dims": [2, 2], "vector": [[0.7071067811865476, 0.0], ...]}
//! ```
//!
//! `matrix` is the row-major `D x D` density matrix and `vector` a pure-state
//! amplitude list; exactly one must be present. Each complex number is a
//! `[re, im]` pair and the basis is ordered with party 0 most significant.
//! An optional `family` block records how the state was generated, and
//! extension files add `e_index`, the party index of the extension system.

use std::fs;
use std::path::Path;

use esq_core::{Complex64, DensityMatrix, FamilySpec, StateVector, SystemLayout};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_index: Option<usize>,
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix, layout: &SystemLayout) -> Self {
        Self {
            dims: layout.dims().to_vec(),
            matrix: Some(rho.rows().map(|r| r.iter().map(pair).collect()).collect()),
            vector: None,
            family: None,
            e_index: None,
        }
    }

    pub fn from_vector(psi: &StateVector, layout: &SystemLayout) -> Self {
        Self {
            dims: layout.dims().to_vec(),
            matrix: None,
            vector: Some(psi.amplitudes().iter().map(pair).collect()),
            family: None,
            e_index: None,
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid state file: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Input(format!("cannot serialize state: {e}")))?;
        fs::write(path, text + "\n")
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
    }

    /// Validated state and layout.
    pub fn to_state(&self) -> CliResult<(DensityMatrix, SystemLayout)> {
        let layout = SystemLayout::new(self.dims.clone())?;
        let rho = match (&self.matrix, &self.vector) {
            (Some(rows), None) => DensityMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(complex).collect())
                    .collect(),
            )?,
            (None, Some(amps)) => {
                StateVector::new(amps.iter().map(complex).collect())?.to_density()
            }
            _ => {
                return Err(CliError::Input(
                    "state file needs exactly one of \"matrix\" or \"vector\"".into(),
                ))
            }
        };
        layout.check_state(&rho)?;
        Ok((rho, layout))
    }
}
