//! The on-disk problem-instance format.
//!
//! Complex numbers are two-element arrays [re, im]; matrices are row-major
//! d x d nested arrays. The state is one of {"pure": ...},
//! {"density": ...} or {"bloch": [r1, r2, r3]} and may be omitted where a
//! command ignores it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use uncert_core::{ComplexMatrix, Observable, QuantumState};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub dimension: usize,
    pub observables: Vec<ObservableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObservableSpec {
    pub name: String,
    pub matrix: Vec<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateSpec {
    Pure(Vec<(f64, f64)>),
    Density(Vec<Vec<(f64, f64)>>),
    Bloch([f64; 3]),
}

pub fn complex_rows(rows: &[Vec<(f64, f64)>]) -> Vec<Vec<Complex64>> {
    rows.iter()
        .map(|row| row.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
        .collect()
}

fn matrix_for(name: &str, rows: &[Vec<(f64, f64)>], dimension: usize) -> Result<ComplexMatrix, CliError> {
    if rows.len() != dimension || rows.iter().any(|r| r.len() != dimension) {
        return Err(CliError::Validation(format!(
            "matrix of '{name}' must be {dimension}x{dimension} (row-major)"
        )));
    }
    ComplexMatrix::from_rows(&complex_rows(rows))
        .map_err(|e| CliError::Validation(format!("matrix of '{name}': {e}")))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let instance: InstanceFile = serde_json::from_str(text)?;
        if instance.dimension == 0 {
            return Err(CliError::Validation("dimension must be positive".into()));
        }
        if instance.observables.is_empty() {
            return Err(CliError::Validation(
                "at least one observable is required".into(),
            ));
        }
        Ok(instance)
    }

    pub fn to_observables(&self) -> Result<Vec<Observable>, CliError> {
        self.observables
            .iter()
            .map(|spec| {
                let matrix = matrix_for(&spec.name, &spec.matrix, self.dimension)?;
                Observable::new(spec.name.clone(), matrix).map_err(CliError::from)
            })
            .collect()
    }

    pub fn to_state(&self) -> Result<QuantumState, CliError> {
        let spec = self
            .state
            .as_ref()
            .ok_or_else(|| CliError::Validation("this command requires a state".into()))?;
        match spec {
            StateSpec::Pure(entries) => {
                if entries.len() != self.dimension {
                    return Err(CliError::Validation(format!(
                        "pure state needs {} entries, got {}",
                        self.dimension,
                        entries.len()
                    )));
                }
                let vector = entries
                    .iter()
                    .map(|&(re, im)| Complex64::new(re, im))
                    .collect();
                QuantumState::pure(vector).map_err(CliError::from)
            }
            StateSpec::Density(rows) => {
                let matrix = matrix_for("state", rows, self.dimension)?;
                QuantumState::density(matrix).map_err(CliError::from)
            }
            StateSpec::Bloch(r) => {
                if self.dimension != 2 {
                    return Err(CliError::Validation(
                        "bloch states are only defined at dimension 2".into(),
                    ));
                }
                QuantumState::bloch(*r).map_err(CliError::from)
            }
        }
    }

    /// Identifier for reports: the explicit id or a supplied fallback.
    pub fn id_or<'a>(&'a self, fallback: &'a str) -> &'a str {
        self.id.as_deref().unwrap_or(fallback)
    }
}

/// A matrix file for the radius command: either a bare nested array or an
/// object with a "matrix" field.
pub fn parse_matrix_file(text: &str) -> Result<ComplexMatrix, CliError> {
    #[derive(Deserialize)]
    struct Wrapper {
        matrix: Vec<Vec<(f64, f64)>>,
    }
    let rows: Vec<Vec<(f64, f64)>> = match serde_json::from_str::<Wrapper>(text) {
        Ok(w) => w.matrix,
        Err(_) => serde_json::from_str(text)?,
    };
    if rows.is_empty() {
        return Err(CliError::Validation("matrix has no rows".into()));
    }
    ComplexMatrix::from_rows(&complex_rows(&rows))
        .map_err(|e| CliError::Validation(e.to_string()))
}
