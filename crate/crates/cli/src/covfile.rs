//! The covariance-matrix file format.
//!
//! ```toml
//! convention = "vacuum=1/2"
//! ordering = "x1,p1,x2,p2"
//! label = "optional"
//! matrix = [
//!   [0.5, 0.0, 0.0, 0.0],
//!   ...
//! ]
//! ```
//!
//! Only the `vacuum=1/2` convention is accepted; anything else is rejected
//! instead of rescaled. Single-mode files use `ordering = "x1,p1"` and a 2×2
//! matrix.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use twomode::gaussian::{Covariance, SingleModeCov, TwoModeCov};
use twomode::matkit::RealMatrix;
use twomode::states::GaussianCov;

use crate::error::CliError;
use crate::format;

pub const CONVENTION: &str = "vacuum=1/2";
pub const ORDERING_TWO: &str = "x1,p1,x2,p2";
pub const ORDERING_ONE: &str = "x1,p1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovFile {
    pub convention: String,
    pub ordering: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<f64>>,
}

impl CovFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: CovFile = toml::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        if file.convention != CONVENTION {
            return Err(CliError::Malformed(format!(
                "convention '{}' is not supported; only '{CONVENTION}' is accepted",
                file.convention
            )));
        }
        let n = match file.ordering.as_str() {
            ORDERING_TWO => 4,
            ORDERING_ONE => 2,
            other => {
                return Err(CliError::Malformed(format!(
                    "ordering '{other}' is not supported; use '{ORDERING_TWO}' or '{ORDERING_ONE}'"
                )))
            }
        };
        if file.matrix.len() != n || file.matrix.iter().any(|row| row.len() != n) {
            return Err(CliError::Malformed(format!(
                "ordering '{}' needs a {n}×{n} matrix",
                file.ordering
            )));
        }
        Ok(file)
    }

    /// Reads a file, or standard input for `-`.
    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Malformed(format!("standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(Path::new(path))
                .map_err(|e| CliError::Malformed(format!("{path}: {e}")))?
        };
        Self::parse(&text)
    }

    pub fn from_cov(sigma: &GaussianCov, label: Option<String>) -> Self {
        let m = sigma.matrix();
        let ordering = if sigma.modes() == 1 { ORDERING_ONE } else { ORDERING_TWO };
        Self {
            convention: CONVENTION.into(),
            ordering: ordering.into(),
            label,
            matrix: m.to_nested(),
        }
    }

    fn raw(&self) -> RealMatrix {
        let n = self.matrix.len();
        RealMatrix::from_vec(n, n, self.matrix.concat()).expect("shape checked on parse")
    }

    /// Validated covariance matrix.
    pub fn covariance(&self) -> Result<GaussianCov, CliError> {
        let m = self.raw();
        Ok(if m.rows() == 2 {
            GaussianCov::Single(SingleModeCov::new(m)?)
        } else {
            GaussianCov::Two(TwoModeCov::new(m)?)
        })
    }

    /// Minimum eigenvalue of `σ + iΩ/2` for the matrix as written.
    pub fn uncertainty_margin(&self) -> Result<f64, CliError> {
        Ok(twomode::gaussian::uncertainty_min_eigenvalue(&self.raw())?)
    }

    pub fn render(&self, digits: usize) -> String {
        format::to_text(self, digits)
    }
}
