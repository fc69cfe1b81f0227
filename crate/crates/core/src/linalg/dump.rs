//! Text dump format for operators.
//!
//! A dump is a JSON object:
//!
//! ```json
//! {
//!   "dim": 4,
//!   "system": { "sites": 2, "twice_spin": 1 },
//!   "label": "exchange(1,2)",
//!   "entries": [[1.0, 0.0], [0.0, 0.0], ...],
//!   "rational": [[1, 1], [0, 1], ...]
//! }
//! ```
//!
//! `entries` is row-major `[re, im]`; `rational` (optional) is row-major
//! `[num, den]` in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RationalMatrix};
use crate::spin::SiteSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemMeta {
    pub sites: usize,
    pub twice_spin: u32,
}

impl From<&SiteSystem> for SystemMeta {
    fn from(s: &SiteSystem) -> Self {
        SystemMeta {
            sites: s.sites(),
            twice_spin: s.spin().twice(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemMeta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub entries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<Vec<[i64; 2]>>,
}

impl MatrixDump {
    pub fn new(matrix: &ComplexMatrix) -> Self {
        MatrixDump {
            dim: matrix.dim(),
            system: None,
            label: None,
            entries: matrix.to_row_major().iter().map(|z| [z.re, z.im]).collect(),
            rational: None,
        }
    }

    pub fn with_system(mut self, system: &SiteSystem) -> Self {
        self.system = Some(system.into());
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Attaches the exact view. Entries must fit in `i64`.
    pub fn with_rational(mut self, exact: &RationalMatrix) -> Result<Self> {
        if exact.dim() != self.dim {
            return Err(Error::Dimension("rational view dimension".into()));
        }
        let pairs = exact
            .entries()
            .iter()
            .map(|q| match (q.numer().to_i64(), q.denom().to_i64()) {
                (Some(n), Some(d)) => Ok([n, d]),
                _ => Err(Error::Capacity {
                    what: "rational dump entry magnitude",
                    requested: u128::MAX,
                    cap: i64::MAX as u128,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        self.rational = Some(pairs);
        Ok(self)
    }

    pub fn matrix(&self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::Dimension(format!(
                "{} entries for dim {}",
                self.entries.len(),
                self.dim
            )));
        }
        let n = self.dim;
        let m = ComplexMatrix::from_fn(n, |r, c| {
            let [re, im] = self.entries[r * n + c];
            Complex64::new(re, im)
        });
        m.check_finite()?;
        Ok(m)
    }

    pub fn rational_matrix(&self) -> Result<Option<RationalMatrix>> {
        let Some(pairs) = &self.rational else {
            return Ok(None);
        };
        let entries = pairs
            .iter()
            .map(|&[n, d]| {
                if d == 0 {
                    Err(Error::Parse("zero denominator in rational dump".into()))
                } else {
                    Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_row_major(self.dim, entries).map(Some)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dump serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
