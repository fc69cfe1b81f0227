//! Eigenvalue clustering and snapping onto exact algebraic values.
//!
//! Spectra of the operators in this crate are exact: integers, small
//! fractions, or integer combinations `a + b√3`. Dense floating-point
//! diagonalization only sees them to within roundoff, so the raw eigenvalues
//! are grouped into clusters, each cluster is snapped to an exact value, and
//! when an exact rational copy of the operator is available the cluster size is
//! confirmed against the exact kernel dimension of `A - λI`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigs, ComplexMatrix, RationalMatrix};

/// Relative snapping tolerance: `tol = 1e-8 · max(1, ‖A‖)`.
pub const SNAP_RTOL: f64 = 1e-8;

/// Bound on `|a|` and `|b|` when snapping to `a + b√3`.
pub const SQRT3_COEFF_BOUND: i64 = 32;

/// An exactly known eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraicValue {
    Rational {
        num: i64,
        den: i64,
    },
    /// `a + b√3`
    Sqrt3 {
        a: i64,
        b: i64,
    },
}

impl AlgebraicValue {
    pub fn integer(n: i64) -> Self {
        AlgebraicValue::Rational { num: n, den: 1 }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        let q = Rational64::new(num, den);
        AlgebraicValue::Rational {
            num: *q.numer(),
            den: *q.denom(),
        }
    }

    pub fn sqrt3(a: i64, b: i64) -> Self {
        if b == 0 {
            AlgebraicValue::integer(a)
        } else {
            AlgebraicValue::Sqrt3 { a, b }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            AlgebraicValue::Rational { num, den } => num as f64 / den as f64,
            AlgebraicValue::Sqrt3 { a, b } => a as f64 + b as f64 * 3f64.sqrt(),
        }
    }

    pub fn as_rational(self) -> Option<Rational64> {
        match self {
            AlgebraicValue::Rational { num, den } => Some(Rational64::new(num, den)),
            AlgebraicValue::Sqrt3 { .. } => None,
        }
    }

    pub fn as_big_rational(self) -> Option<BigRational> {
        self.as_rational()
            .map(|q| BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom())))
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraicValue::Rational { num, den: 1 } => write!(f, "{num}"),
            AlgebraicValue::Rational { num, den } => write!(f, "{num}/{den}"),
            AlgebraicValue::Sqrt3 { a, b } => {
                let surd = match b {
                    1 => "√3".to_string(),
                    -1 => "-√3".to_string(),
                    _ => format!("{b}√3"),
                };
                if a == 0 {
                    write!(f, "{surd}")
                } else if b > 0 {
                    write!(f, "{a}+{surd}")
                } else {
                    write!(f, "{a}{surd}")
                }
            }
        }
    }
}

/// One cluster of (numerically) equal eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumClass {
    /// Snapped value when `snapped`, cluster mean otherwise.
    pub value: f64,
    pub exact: Option<AlgebraicValue>,
    pub multiplicity: usize,
    /// Largest distance from a raw eigenvalue in the cluster to `value`.
    pub residual: f64,
    pub snapped: bool,
    pub exact_verified: bool,
    /// How the value was chosen: `candidate`, `integer`, `quarter`, `sqrt3` or `unsnapped`.
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub dim: usize,
    pub tol: f64,
    pub classes: Vec<SpectrumClass>,
    /// Sum of the raw eigenvalues.
    pub trace: f64,
}

impl SpectrumReport {
    pub fn all_snapped(&self) -> bool {
        self.classes.iter().all(|c| c.snapped)
    }

    pub fn all_exact_verified(&self) -> bool {
        self.classes.iter().all(|c| c.exact_verified)
    }

    /// `(exact value, multiplicity)` pairs for snapped classes, in ascending order.
    pub fn exact_pairs(&self) -> Vec<(AlgebraicValue, usize)> {
        self.classes
            .iter()
            .filter_map(|c| c.exact.map(|v| (v, c.multiplicity)))
            .collect()
    }

    /// True when the snapped classes are exactly `expected` (any order).
    pub fn matches(&self, expected: &[(AlgebraicValue, usize)]) -> bool {
        if !self.all_snapped() || self.classes.len() != expected.len() {
            return false;
        }
        expected.iter().all(|(v, m)| {
            self.classes
                .iter()
                .any(|c| c.exact == Some(*v) && c.multiplicity == *m)
        })
    }

    pub fn multiplicity_of(&self, value: AlgebraicValue) -> usize {
        self.classes
            .iter()
            .filter(|c| c.exact == Some(value))
            .map(|c| c.multiplicity)
            .sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.classes.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    /// `|trace - Σ value·multiplicity|`.
    pub fn trace_defect(&self) -> f64 {
        let snapped: f64 = self
            .classes
            .iter()
            .map(|c| c.value * c.multiplicity as f64)
            .sum();
        (self.trace - snapped).abs()
    }

    /// Compact `value[mult]` listing, e.g. `{-3[1], 0[16], 3[10]}`.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| match c.exact {
                Some(v) => format!("{v}[{}]", c.multiplicity),
                None => format!("{:.12}[{}]", c.value, c.multiplicity),
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Default snapping tolerance for an operator with spectral radius `norm`.
pub fn default_snap_tol(norm: f64) -> f64 {
    SNAP_RTOL * norm.max(1.0)
}

/// Clusters sorted eigenvalues and snaps each cluster to an exact value.
///
/// With `candidates`, each cluster snaps to the unique candidate within `tol`
/// (two candidates within `tol` is an ambiguity error). Without candidates the
/// rules are tried in order: integers, quarter-integers (which include the
/// half-integers), then `a + b√3` with `|a|, |b| ≤ 32`. Clusters matching none
/// are left unsnapped.
///
/// When `exact_source` is given, a rational snapped value is verified by
/// comparing the cluster size with `dim - rank(A - λI)` over the rationals.
pub fn snap_spectrum(
    raw: &[f64],
    candidates: Option<&[AlgebraicValue]>,
    tol: f64,
    exact_source: Option<&RationalMatrix>,
) -> Result<SpectrumReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "snap tolerance {tol} must be positive"
        )));
    }
    if raw.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(
            "raw eigenvalues must be sorted ascending".into(),
        ));
    }
    if let Some(src) = exact_source {
        if src.dim() != raw.len() {
            return Err(Error::Dimension(format!(
                "{} eigenvalues for a {}x{} exact source",
                raw.len(),
                src.dim(),
                src.dim()
            )));
        }
    }

    let mut classes = Vec::new();
    let mut start = 0;
    while start < raw.len() {
        let mut end = start + 1;
        while end < raw.len() && raw[end] - raw[end - 1] <= tol {
            end += 1;
        }
        let cluster = &raw[start..end];
        let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
        let (exact, rule) = match candidates {
            Some(cands) => (snap_to_candidates(mean, cands, tol)?, "candidate"),
            None => snap_default(mean, tol)?,
        };
        let value = exact.map_or(mean, AlgebraicValue::to_f64);
        let residual = cluster
            .iter()
            .map(|x| (x - value).abs())
            .fold(0.0, f64::max);
        let exact_verified = match (
            exact_source,
            exact.and_then(AlgebraicValue::as_big_rational),
        ) {
            (Some(src), Some(q)) => src.eigenspace_dim(&q) == cluster.len(),
            _ => false,
        };
        classes.push(SpectrumClass {
            value,
            exact,
            multiplicity: cluster.len(),
            residual,
            snapped: exact.is_some(),
            exact_verified,
            rule: if exact.is_some() { rule } else { "unsnapped" }.to_string(),
        });
        start = end;
    }

    Ok(SpectrumReport {
        dim: raw.len(),
        tol,
        classes,
        trace: raw.iter().sum(),
    })
}

/// Diagonalizes a Hermitian operator and snaps its spectrum with the default tolerance.
pub fn spectrum_of(
    a: &ComplexMatrix,
    exact_source: Option<&RationalMatrix>,
) -> Result<SpectrumReport> {
    let eig = hermitian_eigs(a)?;
    let radius = eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    snap_spectrum(&eig.values, None, default_snap_tol(radius), exact_source)
}

fn snap_to_candidates(
    x: f64,
    cands: &[AlgebraicValue],
    tol: f64,
) -> Result<Option<AlgebraicValue>> {
    let mut hits: Vec<AlgebraicValue> = Vec::new();
    for &c in cands {
        if (c.to_f64() - x).abs() <= tol && !hits.contains(&c) {
            hits.push(c);
        }
    }
    match hits.as_slice() {
        [] => Ok(None),
        [one] => Ok(Some(*one)),
        [a, b, ..] => Err(Error::AmbiguousSnap {
            value: x,
            first: a.to_string(),
            second: b.to_string(),
            tol,
        }),
    }
}

fn snap_default(x: f64, tol: f64) -> Result<(Option<AlgebraicValue>, &'static str)> {
    let n = x.round();
    if (n - x).abs() <= tol && n.abs() < 1e15 {
        return Ok((Some(AlgebraicValue::integer(n as i64)), "integer"));
    }
    let q = (4.0 * x).round();
    if (q / 4.0 - x).abs() <= tol && q.abs() < 1e15 {
        return Ok((Some(AlgebraicValue::rational(q as i64, 4)), "quarter"));
    }
    let sqrt3 = 3f64.sqrt();
    let mut hits: Vec<AlgebraicValue> = Vec::new();
    for b in -SQRT3_COEFF_BOUND..=SQRT3_COEFF_BOUND {
        if b == 0 {
            continue;
        }
        let a = (x - b as f64 * sqrt3).round();
        if a.abs() > SQRT3_COEFF_BOUND as f64 {
            continue;
        }
        if (a + b as f64 * sqrt3 - x).abs() <= tol {
            hits.push(AlgebraicValue::sqrt3(a as i64, b));
        }
    }
    match hits.as_slice() {
        [] => Ok((None, "unsnapped")),
        [one] => Ok((Some(*one), "sqrt3")),
        [a, b, ..] => Err(Error::AmbiguousSnap {
            value: x,
            first: a.to_string(),
            second: b.to_string(),
            tol,
        }),
    }
}
