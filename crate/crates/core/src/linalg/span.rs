use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Relative singular-value cutoff for rank-deficient bases.
const GRAM_RCOND: f64 = 1e-12;

/// Least-squares expansion of a matrix in a list of basis matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanFit {
    pub coefficients: Vec<Complex64>,
    /// `min ‖H - Σ c_k B_k‖_F`.
    pub residual: f64,
    /// `‖H‖_F`, for relative comparisons.
    pub target_norm: f64,
    /// Numerical rank of the basis.
    pub rank: usize,
}

impl SpanFit {
    /// Membership test `residual ≤ rtol · ‖H‖_F` (with `rtol = 1e-10` by default).
    pub fn is_member(&self, rtol: f64) -> bool {
        self.residual <= rtol * self.target_norm.max(f64::MIN_POSITIVE)
    }
}

/// Minimizes `‖H - Σ c_k B_k‖` under the Frobenius product `⟨A, B⟩ = Tr(A B^H)`.
///
/// Solves the normal equations through a pseudo-inverse of the Gram matrix, so
/// linearly dependent bases are allowed; the residual is then evaluated
/// directly from the fitted combination.
pub fn span_residual(h: &ComplexMatrix, basis: &[ComplexMatrix]) -> Result<SpanFit> {
    if basis.is_empty() {
        return Err(Error::InvalidArgument("span basis is empty".into()));
    }
    if let Some(b) = basis.iter().find(|b| b.dim() != h.dim()) {
        return Err(Error::Dimension(format!(
            "basis element is {}x{}, target is {}x{}",
            b.dim(),
            b.dim(),
            h.dim(),
            h.dim()
        )));
    }
    let k = basis.len();
    // gram[(i, j)] = <B_j, B_i>, rhs[i] = <H, B_i>
    let gram = DMatrix::from_fn(k, k, |i, j| basis[j].inner(&basis[i]));
    let rhs = DMatrix::from_fn(k, 1, |i, _| h.inner(&basis[i]));

    let svd = gram.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = GRAM_RCOND * smax.max(f64::MIN_POSITIVE);
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let coeffs = svd
        .solve(&rhs, cutoff)
        .map_err(|e| Error::Unsupported(format!("Gram solve failed: {e}")))?;
    let coefficients: Vec<Complex64> = coeffs.column(0).iter().cloned().collect();

    let mut fitted = ComplexMatrix::zeros(h.dim());
    for (c, b) in coefficients.iter().zip(basis) {
        fitted = &fitted + &b.scale(*c);
    }
    let residual = (h - &fitted).frobenius_norm();
    Ok(SpanFit {
        coefficients,
        residual,
        target_norm: h.frobenius_norm(),
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_is_in_its_own_span() {
        let b = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, -1.0]]).unwrap();
        let fit = span_residual(&b, std::slice::from_ref(&b)).unwrap();
        assert!((fit.coefficients[0].re - 1.0).abs() < 1e-14);
        assert!(fit.residual < 1e-14);
        assert!(fit.is_member(1e-10));
    }

    #[test]
    fn dependent_basis_is_handled() {
        let i2 = ComplexMatrix::identity(2);
        let h = ComplexMatrix::real_diagonal(&[3.0, 3.0]);
        let fit = span_residual(&h, &[i2.clone(), i2.scale_real(2.0)]).unwrap();
        assert_eq!(fit.rank, 1);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn orthogonal_complement_gives_full_residual() {
        let h = ComplexMatrix::real_diagonal(&[1.0, -1.0]);
        let fit = span_residual(&h, &[ComplexMatrix::identity(2)]).unwrap();
        assert!((fit.residual - 2f64.sqrt()).abs() < 1e-14);
        assert!(!fit.is_member(1e-10));
    }

    #[test]
    fn mismatched_dimensions_fail() {
        let err =
            span_residual(&ComplexMatrix::identity(2), &[ComplexMatrix::identity(3)]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
        assert!(span_residual(&ComplexMatrix::identity(2), &[]).is_err());
    }
}
