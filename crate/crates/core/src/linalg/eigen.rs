use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Relative Hermiticity tolerance: inputs must satisfy `max|A - A^H| ≤ 1e-12 · ‖A‖_F`.
pub const HERMITICITY_RTOL: f64 = 1e-12;

/// Relative residual bound `‖Av - λv‖ ≤ 1e-10 · ‖A‖_F` checked on every pair.
pub const EIGEN_RESIDUAL_RTOL: f64 = 1e-10;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
    /// Largest `‖Av - λv‖` over all pairs.
    pub max_residual: f64,
}

pub fn hermitian_eigs(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.check_finite()?;
    let norm = a.frobenius_norm();
    let tolerance = HERMITICITY_RTOL * norm.max(f64::MIN_POSITIVE);
    let deviation = a.hermiticity_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }
    let n = a.dim();
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: ComplexMatrix::zeros(0),
            max_residual: 0.0,
        });
    }

    // Symmetrize exactly so the solver sees a Hermitian input.
    let sym = (a + &a.adjoint()).scale_real(0.5);
    let eig = SymmetricEigen::new(sym.as_nalgebra().clone());

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| eig.eigenvectors[(r, order[c])]);

    let av = a.as_nalgebra() * vectors.as_nalgebra();
    let mut max_residual = 0.0f64;
    for (k, &lambda) in values.iter().enumerate() {
        let res: f64 = (0..n)
            .map(|r| (av[(r, k)] - vectors.get(r, k) * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(res);
    }
    let bound = EIGEN_RESIDUAL_RTOL * norm.max(1.0);
    if max_residual > bound {
        return Err(Error::Unsupported(format!(
            "eigensolver residual {max_residual:e} exceeds {bound:e}"
        )));
    }
    Ok(HermitianEigen {
        values,
        vectors,
        max_residual,
    })
}

/// Eigenvalues of a general real matrix as `(re, im)` pairs, sorted by real
/// then imaginary part.
pub fn general_eigenvalues(a: &ComplexMatrix) -> Result<Vec<(f64, f64)>> {
    if !a.is_real() {
        return Err(Error::Unsupported(
            "general eigenvalues are only computed for real matrices".into(),
        ));
    }
    let mut vals: Vec<(f64, f64)> = a
        .real_part()
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    vals.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    Ok(vals)
}
