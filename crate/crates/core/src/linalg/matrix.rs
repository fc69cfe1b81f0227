use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin::SiteSystem;

/// Default cap on the dimension of any matrix built by tensor products.
pub const DEFAULT_DIM_CAP: usize = 4096;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
#[cfg(test)]
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix.
///
/// Operators in this crate are always small enough to be stored densely, so
/// this is a thin wrapper around a column-major `nalgebra` matrix that keeps
/// the squareness invariant and adds the handful of operations spin algebra
/// needs (Kronecker products, commutators, Frobenius geometry).
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        ComplexMatrix(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        ComplexMatrix(DMatrix::from_fn(dim, dim, f))
    }

    /// Builds a matrix from real row-major rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "expected {dim} columns in every row"
            )));
        }
        Ok(Self::from_fn(dim, |r, c| Complex64::new(rows[r][c], 0.0)))
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "expected {dim} columns in every row"
            )));
        }
        let m = Self::from_fn(dim, |r, c| rows[r][c]);
        m.check_finite()?;
        Ok(m)
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        Self::from_fn(values.len(), |r, c| if r == c { values[r] } else { ZERO })
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |r, c| {
            if r == c {
                Complex64::new(values[r], 0.0)
            } else {
                ZERO
            }
        })
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[(row, col)] = value;
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                out.push(self.0[(r, c)]);
            }
        }
        out
    }

    pub fn check_finite(&self) -> Result<()> {
        let n = self.dim();
        for c in 0..n {
            for r in 0..n {
                let z = self.0[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix(self.0.transpose())
    }

    pub fn conjugate(&self) -> Self {
        ComplexMatrix(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix(&self.0 * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `A + value * I`.
    pub fn shift(&self, value: Complex64) -> Self {
        let mut out = self.clone();
        for k in 0..self.dim() {
            out.0[(k, k)] += value;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff: dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A - A^H|`, the quantity compared against the Hermiticity tolerance.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev = 0.0f64;
        for r in 0..n {
            for c in r..n {
                dev = dev.max((self.0[(r, c)] - self.0[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Frobenius inner product `Tr(A B^H)`.
    pub fn inner(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner: dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// `Tr(A B)` without conjugation.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "trace_product: dimension mismatch");
        let n = self.dim();
        let mut acc = ZERO;
        for r in 0..n {
            for k in 0..n {
                acc += self.0[(r, k)] * other.0[(k, r)];
            }
        }
        acc
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim());
        let n = self.dim();
        (0..n)
            .map(|r| (0..n).map(|c| self.0[(r, c)] * v[c]).sum())
            .collect()
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::identity(self.dim());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn checked_mul(&self, other: &ComplexMatrix) -> Result<Self> {
        same_dim(self, other, "product")?;
        Ok(ComplexMatrix(&self.0 * &other.0))
    }

    pub fn checked_add(&self, other: &ComplexMatrix) -> Result<Self> {
        same_dim(self, other, "sum")?;
        Ok(ComplexMatrix(&self.0 + &other.0))
    }

    pub fn checked_sub(&self, other: &ComplexMatrix) -> Result<Self> {
        same_dim(self, other, "difference")?;
        Ok(ComplexMatrix(&self.0 - &other.0))
    }

    /// True when every entry is exactly real.
    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    /// Real part as a `nalgebra` matrix.
    pub fn real_part(&self) -> DMatrix<f64> {
        self.0.map(|z| z.re)
    }
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix, what: &str) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "{what} of {}x{} and {}x{} matrices",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    Ok(())
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|c| {
                    let z = self.0[(r, c)];
                    if z.im == 0.0 {
                        format!("{}", z.re)
                    } else {
                        format!("{}{:+}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

/// Kronecker product with the default dimension cap.
///
/// Block `(i, j)` of the result is `a[i][j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DEFAULT_DIM_CAP)
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let requested = a.dim() as u128 * b.dim() as u128;
    if requested > cap as u128 {
        return Err(Error::Capacity {
            what: "Kronecker product dimension",
            requested,
            cap: cap as u128,
        });
    }
    Ok(ComplexMatrix(a.0.kronecker(&b.0)))
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[ComplexMatrix], cap: usize) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty Kronecker product".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| kron_with_cap(&acc, f, cap))
}

/// `I^(i-1) ⊗ A ⊗ I^(N-i)` on the system's tensor space; `site` is 1-based.
pub fn lift(a: &ComplexMatrix, site: usize, system: &SiteSystem) -> Result<ComplexMatrix> {
    lift_many(&[(site, a)], system)
}

/// Places each `(site, op)` factor at its site and identities elsewhere.
///
/// Sites must be distinct; a repeated site is rejected.
pub fn lift_many(
    factors: &[(usize, &ComplexMatrix)],
    system: &SiteSystem,
) -> Result<ComplexMatrix> {
    let d = system.local_dim();
    let n = system.sites();
    let mut slots: Vec<Option<&ComplexMatrix>> = vec![None; n];
    for &(site, op) in factors {
        if site == 0 || site > n {
            return Err(Error::SiteOutOfRange { site, sites: n });
        }
        if op.dim() != d {
            return Err(Error::Dimension(format!(
                "site operator is {}x{}, local dimension is {d}",
                op.dim(),
                op.dim()
            )));
        }
        if slots[site - 1].replace(op).is_some() {
            return Err(Error::InvalidArgument(format!("site {site} given twice")));
        }
    }
    let id = ComplexMatrix::identity(d);
    let ops: Vec<ComplexMatrix> = slots
        .into_iter()
        .map(|s| s.cloned().unwrap_or_else(|| id.clone()))
        .collect();
    kron_all(&ops, system.dim_cap())
}

/// `AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    same_dim(a, b, "commutator")?;
    Ok(ComplexMatrix(&a.0 * &b.0 - &b.0 * &a.0))
}

/// `AB + BA`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    same_dim(a, b, "anticommutator")?;
    Ok(ComplexMatrix(&a.0 * &b.0 + &b.0 * &a.0))
}

/// `‖[A, B]‖_F / (‖A‖_F ‖B‖_F)`, zero when either factor vanishes.
pub fn relative_commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let c = commutator(a, b)?;
    let denom = a.frobenius_norm() * b.frobenius_norm();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(c.frobenius_norm() / denom)
}
