use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Dense square matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = BigRational::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        RationalMatrix { dim, entries }
    }

    pub fn from_row_major(dim: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(RationalMatrix { dim, entries })
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("ragged integer rows".into()));
        }
        Ok(Self::from_fn(dim, |r, c| {
            BigRational::from_integer(rows[r][c].into())
        }))
    }

    /// Exact conversion: succeeds only if every imaginary part is exactly zero.
    ///
    /// Real parts are converted to the exact dyadic rational they represent,
    /// so no rounding takes place.
    pub fn from_complex_exact(m: &ComplexMatrix) -> Result<Self> {
        let dim = m.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let z = m.get(r, c);
                if z.im != 0.0 || !z.re.is_finite() {
                    return Err(Error::NotRational {
                        row: r,
                        col: c,
                        re: z.re,
                        im: z.im,
                    });
                }
                entries.push(BigRational::from_float(z.re).expect("finite float"));
            }
        }
        Ok(RationalMatrix { dim, entries })
    }

    /// Recognizes each entry as the rational with smallest denominator
    /// `≤ max_den` lying within `tol` of its real part; imaginary parts must be
    /// within `tol` of zero.
    pub fn recognize(m: &ComplexMatrix, tol: f64, max_den: i64) -> Result<Self> {
        let dim = m.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let z = m.get(r, c);
                let fail = || Error::NotRational {
                    row: r,
                    col: c,
                    re: z.re,
                    im: z.im,
                };
                if z.im.abs() > tol {
                    return Err(fail());
                }
                let q = recognize_scalar(z.re, tol, max_den).ok_or_else(fail)?;
                entries.push(q);
            }
        }
        Ok(RationalMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| {
            Complex64::new(self.get(r, c).to_f64().expect("rational to f64"), 0.0)
        })
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|q| q.is_integer())
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("rational product".into()));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if !b.is_zero() {
                        out.entries[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &RationalMatrix) -> Self {
        let (p, q) = (self.dim, other.dim);
        Self::from_fn(p * q, |r, c| {
            self.get(r / q, c / q) * other.get(r % q, c % q)
        })
    }

    /// `A - value * I`.
    pub fn shifted(&self, value: &BigRational) -> Self {
        let mut out = self.clone();
        for k in 0..self.dim {
            out.entries[k * self.dim + k] -= value;
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim).map(|k| self.get(k, k).clone()).sum()
    }

    /// Exact rank by fraction-free (Bareiss) elimination over the integers.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        if n == 0 {
            return 0;
        }
        // Clear denominators row by row; scaling a row does not change rank.
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                let row = &self.entries[r * n..(r + 1) * n];
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect();
        bareiss_rank(&mut rows, n)
    }

    /// Dimension of the exact kernel of `A - value * I`.
    pub fn eigenspace_dim(&self, value: &BigRational) -> usize {
        self.dim - self.shifted(value).rank()
    }
}

/// Fraction-free elimination to echelon form; returns the rank.
pub(crate) fn bareiss_rank(rows: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = prow[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..ncols {
                let v = &row[c] * &p - &factor * &prow[c];
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Smallest-denominator rational within `tol` of `x`, denominators up to `max_den`.
pub fn recognize_scalar(x: f64, tol: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    for den in 1..=max_den.max(1) {
        let num = (x * den as f64).round();
        if (num / den as f64 - x).abs() <= tol {
            let num = BigInt::from(num as i64);
            return Some(BigRational::new(num, BigInt::from(den)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Plain Gaussian elimination over the rationals, independent of Bareiss.
    fn naive_rank(m: &RationalMatrix) -> usize {
        let n = m.dim();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (0..n).map(|c| m.get(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..n {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    let pivot = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = RationalMatrix::from_integer_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(RationalMatrix::identity(5).rank(), 5);
        assert_eq!(RationalMatrix::zeros(4).rank(), 0);
    }

    #[test]
    fn rank_with_skipped_pivot_columns() {
        let m = RationalMatrix::from_integer_rows(&[
            &[0, 0, 2, 1],
            &[0, 0, 4, 2],
            &[0, 3, 1, 0],
            &[0, 6, 5, 1],
        ])
        .unwrap();
        assert_eq!(m.rank(), naive_rank(&m));
    }

    #[test]
    fn rank_agrees_with_naive_elimination() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for n in 1..9 {
            for _ in 0..20 {
                let m = RationalMatrix::from_fn(n, |_, _| q(next(), 1 + next().abs()));
                assert_eq!(m.rank(), naive_rank(&m));
            }
        }
    }

    #[test]
    fn eigenspace_dimension_of_diagonal() {
        let m = RationalMatrix::from_integer_rows(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, -1]]).unwrap();
        assert_eq!(m.eigenspace_dim(&q(3, 1)), 2);
        assert_eq!(m.eigenspace_dim(&q(-1, 1)), 1);
        assert_eq!(m.eigenspace_dim(&q(1, 2)), 0);
    }

    #[test]
    fn exact_conversion_rejects_imaginary_parts() {
        let m = ComplexMatrix::diagonal(&[Complex64::new(0.5, 0.0), Complex64::new(1.0, 1e-300)]);
        assert!(RationalMatrix::from_complex_exact(&m).is_err());
        let ok = ComplexMatrix::real_diagonal(&[0.5, -0.25]);
        let r = RationalMatrix::from_complex_exact(&ok).unwrap();
        assert_eq!(r.get(0, 0), &q(1, 2));
        assert_eq!(r.get(1, 1), &q(-1, 4));
    }

    #[test]
    fn recognition_snaps_near_rationals() {
        assert_eq!(recognize_scalar(0.3333333333333, 1e-10, 12), Some(q(1, 3)));
        assert_eq!(
            recognize_scalar(-2.0000000000001, 1e-10, 12),
            Some(q(-2, 1))
        );
        assert_eq!(recognize_scalar(std::f64::consts::PI, 1e-10, 12), None);
    }

    #[test]
    fn kron_and_product_are_exact() {
        let a = RationalMatrix::from_fn(2, |r, c| q(r as i64 + 1, c as i64 + 2));
        let b = RationalMatrix::from_fn(2, |r, c| q(c as i64 - r as i64, 3));
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.get(3, 2), &(a.get(1, 1) * b.get(1, 0)));
        let p = a.mul(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(p, a);
    }
}
