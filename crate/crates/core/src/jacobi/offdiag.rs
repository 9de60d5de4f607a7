//! Compact encoding of zero-diagonal Jacobi matrices.

use serde::{Deserialize, Serialize};

use super::matrix::DenseSymmetric;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Super-diagonal `(a_1, ..., a_{n-1})` of an `n x n` symmetric tridiagonal
/// matrix with zero diagonal. Entry `i` (0-based) sits at `(i, i + 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct OffDiagonal<T> {
    entries: Vec<T>,
}

impl<T: Scalar> OffDiagonal<T> {
    /// Wraps `entries`; the implied dimension is `entries.len() + 1`.
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if let Some(index) = entries.iter().position(|x| !x.is_finite_scalar()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { entries })
    }

    /// Like [`OffDiagonal::new`] but also checks the length against `n`.
    pub fn with_dim(n: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if entries.len() != n - 1 {
            return Err(Error::DimensionMismatch { expected: n - 1, found: entries.len() });
        }
        Self::new(entries)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self { entries: vec![T::zero(); n - 1] }
    }

    /// Dimension `n` of the implied matrix.
    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len() + 1
    }

    #[inline]
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    /// Squared Euclidean norm of the entries (half of `||embed(a)||_F^2`).
    pub fn norm_sq(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Index of the first exactly-zero entry.
    pub fn first_zero(&self) -> Option<usize> {
        self.entries.iter().position(|x| x.is_zero())
    }
}

impl<T: Real> OffDiagonal<T> {
    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// `||embed(a)||_F = sqrt(2) * ||a||`.
    pub fn frobenius_norm(&self) -> T {
        (self.norm_sq() + self.norm_sq()).sqrt()
    }

    /// Largest absolute entry-wise difference; `None` on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> Option<T> {
        if self.dim() != other.dim() {
            return None;
        }
        Some(
            self.entries
                .iter()
                .zip(&other.entries)
                .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs())),
        )
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for OffDiagonal<T> {
    type Error = Error;

    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T> From<OffDiagonal<T>> for Vec<T> {
    fn from(a: OffDiagonal<T>) -> Self {
        a.entries
    }
}

/// The dense zero-diagonal tridiagonal matrix encoded by `a`.
pub fn embed<T: Scalar>(a: &OffDiagonal<T>) -> DenseSymmetric<T> {
    let n = a.dim();
    let mut h = DenseSymmetric::zeros(n);
    for (i, v) in a.entries().iter().enumerate() {
        h.set(i, i + 1, v.clone());
    }
    h
}

/// Reads the super-diagonal back out of `h`, rejecting any diagonal or
/// out-of-band entry larger than `strict_tol` in magnitude.
pub fn extract_offdiag<T: Scalar>(h: &DenseSymmetric<T>, strict_tol: &T) -> Result<OffDiagonal<T>> {
    let n = h.dim();
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    for i in 0..n {
        for j in i..n {
            if j == i + 1 {
                continue;
            }
            let v = h.get(i, j);
            if v.abs_value() > *strict_tol || !v.is_finite_scalar() {
                return Err(Error::StructureViolation {
                    row: i + 1,
                    col: j + 1,
                    value: v.to_f64_approx(),
                    tol: strict_tol.to_f64_approx(),
                });
            }
        }
    }
    OffDiagonal::new((0..n - 1).map(|i| h.get(i, i + 1).clone()).collect())
}

/// Rounding-level structural tolerance `1e-12 * max(1, ||H||_F)`.
pub fn default_strict_tol<T: Real>(h: &DenseSymmetric<T>) -> T {
    T::lit(1e-12) * h.frobenius_norm().max(T::one())
}
