//! Small dense matrices: general square, packed symmetric, packed skew.

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Square matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * n + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<T> {
        self.check_dim(other)?;
        let n = self.n;
        let mut acc = T::zero();
        for i in 0..n {
            for k in 0..n {
                acc = acc + self.get(i, k).clone() * other.get(k, i).clone();
            }
        }
        Ok(acc)
    }

    pub fn frobenius_norm_sq(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = (self.get(i, j).clone() - self.get(j, i).clone()).abs_value();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| {
            let a = x.abs_value();
            if a > acc {
                a
            } else {
                acc
            }
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { n: self.n, data })
    }
}

impl<T: Real> Matrix<T> {
    pub fn frobenius_norm(&self) -> T {
        self.frobenius_norm_sq().sqrt()
    }
}

/// `[A, B] = AB - BA`.
pub fn commutator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Symmetric matrix holding one copy of each off-diagonal pair (packed upper triangle).
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSymmetric<T> {
    n: usize,
    upper: Vec<T>,
}

impl<T: Scalar> DenseSymmetric<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, upper: vec![T::zero(); n * (n + 1) / 2] }
    }

    /// Builds from a closure evaluated on the upper triangle `i <= j` only.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        Self { n, upper }
    }

    /// Keeps the upper triangle of `m`.
    pub fn from_upper(m: &Matrix<T>) -> Self {
        Self::from_upper_fn(m.dim(), |i, j| m.get(i, j).clone())
    }

    /// Accepts a full matrix whose mirrored entries differ by at most `tol`;
    /// the stored value is the average of each pair.
    pub fn from_rows(rows: Vec<Vec<T>>, tol: &T) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        for (idx, v) in m.iter().enumerate() {
            if !v.is_finite_scalar() {
                return Err(Error::NonFinite { index: idx });
            }
        }
        let two = T::from_int(2);
        for i in 0..m.dim() {
            for j in (i + 1)..m.dim() {
                let d = (m.get(i, j).clone() - m.get(j, i).clone()).abs_value();
                if d > *tol {
                    return Err(Error::Validation(format!(
                        "matrix is not symmetric at ({}, {}): |difference| = {:e}",
                        i + 1,
                        j + 1,
                        d.to_f64_approx()
                    )));
                }
            }
        }
        Ok(Self::from_upper_fn(m.dim(), |i, j| (m.get(i, j).clone() + m.get(j, i).clone()) / two.clone()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i hold n + (n-1) + ... + (n-i+1) entries
        i * (2 * self.n - i + 1) / 2 + (j - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.upper[self.index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let idx = self.index(i, j);
        self.upper[idx] = v;
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, |i, j| self.get(i, j).clone())
    }

    pub fn packed(&self) -> &[T] {
        &self.upper
    }

    pub fn from_packed(n: usize, upper: Vec<T>) -> Result<Self> {
        let expected = n * (n + 1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: upper.len() });
        }
        Ok(Self { n, upper })
    }

    /// `alpha * self + beta * other`.
    pub fn lin_comb(&self, alpha: &T, other: &Self, beta: &T) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let upper = self
            .upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| alpha.clone() * a.clone() + beta.clone() * b.clone())
            .collect();
        Ok(Self { n: self.n, upper })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lin_comb(&T::one(), other, &-T::one())
    }

    /// Sum over all `n^2` entries, off-diagonal pairs counted twice.
    pub fn frobenius_norm_sq(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.get(i, j).clone();
                let sq = v.clone() * v;
                acc = if i == j { acc + sq } else { acc + sq.clone() + sq };
            }
        }
        acc
    }

    /// `trace(self * other)`; for symmetric operands this is the entrywise inner product.
    pub fn trace_of_product(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in i..self.n {
                let p = self.get(i, j).clone() * other.get(i, j).clone();
                acc = if i == j { acc + p } else { acc + p.clone() + p };
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

impl<T: Real> DenseSymmetric<T> {
    pub fn frobenius_norm(&self) -> T {
        self.frobenius_norm_sq().sqrt()
    }
}

/// Skew-symmetric matrix stored as its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewSymmetric<T> {
    n: usize,
    upper: Vec<T>,
}

impl<T: Scalar> SkewSymmetric<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, upper: vec![T::zero(); n * n.saturating_sub(1) / 2] }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        // rows 0..i hold (n-1) + (n-2) + ... + (n-i) entries
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[self.index(i, j)].clone(),
            Greater => -self.upper[self.index(j, i)].clone(),
            Equal => T::zero(),
        }
    }

    /// Sets `(i, j)` and implicitly `(j, i) = -v`. Requires `i != j`.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i != j, "diagonal of a skew-symmetric matrix is fixed at zero");
        if i < j {
            let idx = self.index(i, j);
            self.upper[idx] = v;
        } else {
            let idx = self.index(j, i);
            self.upper[idx] = -v;
        }
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, |i, j| self.get(i, j))
    }

    pub fn frobenius_norm_sq(&self) -> T {
        let s = self.upper.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone());
        s.clone() + s
    }
}

impl<T: Real> SkewSymmetric<T> {
    pub fn frobenius_norm(&self) -> T {
        self.frobenius_norm_sq().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn packed_symmetric_indexing_covers_every_slot_once() {
        for n in 0..7 {
            let s = DenseSymmetric::<f64>::from_upper_fn(n, |i, j| (i * 10 + j) as f64);
            for i in 0..n {
                for j in i..n {
                    assert_eq!(*s.get(i, j), (i * 10 + j) as f64);
                    assert_eq!(*s.get(j, i), (i * 10 + j) as f64);
                }
            }
        }
    }

    #[test]
    fn packed_skew_indexing() {
        let n = 5;
        let mut k = SkewSymmetric::<f64>::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                k.set(i, j, (i * 10 + j) as f64);
            }
        }
        for i in 0..n {
            assert_eq!(k.get(i, i), 0.0);
            for j in (i + 1)..n {
                assert_eq!(k.get(i, j), (i * 10 + j) as f64);
                assert_eq!(k.get(j, i), -((i * 10 + j) as f64));
            }
        }
        let dense = k.to_matrix();
        assert_eq!(dense.transpose(), dense.scale(&-1.0));
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let b = m(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 10.0]]);
        let c = commutator(&Matrix::identity(3), &b).unwrap();
        assert_eq!(c, Matrix::zeros(3));
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = m(&[&[1.5, -2.0], &[0.25, 3.0]]);
        assert_eq!(commutator(&a, &a).unwrap(), Matrix::zeros(2));
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let err = commutator(&Matrix::<f64>::zeros(2), &Matrix::zeros(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn symmetric_from_rows_checks_symmetry() {
        let ok = DenseSymmetric::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]], &0.0).unwrap();
        assert_eq!(*ok.get(1, 0), 1.0);
        let bad = DenseSymmetric::from_rows(vec![vec![0.0, 1.0], vec![1.5, 0.0]], &1e-12);
        assert!(matches!(bad, Err(Error::Validation(_))));
        let nan = DenseSymmetric::from_rows(vec![vec![f64::NAN]], &0.0);
        assert!(matches!(nan, Err(Error::NonFinite { index: 0 })));
    }

    #[test]
    fn frobenius_and_trace_agree_with_dense_forms() {
        let s = DenseSymmetric::<f64>::from_upper_fn(4, |i, j| 1.0 + i as f64 - 0.5 * j as f64);
        let t = DenseSymmetric::<f64>::from_upper_fn(4, |i, j| (i + 2 * j) as f64);
        let (sd, td) = (s.to_matrix(), t.to_matrix());
        assert_eq!(s.frobenius_norm_sq(), sd.frobenius_norm_sq());
        assert_eq!(s.trace_of_product(&t).unwrap(), sd.matmul(&td).unwrap().trace());
        assert_eq!(sd.trace_of_product(&td).unwrap(), sd.matmul(&td).unwrap().trace());
    }
}
