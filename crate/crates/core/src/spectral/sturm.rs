//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
//!
//! Deliberately free of any dependence on the flow so it can serve as an
//! independent oracle for isospectrality and limit checks.

use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::jacobi::{DenseSymmetric, Matrix};
use crate::scalar::Real;

const MAX_BISECTIONS: usize = 10_000;

/// Number of eigenvalues strictly below `x`, from the signs of the LDLᵀ
/// pivots of `T - xI`.
pub fn sturm_count<T: Real>(diag: &[T], offdiag: &[T], x: T, pivmin: T) -> usize {
    let mut count = 0;
    let mut q = T::one();
    for i in 0..diag.len() {
        let coupling = if i == 0 { T::zero() } else { offdiag[i - 1] * offdiag[i - 1] / q };
        q = diag[i] - x - coupling;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing every eigenvalue, padded slightly.
fn gershgorin<T: Real>(diag: &[T], offdiag: &[T]) -> (T, T) {
    let n = diag.len();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { T::zero() };
        let right = if i + 1 < n { offdiag[i].abs() } else { T::zero() };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let pad = T::lit(4.0) * T::epsilon() * lo.abs().max(hi.abs()) + T::min_positive_value();
    (lo - pad, hi + pad)
}

/// All eigenvalues of the symmetric tridiagonal matrix with main diagonal
/// `diag` and off-diagonal `offdiag`, ascending, each bisected to width
/// `tol` (or to machine resolution when `tol` is below it).
pub fn eigenvalues_tridiagonal<T: Real>(diag: &[T], offdiag: &[T], tol: T) -> Result<Spectrum<T>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if offdiag.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, found: offdiag.len() });
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidArgument("bisection tolerance must be positive".into()));
    }
    if let Some(index) = diag.iter().chain(offdiag).position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if n == 1 {
        return Ok(Spectrum::from_sorted(vec![diag[0]]));
    }

    let max_e2 = offdiag.iter().fold(T::zero(), |m, e| m.max(*e * *e));
    let pivmin = T::min_positive_value() * max_e2.max(T::one());
    let (glo, ghi) = gershgorin(diag, offdiag);

    let mut values = Vec::with_capacity(n);
    let mut lo_hint = glo;
    for k in 0..n {
        // eigenvalue k is the smallest x with count(x) > k
        let mut lo = lo_hint;
        let mut hi = ghi;
        let mut converged = false;
        for _ in 0..MAX_BISECTIONS {
            let mid = lo + (hi - lo) / T::lit(2.0);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            if sturm_count(diag, offdiag, mid, pivmin) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if !converged {
            return Err(Error::NonConvergence { index: k });
        }
        values.push(lo + (hi - lo) / T::lit(2.0));
        lo_hint = lo;
    }
    Ok(Spectrum::from_sorted(values))
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form,
/// returning `(diag, offdiag)` of an orthogonally similar matrix.
pub fn tridiagonalize<T: Real>(h: &DenseSymmetric<T>) -> (Vec<T>, Vec<T>) {
    let n = h.dim();
    let mut a: Matrix<T> = h.to_matrix();
    let two = T::lit(2.0);
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let x: Vec<T> = (0..len).map(|i| *a.get(k + 1 + i, k)).collect();
        // scale first: squares of tiny entries would underflow and leave the
        // reflector non-orthogonal
        let scale = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if scale == T::zero() {
            continue;
        }
        let mut v: Vec<T> = x.iter().map(|t| *t / scale).collect();
        let norm = v.iter().fold(T::zero(), |s, t| s + *t * *t).sqrt();
        let alpha = if v[0] > T::zero() { -norm } else { norm };
        v[0] = v[0] - alpha;
        let alpha = alpha * scale;
        let vnorm = v.iter().fold(T::zero(), |s, t| s + *t * *t).sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for t in v.iter_mut() {
            *t = *t / vnorm;
        }
        // w = A_sub v, K = vᵀw; A_sub <- A_sub - 2 v wᵀ - 2 w vᵀ + 4 K v vᵀ
        let w: Vec<T> = (0..len)
            .map(|i| (0..len).fold(T::zero(), |s, j| s + *a.get(k + 1 + i, k + 1 + j) * v[j]))
            .collect();
        let kk = v.iter().zip(&w).fold(T::zero(), |s, (p, q)| s + *p * *q);
        for i in 0..len {
            for j in 0..len {
                let cur = *a.get(k + 1 + i, k + 1 + j);
                let upd = cur - two * v[i] * w[j] - two * w[i] * v[j] + two * two * kk * v[i] * v[j];
                a.set(k + 1 + i, k + 1 + j, upd);
            }
        }
        a.set(k + 1, k, alpha);
        a.set(k, k + 1, alpha);
        for i in 1..len {
            a.set(k + 1 + i, k, T::zero());
            a.set(k, k + 1 + i, T::zero());
        }
    }
    let diag = (0..n).map(|i| *a.get(i, i)).collect();
    let off = (0..n.saturating_sub(1)).map(|i| *a.get(i, i + 1)).collect();
    (diag, off)
}

/// Eigenvalues of a dense symmetric matrix (Householder + bisection).
pub fn eigenvalues_symmetric<T: Real>(h: &DenseSymmetric<T>, tol: T) -> Result<Spectrum<T>> {
    let (d, e) = tridiagonalize(h);
    eigenvalues_tridiagonal(&d, &e, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tiny_columns_keep_the_reflection_orthogonal() {
        let mut h = DenseSymmetric::<f64>::zeros(4);
        h.set(0, 0, 1.0);
        h.set(2, 0, -2.5e-161);
        h.set(3, 0, -2.8e-162);
        h.set(1, 1, 3.9);
        h.set(2, 2, 3.9);
        h.set(3, 3, 3.9);
        h.set(2, 3, -8.9);
        let s = eigenvalues_symmetric(&h, 1e-14).unwrap();
        let want = [3.9 - 8.9, 1.0, 3.9, 3.9 + 8.9];
        for (g, w) in s.values().iter().zip(want) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_by_two_anti_diagonal() {
        let s = eigenvalues_tridiagonal(&[0.0, 0.0], &[1.0], 1e-15).unwrap();
        assert_abs_diff_eq!(s.values()[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn one_by_one() {
        let s = eigenvalues_tridiagonal(&[3.5], &[], 1e-15).unwrap();
        assert_eq!(s.values(), &[3.5]);
    }

    #[test]
    fn example_one_quartic() {
        // roots of x^4 - 65 x^2 + 100
        let disc = (65.0f64 * 65.0 - 400.0).sqrt();
        let big = ((65.0 + disc) / 2.0).sqrt();
        let small = ((65.0 - disc) / 2.0).sqrt();
        let s = eigenvalues_tridiagonal(&[0.0; 4], &[5.0, -6.0, -2.0], 1e-14).unwrap();
        let expected = [-big, -small, small, big];
        for (got, want) in s.values().iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(small, 1.2557, epsilon = 1e-4);
        assert_abs_diff_eq!(big, 7.9639, epsilon = 1e-4);
    }

    #[test]
    fn three_by_three_closed_form() {
        let s = eigenvalues_tridiagonal(&[0.0; 3], &[1.0, 1.0], 1e-15).unwrap();
        let r2 = 2f64.sqrt();
        assert_abs_diff_eq!(s.values()[0], -r2, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values()[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values()[2], r2, epsilon = 1e-14);
    }

    #[test]
    fn diagonal_with_repeats() {
        let s = eigenvalues_tridiagonal(&[2.0, -1.0, 2.0], &[0.0, 0.0], 1e-15).unwrap();
        assert_eq!(s.values(), &[-1.0, 2.0, 2.0]);
        assert_eq!(s.gap_min(), 0.0);
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(eigenvalues_tridiagonal::<f64>(&[], &[], 1e-9), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            eigenvalues_tridiagonal(&[0.0, 0.0], &[], 1e-9),
            Err(Error::DimensionMismatch { expected: 1, found: 0 })
        ));
        assert!(eigenvalues_tridiagonal(&[0.0], &[], 0.0).is_err());
        assert!(matches!(eigenvalues_tridiagonal(&[0.0, f64::NAN], &[1.0], 1e-9), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn householder_preserves_spectrum_of_tridiagonal_input() {
        let h = crate::jacobi::embed(&crate::jacobi::OffDiagonal::new(vec![5.0, -6.0, -2.0]).unwrap());
        let direct = eigenvalues_tridiagonal(&[0.0; 4], &[5.0, -6.0, -2.0], 1e-14).unwrap();
        let dense = eigenvalues_symmetric(&h, 1e-14).unwrap();
        for (a, b) in direct.values().iter().zip(dense.values()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
        }
    }

    #[test]
    fn householder_on_full_matrix_matches_trace_and_frobenius() {
        let h = DenseSymmetric::<f64>::from_upper_fn(6, |i, j| ((3 * i + 5 * j) % 7) as f64 - 3.0);
        let s = eigenvalues_symmetric(&h, 1e-14).unwrap();
        let sum: f64 = s.values().iter().sum();
        let sum_sq: f64 = s.values().iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(sum, h.trace(), epsilon = 1e-11);
        assert_abs_diff_eq!(sum_sq, h.frobenius_norm_sq(), epsilon = 1e-10);
    }

    #[test]
    fn runs_in_single_precision() {
        let s = eigenvalues_tridiagonal(&[0.0f32; 3], &[1.0, 1.0], 1e-6).unwrap();
        assert!((s.values()[2] - std::f32::consts::SQRT_2).abs() < 1e-6);
    }
}
