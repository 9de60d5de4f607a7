//! The maps defining the flow: `N`, `K`, the double-bracket right-hand side
//! and the Lyapunov function.

use super::matrix::{commutator, DenseSymmetric, Matrix, SkewSymmetric};
use super::offdiag::OffDiagonal;
use crate::scalar::{Real, Scalar};

/// Coefficient of the `i`-th (0-based) super-diagonal entry under `N`.
#[inline]
fn n_coeff<T: Scalar>(i: usize) -> T {
    T::from_int(i as i64 - 1)
}

/// `N(A)`: the zero-diagonal tridiagonal matrix whose super-diagonal entry
/// `i` (1-based) is `(i - 2) * A[i][i+1]`. Only the super-diagonal of `A` is read.
pub fn map_n<T: Scalar>(a: &DenseSymmetric<T>) -> DenseSymmetric<T> {
    let n = a.dim();
    let mut out = DenseSymmetric::zeros(n);
    for i in 0..n.saturating_sub(1) {
        out.set(i, i + 1, n_coeff::<T>(i) * a.get(i, i + 1).clone());
    }
    out
}

/// `N` restricted to the compact encoding.
pub fn map_n_offdiag<T: Scalar>(a: &OffDiagonal<T>) -> OffDiagonal<T> {
    let entries = a.entries().iter().enumerate().map(|(i, v)| n_coeff::<T>(i) * v.clone()).collect();
    OffDiagonal::new(entries).expect("scaling preserves finiteness")
}

/// `K(H)`: skew matrix with `K[i][i+2] = a_i * a_{i+1}` and nothing else.
pub fn map_k<T: Scalar>(a: &OffDiagonal<T>) -> SkewSymmetric<T> {
    let n = a.dim();
    let mut k = SkewSymmetric::zeros(n);
    for (i, w) in a.entries().windows(2).enumerate() {
        k.set(i, i + 2, w[0].clone() * w[1].clone());
    }
    k
}

/// `[H, N(H)]` for an arbitrary symmetric `H`.
pub fn bracket_with_n<T: Scalar>(h: &DenseSymmetric<T>) -> Matrix<T> {
    commutator(&h.to_matrix(), &map_n(h).to_matrix()).expect("operands share a dimension")
}

/// `[H, [H, N(H)]]` as a full matrix (symmetric up to rounding).
pub fn double_bracket<T: Scalar>(h: &DenseSymmetric<T>) -> Matrix<T> {
    let hm = h.to_matrix();
    let inner = commutator(&hm, &map_n(h).to_matrix()).expect("operands share a dimension");
    commutator(&hm, &inner).expect("operands share a dimension")
}

/// Right-hand side of the flow on dense symmetric matrices.
pub fn rhs_matrix<T: Scalar>(h: &DenseSymmetric<T>) -> DenseSymmetric<T> {
    DenseSymmetric::from_upper(&double_bracket(h))
}

/// Componentwise right-hand side into `out`:
/// `da_i = a_i (a_{i-1}^2 - a_{i+1}^2)` with `a_0 = a_n = 0`.
pub fn rhs_componentwise_into<T: Scalar>(a: &[T], out: &mut [T]) {
    debug_assert_eq!(a.len(), out.len());
    let m = a.len();
    for i in 0..m {
        let left = if i > 0 { a[i - 1].clone() * a[i - 1].clone() } else { T::zero() };
        let right = if i + 1 < m { a[i + 1].clone() * a[i + 1].clone() } else { T::zero() };
        out[i] = a[i].clone() * (left - right);
    }
}

pub fn rhs_componentwise<T: Scalar>(a: &OffDiagonal<T>) -> OffDiagonal<T> {
    let mut out = vec![T::zero(); a.entries().len()];
    rhs_componentwise_into(a.entries(), &mut out);
    OffDiagonal::new(out).expect("polynomial of finite entries")
}

/// `f(H) = -1/4 ||H - N(H)||^2 + 1/4 ||N(H)||^2`.
pub fn lyapunov_f<T: Scalar>(h: &DenseSymmetric<T>) -> T {
    let nh = map_n(h);
    let diff = h.sub(&nh).expect("same dimension");
    let quarter = T::one() / T::from_int(4);
    quarter.clone() * (nh.frobenius_norm_sq() - diff.frobenius_norm_sq())
}

/// Expanded form `-1/4 ||H||^2 + 1/2 trace(N(H) H)`.
pub fn lyapunov_f_trace<T: Scalar>(h: &DenseSymmetric<T>) -> T {
    let nh = map_n(h);
    let quarter = T::one() / T::from_int(4);
    let half = T::one() / T::from_int(2);
    half * nh.trace_of_product(h).expect("same dimension") - quarter * h.frobenius_norm_sq()
}

/// `f` evaluated directly on the compact encoding:
/// `sum_i a_i^2 ((i - 2) - 1/2)` with 1-based `i`.
pub fn lyapunov_f_offdiag<T: Scalar>(a: &OffDiagonal<T>) -> T {
    let half = T::one() / T::from_int(2);
    a.entries().iter().enumerate().fold(T::zero(), |acc, (i, v)| {
        acc + (n_coeff::<T>(i) - half.clone()) * v.clone() * v.clone()
    })
}

/// `||K(a)||_F^2 = 2 * sum a_i^2 a_{i+1}^2`.
pub fn equilibrium_residual_sq<T: Scalar>(a: &OffDiagonal<T>) -> T {
    map_k(a).frobenius_norm_sq()
}

/// `||K(a)||_F`; zero exactly at equilibria of the flow.
pub fn equilibrium_residual<T: Real>(a: &OffDiagonal<T>) -> T {
    equilibrium_residual_sq(a).sqrt()
}
