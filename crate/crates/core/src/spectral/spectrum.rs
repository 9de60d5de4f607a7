use super::sturm::eigenvalues_tridiagonal;
use crate::error::{Error, Result};
use crate::jacobi::OffDiagonal;
use crate::scalar::Real;

/// Ascending eigenvalues with separation and `±` pairing diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
    gap_min: T,
    pair_deviation: T,
}

impl<T: Real> Spectrum<T> {
    /// `values` must already be ascending.
    pub fn from_sorted(values: Vec<T>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        let gap_min = values.windows(2).map(|w| w[1] - w[0]).fold(T::infinity(), T::min);
        let n = values.len();
        let mut pair_deviation = (0..n / 2)
            .map(|k| (values[k] + values[n - 1 - k]).abs())
            .fold(T::zero(), T::max);
        if n % 2 == 1 {
            pair_deviation = pair_deviation.max(values[n / 2].abs());
        }
        Self { values, gap_min, pair_deviation }
    }

    /// Sorts and wraps arbitrary eigenvalues.
    pub fn from_unsorted(mut values: Vec<T>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        Self::from_sorted(values)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest consecutive gap (`+inf` for a single eigenvalue).
    pub fn gap_min(&self) -> T {
        self.gap_min
    }

    /// Largest `|v_k + v_{n-1-k}|` (and `|v_mid|` for odd `n`).
    pub fn pair_deviation(&self) -> T {
        self.pair_deviation
    }

    /// Whether the values come in `±λ` pairs, plus exactly one zero for odd `n`.
    pub fn is_paired(&self, pair_tol: T) -> bool {
        if self.pair_deviation > pair_tol {
            return false;
        }
        let n = self.values.len();
        if n % 2 == 1 && n > 1 {
            // exactly one near-zero value
            let mid = n / 2;
            return self.values[mid - 1].abs() > pair_tol && self.values[mid + 1].abs() > pair_tol;
        }
        true
    }

    /// The `floor(n/2)` nonnegative magnitudes `|λ_1| <= |λ_2| <= ...` of a
    /// paired spectrum (the upper half of the sorted values).
    pub fn magnitudes(&self) -> Vec<T> {
        let n = self.values.len();
        self.values[n - n / 2..].iter().map(|v| v.abs()).collect()
    }

    /// Largest `|self_k - other_k|`; `None` when lengths differ.
    pub fn max_deviation(&self, other: &Self) -> Option<T> {
        if self.len() != other.len() {
            return None;
        }
        Some(self.values.iter().zip(&other.values).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs())))
    }
}

/// Thresholds for spectrum classification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralTolerances<T> {
    /// Bisection width.
    pub eig_tol: T,
    /// Allowed deviation from exact `±` symmetry.
    pub pair_tol: T,
    /// Minimum separation for eigenvalues (and magnitudes) to count as distinct.
    pub gap_tol: T,
}

impl<T: Real> SpectralTolerances<T> {
    /// Defaults scaled by `1 + norm`: pair `1e-9`, gap `1e-8`, bisection at
    /// a few ulps. In single precision the relative factors are raised to
    /// stay above rounding.
    pub fn for_scale(norm: T) -> Self {
        let scale = T::one() + norm.abs();
        let eps = T::epsilon();
        Self {
            eig_tol: T::lit(8.0) * eps * scale,
            pair_tol: T::lit(1e-9).max(T::lit(64.0) * eps) * scale,
            gap_tol: T::lit(1e-8).max(T::lit(640.0) * eps) * scale,
        }
    }

    pub fn for_offdiag(a: &OffDiagonal<T>) -> Self {
        Self::for_scale(a.norm())
    }
}

/// Eigenvalues of `embed(a)` with no structural validation.
pub fn eigenvalues_offdiag<T: Real>(a: &OffDiagonal<T>, eig_tol: T) -> Result<Spectrum<T>> {
    let diag = vec![T::zero(); a.dim()];
    eigenvalues_tridiagonal(&diag, a.entries(), eig_tol)
}

/// Spectrum of the zero-diagonal Jacobi matrix `embed(a)`, checked for `±`
/// pairing and pairwise distinct eigenvalues.
pub fn spectrum_zero_diag<T: Real>(a: &OffDiagonal<T>, tols: &SpectralTolerances<T>) -> Result<Spectrum<T>> {
    let spec = eigenvalues_offdiag(a, tols.eig_tol)?;
    if !spec.is_paired(tols.pair_tol) {
        return Err(Error::PairingViolation {
            deviation: spec.pair_deviation().to_f64_lossy(),
            tol: tols.pair_tol.to_f64_lossy(),
        });
    }
    if spec.gap_min() < tols.gap_tol {
        return Err(Error::DegenerateSpectrum { gap: spec.gap_min().to_f64_lossy(), tol: tols.gap_tol.to_f64_lossy() });
    }
    Ok(spec)
}
