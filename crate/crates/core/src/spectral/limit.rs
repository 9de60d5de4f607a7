use super::spectrum::{SpectralTolerances, Spectrum};
use crate::error::{Error, Result};
use crate::jacobi::{equilibrium_residual_sq, OffDiagonal};
use crate::scalar::Real;

/// Checks that the magnitudes of a paired spectrum are strictly increasing
/// and bounded away from zero by more than `gap_tol`; returns them.
pub(crate) fn separated_magnitudes<T: Real>(spec: &Spectrum<T>, tols: &SpectralTolerances<T>) -> Result<Vec<T>> {
    if !spec.is_paired(tols.pair_tol) {
        return Err(Error::PairingViolation {
            deviation: spec.pair_deviation().to_f64_lossy(),
            tol: tols.pair_tol.to_f64_lossy(),
        });
    }
    let mags = spec.magnitudes();
    let mut prev = T::zero();
    for m in &mags {
        let gap = *m - prev;
        if !(gap > tols.gap_tol) {
            return Err(Error::DegenerateMagnitudes { gap: gap.to_f64_lossy(), tol: tols.gap_tol.to_f64_lossy() });
        }
        prev = *m;
    }
    Ok(mags)
}

/// Off-diagonal slots (0-based) that are nonzero in the sorted limit:
/// `0, 2, 4, ...` for even `n`, `1, 3, 5, ...` for odd `n`.
pub fn limit_slots(n: usize) -> impl Iterator<Item = usize> {
    let start = if n % 2 == 0 { 0 } else { 1 };
    (start..n.saturating_sub(1)).step_by(2)
}

/// The limit of the flow started at `a0`.
///
/// Even `n`: slot `2k-1` (1-based) carries `sgn(a0[2k-1]) |λ_k|`.
/// Odd `n`: slot `2k` carries `sgn(a0[2k]) |λ_k|` and the leading 1x1 block
/// is zero. All other slots are zero. `|λ_1| < |λ_2| < ...` are the positive
/// magnitudes of `spec`.
pub fn predict_limit<T: Real>(
    a0: &OffDiagonal<T>,
    spec: &Spectrum<T>,
    tols: &SpectralTolerances<T>,
) -> Result<OffDiagonal<T>> {
    let n = a0.dim();
    if spec.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: spec.len() });
    }
    if let Some(index) = a0.first_zero() {
        return Err(Error::ZeroEntry { index });
    }
    if equilibrium_residual_sq(a0) == T::zero() {
        return Err(Error::EquilibriumInput);
    }
    let mags = separated_magnitudes(spec, tols)?;
    let mut out = vec![T::zero(); n - 1];
    for (slot, mag) in limit_slots(n).zip(&mags) {
        out[slot] = a0.entries()[slot].signum() * *mag;
    }
    OffDiagonal::new(out)
}
