use itertools::Itertools;

use super::limit::separated_magnitudes;
use super::spectrum::{SpectralTolerances, Spectrum};
use crate::error::Result;
use crate::jacobi::OffDiagonal;
use crate::scalar::Real;

/// Isospectral equilibria of the flow for one spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumSet<T> {
    /// Enumerated points (signed or unsigned, as requested).
    pub points: Vec<OffDiagonal<T>>,
    /// Permutation count: `(n/2)!` for even `n`, `((n+1)/2) ((n-1)/2)!` for odd `n`.
    pub count_formula: u64,
    /// `count_formula * 2^floor(n/2)`, counting every sign pattern.
    pub count_with_signs: u64,
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// Permutation count of equilibria for dimension `n`.
pub fn equilibrium_count_formula(n: usize) -> u64 {
    let n = n as u64;
    if n % 2 == 0 {
        factorial(n / 2)
    } else {
        (n + 1) / 2 * factorial((n - 1) / 2)
    }
}

/// Nonzero slots (0-based) of the block-diagonal equilibrium whose single
/// 1x1 zero block is block number `zero_block` (odd `n`) or that has no
/// zero block (`None`, even `n`).
fn block_slots(n: usize, zero_block: Option<usize>) -> Vec<usize> {
    let m = n / 2;
    let mut slots = Vec::with_capacity(m);
    let mut row = 0;
    let mut block = 0;
    while row + 1 < n {
        if Some(block) == zero_block {
            row += 1;
        } else {
            slots.push(row);
            row += 2;
        }
        block += 1;
    }
    debug_assert_eq!(slots.len(), m);
    slots
}

/// All block-diagonal zero-diagonal Jacobi matrices isospectral to `spec`.
///
/// Even `n`: `D1(c_1, 0, c_3, 0, ...)` with the nonzero slots a permutation
/// of the magnitudes. Odd `n`: additionally every placement of the 1x1 zero
/// block among the `(n+1)/2` block positions. With `include_signs` every
/// sign pattern on the nonzero slots is listed as well.
pub fn enumerate_equilibria<T: Real>(
    spec: &Spectrum<T>,
    include_signs: bool,
    tols: &SpectralTolerances<T>,
) -> Result<EquilibriumSet<T>> {
    let n = spec.len();
    let mags = separated_magnitudes(spec, tols)?;
    let m = mags.len();
    let placements: Vec<Option<usize>> = if n % 2 == 0 { vec![None] } else { (0..=m).map(Some).collect() };
    let sign_patterns: u64 = if include_signs { 1 << m } else { 1 };

    let mut points = Vec::new();
    for zero_block in placements {
        let slots = block_slots(n, zero_block);
        for perm in (0..m).permutations(m) {
            for mask in 0..sign_patterns {
                let mut entries = vec![T::zero(); n - 1];
                for (k, (&slot, &which)) in slots.iter().zip(&perm).enumerate() {
                    let sign = if mask >> k & 1 == 1 { -T::one() } else { T::one() };
                    entries[slot] = sign * mags[which];
                }
                points.push(OffDiagonal::new(entries)?);
            }
        }
    }

    let count_formula = equilibrium_count_formula(n);
    Ok(EquilibriumSet { points, count_formula, count_with_signs: count_formula << m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::equilibrium_residual;

    fn spec(v: &[f64]) -> Spectrum<f64> {
        Spectrum::from_sorted(v.to_vec())
    }

    fn tols() -> SpectralTolerances<f64> {
        SpectralTolerances::for_scale(3.0)
    }

    #[test]
    fn four_unsigned() {
        let set = enumerate_equilibria(&spec(&[-2.0, -1.0, 1.0, 2.0]), false, &tols()).unwrap();
        let pts: Vec<Vec<f64>> = set.points.into_iter().map(|p| p.into_entries()).collect();
        assert_eq!(pts, vec![vec![1.0, 0.0, 2.0], vec![2.0, 0.0, 1.0]]);
        assert_eq!(set.count_formula, 2);
        assert_eq!(set.count_with_signs, 8);
    }

    #[test]
    fn four_signed() {
        let set = enumerate_equilibria(&spec(&[-2.0, -1.0, 1.0, 2.0]), true, &tols()).unwrap();
        assert_eq!(set.points.len(), 8);
        assert!(set.points.iter().all(|p| equilibrium_residual(p) == 0.0));
    }

    #[test]
    fn five_unsigned() {
        let set = enumerate_equilibria(&spec(&[-2.0, -1.0, 0.0, 1.0, 2.0]), false, &tols()).unwrap();
        assert_eq!(set.points.len(), 6);
        assert_eq!(set.count_formula, 6);
        let pts: Vec<Vec<f64>> = set.points.iter().map(|p| p.entries().to_vec()).collect();
        assert!(pts.contains(&vec![0.0, 1.0, 0.0, 2.0]));
        assert!(pts.contains(&vec![1.0, 0.0, 0.0, 2.0]));
        assert!(pts.contains(&vec![2.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn formula_values() {
        assert_eq!(equilibrium_count_formula(4), 2);
        assert_eq!(equilibrium_count_formula(5), 6);
        assert_eq!(equilibrium_count_formula(6), 6);
        assert_eq!(equilibrium_count_formula(7), 24);
        assert_eq!(equilibrium_count_formula(1), 1);
        assert_eq!(equilibrium_count_formula(2), 1);
    }

    #[test]
    fn degenerate_magnitudes() {
        let err = enumerate_equilibria(&spec(&[-1.0, -1.0, 1.0, 1.0]), false, &tols()).unwrap_err();
        assert!(matches!(err, crate::Error::DegenerateMagnitudes { .. }));
    }

    #[test]
    fn block_layouts() {
        assert_eq!(block_slots(4, None), vec![0, 2]);
        assert_eq!(block_slots(5, Some(0)), vec![1, 3]);
        assert_eq!(block_slots(5, Some(1)), vec![0, 3]);
        assert_eq!(block_slots(5, Some(2)), vec![0, 2]);
        assert_eq!(block_slots(1, Some(0)), Vec::<usize>::new());
    }
}
