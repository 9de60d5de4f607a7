use super::{Check, VerificationReport};
use crate::error::{Error, Result};
use crate::jacobi::{equilibrium_residual_sq, OffDiagonal};
use crate::spectral::{eigenvalues_offdiag, enumerate_equilibria, equilibrium_count_formula, SpectralTolerances, Spectrum};

/// The test spectrum for dimension `n`: `±1, ..., ±floor(n/2)`, plus `0`
/// for odd `n`.
fn integer_spectrum(n: usize) -> Spectrum<f64> {
    let m = (n / 2) as i64;
    let mut v: Vec<f64> = (1..=m).flat_map(|k| [-k as f64, k as f64]).collect();
    if n % 2 == 1 {
        v.push(0.0);
    }
    Spectrum::from_unsorted(v)
}

/// Every equilibrium with entries in `{0, ±1, ..., ±floor(n/2)}` that is
/// isospectral to the integer spectrum, found by exhaustive search. This is
/// independent of the block-structure enumeration.
pub fn brute_force_equilibria(n: usize) -> Result<Vec<OffDiagonal<f64>>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("brute force needs n >= 2, got {n}")));
    }
    let m = (n / 2) as i64;
    let target = integer_spectrum(n);
    // ||H||_F^2 = sum of squared eigenvalues = 2 sum a_i^2
    let norm_sq: i64 = (1..=m).map(|k| k * k).sum();
    let mut found = Vec::new();
    let mut stack = Vec::with_capacity(n - 1);
    search(n - 1, m, norm_sq, &mut stack, &mut |entries| {
        let a = OffDiagonal::new(entries.iter().map(|&v| v as f64).collect()).expect("integers are finite");
        if equilibrium_residual_sq(&a) != 0.0 {
            return;
        }
        let spec = eigenvalues_offdiag(&a, 1e-13).expect("valid tridiagonal");
        if spec.max_deviation(&target).is_some_and(|d| d < 1e-9) {
            found.push(a);
        }
    });
    Ok(found)
}

fn search(len: usize, m: i64, budget: i64, stack: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
    if stack.len() == len {
        if budget == 0 {
            visit(stack);
        }
        return;
    }
    let prev_nonzero = stack.last().is_some_and(|&v| v != 0);
    for v in -m..=m {
        if v * v > budget || (prev_nonzero && v != 0) {
            continue;
        }
        stack.push(v);
        search(len, m, budget - v * v, stack, visit);
        stack.pop();
    }
}

/// Compares the closed-form count, the block enumeration and a brute-force
/// search for dimension `n` (`2 <= n <= 8`).
pub fn verify_equilibrium_counts(n: usize) -> Result<VerificationReport> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("equilibrium counts are checked for 2 <= n <= 8, got {n}")));
    }
    let spec = integer_spectrum(n);
    let tols = SpectralTolerances::for_scale(n as f64);
    let formula = equilibrium_count_formula(n);
    let unsigned = enumerate_equilibria(&spec, false, &tols)?;
    let signed = enumerate_equilibria(&spec, true, &tols)?;
    let brute = brute_force_equilibria(n)?;
    let brute_unsigned = brute.iter().filter(|a| a.entries().iter().all(|v| *v >= 0.0)).count();

    let key = |a: &OffDiagonal<f64>| a.entries().iter().map(|v| *v as i64).collect::<Vec<_>>();
    let mut enumerated: Vec<_> = signed.points.iter().map(key).collect();
    let mut searched: Vec<_> = brute.iter().map(key).collect();
    enumerated.sort();
    searched.sort();
    enumerated.dedup();
    let mismatches = if enumerated == searched {
        0
    } else {
        enumerated.iter().filter(|p| !searched.contains(p)).count() + searched.iter().filter(|p| !enumerated.contains(p)).count()
    };

    let eq = |name: &str, got: usize, want: u64| Check::new(name, got as u64 == want, got as f64, want as f64);
    let checks = vec![
        eq("enumerated_unsigned_count", unsigned.points.len(), formula),
        eq("brute_force_unsigned_count", brute_unsigned, formula),
        eq("enumerated_signed_count", signed.points.len(), signed.count_with_signs),
        eq("brute_force_signed_count", brute.len(), signed.count_with_signs),
        Check::at_most("enumeration_matches_brute_force", mismatches as f64, 0.0),
    ];
    Ok(VerificationReport::new(checks, None, None))
}
