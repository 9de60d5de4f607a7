use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, VerificationReport};
use crate::error::{Error, Result};
use crate::jacobi::{
    bracket_with_n, commutator, default_strict_tol, embed, extract_offdiag, lyapunov_f, lyapunov_f_trace, map_k,
    map_n, rhs_componentwise, rhs_matrix, DenseSymmetric, OffDiagonal,
};

const ENTRY_RANGE: f64 = 20.0;

fn random_offdiag(rng: &mut ChaCha8Rng, n: usize) -> OffDiagonal<f64> {
    OffDiagonal::with_dim(n, (0..n - 1).map(|_| rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)).collect())
        .expect("finite entries")
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DenseSymmetric<f64> {
    DenseSymmetric::from_upper_fn(n, |_, _| rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE))
}

/// Checks the algebraic identities behind the flow on `trials` seeded random
/// inputs of dimension `n`. Each check reports the worst scaled error.
///
/// * `commutator_form_of_k`: `K(a) = [H, N(H)]` for `H = embed(a)`,
///   error over `1 + ||H||_F^2`, bound `1e-10`.
/// * `rhs_equivalence`: the double bracket equals the componentwise
///   right-hand side, error over `1 + ||a||^3`, bound `1e-10`.
/// * `structure_preservation`: the double bracket of a zero-diagonal
///   tridiagonal matrix has no entries outside the off-diagonals, largest
///   such entry over `max(1, ||rhs||_F)`, bound `1e-12`.
/// * `bracket_trace_identity`: `||[A,B]||^2 = tr(B [A, [A, B]])` for random
///   symmetric `A`, `B`, error over `1 + ||A||^2 ||B||^2`, bound `1e-9`.
/// * `lyapunov_two_forms`: both expressions for `f` agree, error over
///   `1 + ||H||^2`, bound `1e-12`.
/// * `trace_swap`: `tr(N(dH) H) = tr(N(H) dH)` with `dH` the right-hand side,
///   error over `1 + ||H|| ||dH||`, bound `1e-9`.
/// * `n_linearity`: `N(xA + yB) = x N(A) + y N(B)`, bound `1e-12` relative.
pub fn verify_identities(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and trials >= 1, got n = {n}, trials = {trials}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 7];
    let mut bump = |k: usize, v: f64| {
        // NaN must surface as a failure
        if v.is_nan() || v > worst[k] {
            worst[k] = if v.is_nan() { f64::INFINITY } else { v };
        }
    };

    for _ in 0..trials {
        let a = random_offdiag(&mut rng, n);
        let h = embed(&a);
        let hf2 = h.frobenius_norm_sq();

        let k_dense = map_k(&a).to_matrix();
        let bracket = bracket_with_n(&h);
        bump(0, k_dense.sub(&bracket)?.frobenius_norm() / (1.0 + hf2));

        let rhs = rhs_matrix(&h);
        let comp = embed(&rhs_componentwise(&a));
        bump(1, rhs.sub(&comp)?.frobenius_norm() / (1.0 + a.norm().powi(3)));

        let mut out_of_band = 0.0f64;
        for i in 0..n {
            for j in (i..n).filter(|&j| j != i + 1) {
                out_of_band = out_of_band.max(rhs.get(i, j).abs());
            }
        }
        bump(2, out_of_band / rhs.frobenius_norm().max(1.0));
        extract_offdiag(&rhs, &default_strict_tol(&rhs)).map(drop).unwrap_or_else(|_| bump(2, f64::INFINITY));

        let am = random_symmetric(&mut rng, n);
        let bm = random_symmetric(&mut rng, n);
        let (a_full, b_full) = (am.to_matrix(), bm.to_matrix());
        let c = commutator(&a_full, &b_full)?;
        let acc = commutator(&a_full, &c)?;
        let lhs = c.frobenius_norm_sq();
        let rhs_tr = b_full.trace_of_product(&acc)?;
        bump(3, (lhs - rhs_tr).abs() / (1.0 + am.frobenius_norm_sq() * bm.frobenius_norm_sq()));

        let g = random_symmetric(&mut rng, n);
        bump(4, (lyapunov_f(&g) - lyapunov_f_trace(&g)).abs() / (1.0 + g.frobenius_norm_sq()));
        bump(4, (lyapunov_f(&h) - lyapunov_f_trace(&h)).abs() / (1.0 + hf2));

        let dg = rhs_matrix(&g);
        let left = map_n(&dg).trace_of_product(&g)?;
        let right = map_n(&g).trace_of_product(&dg)?;
        bump(5, (left - right).abs() / (1.0 + g.frobenius_norm() * dg.frobenius_norm()));

        let (x, y) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let combo = am.lin_comb(&x, &bm, &y)?;
        let expected = map_n(&am).lin_comb(&x, &map_n(&bm), &y)?;
        let scale = 1.0 + x.abs() * am.frobenius_norm() + y.abs() * bm.frobenius_norm();
        bump(6, map_n(&combo).sub(&expected)?.frobenius_norm() / scale);
    }

    let checks = vec![
        Check::at_most("commutator_form_of_k", worst[0], 1e-10),
        Check::at_most("rhs_equivalence", worst[1], 1e-10),
        Check::at_most("structure_preservation", worst[2], 1e-12),
        Check::at_most("bracket_trace_identity", worst[3], 1e-9),
        Check::at_most("lyapunov_two_forms", worst[4], 1e-12),
        Check::at_most("trace_swap", worst[5], 1e-9),
        Check::at_most("n_linearity", worst[6], 1e-12),
    ];
    Ok(VerificationReport::new(checks, None, Some(seed)))
}
