use proptest::prelude::*;

use jacobi_flow::flow::{integrate, validate_initial, IntegratorConfig};
use jacobi_flow::jacobi::{lyapunov_f_offdiag, rhs_componentwise, OffDiagonal};
use jacobi_flow::spectral::{eigenvalues_offdiag, predict_limit, SpectralTolerances};
use jacobi_flow::verify::{verify_trajectory, Outcome, ToleranceProfile};

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![-10.0..-0.5f64, 0.5..10.0f64]
}

fn offdiag(max_n: usize) -> impl Strategy<Value = OffDiagonal<f64>> {
    prop::collection::vec(entry(), 1..max_n).prop_map(|v| OffDiagonal::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn short_runs_keep_the_invariants(a in offdiag(9)) {
        let cfg = IntegratorConfig { t_max: 0.5, ..Default::default() };
        let traj = integrate(&a, &cfg).unwrap();
        let report = verify_trajectory(&traj, &ToleranceProfile::default());
        for name in ["isospectrality", "norm_conservation", "lyapunov_monotone", "sign_preservation", "odd_tail_monotone"] {
            prop_assert_ne!(report.check(name).unwrap().outcome, Outcome::Fail, "{}", name);
        }
    }

    #[test]
    fn lyapunov_derivative_is_nonnegative(a in offdiag(12)) {
        // df/dt = sum_i a_i * da_i (i-th coefficient of grad f)
        let da = rhs_componentwise(&a);
        let h = 1e-6;
        let stepped: Vec<f64> = a.entries().iter().zip(da.entries()).map(|(x, d)| x + h * d).collect();
        let df = lyapunov_f_offdiag(&OffDiagonal::new(stepped).unwrap()) - lyapunov_f_offdiag(&a);
        prop_assert!(df >= -1e-9 * (1.0 + a.norm_sq()), "{}", df);
    }

    #[test]
    fn prediction_is_sorted_and_signed(a in offdiag(12)) {
        let Ok(spec) = validate_initial(&a) else { return Ok(()); };
        let tols = SpectralTolerances::for_offdiag(&a);
        let Ok(p) = predict_limit(&a, &spec, &tols) else { return Ok(()); };
        let nonzero: Vec<f64> = p.entries().iter().copied().filter(|v| *v != 0.0).collect();
        prop_assert_eq!(nonzero.len(), a.dim() / 2);
        prop_assert!(nonzero.windows(2).all(|w| w[0].abs() < w[1].abs()));
        for (v, v0) in p.entries().iter().zip(a.entries()) {
            prop_assert!(*v == 0.0 || v.signum() == v0.signum());
        }
        let eig = eigenvalues_offdiag(&p, 1e-13).unwrap();
        for (x, y) in eig.values().iter().zip(spec.values()) {
            prop_assert!((x - y).abs() < 1e-9 * (1.0 + a.norm()));
        }
    }
}
