//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jacobi_flow::flow::{integrate, integrate_dense, validate_initial, FlowStatus, FlowTrajectory, IntegratorConfig};
use jacobi_flow::io::{parse_input, InputMatrix};
use jacobi_flow::jacobi::{lyapunov_f, DenseSymmetric, OffDiagonal};
use jacobi_flow::spectral::{eigenvalues_offdiag, equilibrium_count_formula, predict_limit, SpectralTolerances};
use jacobi_flow::verify::{verify_equilibrium_counts, verify_identities, verify_trajectory, Outcome, ToleranceProfile};

type Verdict = Result<String, String>;

fn fixture(name: &str) -> OffDiagonal<f64> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let doc = parse_input(&std::fs::read(&path).expect("fixture readable")).expect("fixture parses");
    match doc.matrix {
        InputMatrix::OffDiagonal(a) => a,
        InputMatrix::Symmetric(_) => panic!("fixture {name} is not an off-diagonal document"),
    }
}

fn max_dev(got: &[f64], want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max)
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn adaptive(t_max: f64) -> IntegratorConfig<f64> {
    IntegratorConfig { t_max, abs_tol: 1e-10, rel_tol: 1e-10, ..IntegratorConfig::default() }
}

/// Invariant thresholds for one run; `Err` names the first violation.
fn invariants(traj: &FlowTrajectory<f64>) -> Result<(), String> {
    let report = verify_trajectory(traj, &ToleranceProfile::default());
    for name in ["isospectrality", "norm_conservation", "lyapunov_monotone", "sign_preservation"] {
        let c = report.check(name).expect("check present");
        if c.outcome != Outcome::Pass {
            return Err(format!("{name}: measured {:e} > {:e}", c.measured, c.threshold));
        }
    }
    Ok(())
}

fn reference_example(
    file: &str,
    cfg: IntegratorConfig<f64>,
    expected: &[f64],
    budget: Duration,
    runs: &mut Vec<FlowTrajectory<f64>>,
) -> Verdict {
    let a0 = fixture(file);
    let (traj, elapsed) = timed(|| integrate(&a0, &cfg));
    let traj = traj.map_err(|e| e.to_string())?;
    let dev = max_dev(traj.final_state().entries(), expected);
    let detail = format!("max deviation {dev:.2e} (tol 1e-2), status {}, {elapsed:.2?}", traj.status.as_str());
    runs.push(traj);
    if dev > 0.01 {
        return Err(detail);
    }
    if elapsed > budget {
        return Err(format!("{detail} exceeds {budget:?}"));
    }
    Ok(detail)
}

fn example_one(runs: &mut Vec<FlowTrajectory<f64>>) -> Verdict {
    let detail = reference_example("ex1.json", adaptive(1.0), &[1.26, 0.0, -7.96], Duration::from_millis(100), runs)?;
    let spec = runs.last().unwrap().initial_spectrum.values().to_vec();
    let sdev = max_dev(&spec, &[-7.96, -1.26, 1.26, 7.96]);
    if sdev > 0.005 {
        return Err(format!("spectrum deviation {sdev:.2e} > 5e-3"));
    }
    Ok(format!("{detail}; spectrum deviation {sdev:.2e} (tol 5e-3)"))
}

fn example_two(runs: &mut Vec<FlowTrajectory<f64>>) -> Verdict {
    let expected = [-0.21, 0.0, 2.71, 0.0, -10.48, 0.0, 12.34, 0.0, 14.36];
    reference_example("ex2.json", adaptive(1.0), &expected, Duration::from_millis(500), runs)
}

fn example_three(runs: &mut Vec<FlowTrajectory<f64>>) -> Verdict {
    let expected = [
        0.0, 2.81, 0.0, 2.98, 0.0, 4.17, 0.0, 4.66, 0.0, 4.84, 0.0, -6.26, 0.0, 9.29, 0.0, -10.84, 0.0, 11.53, 0.0,
        11.83, 0.0, 12.48, 0.0, 17.11, 0.0, 17.98, 0.0, -18.85,
    ];
    reference_example("ex3.json", adaptive(10.0), &expected, Duration::from_secs(5), runs)
}

/// Entries uniform in [-10, 10] with |a| >= 0.5, resampled until the
/// spectrum is validated and the limit is predictable.
fn random_case(rng: &mut ChaCha8Rng, n: usize) -> OffDiagonal<f64> {
    loop {
        let entries = (0..n - 1)
            .map(|_| loop {
                let v: f64 = rng.gen_range(-10.0..=10.0);
                if v.abs() >= 0.5 {
                    break v;
                }
            })
            .collect();
        let a = OffDiagonal::new(entries).unwrap();
        if let Ok(spec) = validate_initial(&a) {
            if predict_limit(&a, &spec, &SpectralTolerances::for_offdiag(&a)).is_ok() {
                return a;
            }
        }
    }
}

fn limit_oracle(runs: &mut Vec<FlowTrajectory<f64>>) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut worst = 0.0f64;
    let mut slowest = 0.0f64;
    for n in 3..=12 {
        for case in 0..100 {
            let a0 = random_case(&mut rng, n);
            let t_max = 1e4;
            let cfg = IntegratorConfig { record_stride: Some(t_max / 200.0), ..adaptive(t_max) };
            let traj = integrate(&a0, &cfg).map_err(|e| format!("n={n} case {case}: {e}"))?;
            if traj.status != FlowStatus::Converged {
                return Err(format!("n={n} case {case}: {} at t={}", traj.status.as_str(), traj.final_time()));
            }
            let tols = SpectralTolerances::for_offdiag(&a0);
            let predicted = predict_limit(&a0, &traj.initial_spectrum, &tols).unwrap();
            let dev = traj.final_state().max_abs_diff(&predicted).unwrap();
            let tol = 1e-6 * (1.0 + a0.norm());
            if dev > tol {
                return Err(format!("n={n} case {case}: deviation {dev:.3e} > {tol:.3e} for {:?}", a0.entries()));
            }
            worst = worst.max(dev / (1.0 + a0.norm()));
            slowest = slowest.max(traj.final_time());
            runs.push(traj);
        }
    }
    Ok(format!("1000 runs converged; worst deviation {worst:.2e} (1 + ||a0||) (tol 1e-6); slowest stop t={slowest:.1}"))
}

fn invariant_suite(runs: &[FlowTrajectory<f64>]) -> Verdict {
    for (k, traj) in runs.iter().enumerate() {
        invariants(traj).map_err(|e| format!("run {k} (n={}): {e}", traj.dim()))?;
    }
    Ok(format!("{} runs: drift <= 1e-7 (1+||a0||), norm <= 1e-8 (1+||a0||), Lyapunov slack 1e-9, signs fixed", runs.len()))
}

fn identities() -> Verdict {
    let (reports, elapsed) = timed(|| (1..=16).map(|n| (n, verify_identities(n, 100, 1000 + n as u64))).collect::<Vec<_>>());
    let mut worst = 0.0f64;
    for (n, r) in reports {
        let r = r.map_err(|e| e.to_string())?;
        if let Some(c) = r.failures().next() {
            return Err(format!("n={n}: {} measured {:e} > {:e}", c.name, c.measured, c.threshold));
        }
        worst = r.checks.iter().map(|c| c.measured).fold(worst, f64::max);
    }
    if elapsed > Duration::from_secs(1) {
        return Err(format!("took {elapsed:.2?} (budget 1 s)"));
    }
    Ok(format!("7 identities x 100 trials x n=1..16, worst scaled error {worst:.2e} (tol 1e-9), {elapsed:.2?}"))
}

fn equilibrium_counts() -> Verdict {
    for (n, want) in [(4, 2), (5, 6), (6, 6), (7, 24)] {
        let got = equilibrium_count_formula(n);
        if got != want {
            return Err(format!("n={n}: formula gives {got}, expected {want}"));
        }
    }
    for n in 2..=6 {
        let r = verify_equilibrium_counts(n).map_err(|e| e.to_string())?;
        let failure = r.failures().next().cloned();
        if let Some(c) = failure {
            return Err(format!("n={n}: {} measured {} vs {}", c.name, c.measured, c.threshold));
        }
    }
    Ok("4->2, 5->6, 6->6, 7->24; signed enumeration equals brute force for n=2..6".into())
}

/// Closed-form eigenvalues of the zero-diagonal tridiagonal matrix.
fn closed_form(a: &[f64]) -> Vec<f64> {
    let mut v = match a {
        [] => vec![0.0],
        [x] => vec![-x.abs(), x.abs()],
        [x, y] => {
            let r = x.hypot(*y);
            vec![-r, 0.0, r]
        }
        [x, y, z] => {
            // lambda^4 - s lambda^2 + x^2 z^2 = 0
            let s = x * x + y * y + z * z;
            let p = x * x * z * z;
            let big = (s + (s * s - 4.0 * p).max(0.0).sqrt()) / 2.0;
            let small = if big > 0.0 { p / big } else { 0.0 };
            let (l1, l2) = (small.sqrt(), big.sqrt());
            vec![-l2, -l1, l1, l2]
        }
        _ => unreachable!(),
    };
    v.sort_by(|p, q| p.partial_cmp(q).unwrap());
    v
}

fn eigensolver_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst = 0.0f64;
    for n in 1..=4 {
        for _ in 0..100 {
            let a = OffDiagonal::with_dim(n, (0..n - 1).map(|_| rng.gen_range(-20.0..=20.0)).collect()).unwrap();
            let tols = SpectralTolerances::for_offdiag(&a);
            let got = eigenvalues_offdiag(&a, tols.eig_tol).map_err(|e| e.to_string())?;
            let dev = max_dev(got.values(), &closed_form(a.entries()));
            let tol = 1e-10 * (1.0 + a.norm());
            if dev > tol {
                return Err(format!("n={n}, a={:?}: deviation {dev:e} > {tol:e}", a.entries()));
            }
            worst = worst.max(dev / (1.0 + a.norm()));
        }
    }
    Ok(format!("400 cases, worst deviation {worst:.2e} (1 + ||a||) (tol 1e-10)"))
}

fn dense_mode() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut worst_drift = 0.0f64;
    let mut blocks = Vec::new();
    for n in [5, 8] {
        for case in 0..20 {
            let h0 = DenseSymmetric::from_upper_fn(n, |_, _| rng.gen_range(-5.0..=5.0));
            let traj = integrate_dense(&h0, &adaptive(10.0)).map_err(|e| format!("{n}x{n} case {case}: {e}"))?;
            let drift = traj.max_spec_drift();
            if drift > 1e-7 {
                return Err(format!("{n}x{n} case {case}: drift {drift:e} > 1e-7"));
            }
            let slack = 1e-9 * (1.0 + h0.frobenius_norm_sq());
            let drop = traj.f_values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
            if drop > slack {
                return Err(format!("{n}x{n} case {case}: Lyapunov decreased by {drop:e} > {slack:e}"));
            }
            if (traj.f_values[0] - lyapunov_f(&h0)).abs() > 0.0 {
                return Err("first Lyapunov sample is not f(H0)".into());
            }
            worst_drift = worst_drift.max(drift);
            blocks.push(traj.block_sizes.len());
        }
    }
    let two_blocks = blocks.iter().filter(|&&b| b > 1).count();
    Ok(format!(
        "40 runs, worst drift {worst_drift:.2e} (tol 1e-7), f nondecreasing; {two_blocks}/40 final matrices split into blocks (reported only)"
    ))
}

fn main() {
    let mut runs = Vec::new();
    let mut results: Vec<(&str, Verdict)> = Vec::new();
    results.push(("ex1 reproduction", example_one(&mut runs)));
    results.push(("ex2 reproduction", example_two(&mut runs)));
    results.push(("ex3 reproduction", example_three(&mut runs)));
    results.push(("limit prediction oracle", limit_oracle(&mut runs)));
    results.push(("invariant suite", invariant_suite(&runs)));
    results.push(("algebraic identities", identities()));
    results.push(("equilibrium counts", equilibrium_counts()));
    results.push(("eigensolver oracle", eigensolver_oracle()));
    results.push(("symmetric experimental mode", dense_mode()));

    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
