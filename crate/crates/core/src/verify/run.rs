use super::{Check, VerificationReport};
use crate::error::Result;
use crate::flow::{integrate_with, validate_initial, FlowStatus, FlowTrajectory, IntegratorConfig, Validation};
use crate::jacobi::OffDiagonal;
use crate::scalar::Real;
use crate::spectral::{limit_slots, predict_limit, SpectralTolerances};

/// Thresholds for [`verify_trajectory`]. Relative entries are multiplied by
/// `1 + ||a0||` (or `1 + ||a0||^2` for the Lyapunov slack).
#[derive(Clone, Debug, PartialEq)]
pub struct ToleranceProfile {
    pub drift_rel: f64,
    pub norm_rel: f64,
    pub lyapunov_slack_rel: f64,
    /// Final state vs predicted limit. `Some` overrides the relative bound.
    pub limit_abs: Option<f64>,
    pub limit_rel: f64,
    /// Bound on the slots that vanish in the limit.
    pub zero_abs: Option<f64>,
    pub zero_rel: f64,
    /// Demand the equilibrium stop. Otherwise a run that reaches the
    /// horizon passes when `||K||_F <= 2 zero_tol (1 + ||a0||)`, the bound
    /// implied by vanishing slots of size `zero_tol`.
    pub require_convergence: bool,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            drift_rel: 1e-7,
            norm_rel: 1e-8,
            lyapunov_slack_rel: 1e-9,
            limit_abs: None,
            limit_rel: 1e-6,
            zero_abs: None,
            zero_rel: 1e-6,
            require_convergence: false,
        }
    }
}

impl ToleranceProfile {
    /// Two-decimal agreement at a fixed horizon, for reproducing the
    /// published examples at `t = 1`.
    pub fn two_decimals() -> Self {
        Self { limit_abs: Some(0.01), zero_abs: Some(0.01), ..Self::default() }
    }

    /// The default bounds, and the run must end on the equilibrium stop.
    pub fn converged() -> Self {
        Self { require_convergence: true, ..Self::default() }
    }

    fn limit_tol(&self, norm: f64) -> f64 {
        self.limit_abs.unwrap_or(self.limit_rel * (1.0 + norm))
    }

    fn zero_tol(&self, norm: f64) -> f64 {
        self.zero_abs.unwrap_or(self.zero_rel * (1.0 + norm))
    }
}

/// Integrates under strict validation and checks the run.
pub fn verify_run<T: Real>(
    a0: &OffDiagonal<T>,
    cfg: &IntegratorConfig<T>,
    profile: &ToleranceProfile,
) -> Result<(FlowTrajectory<T>, VerificationReport)> {
    verify_run_with(a0, cfg, profile, Validation::Strict)
}

pub fn verify_run_with<T: Real>(
    a0: &OffDiagonal<T>,
    cfg: &IntegratorConfig<T>,
    profile: &ToleranceProfile,
    validation: Validation,
) -> Result<(FlowTrajectory<T>, VerificationReport)> {
    let traj = integrate_with(a0, cfg, validation)?;
    let report = verify_trajectory(&traj, profile);
    Ok((traj, report))
}

fn f<T: Real>(v: T) -> f64 {
    v.to_f64_lossy()
}

/// Checks an existing trajectory: isospectrality, norm conservation,
/// Lyapunov monotonicity, sign preservation, the odd-dimension tail,
/// equilibrium approach, the predicted limit and the sorting property.
/// Prediction and sorting are skipped for stationary inputs and for inputs
/// that break the sorting hypotheses.
pub fn verify_trajectory<T: Real>(traj: &FlowTrajectory<T>, profile: &ToleranceProfile) -> VerificationReport {
    let a0 = traj.initial_state();
    let n = a0.dim();
    let norm0 = f(a0.norm());
    let mut checks = Vec::new();

    checks.push(Check::at_most("isospectrality", f(traj.max_spec_drift()), profile.drift_rel * (1.0 + norm0)));

    let norm_dev = traj.states.iter().map(|s| (f(s.norm()) - norm0).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("norm_conservation", norm_dev, profile.norm_rel * (1.0 + norm0)));

    let lyap_drop = traj.f_values.windows(2).map(|w| f(w[0] - w[1])).fold(0.0, f64::max);
    checks.push(Check::at_most(
        "lyapunov_monotone",
        lyap_drop,
        profile.lyapunov_slack_rel * (1.0 + norm0 * norm0),
    ));

    // a slot may underflow to zero on its way to the limit; only a reversal counts
    let sign_flips = traj
        .states
        .iter()
        .map(|s| {
            s.entries()
                .iter()
                .zip(a0.entries())
                .filter(|(v, v0)| **v != T::zero() && **v0 != T::zero() && v.signum() != v0.signum())
                .count()
        })
        .sum::<usize>();
    checks.push(Check::at_most("sign_preservation", sign_flips as f64, 0.0));

    if n % 2 == 1 && n >= 3 {
        let tail_drop = traj
            .states
            .windows(2)
            .map(|w| f(w[0].entries()[n - 2].abs() - w[1].entries()[n - 2].abs()))
            .fold(0.0, f64::max);
        checks.push(Check::at_most("odd_tail_monotone", tail_drop, profile.lyapunov_slack_rel * (1.0 + norm0)));
    } else {
        checks.push(Check::skip("odd_tail_monotone"));
    }

    let final_k = f(*traj.k_norms.last().expect("nonempty trajectory"));
    let limit_tol = profile.limit_tol(norm0);
    let approach = match traj.status {
        FlowStatus::Converged | FlowStatus::StationaryInput => Check::at_most("equilibrium_approach", final_k, f(traj.eq_eps)),
        FlowStatus::HorizonReached if profile.require_convergence => {
            Check::new("equilibrium_approach", false, final_k, f(traj.eq_eps))
        }
        FlowStatus::HorizonReached => {
            Check::at_most("equilibrium_approach", final_k, 2.0 * profile.zero_tol(norm0) * (1.0 + norm0))
        }
    };
    checks.push(approach);

    let hypotheses = traj.status != FlowStatus::StationaryInput && validate_initial(a0).is_ok();
    let tols = SpectralTolerances::for_offdiag(a0);
    let predicted = if hypotheses { predict_limit(a0, &traj.initial_spectrum, &tols).ok() } else { None };
    let last = traj.final_state();
    match &predicted {
        Some(p) => {
            let dev = f(last.max_abs_diff(p).expect("same dimension"));
            checks.push(Check::at_most("limit_prediction", dev, limit_tol));

            let slots: Vec<usize> = limit_slots(n).collect();
            let mut prev = 0.0;
            let mut margin = f64::INFINITY;
            for &s in &slots {
                let sq = f(last.entries()[s] * last.entries()[s]);
                margin = margin.min(sq - prev);
                prev = sq;
            }
            checks.push(Check::above("sorted_magnitudes", margin, f(tols.gap_tol)));

            let off = (0..n.saturating_sub(1))
                .filter(|j| !slots.contains(j))
                .map(|j| f(last.entries()[j].abs()))
                .fold(0.0, f64::max);
            checks.push(Check::at_most("vanishing_slots", off, profile.zero_tol(norm0)));
        }
        None => {
            checks.push(Check::skip("limit_prediction"));
            checks.push(Check::skip("sorted_magnitudes"));
            checks.push(Check::skip("vanishing_slots"));
        }
    }

    VerificationReport::new(checks, Some(traj.status), None)
}
