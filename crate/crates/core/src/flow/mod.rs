//! Time integration of the sorting flow.
//!
//! The state is the `n - 1` off-diagonal entries, advanced with the
//! componentwise right-hand side, so the zero diagonal and tridiagonal
//! structure are preserved exactly. [`integrate_dense`] integrates the same
//! equation on full symmetric matrices for cross-validation and for
//! experiments with general symmetric initial conditions.

mod config;
mod dense;
mod rk;

pub use config::{IntegratorConfig, Method};
pub use dense::{block_structure, integrate_dense, DenseTrajectory};
pub use rk::StepStats;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{equilibrium_residual, lyapunov_f_offdiag, rhs_componentwise_into, OffDiagonal};
use crate::scalar::Real;
use crate::spectral::{eigenvalues_offdiag, spectrum_zero_diag, SpectralTolerances, Spectrum};
use rk::{drive, Control};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowStatus {
    /// The equilibrium residual fell to `eq_eps`.
    Converged,
    HorizonReached,
    /// The initial condition is an equilibrium; nothing was integrated.
    StationaryInput,
}

impl FlowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FlowStatus::Converged => "converged",
            FlowStatus::HorizonReached => "horizon_reached",
            FlowStatus::StationaryInput => "stationary_input",
        }
    }
}

/// Which hypotheses on the initial condition are enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Nonzero entries and pairwise-distinct eigenvalues.
    #[default]
    Strict,
    /// Only finiteness; for exploring zero entries and degenerate spectra.
    Relaxed,
}

/// Sampled solution of the flow with per-sample diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowTrajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<OffDiagonal<T>>,
    /// Lyapunov function `f(H(t))`.
    pub f_values: Vec<T>,
    /// Equilibrium residual `||K(H(t))||_F`.
    pub k_norms: Vec<T>,
    /// Largest eigenvalue deviation from the initial spectrum.
    pub spec_drift: Vec<T>,
    pub status: FlowStatus,
    /// Threshold actually used for the equilibrium stop.
    pub eq_eps: T,
    pub initial_spectrum: Spectrum<T>,
    pub stats: StepStats,
}

impl<T: Real> FlowTrajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn initial_state(&self) -> &OffDiagonal<T> {
        &self.states[0]
    }

    pub fn final_state(&self) -> &OffDiagonal<T> {
        self.states.last().expect("trajectory has at least one sample")
    }

    pub fn final_time(&self) -> T {
        *self.times.last().expect("trajectory has at least one sample")
    }

    pub fn max_spec_drift(&self) -> T {
        self.spec_drift.iter().fold(T::zero(), |m, v| m.max(*v))
    }
}

/// `true` iff the last `window` samples all have `k_norm <= eq_eps`
/// (a `window` of 0 is treated as 1).
pub fn detect_convergence<T: Real>(traj: &FlowTrajectory<T>, eq_eps: T, window: usize) -> bool {
    converged_tail(&traj.k_norms, eq_eps, window)
}

pub(crate) fn converged_tail<T: Real>(k_norms: &[T], eq_eps: T, window: usize) -> bool {
    let window = window.max(1);
    k_norms.len() >= window && k_norms[k_norms.len() - window..].iter().all(|k| *k <= eq_eps)
}

/// Checks the hypotheses under which the limit is characterized: every
/// entry nonzero and the spectrum paired with distinct eigenvalues.
pub fn validate_initial<T: Real>(a0: &OffDiagonal<T>) -> Result<Spectrum<T>> {
    if let Some(index) = a0.first_zero() {
        return Err(Error::ZeroEntry { index });
    }
    spectrum_zero_diag(a0, &SpectralTolerances::for_offdiag(a0))
}

/// Integrates the flow from `a0` under strict validation.
pub fn integrate<T: Real>(a0: &OffDiagonal<T>, cfg: &IntegratorConfig<T>) -> Result<FlowTrajectory<T>> {
    integrate_with(a0, cfg, Validation::Strict)
}

/// Integrates until `||K||_F <= eq_eps` (converged) or `t = t_max`.
/// An initial condition that already meets the threshold yields a single
/// sample with status [`FlowStatus::StationaryInput`].
pub fn integrate_with<T: Real>(
    a0: &OffDiagonal<T>,
    cfg: &IntegratorConfig<T>,
    validation: Validation,
) -> Result<FlowTrajectory<T>> {
    cfg.validate()?;
    let eig_tol = SpectralTolerances::for_offdiag(a0).eig_tol;
    let initial_spectrum = match validation {
        Validation::Strict => validate_initial(a0)?,
        Validation::Relaxed => eigenvalues_offdiag(a0, eig_tol)?,
    };
    let eq_eps = cfg.resolved_eq_eps(a0.norm_sq());
    let stride = cfg.resolved_stride();

    let mut rec = Recorder::new(initial_spectrum.clone(), eig_tol);
    rec.push(T::zero(), a0)?;
    if rec.k_norms[0] <= eq_eps {
        return Ok(rec.finish(FlowStatus::StationaryInput, eq_eps, Default::default()));
    }

    let mut next_record = stride;
    let mut last_recorded = T::zero();
    let mut record_err = None;
    let result = drive(
        a0.entries().to_vec(),
        cfg,
        true,
        |y, dy| rhs_componentwise_into(y, dy),
        |t, y| {
            let state = OffDiagonal::new(y.to_vec());
            let state = match state {
                Ok(s) => s,
                Err(e) => {
                    record_err = Some(e);
                    return Control::Stop;
                }
            };
            let converged = equilibrium_residual(&state) <= eq_eps;
            if converged || t >= next_record || t >= cfg.t_max {
                if let Err(e) = rec.push(t, &state) {
                    record_err = Some(e);
                    return Control::Stop;
                }
                last_recorded = t;
                while next_record <= t {
                    next_record = t + stride;
                }
            }
            if converged {
                Control::Stop
            } else {
                Control::Continue
            }
        },
    )?;
    if let Some(e) = record_err {
        return Err(e);
    }
    if last_recorded < result.t {
        rec.push(result.t, &OffDiagonal::new(result.y)?)?;
    }
    let status = if result.stopped { FlowStatus::Converged } else { FlowStatus::HorizonReached };
    Ok(rec.finish(status, eq_eps, result.stats))
}

struct Recorder<T> {
    times: Vec<T>,
    states: Vec<OffDiagonal<T>>,
    f_values: Vec<T>,
    k_norms: Vec<T>,
    spec_drift: Vec<T>,
    initial_spectrum: Spectrum<T>,
    eig_tol: T,
}

impl<T: Real> Recorder<T> {
    fn new(initial_spectrum: Spectrum<T>, eig_tol: T) -> Self {
        Self {
            times: Vec::new(),
            states: Vec::new(),
            f_values: Vec::new(),
            k_norms: Vec::new(),
            spec_drift: Vec::new(),
            initial_spectrum,
            eig_tol,
        }
    }

    fn push(&mut self, t: T, state: &OffDiagonal<T>) -> Result<()> {
        let spec = eigenvalues_offdiag(state, self.eig_tol)?;
        let drift = spec.max_deviation(&self.initial_spectrum).expect("dimension is preserved");
        self.times.push(t);
        self.f_values.push(lyapunov_f_offdiag(state));
        self.k_norms.push(equilibrium_residual(state));
        self.spec_drift.push(drift);
        self.states.push(state.clone());
        Ok(())
    }

    fn finish(self, status: FlowStatus, eq_eps: T, stats: StepStats) -> FlowTrajectory<T> {
        FlowTrajectory {
            times: self.times,
            states: self.states,
            f_values: self.f_values,
            k_norms: self.k_norms,
            spec_drift: self.spec_drift,
            status,
            eq_eps,
            initial_spectrum: self.initial_spectrum,
            stats,
        }
    }
}
