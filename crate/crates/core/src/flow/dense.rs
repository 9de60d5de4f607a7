//! The flow on general symmetric matrices (experimental).
//!
//! Only isospectrality and Lyapunov monotonicity carry over from the
//! tridiagonal case. The block structure of the final matrix is reported,
//! not asserted.

use super::config::IntegratorConfig;
use super::rk::{drive, Control, StepStats};
use super::FlowStatus;
use crate::error::{Error, Result};
use crate::jacobi::{bracket_with_n, lyapunov_f, rhs_matrix, DenseSymmetric};
use crate::scalar::Real;
use crate::spectral::{eigenvalues_symmetric, Spectrum};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseTrajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<DenseSymmetric<T>>,
    pub f_values: Vec<T>,
    /// `||[H, N(H)]||_F` per sample.
    pub k_norms: Vec<T>,
    pub spec_drift: Vec<T>,
    pub status: FlowStatus,
    pub eq_eps: T,
    pub initial_spectrum: Spectrum<T>,
    pub stats: StepStats,
    /// Diagonal block sizes of the final matrix at threshold `block_tol`.
    pub block_sizes: Vec<usize>,
    pub block_tol: T,
}

impl<T: Real> DenseTrajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DenseSymmetric<T> {
        self.states.last().expect("trajectory has at least one sample")
    }

    pub fn max_spec_drift(&self) -> T {
        self.spec_drift.iter().fold(T::zero(), |m, v| m.max(*v))
    }
}

/// Sizes of the diagonal blocks of `h` once entries with `|h_ij| <= tol`
/// are treated as zero. The matrix splits between rows `i` and `i + 1` when
/// every entry coupling `0..=i` to `i+1..n` is negligible.
pub fn block_structure<T: Real>(h: &DenseSymmetric<T>, tol: T) -> Vec<usize> {
    let n = h.dim();
    let mut sizes = Vec::new();
    let mut start = 0;
    // reach[i]: largest column j >= i with |h_ij| > tol
    let reach: Vec<usize> = (0..n)
        .map(|i| (i..n).rev().find(|&j| h.get(i, j).abs() > tol).unwrap_or(i))
        .collect();
    let mut furthest = 0;
    for i in 0..n {
        furthest = furthest.max(reach[i]);
        if furthest == i {
            sizes.push(i + 1 - start);
            start = i + 1;
        }
    }
    sizes
}

/// Integrates `dH/dt = [H, [H, N(H)]]` from an arbitrary symmetric `h0`.
/// Stops when `||[H, N(H)]||_F <= eq_eps`; a diagonal `h0` is stationary.
pub fn integrate_dense<T: Real>(h0: &DenseSymmetric<T>, cfg: &IntegratorConfig<T>) -> Result<DenseTrajectory<T>> {
    cfg.validate()?;
    let n = h0.dim();
    if let Some(index) = h0.packed().iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let norm = h0.frobenius_norm();
    let eig_tol = T::lit(8.0) * T::epsilon() * (T::one() + norm);
    let initial_spectrum = eigenvalues_symmetric(h0, eig_tol)?;
    let eq_eps = cfg.resolved_eq_eps(h0.frobenius_norm_sq());
    let stride = cfg.resolved_stride();
    let block_tol = T::lit(1e-6) * (T::one() + norm);

    let mut rec = DenseRecorder { out: Vec::new(), initial: initial_spectrum.clone(), eig_tol };
    rec.push(T::zero(), h0.clone())?;
    let finish = |rec: DenseRecorder<T>, status, stats| {
        let rows = rec.out;
        let mut traj = DenseTrajectory {
            times: rows.iter().map(|r| r.0).collect(),
            f_values: rows.iter().map(|r| r.2).collect(),
            k_norms: rows.iter().map(|r| r.3).collect(),
            spec_drift: rows.iter().map(|r| r.4).collect(),
            states: rows.into_iter().map(|r| r.1).collect(),
            status,
            eq_eps,
            initial_spectrum: rec.initial,
            stats,
            block_sizes: Vec::new(),
            block_tol,
        };
        traj.block_sizes = block_structure(traj.final_state(), block_tol);
        traj
    };
    if rec.out[0].3 <= eq_eps {
        return Ok(finish(rec, FlowStatus::StationaryInput, StepStats::default()));
    }

    let mut next_record = stride;
    let mut last_recorded = T::zero();
    let mut record_err = None;
    let to_matrix = |y: &[T]| DenseSymmetric::from_packed(n, y.to_vec());
    let result = drive(
        h0.packed().to_vec(),
        cfg,
        false,
        |y, dy| {
            let h = to_matrix(y).expect("packed length is fixed");
            dy.copy_from_slice(rhs_matrix(&h).packed());
        },
        |t, y| {
            let h = to_matrix(y).expect("packed length is fixed");
            let converged = bracket_with_n(&h).frobenius_norm() <= eq_eps;
            if converged || t >= next_record || t >= cfg.t_max {
                if let Err(e) = rec.push(t, h) {
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
        rec.push(result.t, to_matrix(&result.y)?)?;
    }
    let status = if result.stopped { FlowStatus::Converged } else { FlowStatus::HorizonReached };
    Ok(finish(rec, status, result.stats))
}

struct DenseRecorder<T> {
    out: Vec<(T, DenseSymmetric<T>, T, T, T)>,
    initial: Spectrum<T>,
    eig_tol: T,
}

impl<T: Real> DenseRecorder<T> {
    fn push(&mut self, t: T, h: DenseSymmetric<T>) -> Result<()> {
        if let Some(index) = h.packed().iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let spec = eigenvalues_symmetric(&h, self.eig_tol)?;
        let drift = spec.max_deviation(&self.initial).expect("dimension is preserved");
        let f = lyapunov_f(&h);
        let k = bracket_with_n(&h).frobenius_norm();
        self.out.push((t, h, f, k, drift));
        Ok(())
    }
}
