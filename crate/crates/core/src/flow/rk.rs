//! Explicit Runge-Kutta drivers for autonomous systems `y' = f(y)`.

use super::config::{IntegratorConfig, Method};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Returned by the observer after each accepted step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Control {
    Continue,
    Stop,
}

#[derive(Debug)]
pub(crate) struct DriveResult<T> {
    pub t: T,
    pub y: Vec<T>,
    pub stats: StepStats,
    pub stopped: bool,
}

/// Integrates from `t = 0` to `cfg.t_max`, calling `observe(t, y)` after every
/// accepted step; the observer may stop the integration early.
///
/// With `sign_guard` the adaptive driver also rejects any step that flips the
/// sign of a component. The fixed-step driver ignores it.
pub(crate) fn drive<T, F, O>(
    y0: Vec<T>,
    cfg: &IntegratorConfig<T>,
    sign_guard: bool,
    rhs: F,
    observe: O,
) -> Result<DriveResult<T>>
where
    T: Real,
    F: FnMut(&[T], &mut [T]),
    O: FnMut(T, &[T]) -> Control,
{
    match cfg.method {
        Method::FixedRk4 => drive_rk4(y0, cfg, rhs, observe),
        Method::AdaptiveRk45 => drive_dopri5(y0, cfg, sign_guard, rhs, observe),
    }
}

fn flips_sign<T: Real>(y: &[T], ynew: &[T]) -> bool {
    y.iter().zip(ynew).any(|(a, b)| *b != T::zero() && *a != T::zero() && a.signum() != b.signum())
}

fn axpy<T: Real>(out: &mut [T], y: &[T], h: T, terms: &[(T, &[T])]) {
    for i in 0..out.len() {
        let mut acc = T::zero();
        for (c, k) in terms {
            acc = acc + *c * k[i];
        }
        out[i] = y[i] + h * acc;
    }
}

fn drive_rk4<T, F, O>(mut y: Vec<T>, cfg: &IntegratorConfig<T>, mut rhs: F, mut observe: O) -> Result<DriveResult<T>>
where
    T: Real,
    F: FnMut(&[T], &mut [T]),
    O: FnMut(T, &[T]) -> Control,
{
    let dim = y.len();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![T::zero(); dim], vec![T::zero(); dim], vec![T::zero(); dim], vec![T::zero(); dim]);
    let mut tmp = vec![T::zero(); dim];
    let half = T::lit(0.5);
    let sixth = T::one() / T::lit(6.0);
    let third = T::one() / T::lit(3.0);
    let mut stats = StepStats::default();
    let mut t = T::zero();
    let mut steps: u64 = 0;

    while t < cfg.t_max {
        // step index times dt avoids drift from repeated addition
        let next = T::from_u64(steps + 1).expect("step count") * cfg.dt;
        let (h, t_next) = if next >= cfg.t_max { (cfg.t_max - t, cfg.t_max) } else { (next - t, next) };

        rhs(&y, &mut k1);
        axpy(&mut tmp, &y, h * half, &[(T::one(), &k1)]);
        rhs(&tmp, &mut k2);
        axpy(&mut tmp, &y, h * half, &[(T::one(), &k2)]);
        rhs(&tmp, &mut k3);
        axpy(&mut tmp, &y, h, &[(T::one(), &k3)]);
        rhs(&tmp, &mut k4);
        axpy(&mut tmp, &y, h, &[(sixth, &k1), (third, &k2), (third, &k3), (sixth, &k4)]);
        std::mem::swap(&mut y, &mut tmp);

        t = t_next;
        steps += 1;
        stats.accepted += 1;
        if observe(t, &y) == Control::Stop {
            return Ok(DriveResult { t, y, stats, stopped: true });
        }
    }
    Ok(DriveResult { t, y, stats, stopped: false })
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b_hat
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn drive_dopri5<T, F, O>(
    mut y: Vec<T>,
    cfg: &IntegratorConfig<T>,
    sign_guard: bool,
    mut rhs: F,
    mut observe: O,
) -> Result<DriveResult<T>>
where
    T: Real,
    F: FnMut(&[T], &mut [T]),
    O: FnMut(T, &[T]) -> Control,
{
    let c = T::lit;
    let dim = y.len();
    let mut k: Vec<Vec<T>> = (0..7).map(|_| vec![T::zero(); dim]).collect();
    let mut tmp = vec![T::zero(); dim];
    let mut ynew = vec![T::zero(); dim];

    // PI controller constants
    let beta = c(0.04);
    let expo1 = c(0.2) - beta * c(0.75);
    let safe = c(0.9);
    let grow_max = c(10.0);
    let shrink_max = c(5.0);
    let mut fac_old = c(1e-4);
    let mut last_rejected = false;

    let dt_min = cfg.dt_min();
    let mut stats = StepStats::default();
    let mut t = T::zero();
    let mut h = cfg.dt.min(cfg.t_max);

    rhs(&y, &mut k[0]);
    while t < cfg.t_max {
        let remaining = cfg.t_max - t;
        let last = h >= remaining;
        if last {
            h = remaining;
        } else if h < dt_min {
            return Err(Error::StepUnderflow { t: t.to_f64_lossy(), step: h.to_f64_lossy(), min: dt_min.to_f64_lossy() });
        }

        {
            let (k1, rest) = k.split_at_mut(1);
            let k1 = &k1[0];
            axpy(&mut tmp, &y, h, &[(c(A21), k1)]);
            rhs(&tmp, &mut rest[0]);
            axpy(&mut tmp, &y, h, &[(c(A31), k1), (c(A32), &rest[0])]);
            rhs(&tmp, &mut rest[1]);
            axpy(&mut tmp, &y, h, &[(c(A41), k1), (c(A42), &rest[0]), (c(A43), &rest[1])]);
            rhs(&tmp, &mut rest[2]);
            axpy(&mut tmp, &y, h, &[(c(A51), k1), (c(A52), &rest[0]), (c(A53), &rest[1]), (c(A54), &rest[2])]);
            rhs(&tmp, &mut rest[3]);
            axpy(
                &mut tmp,
                &y,
                h,
                &[(c(A61), k1), (c(A62), &rest[0]), (c(A63), &rest[1]), (c(A64), &rest[2]), (c(A65), &rest[3])],
            );
            rhs(&tmp, &mut rest[4]);
            axpy(
                &mut ynew,
                &y,
                h,
                &[(c(B1), k1), (c(B3), &rest[1]), (c(B4), &rest[2]), (c(B5), &rest[3]), (c(B6), &rest[4])],
            );
            rhs(&ynew, &mut rest[5]);
        }

        let mut sum = T::zero();
        for i in 0..dim {
            let e = h
                * (c(E1) * k[0][i] + c(E3) * k[2][i] + c(E4) * k[3][i] + c(E5) * k[4][i] + c(E6) * k[5][i]
                    + c(E7) * k[6][i]);
            let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(ynew[i].abs());
            sum = sum + (e / sc) * (e / sc);
        }
        let err = if dim == 0 { T::zero() } else { (sum / T::from_usize(dim).expect("dimension")).sqrt() };
        let flipped = sign_guard && flips_sign(&y, &ynew);

        if err.is_finite() && err <= T::one() && !flipped {
            let fac11 = err.powf(expo1);
            let fac = (fac11 / fac_old.powf(beta) / safe).max(T::one() / grow_max).min(shrink_max);
            let mut h_next = h / fac;
            if last_rejected {
                h_next = h_next.min(h);
            }
            fac_old = err.max(c(1e-4));
            last_rejected = false;

            std::mem::swap(&mut y, &mut ynew);
            k.swap(0, 6);
            t = if last { cfg.t_max } else { t + h };
            stats.accepted += 1;
            if observe(t, &y) == Control::Stop {
                return Ok(DriveResult { t, y, stats, stopped: true });
            }
            h = h_next;
        } else {
            stats.rejected += 1;
            last_rejected = true;
            let shrink = if flipped {
                c(2.0)
            } else if err.is_finite() {
                (err.powf(expo1) / safe).min(shrink_max)
            } else {
                shrink_max
            };
            h = h / shrink.max(T::one());
            if h < dt_min {
                return Err(Error::StepUnderflow {
                    t: t.to_f64_lossy(),
                    step: h.to_f64_lossy(),
                    min: dt_min.to_f64_lossy(),
                });
            }
        }
    }
    Ok(DriveResult { t, y, stats, stopped: false })
}
