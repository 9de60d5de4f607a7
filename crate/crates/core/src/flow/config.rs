use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Classical fourth-order Runge-Kutta with constant step `dt`.
    FixedRk4,
    /// Dormand-Prince 5(4) with PI step-size control, starting from `dt`.
    AdaptiveRk45,
}

/// Time-integration settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig<T> {
    pub method: Method,
    /// Fixed step, or the first trial step of the adaptive method.
    pub dt: T,
    pub abs_tol: T,
    pub rel_tol: T,
    /// Integration horizon.
    pub t_max: T,
    /// Stop once `||K||_F <= eq_eps`. `None` selects `1e-10 (1 + ||a0||^2)`,
    /// with `||H0||_F^2` in place of `||a0||^2` for the dense mode.
    pub eq_eps: Option<T>,
    /// Minimum time between recorded rows. `None` keeps at most 10^4 rows.
    pub record_stride: Option<T>,
}

impl<T: Real> Default for IntegratorConfig<T> {
    fn default() -> Self {
        Self {
            method: Method::AdaptiveRk45,
            dt: T::lit(1e-3),
            abs_tol: T::lit(1e-10),
            rel_tol: T::lit(1e-10),
            t_max: T::lit(10.0),
            eq_eps: None,
            record_stride: None,
        }
    }
}

impl<T: Real> IntegratorConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: T| {
            if v.is_finite() && v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("dt", self.dt)?;
        positive("t_max", self.t_max)?;
        positive("abs_tol", self.abs_tol)?;
        positive("rel_tol", self.rel_tol)?;
        if let Some(eps) = self.eq_eps {
            if !(eps.is_finite() && eps >= T::zero()) {
                return Err(Error::InvalidConfig(format!("eq_eps must be nonnegative and finite, got {eps}")));
            }
        }
        if let Some(stride) = self.record_stride {
            positive("record_stride", stride)?;
        }
        Ok(())
    }

    /// Equilibrium threshold for an initial condition of squared norm `norm_sq`.
    pub fn resolved_eq_eps(&self, norm_sq: T) -> T {
        self.eq_eps.unwrap_or_else(|| T::lit(1e-10) * (T::one() + norm_sq))
    }

    pub fn resolved_stride(&self) -> T {
        self.record_stride.unwrap_or_else(|| self.t_max / T::lit(9_998.0))
    }

    /// Smallest adaptive step before giving up: `1e-14 * t_max`.
    pub fn dt_min(&self) -> T {
        T::lit(1e-14) * self.t_max
    }
}
