use super::spectrum::eigenvalues_offdiag;
use crate::error::{Error, Result};
use crate::flow::{integrate, IntegratorConfig};
use crate::jacobi::OffDiagonal;
use crate::scalar::Real;

/// How to obtain the quadrature nodes.
#[derive(Clone, Debug)]
pub enum QuadratureMethod<T> {
    /// Bisection on the Jacobi matrix.
    Direct,
    /// Run the sorting flow and read `±|limit entries|` (plus `0` for odd `n`).
    Flow(IntegratorConfig<T>),
}

/// Gaussian quadrature nodes of a symmetric even weight whose recurrence
/// coefficients are the off-diagonal `a`: the eigenvalues of `embed(a)`.
///
/// For [`QuadratureMethod::Direct`] `tol` is the bisection width. For
/// [`QuadratureMethod::Flow`] the flow nodes are compared with the direct
/// ones and must agree within `tol`.
pub fn quadrature_nodes<T: Real>(a: &OffDiagonal<T>, method: &QuadratureMethod<T>, tol: T) -> Result<Vec<T>> {
    match method {
        QuadratureMethod::Direct => Ok(eigenvalues_offdiag(a, tol)?.values().to_vec()),
        QuadratureMethod::Flow(cfg) => {
            let traj = integrate(a, cfg)?;
            let nodes = nodes_from_limit(traj.final_state());
            let direct = eigenvalues_offdiag(a, T::lit(8.0) * T::epsilon() * (T::one() + a.norm()))?;
            let deviation =
                nodes.iter().zip(direct.values()).fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()));
            if deviation > tol {
                return Err(Error::MethodDisagreement { deviation: deviation.to_f64_lossy(), tol: tol.to_f64_lossy() });
            }
            Ok(nodes)
        }
    }
}

/// `±` the `floor(n/2)` largest entries of a (near-)equilibrium, plus `0`
/// for odd `n`, ascending.
pub fn nodes_from_limit<T: Real>(state: &OffDiagonal<T>) -> Vec<T> {
    let n = state.dim();
    let mut mags: Vec<T> = state.entries().iter().map(|v| v.abs()).collect();
    mags.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    mags.truncate(n / 2);
    let mut nodes: Vec<T> = mags.iter().flat_map(|m| [-*m, *m]).collect();
    if n % 2 == 1 {
        nodes.push(T::zero());
    }
    nodes.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn od(v: &[f64]) -> OffDiagonal<f64> {
        OffDiagonal::new(v.to_vec()).unwrap()
    }

    #[test]
    fn direct_nodes_example_one() {
        let nodes = quadrature_nodes(&od(&[5.0, -6.0, -2.0]), &QuadratureMethod::Direct, 1e-14).unwrap();
        let rounded: Vec<f64> = nodes.iter().map(|x| (x * 100.0).round() / 100.0).collect();
        assert_eq!(rounded, vec![-7.96, -1.26, 1.26, 7.96]);
    }

    #[test]
    fn two_point_rule() {
        let nodes = quadrature_nodes(&od(&[1.0]), &QuadratureMethod::Direct, 1e-15).unwrap();
        assert_abs_diff_eq!(nodes[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(nodes[1], 1.0, epsilon = 1e-15);
        let flow = quadrature_nodes(&od(&[1.0]), &QuadratureMethod::Flow(IntegratorConfig::default()), 1e-12).unwrap();
        assert_eq!(flow, vec![-1.0, 1.0]);
    }

    #[test]
    fn flow_and_direct_agree_for_three_points() {
        let a = od(&[1.0, 1.0]);
        let cfg = IntegratorConfig { t_max: 200.0, ..IntegratorConfig::default() };
        let flow = quadrature_nodes(&a, &QuadratureMethod::Flow(cfg), 1e-6).unwrap();
        let r2 = 2f64.sqrt();
        for (got, want) in flow.iter().zip([-r2, 0.0, r2]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-6);
        }
    }

    #[test]
    fn nodes_from_an_equilibrium() {
        let nodes = nodes_from_limit(&od(&[0.0, -2.0, 0.0, 3.0]));
        assert_eq!(nodes, vec![-3.0, -2.0, 0.0, 2.0, 3.0]);
    }
}
