//! Isospectral sorting flow on zero-diagonal Jacobi matrices.
//!
//! The flow `dH/dt = [H, K(H)]`, with `K(H) = [H, N(H)]`, drives a
//! zero-diagonal Jacobi matrix to a block-diagonal limit whose 2x2 blocks
//! carry the eigenvalue magnitudes in increasing order, each with the sign of
//! the matching initial entry. This crate provides the maps, a
//! Sturm-bisection eigensolver that serves as an independent oracle, a
//! Runge-Kutta integrator on the off-diagonal entries, limit prediction,
//! equilibrium enumeration and executable checks of the underlying identities.
//!
//! Algebra is generic over [`Scalar`] (floats and exact rationals); numerics
//! over [`Real`]. The aliases below fix the scalar to `f64`.

pub mod error;
pub mod flow;
pub mod io;
pub mod jacobi;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

/// Exact rational scalar for identity checks.
pub type Rational = num_rational::BigRational;

pub type OffDiagonalF64 = jacobi::OffDiagonal<f64>;
pub type OffDiagonalF32 = jacobi::OffDiagonal<f32>;
pub type OffDiagonalRational = jacobi::OffDiagonal<Rational>;
pub type DenseSymmetricF64 = jacobi::DenseSymmetric<f64>;
pub type SkewSymmetricF64 = jacobi::SkewSymmetric<f64>;
pub type MatrixF64 = jacobi::Matrix<f64>;
pub type SpectrumF64 = spectral::Spectrum<f64>;
pub type EquilibriumSetF64 = spectral::EquilibriumSet<f64>;
pub type IntegratorConfigF64 = flow::IntegratorConfig<f64>;
pub type FlowTrajectoryF64 = flow::FlowTrajectory<f64>;
pub type DenseTrajectoryF64 = flow::DenseTrajectory<f64>;
