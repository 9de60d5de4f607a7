//! Matrix encodings and the algebraic maps of the flow.
//!
//! Documentation uses 1-based indices to match the usual notation
//! `a_1, ..., a_{n-1}`; storage is 0-based.

mod maps;
mod matrix;
mod offdiag;

pub use maps::{
    bracket_with_n, double_bracket, equilibrium_residual, equilibrium_residual_sq, lyapunov_f,
    lyapunov_f_offdiag, lyapunov_f_trace, map_k, map_n, map_n_offdiag, rhs_componentwise,
    rhs_componentwise_into, rhs_matrix,
};
pub use matrix::{commutator, DenseSymmetric, Matrix, SkewSymmetric};
pub use offdiag::{default_strict_tol, embed, extract_offdiag, OffDiagonal};
