//! Eigenvalues, limit prediction, equilibria and quadrature nodes.

mod equilibria;
mod limit;
mod quadrature;
mod spectrum;
mod sturm;

pub use equilibria::{enumerate_equilibria, equilibrium_count_formula, EquilibriumSet};
pub use limit::{limit_slots, predict_limit};
pub use quadrature::{nodes_from_limit, quadrature_nodes, QuadratureMethod};
pub use spectrum::{eigenvalues_offdiag, spectrum_zero_diag, SpectralTolerances, Spectrum};
pub use sturm::{eigenvalues_symmetric, eigenvalues_tridiagonal, sturm_count, tridiagonalize};
