//! Minimal dense complex linear algebra for few-qubit systems.
//!
//! Everything in the crate runs on three carriers: [`ComplexMatrix`] (dense,
//! row-major, dimensions restricted to 1/2/4/8/16), [`PureState`] (normalized
//! amplitude vector over 1-4 qubits), and [`DensityMatrix`] (Hermitian,
//! positive semidefinite, unit trace). Operations stay dense and allocate
//! freely; at these dimensions that is far cheaper than any sparsity or
//! in-place cleverness.
//!
//! # Tensor ordering
//!
//! The qubit tensor order is fixed crate-wide: the leftmost tensor factor is
//! qubit 0, and qubit 0 occupies the most significant bit of an amplitude or
//! matrix index. For an n-qubit register, `|q0 q1 .. q(n-1)>` lives at index
//! `q0*2^(n-1) + q1*2^(n-2) + .. + q(n-1)`. Every module relies on this.

mod density;
mod eig;
mod matrix;
mod state;

pub use density::{partial_trace, partial_trace_matrix, DensityMatrix};
pub use eig::{herm_eig, sqrt_psd, wootters_lambdas};
pub use matrix::{kron, ComplexMatrix, C64};
pub use state::PureState;
