//! Exact sparse linear algebra over the rationals.

pub mod elim;
pub mod sparse;
pub mod tensor;

pub use elim::{
    kernel_basis, normalize_leading, quotient_dim, rank, same_span, solve, solve_dense, Echelon, Insert, Quotient,
    Solver,
};
pub use sparse::{axpy, normalize_vec, scale_vec, SparseMat, SparseVec};
pub use tensor::{flatten, insert_leg, tensor_dim, unflatten};
