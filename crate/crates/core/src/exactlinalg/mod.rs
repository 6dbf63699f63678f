//! Exact integer matrix algebra: normal forms, kernels, saturations.

mod hnf;
mod lattice;
mod matrix;
mod rational;
mod snf;

pub use hnf::{column_basis, hnf, hnf_with_pivots};
pub use lattice::{
    in_lattice, is_primitive, kernel_basis, restrict_to_coordinates, same_lattice,
    saturation_quotient, solve_integer, LatticeSummary,
};
pub use matrix::{content, ext_gcd, floor_div, IntMatrix};
pub use rational::rational_rank;
pub use snf::{snf, SmithDecomposition};
