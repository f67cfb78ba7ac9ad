//! Exact integer and rational linear algebra: dense matrices, Smith and Hermite
//! normal forms, lattices in `ℚⁿ` and their finitely generated quotients.

mod lattice;
mod mat;
mod smith;

pub use lattice::{Lattice, Subquotient};
pub use mat::{
    add_i, add_q, dot_i, dot_q, int_vec_to_rat, is_zero_q, rat, rat_gcd, rat_vec_to_int, scale_i, scale_q,
    sub_i, sub_q, vec_denominator, IMat, QMat,
};
pub use smith::{column_hnf, extend_to_basis, kernel, smith, solve_int, Smith};

pub type Int = i128;
pub type Rat = num_rational::Ratio<i128>;
