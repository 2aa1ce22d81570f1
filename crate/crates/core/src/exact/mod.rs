//! Exact arithmetic: big rationals, dense matrices, integer lattices and
//! polynomials over Q.

pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use lattice::{
    hermite_normal_form, integer_kernel, integer_kernel_vectors, lattice_contains,
    smith_normal_form, HermiteForm, SmithForm, Span,
};
pub use matrix::{IntegerMatrix, Matrix, RationalMatrix};
pub use poly::{
    all_roots_nonnegative, all_roots_positive, char_poly, count_roots_in_interval,
    factor_squarefree_small, Bound, Factorization, Polynomial,
};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
