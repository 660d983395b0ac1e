//! Exact rational linear algebra and linear feasibility.

mod matrix;
mod rational;
mod simplex;

pub use matrix::{affine_dim, kernel_vector, rank, solve_linear, RatMatrix};
pub use rational::{
    format_rational, from_f64, int, is_nonnegative, one, parse_rational, parse_vector, ratio, to_f64, zero,
    Rational,
};
pub use simplex::{lp_feasible, FeasibilitySystem};
