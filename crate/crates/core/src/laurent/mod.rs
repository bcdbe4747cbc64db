//! The completion `F_q((1/t))`: truncated Laurent series with tracked
//! precision, balls, square roots and Dirichlet approximation.

mod ball;
mod dirichlet;
mod series;

pub use ball::{q_pow_rational, Ball};
pub use dirichlet::{dirichlet_approx, dirichlet_holds};
pub use series::{expand_fraction, AbsValue, Laurent};
