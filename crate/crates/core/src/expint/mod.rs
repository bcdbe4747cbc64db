//! Quadratic exponential integrals over balls, step functions and Poisson
//! summation on `F_q((1/t))`.

mod integral;
mod step;
mod value;

pub use integral::{
    ball_integral_closed, ball_integral_quadrature, expint_eval, expint_quadrature, quadratic_ball_quadrature,
    closed_form_grid, ExpIntReport, ExpIntSpec, GridTally, QuadraticShape, DEFAULT_QUAD_BUDGET,
};
pub use step::{
    degree_sum_closed, degree_sum_direct, degree_sum_via_poisson, fourier_step, poisson_check, PoissonOutcome,
    StepFunction, StepTerm, StepTermText,
};
pub use value::{ExpValue, ExpValueText, QScaled};
