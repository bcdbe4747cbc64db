//! Large-sieve sums over square and general moduli, Farey counts, the
//! square-moduli counterexample and the bound formulas they are compared with.

mod bounds;
mod coeffs;
mod counterexample;
mod distribution;
mod farey;
mod lhs;
mod sweep;

pub use bounds::{
    combined_crossover, px_bound_combined, px_bound_first, px_bound_second, px_bound_third, rhs_claim1, rhs_claim2,
    rhs_main_theorem, rhs_sparse_theorem, BoundValue, Monomial,
};
pub use coeffs::{exp_sum_enum, exp_sum_phase_closed, exp_sum_s, CoeffSeq};
pub use counterexample::{
    build_counterexample, mu_exponent, pair_is_valid, reciprocal_modulus, verify_counterexample,
    CounterexampleInstance, CounterexampleRatios, CounterexampleReport, SumMethod,
};
pub use distribution::{ah_count, compute_x, delta_h_count, dilated_set, square_cofactor, squares_set, XReport};
pub use farey::{
    count_k, count_k_pairwise, count_p, denominators, farey_enum_general, farey_enum_square, DegreeRange, FareyPoint,
};
pub use lhs::{
    lhs_general, lhs_integer, lhs_square_moduli, lhs_square_moduli_dual, lhs_sum, with_jobs, DEFAULT_SIEVE_BUDGET,
};
pub use sweep::{dual_path_agreement, instance_seed, ratio_sweep, sweep_csv, DualPathTally, SieveParams, SweepRow};

#[cfg(test)]
mod tests;
