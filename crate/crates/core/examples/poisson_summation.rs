//! Fourier transforms of step functions and Poisson summation over F_q[t].

use ffsieve::algebra::Fq;
use ffsieve::algebra::Poly;
use ffsieve::expint::{degree_sum_closed, degree_sum_direct, fourier_step, poisson_check, StepFunction};
use ffsieve::laurent::{expand_fraction, Ball, Laurent};
use rand::SeedableRng;

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).unwrap()
}

fn main() -> ffsieve::Result<()> {
    let f3 = Fq::prime(3)?;
    let phi = StepFunction::phi1(&f3);
    println!("indicator of |y| <= 1/q: {}", json(&phi.describe(&f3)));
    println!("its transform:           {}", json(&fourier_step(&f3, &phi)?.merged(&f3)?.describe(&f3)));

    let ball = StepFunction::indicator(&f3, Ball::centered(1));
    println!("transform of B(0,1):     {}", json(&fourier_step(&f3, &ball)?.describe(&f3)));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let phi = StepFunction::random(&f3, 3, &mut rng);
        let x = Laurent::random(&f3, -1, -3, &mut rng).truncated(-3)?;
        let out = poisson_check(&f3, &phi, &x, 3)?;
        println!(
            "{} terms: sum phi(f+x) = {}, dual sum = {}, equal = {}",
            phi.terms.len(),
            out.lhs.format(),
            out.rhs.format(),
            out.equal
        );
    }

    let y = expand_fraction(&f3, &Poly::one(), &Poly::from_ints(&f3, &[1, 0, 1]), -10)?;
    for d in 0..=3 {
        println!(
            "sum over deg f = {d} of e(f/(t^2+1)): direct {}, closed {}",
            degree_sum_direct(&f3, &y, d)?.format(),
            degree_sum_closed(&f3, &y, d)?.format()
        );
    }
    Ok(())
}
