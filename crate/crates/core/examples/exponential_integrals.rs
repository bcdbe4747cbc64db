//! Exponential integrals over balls: closed forms against exact quadrature.

use ffsieve::algebra::Fq;
use ffsieve::expint::{closed_form_grid, expint_eval, expint_quadrature, ExpIntReport, ExpIntSpec};
use ffsieve::laurent::Laurent;

fn main() -> ffsieve::Result<()> {
    let f3 = Fq::prime(3)?;
    let specs = [
        ("hi=-1;lo=-inf;coeffs=2", "hi=0;lo=-inf;coeffs=1,1", 1),
        ("hi=1;lo=-inf;coeffs=1,0,1", "hi=-inf;lo=-inf;coeffs=", 0),
        ("hi=-inf;lo=-inf;coeffs=", "hi=-2;lo=-inf;coeffs=1", 2),
    ];
    for (a, b, big_q) in specs {
        let spec = ExpIntSpec::new(Laurent::parse(&f3, a)?, Laurent::parse(&f3, b)?, big_q);
        let closed = expint_eval(&f3, &spec)?;
        let oracle = expint_quadrature(&f3, &spec, 1 << 24)?;
        println!("{}", serde_json::to_string(&ExpIntReport::new(&f3, &spec, &closed, Some(&oracle))).unwrap());
    }
    for p in [3, 5] {
        let tally = closed_form_grid(&Fq::prime(p)?, -3..=2, -3..=3, 2, 7, 1 << 24)?;
        println!("q={p}: {} grid cases, {} mismatches", tally.cases, tally.mismatches);
    }
    Ok(())
}
