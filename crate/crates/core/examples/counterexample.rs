//! Square moduli where the conjectured sieve bound fails by a factor 2^(a_d)/2.

use ffsieve::algebra::Fq;
use ffsieve::sieve::{build_counterexample, verify_counterexample, SumMethod};

fn main() -> ffsieve::Result<()> {
    for (p, d, method) in [(3, 1, SumMethod::Enumerate), (3, 2, SumMethod::Closed), (5, 1, SumMethod::Closed)] {
        let fq = Fq::prime(p)?;
        let inst = build_counterexample(&fq, d, 1 << 30)?;
        let r = verify_counterexample(&fq, &inst, method, 0.0, 1 << 30)?;
        println!(
            "q={p} d={d}: G = {}, Q={} N={}, {} pairs, LHS/claim = {}, checks {:?}",
            fq.pretty_poly(&inst.modulus),
            r.q_deg,
            r.n_deg,
            r.card,
            r.ratios.lhs_over_claim2,
            r.checks
        );
    }
    Ok(())
}
