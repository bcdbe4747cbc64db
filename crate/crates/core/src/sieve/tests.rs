use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{Fq, Poly};
use crate::character::{char_e, CycloInt};
use crate::error::Error;
use crate::laurent::{expand_fraction, Laurent};

const BIG: u128 = 1 << 40;

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

fn p(fq: &Fq, c: &[i64]) -> Poly {
    Poly::from_ints(fq, c)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `S(x)` straight from the definition, one Laurent product per `g`.
fn exp_sum_naive(fq: &Fq, coeffs: &CoeffSeq, x: &Laurent) -> CycloInt {
    let count = (fq.q() as u64).pow(coeffs.n_deg() + 1);
    (0..count).fold(CycloInt::zero(fq.p()), |acc, i| {
        let g = fq.poly_from_index(i);
        acc.add(&coeffs.weight(fq, i).unwrap().mul(&char_e(fq, &x.mul_poly(fq, &g)).unwrap()))
    })
}

#[test]
fn exp_sum_examples() {
    let f = f3();
    let ones = CoeffSeq::constant_one(&f, 2);
    assert_eq!(exp_sum_enum(&f, &ones, &Laurent::zero(), BIG).unwrap().as_integer(), Some(big(27)));
    let inv_t = expand_fraction(&f, &Poly::one(), &Poly::t(), -10).unwrap();
    let phased = CoeffSeq::Phase { n_deg: 0, shift: inv_t.neg(&f) };
    assert_eq!(exp_sum_enum(&f, &phased, &inv_t, BIG).unwrap().as_integer(), Some(big(3)));
    assert_eq!(exp_sum_s(&f, &phased, &inv_t, BIG).unwrap().as_integer(), Some(big(3)));
}

#[test]
fn exp_sum_enumeration_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for fq in [f3(), Fq::prime(5).unwrap()] {
        for n_deg in 0..=2 {
            let coeffs = CoeffSeq::random_roots_of_unity(&fq, n_deg, &mut rng);
            for (r, m) in [(vec![1], vec![0, 1, 1]), (vec![2, 1], vec![1, 0, 0, 1]), (vec![], vec![1])] {
                let x = expand_fraction(&fq, &p(&fq, &r), &p(&fq, &m), -8).unwrap();
                assert_eq!(exp_sum_enum(&fq, &coeffs, &x, BIG).unwrap(), exp_sum_naive(&fq, &coeffs, &x));
            }
        }
    }
}

#[test]
fn phase_closed_form_matches_enumeration() {
    let f = f3();
    for (r, m) in [(vec![1], vec![0, 1]), (vec![1], vec![0, 0, 0, 0, 1]), (vec![2, 1], vec![1, 0, 2, 0, 0, 1]), (vec![], vec![1])] {
        let shift = expand_fraction(&f, &p(&f, &r), &p(&f, &m), -12).unwrap();
        for n_deg in 0..=3 {
            let coeffs = CoeffSeq::Phase { n_deg, shift: shift.clone() };
            for x in [Laurent::zero(), expand_fraction(&f, &Poly::one(), &p(&f, &[0, 0, 0, 0, 0, 1]), -12).unwrap()] {
                assert_eq!(
                    exp_sum_phase_closed(&f, n_deg, &shift, &x).unwrap(),
                    exp_sum_enum(&f, &coeffs, &x, BIG).unwrap()
                );
            }
        }
    }
}

#[test]
fn farey_enumeration_counts() {
    let f = f3();
    assert_eq!(farey_enum_square(&f, DegreeRange::Exactly(1), true, -4, BIG).unwrap().len(), 18);
    let unit = farey_enum_square(&f, DegreeRange::Exactly(0), true, -4, BIG).unwrap();
    assert_eq!(unit.len(), 1);
    assert!(unit[0].r.is_zero() && unit[0].value.is_exact_zero());
    assert_eq!(farey_enum_general(&f, &[p(&f, &[0, 0, 1])], -4, BIG).unwrap().len(), 6);
    // Euler phi of f^2 summed over monic f of degree <= 2
    let all = farey_enum_square(&f, DegreeRange::UpTo(2), true, -6, BIG).unwrap();
    let expected: u128 = f.monic_up_to(2).map(|g| f.euler_phi(&f.poly_mul(&g, &g)).unwrap()).sum();
    assert_eq!(all.len() as u128, expected);
    let wide = farey_enum_square(&f, DegreeRange::UpTo(2), false, -6, BIG).unwrap();
    assert_eq!(wide.len(), 2 * all.len());
    assert!(matches!(
        farey_enum_square(&f, DegreeRange::UpTo(4), true, -6, 100),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn count_p_examples_and_monotonicity() {
    let f = f3();
    let pts = farey_enum_square(&f, DegreeRange::Exactly(1), true, -8, BIG).unwrap();
    assert_eq!(count_p(&f, &pts, &Laurent::zero(), -1).unwrap(), 18);
    let x = pts[5].value.clone();
    assert_eq!(count_p(&f, &pts, &x, -7).unwrap(), 1);
    let mut last = 0;
    for d in (-7..=-1).rev().collect::<Vec<_>>().into_iter().rev() {
        let c = count_p(&f, &pts, &x, d).unwrap();
        assert!(c >= last);
        last = c;
    }
}

#[test]
fn count_k_matches_pairwise_scan() {
    for fq in [f3(), Fq::prime(5).unwrap()] {
        for range in [DegreeRange::Exactly(1), DegreeRange::UpTo(2)] {
            if fq.q() == 5 && range == DegreeRange::UpTo(2) {
                continue;
            }
            let pts = farey_enum_square(&fq, range, true, -10, BIG).unwrap();
            let mut last = 0;
            for d in -6..=-1 {
                let k = count_k(&pts, d).unwrap();
                assert_eq!(k, count_k_pairwise(&fq, &pts, d).unwrap(), "q={} d={d}", fq.q());
                assert!(k >= last);
                last = k;
            }
            assert_eq!(count_k(&pts, -1).unwrap(), pts.len());
        }
    }
    let f = f3();
    let pts = farey_enum_square(&f, DegreeRange::Exactly(1), true, -10, BIG).unwrap();
    assert_eq!(count_k(&pts, -9).unwrap(), 1);
    assert!(matches!(count_k(&pts, 0), Err(Error::Domain(_))));
}

#[test]
fn lhs_simple_cases() {
    let f = f3();
    let pts = farey_enum_square(&f, DegreeRange::UpTo(1), true, -6, BIG).unwrap();
    let delta = CoeffSeq::delta_at_zero(&f, 2);
    assert_eq!(lhs_square_moduli(&f, &pts, &delta, BIG).unwrap().as_integer(), Some(big(pts.len() as i64)));
    assert!(matches!(lhs_square_moduli(&f, &pts, &delta, 10), Err(Error::CapExceeded { .. })));
}

#[test]
fn lhs_dual_paths_agree() {
    let f = f3();
    let t = dual_path_agreement(&f, 1, &[2, 3], 6, 17, BIG).unwrap();
    assert_eq!(t.disagreements, 0);
    // roots-of-unity weights give a non-rational value; both paths still agree
    let pts = farey_enum_square(&f, DegreeRange::UpTo(1), true, -6, BIG).unwrap();
    let coeffs = CoeffSeq::random_roots_of_unity(&f, 2, &mut ChaCha8Rng::seed_from_u64(3));
    assert_eq!(
        lhs_square_moduli(&f, &pts, &coeffs, BIG).unwrap(),
        lhs_square_moduli_dual(&f, &pts, &coeffs, BIG).unwrap()
    );
}

#[test]
fn general_moduli_lhs() {
    let f = f3();
    let moduli: Vec<Poly> = f.monic_up_to(2).collect();
    let pts = farey_enum_general(&f, &moduli, -6, BIG).unwrap();
    let coeffs = CoeffSeq::random_signs(&f, 2, &mut ChaCha8Rng::seed_from_u64(9));
    assert_eq!(
        lhs_general(&f, &pts, &coeffs, BIG).unwrap(),
        lhs_square_moduli_dual(&f, &pts, &coeffs, BIG).unwrap()
    );
}

#[test]
fn counterexample_q3() {
    let f = f3();
    let inst = build_counterexample(&f, 1, BIG).unwrap();
    assert_eq!(inst.modulus, p(&f, &[0, 2, 0, 1]));
    assert_eq!((inst.q_deg, inst.n_deg, inst.points.len()), (3, 7, 8));
    for pt in &inst.points {
        assert!(pair_is_valid(&f, &inst, pt).unwrap());
    }
    // exhaustive: the monic cubics with f^2 = 1 mod G are exactly the constructed ones
    let mut roots: Vec<Poly> = f
        .monic_of_degree(3)
        .filter(|g| f.poly_rem(&f.poly_mul(g, g), &inst.modulus).unwrap().is_one())
        .collect();
    let mut built: Vec<Poly> = inst.points.iter().map(|pt| pt.f.clone()).collect();
    roots.sort_by_key(|g| f.poly_index(g));
    built.sort_by_key(|g| f.poly_index(g));
    assert_eq!(roots, built);

    let centre = reciprocal_modulus(&f, &inst, -30).unwrap();
    let all = farey_enum_square(&f, DegreeRange::Exactly(3), true, -30, BIG).unwrap();
    assert!(count_p(&f, &all, &centre, -9).unwrap() >= 8);

    for method in [SumMethod::Enumerate, SumMethod::Closed] {
        let r = verify_counterexample(&f, &inst, method, 0.0, BIG).unwrap();
        assert!(r.all_pass, "{r:?}");
        assert_eq!(r.restricted_lhs, "344373768");
        assert_eq!(r.claim2_rhs, "86093442");
        assert_eq!(r.norm2, "6561");
        assert_eq!(r.ratios.lhs_over_claim2, "4");
        assert_eq!(r.lower_bound, r.restricted_lhs);
        assert!((r.mu - 3f64.ln().recip() * 2f64.ln()).abs() < 1e-12);
    }
}

#[test]
fn counterexample_full_lhs_dominates() {
    let f = f3();
    let inst = build_counterexample(&f, 1, BIG).unwrap();
    let pts = farey_enum_square(&f, DegreeRange::UpTo(3), true, -9, BIG).unwrap();
    let lhs = lhs_integer(&lhs_square_moduli(&f, &pts, &inst.coeffs, BIG).unwrap()).unwrap();
    assert!(lhs >= big(8) * big(3).pow(16));
}

#[test]
fn counterexample_q5() {
    let f = Fq::prime(5).unwrap();
    let inst = build_counterexample(&f, 1, BIG).unwrap();
    assert_eq!((inst.q_deg, inst.n_deg, inst.points.len()), (5, 13, 32));
    for pt in &inst.points {
        assert!(pair_is_valid(&f, &inst, pt).unwrap());
    }
    let r = verify_counterexample(&f, &inst, SumMethod::Closed, 0.0, BIG).unwrap();
    assert!(r.checks[..4].iter().all(|&c| c), "{r:?}");
    assert!(matches!(
        verify_counterexample(&f, &inst, SumMethod::Enumerate, 0.0, 1 << 20),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn delta_h_examples_and_bound() {
    let f = f3();
    let one = Poly::one();
    assert_eq!(delta_h_count(&f, &one, &Poly::t(), &one).unwrap(), 2);
    assert!(delta_h_count(&f, &one, &p(&f, &[0, 0, 1]), &one).unwrap() <= 2);
    // G_t = t shares a factor with k = t
    assert_eq!(delta_h_count(&f, &Poly::t(), &p(&f, &[0, 1]), &one).unwrap(), 0);
    assert!(matches!(delta_h_count(&f, &one, &Poly::t(), &Poly::t()), Err(Error::BadArgs(_))));

    for (fq, max_k) in [(f3(), 3usize), (Fq::prime(5).unwrap(), 2)] {
        let hs = [Poly::one(), Poly::t(), p(&fq, &[1, 1]), p(&fq, &[0, 0, 1]), p(&fq, &[0, 1, 1])];
        for h in &hs {
            for k in fq.monic_up_to(max_k) {
                let bound = 1usize << fq.omega_count(&k).unwrap();
                for l in fq.polys_below(k.deg().unwrap()) {
                    if fq.coprime(&k, &l) {
                        assert!(delta_h_count(&fq, h, &k, &l).unwrap() <= bound);
                    }
                }
            }
        }
    }
}

#[test]
fn square_cofactor_examples() {
    let f = f3();
    assert_eq!(square_cofactor(&f, &p(&f, &[0, 0, 1])).unwrap(), Poly::one());
    assert_eq!(square_cofactor(&f, &p(&f, &[0, 0, 0, 1])).unwrap(), Poly::t());
    // h = 2t: unit 2, inverse 2
    assert_eq!(square_cofactor(&f, &p(&f, &[0, 2])).unwrap(), p(&f, &[0, 2]));
}

#[test]
fn ah_examples() {
    let f = f3();
    let squares = squares_set(&f, 1);
    assert_eq!(squares.len(), 3);
    let one = Poly::one();
    assert_eq!(ah_count(&f, &squares, &one, 2, &one, &Poly::zero(), 2).unwrap(), 3);
    // (t+a)^2 = t^2 + 2at + a^2 is 1 mod t for a = 1, 2; both lie in one ball of
    // radius q but not of radius 1
    assert_eq!(ah_count(&f, &squares, &one, 1, &Poly::t(), &one, 2).unwrap(), 2);
    assert_eq!(ah_count(&f, &squares, &one, 0, &Poly::t(), &one, 2).unwrap(), 1);
    assert!(matches!(ah_count(&f, &squares, &one, 3, &one, &one, 2), Err(Error::BadArgs(_))));
    assert_eq!(squares_set(&Fq::prime(5).unwrap(), 1).len(), 10);
}

/// `X` with `A_h` counted by pairwise distances instead of ball keys.
fn x_pairwise(fq: &Fq, set: &[Poly], q0: u32, delta_exp: i64) -> BigRational {
    let mut best = BigRational::from_integer(big(1));
    for h in fq.monic_up_to(q0 as usize) {
        let sh = dilated_set(fq, set, &h).unwrap();
        if sh.is_empty() {
            continue;
        }
        for k in fq.monic_up_to((-delta_exp / 2) as usize) {
            for l in fq.polys_below(k.deg().unwrap()) {
                if !fq.coprime(&k, &l) {
                    continue;
                }
                let lr = fq.poly_rem(&l, &k).unwrap();
                let cls: Vec<&Poly> = sh.iter().filter(|x| fq.poly_rem(x, &k).unwrap() == lr).collect();
                for m in 0..=(q0 as i64 - h.deg_i64()) {
                    let a = cls
                        .iter()
                        .map(|x| cls.iter().filter(|y| fq.poly_sub(x, y).deg_i64() <= m).count())
                        .max()
                        .unwrap_or(0);
                    let size = BigRational::from_integer(big(sh.len() as i64));
                    let scale = crate::laurent::q_pow_rational(fq.q(), h.deg_i64() + m - k.deg_i64() - q0 as i64);
                    let r = BigRational::from_integer(big(a as i64)) / (BigRational::from_integer(big(1)) + size * scale);
                    if r > best {
                        best = r;
                    }
                }
            }
        }
    }
    best
}

#[test]
fn compute_x_cases() {
    let f = f3();
    let (x, _) = compute_x(&f, &squares_set(&f, 1), 2, -4, BIG).unwrap();
    assert!(x <= BigRational::from_integer(big(4)), "{x}");
    let all: Vec<Poly> = f.monic_of_degree(2).collect();
    for set in [squares_set(&f, 1), all, squares_set(&f, 2)] {
        let q0 = set[0].deg().unwrap() as u32;
        for d in [-2, -3, -4] {
            let (x, _) = compute_x(&f, &set, q0, d, BIG).unwrap();
            assert_eq!(x, x_pairwise(&f, &set, q0, d), "q0={q0} d={d}");
        }
    }
    let (x_one, _) = compute_x(&f, &[p(&f, &[1, 0, 1])], 2, -2, BIG).unwrap();
    assert_eq!(x_one, BigRational::from_integer(big(1)));
}

#[test]
fn bound_values() {
    let z = BigRational::from_integer(big(6561));
    assert_eq!(rhs_claim2(3, 7, 3, &z), BigRational::from_integer(big(86093442)));
    let main = rhs_main_theorem(3, 1, 2, &BigRational::from_integer(big(1))).unwrap();
    assert_eq!(main.to_string(), "216 + 72*3^(2/4)");
    assert!((main.to_f64() - 8.0 * (27.0 + 3f64.powf(2.5))).abs() < 1e-9);
    assert!(matches!(rhs_main_theorem(3, 1, 5, &z), Err(Error::Domain(_))));

    let a = px_bound_combined(3, 2, -5).unwrap();
    let b = px_bound_combined(3, 2, -6).unwrap();
    let c = px_bound_combined(3, 2, -7).unwrap();
    // below the crossover the q^(Q/2) branch is chosen, above it the other
    assert_eq!(combined_crossover(2), 6);
    assert!(a.to_f64() > 0.0 && b.to_f64() > 0.0 && c.to_f64() > 0.0);
    assert!(matches!(px_bound_combined(3, 2, -3), Err(Error::Domain(_))));
    assert!(matches!(px_bound_combined(3, 2, -9), Err(Error::Domain(_))));
    assert_eq!(px_bound_second(3, 1, -2).unwrap().as_rational(), Some(BigRational::from_integer(big(1 + 4 * (3 + 3)))));
    assert!(px_bound_first(3, 1, -4, 2).is_ok());
    assert!(matches!(px_bound_third(3, 1, -4, 3), Err(Error::Domain(_))));
    let third = px_bound_third(3, 1, -4, 0).unwrap();
    // 3^-1 + 1 + 625 * 3^0 + 32 * 3^(-1/2)
    assert!((third.to_f64() - (1.0 / 3.0 + 1.0 + 625.0 + 32.0 / 3f64.sqrt())).abs() < 1e-9);
    let sparse = rhs_sparse_theorem(3, 2, 2, &BigRational::from_integer(big(2)), 3, &BigRational::from_integer(big(1)));
    assert!((sparse.to_f64() - (9.0 + 4.0 * 2.0 * (3.0 + 3.0))).abs() < 1e-9);
    assert_eq!(
        rhs_claim1(3, 2, 1, 3, &BigRational::from_integer(big(1))),
        BigRational::from_integer(big(30))
    );
}

#[test]
fn sweep_rows_and_csv() {
    let f = f3();
    let rows = ratio_sweep(&f, 1, &[2, 3], 4, 1, BIG).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ratio_main.is_finite() && r.ratio_main > 0.0));
    let again = ratio_sweep(&f, 1, &[2, 3], 4, 1, BIG).unwrap();
    assert_eq!(sweep_csv(&rows), sweep_csv(&again));
    assert_eq!(sweep_csv(&rows).lines().count(), 5);
}

#[test]
fn params_derived_quantities() {
    let fs = f3().spec().clone();
    let s = SieveParams::new(fs.clone(), 1, 3, -4).unwrap();
    assert_eq!((s.ell(), s.omega(), s.tau_exp_doubled(), s.q0()), (4, -3, 4, 2));
    assert!(matches!(SieveParams::new(fs, 1, 3, 0), Err(Error::Domain(_))));
}
