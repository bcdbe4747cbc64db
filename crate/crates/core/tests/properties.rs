use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ffsieve::algebra::{FieldSpec, Fq, Poly};
use ffsieve::character::{char_E, cyclo_embed, field_gauss_sum, CycloInt};
use ffsieve::expint::{
    ball_integral_closed, ball_integral_quadrature, expint_eval, expint_quadrature, fourier_step, poisson_check,
    ExpIntSpec, StepFunction,
};
use ffsieve::gauss::{gauss_brute, gauss_fast, GaussSpec};
use ffsieve::laurent::{expand_fraction, AbsValue, Ball, Laurent};
use ffsieve::sieve::{
    count_k, count_k_pairwise, count_p, farey_enum_square, lhs_square_moduli, lhs_square_moduli_dual, CoeffSeq,
    DegreeRange,
};

const BIG: u128 = 1 << 40;

fn field(which: u8) -> Fq {
    match which % 4 {
        0 => Fq::prime(3).unwrap(),
        1 => Fq::prime(5).unwrap(),
        2 => Fq::prime(7).unwrap(),
        _ => Fq::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap(),
    }
}

fn poly_from(fq: &Fq, raw: &[u32]) -> Poly {
    Poly::from_coeffs(raw.iter().map(|&c| fq.elem(c % fq.q()).unwrap()).collect())
}

fn exact_laurent(fq: &Fq, hi: i64, raw: &[u32]) -> Laurent {
    Laurent::exact(hi, raw.iter().map(|&c| fq.elem(c % fq.q()).unwrap()).collect())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn digits(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 0..=max_len)
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn divmod_reconstructs(w in 0u8..4, a in digits(9), b in digits(5)) {
        let fq = field(w);
        let (a, b) = (poly_from(&fq, &a), poly_from(&fq, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = fq.poly_divmod(&a, &b).unwrap();
        prop_assert_eq!(fq.poly_add(&fq.poly_mul(&q, &b), &r), a);
        prop_assert!(r.deg_i64() < b.deg_i64());
    }

    #[test]
    fn xgcd_is_bezout(w in 0u8..4, a in digits(7), b in digits(7)) {
        let fq = field(w);
        let (a, b) = (poly_from(&fq, &a), poly_from(&fq, &b));
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, s, t) = fq.poly_xgcd(&a, &b).unwrap();
        prop_assert_eq!(fq.poly_add(&fq.poly_mul(&s, &a), &fq.poly_mul(&t, &b)), g.clone());
        prop_assert!(g.is_monic());
        prop_assert!(fq.poly_rem(&a, &g).unwrap().is_zero() && fq.poly_rem(&b, &g).unwrap().is_zero());
    }

    #[test]
    fn factorization_recomposes(raw in digits(9)) {
        let fq = Fq::prime(3).unwrap();
        let f = poly_from(&fq, &raw);
        prop_assume!(!f.is_zero());
        let fac = fq.factor(&f).unwrap();
        prop_assert_eq!(fac.recompose(&fq), f);
        for (p, _) in &fac.factors {
            prop_assert!(p.is_monic() && fq.is_irreducible(p));
        }
    }

    #[test]
    fn divisor_count_bound(w in 0u8..4, raw in digits(7)) {
        let fq = field(w);
        let l = poly_from(&fq, &raw);
        prop_assume!(!l.is_zero());
        let tau = fq.tau_count(&l).unwrap();
        prop_assert!(tau <= (1u128 << l.deg().unwrap()) * fq.q() as u128);
    }

    #[test]
    fn torus_norm_ultrametric(w in 0u8..4, hx in -4i64..3, x in digits(6), hy in -4i64..3, y in digits(6)) {
        let fq = field(w);
        let (x, y) = (exact_laurent(&fq, hx, &x), exact_laurent(&fq, hy, &y));
        let sum = x.add(&fq, &y).torus_norm().unwrap();
        prop_assert!(sum <= x.torus_norm().unwrap().max(y.torus_norm().unwrap()));
        prop_assert_eq!(x.torus_norm().unwrap(), x.frac_part().unwrap().abs_inf().unwrap());
        prop_assert!(x.torus_norm().unwrap() <= AbsValue::QPow(-1));
    }

    #[test]
    fn square_roots_square_back(w in 0u8..4, h in -3i64..4, z in digits(5), prec in -12i64..-4) {
        let fq = field(w);
        let z = exact_laurent(&fq, h, &z);
        let y = z.mul(&fq, &z);
        let s = y.sqrt(&fq, prec).unwrap();
        let err = s.mul(&fq, &s).sub(&fq, &y);
        // s is known to prec, so s^2 is known to prec + deg s
        let top = y.deg().unwrap().map_or(0, |d| d / 2);
        prop_assert!(err.norm_lt(prec + top).unwrap());
    }

    #[test]
    fn expansion_times_denominator(w in 0u8..4, r in digits(5), f in digits(5), lo in -14i64..-2) {
        let fq = field(w);
        let (r, f) = (poly_from(&fq, &r), poly_from(&fq, &f));
        prop_assume!(!f.is_zero());
        let x = expand_fraction(&fq, &r, &f, lo).unwrap();
        let err = x.mul_poly(&fq, &f).sub(&fq, &Laurent::from_poly(&r));
        prop_assert!(err.norm_lt(lo + f.deg_i64()).unwrap());
    }

    #[test]
    fn character_is_additive(w in 0u8..4, a in 0u32..1000, b in 0u32..1000) {
        let fq = field(w);
        let (a, b) = (fq.elem(a % fq.q()).unwrap(), fq.elem(b % fq.q()).unwrap());
        prop_assert_eq!(char_E(&fq, fq.add(a, b)), char_E(&fq, a).mul(&char_E(&fq, b)));
    }

    #[test]
    fn abs2_is_real_and_nonnegative(p in prop::sample::select(vec![3u32, 5, 7]), raw in prop::collection::vec(-9i64..10, 1..7)) {
        let counts: Vec<i64> = (0..p as usize).map(|i| raw.get(i).copied().unwrap_or(0)).collect();
        let z = CycloInt::from_exponent_counts(p, &counts);
        let a2 = z.abs2();
        prop_assert_eq!(a2.conj(), a2.clone());
        if let Some(n) = a2.as_integer() {
            prop_assert!(n >= BigInt::from(0));
        }
    }

    #[test]
    fn embedding_respects_products(p in prop::sample::select(vec![3u32, 5, 7]), a in prop::collection::vec(-9i64..10, 3), b in prop::collection::vec(-9i64..10, 3)) {
        let pad = |v: &[i64]| (0..p as usize).map(|i| v.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
        let (a, b) = (CycloInt::from_exponent_counts(p, &pad(&a)), CycloInt::from_exponent_counts(p, &pad(&b)));
        let (ea, eb, eab) = (cyclo_embed(&a, 64), cyclo_embed(&b, 64), cyclo_embed(&a.mul(&b), 64));
        let prod = ea.mul(&eb);
        let ((x, y), (u, v)) = (prod.to_f64(), eab.to_f64());
        prop_assert!((x - u).abs() + (y - v).abs() <= prod.err_f64() + eab.err_f64() + 1e-9);
    }

    #[test]
    fn fast_gauss_matches_direct(w in 0u8..2, beta in digits(5), alpha in digits(5), l in digits(5)) {
        let fq = field(w);
        let mut beta = poly_from(&fq, &beta);
        prop_assume!(beta.deg().is_some_and(|d| d >= 1));
        beta = fq.poly_monic(&beta).unwrap().1;
        let alpha = fq.poly_rem(&poly_from(&fq, &alpha), &beta).unwrap();
        prop_assume!(fq.coprime(&alpha, &beta));
        let spec = GaussSpec::new(&fq, alpha, poly_from(&fq, &l), beta.clone()).unwrap();
        let direct = gauss_brute(&fq, &spec, 5).unwrap();
        prop_assert_eq!(gauss_fast(&fq, &spec, 5).unwrap(), direct.clone());
        prop_assert_eq!(direct.abs2().as_integer(), Some(BigInt::from(fq.q()).pow(beta.deg().unwrap() as u32)));
    }

    #[test]
    fn ball_integral_closed_matches_quadrature(w in 0u8..2, eps in 0u32..2, c in 1u32..1000, n in -3i64..3, hx in -3i64..4, x in digits(3)) {
        let fq = field(w);
        let c = fq.elem(1 + c % (fq.q() - 1)).unwrap();
        let x = exact_laurent(&fq, hx, &x);
        let closed = ball_integral_closed(&fq, c, eps, &x, n).unwrap().realize(&fq);
        let alpha = Laurent::monomial(c, -(eps as i64));
        prop_assert_eq!(closed, ball_integral_quadrature(&fq, &alpha, &x, n, BIG).unwrap());
    }

    #[test]
    fn linear_integral_matches_quadrature(w in 0u8..2, hb in -4i64..2, b in digits(3), big_q in -2i64..3) {
        let fq = field(w);
        let spec = ExpIntSpec::new(Laurent::zero(), exact_laurent(&fq, hb, &b), big_q);
        let closed = expint_eval(&fq, &spec).unwrap().realize(&fq);
        prop_assert_eq!(closed, expint_quadrature(&fq, &spec, BIG).unwrap());
    }

    #[test]
    fn poisson_holds_on_random_steps(w in 0u8..2, seed in any::<u64>(), hx in -3i64..1, x in digits(4)) {
        let fq = field(w);
        let phi = StepFunction::random(&fq, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        let x = exact_laurent(&fq, hx, &x).truncated(-4).unwrap();
        prop_assert!(poisson_check(&fq, &phi, &x, 3).unwrap().equal);
    }

    #[test]
    fn counting_functions_are_monotone(w in 0u8..2, hx in -6i64..1, x in digits(6)) {
        let fq = field(w);
        let pts = farey_enum_square(&fq, DegreeRange::UpTo(1), true, -10, BIG).unwrap();
        let x = exact_laurent(&fq, hx, &x);
        let mut last = (0, 0);
        for d in -8..=-1 {
            let now = (count_p(&fq, &pts, &x, d).unwrap(), count_k(&pts, d).unwrap());
            prop_assert!(now.0 >= last.0 && now.1 >= last.1);
            prop_assert_eq!(now.1, count_k_pairwise(&fq, &pts, d).unwrap());
            last = now;
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn lhs_paths_agree(seed in any::<u64>(), n_deg in 2u32..5, unit_roots in any::<bool>()) {
        let fq = Fq::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = if unit_roots {
            CoeffSeq::random_roots_of_unity(&fq, n_deg, &mut rng)
        } else {
            CoeffSeq::random_signs(&fq, n_deg, &mut rng)
        };
        let pts = farey_enum_square(&fq, DegreeRange::UpTo(1), true, -(n_deg as i64) - 1, BIG).unwrap();
        prop_assert_eq!(
            lhs_square_moduli(&fq, &pts, &coeffs, BIG).unwrap(),
            lhs_square_moduli_dual(&fq, &pts, &coeffs, BIG).unwrap()
        );
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    for w in 0..4 {
        let fq = field(w);
        let max_d = if fq.q() >= 7 { 5 } else { 6 };
        for d in 1..=max_d {
            let expected = ffsieve::algebra::count_monic_irreducibles(fq.q() as u64, d as u32);
            // independent count: monic polynomials of degree d with no factor of lower degree
            let brute = fq.monic_of_degree(d).filter(|f| fq.factor(f).unwrap().factors == vec![(f.clone(), 1)]).count();
            assert_eq!(fq.monic_irreducibles(d).len() as u128, expected, "q={} d={d}", fq.q());
            if d <= 4 {
                assert_eq!(brute as u128, expected, "q={} d={d}", fq.q());
            }
        }
    }
}

#[test]
fn legendre_matches_square_enumeration() {
    for p in [3, 5] {
        let fq = Fq::prime(p).unwrap();
        for d in 1..=3 {
            for big_p in fq.monic_irreducibles(d).iter() {
                let squares: std::collections::BTreeSet<u64> = fq
                    .polys_below(d)
                    .map(|x| fq.poly_index(&fq.poly_mulmod(&x, &x, big_p).unwrap()))
                    .collect();
                for alpha in fq.polys_below(d).filter(|a| !a.is_zero()) {
                    let expect = if squares.contains(&fq.poly_index(&alpha)) { 1 } else { -1 };
                    assert_eq!(fq.legendre(&alpha, big_p).unwrap(), expect);
                }
            }
        }
    }
}

#[test]
fn classical_gauss_sums_have_modulus_sqrt_q() {
    let mut fields: Vec<Fq> = [3, 5, 7, 11, 13].iter().map(|&p| Fq::prime(p).unwrap()).collect();
    fields.push(Fq::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap());
    for fq in fields {
        let total = fq.elements().fold(CycloInt::zero(fq.p()), |acc, a| acc.add(&char_E(&fq, a)));
        assert!(total.is_zero(), "orthogonality fails for q={}", fq.q());
        for c in fq.units() {
            assert_eq!(field_gauss_sum(&fq, c).abs2().as_integer(), Some(BigInt::from(fq.q())));
        }
    }
}

#[test]
fn fourier_twice_returns_centred_indicators() {
    for p in [3, 5] {
        let fq = Fq::prime(p).unwrap();
        for n in -4..=2 {
            let phi = StepFunction::indicator(&fq, Ball::centered(n));
            let twice = fourier_step(&fq, &fourier_step(&fq, &phi).unwrap()).unwrap();
            assert_eq!(twice.merged(&fq).unwrap(), phi.merged(&fq).unwrap(), "q={p} n={n}");
        }
    }
}
