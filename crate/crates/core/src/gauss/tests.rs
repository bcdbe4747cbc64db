use num_bigint::BigInt;

use super::*;

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

fn spec(fq: &Fq, a: &[i64], l: &[i64], b: &[i64]) -> GaussSpec {
    GaussSpec::new(fq, Poly::from_ints(fq, a), Poly::from_ints(fq, l), Poly::from_ints(fq, b)).unwrap()
}

fn int(p: u32, n: i64) -> CycloInt {
    CycloInt::from_int(p, n)
}

#[test]
fn brute_examples() {
    let f = f3();
    assert!(gauss_brute(&f, &spec(&f, &[1], &[], &[1]), 4).unwrap().is_one());
    let g = gauss_brute(&f, &spec(&f, &[1], &[], &[0, 1]), 4).unwrap();
    assert_eq!(g, CycloInt::from_reduced(3, vec![BigInt::from(1), BigInt::from(2)]).unwrap());
    assert_eq!(g.abs2().as_integer(), Some(BigInt::from(3)));
    assert_eq!(gauss_brute(&f, &spec(&f, &[1], &[], &[0, 0, 1]), 4).unwrap(), int(3, 3));
    assert!(matches!(
        gauss_brute(&f, &spec(&f, &[1], &[], &[0, 0, 0, 0, 0, 1]), 4),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn shift_examples() {
    let f = f3();
    let s = spec(&f, &[1], &[1], &[0, 1]);
    let (phase, reduced) = gauss_shift_to_zero(&f, &s).unwrap();
    assert_eq!(phase, CycloInt::zeta_pow(3, 2));
    assert_eq!(
        gauss_brute(&f, &s, 4).unwrap(),
        phase.mul(&gauss_brute(&f, &reduced, 4).unwrap())
    );
    let (phase, _) = gauss_shift_to_zero(&f, &spec(&f, &[1], &[], &[0, 1])).unwrap();
    assert!(phase.is_one());

    let f5 = Fq::prime(5).unwrap();
    let s = spec(&f5, &[2], &[3], &[0, 1]);
    let (phase, reduced) = gauss_shift_to_zero(&f5, &s).unwrap();
    assert_eq!(
        gauss_brute(&f5, &s, 4).unwrap(),
        phase.mul(&gauss_brute(&f5, &reduced, 4).unwrap())
    );
    assert_eq!(gauss_shift_to_zero(&f, &spec(&f, &[0, 1], &[1], &[0, 1])).unwrap_err(), Error::NotCoprime);
}

#[test]
fn split_examples() {
    let f = f3();
    for (l, b2) in [(vec![], vec![1, 1]), (vec![1], vec![2, 1])] {
        let beta1 = Poly::t();
        let beta2 = Poly::from_ints(&f, &b2);
        let s = GaussSpec::new(&f, Poly::one(), Poly::from_ints(&f, &l), f.poly_mul(&beta1, &beta2)).unwrap();
        let (s1, s2) = gauss_split(&f, &s, &beta1, &beta2).unwrap();
        assert_eq!(
            gauss_brute(&f, &s, 4).unwrap(),
            gauss_brute(&f, &s1, 4).unwrap().mul(&gauss_brute(&f, &s2, 4).unwrap())
        );
    }
    let s = spec(&f, &[1], &[], &[0, 1]);
    let (s1, s2) = gauss_split(&f, &s, &Poly::t(), &Poly::one()).unwrap();
    assert_eq!(s1.beta, Poly::t());
    assert!(s2.beta.is_one());
    let sq = spec(&f, &[1], &[], &[0, 0, 1]);
    assert_eq!(gauss_split(&f, &sq, &Poly::t(), &Poly::t()).unwrap_err(), Error::NotCoprimeModuli);
    assert_eq!(gauss_split(&f, &sq, &Poly::t(), &Poly::one()).unwrap_err(), Error::BadFactor);
}

#[test]
fn power_reduce_examples() {
    let f = f3();
    let (deg, reduced) = gauss_power_reduce(&f, &spec(&f, &[1], &[], &[0, 0, 1])).unwrap();
    assert_eq!(deg, 1);
    assert!(reduced.beta.is_one());
    let cube = spec(&f, &[1], &[], &[0, 0, 0, 1]);
    let (deg, reduced) = gauss_power_reduce(&f, &cube).unwrap();
    assert_eq!((deg, reduced.beta.clone()), (1, Poly::t()));
    assert_eq!(
        gauss_brute(&f, &cube, 4).unwrap(),
        gauss_brute(&f, &reduced, 4).unwrap().scale(&BigInt::from(3))
    );
    // t^4: gamma = t, r = 4, then once more
    let quart = spec(&f, &[1], &[], &[0, 0, 0, 0, 1]);
    let (d1, r1) = gauss_power_reduce(&f, &quart).unwrap();
    let (d2, r2) = gauss_power_reduce(&f, &r1).unwrap();
    assert_eq!(d1 + d2, 2);
    assert!(r2.beta.is_one());
    assert_eq!(gauss_brute(&f, &quart, 4).unwrap(), int(3, 9));
    assert_eq!(gauss_power_reduce(&f, &spec(&f, &[1], &[], &[0, 1])).unwrap_err(), Error::NotAPower);
}

#[test]
fn legendre_reduce_examples() {
    let f = f3();
    let t = Poly::t();
    assert_eq!(gauss_legendre_reduce(&f, &Poly::from_ints(&f, &[2]), &t).unwrap(), -1);
    let g2 = gauss_brute(&f, &spec(&f, &[2], &[], &[0, 1]), 4).unwrap();
    let g1 = gauss_brute(&f, &spec(&f, &[1], &[], &[0, 1]), 4).unwrap();
    assert_eq!(g2, g1.neg());

    let p = Poly::from_ints(&f, &[1, 0, 1]);
    let sign = gauss_legendre_reduce(&f, &t, &p).unwrap();
    let by_enum = f.polys_below(2).any(|x| f.poly_mulmod(&x, &x, &p).unwrap() == t);
    assert_eq!(sign == 1, by_enum);
    let ga = gauss_brute(&f, &GaussSpec::new(&f, t.clone(), Poly::zero(), p.clone()).unwrap(), 4).unwrap();
    let g1 = gauss_brute(&f, &GaussSpec::new(&f, Poly::one(), Poly::zero(), p).unwrap(), 4).unwrap();
    assert_eq!(ga, if sign == 1 { g1 } else { g1.neg() });
}

#[test]
fn fast_examples() {
    let f = f3();
    let s = spec(&f, &[1], &[], &[0, 0, 1, 1]);
    let fast = gauss_fast(&f, &s, 4).unwrap();
    assert_eq!(fast, gauss_brute(&f, &s, 4).unwrap());
    assert_eq!(fast.abs2().as_integer(), Some(BigInt::from(27)));
    assert!(gauss_fast(&f, &spec(&f, &[2], &[1], &[1]), 4).unwrap().is_one());

    let f5 = Fq::prime(5).unwrap();
    let beta = f5.poly_pow(&Poly::from_ints(&f5, &[1, 1]), 3);
    let s = GaussSpec::new(&f5, Poly::from_ints(&f5, &[3]), Poly::t(), beta).unwrap();
    let fast = gauss_fast(&f5, &s, 4).unwrap();
    assert_eq!(fast, gauss_brute(&f5, &s, 4).unwrap());
    assert_eq!(fast.abs2().as_integer(), Some(BigInt::from(125)));
}

#[test]
fn fast_handles_non_monic_modulus() {
    let f = Fq::prime(5).unwrap();
    let s = spec(&f, &[1, 2], &[3, 1], &[2, 0, 3]);
    assert_eq!(gauss_fast(&f, &s, 4).unwrap(), gauss_brute(&f, &s, 4).unwrap());
}

#[test]
fn fast_cap_only_bites_on_large_primes() {
    let f = f3();
    // t^6 only needs G(1, 0; 1)
    let s = spec(&f, &[1], &[], &[0, 0, 0, 0, 0, 0, 1]);
    assert_eq!(gauss_fast(&f, &s, 2).unwrap(), int(3, 27));
    let irreducible_cubic = Poly::from_ints(&f, &[1, 2, 0, 1]);
    let s = GaussSpec::new(&f, Poly::one(), Poly::zero(), irreducible_cubic).unwrap();
    assert!(matches!(gauss_fast(&f, &s, 2), Err(Error::CapExceeded { .. })));
}

#[test]
fn brute_table_matches_single_sums() {
    let f = Fq::prime(5).unwrap();
    let beta = Poly::from_ints(&f, &[1, 0, 2, 1]);
    let table = BruteTable::new(&f, &beta, 4).unwrap();
    let alpha = Poly::from_ints(&f, &[4, 1]);
    let all = table.all_l(&alpha);
    for li in (0..125u64).step_by(9) {
        let s = GaussSpec::new(&f, alpha.clone(), f.poly_from_index(li), beta.clone()).unwrap();
        assert_eq!(all[li as usize], gauss_brute(&f, &s, 4).unwrap());
    }
}

#[test]
fn identity_chain_small_enumeration() {
    let t = verify_identities(&f3(), 2).unwrap();
    assert!(t.all_hold(), "{t:?}");
    assert!(t.specs > 0);
}

#[test]
fn report_fields() {
    let f = f3();
    let s = spec(&f, &[1], &[], &[0, 0, 1]);
    let r = GaussReport::new(&f, &s, &gauss_brute(&f, &s, 4).unwrap(), "brute");
    assert_eq!(r.beta, "0,0,1");
    assert_eq!(r.l, "0-poly");
    assert_eq!(r.abs2, "9");
    assert_eq!(r.value, "p=3;coeffs=3,0");
}
