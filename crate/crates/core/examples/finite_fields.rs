//! Arithmetic in F_9[t]: division, gcd, factorization, CRT and Legendre symbols.

use ffsieve::algebra::{FieldSpec, Fq, Poly};

fn main() -> ffsieve::Result<()> {
    // F_9 = F_3[i] with i^2 = -1
    let f9 = Fq::new(FieldSpec::extension(3, vec![1, 0, 1]))?;
    let i = f9.parse_elem("[0,1]")?;
    println!("q = {}, i^2 = {}", f9.q(), f9.format_elem(f9.mul(i, i)));

    let a = f9.parse_poly("[1,0],[0,1],[0,0],[1,0]")?;
    let b = f9.parse_poly("[2,0],[0,0],[1,0]")?;
    let (quo, rem) = f9.poly_divmod(&a, &b)?;
    println!("a = {}", f9.pretty_poly(&a));
    println!("a = ({}) * ({}) + ({})", f9.pretty_poly(&quo), f9.pretty_poly(&b), f9.pretty_poly(&rem));
    let (g, s, t) = f9.poly_xgcd(&a, &b)?;
    println!("gcd = {} = s a + t b with s = {}, t = {}", f9.pretty_poly(&g), f9.pretty_poly(&s), f9.pretty_poly(&t));

    let f3 = Fq::prime(3)?;
    let f = Poly::from_ints(&f3, &[2, 0, 1, 0, 0, 0, 1]);
    let fac = f3.factor(&f)?;
    let parts: Vec<String> = fac.factors.iter().map(|(p, e)| format!("({})^{e}", f3.pretty_poly(p))).collect();
    println!("{} = {}", f3.pretty_poly(&f), parts.join(" "));
    for d in 1..=4 {
        println!("monic irreducibles of degree {d} over F_3: {}", f3.monic_irreducibles(d).len());
    }

    let primes = f3.monic_irreducibles(1);
    let congruences: Vec<(Poly, Poly)> =
        primes.iter().zip([1, 2, 1]).map(|(p, s)| (Poly::from_ints(&f3, &[s]), p.clone())).collect();
    let x = f3.crt(&congruences)?;
    println!("x = 1, 2, 1 mod t, t+1, t+2: x = {}", f3.pretty_poly(&x));

    let big_p = Poly::from_ints(&f3, &[2, 2, 0, 1]);
    for alpha in f3.polys_below(2).filter(|a| !a.is_zero()) {
        println!("({} / {}) = {:+}", f3.pretty_poly(&alpha), f3.pretty_poly(&big_p), f3.legendre(&alpha, &big_p)?);
    }
    Ok(())
}
