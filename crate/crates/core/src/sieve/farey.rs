use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{FieldElem, Fq, Poly};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::laurent::{expand_fraction, Laurent};

/// Reduced fraction `r / m` with `m = f^2` (square moduli) or `m = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyPoint {
    pub r: Poly,
    pub f: Poly,
    pub value: Laurent,
}

/// Which denominators `f` a square-moduli enumeration visits.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeRange {
    Exactly(u32),
    UpTo(u32),
}

impl DegreeRange {
    fn degrees(self) -> std::ops::RangeInclusive<u32> {
        match self {
            DegreeRange::Exactly(d) => d..=d,
            DegreeRange::UpTo(d) => 0..=d,
        }
    }
}

/// Denominators of each degree in `range`: monic ones, or every nonzero one.
pub fn denominators(fq: &Fq, range: DegreeRange, monic_only: bool) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in range.degrees() {
        for f in fq.monic_of_degree(d as usize) {
            if monic_only {
                out.push(f);
            } else {
                out.extend(fq.units().map(|c| fq.poly_scale(&f, c)));
            }
        }
    }
    out
}

/// All `r / f^2` with `deg r < 2 deg f` and `gcd(r, f) = 1`, expanded down to `t^lo`.
pub fn farey_enum_square(
    fq: &Fq,
    range: DegreeRange,
    monic_only: bool,
    lo: i64,
    budget: u128,
) -> Result<Vec<FareyPoint>> {
    let dens = denominators(fq, range, monic_only);
    let needed = dens.iter().map(|f| pow_sat(fq.q() as u64, 2 * f.deg_i64() as u32)).sum();
    check_budget(needed, budget)?;
    let mut out = Vec::new();
    for f in dens {
        let m = fq.poly_mul(&f, &f);
        push_residues(fq, &f, &m, lo, &mut out)?;
    }
    Ok(out)
}

/// All `r / f` with `f` in `moduli`, `deg r < deg f`, `gcd(r, f) = 1`.
pub fn farey_enum_general(fq: &Fq, moduli: &[Poly], lo: i64, budget: u128) -> Result<Vec<FareyPoint>> {
    if moduli.iter().any(|f| f.is_zero()) {
        return Err(Error::ZeroInput);
    }
    let needed = moduli.iter().map(|f| pow_sat(fq.q() as u64, f.deg_i64() as u32)).sum();
    check_budget(needed, budget)?;
    let mut out = Vec::new();
    for f in moduli {
        push_residues(fq, f, f, lo, &mut out)?;
    }
    Ok(out)
}

fn push_residues(fq: &Fq, f: &Poly, m: &Poly, lo: i64, out: &mut Vec<FareyPoint>) -> Result<()> {
    for r in fq.polys_below(m.deg().unwrap()) {
        if fq.coprime(&r, f) {
            let value = expand_fraction(fq, &r, m, lo)?;
            out.push(FareyPoint { r, f: f.clone(), value });
        }
    }
    Ok(())
}

/// `P(x)`: the number of points with `|value - x| <= q^delta_exp`.
pub fn count_p(fq: &Fq, points: &[FareyPoint], x: &Laurent, delta_exp: i64) -> Result<usize> {
    let mut n = 0;
    for pt in points {
        if pt.value.sub(fq, x).norm_le(delta_exp)? {
            n += 1;
        }
    }
    Ok(n)
}

/// Fractional digits at exponents `-1 ..= delta_exp + 1`: two points are within
/// torus distance `q^delta_exp` exactly when these agree.
fn torus_key(x: &Laurent, delta_exp: i64) -> Result<Vec<FieldElem>> {
    ((delta_exp + 1)..=-1).rev().map(|k| x.coeff(k)).collect()
}

/// `K(Delta) = max_x #{r : ‖X_r - x‖ <= Delta}`. In an ultrametric space a
/// maximizing `x` can be taken at one of the points, and the ball around it
/// is a class of points sharing their leading fractional digits.
pub fn count_k(points: &[FareyPoint], delta_exp: i64) -> Result<usize> {
    if delta_exp > -1 {
        return Err(Error::Domain(format!("Delta = q^{delta_exp} exceeds 1/q")));
    }
    let mut classes: HashMap<Vec<FieldElem>, usize> = HashMap::new();
    for pt in points {
        *classes.entry(torus_key(&pt.value, delta_exp)?).or_default() += 1;
    }
    Ok(classes.values().copied().max().unwrap_or(0))
}

/// `K(Delta)` by the quadratic scan over all pairs of points.
pub fn count_k_pairwise(fq: &Fq, points: &[FareyPoint], delta_exp: i64) -> Result<usize> {
    let mut best = 0;
    for a in points {
        let mut n = 0;
        for b in points {
            if b.value.sub(fq, &a.value).frac_part()?.norm_le(delta_exp)? {
                n += 1;
            }
        }
        best = best.max(n);
    }
    Ok(best)
}
