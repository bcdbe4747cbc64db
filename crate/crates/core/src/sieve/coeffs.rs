use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::Fq;
use crate::character::CycloInt;
use crate::error::{check_budget, pow_sat, Result};
use crate::laurent::Laurent;

/// Weights `a_g` for all `g` with `deg g <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffSeq {
    /// `weights[i]` holds the exponent counts (length `p`) of `a_g` for
    /// `g = poly_from_index(i)`.
    Explicit { n_deg: u32, p: u32, weights: Vec<Vec<i64>> },
    /// `a_g = e(g * shift)`.
    Phase { n_deg: u32, shift: Laurent },
}

impl CoeffSeq {
    pub fn n_deg(&self) -> u32 {
        match self {
            CoeffSeq::Explicit { n_deg, .. } | CoeffSeq::Phase { n_deg, .. } => *n_deg,
        }
    }

    fn len(fq: &Fq, n_deg: u32) -> usize {
        (fq.q() as usize).pow(n_deg + 1)
    }

    /// `a_g` given as rational integers.
    pub fn from_integers(fq: &Fq, n_deg: u32, values: &[i64]) -> CoeffSeq {
        assert_eq!(values.len(), CoeffSeq::len(fq, n_deg));
        let p = fq.p();
        let weights = values
            .iter()
            .map(|&v| {
                let mut w = vec![0; p as usize];
                w[0] = v;
                w
            })
            .collect();
        CoeffSeq::Explicit { n_deg, p, weights }
    }

    /// `a_0 = 1`, every other weight zero.
    pub fn delta_at_zero(fq: &Fq, n_deg: u32) -> CoeffSeq {
        let mut v = vec![0; CoeffSeq::len(fq, n_deg)];
        v[0] = 1;
        CoeffSeq::from_integers(fq, n_deg, &v)
    }

    pub fn constant_one(fq: &Fq, n_deg: u32) -> CoeffSeq {
        CoeffSeq::from_integers(fq, n_deg, &vec![1; CoeffSeq::len(fq, n_deg)])
    }

    /// Independent uniform signs `+-1`.
    pub fn random_signs<R: Rng>(fq: &Fq, n_deg: u32, rng: &mut R) -> CoeffSeq {
        let v: Vec<i64> = (0..CoeffSeq::len(fq, n_deg)).map(|_| if rng.gen() { 1 } else { -1 }).collect();
        CoeffSeq::from_integers(fq, n_deg, &v)
    }

    /// Independent uniform `p`-th roots of unity.
    pub fn random_roots_of_unity<R: Rng>(fq: &Fq, n_deg: u32, rng: &mut R) -> CoeffSeq {
        let p = fq.p();
        let weights = (0..CoeffSeq::len(fq, n_deg))
            .map(|_| {
                let mut w = vec![0; p as usize];
                w[rng.gen_range(0..p as usize)] = 1;
                w
            })
            .collect();
        CoeffSeq::Explicit { n_deg, p, weights }
    }

    pub fn weight(&self, fq: &Fq, index: u64) -> Result<CycloInt> {
        match self {
            CoeffSeq::Explicit { p, weights, .. } => Ok(CycloInt::from_exponent_counts(*p, &weights[index as usize])),
            CoeffSeq::Phase { shift, .. } => {
                let g = fq.poly_from_index(index);
                crate::character::char_e(fq, &shift.mul_poly(fq, &g))
            }
        }
    }

    /// `a_g` for `g = poly_from_index(index)` as exponent counts of length `p`.
    pub fn weight_counts(&self, fq: &Fq, index: u64) -> Result<Vec<i64>> {
        match self {
            CoeffSeq::Explicit { weights, .. } => Ok(weights[index as usize].clone()),
            CoeffSeq::Phase { shift, .. } => {
                let mut w = vec![0; fq.p() as usize];
                let g = fq.poly_from_index(index);
                w[crate::character::char_e_exponent(fq, &shift.mul_poly(fq, &g))? as usize] = 1;
                Ok(w)
            }
        }
    }

    /// `Z = sum |a_g|^2`.
    pub fn norm2(&self, fq: &Fq) -> CycloInt {
        match self {
            CoeffSeq::Explicit { p, weights, .. } => weights.iter().fold(CycloInt::zero(*p), |acc, w| {
                acc.add(&CycloInt::from_exponent_counts(*p, w).abs2())
            }),
            CoeffSeq::Phase { n_deg, .. } => {
                CycloInt::from_int(fq.p(), BigInt::from(fq.q()).pow(n_deg + 1))
            }
        }
    }
}

/// `tr[i][c] = Tr(c * y_{-1-i})` for `i <= n_deg`; `e(g y)` is then
/// `zeta^(sum_i tr[i][g_i])`.
fn trace_table(fq: &Fq, y: &Laurent, n_deg: u32) -> Result<Vec<Vec<u32>>> {
    (0..=n_deg as i64)
        .map(|i| {
            let yi = y.coeff(-1 - i)?;
            Ok(fq.elements().map(|c| fq.trace(fq.mul(c, yi))).collect())
        })
        .collect()
}

/// `S(x) = sum_{deg g <= N} a_g e(g x)` by enumerating every `g`.
pub fn exp_sum_enum(fq: &Fq, coeffs: &CoeffSeq, x: &Laurent, budget: u128) -> Result<CycloInt> {
    let n_deg = coeffs.n_deg();
    let (p, q) = (fq.p() as usize, fq.q());
    check_budget(pow_sat(q as u64, n_deg + 1), budget)?;
    let (y, weights) = match coeffs {
        CoeffSeq::Explicit { weights, .. } => (x.clone(), Some(weights)),
        CoeffSeq::Phase { shift, .. } => (x.add(fq, shift), None),
    };
    let table = trace_table(fq, &y, n_deg)?;
    let width = n_deg as usize + 1;
    let mut digits = vec![0usize; width];
    let mut acc = vec![0i64; p];
    let mut exp = 0usize;
    let total = CoeffSeq::len(fq, n_deg);
    for idx in 0..total {
        match weights {
            Some(w) => {
                for (j, &c) in w[idx].iter().enumerate() {
                    if c != 0 {
                        acc[(exp + j) % p] += c;
                    }
                }
            }
            None => acc[exp] += 1,
        }
        // advance the base-q odometer, keeping the exponent in step
        for i in 0..width {
            let old = table[i][digits[i]] as usize;
            digits[i] += 1;
            if digits[i] < q as usize {
                exp = (exp + p - old + table[i][digits[i]] as usize) % p;
                break;
            }
            digits[i] = 0;
            exp = (exp + p - old + table[i][0] as usize) % p;
        }
    }
    Ok(CycloInt::from_exponent_counts(p as u32, &acc))
}

/// `S(x)` for phase weights by orthogonality:
/// `sum_{deg g <= N} e(g y)` is `q^(N+1)` when `‖y‖ <= q^(-N-2)` and 0 otherwise.
pub fn exp_sum_phase_closed(fq: &Fq, n_deg: u32, shift: &Laurent, x: &Laurent) -> Result<CycloInt> {
    let y = x.add(fq, shift).frac_part()?;
    Ok(if y.norm_le(-(n_deg as i64) - 2)? {
        CycloInt::from_int(fq.p(), BigInt::from(fq.q()).pow(n_deg + 1))
    } else {
        CycloInt::zero(fq.p())
    })
}

/// `S(x)`, in closed form for phase weights and by enumeration otherwise.
pub fn exp_sum_s(fq: &Fq, coeffs: &CoeffSeq, x: &Laurent, budget: u128) -> Result<CycloInt> {
    match coeffs {
        CoeffSeq::Phase { n_deg, shift } => exp_sum_phase_closed(fq, *n_deg, shift, x),
        CoeffSeq::Explicit { .. } => exp_sum_enum(fq, coeffs, x, budget),
    }
}
