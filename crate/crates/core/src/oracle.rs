//! Brute-force ground truth: solution counts of `f(x) = 0 (mod p^m)` by
//! enumerating every residue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Cap on the modulus `p^m` that may be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_modulus: u64,
}

impl OracleBudget {
    pub const DEFAULT_MAX_MODULUS: u64 = 10_000_000;

    pub fn new(max_modulus: u64) -> Self {
        OracleBudget { max_modulus }
    }

    /// Largest `m` with `p^m` within budget.
    pub fn max_exponent(&self, p: Prime) -> u32 {
        let mut m = 0;
        let mut modulus = 1u64;
        while let Some(next) = modulus.checked_mul(p.get()) {
            if next > self.max_modulus {
                break;
            }
            modulus = next;
            m += 1;
        }
        m
    }

    fn modulus(&self, p: Prime, m: u32) -> Result<u64> {
        p.get()
            .checked_pow(m)
            .filter(|&n| n <= self.max_modulus)
            .ok_or(Error::BudgetExceeded {
                prime: p.get(),
                exponent: m,
                budget: self.max_modulus,
            })
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget::new(Self::DEFAULT_MAX_MODULUS)
    }
}

const CHUNK: u64 = 1 << 14;

/// Horner evaluation modulo `modulus < 2^63`.
struct Reduced {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Reduced {
    fn new(f: &IntPolynomial, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        Reduced { coeffs, modulus }
    }

    fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        if m <= u32::MAX as u64 {
            self.coeffs
                .iter()
                .rev()
                .fold(0, |acc, &c| (acc * x + c) % m)
        } else {
            self.coeffs
                .iter()
                .rev()
                .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % m as u128) as u64
        }
    }
}

/// `N_m`: the number of `x in [0, p^m)` with `f(x) = 0 (mod p^m)`.
pub fn brute_force_count(f: &IntPolynomial, p: Prime, m: u32, budget: OracleBudget) -> Result<u64> {
    let modulus = budget.modulus(p, m)?;
    let red = Reduced::new(f, modulus);
    let chunks = modulus.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let end = ((c + 1) * CHUNK).min(modulus);
            (c * CHUNK..end).filter(|&x| red.eval(x) == 0).count() as u64
        })
        .sum())
}

/// `N_0, ..., N_M` from one enumeration modulo `p^M`: a class modulo `p^m`
/// has `p^(M-m)` lifts, and `f(x) mod p^m` only depends on `x mod p^m`.
pub fn brute_force_counts(
    f: &IntPolynomial,
    p: Prime,
    max_m: u32,
    budget: OracleBudget,
) -> Result<Vec<u64>> {
    let modulus = budget.modulus(p, max_m)?;
    let red = Reduced::new(f, modulus);
    let pr = p.get();
    let top = max_m as usize;
    let chunks = modulus.div_ceil(CHUNK);
    // histogram[v] = #{x : min(v_p(f(x)), M) = v}
    let histogram = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; top + 1];
            let end = ((c + 1) * CHUNK).min(modulus);
            for x in c * CHUNK..end {
                let mut y = red.eval(x);
                let mut v = 0;
                if y == 0 {
                    v = top;
                } else {
                    while y.is_multiple_of(pr) {
                        y /= pr;
                        v += 1;
                    }
                }
                h[v] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; top + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut counts = vec![0u64; top + 1];
    let mut at_least = 0u64;
    for m in (0..=top).rev() {
        at_least += histogram[m];
        counts[m] = at_least / pr.pow((top - m) as u32);
    }
    for m in 0..top {
        assert!(counts[m + 1] <= pr * counts[m], "N_{} > p N_{}", m + 1, m);
        assert!(counts[m] <= pr.pow(m as u32));
    }
    Ok(counts)
}

/// `c_m = N_m p^-m - N_{m+1} p^-(m+1)`.
pub fn brute_force_cm(
    f: &IntPolynomial,
    p: Prime,
    m: u32,
    budget: OracleBudget,
) -> Result<BigRational> {
    let counts = brute_force_counts(f, p, m + 1, budget)?;
    let term = |n: u32| BigRational::new(BigInt::from(counts[n as usize]), p.pow(n as u64));
    Ok(term(m) - term(m + 1))
}
