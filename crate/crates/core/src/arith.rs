//! Exact scalar arithmetic: primes, p-adic valuations, modular inverses and
//! p-adic digit expansions of rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime number `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn to_biguint(self) -> BigUint {
        BigUint::from(self.0)
    }

    /// `p^e` as an arbitrary-precision integer.
    pub fn pow(self, e: u64) -> BigInt {
        num_traits::pow(self.to_bigint(), e as usize)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Multiplicity of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: Prime) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let pb = p.to_bigint();
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// The p-adic order `v_p(x)` of a nonzero rational.
pub fn vp(x: &BigRational, p: Prime) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let num = vp_int(x.numer(), p)? as i64;
    let den = vp_int(x.denom(), p)? as i64;
    Ok(num - den)
}

/// The inverse of `b` modulo `p`, in `[1, p-1]`, by the extended Euclidean algorithm.
pub fn mod_inverse(b: &BigInt, p: Prime) -> Result<u64> {
    let m = p.get() as i128;
    let r = b.mod_floor(&p.to_bigint()).to_i128().expect("residue fits");
    let (mut old_r, mut r) = (r, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible {
            value: b.to_string(),
            prime: p.get(),
        });
    }
    Ok(old_s.rem_euclid(m) as u64)
}

/// Residue of a p-integral rational modulo `p`.
pub fn residue_mod_p(x: &BigRational, p: Prime) -> Result<u64> {
    Ok(padic_expand(x, p, 0)?.digits[0])
}

/// The first `order + 1` digits of the p-adic expansion of a p-integral rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicDigits {
    pub prime: Prime,
    pub digits: Vec<u64>,
}

impl PadicDigits {
    /// The truncation order `m`; the expansion is valid modulo `p^(m+1)`.
    pub fn order(&self) -> usize {
        self.digits.len() - 1
    }

    /// `sum_{j < level} a_j p^j`, the residue class modulo `p^level`.
    pub fn residue(&self, level: usize) -> BigUint {
        let p = self.prime.to_biguint();
        self.digits[..level]
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &p + BigUint::from(d))
    }

    pub fn reconstruct(&self) -> BigUint {
        self.residue(self.digits.len())
    }
}

/// Expands `gamma` as `a_0 + a_1 p + ... + a_m p^m (mod p^(m+1))`.
///
/// With `gamma = c/b` and `y b = 1 (mod p)`, the digits follow
/// `a_i = y c_i mod p` and `c_{i+1} = (c_i - a_i b) / p`.
pub fn padic_expand(gamma: &BigRational, p: Prime, m: usize) -> Result<PadicDigits> {
    if gamma.is_zero() {
        return Ok(PadicDigits {
            prime: p,
            digits: vec![0; m + 1],
        });
    }
    if vp(gamma, p)? < 0 {
        return Err(Error::NegativeValuation {
            value: gamma.to_string(),
            prime: p.get(),
        });
    }
    let b = gamma.denom();
    let y = BigInt::from(mod_inverse(b, p)?);
    let pb = p.to_bigint();
    let mut c = gamma.numer().clone();
    let mut digits = Vec::with_capacity(m + 1);
    for _ in 0..=m {
        let a = (&y * &c).mod_floor(&pb);
        let next = &c - &a * b;
        debug_assert!(next.is_multiple_of(&pb));
        c = next / &pb;
        digits.push(a.to_u64().expect("digit below p"));
    }
    Ok(PadicDigits { prime: p, digits })
}

/// Symmetric residue of `x` modulo `m` in `(-m/2, m/2]`.
pub(crate) fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn big_mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub(crate) fn biguint_from_nonneg(x: &BigInt) -> Option<BigUint> {
    match x.sign() {
        Sign::Minus => None,
        _ => Some(x.magnitude().clone()),
    }
}
