//! Factorization over `Q` into rational roots, and the split of the roots by
//! the sign of their p-adic valuation.
//!
//! Rational roots are found by lifting the simple roots of the squarefree part
//! modulo a small auxiliary prime `q` and reconstructing `lc * root` by its
//! symmetric residue. Every candidate is confirmed by exact evaluation and the
//! multiplicities come from repeated deflation of `f`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{big_mod_inverse, is_prime, symmetric_mod, vp, Prime};
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, Poly};

/// A root `alpha` with multiplicity `e >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub value: BigRational,
    pub multiplicity: u32,
}

impl Root {
    pub fn new(value: BigRational, multiplicity: u32) -> Self {
        Root {
            value,
            multiplicity,
        }
    }

    pub fn integer(value: i64, multiplicity: u32) -> Self {
        Root::new(BigRational::from_integer(value.into()), multiplicity)
    }
}

/// `f(x) = alpha0 * prod (x - alpha_i)^(e_i)` with distinct rational `alpha_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    alpha0: BigRational,
    roots: Vec<Root>,
}

impl Factorization {
    pub fn alpha0(&self) -> &BigRational {
        &self.alpha0
    }

    /// Roots in ascending order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn degree(&self) -> u64 {
        self.roots.iter().map(|r| r.multiplicity as u64).sum()
    }

    /// Coefficients of `alpha0 * prod (x - alpha_i)^(e_i)`, ascending.
    pub fn expand(&self) -> Vec<BigRational> {
        let mut acc = vec![self.alpha0.clone()];
        for r in &self.roots {
            for _ in 0..r.multiplicity {
                let mut next = vec![BigRational::zero(); acc.len() + 1];
                for (i, c) in acc.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * &r.value;
                }
                acc = next;
            }
        }
        acc
    }
}

/// The roots of `f` grouped by valuation: `Z(s, f) = t^k Z(s, f_+)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationSplit {
    pub prime: Prime,
    /// Roots with `v_p >= 0`, the factor `f_+`.
    pub plus_roots: Vec<Root>,
    /// Roots with `v_p < 0`; on `Z_p` each `|x - alpha|` is the constant `|alpha|`.
    pub minus_roots: Vec<Root>,
    /// `k = v_p(alpha0) + sum_{minus} e_i v_p(alpha_i)`.
    pub prefactor_exponent: u64,
}

/// Factors `f` over `Q`; fails unless every root is rational.
pub fn factor_over_q(f: &IntPolynomial) -> Result<Factorization> {
    let g = f.as_poly().primitive_part();
    let squarefree = squarefree_part(&g);
    let mut roots: Vec<BigRational> = rational_roots(&squarefree);
    roots.sort();

    let mut cofactor = g;
    let mut found = Vec::with_capacity(roots.len());
    for alpha in roots {
        let linear = Poly::new(vec![-alpha.numer().clone(), alpha.denom().clone()]);
        let mut e = 0u32;
        while cofactor.degree().unwrap_or(0) >= 1 && cofactor.vanishes_at(&alpha) {
            cofactor = cofactor
                .div_exact(&linear)
                .expect("a primitive linear factor at a root divides exactly");
            e += 1;
        }
        debug_assert!(e >= 1);
        found.push(Root::new(alpha, e));
    }
    if cofactor.degree().unwrap_or(0) >= 1 {
        return Err(Error::NotSplitOverQ {
            cofactor: cofactor.display_in("x"),
        });
    }
    Ok(Factorization {
        alpha0: BigRational::from_integer(f.leading().clone()),
        roots: found,
    })
}

/// Partitions the roots by the sign of `v_p` and computes the prefactor exponent.
pub fn split_by_valuation(fac: &Factorization, p: Prime) -> ValuationSplit {
    let mut k = vp(&fac.alpha0, p).expect("alpha0 is nonzero");
    let mut plus_roots = Vec::new();
    let mut minus_roots = Vec::new();
    for r in &fac.roots {
        if r.value.is_zero() {
            plus_roots.push(r.clone());
            continue;
        }
        let v = vp(&r.value, p).expect("nonzero root");
        if v < 0 {
            k += v * r.multiplicity as i64;
            minus_roots.push(r.clone());
        } else {
            plus_roots.push(r.clone());
        }
    }
    // Gauss: the content of an integer polynomial bounds this below by zero.
    assert!(
        k >= 0,
        "negative prefactor exponent {k} for an integer polynomial"
    );
    ValuationSplit {
        prime: p,
        plus_roots,
        minus_roots,
        prefactor_exponent: k as u64,
    }
}

/// `l_f = 1 + max_{i != j} v_p(alpha_i - alpha_j)`, or 1 for a single root.
pub fn compute_lf(plus_roots: &[Root], p: Prime) -> Result<u64> {
    if plus_roots.is_empty() {
        return Err(Error::EmptyRootList);
    }
    for r in plus_roots {
        if !r.value.is_zero() && vp(&r.value, p)? < 0 {
            return Err(Error::NegativeValuation {
                value: r.value.to_string(),
                prime: p.get(),
            });
        }
    }
    let mut max = 0i64;
    for (i, a) in plus_roots.iter().enumerate() {
        for b in &plus_roots[i + 1..] {
            let diff = &a.value - &b.value;
            if diff.is_zero() {
                return Err(Error::DuplicateRoot(a.value.to_string()));
            }
            max = max.max(vp(&diff, p)?);
        }
    }
    Ok(1 + max as u64)
}

fn squarefree_part(g: &Poly) -> Poly {
    let d = g.derivative();
    if probably_coprime_mod_small_primes(g, &d) {
        return g.clone();
    }
    let h = g.gcd(&d);
    if h.degree() == Some(0) {
        return g.clone();
    }
    g.div_exact(&h)
        .expect("gcd divides its argument")
        .primitive_part()
}

/// True when `a` and `a'` are coprime modulo one of the first few primes not
/// dividing `lc(a)`; that certifies coprimality over `Q`.
fn probably_coprime_mod_small_primes(a: &Poly, d: &Poly) -> bool {
    let lc = a.leading().unwrap();
    (3u64..)
        .filter(|&q| is_prime(q))
        .filter(|&q| !lc.is_multiple_of(&BigInt::from(q)))
        .take(8)
        .any(|q| {
            let am = ModPoly::reduce(a, q);
            let dm = ModPoly::reduce(d, q);
            am.gcd(&dm).degree() == Some(0)
        })
}

/// Distinct rational roots of a squarefree primitive polynomial.
fn rational_roots(s: &Poly) -> Vec<BigRational> {
    let n = s.degree().unwrap();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![BigRational::new(-s.coeff(0), s.coeff(1))];
    }
    let lc = s.leading().unwrap().clone();
    let q = auxiliary_prime(s);
    let sm = ModPoly::reduce(s, q);
    let ds = s.derivative();

    // |alpha| <= 1 + max |a_i / lc|, so |lc * alpha| <= |lc| + max |a_i|.
    let max_coeff = s.coeffs().iter().map(Signed::abs).max().unwrap();
    let bound = (lc.abs() + max_coeff) * 2 + 1;

    let qb = BigInt::from(q);
    let mut roots = Vec::new();
    for r0 in (0..q).filter(|&x| sm.eval(x) == 0) {
        let mut r = BigInt::from(r0);
        let mut modulus = qb.clone();
        while modulus <= bound {
            modulus = &modulus * &modulus;
            let inv = big_mod_inverse(&ds.eval(&r), &modulus)
                .expect("simple root modulo q has a unit derivative");
            r = (&r - s.eval(&r) * inv).mod_floor(&modulus);
        }
        let scaled = symmetric_mod(&(&lc * &r), &modulus);
        let candidate = BigRational::new(scaled, lc.clone());
        if s.vanishes_at(&candidate) {
            roots.push(candidate);
        }
    }
    roots
}

/// Smallest prime `q` with `q` not dividing `lc(s)` and `s mod q` squarefree.
fn auxiliary_prime(s: &Poly) -> u64 {
    let lc = s.leading().unwrap();
    let ds = s.derivative();
    (2u64..)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            if lc.is_multiple_of(&BigInt::from(q)) {
                return false;
            }
            ModPoly::reduce(s, q).gcd(&ModPoly::reduce(&ds, q)).degree() == Some(0)
        })
        .expect("a squarefree polynomial stays squarefree modulo almost every prime")
}

/// Polynomial over `F_q` for a small prime `q`.
#[derive(Debug, Clone)]
struct ModPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    fn reduce(a: &Poly, q: u64) -> Self {
        let qb = BigInt::from(q);
        let coeffs = a
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&qb).to_u64().unwrap())
            .collect();
        ModPoly::new(q, coeffs)
    }

    fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { q, coeffs }
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn eval(&self, x: u64) -> u64 {
        let q = self.q as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % q) as u64
    }

    fn rem(&self, d: &ModPoly) -> ModPoly {
        let q = self.q as u128;
        let dd = d.degree().unwrap();
        let inv = pow_mod(*d.coeffs.last().unwrap(), self.q - 2, self.q) as u128;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.pop().unwrap() as u128 * inv % q;
            let shift = r.len() - dd;
            for (i, &dc) in d.coeffs[..dd].iter().enumerate() {
                let sub = top * dc as u128 % q;
                r[shift + i] = ((r[shift + i] as u128 + q - sub) % q) as u64;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        ModPoly::new(self.q, r)
    }

    fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let (mut acc, mut b) = (1u128, base as u128 % m as u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}
