//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `Z[t]`, coefficients in ascending degree, no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    /// `c t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, non-negative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| if g.is_one() { g } else { g.gcd(c) })
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!(a.is_multiple_of(c));
                    a / c
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from(c.clone())
            })
    }

    /// Whether `a/b` is a root, evaluated homogeneously in `Z`.
    pub fn vanishes_at(&self, x: &BigRational) -> bool {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc.is_zero()
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &top * dc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Exact division in `Z[t]`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient
    /// (primitive pseudo-remainder sequence). `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Poly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Human-readable form in descending powers of `var`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            push_term(&mut out, c, i, var);
        }
        out
    }

    /// Human-readable form in ascending powers of `var`.
    pub fn display_ascending(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            push_term(&mut out, c, i, var);
        }
        out
    }
}

fn push_term(out: &mut String, c: &BigInt, i: usize, var: &str) {
    let first = out.is_empty();
    let mag = c.abs();
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    if i == 0 || !mag.is_one() {
        out.push_str(&mag.to_string());
    }
    match i {
        0 => {}
        1 => out.push_str(var),
        _ => {
            out.push_str(var);
            out.push('^');
            out.push_str(&i.to_string());
        }
    }
}

/// A non-constant polynomial `f(x)` in `Z[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial(Poly);

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let p = Poly::new(coeffs);
        match p.degree() {
            Some(d) if d >= 1 => Ok(IntPolynomial(p)),
            _ => Err(Error::ConstantPolynomial),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * prod (b_i x - a_i)^(e_i)` for roots `a_i / b_i`: the primitive integer
    /// polynomial with the given rational roots, times `c`.
    pub fn from_roots(scalar: &BigInt, roots: &[(BigRational, u32)]) -> Result<Self> {
        let mut acc = Poly::constant(scalar.clone());
        for (r, e) in roots {
            let lin = Poly::new(vec![-r.numer().clone(), r.denom().clone()]);
            for _ in 0..*e {
                acc = acc.mul(&lin);
            }
        }
        IntPolynomial::new(acc.into_coeffs())
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    pub fn leading(&self) -> &BigInt {
        self.0.leading().unwrap()
    }

    /// Comma-separated ascending coefficients, the input syntax.
    pub fn to_coefficient_list(&self) -> String {
        self.coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses comma-separated ascending coefficients, e.g. `-1,0,1` for `x^2 - 1`.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.strip_prefix('+')
                    .unwrap_or(tok)
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let f: IntPolynomial = "-1, 0, 1".parse().unwrap();
        assert_eq!(f.to_string(), "x^2 - 1");
        assert_eq!(f.to_coefficient_list(), "-1,0,1");
        let g: IntPolynomial = "0,-2,0,0".parse().unwrap();
        assert_eq!(g.degree(), 1);
        assert_eq!(g.to_string(), "-2x");
        assert_eq!("5".parse::<IntPolynomial>(), Err(Error::ConstantPolynomial));
        assert_eq!(
            "0,0".parse::<IntPolynomial>(),
            Err(Error::ConstantPolynomial)
        );
        assert!(matches!(
            "1,x".parse::<IntPolynomial>(),
            Err(Error::Parse(_))
        ));
        let big: IntPolynomial = "123456789012345678901234567890,1".parse().unwrap();
        assert_eq!(
            big.coeffs()[0].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn from_roots_clears_denominators() {
        let half = BigRational::new(1.into(), 2.into());
        let f = IntPolynomial::from_roots(&BigInt::one(), &[(half, 2)]).unwrap();
        assert_eq!(f.coeffs(), Poly::from_i64(&[1, -4, 4]).coeffs());
    }

    #[test]
    fn gcd_and_exact_division() {
        // (t - 1)^2 (t + 2) and (t - 1)(t + 3)
        let a = Poly::from_i64(&[2, -3, 0, 1]);
        let b = Poly::from_i64(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_i64(&[-1, 1]));
        assert_eq!(
            a.div_exact(&Poly::from_i64(&[-1, 1])),
            Some(Poly::from_i64(&[-2, 1, 1]))
        );
        assert_eq!(a.div_exact(&Poly::from_i64(&[1, 1])), None);
        assert_eq!(
            Poly::from_i64(&[2, 4]).gcd(&Poly::from_i64(&[3, 6])),
            Poly::from_i64(&[1, 2])
        );
        assert_eq!(
            Poly::from_i64(&[5, 0, 1]).gcd(&Poly::from_i64(&[5, -1])),
            Poly::one()
        );
    }

    #[test]
    fn display_ascending() {
        assert_eq!(Poly::from_i64(&[5, -1]).display_ascending("t"), "5 - t");
        assert_eq!(
            Poly::from_i64(&[0, 0, -3, 1]).display_ascending("t"),
            "-3t^2 + t^3"
        );
        assert_eq!(Poly::zero().display_ascending("t"), "0");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..20, 0..5).prop_map(|c| Poly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            let (x, y) = (a.mul(&c), b.mul(&c));
            let g = x.gcd(&y);
            prop_assume!(!g.is_zero());
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
            if !c.is_zero() {
                prop_assert!(g.div_exact(&c.primitive_part()).is_some());
            }
        }
    }
}
