//! Reduced rational functions in `t` with integer coefficients and one global
//! power-of-`p` scale.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::Prime;
use crate::poly::Poly;

/// `numerator(t) / (p^scale * denominator(t))`.
///
/// Canonical form: `gcd(numerator, denominator)` is constant, the denominator
/// has positive constant term, `p` does not divide its content, the two contents
/// are coprime, and `p` divides the numerator's content only when `scale == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub prime: Prime,
    pub numerator: Poly,
    pub denominator: Poly,
    pub scale: u64,
}

impl RationalFunction {
    /// Reduces `num / (p^scale * den)` to canonical form. `den(0)` must be nonzero.
    pub fn reduced(prime: Prime, num: Poly, den: Poly, scale: u64) -> Self {
        assert!(!den.coeff(0).is_zero(), "denominator vanishes at t = 0");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut scale = scale as i64;
        if den.coeff(0).is_negative() {
            num = num.neg();
            den = den.neg();
        }
        let pb = prime.to_bigint();
        let mut dc = den.content();
        while dc.is_multiple_of(&pb) {
            den = den.div_scalar_exact(&pb);
            dc /= &pb;
            scale += 1;
        }
        let g = num.content().gcd(&dc);
        if !g.is_zero() && !g.is_one() {
            num = num.div_scalar_exact(&g);
            den = den.div_scalar_exact(&g);
        }
        while scale > 0 && !num.is_zero() && num.content().is_multiple_of(&pb) {
            num = num.div_scalar_exact(&pb);
            scale -= 1;
        }
        while scale < 0 {
            num = num.scale(&pb);
            scale += 1;
        }
        if num.is_zero() {
            return RationalFunction {
                prime,
                numerator: Poly::zero(),
                denominator: Poly::one(),
                scale: 0,
            };
        }
        RationalFunction {
            prime,
            numerator: num,
            denominator: den,
            scale: scale as u64,
        }
    }

    pub fn one(prime: Prime) -> Self {
        RationalFunction {
            prime,
            numerator: Poly::one(),
            denominator: Poly::one(),
            scale: 0,
        }
    }

    /// The denominator with the `p^scale` factor folded in.
    pub fn full_denominator(&self) -> Poly {
        self.denominator.scale(&self.prime.pow(self.scale))
    }

    /// Exact equality by cross-multiplication.
    pub fn same_value(&self, other: &RationalFunction) -> bool {
        self.prime == other.prime
            && self.numerator.mul(&other.full_denominator())
                == other.numerator.mul(&self.full_denominator())
    }

    /// Value at `t = x`; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let den = BigRational::from(self.prime.pow(self.scale)) * self.denominator.eval_rational(x);
        if den.is_zero() {
            None
        } else {
            Some(self.numerator.eval_rational(x) / den)
        }
    }

    /// The first `n` coefficients of the power series at `t = 0`.
    pub fn series(&self, n: usize) -> Vec<BigRational> {
        let d0 = BigRational::from(self.full_denominator().coeff(0));
        let den: Vec<BigRational> = self
            .full_denominator()
            .coeffs()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::from(self.numerator.coeff(i));
            for j in 1..den.len().min(i + 1) {
                acc -= &den[j] * &out[i - j];
            }
            out.push(acc / &d0);
        }
        out
    }

    /// `"(N(t)) / (D(t))"` with the scale folded into the denominator.
    pub fn render(&self) -> String {
        format!(
            "({}) / ({})",
            self.numerator.display_ascending("t"),
            self.full_denominator().display_ascending("t")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn reduces_common_factors() {
        // (t - 1)(t + 2) / (7 * (t - 1)(3 - t))
        let num = Poly::from_i64(&[-2, 1, 1]);
        let den = Poly::from_i64(&[-7, 7]).mul(&Poly::from_i64(&[3, -1]));
        let r = RationalFunction::reduced(p(7), num, den, 0);
        assert_eq!(r.numerator, Poly::from_i64(&[2, 1]));
        assert_eq!(r.denominator, Poly::from_i64(&[3, -1]));
        assert_eq!(r.scale, 1);
    }

    #[test]
    fn strips_p_power_from_numerator() {
        let r = RationalFunction::reduced(p(5), Poly::from_i64(&[20]), Poly::from_i64(&[5, -1]), 1);
        assert_eq!(r.numerator, Poly::from_i64(&[4]));
        assert_eq!(r.scale, 0);
        assert_eq!(r.render(), "(4) / (5 - t)");
    }

    #[test]
    fn non_p_content_in_denominator() {
        // 1 / (3 (5 - t)) at p = 5 keeps the 3 in the denominator.
        let r = RationalFunction::reduced(p(5), Poly::one(), Poly::from_i64(&[15, -3]), 0);
        assert_eq!(r.denominator, Poly::from_i64(&[15, -3]));
        let s = RationalFunction::reduced(p(5), Poly::from_i64(&[3]), Poly::from_i64(&[15, -3]), 0);
        assert_eq!(s.numerator, Poly::one());
        assert_eq!(s.denominator, Poly::from_i64(&[5, -1]));
    }

    #[test]
    fn series_of_geometric() {
        // 4 / (5 - t) = (4/5) sum (t/5)^n
        let r = RationalFunction::reduced(p(5), Poly::from_i64(&[4]), Poly::from_i64(&[5, -1]), 0);
        let s = r.series(3);
        assert_eq!(
            s,
            vec![
                BigRational::new(big(4), big(5)),
                BigRational::new(big(4), big(25)),
                BigRational::new(big(4), big(125)),
            ]
        );
        assert_eq!(r.eval(&BigRational::one()), Some(BigRational::one()));
    }
}
