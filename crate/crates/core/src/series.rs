//! Poincare series, the volume coefficients `c_j`, the congruence counts `N_n`
//! and their keystream serialization.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{biguint_from_nonneg, Prime};
use crate::error::{Error, Result};
use crate::factor::ValuationSplit;
use crate::pipeline::analyze;
use crate::poly::{IntPolynomial, Poly};
use crate::ratfun::RationalFunction;
use crate::tree::WeightedTree;
use crate::zeta::{coeff_strings, parse_poly, FractionDocument, ZetaFunction, POINCARE_KIND};

/// `c_0, ..., c_J`: `c_j` is the volume of `{x in Z_p : v_p(f(x)) = j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientPrefix {
    pub prime: Prime,
    pub values: Vec<BigRational>,
}

/// `N_0, ..., N_u`: `N_n` counts the solutions of `f(x) = 0 (mod p^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPrefix {
    pub prime: Prime,
    pub values: Vec<BigUint>,
}

/// `H(t) = (1 - t Z) / (1 - t)`.
pub fn poincare_from_zeta(z: &ZetaFunction) -> RationalFunction {
    let zf = &z.normalized;
    let p = zf.prime;
    // Z = N / (p^s D), so 1 - tZ = (p^s D - t N) / (p^s D).
    let full = zf.full_denominator();
    let num = full.sub(&zf.numerator.shift(1));
    let den = zf.denominator.mul(&Poly::from_i64(&[1, -1]));
    RationalFunction::reduced(p, num, den, zf.scale)
}

/// Structured form of a Poincare series: a JSON object with fields `kind`,
/// `prime`, `numerator`, `denominator` and `scale`.
pub fn poincare_to_machine(h: &RationalFunction) -> String {
    let doc = FractionDocument {
        kind: POINCARE_KIND.to_string(),
        prime: h.prime.get(),
        numerator: coeff_strings(&h.numerator),
        denominator: coeff_strings(&h.denominator),
        scale: h.scale,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn poincare_from_machine(text: &str) -> Result<RationalFunction> {
    let doc: FractionDocument =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.kind != POINCARE_KIND {
        return Err(Error::Format(format!("unexpected kind {:?}", doc.kind)));
    }
    Ok(RationalFunction {
        prime: Prime::new(doc.prime)?,
        numerator: parse_poly(&doc.numerator)?,
        denominator: parse_poly(&doc.denominator)?,
        scale: doc.scale,
    })
}

/// `c_j = sum_u a_j(u)` over the tree vertices, shifted by the prefactor `t^k`.
pub fn coefficients_via_tree(
    tree: Option<&WeightedTree>,
    split: &ValuationSplit,
    order: usize,
) -> CoefficientPrefix {
    let p = split.prime;
    let k = split.prefactor_exponent as usize;
    let mut values = vec![BigRational::zero(); order + 1];
    let Some(tree) = tree else {
        if k <= order {
            values[k] = BigRational::one();
        }
        return CoefficientPrefix { prime: p, values };
    };
    let minimal = tree.minimal_weight_one();
    let pm1 = BigInt::from(p.get() - 1);
    for (id, v) in tree.vertices() {
        let l = v.level;
        let ws = v.stalk_weight as usize;
        let contribute = |values: &mut Vec<BigRational>, j: usize, num: &BigInt, den_exp: u64| {
            if let Some(slot) = values.get_mut(j + k) {
                *slot += BigRational::new(num.clone(), p.pow(den_exp));
            }
        };
        if tree.is_terminal(id) && v.weight >= 2 {
            let w = v.weight as usize;
            let mut y = 0u64;
            let mut j = ws;
            while j + k <= order {
                contribute(&mut values, j, &pm1, l + 1 + y);
                y += 1;
                j += w;
            }
        } else if v.weight != 1 {
            let num = BigInt::from(p.get()) - BigInt::from(v.valence);
            if !num.is_zero() {
                contribute(&mut values, ws, &num, l + 1);
            }
        } else if minimal.contains(&id) {
            let mut y = 0u64;
            let mut j = ws;
            while j + k <= order {
                contribute(&mut values, j, &pm1, l + 1 + y);
                y += 1;
                j += 1;
            }
        }
    }
    CoefficientPrefix { prime: p, values }
}

/// Expands every atom `C t^a / (1 - p^-1 t^w)` as `C sum_y p^-y t^(a + y w)`.
pub fn coefficients_via_expansion(z: &ZetaFunction, order: usize) -> CoefficientPrefix {
    let p = z.prime;
    let k = z.prefactor_exponent as usize;
    let inv_p = BigRational::new(BigInt::one(), p.to_bigint());
    let mut values = vec![BigRational::zero(); order + 1];
    for atom in &z.atoms {
        let mut term = atom.coeff(p);
        let mut j = k + atom.t_power as usize;
        while j <= order {
            values[j] += &term;
            if atom.geom_weight == 0 {
                break;
            }
            term *= &inv_p;
            j += atom.geom_weight as usize;
        }
    }
    CoefficientPrefix { prime: p, values }
}

/// Power-series coefficients of the reduced fraction.
pub fn coefficients_via_fraction(z: &ZetaFunction, order: usize) -> CoefficientPrefix {
    CoefficientPrefix {
        prime: z.prime,
        values: z.normalized.series(order + 1),
    }
}

/// `N_0 = 1` and `N_n = p^n - sum_{j=1}^{n} p^n c_{j-1}` for `1 <= n <= u`.
pub fn counts_from_coefficients(c: &CoefficientPrefix, u: usize) -> Result<CountPrefix> {
    if c.values.len() < u {
        return Err(Error::PrefixTooShort {
            available: c.values.len(),
            needed: u,
        });
    }
    let p = c.prime;
    let mut values = vec![BigUint::one()];
    for n in 1..=u {
        let pn = BigRational::from(p.pow(n as u64));
        let mut acc = pn.numer().clone();
        for (j, cj) in c.values[..n].iter().enumerate() {
            let scaled = cj * &pn;
            if !scaled.is_integer() {
                return Err(Error::NonIntegralCount { n, index: j });
            }
            acc -= scaled.to_integer();
        }
        let pn = pn.to_integer();
        if acc.is_negative() || acc > pn {
            return Err(Error::CountOutOfRange {
                n,
                value: acc.to_string(),
            });
        }
        values.push(biguint_from_nonneg(&acc).unwrap());
    }
    Ok(CountPrefix { prime: p, values })
}

/// The keystream `F_{u,p}(H(t, f)) = (N_0, ..., N_u)` through the full pipeline.
pub fn keystream(f: &IntPolynomial, p: Prime, u: usize) -> Result<CountPrefix> {
    let analysis = analyze(f, p)?;
    let c = coefficients_via_tree(analysis.tree.as_ref(), &analysis.split, u);
    counts_from_coefficients(&c, u)
}

/// Each count as a 4-byte big-endian bit length followed by the minimal
/// big-endian magnitude bytes (none for zero).
pub fn encode_counts(counts: &[BigUint]) -> Vec<u8> {
    let mut out = Vec::new();
    for n in counts {
        let bits = u32::try_from(n.bits()).expect("count below 2^32 bits");
        out.extend_from_slice(&bits.to_be_bytes());
        if bits > 0 {
            out.extend_from_slice(&n.to_bytes_be());
        }
    }
    out
}

pub fn decode_counts(bytes: &[u8]) -> Result<Vec<BigUint>> {
    let mut out = Vec::new();
    let mut rest = bytes;
    while !rest.is_empty() {
        let Some((header, tail)) = rest.split_first_chunk::<4>() else {
            return Err(Error::Keystream("truncated length header".to_string()));
        };
        let bits = u32::from_be_bytes(*header) as usize;
        let len = bits.div_ceil(8);
        if tail.len() < len {
            return Err(Error::Keystream("truncated magnitude".to_string()));
        }
        let n = BigUint::from_bytes_be(&tail[..len]);
        if n.bits() as usize != bits {
            return Err(Error::Keystream(format!(
                "bit length {bits} does not match magnitude"
            )));
        }
        out.push(n);
        rest = &tail[len..];
    }
    Ok(out)
}

impl CountPrefix {
    /// Decimal counts, one per line.
    pub fn to_text(&self) -> String {
        self.values.iter().map(|n| format!("{n}\n")).collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        encode_counts(&self.values)
    }
}
