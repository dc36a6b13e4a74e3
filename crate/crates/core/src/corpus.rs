//! Test polynomials: a fixed hand-picked list and a seeded random family.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Prime;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: IntPolynomial,
    pub prime: Prime,
}

impl CorpusEntry {
    /// `scalar * prod (b x - a)^e` over roots `(a, b, e)`.
    pub fn from_roots(name: &str, p: u64, scalar: i64, roots: &[(i64, i64, u32)]) -> Self {
        let roots: Vec<(BigRational, u32)> = roots
            .iter()
            .map(|&(a, b, e)| (BigRational::new(a.into(), b.into()), e))
            .collect();
        CorpusEntry {
            name: name.to_string(),
            poly: IntPolynomial::from_roots(&BigInt::from(scalar), &roots).expect("non-constant"),
            prime: Prime::new(p).expect("prime"),
        }
    }
}

/// The worked example at `p = 11`: five integer roots sharing residues up to
/// level 2, with multiplicities 1, 3, 1, 2, 1.
pub fn worked_example() -> CorpusEntry {
    let e = |x0: i64, x1: i64, x2: i64| x0 + 11 * x1 + 121 * x2;
    CorpusEntry::from_roots(
        "worked-example-p11",
        11,
        1,
        &[
            (e(1, 4, 7), 1, 1),
            (e(1, 4, 8), 1, 3),
            (e(2, 5, 9), 1, 1),
            (e(3, 6, 10), 1, 2),
            (e(3, 6, 0), 1, 1),
        ],
    )
}

pub fn fixed_corpus() -> Vec<CorpusEntry> {
    let r = CorpusEntry::from_roots;
    vec![
        r("x-p5", 5, 1, &[(0, 1, 1)]),
        r("x-minus-3-p2", 2, 1, &[(3, 1, 1)]),
        r("x2-minus-1-p2", 2, 1, &[(1, 1, 1), (-1, 1, 1)]),
        r("x2-p3", 3, 1, &[(0, 1, 2)]),
        r("cube-p7", 7, 1, &[(3, 1, 3)]),
        r("x5-p2", 2, 1, &[(0, 1, 5)]),
        r("x-plus-1-fourth-p13", 13, 1, &[(-1, 1, 4)]),
        r("repeated-and-simple-p2", 2, 1, &[(1, 1, 2), (3, 1, 1)]),
        r("zero-and-unit-p13", 13, 1, &[(0, 1, 3), (1, 1, 2)]),
        r("half-p2", 2, 2, &[(1, 2, 1)]),
        r("halves-p3", 3, 1, &[(1, 2, 1), (3, 2, 1)]),
        r("thirds-and-quarters-p7", 7, 1, &[(2, 3, 2), (5, 4, 1)]),
        r("fifth-squared-p5", 5, 1, &[(1, 5, 2), (2, 1, 1)]),
        r(
            "mixed-valuation-p3",
            3,
            1,
            &[(1, 3, 1), (9, 1, 1), (0, 1, 2)],
        ),
        r("only-negative-valuation-p2", 2, 1, &[(1, 2, 1), (3, 4, 1)]),
        r("lc-3-p3", 3, 3, &[(1, 1, 1), (2, 1, 1)]),
        r("lc-25-p5", 5, 25, &[(0, 1, 1), (1, 1, 1)]),
        r("lc-16-p2", 2, 16, &[(1, 1, 1), (3, 1, 1)]),
        r("negative-scalar-p3", 3, -2, &[(1, 1, 1), (-1, 1, 1)]),
        r("close-roots-p2", 2, 1, &[(0, 1, 1), (8, 1, 1), (16, 1, 1)]),
        r(
            "powers-of-two-p2",
            2,
            1,
            &[(0, 1, 1), (1, 1, 1), (2, 1, 1), (4, 1, 1), (8, 1, 1)],
        ),
        r(
            "deep-cluster-p3",
            3,
            1,
            &[(0, 1, 1), (27, 1, 1), (54, 1, 2)],
        ),
        r(
            "chain-p3",
            3,
            1,
            &[(1, 1, 1), (10, 1, 1), (28, 1, 1), (82, 1, 1)],
        ),
        r(
            "cluster-multiplicities-p5",
            5,
            1,
            &[(1, 1, 2), (6, 1, 1), (26, 1, 3)],
        ),
        r(
            "ten-roots-p5",
            5,
            1,
            &(0..10).map(|i| (i, 1, 1)).collect::<Vec<_>>(),
        ),
        r(
            "spread-p7",
            7,
            1,
            &(-3..=3).map(|i| (i, 1, 1)).collect::<Vec<_>>(),
        ),
        r(
            "product-8-p101",
            101,
            1,
            &(1..=8).map(|i| (i, 1, 1)).collect::<Vec<_>>(),
        ),
        worked_example(),
    ]
}

/// `n` random polynomials from `seed`: distinct rational roots `a / b` with
/// `|a| <= 50`, `1 <= b <= 50`, multiplicities at most 4, total degree at most 8,
/// a nonzero scalar in `[-6, 6]` and `p` in `{2, 3, 5, 7, 13}`.
pub fn random_corpus(seed: u64, n: usize) -> Vec<CorpusEntry> {
    const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let p = *PRIMES.choose(&mut rng).unwrap();
            let degree = rng.gen_range(1..=8u32);
            let mut roots: Vec<(BigRational, u32)> = Vec::new();
            let mut used = 0;
            while used < degree {
                let a: i64 = rng.gen_range(-50..=50);
                let b: i64 = rng.gen_range(1..=50);
                let root = BigRational::new(a.into(), b.into());
                if roots.iter().any(|(r, _)| *r == root) {
                    continue;
                }
                let e = rng.gen_range(1..=4u32.min(degree - used));
                used += e;
                roots.push((root, e));
            }
            let scalar = loop {
                let s: i64 = rng.gen_range(-6..=6);
                if s != 0 {
                    break s;
                }
            };
            CorpusEntry {
                name: format!("random-{seed}-{i}"),
                poly: IntPolynomial::from_roots(&BigInt::from(scalar), &roots).unwrap(),
                prime: Prime::new(p).unwrap(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_corpus_is_large_enough() {
        let c = fixed_corpus();
        assert!(c.len() >= 25);
        assert!(c.iter().any(|e| e.prime.get() == 2));
        assert!(c.iter().any(|e| e.name == "worked-example-p11"));
    }

    #[test]
    fn random_corpus_is_seeded() {
        let a = random_corpus(1, 20);
        let b = random_corpus(1, 20);
        assert_eq!(
            a.iter().map(|e| (&e.poly, e.prime)).collect::<Vec<_>>(),
            b.iter().map(|e| (&e.poly, e.prime)).collect::<Vec<_>>()
        );
        assert!(a.iter().all(|e| e.poly.degree() <= 8));
        let c = random_corpus(2, 20);
        assert_ne!(a[0].poly.coeffs(), c[0].poly.coeffs());
    }
}
