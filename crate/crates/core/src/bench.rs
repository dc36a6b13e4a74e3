//! Wall-clock timings of each pipeline stage on `prod_{i=1..d} (x - i)`.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::Prime;
use crate::error::Result;
use crate::factor::{compute_lf, factor_over_q, split_by_valuation};
use crate::poly::IntPolynomial;
use crate::series::{coefficients_via_tree, counts_from_coefficients};
use crate::tree::build_tree;
use crate::zeta::{spf_evaluate, zeta_from_tree};

pub const DEFAULT_DEGREES: [usize; 4] = [8, 16, 32, 64];
pub const BENCH_PRIME: u64 = 101;
const ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageTimings {
    pub degree: usize,
    pub factor: Duration,
    pub tree: Duration,
    pub zeta: Duration,
    pub spf: Duration,
    pub counts: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.factor + self.tree + self.zeta + self.spf + self.counts
    }
}

pub fn product_polynomial(degree: usize) -> IntPolynomial {
    let roots: Vec<(BigRational, u32)> = (1..=degree as i64)
        .map(|i| (BigRational::from_integer(i.into()), 1))
        .collect();
    IntPolynomial::from_roots(&BigInt::from(1), &roots).expect("degree >= 1")
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed()))
}

/// Runs the whole pipeline, oracle excluded, on the degree-`d` product.
pub fn bench_degree(degree: usize, p: Prime) -> Result<StageTimings> {
    let f = product_polynomial(degree);
    let (split, factor) = timed(|| Ok(split_by_valuation(&factor_over_q(&f)?, p)))?;
    let (tree, tree_time) = timed(|| {
        let lf = compute_lf(&split.plus_roots, p)?;
        build_tree(&split.plus_roots, p, lf)
    })?;
    let (z, zeta) = timed(|| Ok(zeta_from_tree(&split, Some(&tree))))?;
    let (_, spf) = timed(|| spf_evaluate(split.prefactor_exponent, &split.plus_roots, p))?;
    let (_, counts) = timed(|| {
        let c = coefficients_via_tree(Some(&tree), &split, ORDER);
        counts_from_coefficients(&c, ORDER)
    })?;
    debug_assert!(!z.atoms.is_empty());
    Ok(StageTimings {
        degree,
        factor,
        tree: tree_time,
        zeta,
        spf,
        counts,
    })
}

pub fn bench_degrees(degrees: &[usize], p: Prime) -> Result<Vec<StageTimings>> {
    degrees.iter().map(|&d| bench_degree(d, p)).collect()
}

/// Ratio of total time between consecutive rows.
pub fn growth_ratios(rows: &[StageTimings]) -> Vec<f64> {
    rows.windows(2)
        .map(|w| w[1].total().as_secs_f64() / w[0].total().as_secs_f64().max(1e-9))
        .collect()
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn render_table(rows: &[StageTimings]) -> String {
    let mut out = String::from(
        "degree   factor_ms     tree_ms     zeta_ms      spf_ms   counts_ms    total_ms   ratio\n",
    );
    let ratios = growth_ratios(rows);
    for (i, r) in rows.iter().enumerate() {
        let ratio = if i == 0 {
            "-".to_string()
        } else {
            format!("{:.2}", ratios[i - 1])
        };
        let _ = writeln!(
            out,
            "{:6} {:11.3} {:11.3} {:11.3} {:11.3} {:11.3} {:11.3} {:>7}",
            r.degree,
            ms(r.factor),
            ms(r.tree),
            ms(r.zeta),
            ms(r.spf),
            ms(r.counts),
            ms(r.total()),
            ratio
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degree_completes() {
        let p = Prime::new(BENCH_PRIME).unwrap();
        let rows = bench_degrees(&[4, 8], p).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(growth_ratios(&rows).len(), 1);
        let table = render_table(&rows);
        assert_eq!(table.lines().count(), 3);
    }

    #[test]
    fn product_polynomial_shape() {
        let f = product_polynomial(3);
        assert_eq!(f.to_coefficient_list(), "-6,11,-6,1");
    }
}
