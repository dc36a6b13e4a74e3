//! Factor, split, build the tree and read off `Z(s, f)`.

use crate::arith::Prime;
use crate::error::Result;
use crate::factor::{compute_lf, factor_over_q, split_by_valuation, Factorization, ValuationSplit};
use crate::poly::IntPolynomial;
use crate::tree::{build_tree, WeightedTree};
use crate::zeta::{spf_evaluate, zeta_from_tree, ZetaFunction};

/// Everything computed for one `(f, p)`.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub poly: IntPolynomial,
    pub prime: Prime,
    pub factorization: Factorization,
    pub split: ValuationSplit,
    /// `l_f`; absent when no root is p-integral.
    pub lf: Option<u64>,
    pub tree: Option<WeightedTree>,
    /// `Z(s, f)` read off the tree.
    pub zeta: ZetaFunction,
}

impl Analysis {
    /// `Z(s, f)` by the stationary phase recursion, independent of the tree.
    pub fn zeta_spf(&self) -> Result<ZetaFunction> {
        spf_evaluate(
            self.split.prefactor_exponent,
            &self.split.plus_roots,
            self.prime,
        )
    }
}

pub fn analyze(f: &IntPolynomial, p: Prime) -> Result<Analysis> {
    let factorization = factor_over_q(f)?;
    let split = split_by_valuation(&factorization, p);
    let (lf, tree) = if split.plus_roots.is_empty() {
        (None, None)
    } else {
        let lf = compute_lf(&split.plus_roots, p)?;
        (Some(lf), Some(build_tree(&split.plus_roots, p, lf)?))
    };
    let zeta = zeta_from_tree(&split, tree.as_ref());
    Ok(Analysis {
        poly: f.clone(),
        prime: p,
        factorization,
        split,
        lf,
        tree,
        zeta,
    })
}
