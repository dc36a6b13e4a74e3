//! Cross-checks of every computed object against the others and the oracle.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::corpus::CorpusEntry;
use crate::error::Error;
use crate::oracle::{brute_force_counts, OracleBudget};
use crate::pipeline::{analyze, Analysis};
use crate::poly::Poly;
use crate::series::{
    coefficients_via_expansion, coefficients_via_fraction, coefficients_via_tree,
    counts_from_coefficients, poincare_from_zeta, CoefficientPrefix,
};
use crate::zeta::{zeta_equal, ZetaFunction};

/// Deliberate corruption used to confirm that the checks catch mismatches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates the coefficient of the first tree atom.
    NegateFirstTreeAtom,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Coefficients `c_0..c_J` compared between paths.
    pub order: usize,
    pub budget: OracleBudget,
    /// Upper bound on the oracle exponent, on top of the budget.
    pub m_max: Option<u32>,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 20,
            budget: OracleBudget::new(1_000_000),
            m_max: None,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub name: String,
    pub poly: String,
    pub prime: u64,
    pub checks: Vec<CheckOutcome>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: Vec<CaseReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&CaseReport, &CheckOutcome)> {
        self.cases
            .iter()
            .flat_map(|c| c.checks.iter().filter(|k| !k.passed).map(move |k| (c, k)))
    }

    /// One line per case, with failing checks spelled out below it.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let status = if case.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status:4} {} p={} f=[{}]",
                case.name, case.prime, case.poly
            );
            for check in case.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(out, "     {}: {}", check.name, check.detail);
            }
        }
        let failed = self.cases.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(out, "{} cases, {} failed", self.cases.len(), failed);
        out
    }
}

fn apply_fault(z: &ZetaFunction, fault: Option<Fault>) -> ZetaFunction {
    match fault {
        None => z.clone(),
        Some(Fault::NegateFirstTreeAtom) => {
            let mut atoms = z.atoms.clone();
            if let Some(a) = atoms.first_mut() {
                a.coeff_num = -a.coeff_num.clone();
            }
            ZetaFunction::from_atoms(z.prime, z.prefactor_exponent, atoms)
        }
    }
}

fn first_difference(a: &CoefficientPrefix, b: &CoefficientPrefix) -> Option<usize> {
    a.values.iter().zip(&b.values).position(|(x, y)| x != y)
}

fn max_multiplicity(a: &Analysis) -> u32 {
    a.split
        .plus_roots
        .iter()
        .map(|r| r.multiplicity)
        .max()
        .unwrap_or(0)
}

fn check_analysis(a: &Analysis, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let p = a.prime;
    let pb = p.to_bigint();
    let mut checks = Vec::new();
    let zeta = apply_fault(&a.zeta, cfg.fault);

    checks.push(match a.zeta_spf() {
        Ok(spf) => {
            let ok = zeta_equal(&zeta, &spf);
            CheckOutcome::new(
                "tree-vs-spf",
                ok,
                if ok {
                    String::new()
                } else {
                    format!(
                        "tree {} vs spf {}",
                        zeta.render_fraction(),
                        spf.render_fraction()
                    )
                },
            )
        }
        Err(e) => CheckOutcome::new("tree-vs-spf", false, e.to_string()),
    });

    let m_budget = cfg.budget.max_exponent(p);
    let m_top = cfg.m_max.map_or(m_budget, |m| m.min(m_budget));
    let order = cfg.order.max(m_top as usize + 1);
    let via_tree = coefficients_via_tree(a.tree.as_ref(), &a.split, order);
    let via_expansion = coefficients_via_expansion(&zeta, order);
    let via_fraction = coefficients_via_fraction(&zeta, order);
    let mismatch = first_difference(&via_tree, &via_expansion)
        .map(|j| format!("tree vs expansion differ at c_{j}"))
        .or_else(|| {
            first_difference(&via_tree, &via_fraction)
                .map(|j| format!("tree vs fraction differ at c_{j}"))
        });
    checks.push(CheckOutcome::new(
        "coefficients",
        mismatch.is_none(),
        mismatch.unwrap_or_default(),
    ));

    let counts = counts_from_coefficients(&via_tree, m_top as usize);
    checks.push(
        match (&counts, brute_force_counts(&a.poly, p, m_top, cfg.budget)) {
            (Ok(series), Ok(oracle)) => {
                let bad = series
                    .values
                    .iter()
                    .zip(&oracle)
                    .position(|(s, &o)| *s != BigUint::from(o));
                CheckOutcome::new(
                    "oracle-counts",
                    bad.is_none(),
                    bad.map(|m| {
                        format!("N_{m}: series {} vs oracle {}", series.values[m], oracle[m])
                    })
                    .unwrap_or_default(),
                )
            }
            (Err(e), _) => CheckOutcome::new("oracle-counts", false, e.to_string()),
            (_, Err(e)) => CheckOutcome::new("oracle-counts", false, e.to_string()),
        },
    );

    if let Ok(counts) = &counts {
        let n = &counts.values;
        let bad = (0..n.len()).find(|&m| {
            let pm = BigUint::from(p.get()).pow(m as u32);
            (m == 0 && !n[0].is_one())
                || n[m] > pm
                || (m + 1 < n.len() && n[m + 1] > &n[m] * p.get())
        });
        checks.push(CheckOutcome::new(
            "count-bounds",
            bad.is_none(),
            bad.map(|m| format!("bound violated at N_{m}"))
                .unwrap_or_default(),
        ));
        let bad = (0..n.len().saturating_sub(1)).find(|&j| {
            let term = |i: usize| BigRational::new(BigInt::from(n[i].clone()), p.pow(i as u64));
            via_tree.values[j] != term(j) - term(j + 1)
        });
        checks.push(CheckOutcome::new(
            "coefficient-count-identity",
            bad.is_none(),
            bad.map(|j| format!("c_{j} disagrees with N_{j}, N_{}", j + 1))
                .unwrap_or_default(),
        ));
    }

    // H (1 - t) = 1 - tZ with Z = N / D and H = A / B: A (1 - t) D = (D - tN) B.
    let z = &zeta.normalized;
    let h = poincare_from_zeta(&zeta);
    let one_minus_t = Poly::from_i64(&[1, -1]);
    let lhs = h.numerator.mul(&one_minus_t).mul(&z.full_denominator());
    let rhs = z
        .full_denominator()
        .sub(&z.numerator.shift(1))
        .mul(&h.full_denominator());
    checks.push(CheckOutcome::new(
        "poincare-relation",
        lhs == rhs,
        if lhs == rhs {
            ""
        } else {
            "H (1 - t) != 1 - t Z"
        },
    ));

    let total = z.eval(&BigRational::one());
    let ok = total.as_ref().is_some_and(One::is_one);
    checks.push(CheckOutcome::new(
        "total-volume",
        ok,
        if ok {
            String::new()
        } else {
            format!("Z(t = 1) = {total:?}")
        },
    ));

    let mut bound = Poly::one();
    for w in 1..=max_multiplicity(a) as usize {
        bound = bound.mul(&Poly::monomial(-BigInt::one(), w).add(&Poly::constant(pb.clone())));
    }
    let ok = bound.div_exact(&z.denominator).is_some();
    checks.push(CheckOutcome::new(
        "denominator-shape",
        ok,
        if ok {
            String::new()
        } else {
            format!(
                "denominator {} is not a factor of prod (p - t^w)",
                z.denominator.display_ascending("t")
            )
        },
    ));
    checks
}

pub fn verify_entry(entry: &CorpusEntry, cfg: &VerifyConfig) -> CaseReport {
    let checks = match analyze(&entry.poly, entry.prime) {
        Ok(a) => check_analysis(&a, cfg),
        Err(e) => vec![CheckOutcome::new("analyze", false, e.to_string())],
    };
    CaseReport {
        name: entry.name.clone(),
        poly: entry.poly.to_coefficient_list(),
        prime: entry.prime.get(),
        checks,
    }
}

/// Runs every entry; the report order follows the input order.
pub fn verify_corpus(entries: &[CorpusEntry], cfg: &VerifyConfig) -> VerifyReport {
    VerifyReport {
        cases: entries.par_iter().map(|e| verify_entry(e, cfg)).collect(),
    }
}

/// Rejects an explicit exponent cap that the budget cannot cover.
pub fn check_budget(entries: &[CorpusEntry], cfg: &VerifyConfig) -> Result<(), Error> {
    let Some(m) = cfg.m_max else { return Ok(()) };
    for e in entries {
        let p = e.prime.get();
        if p.checked_pow(m).is_none_or(|n| n > cfg.budget.max_modulus) {
            return Err(Error::BudgetExceeded {
                prime: p,
                exponent: m,
                budget: cfg.budget.max_modulus,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fixed_corpus, worked_example};

    #[test]
    fn fixed_corpus_passes() {
        let cfg = VerifyConfig {
            budget: OracleBudget::new(20_000),
            ..VerifyConfig::default()
        };
        let report = verify_corpus(&fixed_corpus(), &cfg);
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn injected_fault_is_detected() {
        let cfg = VerifyConfig {
            budget: OracleBudget::new(20_000),
            fault: Some(Fault::NegateFirstTreeAtom),
            ..VerifyConfig::default()
        };
        let report = verify_entry(&worked_example(), &cfg);
        assert!(!report.passed());
        assert!(!report.check("tree-vs-spf").unwrap().passed);
        assert!(!report.check("coefficients").unwrap().passed);
    }

    #[test]
    fn budget_cap_is_checked() {
        let cfg = VerifyConfig {
            budget: OracleBudget::new(1000),
            m_max: Some(4),
            ..VerifyConfig::default()
        };
        let entries = fixed_corpus();
        assert!(matches!(
            check_budget(&entries, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
        let cfg = VerifyConfig {
            m_max: Some(1),
            ..cfg
        };
        assert!(check_budget(&entries[..3], &cfg).is_ok());
    }
}
