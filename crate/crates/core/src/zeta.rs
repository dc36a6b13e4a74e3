//! The local zeta function `Z(s, f)` as a rational function of `t = p^-s`.
//!
//! Two independent constructions produce lists of [`ZetaAtom`]s: one reads the
//! atoms off the weighted tree vertex by vertex, the other runs the stationary
//! phase recursion directly on the roots. Both are normalized to a single
//! reduced fraction and compared by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{residue_mod_p, Prime};
use crate::error::{Error, Result};
use crate::factor::{compute_lf, Root, ValuationSplit};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::tree::WeightedTree;

/// `(coeff_num / p^coeff_den_exponent) * t^t_power / (1 - p^-1 t^geom_weight)`;
/// `geom_weight == 0` means there is no geometric denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaAtom {
    pub coeff_num: BigInt,
    pub coeff_den_exponent: u64,
    pub t_power: u64,
    pub geom_weight: u64,
}

impl ZetaAtom {
    pub fn new(coeff_num: BigInt, coeff_den_exponent: u64, t_power: u64, geom_weight: u64) -> Self {
        ZetaAtom {
            coeff_num,
            coeff_den_exponent,
            t_power,
            geom_weight,
        }
    }

    /// The rational coefficient `coeff_num / p^coeff_den_exponent`.
    pub fn coeff(&self, p: Prime) -> BigRational {
        BigRational::new(self.coeff_num.clone(), p.pow(self.coeff_den_exponent))
    }

    /// Rendering with `p` substituted and `(1-p^-1)` factored out, e.g.
    /// `(1-11^-1) 11^-3 t^8 / (1 - 11^-1 t^2)`.
    pub fn render(&self, p: Prime) -> String {
        let mut out = String::new();
        let pm1 = BigInt::from(p.get() - 1);
        if self.coeff_num == pm1 && self.coeff_den_exponent >= 1 {
            write!(out, "(1-{p}^-1)").unwrap();
            if self.coeff_den_exponent > 1 {
                write!(out, " {p}^-{}", self.coeff_den_exponent - 1).unwrap();
            }
        } else {
            write!(out, "{}", self.coeff_num).unwrap();
            if self.coeff_den_exponent > 0 {
                write!(out, " {p}^-{}", self.coeff_den_exponent).unwrap();
            }
        }
        match self.t_power {
            0 => {}
            1 => out.push_str(" t"),
            a => write!(out, " t^{a}").unwrap(),
        }
        match self.geom_weight {
            0 => {}
            1 => write!(out, " / (1 - {p}^-1 t)").unwrap(),
            w => write!(out, " / (1 - {p}^-1 t^{w})").unwrap(),
        }
        out
    }
}

/// `Z = t^prefactor_exponent * sum(atoms)`, together with its reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    pub prime: Prime,
    pub prefactor_exponent: u64,
    pub atoms: Vec<ZetaAtom>,
    pub normalized: RationalFunction,
}

impl ZetaFunction {
    pub fn from_atoms(prime: Prime, prefactor_exponent: u64, atoms: Vec<ZetaAtom>) -> Self {
        let normalized = normalize(prime, prefactor_exponent, &atoms);
        ZetaFunction {
            prime,
            prefactor_exponent,
            atoms,
            normalized,
        }
    }

    /// Atoms joined by `+`, wrapped in the `t^k` prefactor when `k > 0`.
    pub fn render_atoms(&self) -> String {
        let body = self
            .atoms
            .iter()
            .map(|a| a.render(self.prime))
            .collect::<Vec<_>>()
            .join(" + ");
        match self.prefactor_exponent {
            0 => body,
            1 => format!("t * ({body})"),
            k => format!("t^{k} * ({body})"),
        }
    }

    pub fn render_fraction(&self) -> String {
        self.normalized.render()
    }

    /// Structured document: a JSON object with fields `kind`, `prime`,
    /// `prefactor`, `atoms`, `numerator`, `denominator` and `scale`.
    pub fn to_machine(&self) -> String {
        let doc = ZetaDocument {
            kind: ZETA_KIND.to_string(),
            prime: self.prime.get(),
            prefactor: self.prefactor_exponent,
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomDocument {
                    coeff_num: a.coeff_num.to_string(),
                    coeff_den_exponent: a.coeff_den_exponent,
                    t_power: a.t_power,
                    geom_weight: a.geom_weight,
                })
                .collect(),
            numerator: coeff_strings(&self.normalized.numerator),
            denominator: coeff_strings(&self.normalized.denominator),
            scale: self.normalized.scale,
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    /// Parses [`ZetaFunction::to_machine`] output, checking that the stored
    /// fraction is the normalization of the stored atoms.
    pub fn from_machine(text: &str) -> Result<Self> {
        let doc: ZetaDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.kind != ZETA_KIND {
            return Err(Error::Format(format!("unexpected kind {:?}", doc.kind)));
        }
        let prime = Prime::new(doc.prime)?;
        let atoms = doc
            .atoms
            .iter()
            .map(|a| {
                Ok(ZetaAtom::new(
                    parse_int(&a.coeff_num)?,
                    a.coeff_den_exponent,
                    a.t_power,
                    a.geom_weight,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let z = ZetaFunction::from_atoms(prime, doc.prefactor, atoms);
        let stored = RationalFunction {
            prime,
            numerator: parse_poly(&doc.numerator)?,
            denominator: parse_poly(&doc.denominator)?,
            scale: doc.scale,
        };
        if stored != z.normalized {
            return Err(Error::Format(
                "fraction does not match the atoms".to_string(),
            ));
        }
        Ok(z)
    }
}

const ZETA_KIND: &str = "igusa-zeta";
pub(crate) const POINCARE_KIND: &str = "igusa-poincare";

#[derive(Debug, Serialize, Deserialize)]
struct AtomDocument {
    coeff_num: String,
    coeff_den_exponent: u64,
    t_power: u64,
    geom_weight: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ZetaDocument {
    kind: String,
    prime: u64,
    prefactor: u64,
    atoms: Vec<AtomDocument>,
    numerator: Vec<String>,
    denominator: Vec<String>,
    scale: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct FractionDocument {
    pub kind: String,
    pub prime: u64,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub scale: u64,
}

pub(crate) fn coeff_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Format(format!("bad integer {s:?}")))
}

pub(crate) fn parse_poly(coeffs: &[String]) -> Result<Poly> {
    Ok(Poly::new(
        coeffs.iter().map(|c| parse_int(c)).collect::<Result<_>>()?,
    ))
}

/// One atom per tree vertex (zero atoms dropped).
pub fn atoms_from_tree(tree: &WeightedTree) -> Vec<ZetaAtom> {
    let p = tree.prime.get();
    let minimal = tree.minimal_weight_one();
    let mut atoms = Vec::new();
    for (id, v) in tree.vertices() {
        let l = v.level;
        if tree.is_terminal(id) && v.weight >= 2 {
            atoms.push(ZetaAtom::new(
                BigInt::from(p - 1),
                l + 1,
                v.stalk_weight,
                v.weight,
            ));
        } else if v.weight != 1 {
            if v.valence < p {
                atoms.push(ZetaAtom::new(
                    BigInt::from(p - v.valence),
                    l + 1,
                    v.stalk_weight,
                    0,
                ));
            }
        } else if minimal.contains(&id) {
            atoms.push(ZetaAtom::new(BigInt::from(p - 1), l + 1, v.stalk_weight, 1));
        }
    }
    atoms
}

/// `Z(s, f) = t^k * G(tree)`, or `t^k` when no root is p-integral.
pub fn zeta_from_tree(split: &ValuationSplit, tree: Option<&WeightedTree>) -> ZetaFunction {
    let atoms = match tree {
        Some(tree) => atoms_from_tree(tree),
        None => {
            debug_assert!(split.plus_roots.is_empty());
            vec![ZetaAtom::new(BigInt::one(), 0, 0, 0)]
        }
    };
    ZetaFunction::from_atoms(split.prime, split.prefactor_exponent, atoms)
}

/// Stationary phase recursion on the root representation of `f_+`, times
/// `t^scalar_vp`.
pub fn spf_evaluate(scalar_vp: u64, roots: &[Root], p: Prime) -> Result<ZetaFunction> {
    if roots.is_empty() {
        return Ok(ZetaFunction::from_atoms(
            p,
            scalar_vp,
            vec![ZetaAtom::new(BigInt::one(), 0, 0, 0)],
        ));
    }
    let budget = compute_lf(roots, p)? + 1;
    let mut atoms = Vec::new();
    spf_recurse(roots.to_vec(), p, 0, budget, 0, 0, &mut atoms)?;
    Ok(ZetaFunction::from_atoms(p, scalar_vp, atoms))
}

/// Appends the atoms of `p^-den_shift t^t_shift Z(s, prod (x - alpha_i)^e_i)`.
fn spf_recurse(
    roots: Vec<Root>,
    p: Prime,
    depth: u64,
    budget: u64,
    den_shift: u64,
    t_shift: u64,
    out: &mut Vec<ZetaAtom>,
) -> Result<()> {
    if depth > budget {
        return Err(Error::RecursionBudgetExceeded(budget));
    }
    let pm1 = BigInt::from(p.get() - 1);
    if let [single] = roots.as_slice() {
        // integral of |x - alpha|^(e s) over Z_p
        out.push(ZetaAtom::new(
            pm1,
            den_shift + 1,
            t_shift,
            single.multiplicity as u64,
        ));
        return Ok(());
    }

    let mut classes: BTreeMap<u64, Vec<Root>> = BTreeMap::new();
    for r in roots {
        classes
            .entry(residue_mod_p(&r.value, p)?)
            .or_default()
            .push(r);
    }
    let nu = p.get() - classes.len() as u64;
    if nu > 0 {
        out.push(ZetaAtom::new(BigInt::from(nu), den_shift + 1, t_shift, 0));
    }
    let delta = classes
        .values()
        .filter(|c| c.len() == 1 && c[0].multiplicity == 1)
        .count() as u64;
    if delta > 0 {
        out.push(ZetaAtom::new(
            BigInt::from(delta) * &pm1,
            den_shift + 2,
            t_shift + 1,
            1,
        ));
    }
    let pq = BigRational::from(p.to_bigint());
    for (xi, class) in classes {
        let e_xi: u64 = class.iter().map(|r| r.multiplicity as u64).sum();
        if e_xi < 2 {
            continue;
        }
        let xi = BigRational::from(BigInt::from(xi));
        let dilated = class
            .into_iter()
            .map(|r| Root::new((&r.value - &xi) / &pq, r.multiplicity))
            .collect();
        spf_recurse(
            dilated,
            p,
            depth + 1,
            budget,
            den_shift + 1,
            t_shift + e_xi,
            out,
        )?;
    }
    Ok(())
}

/// Combines `t^k * sum(atoms)` over the common denominator
/// `p^E prod_w (p - t^w)` and reduces.
pub fn normalize(prime: Prime, prefactor_exponent: u64, atoms: &[ZetaAtom]) -> RationalFunction {
    let pb = prime.to_bigint();
    let mut weights: Vec<u64> = atoms
        .iter()
        .map(|a| a.geom_weight)
        .filter(|&w| w > 0)
        .collect();
    weights.sort_unstable();
    weights.dedup();
    // 1 / (1 - p^-1 t^w) = p / (p - t^w)
    let shifted_den = |a: &ZetaAtom| a.coeff_den_exponent as i64 - (a.geom_weight > 0) as i64;
    let top = atoms.iter().map(shifted_den).max().unwrap_or(0).max(0);

    let factor = |w: u64| {
        Poly::new({
            let mut c = vec![BigInt::zero(); w as usize + 1];
            c[0] = pb.clone();
            c[w as usize] = -BigInt::one();
            c
        })
    };
    let denominator = weights
        .iter()
        .fold(Poly::one(), |acc, &w| acc.mul(&factor(w)));

    let mut numerator = Poly::zero();
    for a in atoms {
        let lift = prime.pow((top - shifted_den(a)) as u64);
        let mut term = Poly::monomial(&a.coeff_num * lift, a.t_power as usize);
        for &w in weights.iter().filter(|&&w| w != a.geom_weight) {
            term = term.mul(&factor(w));
        }
        numerator = numerator.add(&term);
    }
    let numerator = numerator.shift(prefactor_exponent as usize);
    RationalFunction::reduced(prime, numerator, denominator, top as u64)
}

/// Semantic equality of the two rational functions.
pub fn zeta_equal(z1: &ZetaFunction, z2: &ZetaFunction) -> bool {
    z1.normalized.same_value(&z2.normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{factor_over_q, split_by_valuation};
    use crate::poly::IntPolynomial;
    use crate::tree::build_tree;
    use crate::tree::tests::worked_example_roots;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pipeline(coeffs: &[i64], p: u64) -> (ZetaFunction, ZetaFunction) {
        let p = prime(p);
        let f = IntPolynomial::from_i64(coeffs).unwrap();
        let split = split_by_valuation(&factor_over_q(&f).unwrap(), p);
        let tree = if split.plus_roots.is_empty() {
            None
        } else {
            let lf = compute_lf(&split.plus_roots, p).unwrap();
            Some(build_tree(&split.plus_roots, p, lf).unwrap())
        };
        let z_tree = zeta_from_tree(&split, tree.as_ref());
        let z_spf = spf_evaluate(split.prefactor_exponent, &split.plus_roots, p).unwrap();
        (z_tree, z_spf)
    }

    /// Geometric expansion of an atom list, written independently of `normalize`.
    fn atom_series(
        p: Prime,
        k: u64,
        atoms: &[(BigRational, u64, u64)],
        n: usize,
    ) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n];
        let inv_p = q(1, p.get() as i64);
        for (c, a, w) in atoms {
            let mut j = (k + a) as usize;
            let mut coeff = c.clone();
            while j < n {
                out[j] += &coeff;
                if *w == 0 {
                    break;
                }
                coeff *= &inv_p;
                j += *w as usize;
            }
        }
        out
    }

    #[test]
    fn root_vertex_atom() {
        let roots = [
            Root::integer(0, 1),
            Root::integer(1, 1),
            Root::integer(2, 2),
        ];
        let tree = build_tree(&roots, prime(7), 1).unwrap();
        let atoms = atoms_from_tree(&tree);
        assert_eq!(atoms[0], ZetaAtom::new(4.into(), 1, 0, 0));
        assert_eq!(atoms[0].coeff(prime(7)), q(4, 7));
    }

    #[test]
    fn linear_stalk_atoms() {
        for p in [2u64, 3, 5, 13] {
            let tree = build_tree(&[Root::integer(0, 1)], prime(p), 1).unwrap();
            let atoms = atoms_from_tree(&tree);
            let pm1 = BigInt::from(p - 1);
            assert_eq!(
                atoms,
                vec![
                    ZetaAtom::new(pm1.clone(), 1, 0, 0),
                    ZetaAtom::new(pm1.clone(), 2, 1, 1),
                ]
            );
            let z = ZetaFunction::from_atoms(prime(p), 0, atoms);
            assert_eq!(z.normalized.numerator, Poly::constant(pm1));
            assert_eq!(z.normalized.denominator, Poly::from_i64(&[p as i64, -1]));
            assert_eq!(z.normalized.scale, 0);
        }
    }

    #[test]
    fn worked_example_terminal_atom() {
        let p = prime(11);
        let roots = worked_example_roots();
        let tree = build_tree(&roots, p, 3).unwrap();
        let atoms = atoms_from_tree(&tree);
        // l_f = 3, so the c-branch W=2 vertex at level 3 is internal and its
        // level-4 child carries the geometric factor.
        assert!(atoms.contains(&ZetaAtom::new(10.into(), 4, 8, 0)));
        assert!(atoms.contains(&ZetaAtom::new(10.into(), 5, 10, 2)));
        let merged = ZetaAtom::new(10.into(), 4, 8, 2);
        assert_eq!(merged.render(p), "(1-11^-1) 11^-3 t^8 / (1 - 11^-1 t^2)");
        let pair = ZetaFunction::from_atoms(
            p,
            0,
            vec![
                ZetaAtom::new(10.into(), 4, 8, 0),
                ZetaAtom::new(10.into(), 5, 10, 2),
            ],
        );
        assert!(zeta_equal(
            &pair,
            &ZetaFunction::from_atoms(p, 0, vec![merged])
        ));
    }

    #[test]
    fn small_cases_against_closed_forms() {
        // f = 2x at p = 2: Z = t (1/2) / (1 - t/2) = t / (2 - t)
        let (zt, zs) = pipeline(&[0, 2], 2);
        assert!(zeta_equal(&zt, &zs));
        assert_eq!(zt.normalized.numerator, Poly::from_i64(&[0, 1]));
        assert_eq!(zt.normalized.denominator, Poly::from_i64(&[2, -1]));

        // f = 2x - 1 at p = 2: Z = 1
        let (zt, zs) = pipeline(&[-1, 2], 2);
        assert_eq!(zt.normalized, RationalFunction::one(prime(2)));
        assert!(zeta_equal(&zt, &zs));
    }

    #[test]
    fn spf_single_root() {
        for e in 1..5 {
            let z = spf_evaluate(0, &[Root::integer(0, e)], prime(3)).unwrap();
            assert_eq!(z.atoms, vec![ZetaAtom::new(2.into(), 1, 0, e as u64)]);
        }
        // x^2 at p = 3: c_0 = 2/3, c_1 = 0, c_2 = 2/9 means N_2 = 9 (1 - 2/3 - 0) = 3
        let z = spf_evaluate(0, &[Root::integer(0, 2)], prime(3)).unwrap();
        let s = z.normalized.series(3);
        assert_eq!(s, vec![q(2, 3), q(0, 1), q(2, 9)]);
    }

    #[test]
    fn spf_two_units() {
        let z = spf_evaluate(0, &[Root::integer(0, 1), Root::integer(1, 1)], prime(5)).unwrap();
        assert_eq!(
            z.atoms,
            vec![
                ZetaAtom::new(3.into(), 1, 0, 0),
                ZetaAtom::new(8.into(), 2, 1, 1)
            ]
        );
        let expected = atom_series(prime(5), 0, &[(q(3, 5), 0, 0), (q(8, 25), 1, 1)], 6);
        assert_eq!(z.normalized.series(6), expected);
    }

    #[test]
    fn normalize_examples() {
        let p = prime(7);
        let z = ZetaFunction::from_atoms(p, 0, vec![ZetaAtom::new(3.into(), 2, 4, 0)]);
        assert_eq!(z.normalized.numerator, Poly::monomial(3.into(), 4));
        assert_eq!(z.normalized.denominator, Poly::one());
        assert_eq!(z.normalized.scale, 2);

        let z = ZetaFunction::from_atoms(p, 0, vec![ZetaAtom::new(1.into(), 0, 0, 0)]);
        assert_eq!(z.normalized, RationalFunction::one(p));
    }

    #[test]
    fn equality_is_semantic() {
        let (zx, _) = pipeline(&[0, 1], 7);
        let (zx1, _) = pipeline(&[-1, 1], 7);
        assert!(zeta_equal(&zx, &zx));
        assert!(zeta_equal(&zx, &zx1));
        let (zx2, _) = pipeline(&[0, 0, 1], 7);
        assert!(!zeta_equal(&zx, &zx2));
        // A finer decomposition of the same function.
        let split = ZetaFunction::from_atoms(
            prime(7),
            0,
            vec![
                ZetaAtom::new(6.into(), 1, 0, 0),
                ZetaAtom::new(6.into(), 2, 1, 0),
                ZetaAtom::new(6.into(), 3, 2, 1),
            ],
        );
        assert!(zeta_equal(&zx, &split));
        assert_ne!(zx.atoms, split.atoms);
    }

    #[test]
    fn worked_example_paths_agree() {
        let p = prime(11);
        let roots = worked_example_roots();
        let tree = build_tree(&roots, p, compute_lf(&roots, p).unwrap()).unwrap();
        let zt = ZetaFunction::from_atoms(p, 0, atoms_from_tree(&tree));
        let zs = spf_evaluate(0, &roots, p).unwrap();
        assert!(zeta_equal(&zt, &zs));
    }

    #[test]
    fn recursion_identity_one_step() {
        // G(f) = nu/p + delta (1-1/p) p^-1 t / (1 - t/p) + sum p^-1 t^e G(f_xi)
        let p = prime(3);
        let roots = vec![
            Root::integer(0, 2),
            Root::integer(3, 1),
            Root::integer(1, 1),
            Root::new(q(1, 2), 1),
        ];
        let lf = compute_lf(&roots, p).unwrap();
        let whole =
            ZetaFunction::from_atoms(p, 0, atoms_from_tree(&build_tree(&roots, p, lf).unwrap()));
        // residues: 0 -> {0 (e2), 3}, 1 -> {1}, 2 -> {1/2}; nu = 0, delta = 2
        let dilated = [Root::integer(0, 2), Root::integer(1, 1)];
        let sub_tree = build_tree(&dilated, p, lf - 1).unwrap();
        let mut atoms = vec![ZetaAtom::new(4.into(), 2, 1, 1)];
        for a in atoms_from_tree(&sub_tree) {
            atoms.push(ZetaAtom::new(
                a.coeff_num,
                a.coeff_den_exponent + 1,
                a.t_power + 3,
                a.geom_weight,
            ));
        }
        let unrolled = ZetaFunction::from_atoms(p, 0, atoms);
        assert!(zeta_equal(&whole, &unrolled));
    }

    #[test]
    fn machine_round_trip() {
        let p = prime(11);
        let z = spf_evaluate(2, &worked_example_roots(), p).unwrap();
        let text = z.to_machine();
        let parsed = ZetaFunction::from_machine(&text).unwrap();
        assert_eq!(parsed, z);
        assert_eq!(parsed.to_machine(), text);
        let tampered = text.replacen("\"scale\": ", "\"scale\": 1", 1);
        assert!(ZetaFunction::from_machine(&tampered).is_err());
    }

    #[test]
    fn render_forms() {
        let (z, _) = pipeline(&[0, 1], 5);
        assert_eq!(z.render_fraction(), "(4) / (5 - t)");
        assert_eq!(
            z.render_atoms(),
            "(1-5^-1) + (1-5^-1) 5^-1 t / (1 - 5^-1 t)"
        );
        let (z, _) = pipeline(&[0, 2], 2);
        assert_eq!(
            z.render_atoms(),
            "t * ((1-2^-1) + (1-2^-1) 2^-1 t / (1 - 2^-1 t))"
        );
    }
}
