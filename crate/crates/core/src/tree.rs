//! The weighted tree of residue classes traced out by the p-integral roots.
//!
//! Level `j` holds one vertex per class of roots modulo `p^j`, for
//! `0 <= j <= l_f + 1`. Edges point from a vertex to its parent one level
//! closer to the root, so "ancestor" always means "closer to level 0".

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::{padic_expand, Prime};
use crate::error::{Error, Result};
use crate::factor::Root;

/// Position of a vertex: `levels[level][index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub level: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex {
    pub level: u64,
    /// Common class of the member roots modulo `p^level`.
    pub residue: BigUint,
    /// Index of the parent in the previous level.
    pub parent: Option<usize>,
    /// `W(u)`: total multiplicity of the roots through `u` (0 at level 0).
    pub weight: u64,
    /// `Val(u)`: number of children.
    pub valence: u64,
    /// `W*(B_u)`: sum of the weights from `u` down to level 0.
    pub stalk_weight: u64,
    /// Indices into the root list of the roots through `u`.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    pub prime: Prime,
    pub lf: u64,
    pub levels: Vec<Vec<TreeVertex>>,
}

/// Builds the tree from the expansions of the roots modulo `p^(lf+1)`.
pub fn build_tree(plus_roots: &[Root], p: Prime, lf: u64) -> Result<WeightedTree> {
    if plus_roots.is_empty() {
        return Err(Error::EmptyRootList);
    }
    for (i, a) in plus_roots.iter().enumerate() {
        if plus_roots[i + 1..].iter().any(|b| b.value == a.value) {
            return Err(Error::DuplicateRoot(a.value.to_string()));
        }
    }
    let depth = lf as usize + 1;
    let expansions = plus_roots
        .iter()
        .map(|r| padic_expand(&r.value, p, depth - 1))
        .collect::<Result<Vec<_>>>()?;

    let total: u64 = plus_roots.iter().map(|r| r.multiplicity as u64).sum();
    let mut levels = vec![vec![TreeVertex {
        level: 0,
        residue: BigUint::zero(),
        parent: None,
        weight: 0,
        valence: 0,
        stalk_weight: 0,
        members: (0..plus_roots.len()).collect(),
    }]];

    for j in 1..=depth {
        let mut classes: BTreeMap<BigUint, Vec<usize>> = BTreeMap::new();
        for (i, e) in expansions.iter().enumerate() {
            classes.entry(e.residue(j)).or_default().push(i);
        }
        let prev = &levels[j - 1];
        let parent_of: BTreeMap<&BigUint, usize> = prev
            .iter()
            .enumerate()
            .map(|(idx, v)| (&v.residue, idx))
            .collect();
        let pj1 = p.to_biguint().pow(j as u32 - 1);
        let mut level = Vec::with_capacity(classes.len());
        for (residue, members) in classes {
            let parent = parent_of[&(&residue % &pj1)];
            let weight: u64 = members
                .iter()
                .map(|&i| plus_roots[i].multiplicity as u64)
                .sum();
            level.push(TreeVertex {
                level: j as u64,
                residue,
                parent: Some(parent),
                weight,
                valence: 0,
                stalk_weight: prev[parent].stalk_weight + weight,
                members,
            });
        }
        debug_assert_eq!(level.iter().map(|v| v.weight).sum::<u64>(), total);
        for v in &level {
            levels[j - 1][v.parent.unwrap()].valence += 1;
        }
        levels.push(level);
    }

    if levels[depth].iter().any(|v| v.members.len() > 1) {
        return Err(Error::TreeTooShallow { depth: lf });
    }
    Ok(WeightedTree {
        prime: p,
        lf,
        levels,
    })
}

impl WeightedTree {
    pub fn vertex(&self, id: VertexId) -> &TreeVertex {
        &self.levels[id.level][id.index]
    }

    pub fn root(&self) -> &TreeVertex {
        &self.levels[0][0]
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// All vertices level by level, ascending residue within a level.
    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &TreeVertex)> {
        self.levels.iter().enumerate().flat_map(|(level, vs)| {
            vs.iter()
                .enumerate()
                .map(move |(index, v)| (VertexId { level, index }, v))
        })
    }

    pub fn parent(&self, id: VertexId) -> Option<VertexId> {
        let v = self.vertex(id);
        v.parent.map(|index| VertexId {
            level: id.level - 1,
            index,
        })
    }

    /// Whether `id` is at the last level `l_f + 1`.
    pub fn is_terminal(&self, id: VertexId) -> bool {
        id.level as u64 == self.lf + 1
    }

    /// Weight-one vertices with no weight-one vertex strictly closer to the root.
    pub fn minimal_weight_one(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|(id, v)| {
                if v.weight != 1 {
                    return false;
                }
                let mut cur = self.parent(*id);
                while let Some(a) = cur {
                    if self.vertex(a).weight == 1 {
                        return false;
                    }
                    cur = self.parent(a);
                }
                true
            })
            .map(|(id, _)| id)
            .collect()
    }

    /// Graphviz rendering; every node is labeled `level/residue [W, Val, W*]`
    /// and every edge points from a vertex to its parent.
    pub fn to_dot(&self) -> String {
        let name = |id: VertexId| format!("v{}_{}", id.level, id.index);
        let mut out = String::new();
        writeln!(out, "digraph tree {{").unwrap();
        writeln!(out, "  // p = {}, l_f = {}", self.prime, self.lf).unwrap();
        for (id, v) in self.vertices() {
            writeln!(
                out,
                "  {} [label=\"{}/{} [{}, {}, {}]\"];",
                name(id),
                v.level,
                v.residue,
                v.weight,
                v.valence,
                v.stalk_weight
            )
            .unwrap();
        }
        for (id, _) in self.vertices() {
            if let Some(parent) = self.parent(id) {
                writeln!(out, "  {} -> {};", name(id), name(parent)).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    /// Plain-text listing, one vertex per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("p = {}, l_f = {}\n", self.prime, self.lf);
        for (_, v) in self.vertices() {
            writeln!(
                out,
                "{:indent$}{}/{} W={} Val={} W*={}",
                "",
                v.level,
                v.residue,
                v.weight,
                v.valence,
                v.stalk_weight,
                indent = 2 * v.level as usize
            )
            .unwrap();
        }
        out
    }
}
