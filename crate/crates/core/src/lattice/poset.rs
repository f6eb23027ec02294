//! Finite posets and Birkhoff duality, used to enumerate distributive
//! lattices as lattices of down-sets.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use super::{is_distributive, Elem, FiniteLattice, LatticeError};
use crate::sets::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation mentions point {0} but the poset has {1} points")]
    OutOfRange(usize, usize),
    #[error("relation is not antisymmetric: {0} and {1} are mutually below each other")]
    NotAntisymmetric(usize, usize),
    #[error("posets are limited to {0} points")]
    TooLarge(usize),
}

/// A partial order on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    le: Vec<bool>,
}

const MAX_POSET: usize = 24;

impl Poset {
    /// Reflexive-transitive closure of the given pairs `(i, j)` meaning `i ≤ j`.
    pub fn from_relations(size: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        if size > MAX_POSET {
            return Err(PosetError::TooLarge(MAX_POSET));
        }
        let mut le = vec![false; size * size];
        for i in 0..size {
            le[i * size + i] = true;
        }
        for &(i, j) in pairs {
            for p in [i, j] {
                if p >= size {
                    return Err(PosetError::OutOfRange(p, size));
                }
            }
            le[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if le[i * size + k] {
                    for j in 0..size {
                        if le[k * size + j] {
                            le[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in i + 1..size {
                if le[i * size + j] && le[j * size + i] {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Poset { size, le })
    }

    pub fn chain(size: usize) -> Self {
        let pairs: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        Poset::from_relations(size, &pairs).expect("chain is a poset")
    }

    pub fn antichain(size: usize) -> Self {
        Poset::from_relations(size, &[]).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.size + j]
    }

    /// Strict cover-free listing of `i ≤ j` pairs with `i ≠ j`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .cartesian_product(0..self.size)
            .filter(|&(i, j)| i != j && self.le(i, j))
            .collect()
    }

    /// All down-closed subsets, smallest first.
    pub fn downsets(&self) -> Vec<PointSet> {
        let n = self.size;
        let mut out = Vec::new();
        // Points in index order; a point may join only if everything
        // below it is already decided in.
        let below: Vec<PointSet> = (0..n)
            .map(|j| PointSet::from_points((0..n).filter(|&i| i != j && self.le(i, j))))
            .collect();
        let above: Vec<PointSet> = (0..n)
            .map(|i| PointSet::from_points((0..n).filter(|&j| i != j && self.le(i, j))))
            .collect();
        fn go(
            i: usize,
            n: usize,
            current: PointSet,
            excluded: PointSet,
            below: &[PointSet],
            above: &[PointSet],
            out: &mut Vec<PointSet>,
        ) {
            if i == n {
                out.push(current);
                return;
            }
            // Exclude i: everything above i must also stay out.
            if above[i].is_disjoint(current) {
                go(i + 1, n, current, excluded.with(i), below, above, out);
            }
            if below[i].is_disjoint(excluded) {
                go(i + 1, n, current.with(i), excluded, below, above, out);
            }
        }
        go(0, n, PointSet::EMPTY, PointSet::EMPTY, &below, &above, &mut out);
        out.retain(|d| {
            d.iter()
                .all(|j| (0..n).all(|i| !self.le(i, j) || d.contains(i)))
        });
        out.sort_by_key(|s| s.size_key());
        out
    }

    fn relabelled(&self, perm: &[usize]) -> Vec<bool> {
        let n = self.size;
        let mut le = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                le[perm[i] * n + perm[j]] = self.le(i, j);
            }
        }
        le
    }

    /// Lexicographically least relation matrix over all relabellings.
    fn canonical_form(&self) -> Vec<bool> {
        (0..self.size)
            .permutations(self.size)
            .map(|perm| self.relabelled(&perm))
            .min()
            .unwrap_or_default()
    }
}

/// The lattice of down-sets under intersection and union.
pub fn downset_lattice(p: &Poset) -> FiniteLattice {
    let sets = p.downsets();
    let mut lattice = FiniteLattice::from_set_family(&sets);
    let names = sets
        .iter()
        .map(|s| {
            let items: Vec<String> = s.iter().map(|i| format!("p{i}")).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    lattice = lattice.with_names(names);
    lattice
}

/// The poset of join-irreducible elements (exactly one lower cover), in
/// element-index order.
pub fn birkhoff_poset(l: &FiniteLattice) -> Result<Poset, LatticeError> {
    let d = is_distributive(l);
    if let Some(w) = d.witness {
        return Err(LatticeError::NotDistributive(w));
    }
    let irreducibles: Vec<Elem> = l
        .elements()
        .filter(|&a| a != l.bottom() && l.lower_covers(a).len() == 1)
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in irreducibles.iter().enumerate() {
        for (j, &b) in irreducibles.iter().enumerate() {
            if i != j && l.leq(a, b) {
                pairs.push((i, j));
            }
        }
    }
    Ok(Poset::from_relations(irreducibles.len(), &pairs).expect("sub-order of a lattice"))
}

/// One distributive lattice per isomorphism class with `1..=max_size`
/// elements, ordered by size.
///
/// Posets are grown one maximal point at a time (every poset has a linear
/// extension) and deduplicated by canonical form; Birkhoff duality turns
/// non-isomorphic posets into non-isomorphic lattices.
pub fn enumerate_distributive(max_size: usize) -> Vec<FiniteLattice> {
    let mut lattices: Vec<FiniteLattice> = Vec::new();
    if max_size == 0 {
        return lattices;
    }
    let mut level: Vec<Poset> = vec![Poset::antichain(0)];
    let mut all: Vec<Poset> = vec![Poset::antichain(0)];
    while !level.is_empty() {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in &level {
            for d in p.downsets() {
                let k = p.size();
                let mut pairs = p.relations();
                pairs.extend(d.iter().map(|i| (i, k)));
                let q = Poset::from_relations(k + 1, &pairs).expect("extension is a poset");
                if q.downsets().len() > max_size {
                    continue;
                }
                if seen.insert(q.canonical_form()) {
                    next.push(q);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    for p in &all {
        lattices.push(downset_lattice(p));
    }
    lattices.sort_by_key(|l| l.size());
    lattices
}
