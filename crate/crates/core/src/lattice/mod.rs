//! Finite bounded lattices given by explicit meet and join tables.
//!
//! Elements are dense indices `0..n`. Display names are carried along for
//! reporting only; every operation works on indices.

mod catalog;
mod iso;
mod poset;
mod predicates;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sets::PointSet;

pub use catalog::{all_lattices, lattices_of_size};
pub use iso::{are_isomorphic, find_isomorphism, invariant_signature};
pub use poset::{birkhoff_poset, downset_lattice, enumerate_distributive, Poset, PosetError};
pub use predicates::{
    conn, find_chicane, is_boolean, is_disjunctive, is_distributive, is_normal, satisfies_dim_le1,
    satisfies_hi, Chicane, NormalityReport, PliandFoursome, Separation, Verdict,
};

pub type Elem = usize;

/// Raw table data as read from input, before any law has been checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeTables {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    MeetCommutativity,
    JoinCommutativity,
    MeetAssociativity,
    JoinAssociativity,
    MeetIdempotence,
    JoinIdempotence,
    MeetAbsorption,
    JoinAbsorption,
    BottomMeet,
    BottomJoin,
    TopMeet,
    TopJoin,
    OrderAgreement,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::MeetCommutativity => "meet commutativity",
            Law::JoinCommutativity => "join commutativity",
            Law::MeetAssociativity => "meet associativity",
            Law::JoinAssociativity => "join associativity",
            Law::MeetIdempotence => "meet idempotence",
            Law::JoinIdempotence => "join idempotence",
            Law::MeetAbsorption => "absorption a^(avb)=a",
            Law::JoinAbsorption => "absorption av(a^b)=a",
            Law::BottomMeet => "0^a=0",
            Law::BottomJoin => "0va=a",
            Law::TopMeet => "1^a=a",
            Law::TopJoin => "1va=1",
            Law::OrderAgreement => "a^b=a iff avb=b",
        };
        f.write_str(s)
    }
}

/// A violated lattice law together with the first witness tuple found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("malformed tables: {0}")]
    MalformedTables(String),
    #[error("lattice laws violated: {}", display_violations(.0))]
    LatticeLawViolation(Vec<LawViolation>),
    #[error("lattice is not distributive (witness {0:?})")]
    NotDistributive([Elem; 3]),
    #[error("lattice is not a Boolean algebra")]
    NotBoolean,
    #[error("foursome ({0}, {1}, {2}, {3}) is not pliand")]
    NotPliand(Elem, Elem, Elem, Elem),
    #[error("element {0} out of range")]
    ElementOutOfRange(Elem),
}

fn display_violations(v: &[LawViolation]) -> String {
    v.iter()
        .map(|x| format!("{} at {:?}", x.law, x.witness))
        .collect::<Vec<_>>()
        .join("; ")
}

/// A validated finite bounded lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Serialize for FiniteLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_tables().serialize(s)
    }
}

impl FiniteLattice {
    /// Checks table shape and every bounded-lattice law; on failure all
    /// violated laws are reported, each with its lexicographically first witness.
    pub fn validate(tables: &LatticeTables) -> Result<Self, LatticeError> {
        let n = tables.elements.len();
        if n == 0 {
            return Err(LatticeError::MalformedTables("no elements".into()));
        }
        for (label, table) in [("meet", &tables.meet), ("join", &tables.join)] {
            if table.len() != n {
                return Err(LatticeError::MalformedTables(format!(
                    "{label} table has {} rows, expected {n}",
                    table.len()
                )));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(LatticeError::MalformedTables(format!(
                        "{label} row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                    return Err(LatticeError::MalformedTables(format!(
                        "{label} row {i} contains out-of-range index {bad}"
                    )));
                }
            }
        }
        if tables.bottom >= n || tables.top >= n {
            return Err(LatticeError::MalformedTables("bound index out of range".into()));
        }
        let lattice = FiniteLattice {
            names: tables.elements.clone(),
            meet: tables.meet.iter().flatten().copied().collect(),
            join: tables.join.iter().flatten().copied().collect(),
            bottom: tables.bottom,
            top: tables.top,
        };
        let violations = lattice.law_violations();
        if violations.is_empty() {
            Ok(lattice)
        } else {
            Err(LatticeError::LatticeLawViolation(violations))
        }
    }

    fn law_violations(&self) -> Vec<LawViolation> {
        let n = self.size();
        let mut found: Vec<LawViolation> = Vec::new();
        let mut note = |law: Law, witness: &[Elem]| {
            if !found.iter().any(|v| v.law == law) {
                found.push(LawViolation {
                    law,
                    witness: witness.to_vec(),
                });
            }
        };
        let (z, o) = (self.bottom, self.top);
        for a in 0..n {
            if self.meet(a, a) != a {
                note(Law::MeetIdempotence, &[a]);
            }
            if self.join(a, a) != a {
                note(Law::JoinIdempotence, &[a]);
            }
            if self.meet(z, a) != z {
                note(Law::BottomMeet, &[a]);
            }
            if self.join(z, a) != a {
                note(Law::BottomJoin, &[a]);
            }
            if self.meet(o, a) != a {
                note(Law::TopMeet, &[a]);
            }
            if self.join(o, a) != o {
                note(Law::TopJoin, &[a]);
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) {
                    note(Law::MeetCommutativity, &[a, b]);
                }
                if self.join(a, b) != self.join(b, a) {
                    note(Law::JoinCommutativity, &[a, b]);
                }
                if self.meet(a, self.join(a, b)) != a {
                    note(Law::MeetAbsorption, &[a, b]);
                }
                if self.join(a, self.meet(a, b)) != a {
                    note(Law::JoinAbsorption, &[a, b]);
                }
                if (self.meet(a, b) == a) != (self.join(a, b) == b) {
                    note(Law::OrderAgreement, &[a, b]);
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        note(Law::MeetAssociativity, &[a, b, c]);
                    }
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        note(Law::JoinAssociativity, &[a, b, c]);
                    }
                }
            }
        }
        found.sort_by_key(|v| v.law as u8);
        found
    }

    /// Builds a lattice from an order relation known to be a lattice order.
    /// `le(a, b)` must be reflexive, antisymmetric, transitive and have all
    /// pairwise suprema and infima.
    pub(crate) fn from_lattice_order(names: Vec<String>, le: impl Fn(Elem, Elem) -> bool) -> Self {
        let n = names.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<Elem> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let upper: Vec<Elem> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let m = *lower
                    .iter()
                    .find(|&&c| lower.iter().all(|&d| le(d, c)))
                    .expect("order has no infimum");
                let j = *upper
                    .iter()
                    .find(|&&c| upper.iter().all(|&d| le(c, d)))
                    .expect("order has no supremum");
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n).find(|&a| (0..n).all(|b| le(a, b))).expect("no bottom");
        let top = (0..n).find(|&a| (0..n).all(|b| le(b, a))).expect("no top");
        let lattice = FiniteLattice {
            names,
            meet,
            join,
            bottom,
            top,
        };
        debug_assert!(lattice.law_violations().is_empty());
        lattice
    }

    /// The lattice of a family of sets closed under union and intersection,
    /// ordered by inclusion. The family must contain its own least and
    /// greatest members.
    pub(crate) fn from_set_family(sets: &[PointSet]) -> Self {
        let names = sets.iter().map(|s| s.to_string()).collect();
        let index = |s: PointSet| {
            sets.iter()
                .position(|&t| t == s)
                .expect("family not closed under union/intersection")
        };
        let n = sets.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = index(sets[a].intersection(sets[b]));
                join[a * n + b] = index(sets[a].union(sets[b]));
            }
        }
        let bottom = index(sets.iter().fold(sets[0], |acc, &s| acc.intersection(s)));
        let top = index(sets.iter().fold(sets[0], |acc, &s| acc.union(s)));
        FiniteLattice {
            names,
            meet,
            join,
            bottom,
            top,
        }
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_lattice_order(names, |a, b| a <= b)
    }

    /// The power-set lattice of a `k`-element set; element index = bitmask.
    pub fn power_set(k: usize) -> Self {
        assert!(k < 16, "power set too large");
        let sets: Vec<PointSet> = (0..1u64 << k).map(PointSet).collect();
        Self::from_set_family(&sets)
    }

    /// The diamond M3: `0, a, b, c, 1` with pairwise meets 0 and joins 1.
    pub fn diamond() -> Self {
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_lattice_order(names, |x, y| x == y || x == 0 || y == 4)
    }

    /// The pentagon N5: `0 < a < b < 1` and `0 < c < 1`.
    pub fn pentagon() -> Self {
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_lattice_order(names, |x, y| {
            x == y || x == 0 || y == 4 || (x == 1 && y == 2)
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.size());
        self.names = names;
        self
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn check_element(&self, a: Elem) -> Result<Elem, LatticeError> {
        if a < self.size() {
            Ok(a)
        } else {
            Err(LatticeError::ElementOutOfRange(a))
        }
    }

    /// Elements covering `a` (immediate successors in the order).
    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| b != a && self.leq(a, b))
            .filter(|&b| {
                !self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
            })
            .collect()
    }

    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| b != a && self.leq(b, a))
            .filter(|&b| {
                !self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(b, c) && self.leq(c, a))
            })
            .collect()
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<Elem> {
        self.upper_covers(self.bottom)
            .into_iter()
            .filter(|&a| a != self.bottom)
            .collect()
    }

    /// Complements of `a`: elements `b` with `a∧b = 0` and `a∨b = 1`.
    pub fn complements(&self, a: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&b| self.meet(a, b) == self.bottom && self.join(a, b) == self.top)
            .collect()
    }

    pub fn to_tables(&self) -> LatticeTables {
        let n = self.size();
        LatticeTables {
            elements: self.names.clone(),
            meet: self.meet.chunks(n).map(<[_]>::to_vec).collect(),
            join: self.join.chunks(n).map(<[_]>::to_vec).collect(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    /// The same lattice with element `i` moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[Elem]) -> Self {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = perm[self.meet(inv[a], inv[b])];
                join[a * n + b] = perm[self.join(inv[a], inv[b])];
            }
        }
        FiniteLattice {
            names: inv.iter().map(|&i| self.names[i].clone()).collect(),
            meet,
            join,
            bottom: perm[self.bottom],
            top: perm[self.top],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables(meet: Vec<Vec<usize>>, join: Vec<Vec<usize>>) -> LatticeTables {
        let n = meet.len();
        LatticeTables {
            elements: (0..n).map(|i| i.to_string()).collect(),
            meet,
            join,
            bottom: 0,
            top: n - 1,
        }
    }

    #[test]
    fn two_element_chain_validates() {
        let t = tables(vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]);
        let l = FiniteLattice::validate(&t).unwrap();
        assert_eq!(l.size(), 2);
        assert_eq!(l, FiniteLattice::chain(2));
    }

    #[test]
    fn non_commutative_meet_is_reported() {
        let t = tables(vec![vec![0, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]);
        let err = FiniteLattice::validate(&t).unwrap_err();
        let LatticeError::LatticeLawViolation(v) = err else {
            panic!("expected law violation");
        };
        let comm = v.iter().find(|x| x.law == Law::MeetCommutativity).unwrap();
        assert_eq!(comm.witness, vec![0, 1]);
    }

    #[test]
    fn ragged_and_out_of_range_tables_are_malformed() {
        let ragged = tables(vec![vec![0, 0], vec![0]], vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(
            FiniteLattice::validate(&ragged),
            Err(LatticeError::MalformedTables(_))
        ));
        let oob = tables(vec![vec![0, 5], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(
            FiniteLattice::validate(&oob),
            Err(LatticeError::MalformedTables(_))
        ));
    }

    #[test]
    fn diamond_passes_every_law() {
        let m3 = FiniteLattice::diamond();
        let again = FiniteLattice::validate(&m3.to_tables()).unwrap();
        assert_eq!(again, m3);
        for x in 1..4 {
            for y in 1..4 {
                if x != y {
                    assert_eq!(m3.meet(x, y), 0);
                    assert_eq!(m3.join(x, y), 4);
                }
            }
        }
    }

    #[test]
    fn power_set_uses_mask_indices() {
        let p = FiniteLattice::power_set(3);
        assert_eq!(p.meet(0b011, 0b110), 0b010);
        assert_eq!(p.join(0b001, 0b100), 0b101);
        assert_eq!(p.bottom(), 0);
        assert_eq!(p.top(), 7);
        assert_eq!(p.atoms(), vec![1, 2, 4]);
    }

    #[test]
    fn permutation_preserves_validity() {
        let p = FiniteLattice::power_set(2);
        let q = p.permuted(&[3, 1, 0, 2]);
        FiniteLattice::validate(&q.to_tables()).unwrap();
        assert_eq!(q.bottom(), 3);
        assert_eq!(q.top(), 2);
    }
}
