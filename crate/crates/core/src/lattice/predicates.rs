//! Decision procedures for the lattice-level predicates: distributivity,
//! disjunctivity, normality, connectedness, chicanes and the dimension
//! formula. Every search scans in element-index order, so witnesses are
//! the lexicographically least ones.

use serde::Serialize;

use super::{Elem, FiniteLattice, LatticeError};

/// Outcome of a predicate: whether it holds, plus a witness.
///
/// For most predicates the witness explains a failure; see each function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn yes_with(w: W) -> Self {
        Verdict {
            holds: true,
            witness: Some(w),
        }
    }

    pub fn no(w: W) -> Self {
        Verdict {
            holds: false,
            witness: Some(w),
        }
    }
}

/// `a∧(b∨c) = (a∧b)∨(a∧c)` for every triple; fails with the least violating triple.
pub fn is_distributive(l: &FiniteLattice) -> Verdict<[Elem; 3]> {
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                    return Verdict::no([a, b, c]);
                }
            }
        }
    }
    Verdict::yes()
}

/// For every `a ≰ b` some nonzero `c ≤ a` has `c∧b = 0`.
/// Fails with the least pair `(a, b)` admitting no such `c`.
pub fn is_disjunctive(l: &FiniteLattice) -> Verdict<[Elem; 2]> {
    let z = l.bottom();
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) {
                continue;
            }
            let separated = l
                .elements()
                .any(|c| c != z && l.leq(c, a) && l.meet(c, b) == z);
            if !separated {
                return Verdict::no([a, b]);
            }
        }
    }
    Verdict::yes()
}

/// Complemented lattice that is also distributive.
pub fn is_boolean(l: &FiniteLattice) -> bool {
    is_distributive(l).holds && l.elements().all(|a| !l.complements(a).is_empty())
}

/// A witness `(u, v)` for the disjoint pair `(x, y)`:
/// `x∧u = 0`, `y∧v = 0`, `u∨v = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub x: Elem,
    pub y: Elem,
    pub u: Elem,
    pub v: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub holds: bool,
    /// One separation per ordered disjoint pair, populated when `holds`.
    pub separations: Vec<Separation>,
    pub failing_pair: Option<[Elem; 2]>,
}

/// The normality formula: every disjoint pair `x∧y = 0` admits `u, v`
/// with `x∧u = 0`, `y∧v = 0` and `u∨v = 1`.
pub fn is_normal(l: &FiniteLattice) -> NormalityReport {
    let (z, o) = (l.bottom(), l.top());
    let mut separations = Vec::new();
    for x in l.elements() {
        for y in l.elements() {
            if l.meet(x, y) != z {
                continue;
            }
            let found = l.elements().find_map(|u| {
                if l.meet(x, u) != z {
                    return None;
                }
                l.elements()
                    .find(|&v| l.meet(y, v) == z && l.join(u, v) == o)
                    .map(|v| Separation { x, y, u, v })
            });
            match found {
                Some(s) => separations.push(s),
                None => {
                    return NormalityReport {
                        holds: false,
                        separations: Vec::new(),
                        failing_pair: Some([x, y]),
                    }
                }
            }
        }
    }
    NormalityReport {
        holds: true,
        separations,
        failing_pair: None,
    }
}

/// The connectedness formula with the top replaced by `a`:
/// whenever `x∧y = 0` and `x∨y = a`, then `x = 0` or `x = a`.
/// Fails with the least splitting pair `(x, y)`.
pub fn conn(l: &FiniteLattice, a: Elem) -> Result<Verdict<[Elem; 2]>, LatticeError> {
    l.check_element(a)?;
    let z = l.bottom();
    for x in l.elements() {
        for y in l.elements() {
            if l.meet(x, y) == z && l.join(x, y) == a && x != z && x != a {
                return Ok(Verdict::no([x, y]));
            }
        }
    }
    Ok(Verdict::yes())
}

/// A quadruple `(c, d, f, g)` with `c∧d = c∧f = d∧g = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PliandFoursome {
    pub c: Elem,
    pub d: Elem,
    pub f: Elem,
    pub g: Elem,
}

impl PliandFoursome {
    pub fn new(l: &FiniteLattice, c: Elem, d: Elem, f: Elem, g: Elem) -> Result<Self, LatticeError> {
        for e in [c, d, f, g] {
            l.check_element(e)?;
        }
        let z = l.bottom();
        if l.meet(c, d) == z && l.meet(c, f) == z && l.meet(d, g) == z {
            Ok(PliandFoursome { c, d, f, g })
        } else {
            Err(LatticeError::NotPliand(c, d, f, g))
        }
    }
}

/// A triple `(z1, z2, z3)` solving the six chicane identities for a foursome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Chicane {
    pub z1: Elem,
    pub z2: Elem,
    pub z3: Elem,
}

impl Chicane {
    /// Re-evaluates all six identities.
    pub fn is_chicane_for(&self, l: &FiniteLattice, p: &PliandFoursome) -> bool {
        let (z, o) = (l.bottom(), l.top());
        let Chicane { z1, z2, z3 } = *self;
        l.meet(p.c, l.join(z2, z3)) == z
            && l.meet(p.d, l.join(z1, z2)) == z
            && l.meet(z1, z3) == z
            && l.meet(l.meet(z1, z2), p.g) == z
            && l.meet(l.meet(z2, z3), p.f) == z
            && l.join(l.join(z1, z2), z3) == o
    }
}

/// Least chicane for the foursome, or `None` when no triple works.
pub fn find_chicane(l: &FiniteLattice, p: &PliandFoursome) -> Result<Option<Chicane>, LatticeError> {
    let p = PliandFoursome::new(l, p.c, p.d, p.f, p.g)?;
    Ok(least_chicane(l, &p))
}

fn least_chicane(l: &FiniteLattice, p: &PliandFoursome) -> Option<Chicane> {
    let z = l.bottom();
    // d∧(z1∨z2) = 0 forces d∧z1 = d∧z2 = 0; c∧(z2∨z3) = 0 forces c∧z2 = 0.
    for z1 in l.elements().filter(|&z1| l.meet(p.d, z1) == z) {
        for z2 in l
            .elements()
            .filter(|&z2| l.meet(p.d, z2) == z && l.meet(p.c, z2) == z)
        {
            if l.meet(l.meet(z1, z2), p.g) != z {
                continue;
            }
            for z3 in l.elements() {
                let ch = Chicane { z1, z2, z3 };
                if ch.is_chicane_for(l, p) {
                    return Some(ch);
                }
            }
        }
    }
    None
}

/// Every pliand foursome has a chicane. Fails with the least foursome lacking one.
pub fn satisfies_hi(l: &FiniteLattice) -> Verdict<PliandFoursome> {
    let z = l.bottom();
    for c in l.elements() {
        for d in l.elements().filter(|&d| l.meet(c, d) == z) {
            for f in l.elements().filter(|&f| l.meet(c, f) == z) {
                for g in l.elements().filter(|&g| l.meet(d, g) == z) {
                    let p = PliandFoursome { c, d, f, g };
                    if least_chicane(l, &p).is_none() {
                        return Verdict::no(p);
                    }
                }
            }
        }
    }
    Verdict::yes()
}

/// The partition formula for dimension at most one: for all disjoint pairs
/// `(x0, y0)`, `(x1, y1)` there are separations `(u0, v0)`, `(u1, v1)` with
/// `u0∧v0∧u1∧v1 = 0`. Fails with the least quadruple `[x0, y0, x1, y1]`.
pub fn satisfies_dim_le1(l: &FiniteLattice) -> Verdict<[Elem; 4]> {
    let (z, o) = (l.bottom(), l.top());
    let pairs: Vec<(Elem, Elem)> = l
        .elements()
        .flat_map(|x| l.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| l.meet(x, y) == z)
        .collect();
    // Attainable values of u∧v over separations of each disjoint pair.
    let cores: Vec<Vec<Elem>> = pairs
        .iter()
        .map(|&(x, y)| {
            let mut ms: Vec<Elem> = Vec::new();
            for u in l.elements().filter(|&u| l.meet(x, u) == z) {
                for v in l.elements().filter(|&v| l.meet(y, v) == z) {
                    if l.join(u, v) == o {
                        let m = l.meet(u, v);
                        if !ms.contains(&m) {
                            ms.push(m);
                        }
                    }
                }
            }
            ms
        })
        .collect();
    for (i, &(x0, y0)) in pairs.iter().enumerate() {
        for (j, &(x1, y1)) in pairs.iter().enumerate() {
            let ok = cores[i]
                .iter()
                .any(|&m0| cores[j].iter().any(|&m1| l.meet(m0, m1) == z));
            if !ok {
                return Verdict::no([x0, y0, x1, y1]);
            }
        }
    }
    Verdict::yes()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle for the dimension formula: searches all four
    /// witnesses directly.
    fn dim_oracle(l: &FiniteLattice) -> bool {
        let (z, o) = (l.bottom(), l.top());
        let e: Vec<Elem> = l.elements().collect();
        for &x0 in &e {
            for &y0 in &e {
                for &x1 in &e {
                    for &y1 in &e {
                        if l.meet(x0, y0) != z || l.meet(x1, y1) != z {
                            continue;
                        }
                        let mut found = false;
                        'search: for &u0 in &e {
                            for &v0 in &e {
                                for &u1 in &e {
                                    for &v1 in &e {
                                        if l.meet(x0, u0) == z
                                            && l.meet(y0, v0) == z
                                            && l.meet(x1, u1) == z
                                            && l.meet(y1, v1) == z
                                            && l.join(u0, v0) == o
                                            && l.join(u1, v1) == o
                                            && l.meet_all([u0, v0, u1, v1]) == z
                                        {
                                            found = true;
                                            break 'search;
                                        }
                                    }
                                }
                            }
                        }
                        if !found {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn chains_are_distributive() {
        for n in 1..=6 {
            assert!(is_distributive(&FiniteLattice::chain(n)).holds);
        }
        assert!(is_distributive(&FiniteLattice::chain(2)).holds);
    }

    #[test]
    fn diamond_fails_distributivity_at_first_triple() {
        let v = is_distributive(&FiniteLattice::diamond());
        assert!(!v.holds);
        assert_eq!(v.witness, Some([1, 2, 3]));
        assert!(!is_distributive(&FiniteLattice::pentagon()).holds);
    }

    #[test]
    fn disjunctivity_examples() {
        for k in 0..=4 {
            assert!(is_disjunctive(&FiniteLattice::power_set(k)).holds);
        }
        let v = is_disjunctive(&FiniteLattice::chain(3));
        assert_eq!(v, Verdict::no([2, 1]));
        assert!(is_disjunctive(&FiniteLattice::chain(2)).holds);
    }

    #[test]
    fn normality_examples() {
        for n in 1..=5 {
            let r = is_normal(&FiniteLattice::chain(n));
            assert!(r.holds);
            // x = 0 with y = top is separated by u = top, v = bottom.
            let s = r.separations.iter().find(|s| s.x == 0 && s.y == n - 1).unwrap();
            assert_eq!((s.u, s.v), (n - 1, 0));
        }
        for k in 0..=4 {
            let l = FiniteLattice::power_set(k);
            let r = is_normal(&l);
            assert!(r.holds);
            for s in &r.separations {
                assert_eq!(l.meet(s.x, s.u), 0);
                assert_eq!(l.meet(s.y, s.v), 0);
                assert_eq!(l.join(s.u, s.v), l.top());
            }
        }
    }

    #[test]
    fn two_atoms_under_a_new_top_is_not_normal() {
        // 0 < a, b < a∨b < 1: the smallest distributive non-normal lattice.
        let names = ["0", "a", "b", "ab", "1"].map(String::from).to_vec();
        let l = FiniteLattice::from_lattice_order(names, |x, y| {
            x == y || x == 0 || y == 4 || (y == 3 && (x == 1 || x == 2))
        });
        assert!(is_distributive(&l).holds);
        let r = is_normal(&l);
        assert!(!r.holds);
        assert_eq!(r.failing_pair, Some([1, 2]));
    }

    #[test]
    fn conn_examples() {
        assert!(conn(&FiniteLattice::chain(2), 1).unwrap().holds);
        let ba4 = FiniteLattice::power_set(2);
        assert_eq!(conn(&ba4, 3).unwrap(), Verdict::no([1, 2]));
        assert!(conn(&FiniteLattice::chain(3), 2).unwrap().holds);
        // Below a connected element the lattice may still split.
        assert!(conn(&ba4, 1).unwrap().holds);
        assert!(conn(&ba4, 9).is_err());
    }

    #[test]
    fn chicane_in_three_point_power_set() {
        let l = FiniteLattice::power_set(3);
        let p = PliandFoursome::new(&l, 0b001, 0b010, 0, 0).unwrap();
        let listed = Chicane {
            z1: 0b001,
            z2: 0b100,
            z3: 0b010,
        };
        assert!(listed.is_chicane_for(&l, &p));
        let found = find_chicane(&l, &p).unwrap().unwrap();
        assert!(found.is_chicane_for(&l, &p));
        // z1 must contain c, and {1} ∪ {} ∪ {2,3} is least under mask order.
        assert_eq!(
            found,
            Chicane {
                z1: 0b001,
                z2: 0,
                z3: 0b110
            }
        );
    }

    #[test]
    fn power_set_foursomes_have_the_standard_chicane() {
        for k in 0..=4 {
            let l = FiniteLattice::power_set(k);
            let full = l.top();
            for c in l.elements() {
                for d in l.elements() {
                    for f in l.elements() {
                        for g in l.elements() {
                            let Ok(p) = PliandFoursome::new(&l, c, d, f, g) else {
                                continue;
                            };
                            let ch = Chicane {
                                z1: c,
                                z2: full & !(c | d),
                                z3: d,
                            };
                            assert!(ch.is_chicane_for(&l, &p), "{k}: {p:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_pliand_foursome_is_rejected() {
        let l = FiniteLattice::power_set(2);
        let p = PliandFoursome { c: 1, d: 1, f: 0, g: 0 };
        assert!(matches!(find_chicane(&l, &p), Err(LatticeError::NotPliand(..))));
    }

    #[test]
    fn hi_and_dimension_on_small_lattices() {
        assert!(satisfies_hi(&FiniteLattice::chain(2)).holds);
        assert!(satisfies_dim_le1(&FiniteLattice::chain(2)).holds);
        assert!(satisfies_dim_le1(&FiniteLattice::chain(3)).holds);
        for k in 0..=4 {
            let l = FiniteLattice::power_set(k);
            assert!(satisfies_hi(&l).holds);
            assert!(satisfies_dim_le1(&l).holds);
        }
    }

    #[test]
    fn dimension_matches_brute_force() {
        let samples = [
            FiniteLattice::chain(3),
            FiniteLattice::chain(4),
            FiniteLattice::power_set(2),
            FiniteLattice::diamond(),
            FiniteLattice::pentagon(),
        ];
        for l in &samples {
            assert_eq!(satisfies_dim_le1(l).holds, dim_oracle(l));
        }
    }

    #[test]
    fn boolean_detection() {
        assert!(is_boolean(&FiniteLattice::power_set(3)));
        assert!(!is_boolean(&FiniteLattice::chain(3)));
        assert!(!is_boolean(&FiniteLattice::diamond()));
    }
}
