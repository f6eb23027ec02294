use proptest::prelude::*;
use wallman_lab::lattice::{
    all_lattices, are_isomorphic, birkhoff_poset, conn, downset_lattice, enumerate_distributive,
    find_chicane, find_isomorphism, invariant_signature, is_disjunctive, is_distributive,
    is_normal, satisfies_dim_le1, satisfies_hi, FiniteLattice, PliandFoursome,
};

fn any_lattice(max: usize) -> impl Strategy<Value = FiniteLattice> {
    let all = all_lattices(max);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn lattice_and_perm() -> impl Strategy<Value = (FiniteLattice, Vec<usize>)> {
    any_lattice(6).prop_flat_map(|l| {
        let n = l.size();
        (Just(l), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

// The six chicane identities, written out again against raw table lookups.
fn chicane_holds(l: &FiniteLattice, [c, d, f, g]: [usize; 4], [z1, z2, z3]: [usize; 3]) -> bool {
    let zero = l.bottom();
    let m = |a, b| l.meet(a, b);
    let j = |a, b| l.join(a, b);
    m(c, j(z2, z3)) == zero
        && m(d, j(z1, z2)) == zero
        && m(z1, z3) == zero
        && m(m(z1, z2), g) == zero
        && m(m(z2, z3), f) == zero
        && j(j(z1, z2), z3) == l.top()
}

proptest! {
    #[test]
    fn meet_order_agrees_with_join_order(l in any_lattice(7)) {
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(l.meet(a, b) == a, l.join(a, b) == b);
            }
        }
    }

    #[test]
    fn chicanes_found_are_chicanes(l in any_lattice(6), picks in prop::array::uniform4(0usize..64)) {
        let n = l.size();
        let [c, d, f, g] = picks.map(|p| p % n);
        match PliandFoursome::new(&l, c, d, f, g) {
            Ok(p) => {
                let found = find_chicane(&l, &p).unwrap();
                if let Some(z) = found {
                    prop_assert!(chicane_holds(&l, [c, d, f, g], [z.z1, z.z2, z.z3]));
                } else {
                    // absence is exhaustive
                    for z1 in l.elements() {
                        for z2 in l.elements() {
                            for z3 in l.elements() {
                                prop_assert!(!chicane_holds(&l, [c, d, f, g], [z1, z2, z3]));
                            }
                        }
                    }
                }
            }
            Err(_) => {
                let z = l.bottom();
                prop_assert!(l.meet(c, d) != z || l.meet(c, f) != z || l.meet(d, g) != z);
            }
        }
    }

    #[test]
    fn relabelling_preserves_everything((l, perm) in lattice_and_perm()) {
        let p = l.permuted(&perm);
        prop_assert!(are_isomorphic(&l, &p));
        prop_assert_eq!(invariant_signature(&l), invariant_signature(&p));
        let iso = find_isomorphism(&l, &p).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(iso[l.meet(a, b)], p.meet(iso[a], iso[b]));
            }
        }
        prop_assert_eq!(is_distributive(&l).holds, is_distributive(&p).holds);
        prop_assert_eq!(is_normal(&l).holds, is_normal(&p).holds);
        prop_assert_eq!(satisfies_hi(&l).holds, satisfies_hi(&p).holds);
    }

    #[test]
    fn birkhoff_round_trip(i in 0usize..1000) {
        let all = enumerate_distributive(7);
        let l = &all[i % all.len()];
        let back = downset_lattice(&birkhoff_poset(l).unwrap());
        prop_assert!(are_isomorphic(l, &back));
    }
}

#[test]
fn power_sets_satisfy_every_predicate() {
    for k in 0..=5 {
        let l = FiniteLattice::power_set(k);
        assert!(is_distributive(&l).holds, "2^{k}");
        assert!(is_disjunctive(&l).holds, "2^{k}");
        assert!(is_normal(&l).holds, "2^{k}");
        assert!(satisfies_hi(&l).holds, "2^{k}");
        assert!(satisfies_dim_le1(&l).holds, "2^{k}");
        assert_eq!(conn(&l, l.top()).unwrap().holds, k <= 1, "2^{k}");
    }
}

#[test]
fn distributive_enumeration_is_irredundant() {
    let all = enumerate_distributive(5);
    for (i, a) in all.iter().enumerate() {
        assert!(is_distributive(a).holds);
        for b in &all[i + 1..] {
            assert!(!are_isomorphic(a, b));
        }
    }
    // one per class: the catalog's distributive members, counted by size
    let from_catalog = all_lattices(5).into_iter().filter(|l| is_distributive(l).holds).count();
    assert_eq!(all.len(), from_catalog);
}

#[test]
fn catalog_counts() {
    let counts: Vec<usize> = (1..=9).map(|n| wallman_lab::lattice::lattices_of_size(n).len()).collect();
    assert_eq!(counts, [1, 1, 1, 2, 5, 15, 53, 222, 1078]);
}
