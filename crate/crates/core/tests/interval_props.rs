use proptest::prelude::*;
use wallman_lab::interval::{
    disjunctive_witness, normality_witness, rational, refute_partition, PartitionViolation, Rational,
    RationalIntervalSet,
};

fn q() -> impl Strategy<Value = Rational> {
    (1i64..=24).prop_flat_map(|den| (0..=den).prop_map(move |num| rational(num, den)))
}

fn set() -> impl Strategy<Value = RationalIntervalSet> {
    prop::collection::vec((q(), q()), 0..5).prop_map(|raw| {
        let pairs = raw
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        RationalIntervalSet::normalize(pairs).unwrap()
    })
}

/// Two sets built from disjoint pieces between sorted cut points.
fn disjoint_pair() -> impl Strategy<Value = (RationalIntervalSet, RationalIntervalSet)> {
    (prop::collection::vec(q(), 2..10), prop::collection::vec(0u8..3, 5)).prop_map(|(mut cuts, sides)| {
        cuts.sort();
        cuts.dedup();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (k, pair) in cuts.chunks_exact(2).enumerate() {
            let iv = (pair[0].clone(), pair[1].clone());
            match sides[k % sides.len()] {
                0 => a.push(iv),
                1 => b.push(iv),
                _ => {}
            }
        }
        (
            RationalIntervalSet::normalize(a).unwrap(),
            RationalIntervalSet::normalize(b).unwrap(),
        )
    })
}

/// Endpoints, midpoints between consecutive endpoints, and the bounds.
fn probes(sets: &[&RationalIntervalSet]) -> Vec<Rational> {
    let mut pts: Vec<Rational> = vec![rational(0, 1), rational(1, 1)];
    for s in sets {
        for (lo, hi) in s.pairs() {
            pts.push(lo);
            pts.push(hi);
        }
    }
    pts.sort();
    pts.dedup();
    let mids: Vec<Rational> = pts
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / rational(2, 1))
        .collect();
    pts.extend(mids);
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn operations_are_pointwise_and_canonical(a in set(), b in set()) {
        let (m, j) = (a.meet(&b), a.join(&b));
        prop_assert!(m.is_canonical() && j.is_canonical());
        for p in probes(&[&a, &b]) {
            prop_assert_eq!(m.contains_point(&p), a.contains_point(&p) && b.contains_point(&p));
            prop_assert_eq!(j.contains_point(&p), a.contains_point(&p) || b.contains_point(&p));
        }
    }

    #[test]
    fn distributive_and_absorptive(a in set(), b in set(), c in set()) {
        prop_assert_eq!(a.meet(&b.join(&c)), a.meet(&b).join(&a.meet(&c)));
        prop_assert_eq!(a.join(&b.meet(&c)), a.join(&b).meet(&a.join(&c)));
        prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
        prop_assert_eq!(a.join(&a.meet(&b)), a);
    }

    #[test]
    fn normality_witnesses_separate((x, y) in disjoint_pair()) {
        let (u, v) = normality_witness(&x, &y).unwrap();
        prop_assert!(x.meet(&u).is_bottom());
        prop_assert!(y.meet(&v).is_bottom());
        prop_assert!(u.join(&v).is_top());
    }

    #[test]
    fn disjunctive_witnesses_fit(a in set(), b in set()) {
        match disjunctive_witness(&a, &b) {
            Ok(c) => {
                prop_assert!(!a.leq(&b));
                prop_assert!(!c.is_bottom() && c.leq(&a) && c.meet(&b).is_bottom());
            }
            Err(_) => prop_assert!(a.leq(&b)),
        }
    }

    #[test]
    fn no_partition_of_the_unit_interval(a in set(), b in set()) {
        let v = refute_partition(&a, &b);
        prop_assert!(v.is_some());
        if let Some(PartitionViolation::NotCovering { point }) = v {
            prop_assert!(!a.join(&b).contains_point(&point));
        }
    }

    #[test]
    fn display_round_trip(a in set()) {
        prop_assert_eq!(a.to_string().parse::<RationalIntervalSet>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalIntervalSet>(&json).unwrap(), a);
    }
}
