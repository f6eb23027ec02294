//! All finite lattices of a given size, one per isomorphism class.
//!
//! Removing an atom from a lattice with at least three elements leaves a
//! lattice, so every lattice of size `n + 1` is a lattice of size `n` with
//! one new atom added below a suitable up-set `U`. The new atom `a` yields a
//! lattice exactly when
//!
//! * `x∧y ∈ U` or `x∧y = 0` for all `x, y ∈ U` (meets stay defined), and
//! * `U ∩ ↑x` has a least element for every nonzero `x` (joins with `a`).
//!
//! Candidates are deduplicated by refined colour signature followed by an
//! explicit isomorphism test. Generation order is deterministic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::iso::{find_isomorphism, invariant_signature};
use super::{Elem, FiniteLattice};

type Level = Arc<Vec<FiniteLattice>>;

fn cache() -> &'static Mutex<Vec<Level>> {
    static CACHE: OnceLock<Mutex<Vec<Level>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Every lattice with exactly `n ≥ 1` elements up to isomorphism, with
/// bottom at index 0 and top at index `n - 1`.
pub fn lattices_of_size(n: usize) -> Level {
    assert!(n >= 1, "lattices have at least one element");
    let mut levels = cache().lock().unwrap_or_else(|e| e.into_inner());
    while levels.len() < n {
        let next = match levels.len() {
            0 => vec![FiniteLattice::chain(1)],
            1 => vec![FiniteLattice::chain(2)],
            k => extend_level(&levels[k - 1]),
        };
        levels.push(Arc::new(next));
    }
    levels[n - 1].clone()
}

/// All lattices with `1..=max_size` elements, smallest first.
pub fn all_lattices(max_size: usize) -> Vec<FiniteLattice> {
    (1..=max_size)
        .flat_map(|n| lattices_of_size(n).iter().cloned().collect::<Vec<_>>())
        .collect()
}

fn extend_level(parents: &[FiniteLattice]) -> Vec<FiniteLattice> {
    let candidates: Vec<Vec<(Vec<u64>, FiniteLattice)>> = parents
        .par_iter()
        .map(|p| {
            atom_extensions(p)
                .into_iter()
                .map(|l| (invariant_signature(&l), l))
                .collect()
        })
        .collect();
    let mut kept: Vec<FiniteLattice> = Vec::new();
    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for (sig, l) in candidates.into_iter().flatten() {
        let bucket = buckets.entry(sig).or_default();
        if bucket
            .iter()
            .any(|&i| find_isomorphism(&kept[i], &l).is_some())
        {
            continue;
        }
        bucket.push(kept.len());
        kept.push(l);
    }
    kept
}

/// Up-sets of `L∖{0}` that contain the top, listed top-down.
fn upsets(l: &FiniteLattice) -> Vec<Vec<bool>> {
    let mut order: Vec<Elem> = l.elements().filter(|&x| x != l.bottom()).collect();
    order.sort_by_key(|&x| {
        let below = l.elements().filter(|&y| l.leq(y, x)).count();
        (std::cmp::Reverse(below), x)
    });
    let covers: Vec<Vec<Elem>> = l.elements().map(|x| l.upper_covers(x)).collect();
    let mut out = Vec::new();
    let mut member = vec![false; l.size()];
    fn go(
        i: usize,
        order: &[Elem],
        covers: &[Vec<Elem>],
        member: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
    ) {
        if i == order.len() {
            out.push(member.clone());
            return;
        }
        let x = order[i];
        if i > 0 {
            go(i + 1, order, covers, member, out);
        }
        if covers[x].iter().all(|&c| member[c]) {
            member[x] = true;
            go(i + 1, order, covers, member, out);
            member[x] = false;
        }
    }
    go(0, &order, &covers, &mut member, &mut out);
    out
}

fn atom_extensions(l: &FiniteLattice) -> Vec<FiniteLattice> {
    let z = l.bottom();
    let mut result = Vec::new();
    for up in upsets(l) {
        let meets_ok = l.elements().filter(|&x| up[x]).all(|x| {
            l.elements()
                .filter(|&y| up[y])
                .all(|y| {
                    let m = l.meet(x, y);
                    up[m] || m == z
                })
        });
        if !meets_ok {
            continue;
        }
        let mut joins = vec![0; l.size()];
        let mut joins_ok = true;
        for x in l.elements() {
            if x == z {
                continue;
            }
            let bounds: Vec<Elem> = l.elements().filter(|&u| up[u] && l.leq(x, u)).collect();
            match bounds.iter().find(|&&b| bounds.iter().all(|&c| l.leq(b, c))) {
                Some(&b) => joins[x] = b,
                None => {
                    joins_ok = false;
                    break;
                }
            }
        }
        if joins_ok {
            result.push(add_atom(l, &up, &joins));
        }
    }
    result
}

/// Appends the new atom as index `n`, then relabels so that indices follow
/// a linear extension (bottom first, top last).
fn add_atom(l: &FiniteLattice, up: &[bool], joins_with_atom: &[Elem]) -> FiniteLattice {
    let n = l.size();
    let a = n;
    let m = n + 1;
    let z = l.bottom();
    let mut meet = vec![0; m * m];
    let mut join = vec![0; m * m];
    for x in 0..n {
        for y in 0..n {
            let old = l.meet(x, y);
            meet[x * m + y] = if up[x] && up[y] && old == z { a } else { old };
            join[x * m + y] = l.join(x, y);
        }
    }
    for x in 0..m {
        let (mx, jx) = if x == a {
            (a, a)
        } else if x == z {
            (z, a)
        } else {
            (if up[x] { a } else { z }, joins_with_atom[x])
        };
        meet[a * m + x] = mx;
        meet[x * m + a] = mx;
        join[a * m + x] = jx;
        join[x * m + a] = jx;
    }
    let raw = FiniteLattice {
        names: (0..m).map(|i| i.to_string()).collect(),
        meet,
        join,
        bottom: z,
        top: l.top(),
    };
    debug_assert!(raw.law_violations().is_empty());
    let mut order: Vec<Elem> = (0..m).collect();
    order.sort_by_key(|&x| ((0..m).filter(|&y| raw.leq(y, x)).count(), x));
    let mut perm = vec![0; m];
    for (pos, &x) in order.iter().enumerate() {
        perm[x] = pos;
    }
    let relabelled = raw.permuted(&perm);
    let names = (0..m).map(|i| i.to_string()).collect();
    relabelled.with_names(names)
}
