use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{Elem, FiniteLattice};

const REFINEMENT_ROUNDS: usize = 3;

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Per-element colours from iterated refinement over the cover relation.
/// Isomorphisms preserve colours, so equal colour multisets are necessary
/// for isomorphism.
pub(crate) fn element_colours(l: &FiniteLattice) -> Vec<u64> {
    let n = l.size();
    let ups: Vec<Vec<Elem>> = l.elements().map(|a| l.upper_covers(a)).collect();
    let downs: Vec<Vec<Elem>> = l.elements().map(|a| l.lower_covers(a)).collect();
    let mut colour: Vec<u64> = l
        .elements()
        .map(|a| {
            let below = l.elements().filter(|&b| l.leq(b, a)).count();
            let above = l.elements().filter(|&b| l.leq(a, b)).count();
            hash_of(&(below, above, ups[a].len(), downs[a].len()))
        })
        .collect();
    for _ in 0..REFINEMENT_ROUNDS {
        let next: Vec<u64> = (0..n)
            .map(|a| {
                let mut up: Vec<u64> = ups[a].iter().map(|&b| colour[b]).collect();
                let mut down: Vec<u64> = downs[a].iter().map(|&b| colour[b]).collect();
                up.sort_unstable();
                down.sort_unstable();
                hash_of(&(colour[a], up, down))
            })
            .collect();
        colour = next;
    }
    colour
}

/// An isomorphism invariant: size plus the sorted refined colours.
pub fn invariant_signature(l: &FiniteLattice) -> Vec<u64> {
    let mut c = element_colours(l);
    c.sort_unstable();
    c.insert(0, l.size() as u64);
    c
}

/// An order isomorphism `a ↦ map[a]` from `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    let ca = element_colours(a);
    let cb = element_colours(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let order = search_order(a);
    let mut map = vec![usize::MAX; a.size()];
    let mut used = vec![false; b.size()];
    if extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Breadth-first order over covers from the bottom, so each element after
/// the first is adjacent to an earlier one.
fn search_order(l: &FiniteLattice) -> Vec<Elem> {
    let mut seen = vec![false; l.size()];
    let mut order = vec![l.bottom()];
    seen[l.bottom()] = true;
    let mut i = 0;
    while i < order.len() {
        for c in l.upper_covers(order[i]) {
            if !seen[c] {
                seen[c] = true;
                order.push(c);
            }
        }
        i += 1;
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &FiniteLattice,
    b: &FiniteLattice,
    ca: &[u64],
    cb: &[u64],
    order: &[Elem],
    depth: usize,
    map: &mut [Elem],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in b.elements() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&p| {
            let q = map[p];
            a.leq(x, p) == b.leq(y, q) && a.leq(p, x) == b.leq(q, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}
