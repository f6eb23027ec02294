//! Searches for lattice embeddings and for maps between closed-set bases
//! that preserve "covers everything" and "meets in nothing", and the
//! continuous surjections both kinds of map induce.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice};
use crate::sets::PointSet;
use crate::space::{
    check_intersection_base, is_continuous, is_surjective, preimage, FiniteSpace, SetLattice,
    SpaceError,
};
use crate::wallman::{wallman_space, WallmanError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("family is not a lattice base: {0}")]
    NotABase(String),
    #[error("ultrafilter {ultrafilter} lies over {fibre}, expected one point")]
    FiberNotSingleton { ultrafilter: usize, fibre: PointSet },
    #[error("point {point} has intersection {intersection}, expected one point")]
    NonSingletonIntersection { point: usize, intersection: PointSet },
    #[error("assignment is not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error(transparent)]
    Wallman(#[from] WallmanError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// An injective map preserving meet, join and both bounds, as `map[b]`.
/// Elements are tried in index order against targets in index order, so the
/// result is the lexicographically first embedding.
pub fn find_lattice_embedding(b: &FiniteLattice, l: &FiniteLattice) -> Option<Vec<Elem>> {
    let mut order: Vec<Elem> = vec![b.bottom(), b.top()];
    order.extend(b.elements().filter(|&x| x != b.bottom() && x != b.top()));
    order.dedup();
    let mut map = vec![usize::MAX; b.size()];
    let mut used = vec![false; l.size()];
    if extend_embedding(b, l, &order, 0, &mut map, &mut used) {
        debug_assert!(is_embedding(b, l, &map));
        Some(map)
    } else {
        None
    }
}

fn extend_embedding(
    b: &FiniteLattice,
    l: &FiniteLattice,
    order: &[Elem],
    depth: usize,
    map: &mut [Elem],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    let candidates: Vec<Elem> = if x == b.bottom() {
        vec![l.bottom()]
    } else if x == b.top() {
        vec![l.top()]
    } else {
        l.elements().collect()
    };
    for y in candidates {
        // A one-element source maps bottom and top to the same place.
        if used[y] && !(x == b.top() && b.top() == b.bottom()) {
            continue;
        }
        map[x] = y;
        let consistent = order[..=depth].iter().all(|&p| {
            let (m, j) = (b.meet(x, p), b.join(x, p));
            (map[m] == usize::MAX || map[m] == l.meet(y, map[p]))
                && (map[j] == usize::MAX || map[j] == l.join(y, map[p]))
        }) && order[..depth].iter().all(|&p| {
            // Pairs whose meet or join is `x` itself.
            order[..depth].iter().all(|&q| {
                (b.meet(p, q) != x || l.meet(map[p], map[q]) == y)
                    && (b.join(p, q) != x || l.join(map[p], map[q]) == y)
            })
        });
        if consistent {
            let was_used = used[y];
            used[y] = true;
            if extend_embedding(b, l, order, depth + 1, map, used) {
                return true;
            }
            used[y] = was_used;
        }
        map[x] = usize::MAX;
    }
    false
}

/// Re-checks injectivity and preservation of the operations and bounds.
pub fn is_embedding(b: &FiniteLattice, l: &FiniteLattice, map: &[Elem]) -> bool {
    if map.len() != b.size() || map.iter().any(|&y| y >= l.size()) {
        return false;
    }
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == map.len()
        && map[b.bottom()] == l.bottom()
        && map[b.top()] == l.top()
        && b.elements().all(|x| {
            b.elements().all(|y| {
                map[b.meet(x, y)] == l.meet(map[x], map[y]) && map[b.join(x, y)] == l.join(map[x], map[y])
            })
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingSurjection {
    /// `map[p]` is the point of `X` under ultrafilter `p` of `L`.
    pub map: Vec<usize>,
    pub onto: bool,
    pub preimages_match: bool,
}

/// Given a lattice base of `X` (as sets) embedded into a distributive `L` by
/// `phi` (indexed like `base.sets`), maps each ultrafilter `p` of `L` to the
/// single point of `⋂{C : φ(C) ∈ p}` and checks `f⁻¹[C] = c(φ(C))`.
pub fn surjection_from_embedding(
    base: &SetLattice,
    phi: &[Elem],
    l: &FiniteLattice,
    x: &FiniteSpace,
) -> Result<EmbeddingSurjection, HomError> {
    if !is_embedding(&base.lattice, l, phi) {
        return Err(HomError::NotAnEmbedding("phi does not embed the base".into()));
    }
    let w = wallman_space(l)?;
    let mut map = Vec::with_capacity(w.point_count());
    for (p, u) in w.points.iter().enumerate() {
        let fibre = base
            .sets
            .iter()
            .enumerate()
            .filter(|(i, _)| u.contains(phi[*i]))
            .fold(x.full(), |acc, (_, &c)| acc.intersection(c));
        if fibre.len() != 1 {
            return Err(HomError::FiberNotSingleton { ultrafilter: p, fibre });
        }
        map.push(fibre.first().expect("singleton"));
    }
    let onto = is_surjective(&map, x);
    let preimages_match = base
        .sets
        .iter()
        .enumerate()
        .all(|(i, &c)| preimage(&map, c) == w.c(phi[i]));
    Ok(EmbeddingSurjection {
        map,
        onto,
        preimages_match,
    })
}

/// A map from a lattice base of `Y` to the closed sets of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LMorphism {
    pub source: Vec<PointSet>,
    pub image: Vec<PointSet>,
    pub y_points: usize,
    pub x_points: usize,
}

impl LMorphism {
    /// Checks the three defining conditions directly.
    pub fn is_valid(&self) -> bool {
        let (xs, ys) = (PointSet::full(self.x_points), PointSet::full(self.y_points));
        let n = self.source.len();
        let bounds = (0..n).all(|i| self.source[i].is_empty() == self.image[i].is_empty());
        let covers = (0..n).all(|i| {
            (0..n).all(|j| self.source[i].union(self.source[j]) != ys || self.image[i].union(self.image[j]) == xs)
        });
        // A family with empty intersection has images with empty
        // intersection exactly when no point lies in the images of a family
        // whose sources miss each other.
        let meets = (0..self.x_points).all(|p| {
            let hits = (0..n).filter(|&i| self.image[i].contains(p));
            !hits.fold(ys, |acc, i| acc.intersection(self.source[i])).is_empty()
        });
        bounds && covers && meets
    }

    fn check_base(y: &FiniteSpace, base: &[PointSet]) -> Result<(), HomError> {
        for s in [PointSet::EMPTY, y.full()] {
            if !base.contains(&s) {
                return Err(HomError::NotABase(format!("{s} is missing")));
            }
        }
        for &a in base {
            for &b in base {
                if !base.contains(&a.union(b)) || !base.contains(&a.intersection(b)) {
                    return Err(HomError::NotABase(format!("not closed under ∪/∩ at {a}, {b}")));
                }
            }
        }
        check_intersection_base(y, base).map_err(|e| HomError::NotABase(e.to_string()))
    }
}

/// `φ(F) = f⁻¹[F]` for a continuous map `f: X → Y`.
pub fn preimage_morphism(f: &[usize], x: &FiniteSpace, y: &FiniteSpace, base: &[PointSet]) -> LMorphism {
    let mut source = base.to_vec();
    source.sort_by_key(|s| s.size_key());
    let image = source.iter().map(|&s| preimage(f, s)).collect();
    LMorphism {
        source,
        image,
        y_points: y.point_count(),
        x_points: x.point_count(),
    }
}

/// Backtracking over the base in size order, trying closed sets of `X` in
/// their stored order; returns the first valid assignment.
pub fn find_l_morphism(y: &FiniteSpace, base: &[PointSet], x: &FiniteSpace) -> Result<Option<LMorphism>, HomError> {
    LMorphism::check_base(y, base)?;
    let mut source = base.to_vec();
    source.sort_by_key(|s| s.size_key());
    source.dedup();
    let mut search = MorphismSearch {
        source: &source,
        targets: x.closed_sets(),
        x_full: x.full(),
        y_full: y.full(),
        image: Vec::with_capacity(source.len()),
        // For each point of X, the meet of the sources whose image holds it.
        reach: vec![y.full(); x.point_count()],
    };
    if !search.extend() {
        return Ok(None);
    }
    let m = LMorphism {
        image: search.image,
        source,
        y_points: y.point_count(),
        x_points: x.point_count(),
    };
    debug_assert!(m.is_valid());
    Ok(Some(m))
}

struct MorphismSearch<'a> {
    source: &'a [PointSet],
    targets: &'a [PointSet],
    x_full: PointSet,
    y_full: PointSet,
    image: Vec<PointSet>,
    reach: Vec<PointSet>,
}

impl MorphismSearch<'_> {
    fn extend(&mut self) -> bool {
        let i = self.image.len();
        if i == self.source.len() {
            return true;
        }
        let f = self.source[i];
        for &t in self.targets {
            if t.is_empty() != f.is_empty() {
                continue;
            }
            if t.iter().any(|p| self.reach[p].intersection(f).is_empty()) {
                continue;
            }
            let covers = (0..i).all(|j| {
                self.source[j].union(f) != self.y_full || self.image[j].union(t) == self.x_full
            }) && (f != self.y_full || t == self.x_full);
            if !covers {
                continue;
            }
            let saved: Vec<PointSet> = t.iter().map(|p| self.reach[p]).collect();
            for p in t.iter() {
                self.reach[p] = self.reach[p].intersection(f);
            }
            self.image.push(t);
            if self.extend() {
                return true;
            }
            self.image.pop();
            for (p, s) in t.iter().zip(saved) {
                self.reach[p] = s;
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismSurjection {
    /// `map[x]` is the single point of `⋂{F : x ∈ φ(F)}`.
    pub map: Vec<usize>,
    pub continuous: bool,
    pub surjective: bool,
    /// `f⁻¹[F] = ⋂{φ(G) : F ⊆ Int G}` for every closed `F` of `Y`.
    pub star_identity: bool,
    pub star_failures: Vec<PointSet>,
}

pub fn surjection_from_morphism(
    m: &LMorphism,
    x: &FiniteSpace,
    y: &FiniteSpace,
) -> Result<MorphismSurjection, HomError> {
    let mut map = Vec::with_capacity(x.point_count());
    for p in 0..x.point_count() {
        let intersection = m
            .source
            .iter()
            .zip(&m.image)
            .filter(|(_, img)| img.contains(p))
            .fold(y.full(), |acc, (&f, _)| acc.intersection(f));
        if intersection.len() != 1 {
            return Err(HomError::NonSingletonIntersection { point: p, intersection });
        }
        map.push(intersection.first().expect("singleton"));
    }
    let star_failures: Vec<PointSet> = y
        .closed_sets()
        .iter()
        .copied()
        .filter(|&f| {
            let rhs = m
                .source
                .iter()
                .zip(&m.image)
                .filter(|(&g, _)| f.is_subset(y.interior(g)))
                .fold(x.full(), |acc, (_, &img)| acc.intersection(img));
            preimage(&map, f) != rhs
        })
        .collect();
    Ok(MorphismSurjection {
        continuous: is_continuous(&map, x, y),
        surjective: is_surjective(&map, y),
        star_identity: star_failures.is_empty(),
        star_failures,
        map,
    })
}

/// Every continuous surjection `X → Y`, in lexicographic order of the map.
pub fn continuous_surjections(x: &FiniteSpace, y: &FiniteSpace) -> Vec<Vec<usize>> {
    let (nx, ny) = (x.point_count(), y.point_count());
    let mut out = Vec::new();
    if ny == 0 {
        return out;
    }
    let mut map = vec![0; nx];
    loop {
        if is_surjective(&map, y) && is_continuous(&map, x, y) {
            out.push(map.clone());
        }
        let mut i = nx;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < ny {
                break;
            }
            map[i] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectionOracleReport {
    pub oracle: bool,
    pub morphism: bool,
    pub agree: bool,
    pub hausdorff: bool,
}

/// Exhaustive map enumeration against the morphism search.
pub fn oracle_surjection_equivalence(
    x: &FiniteSpace,
    y: &FiniteSpace,
    base: &[PointSet],
) -> Result<SurjectionOracleReport, HomError> {
    let oracle = !continuous_surjections(x, y).is_empty();
    let morphism = find_l_morphism(y, base, x)?.is_some();
    Ok(SurjectionOracleReport {
        oracle,
        morphism,
        agree: oracle == morphism,
        hausdorff: x.is_discrete() && y.is_discrete(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::closed_set_lattice;

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn embeddings() {
        let two = FiniteLattice::chain(2);
        assert_eq!(find_lattice_embedding(&two, &FiniteLattice::power_set(3)), Some(vec![0, 7]));
        let m = find_lattice_embedding(&FiniteLattice::chain(3), &FiniteLattice::power_set(2)).unwrap();
        assert_eq!(m, vec![0, 1, 3]);
        assert_eq!(find_lattice_embedding(&FiniteLattice::power_set(2), &FiniteLattice::chain(3)), None);
        assert_eq!(find_lattice_embedding(&FiniteLattice::chain(1), &FiniteLattice::chain(1)), Some(vec![0]));
        assert_eq!(find_lattice_embedding(&FiniteLattice::diamond(), &FiniteLattice::power_set(3)), None);
    }

    #[test]
    fn surjection_from_identity_embedding() {
        let x = FiniteSpace::discrete(2);
        let hyp = closed_set_lattice(&x);
        let phi: Vec<Elem> = (0..4).collect();
        let s = surjection_from_embedding(&hyp, &phi, &FiniteLattice::power_set(2), &x).unwrap();
        assert_eq!(s.map, vec![0, 1]);
        assert!(s.onto && s.preimages_match);
    }

    #[test]
    fn surjection_from_doubling_embedding() {
        // φ(C) = C ∪ {3} when 2 ∈ C, into the subsets of four points.
        let x = FiniteSpace::discrete(3);
        let hyp = closed_set_lattice(&x);
        let l = FiniteLattice::power_set(4);
        let phi: Vec<Elem> = hyp
            .sets
            .iter()
            .map(|c| {
                let img = if c.contains(2) { c.with(3) } else { *c };
                img.0 as usize
            })
            .collect();
        let s = surjection_from_embedding(&hyp, &phi, &l, &x).unwrap();
        assert_eq!(s.map, vec![0, 1, 2, 2]);
        assert!(s.onto && s.preimages_match);
    }

    #[test]
    fn one_point_target() {
        let x = FiniteSpace::discrete(1);
        let hyp = closed_set_lattice(&x);
        let s = surjection_from_embedding(&hyp, &[0, 3], &FiniteLattice::power_set(2), &x).unwrap();
        assert_eq!(s.map, vec![0, 0]);
    }

    #[test]
    fn morphism_search_examples() {
        let d2 = FiniteSpace::discrete(2);
        let d3 = FiniteSpace::discrete(3);
        let base2 = d2.closed_sets().to_vec();
        let m = find_l_morphism(&d2, &base2, &d2).unwrap().unwrap();
        let s = surjection_from_morphism(&m, &d2, &d2).unwrap();
        assert!(s.continuous && s.surjective && s.star_identity);
        assert_eq!(s.map, vec![0, 1]);

        let base3 = d3.closed_sets().to_vec();
        assert_eq!(find_l_morphism(&d3, &base3, &d2).unwrap(), None);

        let m = find_l_morphism(&d2, &base2, &d3).unwrap().unwrap();
        let s = surjection_from_morphism(&m, &d3, &d2).unwrap();
        assert!(s.continuous && s.surjective && s.star_identity);
    }

    #[test]
    fn preimage_round_trip() {
        let (d3, d2) = (FiniteSpace::discrete(3), FiniteSpace::discrete(2));
        for f in continuous_surjections(&d3, &d2) {
            let m = preimage_morphism(&f, &d3, &d2, d2.closed_sets());
            assert!(m.is_valid());
            assert_eq!(surjection_from_morphism(&m, &d3, &d2).unwrap().map, f);
        }
    }

    #[test]
    fn oracle_counts() {
        let d2 = FiniteSpace::discrete(2);
        let d3 = FiniteSpace::discrete(3);
        let r = oracle_surjection_equivalence(&d2, &d2, d2.closed_sets()).unwrap();
        assert!(r.oracle && r.morphism && r.agree);
        let r = oracle_surjection_equivalence(&d2, &d3, d3.closed_sets()).unwrap();
        assert!(!r.oracle && !r.morphism && r.agree);
        assert_eq!(continuous_surjections(&d3, &d2).len(), 6);
    }

    #[test]
    fn bases_are_checked() {
        let d2 = FiniteSpace::discrete(2);
        let not_base = vec![PointSet::EMPTY, ps(&[0]), ps(&[0, 1])];
        assert!(matches!(
            find_l_morphism(&d2, &not_base, &d2),
            Err(HomError::NotABase(_))
        ));
    }
}
