//! Ultrafilters and the Wallman representation of finite distributive
//! lattices, including the Stone space of a finite Boolean algebra.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{is_boolean, is_disjunctive, is_distributive, is_normal, Elem, FiniteLattice};
use crate::sets::{PointSet, MAX_POINTS};
use crate::space::{
    closed_set_lattice, is_continuous, is_surjective, FiniteSpace, SetLattice, SpaceError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallmanError {
    #[error("lattice is not distributive: witness {0:?}")]
    NotDistributive([Elem; 3]),
    #[error("lattice is not a Boolean algebra")]
    NotBoolean,
    #[error("{0} ultrafilters exceed the {1}-point limit")]
    TooManyPoints(usize, usize),
    #[error("family is not a base: {0}")]
    NotABase(String),
    #[error("ultrafilter {ultrafilter} has fibre {fibre}, expected a single point")]
    NonSingletonFiber { ultrafilter: usize, fibre: PointSet },
    #[error("base set of {element} is not clopen")]
    NotClopen { element: Elem },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A proper filter, stored as its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter {
    pub members: Vec<Elem>,
}

impl Filter {
    pub fn contains(&self, a: Elem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }
}

/// Every proper filter. In a finite lattice these are the principal filters
/// `↑a` with `a` above the bottom, sorted by member list.
pub fn filters(l: &FiniteLattice) -> Vec<Filter> {
    let mut out: Vec<Filter> = l
        .elements()
        .filter(|&a| a != l.bottom())
        .map(|a| Filter {
            members: l.elements().filter(|&b| l.leq(a, b)).collect(),
        })
        .collect();
    out.sort();
    out
}

/// Maximal members of the filter family.
pub fn ultrafilters(l: &FiniteLattice) -> Vec<Filter> {
    let all = filters(l);
    all.iter()
        .filter(|f| !all.iter().any(|g| g != *f && f.is_subset(g)))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallmanSpace {
    pub points: Vec<Filter>,
    /// `base[a]` is `c(a)`, the ultrafilters containing `a`.
    pub base: Vec<PointSet>,
}

impl WallmanSpace {
    pub fn c(&self, a: Elem) -> PointSet {
        self.base[a]
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// The finite space whose closed sets are the base sets.
    pub fn space(&self) -> FiniteSpace {
        FiniteSpace::new(self.points.len(), self.base.clone())
            .expect("base of a distributive lattice is a closed-set family")
    }
}

fn require_distributive(l: &FiniteLattice) -> Result<(), WallmanError> {
    match is_distributive(l).witness {
        Some(w) => Err(WallmanError::NotDistributive(w)),
        None => Ok(()),
    }
}

pub fn wallman_space(l: &FiniteLattice) -> Result<WallmanSpace, WallmanError> {
    require_distributive(l)?;
    let points = ultrafilters(l);
    if points.len() >= MAX_POINTS {
        return Err(WallmanError::TooManyPoints(points.len(), MAX_POINTS - 1));
    }
    let base = l
        .elements()
        .map(|a| PointSet::from_points((0..points.len()).filter(|&u| points[u].contains(a))))
        .collect();
    Ok(WallmanSpace { points, base })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalHomReport {
    pub is_injective: bool,
    pub is_disjunctive: bool,
    pub agree: bool,
}

/// Compares injectivity of `a ↦ c(a)` with disjunctivity.
pub fn canonical_hom_report(l: &FiniteLattice) -> Result<CanonicalHomReport, WallmanError> {
    let w = wallman_space(l)?;
    let mut images = w.base.clone();
    images.sort_by_key(|s| s.size_key());
    images.dedup();
    let is_injective = images.len() == l.size();
    let is_disjunctive = is_disjunctive(l).holds;
    Ok(CanonicalHomReport {
        is_injective,
        is_disjunctive,
        agree: is_injective == is_disjunctive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HausdorffNormalReport {
    pub wl_hausdorff: bool,
    pub l_normal: bool,
}

/// A finite space is Hausdorff exactly when it is discrete.
pub fn hausdorff_normal_report(l: &FiniteLattice) -> Result<HausdorffNormalReport, WallmanError> {
    let w = wallman_space(l)?;
    Ok(HausdorffNormalReport {
        wl_hausdorff: w.space().is_discrete(),
        l_normal: is_normal(l).holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfRepresentation {
    pub holds: bool,
    /// `map[u]` is the single point in the intersection of ultrafilter `u`,
    /// when every such intersection is a singleton.
    pub map: Option<Vec<usize>>,
    pub diagnostic: Option<String>,
}

/// Whether `X` is homeomorphic to the Wallman space of its closed sets via
/// `u ↦` the unique point of `⋂u`.
pub fn self_representation_check(x: &FiniteSpace) -> SelfRepresentation {
    let hyp = closed_set_lattice(x);
    let w = wallman_space(&hyp.lattice).expect("closed sets form a distributive lattice");
    let fail = |msg: String, map| SelfRepresentation {
        holds: false,
        map,
        diagnostic: Some(msg),
    };
    let mut map = Vec::new();
    for (u, filter) in w.points.iter().enumerate() {
        let fibre = filter
            .members
            .iter()
            .fold(x.full(), |acc, &a| acc.intersection(hyp.sets[a]));
        if fibre.len() != 1 {
            return fail(format!("ultrafilter {u} meets in {fibre}"), None);
        }
        map.push(fibre.first().expect("singleton"));
    }
    if map.len() != x.point_count() || !is_surjective(&map, x) {
        return fail(
            format!(
                "{} ultrafilters for {} points",
                map.len(),
                x.point_count()
            ),
            Some(map),
        );
    }
    for (a, &set) in hyp.sets.iter().enumerate() {
        let image = PointSet::from_points(w.c(a).iter().map(|u| map[u]));
        if image != set {
            return fail(format!("c({set}) maps onto {image}"), Some(map));
        }
    }
    SelfRepresentation {
        holds: true,
        map: Some(map),
        diagnostic: None,
    }
}

/// The Wallman space of a finite Boolean algebra, with every base set
/// checked to be clopen.
pub fn stone_space(b: &FiniteLattice) -> Result<WallmanSpace, WallmanError> {
    if !is_boolean(b) {
        return Err(WallmanError::NotBoolean);
    }
    let w = wallman_space(b)?;
    let all = PointSet::full(w.point_count());
    for a in b.elements() {
        let a_prime = b.complements(a)[0];
        if w.c(a).complement(w.point_count()) != w.c(a_prime) || w.c(a).union(w.c(a_prime)) != all {
            return Err(WallmanError::NotClopen { element: a });
        }
    }
    debug_assert_eq!(w.point_count(), b.atoms().len());
    Ok(w)
}

/// The least family of subsets of `0..universe_size` containing `family` and
/// closed under complement, intersection and union. Computed from the atoms
/// of the algebra: points with the same membership pattern across `family`.
pub fn boolean_subalgebra_generated(universe_size: usize, family: &[PointSet]) -> SetLattice {
    let mut blocks: Vec<PointSet> = Vec::new();
    let mut signatures: Vec<Vec<bool>> = Vec::new();
    for p in 0..universe_size {
        let sig: Vec<bool> = family.iter().map(|s| s.contains(p)).collect();
        match signatures.iter().position(|s| *s == sig) {
            Some(i) => blocks[i] = blocks[i].with(p),
            None => {
                signatures.push(sig);
                blocks.push(PointSet::singleton(p));
            }
        }
    }
    let sets = (0u64..1 << blocks.len())
        .map(|choice| {
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .fold(PointSet::EMPTY, |acc, (_, &b)| acc.union(b))
        })
        .collect();
    SetLattice::from_sets(sets)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexandroffPreimage {
    pub y: FiniteSpace,
    /// `map[u]` is the point of `X` picked out by ultrafilter `u`.
    pub map: Vec<usize>,
    pub algebra: Vec<PointSet>,
}

/// The Stone space of the Boolean algebra generated by `base`, mapped onto
/// `X`. The generated algebra must contain every closed set of `X`.
pub fn alexandroff_preimage(x: &FiniteSpace, base: &[PointSet]) -> Result<AlexandroffPreimage, WallmanError> {
    for &b in base {
        if !b.is_subset(x.full()) {
            return Err(WallmanError::NotABase(format!("{b} mentions points outside X")));
        }
    }
    let algebra = boolean_subalgebra_generated(x.point_count(), base);
    if let Some(&c) = x.closed_sets().iter().find(|c| algebra.index_of(**c).is_none()) {
        return Err(WallmanError::NotABase(format!(
            "closed set {c} is not in the generated algebra"
        )));
    }
    let w = stone_space(&algebra.lattice)?;
    let mut map = Vec::with_capacity(w.point_count());
    for (u, filter) in w.points.iter().enumerate() {
        let fibre = filter
            .members
            .iter()
            .fold(x.full(), |acc, &a| acc.intersection(x.closure(algebra.sets[a])));
        if fibre.len() != 1 {
            return Err(WallmanError::NonSingletonFiber { ultrafilter: u, fibre });
        }
        map.push(fibre.first().expect("singleton"));
    }
    let y = w.space();
    if !is_continuous(&map, &y, x) {
        return Err(SpaceError::NotContinuous(x.full()).into());
    }
    if let Some(q) = (0..x.point_count()).find(|q| !map.contains(q)) {
        return Err(SpaceError::NotSurjective(q).into());
    }
    Ok(AlexandroffPreimage {
        y,
        map,
        algebra: algebra.sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn ultrafilters_of_small_lattices() {
        assert_eq!(
            ultrafilters(&FiniteLattice::chain(2)),
            vec![Filter { members: vec![1] }]
        );
        // 2^{a,b}: index 1 = {a}, 2 = {b}, 3 = top.
        assert_eq!(
            ultrafilters(&FiniteLattice::power_set(2)),
            vec![Filter { members: vec![1, 3] }, Filter { members: vec![2, 3] }]
        );
        let c3 = FiniteLattice::chain(3);
        assert_eq!(filters(&c3).len(), 2);
        assert_eq!(ultrafilters(&c3), vec![Filter { members: vec![1, 2] }]);
    }

    #[test]
    fn wallman_spaces() {
        let w = wallman_space(&FiniteLattice::power_set(3)).unwrap();
        assert_eq!(w.point_count(), 3);
        assert!(w.space().is_discrete());
        assert_eq!(wallman_space(&FiniteLattice::chain(3)).unwrap().point_count(), 1);
        assert!(matches!(
            wallman_space(&FiniteLattice::diamond()),
            Err(WallmanError::NotDistributive(_))
        ));
    }

    #[test]
    fn canonical_hom() {
        let r = canonical_hom_report(&FiniteLattice::chain(3)).unwrap();
        assert_eq!((r.is_injective, r.is_disjunctive, r.agree), (false, false, true));
        let r = canonical_hom_report(&FiniteLattice::power_set(3)).unwrap();
        assert_eq!((r.is_injective, r.is_disjunctive, r.agree), (true, true, true));
        let r = canonical_hom_report(&FiniteLattice::chain(2)).unwrap();
        assert!(r.is_injective && r.is_disjunctive);
    }

    #[test]
    fn hausdorff_and_normal() {
        let r = hausdorff_normal_report(&FiniteLattice::power_set(2)).unwrap();
        assert!(r.wl_hausdorff && r.l_normal);
        let r = hausdorff_normal_report(&FiniteLattice::chain(3)).unwrap();
        assert!(r.wl_hausdorff && r.l_normal);
    }

    #[test]
    fn self_representation() {
        assert!(self_representation_check(&FiniteSpace::discrete(3)).holds);
        assert!(self_representation_check(&FiniteSpace::discrete(1)).holds);
        let s = self_representation_check(&FiniteSpace::sierpinski());
        assert!(!s.holds);
        assert!(s.diagnostic.is_some());
    }

    #[test]
    fn stone_spaces() {
        assert_eq!(stone_space(&FiniteLattice::power_set(2)).unwrap().point_count(), 2);
        assert_eq!(stone_space(&FiniteLattice::power_set(3)).unwrap().point_count(), 3);
        assert_eq!(stone_space(&FiniteLattice::chain(2)).unwrap().point_count(), 1);
        assert_eq!(stone_space(&FiniteLattice::chain(3)), Err(WallmanError::NotBoolean));
    }

    #[test]
    fn generated_subalgebras() {
        assert_eq!(
            boolean_subalgebra_generated(2, &[]).sets,
            vec![PointSet::EMPTY, ps(&[0, 1])]
        );
        assert_eq!(boolean_subalgebra_generated(2, &[ps(&[0])]).sets.len(), 4);
        assert_eq!(
            boolean_subalgebra_generated(3, &[ps(&[0, 1])]).sets,
            vec![PointSet::EMPTY, ps(&[2]), ps(&[0, 1]), ps(&[0, 1, 2])]
        );
    }

    #[test]
    fn alexandroff_examples() {
        let x = FiniteSpace::discrete(3);
        let singles: Vec<PointSet> = (0..3).map(PointSet::singleton).collect();
        let r = alexandroff_preimage(&x, &singles).unwrap();
        assert_eq!(r.y.point_count(), 3);
        let mut m = r.map.clone();
        m.sort();
        assert_eq!(m, vec![0, 1, 2]);

        let one = FiniteSpace::discrete(1);
        let r = alexandroff_preimage(&one, &[]).unwrap();
        assert_eq!(r.map, vec![0]);

        let x4 = FiniteSpace::discrete(4);
        let r = alexandroff_preimage(&x4, &[ps(&[0, 1]), ps(&[0]), ps(&[2])]).unwrap();
        assert_eq!(r.y.point_count(), 4);
        assert_eq!(r.algebra.len(), 16);

        assert!(matches!(
            alexandroff_preimage(&x4, &[ps(&[0, 1])]),
            Err(WallmanError::NotABase(_))
        ));
    }

    #[test]
    fn non_separating_base_has_fat_fibres() {
        // Indiscrete pair: only ∅ and X are closed, so the trivial algebra
        // contains every closed set but cannot tell the points apart.
        let x = FiniteSpace::new(2, vec![PointSet::EMPTY, ps(&[0, 1])]).unwrap();
        assert!(matches!(
            alexandroff_preimage(&x, &[]),
            Err(WallmanError::NonSingletonFiber { .. })
        ));
    }
}
