//! Finite topological spaces stored by their closed sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FiniteLattice, Verdict};
use crate::sets::{PointSet, MAX_POINTS};

/// Continua enumeration walks every closed set; spaces are capped here.
pub const DEFAULT_POINT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("space has {0} points, limit is {1}")]
    TooLarge(usize, usize),
    #[error("closed set {0} mentions points outside the space")]
    PointOutOfRange(PointSet),
    #[error("closed sets must include the empty set and the whole space")]
    MissingBounds,
    #[error("closed sets not closed under union: {0} ∪ {1}")]
    NotUnionClosed(PointSet, PointSet),
    #[error("closed sets not closed under intersection: {0} ∩ {1}")]
    NotIntersectionClosed(PointSet, PointSet),
    #[error("{0} is not closed")]
    NotClosed(PointSet),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("map is not continuous: preimage of {0} is not closed")]
    NotContinuous(PointSet),
    #[error("map is not surjective: {0} is missed")]
    NotSurjective(usize),
    #[error("map has {0} entries for a {1}-point domain or hits a point outside the range")]
    BadMap(usize, usize),
    #[error("family is not a base: {0}")]
    NotABase(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSpace {
    points: usize,
    closed: Vec<PointSet>,
}

impl FiniteSpace {
    /// Validates the closed-set axioms. The family is stored sorted by
    /// size, then mask, with duplicates removed.
    pub fn new(points: usize, closed: Vec<PointSet>) -> Result<Self, SpaceError> {
        if points > MAX_POINTS - 1 {
            return Err(SpaceError::TooLarge(points, MAX_POINTS - 1));
        }
        let full = PointSet::full(points);
        let mut closed = closed;
        for &c in &closed {
            if !c.is_subset(full) {
                return Err(SpaceError::PointOutOfRange(c));
            }
        }
        closed.sort_by_key(|s| s.size_key());
        closed.dedup();
        if !closed.contains(&PointSet::EMPTY) || !closed.contains(&full) {
            return Err(SpaceError::MissingBounds);
        }
        for &a in &closed {
            for &b in &closed {
                if closed.binary_search_by_key(&a.union(b).size_key(), |s| s.size_key()).is_err() {
                    return Err(SpaceError::NotUnionClosed(a, b));
                }
                if closed
                    .binary_search_by_key(&a.intersection(b).size_key(), |s| s.size_key())
                    .is_err()
                {
                    return Err(SpaceError::NotIntersectionClosed(a, b));
                }
            }
        }
        Ok(FiniteSpace { points, closed })
    }

    /// The topology whose closed sets are generated by `family` under
    /// finite unions and intersections.
    pub fn generated_by(points: usize, family: &[PointSet]) -> Result<Self, SpaceError> {
        let mut sets = vec![PointSet::EMPTY, PointSet::full(points)];
        sets.extend_from_slice(family);
        Self::new(points, close_under_lattice_ops(sets))
    }

    pub fn discrete(points: usize) -> Self {
        let sets = crate::sets::all_subsets(points).collect();
        Self::new(points, sets).expect("power set is a topology")
    }

    /// Two points `a = 0`, `b = 1` with closed sets `∅, {b}, X`.
    pub fn sierpinski() -> Self {
        Self::new(2, vec![PointSet::EMPTY, PointSet::singleton(1), PointSet::full(2)])
            .expect("valid")
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.points)
    }

    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.closed
            .binary_search_by_key(&s.size_key(), |c| c.size_key())
            .is_ok()
    }

    /// Least closed superset.
    pub fn closure(&self, s: PointSet) -> PointSet {
        self.closed
            .iter()
            .filter(|c| s.is_subset(**c))
            .fold(self.full(), |acc, &c| acc.intersection(c))
    }

    /// Greatest open subset: complement of the closure of the complement.
    pub fn interior(&self, s: PointSet) -> PointSet {
        self.closure(s.complement(self.points))
            .complement(self.points)
    }

    pub fn is_t1(&self) -> bool {
        (0..self.points).all(|p| self.is_closed(PointSet::singleton(p)))
    }

    pub fn is_discrete(&self) -> bool {
        self.closed.len() == 1usize << self.points
    }

    fn require_closed(&self, s: PointSet) -> Result<(), SpaceError> {
        if self.is_closed(s) {
            Ok(())
        } else {
            Err(SpaceError::NotClosed(s))
        }
    }

    fn require_cap(&self, cap: usize) -> Result<(), SpaceError> {
        if self.points > cap {
            Err(SpaceError::TooLarge(self.points, cap))
        } else {
            Ok(())
        }
    }
}

/// Closes a family of sets under pairwise union and intersection.
pub fn close_under_lattice_ops(mut sets: Vec<PointSet>) -> Vec<PointSet> {
    sets.sort_by_key(|s| s.size_key());
    sets.dedup();
    loop {
        let mut added = Vec::new();
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                for c in [a.union(b), a.intersection(b)] {
                    if !sets.contains(&c) && !added.contains(&c) {
                        added.push(c);
                    }
                }
            }
        }
        if added.is_empty() {
            return sets;
        }
        sets.extend(added);
        sets.sort_by_key(|s| s.size_key());
    }
}

/// A lattice of sets together with the sets its elements stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetLattice {
    pub sets: Vec<PointSet>,
    pub lattice: FiniteLattice,
}

impl SetLattice {
    /// `sets` must be closed under union and intersection.
    pub fn from_sets(mut sets: Vec<PointSet>) -> Self {
        sets.sort_by_key(|s| s.size_key());
        sets.dedup();
        let lattice = FiniteLattice::from_set_family(&sets);
        SetLattice { sets, lattice }
    }

    pub fn index_of(&self, s: PointSet) -> Option<usize> {
        self.sets.iter().position(|&t| t == s)
    }
}

/// The closed sets ordered by inclusion.
pub fn closed_set_lattice(x: &FiniteSpace) -> SetLattice {
    SetLattice::from_sets(x.closed.clone())
}

/// `s` admits no split into two disjoint nonempty relatively closed pieces.
pub fn is_connected(x: &FiniteSpace, s: PointSet) -> Result<bool, SpaceError> {
    x.require_closed(s)?;
    Ok(splitting(x, s).is_none())
}

fn splitting(x: &FiniteSpace, s: PointSet) -> Option<(PointSet, PointSet)> {
    x.closed
        .iter()
        .filter(|a| !a.is_empty() && **a != s && a.is_subset(s))
        .map(|&a| (a, s.difference(a)))
        .find(|&(_, b)| x.is_closed(b))
}

/// A nonempty closed connected subset of a host space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ContinuumSet(PointSet);

impl ContinuumSet {
    pub fn points(self) -> PointSet {
        self.0
    }
}

/// All continua, in the stored closed-set order.
pub fn continua(x: &FiniteSpace) -> Result<Vec<ContinuumSet>, SpaceError> {
    x.require_cap(DEFAULT_POINT_CAP)?;
    Ok(x.closed
        .iter()
        .filter(|s| !s.is_empty() && splitting(x, **s).is_none())
        .map(|&s| ContinuumSet(s))
        .collect())
}

/// Whenever two continua meet, one contains the other. Fails with the
/// first offending pair.
pub fn is_hereditarily_indecomposable(x: &FiniteSpace) -> Result<Verdict<[PointSet; 2]>, SpaceError> {
    let cs = continua(x)?;
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            let (a, b) = (a.0, b.0);
            if !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a) {
                return Ok(Verdict::no([a, b]));
            }
        }
    }
    Ok(Verdict::yes())
}

/// Which identities a set-level chicane must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChicaneForm {
    /// `C ⊆ X0`, `D ⊆ X2`, `X0∩X1∩G = ∅`, `X0∩X2 = ∅`, `X1∩X2∩F = ∅`, cover.
    ZigZag,
    /// The lattice identities read in sets: `C∩(X1∪X2) = ∅`,
    /// `D∩(X0∪X1) = ∅`, `X0∩X2 = ∅`, `X0∩X1∩G = ∅`, `X1∩X2∩F = ∅`, cover.
    Lattice,
}

/// Four closed sets `(C, D, F, G)` with `C∩D = C∩F = D∩G = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SetFoursome {
    pub c: PointSet,
    pub d: PointSet,
    pub f: PointSet,
    pub g: PointSet,
}

impl SetFoursome {
    pub fn is_pliand(&self) -> bool {
        self.c.is_disjoint(self.d) && self.c.is_disjoint(self.f) && self.d.is_disjoint(self.g)
    }
}

pub fn is_set_chicane(x: &FiniteSpace, p: &SetFoursome, t: [PointSet; 3], form: ChicaneForm) -> bool {
    let [x0, x1, x2] = t;
    let common = x0.union(x1).union(x2) == x.full()
        && x0.is_disjoint(x2)
        && x0.intersection(x1).is_disjoint(p.g)
        && x1.intersection(x2).is_disjoint(p.f);
    common
        && match form {
            ChicaneForm::ZigZag => p.c.is_subset(x0) && p.d.is_subset(x2),
            ChicaneForm::Lattice => {
                p.c.is_disjoint(x1.union(x2)) && p.d.is_disjoint(x0.union(x1))
            }
        }
}

/// First closed triple (in closed-set order) that is a chicane of the given form.
pub fn find_set_chicane(x: &FiniteSpace, p: &SetFoursome, form: ChicaneForm) -> Option<[PointSet; 3]> {
    let cl = &x.closed;
    for &x0 in cl.iter().filter(|s| p.c.is_subset(**s)) {
        for &x2 in cl.iter().filter(|s| p.d.is_subset(**s) && x0.is_disjoint(**s)) {
            for &x1 in cl {
                let t = [x0, x1, x2];
                if is_set_chicane(x, p, t, form) {
                    return Some(t);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrookednessEntry {
    pub f: PointSet,
    pub g: PointSet,
    pub chicane: Option<[PointSet; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrookednessReport {
    pub holds: bool,
    pub table: Vec<CrookednessEntry>,
}

/// For every closed `F, G` with `C∩F = D∩G = ∅`, searches a zig-zag chicane.
pub fn is_crooked_between(x: &FiniteSpace, c: PointSet, d: PointSet) -> Result<CrookednessReport, SpaceError> {
    x.require_closed(c)?;
    x.require_closed(d)?;
    if c.is_empty() || d.is_empty() || !c.is_disjoint(d) {
        return Err(SpaceError::PreconditionViolated(
            "C and D must be disjoint and nonempty".into(),
        ));
    }
    let mut table = Vec::new();
    for &f in x.closed.iter().filter(|f| f.is_disjoint(c)) {
        for &g in x.closed.iter().filter(|g| g.is_disjoint(d)) {
            let p = SetFoursome { c, d, f, g };
            table.push(CrookednessEntry {
                f,
                g,
                chicane: find_set_chicane(x, &p, ChicaneForm::ZigZag),
            });
        }
    }
    Ok(CrookednessReport {
        holds: table.iter().all(|e| e.chicane.is_some()),
        table,
    })
}

/// Crooked between every pair of disjoint nonempty closed sets.
pub fn is_crooked(x: &FiniteSpace) -> Result<bool, SpaceError> {
    for &c in x.closed.iter().filter(|s| !s.is_empty()) {
        for &d in x.closed.iter().filter(|s| !s.is_empty() && s.is_disjoint(c)) {
            if !is_crooked_between(x, c, d)?.holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every pliand foursome with terms from `terms` has a chicane of the given form.
pub fn chicanes_for_all(x: &FiniteSpace, terms: &[PointSet], form: ChicaneForm) -> Option<SetFoursome> {
    for &c in terms {
        for &d in terms.iter().filter(|d| d.is_disjoint(c)) {
            for &f in terms.iter().filter(|f| f.is_disjoint(c)) {
                for &g in terms.iter().filter(|g| g.is_disjoint(d)) {
                    let p = SetFoursome { c, d, f, g };
                    if find_set_chicane(x, &p, form).is_none() {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

/// `B` is a subfamily of closed sets, closed under intersection, such that
/// every closed set is the intersection of the members containing it.
pub fn check_intersection_base(x: &FiniteSpace, base: &[PointSet]) -> Result<(), SpaceError> {
    for &b in base {
        if !x.is_closed(b) {
            return Err(SpaceError::NotABase(format!("{b} is not closed")));
        }
    }
    for &a in base {
        for &b in base {
            if !base.contains(&a.intersection(b)) {
                return Err(SpaceError::NotABase(format!(
                    "{a} ∩ {b} missing from the family"
                )));
            }
        }
    }
    for &c in &x.closed {
        let meet = base
            .iter()
            .filter(|b| c.is_subset(**b))
            .fold(x.full(), |acc, &b| acc.intersection(b));
        if meet != c {
            return Err(SpaceError::NotABase(format!(
                "{c} is not an intersection of members"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseHiReport {
    pub restricted: bool,
    pub full: bool,
    pub agree: bool,
    pub t1: bool,
}

/// Chicane check with foursomes drawn from the base versus from all closed sets.
pub fn base_restricted_hi(x: &FiniteSpace, base: &[PointSet]) -> Result<BaseHiReport, SpaceError> {
    check_intersection_base(x, base)?;
    let restricted = chicanes_for_all(x, base, ChicaneForm::ZigZag).is_none();
    let full = chicanes_for_all(x, &x.closed, ChicaneForm::ZigZag).is_none();
    Ok(BaseHiReport {
        restricted,
        full,
        agree: restricted == full,
        t1: x.is_t1(),
    })
}

/// A map between point sets, `map[p]` being the image of point `p`.
pub type PointMap = [usize];

fn check_map(f: &PointMap, x: &FiniteSpace, y: &FiniteSpace) -> Result<(), SpaceError> {
    if f.len() != x.points || f.iter().any(|&q| q >= y.points) {
        return Err(SpaceError::BadMap(f.len(), x.points));
    }
    Ok(())
}

pub fn preimage(f: &PointMap, s: PointSet) -> PointSet {
    PointSet::from_points((0..f.len()).filter(|&p| s.contains(f[p])))
}

pub fn image(f: &PointMap, s: PointSet) -> PointSet {
    PointSet::from_points(s.iter().map(|p| f[p]))
}

/// Preimages of closed sets are closed.
pub fn is_continuous(f: &PointMap, x: &FiniteSpace, y: &FiniteSpace) -> bool {
    check_map(f, x, y).is_ok() && y.closed.iter().all(|&c| x.is_closed(preimage(f, c)))
}

pub fn is_surjective(f: &PointMap, y: &FiniteSpace) -> bool {
    (0..y.points).all(|q| f.contains(&q))
}

pub fn compose(f: &PointMap, g: &PointMap) -> Vec<usize> {
    f.iter().map(|&q| g[q]).collect()
}

/// Every continuum of `Y` is the image of a continuum of `X`. Fails with the
/// first continuum of `Y` that is not such an image.
pub fn is_weakly_confluent(
    f: &PointMap,
    x: &FiniteSpace,
    y: &FiniteSpace,
) -> Result<Verdict<PointSet>, SpaceError> {
    check_map(f, x, y)?;
    if let Some(&c) = y.closed.iter().find(|&&c| !x.is_closed(preimage(f, c))) {
        return Err(SpaceError::NotContinuous(c));
    }
    if let Some(q) = (0..y.points).find(|q| !f.contains(q)) {
        return Err(SpaceError::NotSurjective(q));
    }
    let source: Vec<PointSet> = continua(x)?.into_iter().map(|c| image(f, c.0)).collect();
    for k in continua(y)? {
        if !source.contains(&k.0) {
            return Ok(Verdict::no(k.0));
        }
    }
    Ok(Verdict::yes())
}

/// Every topology on `n` labelled points, in order of the closed-set masks.
pub fn all_spaces(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 4, "topology enumeration is limited to 4 points");
    let full = PointSet::full(n);
    let middle: Vec<PointSet> = crate::sets::all_subsets(n)
        .filter(|s| !s.is_empty() && *s != full)
        .collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << middle.len() {
        let mut sets = vec![PointSet::EMPTY, full];
        sets.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        if let Ok(space) = FiniteSpace::new(n, sets) {
            out.push(space);
        }
    }
    out
}

/// Subfamilies of the closed sets that contain `∅` and the whole space, are
/// closed under union and intersection, and form a base.
pub fn lattice_bases(x: &FiniteSpace) -> Vec<Vec<PointSet>> {
    let full = x.full();
    let middle: Vec<PointSet> = x
        .closed
        .iter()
        .copied()
        .filter(|s| !s.is_empty() && *s != full)
        .collect();
    assert!(middle.len() <= 20, "too many closed sets to enumerate bases");
    let mut out = Vec::new();
    for choice in 0u64..1 << middle.len() {
        let mut sets = vec![PointSet::EMPTY];
        sets.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        sets.push(full);
        let closed = sets.iter().all(|&a| {
            sets.iter()
                .all(|&b| sets.contains(&a.union(b)) && sets.contains(&a.intersection(b)))
        });
        if closed && check_intersection_base(x, &sets).is_ok() {
            out.push(sets);
        }
    }
    out
}
