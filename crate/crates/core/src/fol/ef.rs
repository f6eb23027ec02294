//! Ehrenfeucht–Fraïssé games between finite bounded lattices.
//!
//! A position is the set of pairs generated from `(0, 0)`, `(1, 1)` and the
//! pebbles under componentwise meet and join. Duplicator survives a position
//! when that set is the graph of a bijection, which is exactly the condition
//! that the pebbles satisfy the same atomic formulas on both sides. Since
//! the future of a play depends only on this generated set, the search is
//! memoised on it.

use std::collections::{BTreeMap, HashMap};

use super::{Formula, Term};
use crate::lattice::{are_isomorphic, Elem, FiniteLattice};

type Pair = (Elem, Elem);

/// Whether Duplicator survives, plus a Spoiler strategy when not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfOutcome {
    pub duplicator_wins: bool,
    pub strategy: Option<SpoilerStrategy>,
}

/// A winning plan for Spoiler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpoilerStrategy {
    /// The pebbles already differ: this atomic formula (over the pebble
    /// variables) holds on the first lattice and fails on the second.
    Atomic(Formula),
    /// Pick `element` in the first lattice; answer every reply as listed.
    PlayFirst {
        element: Elem,
        replies: Vec<(Elem, SpoilerStrategy)>,
    },
    /// Pick `element` in the second lattice.
    PlaySecond {
        element: Elem,
        replies: Vec<(Elem, SpoilerStrategy)>,
    },
}

fn pebble(depth: usize) -> String {
    format!("x{depth}")
}

impl SpoilerStrategy {
    /// A sentence true in the first lattice and false in the second, with
    /// quantifier rank equal to the strategy depth.
    pub fn to_sentence(&self) -> Formula {
        self.formula_at(0)
    }

    fn formula_at(&self, depth: usize) -> Formula {
        match self {
            SpoilerStrategy::Atomic(f) => f.clone(),
            SpoilerStrategy::PlayFirst { replies, .. } => {
                let parts = replies.iter().map(|(_, s)| s.formula_at(depth + 1)).collect();
                Formula::Exists(pebble(depth), Box::new(Formula::conj(parts)))
            }
            SpoilerStrategy::PlaySecond { replies, .. } => {
                let parts = replies.iter().map(|(_, s)| s.formula_at(depth + 1)).collect();
                Formula::Forall(pebble(depth), Box::new(Formula::disj(parts)))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SpoilerStrategy::Atomic(_) => 0,
            SpoilerStrategy::PlayFirst { replies, .. } | SpoilerStrategy::PlaySecond { replies, .. } => {
                1 + replies.iter().map(|(_, s)| s.depth()).max().unwrap_or(0)
            }
        }
    }
}

struct Game<'a> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    memo: HashMap<(Vec<Pair>, usize), bool>,
}

impl Game<'_> {
    fn seed(&self) -> Vec<Pair> {
        vec![(self.a.bottom(), self.b.bottom()), (self.a.top(), self.b.top())]
    }

    /// The pairs generated by `pebbles`, each with a witnessing term, in
    /// order of discovery.
    fn closure_with_terms(&self, pebbles: &[Pair]) -> BTreeMap<Pair, Term> {
        let mut terms: BTreeMap<Pair, Term> = BTreeMap::new();
        let mut order: Vec<Pair> = Vec::new();
        let add = |p: Pair, t: Term, terms: &mut BTreeMap<Pair, Term>, order: &mut Vec<Pair>| {
            if let std::collections::btree_map::Entry::Vacant(e) = terms.entry(p) {
                e.insert(t);
                order.push(p);
            }
        };
        let seed = self.seed();
        add(seed[0], Term::Bottom, &mut terms, &mut order);
        add(seed[1], Term::Top, &mut terms, &mut order);
        for (i, &p) in pebbles.iter().enumerate() {
            add(p, Term::var(&pebble(i)), &mut terms, &mut order);
        }
        let mut i = 0;
        while i < order.len() {
            for j in 0..=i {
                let (p, q) = (order[i], order[j]);
                let meet = (self.a.meet(p.0, q.0), self.b.meet(p.1, q.1));
                let join = (self.a.join(p.0, q.0), self.b.join(p.1, q.1));
                let (tp, tq) = (terms[&p].clone(), terms[&q].clone());
                add(meet, tp.clone().meet(tq.clone()), &mut terms, &mut order);
                add(join, tp.join(tq), &mut terms, &mut order);
            }
            i += 1;
        }
        terms
    }

    fn closure(&self, start: &[Pair], extra: Option<Pair>) -> Vec<Pair> {
        let mut set: Vec<Pair> = Vec::with_capacity(start.len() + 1);
        for &p in start.iter().chain(extra.as_ref()) {
            if !set.contains(&p) {
                set.push(p);
            }
        }
        let mut i = 0;
        while i < set.len() {
            for j in 0..=i {
                let (p, q) = (set[i], set[j]);
                for r in [
                    (self.a.meet(p.0, q.0), self.b.meet(p.1, q.1)),
                    (self.a.join(p.0, q.0), self.b.join(p.1, q.1)),
                ] {
                    if !set.contains(&r) {
                        set.push(r);
                    }
                }
            }
            i += 1;
        }
        set.sort_unstable();
        set
    }

    fn is_bijection(set: &[Pair]) -> bool {
        let mut firsts: Vec<Elem> = set.iter().map(|p| p.0).collect();
        let mut seconds: Vec<Elem> = set.iter().map(|p| p.1).collect();
        firsts.sort_unstable();
        firsts.dedup();
        seconds.sort_unstable();
        seconds.dedup();
        firsts.len() == set.len() && seconds.len() == set.len()
    }

    fn duplicator_wins(&mut self, set: &[Pair], rounds: usize) -> bool {
        if !Self::is_bijection(set) {
            return false;
        }
        if rounds == 0 {
            return true;
        }
        let key = (set.to_vec(), rounds);
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let wins = self.first_side_move(set, rounds).is_none() && self.second_side_move(set, rounds).is_none();
        self.memo.insert(key, wins);
        wins
    }

    /// A move in the first lattice that Duplicator cannot answer.
    fn first_side_move(&mut self, set: &[Pair], rounds: usize) -> Option<Elem> {
        let (na, nb) = (self.a.size(), self.b.size());
        (0..na).filter(|&x| !set.iter().any(|p| p.0 == x)).find(|&x| {
            !(0..nb).any(|y| {
                let next = self.closure(set, Some((x, y)));
                self.duplicator_wins(&next, rounds - 1)
            })
        })
    }

    fn second_side_move(&mut self, set: &[Pair], rounds: usize) -> Option<Elem> {
        let (na, nb) = (self.a.size(), self.b.size());
        (0..nb).filter(|&y| !set.iter().any(|p| p.1 == y)).find(|&y| {
            !(0..na).any(|x| {
                let next = self.closure(set, Some((x, y)));
                self.duplicator_wins(&next, rounds - 1)
            })
        })
    }

    /// Called only on losing positions for Duplicator.
    fn strategy(&mut self, pebbles: &mut Vec<Pair>, rounds: usize) -> SpoilerStrategy {
        let terms = self.closure_with_terms(pebbles);
        let set: Vec<Pair> = terms.keys().copied().collect();
        if !Self::is_bijection(&set) {
            return SpoilerStrategy::Atomic(conflict(&terms));
        }
        if let Some(x) = self.first_side_move(&set, rounds) {
            let replies = (0..self.b.size())
                .map(|y| {
                    pebbles.push((x, y));
                    let s = self.strategy(pebbles, rounds - 1);
                    pebbles.pop();
                    (y, s)
                })
                .collect();
            return SpoilerStrategy::PlayFirst { element: x, replies };
        }
        let y = self
            .second_side_move(&set, rounds)
            .expect("Duplicator loses, so Spoiler has a winning move");
        let replies = (0..self.a.size())
            .map(|x| {
                pebbles.push((x, y));
                let s = self.strategy(pebbles, rounds - 1);
                pebbles.pop();
                (x, s)
            })
            .collect();
        SpoilerStrategy::PlaySecond { element: y, replies }
    }
}

/// An atomic formula separating the two sides of a generated set that is
/// not a bijection.
fn conflict(terms: &BTreeMap<Pair, Term>) -> Formula {
    let pairs: Vec<(&Pair, &Term)> = terms.iter().collect();
    for (i, (p, s)) in pairs.iter().enumerate() {
        for (q, t) in &pairs[i + 1..] {
            if p.0 == q.0 {
                return Formula::eq((*s).clone(), (*t).clone());
            }
            if p.1 == q.1 {
                return Formula::ne((*s).clone(), (*t).clone());
            }
        }
    }
    unreachable!("generated set is a bijection")
}

/// Solves the game with `rounds` rounds; `0` and `1` are always in play.
pub fn ef_equivalent(a: &FiniteLattice, b: &FiniteLattice, rounds: usize) -> EfOutcome {
    let mut game = Game {
        a,
        b,
        memo: HashMap::new(),
    };
    let start = game.closure(&game.seed(), None);
    if game.duplicator_wins(&start, rounds) {
        return EfOutcome {
            duplicator_wins: true,
            strategy: None,
        };
    }
    let strategy = game.strategy(&mut Vec::new(), rounds);
    EfOutcome {
        duplicator_wins: false,
        strategy: Some(strategy),
    }
}

/// Least number of rounds in which Spoiler wins, up to `max_rounds`.
pub fn ef_threshold(a: &FiniteLattice, b: &FiniteLattice, max_rounds: usize) -> Option<usize> {
    (0..=max_rounds).find(|&k| !ef_equivalent(a, b, k).duplicator_wins)
}

/// Equivalence for games as long as both lattices together, which for
/// finite structures is isomorphism; both are computed and must agree.
pub fn elementarily_equivalent_finite(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    let by_game = ef_equivalent(a, b, a.size() + b.size()).duplicator_wins;
    debug_assert_eq!(by_game, are_isomorphic(a, b));
    by_game
}

#[cfg(test)]
mod tests {
    use super::super::{eval, Interpretation};
    use super::*;

    fn separates(a: &FiniteLattice, b: &FiniteLattice, s: &SpoilerStrategy) -> bool {
        let f = s.to_sentence();
        let none = Interpretation::new();
        eval(a, &f, &none).unwrap() && !eval(b, &f, &none).unwrap()
    }

    #[test]
    fn isomorphic_lattices_are_equivalent() {
        let p = FiniteLattice::power_set(2);
        let q = p.permuted(&[0, 2, 1, 3]);
        for k in 0..4 {
            assert!(ef_equivalent(&p, &q, k).duplicator_wins);
        }
    }

    #[test]
    fn chains_of_two_and_three() {
        let (c2, c3) = (FiniteLattice::chain(2), FiniteLattice::chain(3));
        assert!(ef_equivalent(&c2, &c3, 0).duplicator_wins);
        let out = ef_equivalent(&c2, &c3, 1);
        assert!(!out.duplicator_wins);
        let s = out.strategy.unwrap();
        assert_eq!(s.depth(), 1);
        assert!(separates(&c2, &c3, &s));
    }

    #[test]
    fn one_element_lattice_differs_at_rank_zero() {
        let out = ef_equivalent(&FiniteLattice::chain(1), &FiniteLattice::chain(2), 0);
        let s = out.strategy.unwrap();
        assert_eq!(s, SpoilerStrategy::Atomic(Formula::eq(Term::Bottom, Term::Top)));
    }

    #[test]
    fn boolean_algebras_of_four_and_eight() {
        let (b4, b8) = (FiniteLattice::power_set(2), FiniteLattice::power_set(3));
        assert_eq!(ef_threshold(&b4, &b8, 4), Some(2));
        let s = ef_equivalent(&b4, &b8, 2).strategy.unwrap();
        assert!(separates(&b4, &b8, &s));
        assert!(s.to_sentence().quantifier_rank() <= 2);
    }

    #[test]
    fn one_element_lattice_plays_itself() {
        let one = FiniteLattice::chain(1);
        assert!(ef_equivalent(&one, &one, 3).duplicator_wins);
        assert_eq!(ef_threshold(&one, &FiniteLattice::chain(2), 2), Some(0));
    }

    #[test]
    fn finite_equivalence_is_isomorphism() {
        assert!(elementarily_equivalent_finite(&FiniteLattice::chain(3), &FiniteLattice::chain(3)));
        assert!(!elementarily_equivalent_finite(&FiniteLattice::chain(3), &FiniteLattice::chain(4)));
        assert!(!elementarily_equivalent_finite(&FiniteLattice::diamond(), &FiniteLattice::pentagon()));
    }
}
