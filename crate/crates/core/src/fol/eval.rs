//! Exact evaluation over a finite lattice.
//!
//! Formulas are compiled once into negation normal form. Runs of like
//! quantifiers become blocks; an existential block checks each conjunct as
//! soon as the last variable it mentions is bound (a universal block does
//! the same with disjuncts), and blocks distribute over `∨` (resp. `∧`).
//! Quantifiers range over the whole lattice, which is never empty, so every
//! rewrite used here is an equivalence.

use std::collections::BTreeMap;

use super::{FolError, Formula, Term, Theory};
use crate::lattice::{Elem, FiniteLattice};

/// Values of constants by name.
pub type Interpretation = BTreeMap<String, Elem>;

#[derive(Clone, Debug)]
enum CTerm {
    Slot(usize),
    Bottom,
    Top,
    Meet(Box<CTerm>, Box<CTerm>),
    Join(Box<CTerm>, Box<CTerm>),
}

impl CTerm {
    fn value(&self, l: &FiniteLattice, env: &[Elem]) -> Elem {
        match self {
            CTerm::Slot(i) => env[*i],
            CTerm::Bottom => l.bottom(),
            CTerm::Top => l.top(),
            CTerm::Meet(a, b) => l.meet(a.value(l, env), b.value(l, env)),
            CTerm::Join(a, b) => l.join(a.value(l, env), b.value(l, env)),
        }
    }

    fn mentions(&self, slot: usize) -> bool {
        match self {
            CTerm::Slot(i) => *i == slot,
            CTerm::Bottom | CTerm::Top => false,
            CTerm::Meet(a, b) | CTerm::Join(a, b) => a.mentions(slot) || b.mentions(slot),
        }
    }
}

#[derive(Clone, Debug)]
enum Node {
    /// `lhs = rhs`, or `lhs ≠ rhs` when negated.
    Atom { lhs: CTerm, rhs: CTerm, negated: bool },
    And(Vec<Node>),
    Or(Vec<Node>),
    /// `levels[i]` is checked once the first `i` slots are bound.
    Exists { slots: Vec<usize>, levels: Vec<Vec<Node>> },
    Forall { slots: Vec<usize>, levels: Vec<Vec<Node>> },
}

impl Node {
    fn holds(&self, l: &FiniteLattice, env: &mut [Elem]) -> bool {
        match self {
            Node::Atom { lhs, rhs, negated } => (lhs.value(l, env) == rhs.value(l, env)) != *negated,
            Node::And(items) => items.iter().all(|n| n.holds(l, env)),
            Node::Or(items) => items.iter().any(|n| n.holds(l, env)),
            Node::Exists { slots, levels } => exists(l, env, slots, levels, 0),
            Node::Forall { slots, levels } => forall(l, env, slots, levels, 0),
        }
    }

    fn mentions(&self, slot: usize) -> bool {
        match self {
            Node::Atom { lhs, rhs, .. } => lhs.mentions(slot) || rhs.mentions(slot),
            Node::And(items) | Node::Or(items) => items.iter().any(|n| n.mentions(slot)),
            Node::Exists { levels, .. } | Node::Forall { levels, .. } => {
                levels.iter().flatten().any(|n| n.mentions(slot))
            }
        }
    }
}

fn exists(l: &FiniteLattice, env: &mut [Elem], slots: &[usize], levels: &[Vec<Node>], i: usize) -> bool {
    if !levels[i].iter().all(|n| n.holds(l, env)) {
        return false;
    }
    if i == slots.len() {
        return true;
    }
    for e in l.elements() {
        env[slots[i]] = e;
        if exists(l, env, slots, levels, i + 1) {
            return true;
        }
    }
    false
}

fn forall(l: &FiniteLattice, env: &mut [Elem], slots: &[usize], levels: &[Vec<Node>], i: usize) -> bool {
    if levels[i].iter().any(|n| n.holds(l, env)) {
        return true;
    }
    if i == slots.len() {
        return false;
    }
    for e in l.elements() {
        env[slots[i]] = e;
        if !forall(l, env, slots, levels, i + 1) {
            return false;
        }
    }
    true
}

/// A sentence compiled against a fixed list of constant names. The result
/// is independent of any particular lattice.
#[derive(Clone, Debug)]
pub struct CompiledSentence {
    root: Node,
    constants: usize,
    slots: usize,
}

struct Compiler<'a> {
    constants: &'a [String],
    scope: Vec<String>,
    max_slot: usize,
}

impl Compiler<'_> {
    fn term(&self, t: &Term) -> Result<CTerm, FolError> {
        Ok(match t {
            Term::Bottom => CTerm::Bottom,
            Term::Top => CTerm::Top,
            Term::Var(v) => match self.scope.iter().rposition(|s| s == v) {
                Some(depth) => CTerm::Slot(self.constants.len() + depth),
                None => return Err(FolError::UnboundVariable(v.clone())),
            },
            Term::Const(c) => match self.constants.iter().position(|s| s == c) {
                Some(i) => CTerm::Slot(i),
                None => return Err(FolError::MissingConstant(c.clone())),
            },
            Term::Meet(a, b) => CTerm::Meet(Box::new(self.term(a)?), Box::new(self.term(b)?)),
            Term::Join(a, b) => CTerm::Join(Box::new(self.term(a)?), Box::new(self.term(b)?)),
        })
    }

    fn atom(&self, lhs: CTerm, rhs: CTerm, positive: bool) -> Node {
        Node::Atom {
            lhs,
            rhs,
            negated: !positive,
        }
    }

    fn build(&mut self, f: &Formula, positive: bool) -> Result<Node, FolError> {
        Ok(match f {
            Formula::Eq(s, t) => self.atom(self.term(s)?, self.term(t)?, positive),
            Formula::Leq(s, t) => {
                let s = self.term(s)?;
                let t = self.term(t)?;
                self.atom(CTerm::Meet(Box::new(s.clone()), Box::new(t)), s, positive)
            }
            Formula::J(s, t) => {
                let joined = CTerm::Join(Box::new(self.term(s)?), Box::new(self.term(t)?));
                self.atom(joined, CTerm::Top, positive)
            }
            Formula::M(ts) => {
                let mut it = ts.iter();
                let first = it.next().ok_or(FolError::EmptyMeet)?;
                let mut acc = self.term(first)?;
                for t in it {
                    acc = CTerm::Meet(Box::new(acc), Box::new(self.term(t)?));
                }
                self.atom(acc, CTerm::Bottom, positive)
            }
            Formula::Not(a) => self.build(a, !positive)?,
            Formula::And(a, b) | Formula::Or(a, b) => {
                let conjunctive = matches!(f, Formula::And(..)) == positive;
                let items = vec![self.build(a, positive)?, self.build(b, positive)?];
                if conjunctive {
                    and(items)
                } else {
                    or(items)
                }
            }
            Formula::Implies(a, b) => {
                let items = vec![self.build(a, !positive)?, self.build(b, positive)?];
                if positive {
                    or(items)
                } else {
                    and(items)
                }
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                let existential = matches!(f, Formula::Exists(..)) == positive;
                let mut slots = Vec::new();
                let mut inner = f;
                loop {
                    match inner {
                        Formula::Exists(v, body) | Formula::Forall(v, body)
                            if matches!(inner, Formula::Exists(..)) == matches!(f, Formula::Exists(..)) =>
                        {
                            slots.push(self.constants.len() + self.scope.len());
                            self.scope.push(v.clone());
                            inner = body;
                        }
                        _ => break,
                    }
                }
                self.max_slot = self.max_slot.max(self.constants.len() + self.scope.len());
                let body = self.build(inner, positive);
                self.scope.truncate(self.scope.len() - slots.len());
                block(existential, &slots, body?)
            }
        })
    }
}

fn and(items: Vec<Node>) -> Node {
    let mut flat = Vec::new();
    for n in items {
        match n {
            Node::And(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    Node::And(flat)
}

fn or(items: Vec<Node>) -> Node {
    let mut flat = Vec::new();
    for n in items {
        match n {
            Node::Or(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    Node::Or(flat)
}

/// Builds `∃slots body` (or `∀slots body`), distributing over the dual
/// connective and scheduling the rest by the last slot each part mentions.
fn block(existential: bool, slots: &[usize], body: Node) -> Node {
    let parts = match (existential, body) {
        (true, Node::Or(items)) => {
            return or(items.into_iter().map(|n| block(true, slots, n)).collect());
        }
        (false, Node::And(items)) => {
            return and(items.into_iter().map(|n| block(false, slots, n)).collect());
        }
        (true, Node::And(items)) | (false, Node::Or(items)) => items,
        (_, other) => vec![other],
    };
    let mut levels: Vec<Vec<Node>> = vec![Vec::new(); slots.len() + 1];
    for part in parts {
        let level = (0..slots.len())
            .rev()
            .find(|&i| part.mentions(slots[i]))
            .map_or(0, |i| i + 1);
        levels[level].push(part);
    }
    // Slots past the last scheduled part never influence the outcome.
    let used = levels.iter().rposition(|lv| !lv.is_empty()).unwrap_or(0);
    levels.truncate(used + 1);
    if used == 0 {
        let parts = levels.pop().unwrap_or_default();
        return if existential { Node::And(parts) } else { Node::Or(parts) };
    }
    let slots = slots[..used].to_vec();
    if existential {
        Node::Exists { slots, levels }
    } else {
        Node::Forall { slots, levels }
    }
}

impl CompiledSentence {
    /// Compiles a sentence whose constants are drawn from `constants`.
    pub fn compile(f: &Formula, constants: &[String]) -> Result<Self, FolError> {
        let mut c = Compiler {
            constants,
            scope: Vec::new(),
            max_slot: constants.len(),
        };
        let root = c.build(f, true)?;
        Ok(CompiledSentence {
            root,
            constants: constants.len(),
            slots: c.max_slot,
        })
    }

    /// `values[i]` interprets the `i`-th constant given at compile time. A
    /// shorter prefix is allowed when the sentence mentions no later constant.
    pub fn holds(&self, l: &FiniteLattice, values: &[Elem]) -> bool {
        let mut env = vec![0; self.slots.max(values.len())];
        let given = values.len().min(self.constants);
        env[..given].copy_from_slice(&values[..given]);
        self.root.holds(l, &mut env)
    }
}

fn constant_values(l: &FiniteLattice, interp: &Interpretation) -> Result<(Vec<String>, Vec<Elem>), FolError> {
    let mut names = Vec::with_capacity(interp.len());
    let mut values = Vec::with_capacity(interp.len());
    for (name, &e) in interp {
        if e >= l.size() {
            return Err(FolError::ElementOutOfRange(e));
        }
        names.push(name.clone());
        values.push(e);
    }
    Ok((names, values))
}

/// Truth of a sentence in `l` with constants read from `interp`.
pub fn eval(l: &FiniteLattice, f: &Formula, interp: &Interpretation) -> Result<bool, FolError> {
    let (names, values) = constant_values(l, interp)?;
    Ok(CompiledSentence::compile(f, &names)?.holds(l, &values))
}

/// Index of the first sentence that fails, if any.
pub fn failing_sentence(l: &FiniteLattice, theory: &Theory, interp: &Interpretation) -> Result<Option<usize>, FolError> {
    let (names, values) = constant_values(l, interp)?;
    for (i, s) in theory.sentences.iter().enumerate() {
        if !CompiledSentence::compile(s, &names)?.holds(l, &values) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Every sentence of the theory holds.
pub fn eval_theory(l: &FiniteLattice, theory: &Theory, interp: &Interpretation) -> Result<bool, FolError> {
    Ok(failing_sentence(l, theory, interp)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn holds(l: &FiniteLattice, text: &str) -> bool {
        eval(l, &parse(text).unwrap(), &Interpretation::new()).unwrap()
    }

    #[test]
    fn quantifiers_over_small_lattices() {
        let c3 = FiniteLattice::chain(3);
        assert!(holds(&c3, "E x. !(x = 0) & !(x = 1)"));
        assert!(!holds(&FiniteLattice::chain(2), "E x. !(x = 0) & !(x = 1)"));
        assert!(holds(&c3, "A x. A y. x <= y | y <= x"));
        let b4 = FiniteLattice::power_set(2);
        assert!(!holds(&b4, "A x. A y. x <= y | y <= x"));
        assert!(holds(&b4, "A x. E y. M(x, y) & J(x, y)"));
        assert!(!holds(&c3, "A x. E y. M(x, y) & J(x, y)"));
    }

    #[test]
    fn constants_and_errors() {
        let l = FiniteLattice::chain(3);
        let f = parse("a ^ b = a").unwrap();
        let mut interp = Interpretation::new();
        interp.insert("a".into(), 1);
        assert_eq!(eval(&l, &f, &interp), Err(FolError::MissingConstant("b".into())));
        interp.insert("b".into(), 2);
        assert_eq!(eval(&l, &f, &interp), Ok(true));
        interp.insert("b".into(), 9);
        assert_eq!(eval(&l, &f, &interp), Err(FolError::ElementOutOfRange(9)));
        let g = Formula::Eq(Term::var("x"), Term::Bottom);
        assert_eq!(
            eval(&l, &g, &Interpretation::new()),
            Err(FolError::UnboundVariable("x".into()))
        );
    }

    #[test]
    fn shadowing_uses_innermost_binding() {
        let l = FiniteLattice::chain(2);
        assert!(holds(&l, "E x. x = 1 & (A x. x = x) & x = 1"));
        assert!(holds(&l, "A x. E x. x = 0"));
    }
}
