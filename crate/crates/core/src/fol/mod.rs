//! First-order language of bounded lattices: terms over `0, 1, ∧, ∨`,
//! formulas with equality, order, and the `J` / `M` predicates.

mod builtins;
mod diagram;
mod ef;
mod eval;
mod parse;
mod print;

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use builtins::{
    builtin_conn, builtin_dim_le1, builtin_disjunctivity, builtin_distributivity, builtin_hi,
    builtin_nontrivial, builtin_normality,
};
pub use diagram::{diagram, diagram_interpretation};
pub use ef::{
    ef_equivalent, ef_threshold, elementarily_equivalent_finite, EfOutcome, SpoilerStrategy,
};
pub use eval::{eval, eval_theory, failing_sentence, CompiledSentence, Interpretation};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FolError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("no interpretation for constant {0}")]
    MissingConstant(String),
    #[error("constant name {0} is used twice")]
    DuplicateName(String),
    #[error("{0:?} is not a valid identifier")]
    InvalidName(String),
    #[error("M needs at least one argument")]
    EmptyMeet,
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Bottom,
    Top,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    fn collect_names(&self, consts: &mut BTreeSet<String>, vars: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                vars.insert(v.clone());
            }
            Term::Const(c) => {
                consts.insert(c.clone());
            }
            Term::Bottom | Term::Top => {}
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_names(consts, vars);
                b.collect_names(consts, vars);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    /// `s <= t`, read as `s ^ t = s`.
    Leq(Term, Term),
    /// `s v t = 1`.
    J(Term, Term),
    /// The meet of all arguments is `0`.
    M(Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn eq(s: Term, t: Term) -> Formula {
        Formula::Eq(s, t)
    }

    pub fn ne(s: Term, t: Term) -> Formula {
        Formula::not(Formula::Eq(s, t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn forall(names: &[&str], body: Formula) -> Formula {
        names
            .iter()
            .rev()
            .fold(body, |acc, n| Formula::Forall(n.to_string(), Box::new(acc)))
    }

    pub fn exists(names: &[&str], body: Formula) -> Formula {
        names
            .iter()
            .rev()
            .fold(body, |acc, n| Formula::Exists(n.to_string(), Box::new(acc)))
    }

    /// Left-nested conjunction; the empty conjunction is `0 = 0`.
    pub fn conj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Eq(Term::Bottom, Term::Bottom),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-nested disjunction; the empty disjunction is `!(0 = 0)`.
    pub fn disj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::ne(Term::Bottom, Term::Bottom),
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// Constant names used anywhere in the formula.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut consts = BTreeSet::new();
        self.walk(&mut Vec::new(), &mut consts, &mut BTreeSet::new());
        consts
    }

    /// Variables used outside the scope of any quantifier binding them.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut free = BTreeSet::new();
        self.walk(&mut Vec::new(), &mut BTreeSet::new(), &mut free);
        free
    }

    /// Nesting depth of quantifiers.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Leq(..) | Formula::J(..) | Formula::M(_) => 0,
            Formula::Not(a) => a.quantifier_rank(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.quantifier_rank(),
        }
    }

    fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Eq(s, t) | Formula::Leq(s, t) | Formula::J(s, t) => vec![s, t],
            Formula::M(ts) => ts.iter().collect(),
            _ => Vec::new(),
        }
    }

    fn walk(&self, bound: &mut Vec<String>, consts: &mut BTreeSet<String>, free: &mut BTreeSet<String>) {
        match self {
            Formula::Not(a) => a.walk(bound, consts, free),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk(bound, consts, free);
                b.walk(bound, consts, free);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                a.walk(bound, consts, free);
                bound.pop();
            }
            atom => {
                let mut vars = BTreeSet::new();
                for t in atom.terms() {
                    t.collect_names(consts, &mut vars);
                }
                free.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
        }
    }
}

/// Constant names together with sentences over them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theory {
    pub constants: Vec<String>,
    pub sentences: Vec<Formula>,
}

impl Theory {
    /// Every sentence is closed and mentions only declared constants.
    pub fn check(&self) -> Result<(), FolError> {
        let mut seen = BTreeSet::new();
        for c in &self.constants {
            check_identifier(c)?;
            if !seen.insert(c) {
                return Err(FolError::DuplicateName(c.clone()));
            }
        }
        for s in &self.sentences {
            if let Some(v) = s.free_variables().into_iter().next() {
                return Err(FolError::UnboundVariable(v));
            }
            if let Some(c) = s.constants().into_iter().find(|c| !seen.contains(c)) {
                return Err(FolError::UnboundVariable(c));
            }
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn check_identifier(name: &str) -> Result<(), FolError> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(FolError::InvalidName(name.to_string()))
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Formula {
    type Err = FolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
