//! Atomic facts about named elements of a lattice.

use std::collections::BTreeSet;

use super::{check_identifier, FolError, Formula, Interpretation, Term, Theory};
use crate::lattice::{Elem, FiniteLattice};

/// Sentences over the given names: the meet and join of every ordered pair
/// (when the result is named or is a bound), equality or distinctness of
/// every pair of names, and `c = 0` / `c = 1` for names of the bounds.
///
/// An interpretation satisfies the result exactly when it embeds the named
/// elements, with their meets, joins and bounds, into the target lattice.
pub fn diagram(l: &FiniteLattice, named: &[(String, Elem)]) -> Result<Theory, FolError> {
    let mut seen = BTreeSet::new();
    for (name, e) in named {
        check_identifier(name)?;
        l.check_element(*e).map_err(|_| FolError::ElementOutOfRange(*e))?;
        if !seen.insert(name) {
            return Err(FolError::DuplicateName(name.clone()));
        }
    }
    let term_for = |e: Elem| -> Option<Term> {
        match named.iter().find(|(_, x)| *x == e) {
            Some((n, _)) => Some(Term::constant(n)),
            None if e == l.bottom() => Some(Term::Bottom),
            None if e == l.top() => Some(Term::Top),
            None => None,
        }
    };
    let mut sentences = Vec::new();
    for (a, x) in named {
        for (b, y) in named {
            let pair = |op: fn(Term, Term) -> Term| op(Term::constant(a), Term::constant(b));
            if let Some(t) = term_for(l.meet(*x, *y)) {
                sentences.push(Formula::eq(pair(Term::meet), t));
            }
            if let Some(t) = term_for(l.join(*x, *y)) {
                sentences.push(Formula::eq(pair(Term::join), t));
            }
        }
    }
    for (i, (a, x)) in named.iter().enumerate() {
        for (b, y) in &named[i + 1..] {
            let eq = Formula::eq(Term::constant(a), Term::constant(b));
            sentences.push(if x == y { eq } else { Formula::not(eq) });
        }
    }
    for (a, x) in named {
        if *x == l.bottom() {
            sentences.push(Formula::eq(Term::constant(a), Term::Bottom));
        }
        if *x == l.top() {
            sentences.push(Formula::eq(Term::constant(a), Term::Top));
        }
    }
    Ok(Theory {
        constants: named.iter().map(|(n, _)| n.clone()).collect(),
        sentences,
    })
}

/// The naming itself as an interpretation.
pub fn diagram_interpretation(named: &[(String, Elem)]) -> Interpretation {
    named.iter().cloned().collect()
}
