//! Minimal-parenthesis printer whose output parses back to the same tree.

use std::fmt::{self, Display, Formatter, Write};

use super::{Formula, Term};

fn write_term(out: &mut Formatter<'_>, t: &Term, level: u8) -> fmt::Result {
    let (needed, lhs, op, rhs) = match t {
        Term::Var(n) | Term::Const(n) => return out.write_str(n),
        Term::Bottom => return out.write_char('0'),
        Term::Top => return out.write_char('1'),
        Term::Join(a, b) => (0, a, " v ", b),
        Term::Meet(a, b) => (1, a, " ^ ", b),
    };
    if level > needed {
        out.write_char('(')?;
    }
    write_term(out, lhs, needed)?;
    out.write_str(op)?;
    write_term(out, rhs, needed + 1)?;
    if level > needed {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) | Formula::Implies(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        Formula::Not(_) => 3,
        _ => 4,
    }
}

fn write_list(out: &mut Formatter<'_>, ts: &[&Term]) -> fmt::Result {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.write_str(", ")?;
        }
        write_term(out, t, 0)?;
    }
    Ok(())
}

/// `tail` says nothing follows this subformula, so a bare quantifier body
/// cannot swallow anything it should not.
fn write_formula(out: &mut Formatter<'_>, f: &Formula, min: u8, tail: bool) -> fmt::Result {
    let quantified = matches!(f, Formula::Forall(..) | Formula::Exists(..));
    let wrap = if quantified { !tail } else { precedence(f) < min };
    let tail = tail || wrap;
    if wrap {
        out.write_char('(')?;
    }
    match f {
        Formula::Eq(s, t) => {
            write_term(out, s, 0)?;
            out.write_str(" = ")?;
            write_term(out, t, 0)?;
        }
        Formula::Leq(s, t) => {
            write_term(out, s, 0)?;
            out.write_str(" <= ")?;
            write_term(out, t, 0)?;
        }
        Formula::J(s, t) => {
            out.write_str("J(")?;
            write_list(out, &[s, t])?;
            out.write_char(')')?;
        }
        Formula::M(ts) => {
            out.write_str("M(")?;
            write_list(out, &ts.iter().collect::<Vec<_>>())?;
            out.write_char(')')?;
        }
        Formula::Not(a) => {
            out.write_char('!')?;
            write_formula(out, a, 3, tail)?;
        }
        Formula::And(a, b) => {
            write_formula(out, a, 2, false)?;
            out.write_str(" & ")?;
            write_formula(out, b, 3, tail)?;
        }
        Formula::Or(a, b) => {
            write_formula(out, a, 1, false)?;
            out.write_str(" | ")?;
            write_formula(out, b, 2, tail)?;
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, 1, false)?;
            out.write_str(" -> ")?;
            write_formula(out, b, 0, tail)?;
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let q = if matches!(f, Formula::Forall(..)) { 'A' } else { 'E' };
            write!(out, "{q} {v}. ")?;
            write_formula(out, a, 0, tail)?;
        }
    }
    if wrap {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0, true)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn prints_minimal_parentheses() {
        let f = parse("((a ^ (b v c)) = 0) & !(x = 1 | y = 1)").unwrap();
        assert_eq!(f.to_string(), "a ^ (b v c) = 0 & !(x = 1 | y = 1)");
    }

    #[test]
    fn quantifiers_in_operand_position() {
        let f = parse("(A x. x = a) -> b = 0 & E y. y = b").unwrap();
        assert_eq!(f.to_string(), "(A x. x = a) -> b = 0 & E y. y = b");
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn right_nested_binary_operators_keep_parentheses() {
        let a = Formula::Eq(Term::constant("a"), Term::Bottom);
        let f = a.clone().and(a.clone().and(a.clone()));
        assert_eq!(f.to_string(), "a = 0 & (a = 0 & a = 0)");
        let t = Term::constant("a").join(Term::constant("b").join(Term::constant("c")));
        assert_eq!(t.to_string(), "a v (b v c)");
    }
}
