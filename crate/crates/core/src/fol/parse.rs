//! Recursive-descent parser. Identifiers bound by an enclosing quantifier
//! become variables; all others become constants.
//!
//! `v` doubles as the join operator and as an identifier: after a complete
//! factor it can only be the operator, and in primary position only a name.
//! Likewise `A`/`E` start a quantifier only when followed by a name and `.`,
//! and `J`/`M` are predicates only when followed by `(`.

use super::{FolError, Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    LParen,
    RParen,
    Comma,
    Dot,
    Caret,
    Equals,
    LessEq,
    Amp,
    Bar,
    Bang,
    Arrow,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, FolError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'^' => Tok::Caret,
            b'=' => Tok::Equals,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'!' => Tok::Bang,
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::LessEq
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'0' | b'1' => {
                if bytes.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) {
                    return Err(syntax(i, "only 0 and 1 are numerals"));
                }
                if c == b'0' {
                    Tok::Zero
                } else {
                    Tok::One
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, &format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

fn syntax(position: usize, message: &str) -> FolError {
    FolError::Syntax {
        position,
        message: message.to_string(),
    }
}

/// Parses one formula; trailing input is an error.
pub fn parse(text: &str) -> Result<Formula, FolError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        bound: Vec::new(),
    };
    let f = p.formula()?;
    if p.pos < p.tokens.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(f)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    bound: Vec<String>,
}

type Parsed<T> = Result<T, FolError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Parsed<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(syntax(self.offset(), &format!("expected {what}")))
        }
    }

    fn is_ident(&self, k: usize, name: &str) -> bool {
        matches!(self.peek_at(k), Some(Tok::Ident(s)) if s == name)
    }

    fn quantifier_ahead(&self) -> bool {
        (self.is_ident(0, "A") || self.is_ident(0, "E"))
            && matches!(self.peek_at(1), Some(Tok::Ident(_)))
            && self.peek_at(2) == Some(&Tok::Dot)
    }

    fn formula(&mut self) -> Parsed<Formula> {
        if self.quantifier_ahead() {
            self.quantifier()
        } else {
            self.implication()
        }
    }

    fn quantifier(&mut self) -> Parsed<Formula> {
        let universal = self.is_ident(0, "A");
        let name = match self.peek_at(1) {
            Some(Tok::Ident(n)) => n.clone(),
            _ => unreachable!("checked by quantifier_ahead"),
        };
        self.pos += 3;
        self.bound.push(name.clone());
        let body = self.formula();
        self.bound.pop();
        let body = Box::new(body?);
        Ok(if universal {
            Formula::Forall(name, body)
        } else {
            Formula::Exists(name, body)
        })
    }

    fn implication(&mut self) -> Parsed<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Parsed<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Parsed<Formula> {
        let mut f = self.negation()?;
        while self.eat(&Tok::Amp) {
            f = f.and(self.negation()?);
        }
        Ok(f)
    }

    fn negation(&mut self) -> Parsed<Formula> {
        if self.eat(&Tok::Bang) {
            return Ok(Formula::not(self.negation()?));
        }
        if self.quantifier_ahead() {
            return self.quantifier();
        }
        self.atom()
    }

    fn atom(&mut self) -> Parsed<Formula> {
        if (self.is_ident(0, "J") || self.is_ident(0, "M")) && self.peek_at(1) == Some(&Tok::LParen) {
            let is_j = self.is_ident(0, "J");
            self.pos += 2;
            let mut args = vec![self.term()?];
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(&Tok::RParen, "')'")?;
            if is_j {
                if args.len() != 2 {
                    return Err(syntax(self.offset(), "J takes exactly two arguments"));
                }
                let t = args.pop().expect("two");
                let s = args.pop().expect("two");
                return Ok(Formula::J(s, t));
            }
            return Ok(Formula::M(args));
        }
        if self.peek() == Some(&Tok::LParen) {
            let start = self.pos;
            let as_relation = self.relation();
            if as_relation.is_ok() {
                return as_relation;
            }
            let relation_err = as_relation.unwrap_err();
            self.pos = start + 1;
            let inner = self.formula().and_then(|f| {
                self.expect(&Tok::RParen, "')'")?;
                Ok(f)
            });
            return match inner {
                Ok(f) => Ok(f),
                Err(e) => Err(furthest(e, relation_err)),
            };
        }
        self.relation()
    }

    fn relation(&mut self) -> Parsed<Formula> {
        let s = self.term()?;
        if self.eat(&Tok::Equals) {
            Ok(Formula::Eq(s, self.term()?))
        } else if self.eat(&Tok::LessEq) {
            Ok(Formula::Leq(s, self.term()?))
        } else {
            Err(syntax(self.offset(), "expected '=' or '<='"))
        }
    }

    fn term(&mut self) -> Parsed<Term> {
        let mut t = self.factor()?;
        while self.is_ident(0, "v") {
            self.pos += 1;
            t = t.join(self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Parsed<Term> {
        let mut t = self.primary()?;
        while self.eat(&Tok::Caret) {
            t = t.meet(self.primary()?);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Parsed<Term> {
        let here = self.offset();
        match self.peek().cloned() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Bottom)
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(Term::Top)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(if self.bound.contains(&name) {
                    Term::Var(name)
                } else {
                    Term::Const(name)
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => Err(syntax(here, "expected a term")),
        }
    }
}

/// Of two failed alternatives, reports the one that got further.
fn furthest(a: FolError, b: FolError) -> FolError {
    let pos = |e: &FolError| match e {
        FolError::Syntax { position, .. } => *position,
        _ => 0,
    };
    if pos(&b) > pos(&a) {
        b
    } else {
        a
    }
}
