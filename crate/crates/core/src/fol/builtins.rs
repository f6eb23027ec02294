//! The normality, connectedness, chicane and dimension formulas, with the
//! quantifier prefixes pulled to the front.

use super::{Formula, Term};

fn v(name: &str) -> Term {
    Term::var(name)
}

fn zero(t: Term) -> Formula {
    Formula::eq(t, Term::Bottom)
}

fn one(t: Term) -> Formula {
    Formula::eq(t, Term::Top)
}

/// Disjoint elements can be separated by a pair joining to the top.
pub fn builtin_normality() -> Formula {
    let body = zero(v("x").meet(v("y"))).implies(Formula::conj(vec![
        zero(v("x").meet(v("u"))),
        zero(v("y").meet(v("v"))),
        one(v("u").join(v("v"))),
    ]));
    Formula::forall(&["x", "y"], Formula::exists(&["u", "v"], body))
}

/// `a` has no splitting into two disjoint parts other than `0` and `a`.
pub fn builtin_conn(a: Term) -> Formula {
    let split = Formula::conj(vec![
        zero(v("x").meet(v("y"))),
        Formula::eq(v("x").join(v("y")), a.clone()),
    ]);
    let trivial = Formula::eq(v("x"), Term::Bottom).or(Formula::eq(v("x"), a));
    Formula::forall(&["x", "y"], split.implies(trivial))
}

/// Every pliand foursome `(x, y, u, v)` has a chicane `(z1, z2, z3)`.
pub fn builtin_hi() -> Formula {
    let pliand = Formula::conj(vec![
        zero(v("x").meet(v("y"))),
        zero(v("x").meet(v("u"))),
        zero(v("y").meet(v("v"))),
    ]);
    let chicane = Formula::conj(vec![
        zero(v("x").meet(v("z2").join(v("z3")))),
        zero(v("y").meet(v("z1").join(v("z2")))),
        zero(v("z1").meet(v("z3"))),
        zero(v("z1").meet(v("z2")).meet(v("v"))),
        zero(v("z2").meet(v("z3")).meet(v("u"))),
        one(v("z1").join(v("z2")).join(v("z3"))),
    ]);
    Formula::forall(
        &["x", "y", "u", "v"],
        Formula::exists(&["z1", "z2", "z3"], pliand.implies(chicane)),
    )
}

/// Two disjoint pairs have partitions whose four parts meet in `0`.
pub fn builtin_dim_le1() -> Formula {
    let hyp = zero(v("x0").meet(v("y0"))).and(zero(v("x1").meet(v("y1"))));
    let concl = Formula::conj(vec![
        zero(v("x0").meet(v("u0"))),
        zero(v("y0").meet(v("v0"))),
        zero(v("x1").meet(v("u1"))),
        zero(v("y1").meet(v("v1"))),
        one(v("u0").join(v("v0"))),
        one(v("u1").join(v("v1"))),
        zero(v("u0").meet(v("v0")).meet(v("u1")).meet(v("v1"))),
    ]);
    Formula::forall(
        &["x0", "y0", "x1", "y1"],
        Formula::exists(&["u0", "v0", "u1", "v1"], hyp.implies(concl)),
    )
}

/// Meet distributes over join.
pub fn builtin_distributivity() -> Formula {
    let lhs = v("x").meet(v("y").join(v("z")));
    let rhs = v("x").meet(v("y")).join(v("x").meet(v("z")));
    Formula::forall(&["x", "y", "z"], Formula::eq(lhs, rhs))
}

/// Whenever `x ≰ y` some nonzero `z ≤ x` misses `y`.
pub fn builtin_disjunctivity() -> Formula {
    let witness = Formula::conj(vec![
        Formula::ne(v("z"), Term::Bottom),
        Formula::Leq(v("z"), v("x")),
        zero(v("z").meet(v("y"))),
    ]);
    Formula::forall(
        &["x", "y"],
        Formula::not(Formula::Leq(v("x"), v("y"))).implies(Formula::exists(&["z"], witness)),
    )
}

/// Some element is neither bound.
pub fn builtin_nontrivial() -> Formula {
    Formula::exists(
        &["x"],
        Formula::ne(v("x"), Term::Bottom).and(Formula::ne(v("x"), Term::Top)),
    )
}

#[cfg(test)]
mod tests {
    use super::super::{eval, parse, Interpretation};
    use super::*;
    use crate::lattice::FiniteLattice;

    fn holds(l: &FiniteLattice, f: &Formula) -> bool {
        eval(l, f, &Interpretation::new()).unwrap()
    }

    #[test]
    fn builtins_round_trip() {
        for f in [builtin_normality(), builtin_conn(Term::Top), builtin_hi(), builtin_dim_le1()] {
            assert_eq!(parse(&f.to_string()).unwrap(), f);
            assert!(f.free_variables().is_empty());
        }
    }

    #[test]
    fn builtins_on_power_sets() {
        for k in 0..=4 {
            let l = FiniteLattice::power_set(k);
            assert!(holds(&l, &builtin_normality()), "normality 2^{k}");
            assert_eq!(holds(&l, &builtin_conn(Term::Top)), k <= 1, "conn 2^{k}");
            assert!(holds(&l, &builtin_hi()), "HI 2^{k}");
            assert!(holds(&l, &builtin_dim_le1()), "dim 2^{k}");
        }
    }

    #[test]
    fn structural_builtins() {
        let d = builtin_distributivity();
        assert!(holds(&FiniteLattice::power_set(2), &d));
        assert!(!holds(&FiniteLattice::diamond(), &d));
        assert!(!holds(&FiniteLattice::pentagon(), &d));
        let j = builtin_disjunctivity();
        assert!(holds(&FiniteLattice::power_set(2), &j));
        assert!(!holds(&FiniteLattice::chain(3), &j));
        assert!(holds(&FiniteLattice::chain(3), &builtin_nontrivial()));
        assert!(!holds(&FiniteLattice::chain(2), &builtin_nontrivial()));
        for f in [d, j, builtin_nontrivial()] {
            assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn conn_of_chain_top() {
        assert!(holds(&FiniteLattice::chain(3), &builtin_conn(Term::Top)));
        assert!(holds(&FiniteLattice::chain(2), &builtin_normality()));
    }

    #[test]
    fn parsed_normality_matches_builtin_semantics() {
        let text = "A x. A y. ((x ^ y = 0) -> E u. E v. ((x ^ u = 0) & (y ^ v = 0) & (u v v = 1)))";
        let f = parse(text).unwrap();
        for l in [FiniteLattice::chain(3), FiniteLattice::power_set(2), FiniteLattice::pentagon()] {
            assert_eq!(holds(&l, &f), holds(&l, &builtin_normality()));
        }
    }
}
