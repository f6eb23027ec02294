use std::collections::HashMap;

use proptest::prelude::*;
use wallman_lab::fol::{eval, parse, Formula, Interpretation, Term};
use wallman_lab::lattice::{all_lattices, Elem, FiniteLattice};

// Includes the names the grammar treats contextually.
const NAMES: [&str; 8] = ["x", "y", "z", "v", "A", "E", "J", "M"];

fn raw_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Bottom),
        Just(Term::Top),
        prop::sample::select(&NAMES[..]).prop_map(Term::var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.meet(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.join(b)),
        ]
    })
}

fn raw_formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        (raw_term(), raw_term()).prop_map(|(s, t)| Formula::Eq(s, t)),
        (raw_term(), raw_term()).prop_map(|(s, t)| Formula::Leq(s, t)),
        (raw_term(), raw_term()).prop_map(|(s, t)| Formula::J(s, t)),
        prop::collection::vec(raw_term(), 1..4).prop_map(Formula::M),
    ];
    atom.prop_recursive(4, 32, 2, |inner| {
        let name = prop::sample::select(&NAMES[..]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (name.clone(), inner.clone()).prop_map(|(v, f)| Formula::Forall(v.to_string(), Box::new(f))),
            (name, inner).prop_map(|(v, f)| Formula::Exists(v.to_string(), Box::new(f))),
        ]
    })
}

/// Names under a binder become variables, the rest constants, exactly as
/// the parser decides.
fn resolve_term(t: &Term, scope: &[String]) -> Term {
    match t {
        Term::Var(n) | Term::Const(n) => {
            if scope.contains(n) {
                Term::Var(n.clone())
            } else {
                Term::Const(n.clone())
            }
        }
        Term::Bottom => Term::Bottom,
        Term::Top => Term::Top,
        Term::Meet(a, b) => resolve_term(a, scope).meet(resolve_term(b, scope)),
        Term::Join(a, b) => resolve_term(a, scope).join(resolve_term(b, scope)),
    }
}

fn resolve(f: &Formula, scope: &mut Vec<String>) -> Formula {
    let r = |t: &Term, scope: &Vec<String>| resolve_term(t, scope);
    match f {
        Formula::Eq(s, t) => Formula::Eq(r(s, scope), r(t, scope)),
        Formula::Leq(s, t) => Formula::Leq(r(s, scope), r(t, scope)),
        Formula::J(s, t) => Formula::J(r(s, scope), r(t, scope)),
        Formula::M(ts) => Formula::M(ts.iter().map(|t| r(t, scope)).collect()),
        Formula::Not(a) => Formula::not(resolve(a, scope)),
        Formula::And(a, b) => resolve(a, scope).and(resolve(b, scope)),
        Formula::Or(a, b) => resolve(a, scope).or(resolve(b, scope)),
        Formula::Implies(a, b) => resolve(a, scope).implies(resolve(b, scope)),
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            scope.push(v.clone());
            let body = resolve(a, scope);
            scope.pop();
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(v.clone(), Box::new(body))
            } else {
                Formula::Exists(v.clone(), Box::new(body))
            }
        }
    }
}

fn formula() -> impl Strategy<Value = Formula> {
    raw_formula().prop_map(|f| resolve(&f, &mut Vec::new()))
}

/// Straightforward recursive evaluation, independent of the compiled evaluator.
fn naive_term(l: &FiniteLattice, t: &Term, env: &HashMap<String, Elem>) -> Elem {
    match t {
        Term::Var(n) | Term::Const(n) => env[n],
        Term::Bottom => l.bottom(),
        Term::Top => l.top(),
        Term::Meet(a, b) => l.meet(naive_term(l, a, env), naive_term(l, b, env)),
        Term::Join(a, b) => l.join(naive_term(l, a, env), naive_term(l, b, env)),
    }
}

fn naive(l: &FiniteLattice, f: &Formula, env: &mut HashMap<String, Elem>) -> bool {
    match f {
        Formula::Eq(s, t) => naive_term(l, s, env) == naive_term(l, t, env),
        Formula::Leq(s, t) => l.leq(naive_term(l, s, env), naive_term(l, t, env)),
        Formula::J(s, t) => l.join(naive_term(l, s, env), naive_term(l, t, env)) == l.top(),
        Formula::M(ts) => l.meet_all(ts.iter().map(|t| naive_term(l, t, env))) == l.bottom(),
        Formula::Not(a) => !naive(l, a, env),
        Formula::And(a, b) => naive(l, a, env) && naive(l, b, env),
        Formula::Or(a, b) => naive(l, a, env) || naive(l, b, env),
        Formula::Implies(a, b) => !naive(l, a, env) || naive(l, b, env),
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let saved = env.get(v).copied();
            let want = matches!(f, Formula::Forall(..));
            let mut result = want;
            for e in l.elements() {
                env.insert(v.clone(), e);
                if naive(l, a, env) != want {
                    result = !want;
                    break;
                }
            }
            match saved {
                Some(e) => env.insert(v.clone(), e),
                None => env.remove(v),
            };
            result
        }
    }
}

fn small_lattice() -> impl Strategy<Value = FiniteLattice> {
    let all = all_lattices(5);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_formulas_parse_back(f in formula()) {
        let text = f.to_string();
        let back = parse(&text);
        prop_assert_eq!(back.as_ref(), Ok(&f), "printed as {}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn compiled_evaluation_matches_naive(f in formula(), l in small_lattice(), seed in any::<u64>()) {
        let interp: Interpretation = f
            .constants()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c, (seed as usize >> (3 * i)) % l.size()))
            .collect();
        let mut env: HashMap<String, Elem> = interp.clone().into_iter().collect();
        prop_assert_eq!(eval(&l, &f, &interp).unwrap(), naive(&l, &f, &mut env));
    }

    #[test]
    fn negation_and_duality(f in formula(), l in small_lattice()) {
        let interp: Interpretation = f.constants().into_iter().map(|c| (c, l.top())).collect();
        let holds = eval(&l, &f, &interp).unwrap();
        prop_assert_eq!(eval(&l, &Formula::not(f.clone()), &interp).unwrap(), !holds);
        let ex = Formula::Exists("w".into(), Box::new(f.clone()));
        let dual = Formula::not(Formula::Forall("w".into(), Box::new(Formula::not(f))));
        prop_assert_eq!(eval(&l, &ex, &interp).unwrap(), eval(&l, &dual, &interp).unwrap());
    }

    #[test]
    fn free_variables_are_never_reported_for_parsed_sentences(f in formula()) {
        prop_assert!(f.free_variables().is_empty());
        prop_assert!(f.quantifier_rank() <= 4);
    }
}
