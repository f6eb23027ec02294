//! Exhaustive and randomized sweeps that cross-check the modules against
//! independent oracles. Each suite returns a [`SuiteReport`] whose JSON form
//! depends only on the seed, never on the thread count.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::fol::{
    builtin_conn, builtin_dim_le1, builtin_disjunctivity, builtin_distributivity, builtin_hi,
    builtin_normality, ef_equivalent, ef_threshold, elementarily_equivalent_finite, eval,
    eval_theory, Formula, Interpretation, Term, Theory,
};
use crate::homsearch::{
    continuous_surjections, find_l_morphism, oracle_surjection_equivalence, preimage_morphism,
    surjection_from_morphism,
};
use crate::interval::{
    disjunctive_witness, normality_witness, rational, refute_partition, Rational, RationalIntervalSet,
};
use crate::lattice::{
    all_lattices, are_isomorphic, conn, enumerate_distributive, find_chicane, is_disjunctive,
    is_distributive, is_normal, satisfies_dim_le1, satisfies_hi, Chicane, FiniteLattice,
    PliandFoursome,
};
use crate::modelfinder::{
    find_model, kappa_constants_theory, naive_find_model, ModelResult, SearchBudget,
};
use crate::sets::PointSet;
use crate::space::{
    all_spaces, base_restricted_hi, closed_set_lattice, find_set_chicane, is_connected,
    is_continuous, is_surjective, lattice_bases, ChicaneForm, FiniteSpace, SetFoursome,
};
use crate::wallman::{alexandroff_preimage, canonical_hom_report, hausdorff_normal_report, WallmanError, self_representation_check, wallman_space};

pub const SEED_VAR: &str = "WALLMAN_LAB_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub jobs: usize,
    pub seed: u64,
}

impl SweepOptions {
    /// Seed from `WALLMAN_LAB_SEED`, `0` when unset or unparsable.
    pub fn from_env(jobs: usize) -> Self {
        let seed = std::env::var(SEED_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0);
        SweepOptions { jobs: jobs.max(1), seed }
    }

    fn rng(&self, case: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case);
        rng
    }

    fn map<T: Sync, R: Send>(&self, items: &[T], f: impl Fn(usize, &T) -> R + Sync + Send) -> Vec<R> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    /// Named counters, for the record rather than the verdict.
    pub counts: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    fn absorb(&mut self, t: Tally) {
        self.cases += 1;
        for (k, v) in t.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.failures.extend(t.failures);
    }

    fn absorb_all(mut self, ts: Vec<Tally>) -> Self {
        for t in ts {
            self.absorb(t);
        }
        self
    }
}

/// What one case contributes to its suite.
#[derive(Default)]
struct Tally {
    counts: BTreeMap<String, usize>,
    failures: Vec<String>,
}

impl Tally {
    fn count(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_default() += 1;
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

pub const SUITES: [&str; 8] = [
    "duality",
    "formulas",
    "surjections",
    "self-representation",
    "ef",
    "modelfinder",
    "chicanes",
    "intervals",
];

pub fn run_suite(name: &str, opts: &SweepOptions) -> Option<SuiteReport> {
    Some(match name {
        "duality" => duality(opts, 6),
        "formulas" => formulas(opts, 5),
        "surjections" => surjections(opts, 4),
        "self-representation" => self_representation(opts, 5, 100),
        "ef" => ef(opts, 4),
        "modelfinder" => modelfinder(opts, 100, 4),
        "chicanes" => chicanes(opts, 4),
        "intervals" => intervals(opts, 10_000),
        _ => return None,
    })
}

fn short(l: &FiniteLattice) -> String {
    serde_json::to_string(&l.to_tables().meet).expect("tables serialize")
}

/// `c` is a bounded lattice homomorphism onto the Wallman base, and it is
/// injective exactly for disjunctive lattices.
pub fn duality(opts: &SweepOptions, max_size: usize) -> SuiteReport {
    let lattices = enumerate_distributive(max_size);
    let tallies = opts.map(&lattices, |_, l| {
        let mut t = Tally::default();
        let w = match wallman_space(l) {
            Ok(w) => w,
            Err(e) => {
                t.failures.push(format!("{}: {e}", short(l)));
                return t;
            }
        };
        let all = PointSet::full(w.point_count());
        let hom = w.c(l.bottom()).is_empty()
            && w.c(l.top()) == all
            && l.elements().all(|a| {
                l.elements().all(|b| {
                    w.c(l.meet(a, b)) == w.c(a).intersection(w.c(b)) && w.c(l.join(a, b)) == w.c(a).union(w.c(b))
                })
            });
        t.check(hom, || format!("{}: c is not a homomorphism", short(l)));
        let mut images = w.base.clone();
        images.sort_by_key(|s| s.size_key());
        images.dedup();
        t.check(images == w.space().closed_sets(), || format!("{}: c is not onto the base", short(l)));
        match canonical_hom_report(l) {
            Ok(r) => {
                if r.is_disjunctive {
                    t.count("disjunctive");
                }
                t.check(r.agree, || format!("{}: injective {} vs disjunctive {}", short(l), r.is_injective, r.is_disjunctive));
            }
            Err(e) => t.failures.push(e.to_string()),
        }
        // recorded only: which reading of "Hausdorff iff normal" the data fits
        if let Ok(r) = hausdorff_normal_report(l) {
            if r.wl_hausdorff && !r.l_normal {
                t.count(if is_disjunctive(l).holds { "hausdorff_not_normal_disjunctive" } else { "hausdorff_not_normal" });
            }
        }
        t
    });
    SuiteReport::new("duality").absorb_all(tallies)
}

/// The builtin sentences evaluate exactly as the direct predicates decide.
pub fn formulas(opts: &SweepOptions, max_size: usize) -> SuiteReport {
    let lattices = enumerate_distributive(max_size);
    let none = Interpretation::new();
    let tallies = opts.map(&lattices, |_, l| {
        let mut t = Tally::default();
        let top = Term::Top;
        let pairs = [
            ("normality", builtin_normality(), is_normal(l).holds),
            ("conn", builtin_conn(top), conn(l, l.top()).expect("top is an element").holds),
            ("hi", builtin_hi(), satisfies_hi(l).holds),
            ("dim", builtin_dim_le1(), satisfies_dim_le1(l).holds),
            ("distributivity", builtin_distributivity(), is_distributive(l).holds),
            ("disjunctivity", builtin_disjunctivity(), is_disjunctive(l).holds),
        ];
        for (name, f, direct) in pairs {
            let by_eval = eval(l, &f, &none).expect("builtins are sentences");
            t.check(by_eval == direct, || format!("{}: {name} eval {by_eval} vs direct {direct}", short(l)));
        }
        if is_disjunctive(l).holds {
            t.count("disjunctive");
            let w = wallman_space(l).expect("distributive");
            let x = w.space();
            let connected = is_connected(&x, x.full()).expect("small space");
            let c = conn(l, l.top()).expect("top").holds;
            t.check(connected == c, || format!("{}: conn {c} vs connected {connected}", short(l)));
        }
        t
    });
    SuiteReport::new("formulas").absorb_all(tallies)
}

/// Existence of an L-morphism matches existence of a continuous surjection,
/// and the reconstructed map passes every check. Non-discrete pairs with up
/// to three points are tallied but not asserted.
pub fn surjections(opts: &SweepOptions, max_points: usize) -> SuiteReport {
    let mut cases: Vec<(FiniteSpace, FiniteSpace, Vec<PointSet>, bool)> = Vec::new();
    for nx in 1..=max_points {
        for ny in 1..=max_points {
            let (x, y) = (FiniteSpace::discrete(nx), FiniteSpace::discrete(ny));
            for base in lattice_bases(&y) {
                cases.push((x.clone(), y.clone(), base, true));
            }
        }
    }
    let small: Vec<FiniteSpace> = (1..=3).flat_map(all_spaces).filter(|s| !s.is_discrete()).collect();
    for x in (1..=3).flat_map(all_spaces) {
        for y in &small {
            for base in lattice_bases(y) {
                cases.push((x.clone(), y.clone(), base, false));
            }
        }
    }
    let tallies = opts.map(&cases, |_, (x, y, base, asserted)| {
        let mut t = Tally::default();
        let label = || format!("X={:?} Y={:?} base={:?}", x.closed_sets(), y.closed_sets(), base);
        let report = match oracle_surjection_equivalence(x, y, base) {
            Ok(r) => r,
            Err(e) => {
                t.failures.push(format!("{}: {e}", label()));
                return t;
            }
        };
        if !asserted {
            t.count(if report.agree { "non_hausdorff_agree" } else { "non_hausdorff_disagree" });
            return t;
        }
        t.count(if report.oracle { "surjective" } else { "no_surjection" });
        t.check(report.agree, || format!("{}: oracle {} vs morphism {}", label(), report.oracle, report.morphism));
        if let Ok(Some(m)) = find_l_morphism(y, base, x) {
            match surjection_from_morphism(&m, x, y) {
                Ok(s) => t.check(s.continuous && s.surjective && s.star_identity, || {
                    format!("{}: reconstructed map {:?} fails checks", label(), s.map)
                }),
                Err(e) => t.failures.push(format!("{}: {e}", label())),
            }
        }
        if let Some(f) = continuous_surjections(x, y).first() {
            t.check(preimage_morphism(f, x, y, base).is_valid(), || {
                format!("{}: preimages of {f:?} do not form an L-morphism", label())
            });
        }
        t
    });
    SuiteReport::new("surjections").absorb_all(tallies)
}

/// A random family whose generated algebra contains every closed set.
fn random_base(rng: &mut ChaCha8Rng, x: &FiniteSpace) -> Vec<PointSet> {
    let n = x.point_count();
    let mut base: Vec<PointSet> = x.closed_sets().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    for _ in 0..rng.gen_range(0..3) {
        base.push(PointSet(rng.gen_range(0..1u64 << n)));
    }
    for &c in x.closed_sets() {
        let algebra = crate::wallman::boolean_subalgebra_generated(n, &base);
        if algebra.index_of(c).is_none() {
            base.push(c);
        }
    }
    base
}

/// Discrete spaces are their own Wallman representation; the Alexandroff
/// construction gives a zero-dimensional space mapping onto random spaces.
pub fn self_representation(opts: &SweepOptions, max_points: usize, random_cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("self-representation");
    for n in 0..=max_points {
        let mut t = Tally::default();
        let r = self_representation_check(&FiniteSpace::discrete(n));
        t.check(r.holds, || format!("discrete {n}: {:?}", r.diagnostic));
        report.absorb(t);
    }
    let indices: Vec<u64> = (0..random_cases as u64).collect();
    let tallies = opts.map(&indices, |_, &i| {
        let mut t = Tally::default();
        let mut rng = opts.rng(i);
        let x = FiniteSpace::discrete(rng.gen_range(1..=max_points));
        let base = random_base(&mut rng, &x);
        match alexandroff_preimage(&x, &base) {
            Ok(a) => {
                let ny = a.y.point_count();
                let zero_dim = a
                    .y
                    .closed_sets()
                    .iter()
                    .all(|c| a.y.is_closed(c.complement(ny)));
                t.check(zero_dim, || format!("case {i}: preimage is not zero-dimensional"));
                t.check(is_continuous(&a.map, &a.y, &x) && is_surjective(&a.map, &x), || {
                    format!("case {i}: map {:?} is not a continuous surjection", a.map)
                });
            }
            Err(e) => t.failures.push(format!("case {i}: {} points, base {base:?}: {e}", x.point_count())),
        }
        t
    });
    let report = report.absorb_all(tallies);
    // non-discrete targets: fibres may fail to be singletons; recorded only
    let others: Vec<FiniteSpace> = (1..=3).flat_map(all_spaces).filter(|x| !x.is_discrete()).collect();
    let tallies = opts.map(&others, |_, x| {
        let mut t = Tally::default();
        match alexandroff_preimage(x, x.closed_sets()) {
            Ok(_) => t.count("non_discrete_onto"),
            Err(WallmanError::NonSingletonFiber { .. }) => t.count("non_discrete_fibre_not_singleton"),
            Err(e) => t.failures.push(format!("{:?}: {e}", x.closed_sets())),
        }
        t
    });
    report.absorb_all(tallies)
}

/// Game equivalence is isomorphism, and every Spoiler win converts to a
/// separating sentence.
pub fn ef(opts: &SweepOptions, max_size: usize) -> SuiteReport {
    let lattices = all_lattices(max_size);
    let pairs: Vec<(usize, usize)> = (0..lattices.len())
        .flat_map(|i| (0..lattices.len()).map(move |j| (i, j)))
        .collect();
    let none = Interpretation::new();
    let tallies = opts.map(&pairs, |_, &(i, j)| {
        let mut t = Tally::default();
        let (a, b) = (&lattices[i], &lattices[j]);
        let iso = are_isomorphic(a, b);
        let eq = elementarily_equivalent_finite(a, b);
        t.check(iso == eq, || format!("pair {i},{j}: isomorphic {iso} vs equivalent {eq}"));
        if !eq {
            let k = ef_threshold(a, b, a.size() + b.size()).expect("non-isomorphic pairs separate");
            *t.counts.entry(format!("threshold_{k}")).or_default() += 1;
            let s = ef_equivalent(a, b, k).strategy.expect("spoiler wins");
            let f = s.to_sentence();
            let separates = eval(a, &f, &none).unwrap_or(false) && !eval(b, &f, &none).unwrap_or(true);
            t.check(separates, || format!("pair {i},{j}: {f} does not separate"));
            t.check(f.quantifier_rank() <= k, || format!("pair {i},{j}: rank above {k}"));
        }
        t
    });
    SuiteReport::new("ef").absorb_all(tallies)
}

fn random_term(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str], consts: &[String]) -> Term {
    if depth > 0 && rng.gen_bool(0.3) {
        let a = random_term(rng, depth - 1, vars, consts);
        let b = random_term(rng, depth - 1, vars, consts);
        return if rng.gen_bool(0.5) { a.meet(b) } else { a.join(b) };
    }
    let leaves = vars.len() + consts.len() + 2;
    match rng.gen_range(0..leaves) {
        k if k < vars.len() => Term::var(vars[k]),
        k if k < vars.len() + consts.len() => Term::constant(&consts[k - vars.len()]),
        k if k == leaves - 2 => Term::Bottom,
        _ => Term::Top,
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str], consts: &[String]) -> Formula {
    let term = |rng: &mut ChaCha8Rng| random_term(rng, 1, vars, consts);
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..4) {
            0 => Formula::Eq(term(rng), term(rng)),
            1 => Formula::Leq(term(rng), term(rng)),
            2 => Formula::J(term(rng), term(rng)),
            _ => Formula::M((0..rng.gen_range(1..3)).map(|_| term(rng)).collect()),
        };
    }
    let a = random_matrix(rng, depth - 1, vars, consts);
    match rng.gen_range(0..4) {
        0 => Formula::not(a),
        1 => a.and(random_matrix(rng, depth - 1, vars, consts)),
        2 => a.or(random_matrix(rng, depth - 1, vars, consts)),
        _ => a.implies(random_matrix(rng, depth - 1, vars, consts)),
    }
}

/// A random sentence with up to three quantifiers over the given constants.
pub fn random_sentence(rng: &mut ChaCha8Rng, consts: &[String]) -> Formula {
    let names = ["x", "y", "z"];
    let q = rng.gen_range(0..=3);
    let vars = &names[..q];
    let mut f = random_matrix(rng, 2, vars, consts);
    for v in vars.iter().rev() {
        f = if rng.gen_bool(0.5) {
            Formula::Forall(v.to_string(), Box::new(f))
        } else {
            Formula::Exists(v.to_string(), Box::new(f))
        };
    }
    f
}

pub fn random_theory(rng: &mut ChaCha8Rng) -> Theory {
    let constants: Vec<String> = (0..rng.gen_range(0..=2)).map(|i| format!("c{i}")).collect();
    let sentences = (0..rng.gen_range(1..=3)).map(|_| random_sentence(rng, &constants)).collect();
    Theory { constants, sentences }
}

/// The catalog search agrees with the naive table search on random
/// theories, models re-verify, and the kappa fragment behaves as expected.
pub fn modelfinder(opts: &SweepOptions, random_cases: usize, max_size: usize) -> SuiteReport {
    let budget = SearchBudget {
        time_limit: std::time::Duration::from_secs(3600),
        ..SearchBudget::with_max_size(max_size)
    };
    let indices: Vec<u64> = (0..random_cases as u64).collect();
    let tallies = opts.map(&indices, |_, &i| {
        let mut t = Tally::default();
        let theory = random_theory(&mut opts.rng(i));
        let fast = find_model(&theory, &budget).expect("well-formed theory");
        let slow = naive_find_model(&theory, max_size).expect("well-formed theory");
        t.count(if fast.is_model() { "satisfiable" } else { "unsatisfiable" });
        t.check(fast.is_model() == slow.is_model(), || {
            let text: Vec<String> = theory.sentences.iter().map(|s| s.to_string()).collect();
            format!("case {i}: search {} vs naive {} on {text:?}", fast.is_model(), slow.is_model())
        });
        for r in [&fast, &slow] {
            if let Some((l, interp)) = r.model() {
                t.check(eval_theory(l, &theory, interp).unwrap_or(false), || format!("case {i}: model fails re-check"));
            }
        }
        t
    });
    let mut report = SuiteReport::new("modelfinder").absorb_all(tallies);

    let mut t = Tally::default();
    let kappa = kappa_constants_theory(2);
    let r = find_model(&kappa, &SearchBudget::with_max_size(10)).expect("well-formed");
    match r.model() {
        Some((l, interp)) => {
            *t.counts.entry(format!("kappa2_model_size_{}", l.size())).or_default() += 1;
            t.check(eval_theory(l, &kappa, interp).unwrap_or(false), || "kappa model fails re-check".into());
        }
        None => t.failures.push(format!("kappa(2): {r:?}")),
    }
    let mut clash = kappa;
    clash
        .sentences
        .push(Formula::eq(Term::constant("a1"), Term::constant("b1")));
    for n in 2..=8 {
        let r = find_model(&clash, &SearchBudget::with_max_size(n)).expect("well-formed");
        t.check(r == ModelResult::ExhaustedNoModel { max_size: n }, || format!("clash at {n}: {r:?}"));
    }
    report.absorb(t);
    report
}

fn power_set_chicanes(k: usize) -> Tally {
    let mut t = Tally::default();
    let l = FiniteLattice::power_set(k);
    let full = (1usize << k) - 1;
    t.check(satisfies_hi(&l).holds, || format!("2^{k} fails HI"));
    for c in 0..=full {
        for d in (0..=full).filter(|d| c & d == 0) {
            for f in (0..=full).filter(|f| c & f == 0) {
                for g in (0..=full).filter(|g| d & g == 0) {
                    let p = PliandFoursome::new(&l, c, d, f, g).expect("pliand by construction");
                    let z = Chicane {
                        z1: c,
                        z2: full & !(c | d),
                        z3: d,
                    };
                    t.check(z.is_chicane_for(&l, &p), || format!("2^{k}: ({c},{d},{f},{g})"));
                    t.count("foursomes");
                }
            }
        }
    }
    t
}

fn space_chicanes(x: &FiniteSpace) -> Tally {
    let mut t = Tally::default();
    let hyp = closed_set_lattice(x);
    let sets = &hyp.sets;
    let l = &hyp.lattice;
    for (ci, &c) in sets.iter().enumerate() {
        for (di, &d) in sets.iter().enumerate().filter(|(_, d)| c.is_disjoint(**d)) {
            for (fi, &f) in sets.iter().enumerate().filter(|(_, f)| c.is_disjoint(**f)) {
                for (gi, &g) in sets.iter().enumerate().filter(|(_, g)| d.is_disjoint(**g)) {
                    let p = PliandFoursome::new(l, ci, di, fi, gi).expect("disjoint sets are pliand");
                    let lattice_level = find_chicane(l, &p).expect("pliand").is_some();
                    let s = SetFoursome { c, d, f, g };
                    let by_lattice_form = find_set_chicane(x, &s, ChicaneForm::Lattice).is_some();
                    let by_zigzag = find_set_chicane(x, &s, ChicaneForm::ZigZag).is_some();
                    t.check(lattice_level == by_lattice_form, || {
                        format!("{:?}: ({c},{d},{f},{g}) lattice {lattice_level} vs sets {by_lattice_form}", x.closed_sets())
                    });
                    if x.is_t1() {
                        t.check(lattice_level == by_zigzag, || {
                            format!("{:?}: ({c},{d},{f},{g}) lattice {lattice_level} vs zigzag {by_zigzag}", x.closed_sets())
                        });
                    } else if lattice_level != by_zigzag {
                        t.count("non_t1_zigzag_disagreements");
                    }
                }
            }
        }
    }
    for base in lattice_bases(x) {
        match base_restricted_hi(x, &base) {
            Ok(r) if x.is_t1() => t.check(r.agree, || format!("{:?} base {base:?}: restricted HI differs", x.closed_sets())),
            Ok(r) => {
                if !r.agree {
                    t.count("non_t1_base_hi_disagreements");
                }
            }
            Err(e) => t.failures.push(e.to_string()),
        }
    }
    t
}

/// Power sets satisfy the chicane condition with the explicit witness;
/// lattice-level and set-level chicane searches agree on small spaces.
pub fn chicanes(opts: &SweepOptions, max_points: usize) -> SuiteReport {
    let ks: Vec<usize> = (0..=4).collect();
    let mut report = SuiteReport::new("chicanes").absorb_all(opts.map(&ks, |_, &k| power_set_chicanes(k)));
    let spaces: Vec<FiniteSpace> = (0..=max_points).flat_map(all_spaces).collect();
    report = report.absorb_all(opts.map(&spaces, |_, x| space_chicanes(x)));
    report
}

fn random_q(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=16i64);
    rational(rng.gen_range(0..=den), den)
}

/// Disjoint random sets: sorted cut points paired into intervals, each
/// dealt to the first set, the second, or neither.
fn random_disjoint(rng: &mut ChaCha8Rng) -> (RationalIntervalSet, RationalIntervalSet) {
    let mut cuts: Vec<Rational> = (0..2 * rng.gen_range(1..=4)).map(|_| random_q(rng)).collect();
    cuts.sort();
    cuts.dedup();
    if cuts.len() % 2 == 1 {
        let extra = cuts[cuts.len() - 1].clone();
        cuts.push(extra);
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for pair in cuts.chunks(2) {
        let iv = (pair[0].clone(), pair[1].clone());
        match rng.gen_range(0..3) {
            0 => a.push(iv),
            1 => b.push(iv),
            _ => {}
        }
    }
    (
        RationalIntervalSet::normalize(a).expect("unit interval"),
        RationalIntervalSet::normalize(b).expect("unit interval"),
    )
}

fn random_set(rng: &mut ChaCha8Rng) -> RationalIntervalSet {
    let pairs = (0..rng.gen_range(0..=4))
        .map(|_| {
            let (p, q) = (random_q(rng), random_q(rng));
            if p <= q {
                (p, q)
            } else {
                (q, p)
            }
        })
        .collect();
    RationalIntervalSet::normalize(pairs).expect("unit interval")
}

fn interval_case(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let (a, b, c) = (random_set(rng), random_set(rng), random_set(rng));
    for (op, r) in [("meet", a.meet(&b)), ("join", a.join(&b))] {
        t.check(r.is_canonical(), || format!("{op} of {a} and {b} is not canonical"));
    }
    t.check(a.meet(&b.join(&c)) == a.meet(&b).join(&a.meet(&c)), || format!("meet does not distribute: {a}, {b}, {c}"));
    t.check(a.join(&b.meet(&c)) == a.join(&b).meet(&a.join(&c)), || format!("join does not distribute: {a}, {b}, {c}"));

    let (x, y) = random_disjoint(rng);
    match normality_witness(&x, &y) {
        Ok((u, v)) => t.check(
            x.meet(&u).is_bottom() && y.meet(&v).is_bottom() && u.join(&v).is_top(),
            || format!("bad normality witness for {x}, {y}: {u}, {v}"),
        ),
        Err(e) => t.failures.push(format!("normality_witness({x}, {y}): {e}")),
    }
    if !a.leq(&b) {
        match disjunctive_witness(&a, &b) {
            Ok(w) => t.check(!w.is_bottom() && w.leq(&a) && w.meet(&b).is_bottom(), || {
                format!("bad disjunctive witness for {a}, {b}: {w}")
            }),
            Err(e) => t.failures.push(format!("disjunctive_witness({a}, {b}): {e}")),
        }
    }
    t.check(refute_partition(&x, &y).is_some(), || format!("{x}, {y} was not refuted"));
    t.check(refute_partition(&a, &b).is_some(), || format!("{a}, {b} was not refuted"));
}

/// Randomized exact-arithmetic checks on finite unions of closed intervals.
pub fn intervals(opts: &SweepOptions, cases: usize) -> SuiteReport {
    let chunks: Vec<u64> = (0..cases.div_ceil(100) as u64).collect();
    let tallies = opts.map(&chunks, |_, &chunk| {
        let mut t = Tally::default();
        let mut rng = opts.rng(chunk);
        let start = chunk as usize * 100;
        for _ in start..cases.min(start + 100) {
            interval_case(&mut rng, &mut t);
            t.count("checked");
        }
        t
    });
    SuiteReport::new("intervals").absorb_all(tallies)
}
