//! Bounded search for finite lattice models of first-order theories.
//!
//! Lattices are taken from the isomorphism-class catalog, smallest first, so
//! no two isomorphic tables are ever examined for the constant-free part of a
//! theory. For each candidate the constant-free sentences are checked once,
//! then constants are assigned by backtracking: a sentence is tested as soon
//! as the last constant it mentions has a value. A returned model is checked
//! again with the plain evaluator before it leaves this module.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fol::{
    builtin_conn, builtin_dim_le1, builtin_disjunctivity, builtin_distributivity, builtin_hi,
    builtin_normality, diagram, eval_theory, is_identifier, CompiledSentence, FolError, Formula,
    Interpretation, Term, Theory,
};
use crate::homsearch::surjection_from_embedding;
use crate::lattice::{lattices_of_size, Elem, FiniteLattice};
use crate::space::{closed_set_lattice, FiniteSpace};
use crate::wallman::wallman_space;

/// Largest lattice size the catalog is asked for.
pub const MAX_SEARCH_SIZE: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed theory: {0}")]
    Theory(#[from] FolError),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("part {part} refers to sentence {index}, but the theory has {len}")]
    PartOutOfRange { part: usize, index: usize, len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_size: usize,
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_size: 8,
            node_limit: 100_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl SearchBudget {
    pub fn with_max_size(max_size: usize) -> Self {
        SearchBudget {
            max_size,
            ..SearchBudget::default()
        }
    }

    pub fn check(&self) -> Result<(), ModelError> {
        if self.max_size < 2 {
            return Err(ModelError::InvalidBudget("max_size must be at least 2".into()));
        }
        if self.max_size > MAX_SEARCH_SIZE {
            return Err(ModelError::InvalidBudget(format!(
                "max_size {} exceeds the supported {MAX_SEARCH_SIZE}",
                self.max_size
            )));
        }
        if self.node_limit == 0 || self.time_limit.is_zero() {
            return Err(ModelError::InvalidBudget("limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    Nodes,
    Time,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ModelResult {
    Model {
        lattice: FiniteLattice,
        interpretation: Interpretation,
    },
    ExhaustedNoModel {
        max_size: usize,
    },
    /// The search stopped while examining lattices of `size` elements.
    BudgetExceeded {
        limit: Limit,
        size: usize,
    },
}

impl ModelResult {
    pub fn model(&self) -> Option<(&FiniteLattice, &Interpretation)> {
        match self {
            ModelResult::Model {
                lattice,
                interpretation,
            } => Some((lattice, interpretation)),
            _ => None,
        }
    }

    pub fn is_model(&self) -> bool {
        self.model().is_some()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Candidate lattices plus partial constant assignments visited.
    pub nodes: u64,
    pub lattices: u64,
}

struct Search<'a> {
    budget: &'a SearchBudget,
    start: Instant,
    stats: SearchStats,
    stopped: Option<Limit>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget.node_limit {
            self.stopped = Some(Limit::Nodes);
        } else if self.stats.nodes.is_multiple_of(1024) && self.start.elapsed() > self.budget.time_limit {
            self.stopped = Some(Limit::Time);
        }
        self.stopped.is_none()
    }
}

/// Sentences grouped by the position of the last constant they mention.
struct Schedule {
    free: Vec<CompiledSentence>,
    by_last: Vec<Vec<CompiledSentence>>,
}

fn schedule(theory: &Theory) -> Result<Schedule, FolError> {
    let k = theory.constants.len();
    let mut free: Vec<(usize, CompiledSentence)> = Vec::new();
    let mut by_last: Vec<Vec<CompiledSentence>> = (0..k).map(|_| Vec::new()).collect();
    for s in &theory.sentences {
        let compiled = CompiledSentence::compile(s, &theory.constants)?;
        let used = s.constants();
        match theory.constants.iter().rposition(|c| used.contains(c)) {
            None => free.push((s.quantifier_rank(), compiled)),
            Some(last) => by_last[last].push(compiled),
        }
    }
    // cheaper sentences first; truth of the conjunction does not depend on order
    free.sort_by_key(|(rank, _)| *rank);
    Ok(Schedule {
        free: free.into_iter().map(|(_, c)| c).collect(),
        by_last,
    })
}

fn assign(l: &FiniteLattice, plan: &Schedule, values: &mut Vec<Elem>, search: &mut Search) -> bool {
    let i = values.len();
    if i == plan.by_last.len() {
        return true;
    }
    for e in l.elements() {
        if !search.tick() {
            return false;
        }
        values.push(e);
        if plan.by_last[i].iter().all(|s| s.holds(l, values)) && assign(l, plan, values, search) {
            return true;
        }
        values.pop();
        if search.stopped.is_some() {
            return false;
        }
    }
    false
}

/// Searches lattices of 2 to `budget.max_size` elements for a model of `theory`.
pub fn find_model(theory: &Theory, budget: &SearchBudget) -> Result<ModelResult, ModelError> {
    find_model_with_stats(theory, budget).map(|(r, _)| r)
}

pub fn find_model_with_stats(theory: &Theory, budget: &SearchBudget) -> Result<(ModelResult, SearchStats), ModelError> {
    theory.check()?;
    budget.check()?;
    let plan = schedule(theory)?;
    let mut search = Search {
        budget,
        start: Instant::now(),
        stats: SearchStats::default(),
        stopped: None,
    };
    let placeholders = vec![0; theory.constants.len()];
    for n in 2..=budget.max_size {
        for l in lattices_of_size(n).iter() {
            if !search.tick() {
                break;
            }
            search.stats.lattices += 1;
            if !plan.free.iter().all(|s| s.holds(l, &placeholders)) {
                continue;
            }
            let mut values = Vec::with_capacity(theory.constants.len());
            if assign(l, &plan, &mut values, &mut search) {
                let interpretation: Interpretation = theory.constants.iter().cloned().zip(values).collect();
                assert!(
                    eval_theory(l, theory, &interpretation)?,
                    "search returned a structure that is not a model"
                );
                let result = ModelResult::Model {
                    lattice: l.clone(),
                    interpretation,
                };
                return Ok((result, search.stats));
            }
            if search.stopped.is_some() {
                break;
            }
        }
        if let Some(limit) = search.stopped {
            return Ok((ModelResult::BudgetExceeded { limit, size: n }, search.stats));
        }
    }
    Ok((
        ModelResult::ExhaustedNoModel {
            max_size: budget.max_size,
        },
        search.stats,
    ))
}

/// Reference search that shares nothing with [`find_model`] beyond the
/// evaluator: every pair of commutative, idempotent tables on `0..n` with `0`
/// as bottom and `n - 1` as top is validated, then every interpretation of
/// the constants is tried. Only practical for `max_size ≤ 4` or so.
pub fn naive_find_model(theory: &Theory, max_size: usize) -> Result<ModelResult, ModelError> {
    theory.check()?;
    for n in 2..=max_size {
        let free: Vec<(usize, usize)> = (1..n.saturating_sub(1))
            .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
            .collect();
        let choices = n.pow(free.len() as u32);
        for meet_code in 0..choices {
            for join_code in 0..choices {
                let Some(l) = tables_from_codes(n, &free, meet_code, join_code) else {
                    continue;
                };
                let k = theory.constants.len();
                for code in 0..n.pow(k as u32) {
                    let interp: Interpretation = theory
                        .constants
                        .iter()
                        .enumerate()
                        .map(|(i, c)| (c.clone(), code / n.pow(i as u32) % n))
                        .collect();
                    if eval_theory(&l, theory, &interp)? {
                        return Ok(ModelResult::Model {
                            lattice: l,
                            interpretation: interp,
                        });
                    }
                }
            }
        }
    }
    Ok(ModelResult::ExhaustedNoModel { max_size })
}

fn tables_from_codes(n: usize, free: &[(usize, usize)], meet_code: usize, join_code: usize) -> Option<FiniteLattice> {
    let top = n - 1;
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            meet[a][b] = if a == b || b == top { a } else if a == top { b } else { 0 };
            join[a][b] = if a == b || b == 0 { a } else if a == 0 { b } else { top };
        }
    }
    for (k, &(i, j)) in free.iter().enumerate() {
        let m = meet_code / n.pow(k as u32) % n;
        let jn = join_code / n.pow(k as u32) % n;
        meet[i][j] = m;
        meet[j][i] = m;
        join[i][j] = jn;
        join[j][i] = jn;
    }
    let tables = crate::lattice::LatticeTables {
        elements: (0..n).map(|i| i.to_string()).collect(),
        meet,
        join,
        bottom: 0,
        top,
    };
    FiniteLattice::validate(&tables).ok()
}

/// Constants `a1..at`, `b1..bt` with `ai ∧ bi = 0` and every meet of an `a`
/// family and a `b` family over disjoint nonempty-in-total index sets nonzero.
pub fn kappa_constants_theory(t: usize) -> Theory {
    assert!(t >= 1, "kappa_constants_theory needs t >= 1");
    let a = |i: usize| Term::constant(&format!("a{i}"));
    let b = |i: usize| Term::constant(&format!("b{i}"));
    let mut sentences: Vec<Formula> = (1..=t)
        .map(|i| Formula::eq(a(i).meet(b(i)), Term::Bottom))
        .collect();
    // each index goes to p (digit 1), q (digit 2) or neither (digit 0)
    for code in 1..3usize.pow(t as u32) {
        let mut rest = code;
        let mut parts = Vec::new();
        for i in 1..=t {
            match rest % 3 {
                1 => parts.push(a(i)),
                2 => parts.push(b(i)),
                _ => {}
            }
            rest /= 3;
        }
        let meet = parts.into_iter().reduce(Term::meet).expect("code is nonzero");
        sentences.push(Formula::ne(meet, Term::Bottom));
    }
    let constants = (1..=t)
        .map(|i| format!("a{i}"))
        .chain((1..=t).map(|i| format!("b{i}")))
        .collect();
    Theory { constants, sentences }
}

/// The structural requirements placed on a preimage lattice.
pub fn preimage_axioms(include_conn: bool) -> Vec<Formula> {
    let mut axioms = vec![builtin_distributivity(), builtin_disjunctivity(), builtin_normality()];
    if include_conn {
        axioms.push(builtin_conn(Term::Top));
    }
    axioms.push(builtin_hi());
    axioms.push(builtin_dim_le1());
    axioms
}

/// One constant per element of `b`, in element order: the element's name if
/// every name is a distinct identifier, otherwise `e0, e1, ...`.
pub fn element_constants(b: &FiniteLattice) -> Vec<String> {
    let names = b.names();
    let mut sorted = names.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == names.len() && names.iter().all(|n| is_identifier(n)) {
        names.to_vec()
    } else {
        (0..b.size()).map(|i| format!("e{i}")).collect()
    }
}

/// The preimage axioms together with the diagram of `b`.
pub fn hi_preimage_theory(b: &FiniteLattice) -> Theory {
    hi_preimage_theory_with(b, true)
}

pub fn hi_preimage_theory_with(b: &FiniteLattice, include_conn: bool) -> Theory {
    let named: Vec<(String, Elem)> = element_constants(b).into_iter().zip(b.elements()).collect();
    let diag = diagram(b, &named).expect("element constants are distinct identifiers");
    let mut sentences = preimage_axioms(include_conn);
    sentences.extend(diag.sentences);
    Theory {
        constants: diag.constants,
        sentences,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Theory,
    Model,
    Wallman,
    Surjection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageOutcome {
    pub stage: Stage,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageReport {
    pub stages: Vec<StageOutcome>,
    pub model: Option<ModelResult>,
    /// Wallman point to point of `X`, when every stage succeeded.
    pub map: Option<Vec<usize>>,
    pub completed: bool,
}

/// Builds the preimage theory of the closed-set lattice of `x`, searches for a
/// model, and maps the model's Wallman space onto `x` through the diagram.
pub fn build_preimage(x: &FiniteSpace, budget: &SearchBudget, include_conn: bool) -> Result<PreimageReport, ModelError> {
    let hyp = closed_set_lattice(x);
    let theory = hi_preimage_theory_with(&hyp.lattice, include_conn);
    let mut report = PreimageReport {
        stages: vec![StageOutcome {
            stage: Stage::Theory,
            ok: true,
            detail: format!(
                "{} constants, {} sentences",
                theory.constants.len(),
                theory.sentences.len()
            ),
        }],
        model: None,
        map: None,
        completed: false,
    };
    let result = find_model(&theory, budget)?;
    let model = result.model().map(|(l, i)| (l.clone(), i.clone()));
    report.stages.push(StageOutcome {
        stage: Stage::Model,
        ok: model.is_some(),
        detail: match &result {
            ModelResult::Model { lattice, .. } => format!("model with {} elements", lattice.size()),
            ModelResult::ExhaustedNoModel { max_size } => format!("no model up to {max_size} elements"),
            ModelResult::BudgetExceeded { limit, size } => format!("{limit:?} budget exceeded at size {size}"),
        },
    });
    report.model = Some(result);
    let Some((l, interp)) = model else {
        return Ok(report);
    };
    match wallman_space(&l) {
        Ok(w) => report.stages.push(StageOutcome {
            stage: Stage::Wallman,
            ok: true,
            detail: format!("{} points", w.point_count()),
        }),
        Err(e) => {
            report.stages.push(StageOutcome {
                stage: Stage::Wallman,
                ok: false,
                detail: e.to_string(),
            });
            return Ok(report);
        }
    }
    let phi: Vec<Elem> = theory.constants.iter().map(|c| interp[c]).collect();
    let outcome = match surjection_from_embedding(&hyp, &phi, &l, x) {
        Ok(s) if s.onto && s.preimages_match => {
            report.map = Some(s.map);
            report.completed = true;
            StageOutcome {
                stage: Stage::Surjection,
                ok: true,
                detail: "onto, preimages match".into(),
            }
        }
        Ok(s) => StageOutcome {
            stage: Stage::Surjection,
            ok: false,
            detail: format!("onto: {}, preimages match: {}", s.onto, s.preimages_match),
        },
        Err(e) => StageOutcome {
            stage: Stage::Surjection,
            ok: false,
            detail: e.to_string(),
        },
    };
    report.stages.push(outcome);
    Ok(report)
}

/// Runs the search separately on each part, given as sentence indices.
pub fn check_finite_subset_consistency(
    theory: &Theory,
    parts: &[Vec<usize>],
    budget: &SearchBudget,
) -> Result<Vec<ModelResult>, ModelError> {
    let len = theory.sentences.len();
    parts
        .iter()
        .enumerate()
        .map(|(part, idx)| {
            if let Some(&index) = idx.iter().find(|&&i| i >= len) {
                return Err(ModelError::PartOutOfRange { part, index, len });
            }
            let sub = Theory {
                constants: theory.constants.clone(),
                sentences: idx.iter().map(|&i| theory.sentences[i].clone()).collect(),
            };
            find_model(&sub, budget)
        })
        .collect()
}
