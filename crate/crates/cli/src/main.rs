mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wallman_lab::fol::{ef_equivalent, eval, parse, Interpretation};
use wallman_lab::formats::{lattice_dot, parse_interval_set, parse_lattice, parse_space, parse_theory, wallman_dot, SpaceFile};
use wallman_lab::homsearch::{continuous_surjections, find_l_morphism, find_lattice_embedding, surjection_from_morphism};
use wallman_lab::interval::{disjunctive_witness, normality_witness, refute_partition, RationalIntervalSet};
use wallman_lab::lattice::{
    conn, is_boolean, is_disjunctive, is_distributive, is_normal, satisfies_dim_le1, satisfies_hi,
};
use wallman_lab::modelfinder::{build_preimage, find_model_with_stats, SearchBudget};
use wallman_lab::sweep::{run_suite, SweepOptions, SUITES};
use wallman_lab::wallman::{stone_space, wallman_space, WallmanSpace};
use wallman_lab::FiniteLattice;

use report::RunReport;

#[derive(Parser)]
#[command(name = "wallman-lab", version, about = "Finite lattices, Wallman spaces and their first-order theory")]
struct Cli {
    /// Report `null` for elapsed time so output is byte-stable.
    #[arg(long, global = true)]
    mask_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Predicate {
    Distributive,
    Disjunctive,
    Boolean,
    Normal,
    Conn,
    Hi,
    Dim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IntervalOp {
    Normalize,
    Meet,
    Join,
    Leq,
    Normality,
    Disjunctive,
    Refute,
}

#[derive(Subcommand)]
enum Command {
    /// Decide lattice predicates, with witnesses.
    Check {
        lattice: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [
            Predicate::Distributive, Predicate::Disjunctive, Predicate::Boolean, Predicate::Normal,
            Predicate::Conn, Predicate::Hi, Predicate::Dim,
        ])]
        predicates: Vec<Predicate>,
        /// Exit 1 when any requested predicate fails.
        #[arg(long)]
        assert: bool,
    },
    /// Ultrafilter space of a distributive lattice.
    Wallman {
        lattice: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Stone space of a finite Boolean algebra.
    Stone {
        lattice: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Evaluate a sentence in a lattice.
    Eval {
        lattice: PathBuf,
        formula: String,
        /// Constant interpretation, `name=element` with an element name or index.
        #[arg(long = "let", value_name = "NAME=ELEM")]
        lets: Vec<String>,
    },
    /// Ehrenfeucht–Fraïssé game between two lattices.
    Ef {
        a: PathBuf,
        b: PathBuf,
        /// Defaults to the combined size, which decides isomorphism.
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Search the lattice catalog for a model of a theory.
    FindModel {
        theory: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 100_000_000)]
        node_limit: u64,
        #[arg(long, default_value_t = 60)]
        time_limit_secs: u64,
    },
    /// Continuous surjection X -> Y through an L-morphism on the closed sets of Y.
    Surject { x: PathBuf, y: PathBuf },
    /// Lattice embedding B -> L.
    Embed { b: PathBuf, l: PathBuf },
    /// Model-theoretic preimage of a finite space.
    Preimage {
        space: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Leave the connectedness axiom out of the theory.
        #[arg(long)]
        no_conn: bool,
    },
    /// Operations on finite unions of closed rational intervals in [0,1].
    Interval {
        #[arg(value_enum)]
        op: IntervalOp,
        /// Text `[0,1/4]∪[1/2,1]` or JSON `[["0","1/4"],["1/2","1"]]`.
        a: String,
        b: Option<String>,
    },
    /// Run the property suites.
    Sweep {
        /// Suite names; all when omitted.
        suites: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Input problems map to exit 2; everything else is part of the outcome.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(Value, bool), InputError>;

/// Largest map count the surject command enumerates as a cross-check.
const ORACLE_MAPS: f64 = 1e6;

fn read(report: &mut RunReport, role: &str, path: &Path) -> Result<String, InputError> {
    let bytes = fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    report.digest(role, &bytes);
    String::from_utf8(bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn lattice(report: &mut RunReport, role: &str, path: &Path) -> Result<FiniteLattice, InputError> {
    let text = read(report, role, path)?;
    parse_lattice(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn element(l: &FiniteLattice, s: &str) -> Result<usize, InputError> {
    if let Some(i) = l.elements().find(|&i| l.name(i) == s) {
        return Ok(i);
    }
    s.parse::<usize>()
        .ok()
        .filter(|&i| i < l.size())
        .ok_or_else(|| InputError(format!("no element named or numbered {s:?}")))
}

fn wallman_json(w: &WallmanSpace, l: &FiniteLattice) -> Value {
    let points: Vec<Vec<&str>> = w
        .points
        .iter()
        .map(|u| u.members.iter().map(|&a| l.name(a)).collect())
        .collect();
    let base: Vec<Value> = l
        .elements()
        .map(|a| json!({"element": l.name(a), "points": w.c(a).to_vec()}))
        .collect();
    json!({
        "points": w.point_count(),
        "ultrafilters": points,
        "base": base,
        "space": SpaceFile::from_space(&w.space()),
    })
}

fn write_dot(path: &Path, l: &FiniteLattice, w: &WallmanSpace) -> Result<(), InputError> {
    let text = format!("{}{}", lattice_dot(l), wallman_dot(w, l));
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn cmd_check(r: &mut RunReport, path: &Path, preds: &[Predicate], assert: bool) -> Outcome {
    let l = lattice(r, "lattice", path)?;
    let mut verdicts = serde_json::Map::new();
    let mut all = true;
    for &p in preds {
        let (holds, v) = match p {
            Predicate::Distributive => {
                let v = is_distributive(&l);
                (v.holds, json!(v))
            }
            Predicate::Disjunctive => {
                let v = is_disjunctive(&l);
                (v.holds, json!(v))
            }
            Predicate::Boolean => {
                let b = is_boolean(&l);
                (b, json!({"holds": b, "witness": null}))
            }
            Predicate::Normal => {
                let v = is_normal(&l);
                (v.holds, json!({"holds": v.holds, "witness": v.failing_pair}))
            }
            Predicate::Conn => {
                let v = conn(&l, l.top())?;
                (v.holds, json!(v))
            }
            Predicate::Hi => {
                let v = satisfies_hi(&l);
                (v.holds, json!(v))
            }
            Predicate::Dim => {
                let v = satisfies_dim_le1(&l);
                (v.holds, json!(v))
            }
        };
        all &= holds;
        let name = p.to_possible_value().expect("named variant").get_name().to_string();
        verdicts.insert(name, v);
    }
    Ok((json!({"size": l.size(), "predicates": verdicts}), !assert || all))
}

fn cmd_wallman(r: &mut RunReport, path: &Path, dot: Option<&Path>, boolean: bool) -> Outcome {
    let l = lattice(r, "lattice", path)?;
    let w = if boolean { stone_space(&l)? } else { wallman_space(&l)? };
    if let Some(d) = dot {
        write_dot(d, &l, &w)?;
    }
    Ok((wallman_json(&w, &l), true))
}

fn cmd_eval(r: &mut RunReport, path: &Path, formula: &str, lets: &[String]) -> Outcome {
    let l = lattice(r, "lattice", path)?;
    r.digest("formula", formula.as_bytes());
    let f = parse(formula)?;
    let mut interp = Interpretation::new();
    for spec in lets {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| InputError(format!("expected NAME=ELEM, got {spec:?}")))?;
        interp.insert(name.trim().to_string(), element(&l, value.trim())?);
    }
    let holds = eval(&l, &f, &interp)?;
    Ok((json!({"formula": f.to_string(), "holds": holds}), true))
}

fn cmd_ef(r: &mut RunReport, a: &Path, b: &Path, rounds: Option<usize>) -> Outcome {
    let la = lattice(r, "a", a)?;
    let lb = lattice(r, "b", b)?;
    let k = rounds.unwrap_or(la.size() + lb.size());
    let out = ef_equivalent(&la, &lb, k);
    let strategy = out.strategy.map(|s| {
        let f = s.to_sentence();
        let none = Interpretation::new();
        json!({
            "sentence": f.to_string(),
            "depth": s.depth(),
            "holds_in_a": eval(&la, &f, &none).ok(),
            "holds_in_b": eval(&lb, &f, &none).ok(),
        })
    });
    Ok((
        json!({"rounds": k, "equivalent": out.duplicator_wins, "strategy": strategy}),
        true,
    ))
}

fn cmd_find_model(r: &mut RunReport, path: &Path, budget: SearchBudget) -> Outcome {
    let text = read(r, "theory", path)?;
    let theory = parse_theory(&text)?;
    budget.check()?;
    let (result, stats) = find_model_with_stats(&theory, &budget)?;
    let mut out = json!(result);
    out["lattices_examined"] = json!(stats.lattices);
    Ok((out, true))
}

fn cmd_surject(r: &mut RunReport, xp: &Path, yp: &Path) -> Outcome {
    let x = parse_space(&read(r, "x", xp)?)?;
    let y = parse_space(&read(r, "y", yp)?)?;
    let morphism = find_l_morphism(&y, y.closed_sets(), &x)?;
    // Reconstruction needs every fibre to be a single point, which can fail
    // when Y is not T1; that is a finding, not an input error.
    let surjection = morphism.as_ref().map(|m| match surjection_from_morphism(m, &x, &y) {
        Ok(s) => json!(s),
        Err(e) => json!({"error": e.to_string()}),
    });
    // exhaustive enumeration, when it is cheap enough to be a cross-check
    let maps = (y.point_count() as f64).powi(x.point_count() as i32);
    let oracle = (maps <= ORACLE_MAPS).then(|| continuous_surjections(&x, &y).into_iter().next());
    Ok((
        json!({
            "exists": morphism.is_some(),
            "morphism": morphism,
            "surjection": surjection,
            "oracle_checked": oracle.is_some(),
            "oracle_map": oracle.flatten(),
        }),
        true,
    ))
}

fn cmd_embed(r: &mut RunReport, bp: &Path, lp: &Path) -> Outcome {
    let b = lattice(r, "b", bp)?;
    let l = lattice(r, "l", lp)?;
    let map = find_lattice_embedding(&b, &l);
    Ok((json!({"exists": map.is_some(), "map": map}), true))
}

fn cmd_preimage(r: &mut RunReport, path: &Path, max_size: usize, conn: bool) -> Outcome {
    let x = parse_space(&read(r, "space", path)?)?;
    let budget = SearchBudget::with_max_size(max_size);
    budget.check()?;
    Ok((json!(build_preimage(&x, &budget, conn)?), true))
}

fn interval_arg(r: &mut RunReport, role: &str, text: &str) -> Result<RationalIntervalSet, InputError> {
    r.digest(role, text.as_bytes());
    Ok(parse_interval_set(text)?)
}

fn cmd_interval(r: &mut RunReport, op: IntervalOp, a: &str, b: Option<&str>) -> Outcome {
    let x = interval_arg(r, "a", a)?;
    let second = |r: &mut RunReport| match b {
        Some(t) => interval_arg(r, "b", t),
        None => Err(InputError("this operation takes two interval sets".into())),
    };
    let show = |s: &RationalIntervalSet| json!({"text": s.to_string(), "pairs": s});
    let out = match op {
        IntervalOp::Normalize => show(&x),
        IntervalOp::Meet => show(&x.meet(&second(r)?)),
        IntervalOp::Join => show(&x.join(&second(r)?)),
        IntervalOp::Leq => json!({"leq": x.leq(&second(r)?)}),
        IntervalOp::Normality => {
            let (u, v) = normality_witness(&x, &second(r)?)?;
            json!({"u": show(&u), "v": show(&v)})
        }
        IntervalOp::Disjunctive => json!({"c": show(&disjunctive_witness(&x, &second(r)?)?)}),
        IntervalOp::Refute => json!({"violation": refute_partition(&x, &second(r)?)}),
    };
    Ok((out, true))
}

fn cmd_sweep(names: &[String], jobs: usize) -> Outcome {
    let names: Vec<String> = if names.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let opts = SweepOptions::from_env(jobs);
    let mut reports = Vec::new();
    let mut ok = true;
    for n in &names {
        let rep = run_suite(n, &opts).ok_or_else(|| InputError(format!("unknown suite {n:?}; known: {}", SUITES.join(", "))))?;
        ok &= rep.passed();
        reports.push(rep);
    }
    Ok((json!({"seed": opts.seed, "suites": reports}), ok))
}

fn echo(cmd: &Command) -> Value {
    let p = |p: &Path| json!(p.display().to_string());
    match cmd {
        Command::Check { lattice, predicates, assert } => json!({
            "name": "check",
            "lattice": p(lattice),
            "predicates": predicates.iter().map(|x| x.to_possible_value().expect("named").get_name().to_string()).collect::<Vec<_>>(),
            "assert": assert,
        }),
        Command::Wallman { lattice, dot } => json!({"name": "wallman", "lattice": p(lattice), "dot": dot.as_deref().map(p)}),
        Command::Stone { lattice, dot } => json!({"name": "stone", "lattice": p(lattice), "dot": dot.as_deref().map(p)}),
        Command::Eval { lattice, formula, lets } => json!({"name": "eval", "lattice": p(lattice), "formula": formula, "let": lets}),
        Command::Ef { a, b, rounds } => json!({"name": "ef", "a": p(a), "b": p(b), "rounds": rounds}),
        Command::FindModel { theory, max_size, node_limit, time_limit_secs } => json!({
            "name": "find-model", "theory": p(theory), "max_size": max_size,
            "node_limit": node_limit, "time_limit_secs": time_limit_secs,
        }),
        Command::Surject { x, y } => json!({"name": "surject", "x": p(x), "y": p(y)}),
        Command::Embed { b, l } => json!({"name": "embed", "b": p(b), "l": p(l)}),
        Command::Preimage { space, max_size, no_conn } => json!({"name": "preimage", "space": p(space), "max_size": max_size, "no_conn": no_conn}),
        Command::Interval { op, a, b } => json!({
            "name": "interval", "op": op.to_possible_value().expect("named").get_name().to_string(), "a": a, "b": b,
        }),
        // jobs is a runtime setting and lives with the timing block
        Command::Sweep { suites, .. } => json!({"name": "sweep", "suites": suites}),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = RunReport::new(echo(&cli.command));
    let r = &mut report;
    let result = match &cli.command {
        Command::Check { lattice, predicates, assert } => cmd_check(r, lattice, predicates, *assert),
        Command::Wallman { lattice, dot } => cmd_wallman(r, lattice, dot.as_deref(), false),
        Command::Stone { lattice, dot } => cmd_wallman(r, lattice, dot.as_deref(), true),
        Command::Eval { lattice, formula, lets } => cmd_eval(r, lattice, formula, lets),
        Command::Ef { a, b, rounds } => cmd_ef(r, a, b, *rounds),
        Command::FindModel { theory, max_size, node_limit, time_limit_secs } => cmd_find_model(
            r,
            theory,
            SearchBudget {
                max_size: *max_size,
                node_limit: *node_limit,
                time_limit: Duration::from_secs(*time_limit_secs),
            },
        ),
        Command::Surject { x, y } => cmd_surject(r, x, y),
        Command::Embed { b, l } => cmd_embed(r, b, l),
        Command::Preimage { space, max_size, no_conn } => cmd_preimage(r, space, *max_size, !no_conn),
        Command::Interval { op, a, b } => cmd_interval(r, *op, a, b.as_deref()),
        Command::Sweep { suites, jobs } => cmd_sweep(suites, *jobs),
    };
    let jobs = match &cli.command {
        Command::Sweep { jobs, .. } => Some(*jobs),
        _ => None,
    };
    let code = match result {
        Ok((outcome, ok)) => {
            report.outcome = outcome;
            if ok {
                0
            } else {
                1
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            report.outcome = json!({"error": msg});
            2
        }
    };
    let elapsed = (!cli.mask_timing).then(|| start.elapsed());
    let json = report.to_json(elapsed, jobs);
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&json).expect("report serializes"));
    ExitCode::from(code)
}
