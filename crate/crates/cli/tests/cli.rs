use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use wallman_lab::fol::Theory;
use wallman_lab::formats::{parse_lattice, parse_space, parse_theory, LatticeFile, SpaceFile};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

struct Run {
    code: i32,
    stdout: String,
    report: Value,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wallman-lab"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().expect("exit code"),
        stdout,
        report,
    }
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().expect("report object").remove("timing");
    v
}

#[test]
fn check_m3_is_not_distributive() {
    let r = run(&["check", "m3.json", "--predicates", "distributive"]);
    assert_eq!(r.code, 0);
    let d = &r.report["outcome"]["predicates"]["distributive"];
    assert_eq!(d["holds"], false);
    let w: Vec<usize> = serde_json::from_value(d["witness"].clone()).unwrap();
    assert_eq!(w.len(), 3);
    // the witness is three distinct atoms of the diamond
    assert!(w.iter().all(|&e| (1..=3).contains(&e)));
    assert_eq!(r.report["inputs"]["lattice"].as_str().unwrap().len(), "sha256:".len() + 64);
}

#[test]
fn assert_flag_sets_exit_code() {
    assert_eq!(run(&["check", "two.json", "--predicates", "normal", "--assert"]).code, 0);
    assert_eq!(run(&["check", "n5.json", "--predicates", "distributive", "--assert"]).code, 1);
    assert_eq!(run(&["check", "ba4.json", "--predicates", "conn", "--assert"]).code, 1);
}

#[test]
fn malformed_input_exits_2() {
    let r = run(&["check", "broken.json"]);
    assert_eq!(r.code, 2);
    assert!(r.report["outcome"]["error"].as_str().unwrap().contains("lattice laws"));
    assert_eq!(run(&["check", "missing.json"]).code, 2);
    assert_eq!(run(&["eval", "two.json", "x = "]).code, 2);
    assert_eq!(run(&["interval", "meet", "[0,1/2]"]).code, 2);
    assert_eq!(run(&["sweep", "no-such-suite"]).code, 2);
}

#[test]
fn wallman_point_counts() {
    let r = run(&["wallman", "chain3.json"]);
    assert_eq!((r.code, r.report["outcome"]["points"].as_u64()), (0, Some(1)));
    let r = run(&["wallman", "ba4_poset.json"]);
    assert_eq!(r.report["outcome"]["points"], 2);
    assert_eq!(run(&["wallman", "m3.json"]).code, 2);
    assert_eq!(run(&["stone", "chain3.json"]).code, 2);
    assert_eq!(run(&["stone", "ba4.json"]).report["outcome"]["points"], 2);
}

#[test]
fn wallman_writes_dot() {
    let dir = std::env::temp_dir().join(format!("wallman-lab-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("ba4.dot");
    let r = run(&["wallman", "ba4.json", "--dot", dot.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.contains("digraph lattice") && text.contains("digraph wallman"));
    assert_eq!(text.matches("arrowhead=none").count(), 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn eval_conn_on_four_element_algebra() {
    let conn = std::fs::read_to_string(fixtures().join("conn.fol")).unwrap();
    let r = run(&["eval", "ba4.json", conn.trim()]);
    assert_eq!(r.report["outcome"]["holds"], false);
    let r = run(&["eval", "chain3.json", conn.trim()]);
    assert_eq!(r.report["outcome"]["holds"], true);
    let r = run(&["eval", "ba4.json", "a ^ b = 0", "--let", "a={0}", "--let", "b=2"]);
    assert_eq!(r.report["outcome"]["holds"], true);
}

#[test]
fn ef_separates_chains_in_one_round() {
    let r = run(&["ef", "chain2.json", "chain3.json", "--rounds", "1"]);
    let o = &r.report["outcome"];
    assert_eq!(o["equivalent"], false);
    assert_eq!(o["strategy"]["holds_in_a"], true);
    assert_eq!(o["strategy"]["holds_in_b"], false);
    assert_eq!(o["strategy"]["depth"], 1);
    let r = run(&["ef", "chain2.json", "two.json"]);
    assert_eq!(r.report["outcome"]["equivalent"], true);
    assert_eq!(r.report["outcome"]["strategy"], Value::Null);
}

#[test]
fn find_model_emits_tables() {
    let r = run(&["find-model", "hi_theory.json", "--max-size", "2"]);
    let o = &r.report["outcome"];
    assert_eq!(o["outcome"], "model");
    assert_eq!(o["lattice"]["meet"], serde_json::json!([[0, 0], [0, 1]]));
    let r = run(&["find-model", "pair.json", "--max-size", "3"]);
    assert_eq!(r.report["outcome"]["outcome"], "exhausted_no_model");
    let r = run(&["find-model", "pair.json", "--max-size", "4"]);
    assert_eq!(r.report["outcome"]["lattice"]["top"], 3);
    assert_eq!(run(&["find-model", "pair.json", "--max-size", "40"]).code, 2);
}

#[test]
fn surject_and_embed() {
    let r = run(&["surject", "discrete3.json", "discrete2.json"]);
    let s = &r.report["outcome"]["surjection"];
    assert_eq!((s["continuous"].clone(), s["surjective"].clone()), (Value::Bool(true), Value::Bool(true)));
    assert_eq!(run(&["surject", "point.json", "discrete2.json"]).report["outcome"]["exists"], false);
    let r = run(&["surject", "discrete2.json", "sierpinski.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["outcome"]["exists"], true);
    assert_eq!(r.report["outcome"]["oracle_map"], serde_json::json!([0, 1]));
    assert!(r.report["outcome"]["surjection"]["error"].is_string());
    assert_eq!(run(&["embed", "chain3.json", "ba4.json"]).report["outcome"]["map"], serde_json::json!([0, 1, 3]));
    assert_eq!(run(&["embed", "ba4.json", "chain3.json"]).report["outcome"]["exists"], false);
}

#[test]
fn preimage_of_a_point() {
    let r = run(&["preimage", "point.json"]);
    assert_eq!(r.report["outcome"]["completed"], true);
    assert_eq!(r.report["outcome"]["map"], serde_json::json!([0]));
}

#[test]
fn interval_operations() {
    let r = run(&["interval", "meet", "[0,1/2]∪[3/4,1]", r#"[["1/4","7/8"]]"#]);
    assert_eq!(r.report["outcome"]["text"], "[1/4,1/2]∪[3/4,7/8]");
    let r = run(&["interval", "refute", "[0,1/2]", "[1/2,1]"]);
    assert_eq!(r.report["outcome"]["violation"]["violation"], "overlap");
    let r = run(&["interval", "refute", "[0,1/2]", "[3/4,1]"]);
    assert_eq!(r.report["outcome"]["violation"]["violation"], "not_covering");
    let r = run(&["interval", "normalize", "[1/2,1]∪[0,1/2]"]);
    assert_eq!(r.report["outcome"]["text"], "[0,1]");
}

#[test]
fn reports_are_byte_identical_with_timing_masked() {
    for args in [
        &["--mask-timing", "check", "n5.json"][..],
        &["--mask-timing", "find-model", "pair.json", "--max-size", "5"],
        &["--mask-timing", "ef", "m3.json", "n5.json"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    let one = run(&["sweep", "duality", "ef", "intervals", "--jobs", "1"]);
    let three = run(&["sweep", "duality", "ef", "intervals", "--jobs", "3"]);
    assert_eq!(one.code, 0);
    assert_eq!(
        serde_json::to_string(&without_timing(one.report)).unwrap(),
        serde_json::to_string(&without_timing(three.report)).unwrap()
    );
}

#[test]
fn fixtures_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") || path.ends_with("broken.json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let value: Value = serde_json::from_str(&text).unwrap();
        if value.get("sentences").is_some() {
            let t = parse_theory(&text).unwrap();
            let again: Theory = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
            assert_eq!(t, again, "{}", path.display());
        } else if value.get("closed").is_some() {
            let f: SpaceFile = serde_json::from_str(&text).unwrap();
            let again: SpaceFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            assert_eq!(f, again);
            assert_eq!(parse_space(&text).unwrap(), f.to_space().unwrap());
        } else {
            let f: LatticeFile = serde_json::from_str(&text).unwrap();
            let again: LatticeFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            assert_eq!(f, again, "{}", path.display());
            assert_eq!(parse_lattice(&text).unwrap(), again.to_lattice().unwrap());
        }
        seen += 1;
    }
    assert_eq!(seen, 13);
}
