use serde_json::Value;
use wallman_lab_demo::{check_lattice, interval_op, wallman};

const BA4: &str = r#"{"poset":{"size":2,"le":[]}}"#;
const M3: &str = r#"{"elements":["0","a","b","c","1"],"meet":[[0,0,0,0,0],[0,1,0,0,1],[0,0,2,0,2],[0,0,0,3,3],[0,1,2,3,4]],"join":[[0,1,2,3,4],[1,1,4,4,4],[2,4,2,4,4],[3,4,4,3,4],[4,4,4,4,4]],"bottom":0,"top":4}"#;

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn lattice_check() {
    let v = json(check_lattice(BA4));
    assert_eq!(v["size"], 4);
    assert_eq!(v["boolean"], true);
    assert_eq!(v["conn"]["holds"], false);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    let m = json(check_lattice(M3));
    assert_eq!(m["distributive"]["holds"], false);
    assert!(json(check_lattice("{")).get("error").is_some());
}

#[test]
fn wallman_space() {
    let v = json(wallman(BA4));
    assert_eq!(v["points"], 2);
    assert_eq!(v["discrete"], true);
    assert!(json(wallman(M3))["error"].as_str().unwrap().contains("distributive"));
}

#[test]
fn intervals() {
    let v = json(interval_op("meet", "[0,1/2]", "[1/4,1]"));
    assert_eq!(v["result"], "[1/4,1/2]");
    let v = json(interval_op("normality", "[0,1/4]", "[1/2,1]"));
    assert!(v["u"].is_string() && v["v"].is_string());
    let v = json(interval_op("refute", "[0,1/2]", "[1/2,1]"));
    assert_eq!(v["violation"]["violation"], "overlap");
    assert!(json(interval_op("xor", "∅", "∅")).get("error").is_some());
    assert!(json(interval_op("disjunctive", "[0,1/2]", "[0,1]")).get("error").is_some());
}
