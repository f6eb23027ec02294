//! Browser bindings. Each export takes text and returns a JSON string; errors
//! come back as `{"error": "..."}` so the page has one shape to handle.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use wallman_lab::formats::{lattice_dot, parse_interval_set, parse_lattice, wallman_dot, FormatError};
use wallman_lab::interval::{disjunctive_witness, normality_witness, refute_partition, RationalIntervalSet};
use wallman_lab::lattice::{
    conn, is_boolean, is_disjunctive, is_distributive, is_normal, satisfies_dim_le1, satisfies_hi,
};
use wallman_lab::wallman::wallman_space;

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Every lattice predicate with its witness, plus the Hasse diagram.
#[wasm_bindgen]
pub fn check_lattice(lattice_json: &str) -> String {
    respond((|| {
        let l = parse_lattice(lattice_json).map_err(err)?;
        let normal = is_normal(&l);
        Ok(json!({
            "size": l.size(),
            "names": l.names(),
            "distributive": is_distributive(&l),
            "disjunctive": is_disjunctive(&l),
            "boolean": is_boolean(&l),
            "normal": { "holds": normal.holds, "witness": normal.failing_pair },
            "conn": conn(&l, l.top()).map_err(err)?,
            "hi": satisfies_hi(&l),
            "dim": satisfies_dim_le1(&l),
            "dot": lattice_dot(&l),
        }))
    })())
}

/// Ultrafilters of a distributive lattice, the base set of each element and
/// a DOT rendering of the space.
#[wasm_bindgen]
pub fn wallman(lattice_json: &str) -> String {
    respond((|| {
        let l = parse_lattice(lattice_json).map_err(err)?;
        let w = wallman_space(&l).map_err(err)?;
        let ultrafilters: Vec<Vec<&str>> = w
            .points
            .iter()
            .map(|u| u.members.iter().map(|&a| l.name(a)).collect())
            .collect();
        let base: Vec<Value> = l
            .elements()
            .map(|a| json!({ "element": l.name(a), "points": w.c(a).to_vec() }))
            .collect();
        Ok(json!({
            "points": w.point_count(),
            "ultrafilters": ultrafilters,
            "base": base,
            "discrete": w.space().is_discrete(),
            "dot": wallman_dot(&w, &l),
        }))
    })())
}

fn show(s: &RationalIntervalSet) -> Value {
    json!(s.to_string())
}

/// `op` is one of `meet`, `join`, `leq`, `normality`, `disjunctive`, `refute`.
#[wasm_bindgen]
pub fn interval_op(op: &str, a: &str, b: &str) -> String {
    respond((|| {
        let parse = |t: &str| parse_interval_set(t).map_err(|e: FormatError| e.to_string());
        let (x, y) = (parse(a)?, parse(b)?);
        Ok(match op {
            "meet" => json!({ "result": show(&x.meet(&y)) }),
            "join" => json!({ "result": show(&x.join(&y)) }),
            "leq" => json!({ "result": x.leq(&y) }),
            "normality" => {
                let (u, v) = normality_witness(&x, &y).map_err(err)?;
                json!({ "u": show(&u), "v": show(&v) })
            }
            "disjunctive" => json!({ "c": show(&disjunctive_witness(&x, &y).map_err(err)?) }),
            "refute" => json!({ "violation": refute_partition(&x, &y) }),
            other => return Err(format!("unknown operation {other:?}")),
        })
    })())
}
