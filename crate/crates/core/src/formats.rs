//! JSON file formats and Graphviz output.
//!
//! A lattice file is either explicit tables
//! `{"elements", "meet", "join", "bottom", "top"}` or a poset
//! `{"poset": {"size", "le": [[i, j], ...]}}`, expanded to its lattice of
//! down-sets. A space file is `{"points": n, "closed": [[...], ...]}`. A
//! theory file is `{"constants": [...], "sentences": ["...", ...]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fol::{FolError, Theory};
use crate::interval::{IntervalError, RationalIntervalSet};
use crate::lattice::{downset_lattice, FiniteLattice, LatticeError, LatticeTables, Poset, PosetError};
use crate::sets::PointSet;
use crate::space::{FiniteSpace, SpaceError};
use crate::wallman::WallmanSpace;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Theory(#[from] FolError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("point {point} is out of range for a space of {points} points")]
    PointOutOfRange { point: usize, points: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub size: usize,
    #[serde(default)]
    pub le: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeFile {
    Poset { poset: PosetFile },
    Tables(LatticeTables),
}

impl LatticeFile {
    pub fn to_lattice(&self) -> Result<FiniteLattice, FormatError> {
        match self {
            LatticeFile::Tables(t) => Ok(FiniteLattice::validate(t)?),
            LatticeFile::Poset { poset } => {
                let p = Poset::from_relations(poset.size, &poset.le)?;
                Ok(downset_lattice(&p))
            }
        }
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, FormatError> {
    serde_json::from_str::<LatticeFile>(text)?.to_lattice()
}

pub fn lattice_to_json(l: &FiniteLattice) -> String {
    serde_json::to_string(&l.to_tables()).expect("tables serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: usize,
    pub closed: Vec<Vec<usize>>,
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<FiniteSpace, FormatError> {
        if self.points >= crate::sets::MAX_POINTS {
            return Err(SpaceError::TooLarge(self.points, crate::sets::MAX_POINTS - 1).into());
        }
        let mut sets = Vec::with_capacity(self.closed.len());
        for c in &self.closed {
            if let Some(&point) = c.iter().find(|&&p| p >= self.points) {
                return Err(FormatError::PointOutOfRange {
                    point,
                    points: self.points,
                });
            }
            sets.push(PointSet::from_points(c.iter().copied()));
        }
        Ok(FiniteSpace::new(self.points, sets)?)
    }

    pub fn from_space(x: &FiniteSpace) -> Self {
        SpaceFile {
            points: x.point_count(),
            closed: x.closed_sets().iter().map(|s| s.to_vec()).collect(),
        }
    }
}

pub fn parse_space(text: &str) -> Result<FiniteSpace, FormatError> {
    serde_json::from_str::<SpaceFile>(text)?.to_space()
}

pub fn parse_theory(text: &str) -> Result<Theory, FormatError> {
    let t: Theory = serde_json::from_str(text)?;
    t.check()?;
    Ok(t)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Text `[0,1/4]∪[1/2,1]` or JSON `[["0","1/4"],["1/2","1"]]`. Pieces may
/// overlap or come in any order; their union is returned.
pub fn parse_interval_set(text: &str) -> Result<RationalIntervalSet, FormatError> {
    let pieces: Vec<String> = match serde_json::from_str::<Vec<[String; 2]>>(text) {
        Ok(pairs) => pairs.iter().map(|[lo, hi]| format!("[{lo},{hi}]")).collect(),
        Err(_) => text.split('∪').map(str::to_string).collect(),
    };
    let mut acc = RationalIntervalSet::empty();
    for p in pieces {
        acc = acc.join(&p.trim().parse::<RationalIntervalSet>()?);
    }
    Ok(acc)
}

/// Hasse diagram, covers drawn upward.
pub fn lattice_dot(l: &FiniteLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n");
    for a in l.elements() {
        let _ = writeln!(out, "  n{a} [label={}];", quote(l.name(a)));
    }
    for a in l.elements() {
        for b in l.upper_covers(a) {
            let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
        }
    }
    out.push_str("}\n");
    out
}

/// Points labelled by the names of the elements in each ultrafilter, with
/// an edge `p -> q` when `p` lies in the closure of `q`.
pub fn wallman_dot(w: &WallmanSpace, l: &FiniteLattice) -> String {
    let mut out = String::from("digraph wallman {\n  node [shape=box];\n");
    for (p, u) in w.points.iter().enumerate() {
        let names: Vec<&str> = u.members.iter().map(|&a| l.name(a)).collect();
        let _ = writeln!(out, "  p{p} [label={}];", quote(&format!("{{{}}}", names.join(", "))));
    }
    let x = w.space();
    for q in 0..x.point_count() {
        for p in x.closure(PointSet::singleton(q)).iter().filter(|&p| p != q) {
            let _ = writeln!(out, "  p{p} -> p{q};");
        }
    }
    out.push_str("}\n");
    out
}
