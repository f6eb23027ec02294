//! Finite unions of closed subintervals of `[0, 1]` with rational endpoints.
//!
//! This is an infinite distributive lattice, so quantified properties are
//! exposed as witness constructors and refuters rather than deciders.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("non-canonical input: {0}")]
    NonCanonicalInput(String),
    #[error("sets are not disjoint")]
    NotDisjoint,
    #[error("witness not applicable: first set is below the second")]
    NotApplicable,
    #[error("cannot parse interval set: {0}")]
    Parse(String),
}

/// A closed interval `[lo, hi]` with `0 ≤ lo ≤ hi ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    pub lo: Rational,
    pub hi: Rational,
}

/// Canonical form: intervals sorted, pairwise disjoint and non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalIntervalSet {
    intervals: Vec<ClosedInterval>,
}

fn in_unit(q: &Rational) -> bool {
    *q >= Rational::zero() && *q <= Rational::one()
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl RationalIntervalSet {
    /// Accepts only canonical input.
    pub fn new(pairs: Vec<(Rational, Rational)>) -> Result<Self, IntervalError> {
        for (lo, hi) in &pairs {
            if !in_unit(lo) || !in_unit(hi) {
                return Err(IntervalError::NonCanonicalInput(format!(
                    "[{lo},{hi}] leaves [0,1]"
                )));
            }
            if lo > hi {
                return Err(IntervalError::NonCanonicalInput(format!("[{lo},{hi}] is reversed")));
            }
        }
        for w in pairs.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(IntervalError::NonCanonicalInput(format!(
                    "[{},{}] and [{},{}] overlap, touch or are unsorted",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(RationalIntervalSet {
            intervals: pairs
                .into_iter()
                .map(|(lo, hi)| ClosedInterval { lo, hi })
                .collect(),
        })
    }

    /// Sorts and merges arbitrary in-range intervals into canonical form.
    pub fn normalize(pairs: Vec<(Rational, Rational)>) -> Result<Self, IntervalError> {
        let mut items = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            if !in_unit(&lo) || !in_unit(&hi) || lo > hi {
                return Err(IntervalError::NonCanonicalInput(format!("[{lo},{hi}]")));
            }
            items.push(ClosedInterval { lo, hi });
        }
        Ok(Self::merge(items))
    }

    fn merge(mut items: Vec<ClosedInterval>) -> Self {
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut out: Vec<ClosedInterval> = Vec::with_capacity(items.len());
        for iv in items {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        RationalIntervalSet { intervals: out }
    }

    pub fn empty() -> Self {
        RationalIntervalSet::default()
    }

    pub fn top() -> Self {
        Self::interval(Rational::zero(), Rational::one())
    }

    /// A single interval; panics outside `0 ≤ lo ≤ hi ≤ 1`.
    pub fn interval(lo: Rational, hi: Rational) -> Self {
        Self::new(vec![(lo, hi)]).expect("interval inside [0,1]")
    }

    pub fn intervals(&self) -> &[ClosedInterval] {
        &self.intervals
    }

    pub fn is_bottom(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_top(&self) -> bool {
        *self == Self::top()
    }

    pub fn is_canonical(&self) -> bool {
        Self::new(self.pairs()).is_ok()
    }

    pub fn pairs(&self) -> Vec<(Rational, Rational)> {
        self.intervals
            .iter()
            .map(|i| (i.lo.clone(), i.hi.clone()))
            .collect()
    }

    pub fn contains_point(&self, q: &Rational) -> bool {
        self.intervals.iter().any(|i| i.lo <= *q && *q <= i.hi)
    }

    /// Set intersection.
    pub fn meet(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.intervals, &other.intervals);
        while i < a.len() && j < b.len() {
            let lo = (&a[i].lo).max(&b[j].lo);
            let hi = (&a[i].hi).min(&b[j].hi);
            if lo <= hi {
                out.push(ClosedInterval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pieces of canonical inputs are already separated.
        RationalIntervalSet { intervals: out }
    }

    /// Set union; touching intervals merge.
    pub fn join(&self, other: &Self) -> Self {
        let items = self
            .intervals
            .iter()
            .chain(other.intervals.iter())
            .cloned()
            .collect();
        Self::merge(items)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.meet(other) == *self
    }

    /// Some rational point of `[0,1]` outside the set, if any.
    fn uncovered_point(&self) -> Option<Rational> {
        let two = rational(2, 1);
        let Some(first) = self.intervals.first() else {
            return Some(Rational::zero());
        };
        if first.lo > Rational::zero() {
            return Some(Rational::zero());
        }
        if let Some(w) = self.intervals.windows(2).next() {
            return Some((&w[0].hi + &w[1].lo) / &two);
        }
        let last = self.intervals.last().expect("nonempty");
        (last.hi < Rational::one()).then(Rational::one)
    }
}

fn fmt_q(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RationalIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str("∪")?;
            }
            write!(f, "[{},{}]", fmt_q(&iv.lo), fmt_q(&iv.hi))?;
        }
        Ok(())
    }
}

fn parse_q(s: &str) -> Result<Rational, IntervalError> {
    let s = s.trim();
    let bad = || IntervalError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `"[p/q,r/s]∪[..]"` (also accepts `U` as the union sign) or `"∅"`.
/// Input must already be canonical.
impl FromStr for RationalIntervalSet {
    type Err = IntervalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        if t.is_empty() || t == "∅" || t == "{}" {
            return Ok(Self::empty());
        }
        let mut pairs = Vec::new();
        for piece in t.split(['∪', 'U']) {
            let piece = piece.trim();
            let inner = piece
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(']'))
                .ok_or_else(|| IntervalError::Parse(format!("expected [lo,hi], got {piece:?}")))?;
            let (lo, hi) = inner
                .split_once(',')
                .ok_or_else(|| IntervalError::Parse(format!("missing comma in {piece:?}")))?;
            pairs.push((parse_q(lo)?, parse_q(hi)?));
        }
        Self::new(pairs)
    }
}

impl Serialize for RationalIntervalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .intervals
            .iter()
            .map(|i| [fmt_q(&i.lo), fmt_q(&i.hi)])
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalIntervalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<[String; 2]> = Vec::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for [lo, hi] in raw {
            pairs.push((
                parse_q(&lo).map_err(serde::de::Error::custom)?,
                parse_q(&hi).map_err(serde::de::Error::custom)?,
            ));
        }
        Self::new(pairs).map_err(serde::de::Error::custom)
    }
}

/// Constructs `u, v` with `x∧u = ∅`, `y∧v = ∅` and `u∨v = [0,1]`.
///
/// The components of `x` and `y` are listed left to right; every gap between
/// an `x`-component and a `y`-component is cut at its midpoint. The closed
/// segments between cuts that hold `x` go to `v`, the rest go to `u`.
pub fn normality_witness(
    x: &RationalIntervalSet,
    y: &RationalIntervalSet,
) -> Result<(RationalIntervalSet, RationalIntervalSet), IntervalError> {
    if !x.meet(y).is_bottom() {
        return Err(IntervalError::NotDisjoint);
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Side {
        X,
        Y,
    }
    let mut parts: Vec<(&ClosedInterval, Side)> = x
        .intervals
        .iter()
        .map(|i| (i, Side::X))
        .chain(y.intervals.iter().map(|i| (i, Side::Y)))
        .collect();
    parts.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));

    let two = rational(2, 1);
    let mut cuts: Vec<Rational> = vec![Rational::zero()];
    let mut sides: Vec<Side> = Vec::new();
    for (k, &(_, side)) in parts.iter().enumerate() {
        if k == 0 {
            sides.push(side);
            continue;
        }
        let prev = parts[k - 1];
        if prev.1 != side {
            cuts.push((&prev.0.hi + &parts[k].0.lo) / &two);
            sides.push(side);
        }
    }
    cuts.push(Rational::one());
    if sides.is_empty() {
        sides.push(Side::Y);
    }
    let mut u = Vec::new();
    let mut v = Vec::new();
    for (k, side) in sides.iter().enumerate() {
        let seg = (cuts[k].clone(), cuts[k + 1].clone());
        match side {
            Side::X => v.push(seg),
            Side::Y => u.push(seg),
        }
    }
    let u = RationalIntervalSet::normalize(u)?;
    let v = RationalIntervalSet::normalize(v)?;
    Ok((u, v))
}

/// Constructs a nonempty `c ≤ a` with `c∧b = ∅`, given `a ≰ b`.
///
/// Picks the first piece of `a∖b`: a closed left endpoint is kept and the
/// piece is cut at its midpoint; an open left endpoint is moved in by a
/// quarter of the piece.
pub fn disjunctive_witness(
    a: &RationalIntervalSet,
    b: &RationalIntervalSet,
) -> Result<RationalIntervalSet, IntervalError> {
    if a.leq(b) {
        return Err(IntervalError::NotApplicable);
    }
    let two = rational(2, 1);
    let four = rational(4, 1);
    for comp in &a.intervals {
        // Walk the component left to right, skipping over parts of b.
        let mut lo = comp.lo.clone();
        let mut lo_closed = true;
        for blk in b.intervals.iter().filter(|blk| blk.hi >= comp.lo && blk.lo <= comp.hi) {
            let piece_hi = (&blk.lo).min(&comp.hi).clone();
            if lo < piece_hi {
                return Ok(pick(&lo, lo_closed, &piece_hi, &two, &four));
            }
            if lo_closed && lo == piece_hi && blk.lo > lo {
                return Ok(RationalIntervalSet::interval(lo.clone(), lo));
            }
            if blk.hi >= lo {
                lo = blk.hi.clone();
                lo_closed = false;
            }
        }
        if lo < comp.hi {
            return Ok(pick(&lo, lo_closed, &comp.hi, &two, &four));
        }
        if lo == comp.hi && lo_closed {
            return Ok(RationalIntervalSet::interval(lo.clone(), lo));
        }
    }
    unreachable!("a ≰ b leaves some point of a outside b")
}

fn pick(lo: &Rational, lo_closed: bool, hi: &Rational, two: &Rational, four: &Rational) -> RationalIntervalSet {
    let width = hi - lo;
    let start = if lo_closed {
        lo.clone()
    } else {
        lo + &width / four
    };
    let end = lo + &width / two;
    RationalIntervalSet::interval(start, end)
}

/// Why a claimed splitting of `[0,1]` into two disjoint nonempty closed sets fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum PartitionViolation {
    FirstEmpty,
    SecondEmpty,
    /// `x∧y ≠ ∅`; carries the overlap.
    Overlap { meet: RationalIntervalSet },
    /// `x∨y ≠ [0,1]`; carries an uncovered rational point.
    NotCovering {
        #[serde(serialize_with = "ser_q")]
        point: Rational,
    },
}

fn ser_q<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(q))
}

/// Refutes a claimed disconnection of `[0,1]`. Returns `None` only if the
/// pair really were a splitting, which connectedness of the interval rules out.
pub fn refute_partition(x: &RationalIntervalSet, y: &RationalIntervalSet) -> Option<PartitionViolation> {
    if x.is_bottom() {
        return Some(PartitionViolation::FirstEmpty);
    }
    if y.is_bottom() {
        return Some(PartitionViolation::SecondEmpty);
    }
    let m = x.meet(y);
    if !m.is_bottom() {
        return Some(PartitionViolation::Overlap { meet: m });
    }
    x.join(y)
        .uncovered_point()
        .map(|point| PartitionViolation::NotCovering { point })
}
