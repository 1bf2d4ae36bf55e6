//! Schedules in interval form and independent-set form, their validation,
//! and the conversions between them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::demand::DemandVector;
use crate::error::{Error, Result};
use crate::graph::ConflictGraph;
use crate::rational::{lcm_of_denominators, Rational};

/// Half-open interval `[start, end)` with `start < end`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: Rational,
    pub end: Rational,
}

impl Interval {
    pub fn new(start: Rational, end: Rational) -> Result<Self> {
        if start >= end {
            return Err(Error::InvalidSchedule(format!("empty interval [{start}, {end})")));
        }
        Ok(Interval { start, end })
    }

    pub fn len(&self) -> Rational {
        &self.end - &self.start
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// Finite union of disjoint half-open intervals, kept sorted and merged.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// Normalizes arbitrary (possibly overlapping or abutting) intervals.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn single(start: Rational, end: Rational) -> Self {
        if start >= end {
            return IntervalSet::empty();
        }
        IntervalSet {
            intervals: vec![Interval { start, end }],
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        IntervalSet::from_intervals(all)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.intervals.len() && j < other.intervals.len() {
            let a = &self.intervals[i];
            let b = &other.intervals[j];
            let start = (&a.start).max(&b.start).clone();
            let end = (&a.end).min(&b.end).clone();
            if start < end {
                out.push(Interval { start, end });
            }
            if a.end <= b.end {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    /// `[0, horizon)` minus this set.
    pub fn complement(&self, horizon: &Rational) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Rational::zero();
        for iv in &self.intervals {
            if iv.start >= *horizon {
                break;
            }
            if iv.start > cursor {
                out.push(Interval {
                    start: cursor.clone(),
                    end: iv.start.clone(),
                });
            }
            if iv.end > cursor {
                cursor = iv.end.clone();
            }
        }
        if cursor < *horizon {
            out.push(Interval {
                start: cursor,
                end: horizon.clone(),
            });
        }
        IntervalSet { intervals: out }
    }

    /// Leftmost subset of `[0, horizon)` of measure `amount` avoiding `self`,
    /// or `None` when the free measure is insufficient.
    pub fn fill_leftmost_gaps(&self, horizon: &Rational, amount: &Rational) -> Option<IntervalSet> {
        let mut remaining = amount.clone();
        let mut out = Vec::new();
        if remaining.is_zero() {
            return Some(IntervalSet::empty());
        }
        for gap in self.complement(horizon).intervals {
            let len = gap.len();
            if len >= remaining {
                let end = &gap.start + &remaining;
                out.push(Interval { start: gap.start, end });
                return Some(IntervalSet { intervals: out });
            }
            remaining -= &len;
            out.push(gap);
        }
        None
    }

    pub fn within(&self, horizon: &Rational) -> bool {
        match (self.intervals.first(), self.intervals.last()) {
            (Some(first), Some(last)) => !first.start.is_negative() && last.end <= *horizon,
            _ => true,
        }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Measure-preserving rearrangement of `[0, horizon)`: `front` is moved
/// (in order) to `[0, |front|)` and its complement to `[|front|, horizon)`.
///
/// Applying the same map to every interval set of a schedule keeps
/// disjointness, so it can realign one component of a conflict graph
/// without touching the others.
#[derive(Debug, Clone)]
pub struct TimePermutation {
    pieces: Vec<(Interval, Rational)>,
}

impl TimePermutation {
    pub fn front_load(front: &IntervalSet, horizon: &Rational) -> Self {
        let mut pieces = Vec::new();
        let mut dst = Rational::zero();
        for iv in front.intervals() {
            pieces.push((iv.clone(), dst.clone()));
            dst += iv.len();
        }
        for iv in front.complement(horizon).intervals {
            pieces.push((iv.clone(), dst.clone()));
            dst += iv.len();
        }
        TimePermutation { pieces }
    }

    pub fn apply(&self, set: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for iv in set.intervals() {
            for (src, dst) in &self.pieces {
                let start = (&iv.start).max(&src.start).clone();
                let end = (&iv.end).min(&src.end).clone();
                if start < end {
                    let shift = dst - &src.start;
                    out.push(Interval {
                        start: &start + &shift,
                        end: &end + &shift,
                    });
                }
            }
        }
        IntervalSet::from_intervals(out)
    }
}

/// Interval-form schedule on `[0, horizon]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub horizon: Rational,
    pub assignment: BTreeMap<String, IntervalSet>,
}

impl Schedule {
    pub fn new(horizon: Rational) -> Self {
        Schedule {
            horizon,
            assignment: BTreeMap::new(),
        }
    }

    pub fn get(&self, id: &str) -> IntervalSet {
        self.assignment.get(id).cloned().unwrap_or_default()
    }

    pub fn measure_of(&self, id: &str) -> Rational {
        self.assignment.get(id).map(IntervalSet::measure).unwrap_or_default()
    }
}

/// Independent-set form: durations keyed by sorted vertex-id lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSchedule {
    pub horizon: Rational,
    pub durations: BTreeMap<Vec<String>, Rational>,
}

impl SetSchedule {
    pub fn new(horizon: Rational) -> Self {
        SetSchedule {
            horizon,
            durations: BTreeMap::new(),
        }
    }

    /// Adds `duration` to the set (ids are sorted before keying).
    pub fn add(&mut self, mut set: Vec<String>, duration: Rational) {
        set.sort();
        set.dedup();
        *self.durations.entry(set).or_default() += duration;
    }

    pub fn total(&self) -> Rational {
        self.durations.values().sum()
    }

    /// Active time per vertex: Σ of durations of sets containing it.
    pub fn coverage(&self) -> DemandVector {
        let mut out = DemandVector::new();
        for (set, t) in &self.durations {
            for id in set {
                let cur = out.get(id);
                out.set(id.clone(), cur + t);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Undersupplied {
        vertex: String,
        measure: Rational,
        demand: Rational,
    },
    Overlap {
        a: String,
        b: String,
        overlap: IntervalSet,
    },
    OutsideHorizon {
        vertex: String,
        set: IntervalSet,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Undersupplied {
                vertex,
                measure,
                demand,
            } => {
                write!(f, "{vertex} receives {measure} < demand {demand}")
            }
            Violation::Overlap { a, b, overlap } => {
                write!(f, "{a} and {b} overlap on {overlap}")
            }
            Violation::OutsideHorizon { vertex, set } => {
                write!(f, "{vertex} is active outside the horizon: {set}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationVerdict {
    Ok,
    Violations(Vec<Violation>),
}

impl ValidationVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationVerdict::Ok)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            ValidationVerdict::Ok => &[],
            ValidationVerdict::Violations(v) => v,
        }
    }
}

/// Checks demand coverage, pairwise disjointness of adjacent links and
/// containment in `[0, horizon]`.
pub fn validate_schedule(
    g: &ConflictGraph,
    demands: &DemandVector,
    horizon: &Rational,
    schedule: &Schedule,
) -> Result<ValidationVerdict> {
    let tau = demands.resolve(g)?;
    let mut sets = vec![IntervalSet::empty(); g.vertex_count()];
    for (id, set) in &schedule.assignment {
        sets[g.index_of(id)?] = set.clone();
    }
    let mut violations = Vec::new();
    for v in g.sorted_indices() {
        if !sets[v].within(horizon) {
            violations.push(Violation::OutsideHorizon {
                vertex: g.id(v).to_string(),
                set: sets[v].clone(),
            });
        }
        let measure = sets[v].measure();
        if measure < tau[v] {
            violations.push(Violation::Undersupplied {
                vertex: g.id(v).to_string(),
                measure,
                demand: tau[v].clone(),
            });
        }
    }
    for (u, v) in g.edges() {
        let overlap = sets[u].intersection(&sets[v]);
        if !overlap.is_empty() {
            let (a, b) = if g.id(u) <= g.id(v) { (u, v) } else { (v, u) };
            violations.push(Violation::Overlap {
                a: g.id(a).to_string(),
                b: g.id(b).to_string(),
                overlap,
            });
        }
    }
    Ok(if violations.is_empty() {
        ValidationVerdict::Ok
    } else {
        ValidationVerdict::Violations(violations)
    })
}

/// Lays the independent sets end to end on `[0, horizon]` in key order.
pub fn set_form_to_intervals(g: &ConflictGraph, sets: &SetSchedule) -> Result<Schedule> {
    let mut pieces: BTreeMap<String, Vec<Interval>> = BTreeMap::new();
    let mut cursor = Rational::zero();
    for (set, duration) in &sets.durations {
        let idx = set.iter().map(|id| g.index_of(id)).collect::<Result<Vec<_>>>()?;
        if !g.is_independent(&idx) {
            return Err(Error::NotIndependent(set.clone()));
        }
        if duration.is_negative() {
            return Err(Error::InvalidSchedule(format!("negative duration {duration}")));
        }
        if duration.is_zero() {
            continue;
        }
        let end = &cursor + duration;
        for id in set {
            pieces.entry(id.clone()).or_default().push(Interval {
                start: cursor.clone(),
                end: end.clone(),
            });
        }
        cursor = end;
    }
    if cursor > sets.horizon {
        return Err(Error::InvalidSchedule(format!(
            "total duration {cursor} exceeds horizon {}",
            sets.horizon
        )));
    }
    Ok(Schedule {
        horizon: sets.horizon.clone(),
        assignment: pieces
            .into_iter()
            .map(|(id, ivs)| (id, IntervalSet::from_intervals(ivs)))
            .collect(),
    })
}

/// Slotted frame realization of a set-form schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSchedule {
    pub horizon: Rational,
    /// Number of equal slots per frame.
    pub slots: BigInt,
    /// Independent sets in key order with their consecutive slot counts.
    pub blocks: Vec<(Vec<String>, BigInt)>,
}

impl FrameSchedule {
    /// The set active during slot `index`, if any.
    pub fn active_set(&self, index: &BigInt) -> Option<&[String]> {
        if index.sign() == num_bigint::Sign::Minus || *index >= self.slots {
            return None;
        }
        let mut start = BigInt::zero();
        for (set, count) in &self.blocks {
            let end = &start + count;
            if *index < end {
                return Some(set);
            }
            start = end;
        }
        None
    }

    pub fn slot_counts(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|(_, m)| m.to_u64().unwrap_or(u64::MAX))
            .collect()
    }
}

/// Splits the horizon into `K` equal slots, `K` the lcm of the denominators
/// of the normalized durations `t_j / T`, and gives set `j` exactly
/// `K · t_j / T` consecutive slots.
pub fn discretize_schedule(sets: &SetSchedule) -> Result<FrameSchedule> {
    if !sets.horizon.is_positive() {
        return Err(Error::InvalidSchedule(format!("non-positive horizon {}", sets.horizon)));
    }
    let normalized: Vec<Rational> = sets.durations.values().map(|t| t / &sets.horizon).collect();
    let k = lcm_of_denominators(&normalized);
    let k_rat = Rational::from_big(k.clone(), BigInt::from(1));
    let blocks = sets
        .durations
        .keys()
        .cloned()
        .zip(normalized.iter().map(|t| {
            let m = t * &k_rat;
            debug_assert!(m.is_integer());
            m.numer().clone()
        }))
        .collect();
    Ok(FrameSchedule {
        horizon: sets.horizon.clone(),
        slots: k,
        blocks,
    })
}
