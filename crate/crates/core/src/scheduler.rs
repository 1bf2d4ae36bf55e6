//! Constructive schedulers for the sufficient conditions.
//!
//! Each scheduler first re-checks its condition and refuses with
//! [`Error::ConditionFailed`] if it does not hold. All interval choices are
//! "leftmost free time first", so outputs are deterministic.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::admission::{check_mixed, check_row, check_row2, check_row2_designated};
use crate::demand::DemandVector;
use crate::error::{Error, Result};
use crate::graph::ConflictGraph;
use crate::invariants::vertex_connectivity;
use crate::rational::Rational;
use crate::schedule::{IntervalSet, Schedule, TimePermutation};

/// Partial interval assignment indexed by vertex.
struct Builder<'a> {
    g: &'a ConflictGraph,
    tau: Vec<Rational>,
    horizon: Rational,
    sets: Vec<Option<IntervalSet>>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<Self> {
        Ok(Builder {
            g,
            tau: tau.resolve(g)?,
            horizon: horizon.clone(),
            sets: vec![None; g.vertex_count()],
        })
    }

    /// Gives `v` the leftmost time not held by its already-placed neighbors.
    fn place(&mut self, v: usize) -> Result<()> {
        let busy = self
            .g
            .neighbors(v)
            .iter()
            .filter_map(|&w| self.sets[w].as_ref())
            .fold(IntervalSet::empty(), |acc, s| acc.union(s));
        let set = busy.fill_leftmost_gaps(&self.horizon, &self.tau[v]).ok_or_else(|| {
            Error::Internal(format!(
                "no room for {} (demand {}, busy {})",
                self.g.id(v),
                self.tau[v],
                busy.measure()
            ))
        })?;
        self.sets[v] = Some(set);
        Ok(())
    }

    fn fix(&mut self, v: usize, set: IntervalSet) {
        self.sets[v] = Some(set);
    }

    fn finish(self) -> Schedule {
        let mut s = Schedule::new(self.horizon);
        for (v, set) in self.sets.into_iter().enumerate() {
            if let Some(set) = set.filter(|x| !x.is_empty()) {
                s.assignment.insert(self.g.id(v).to_string(), set);
            }
        }
        s
    }
}

/// Greedy schedule for instances passing the row constraints, in `order`
/// (a permutation of all vertex ids) or in graph input order.
pub fn schedule_row(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    order: Option<&[String]>,
) -> Result<Schedule> {
    check_row(g, tau, horizon)?.require_pass()?;
    greedy_in_order(g, tau, horizon, order)
}

/// The greedy placement behind [`schedule_row`], without the row check.
/// It may succeed on instances the row constraints reject; when it runs out
/// of room it reports [`Error::Internal`] naming the vertex.
pub fn greedy_in_order(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    order: Option<&[String]>,
) -> Result<Schedule> {
    if !horizon.is_positive() {
        return Err(Error::InvalidHorizon(horizon.clone()));
    }
    let order = match order {
        Some(ids) => resolve_order(g, ids)?,
        None => (0..g.vertex_count()).collect(),
    };
    let mut b = Builder::new(g, tau, horizon)?;
    for v in order {
        b.place(v)?;
    }
    Ok(b.finish())
}

fn resolve_order(g: &ConflictGraph, ids: &[String]) -> Result<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let v = g.index_of(id)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidOrder(format!("vertex {id:?} repeated")));
        }
        out.push(v);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidOrder(format!("vertex {:?} missing", g.id(missing))));
    }
    Ok(out)
}

/// Greedy schedule in nondecreasing demand order (ties by id), for instances
/// passing the mixed condition (and hence the row or degree condition).
pub fn schedule_degree_or_mixed(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<Schedule> {
    check_mixed(g, tau, horizon)?.require_pass()?;
    let mut b = Builder::new(g, tau, horizon)?;
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&x, &y| b.tau[x].cmp(&b.tau[y]).then_with(|| g.id(x).cmp(g.id(y))));
    for v in order {
        b.place(v)?;
    }
    Ok(b.finish())
}

/// Breadth-first order from `root` over vertices with `alive` set, visiting
/// neighbors in id order.
fn bfs_order(g: &ConflictGraph, root: usize, alive: &[bool]) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    seen[root] = true;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut next: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| alive[w] && !seen[w])
            .collect();
        next.sort_by(|&x, &y| g.id(x).cmp(g.id(y)));
        for w in next {
            seen[w] = true;
            order.push(w);
            queue.push_back(w);
        }
    }
    order
}

/// Schedule for the strengthened row constraints with a designated vertex.
/// Vertices are placed in reverse breadth-first order from the designated
/// one, so each vertex still has an unplaced neighbor when it is placed.
pub fn schedule_row2_designated(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    designated: &str,
) -> Result<Schedule> {
    check_row2_designated(g, tau, horizon, designated)?.require_pass()?;
    if !g.is_connected() {
        return Err(Error::NotApplicable(
            "designated-vertex scheduling needs a connected conflict graph".into(),
        ));
    }
    let root = g.index_of(designated)?;
    let mut b = Builder::new(g, tau, horizon)?;
    for v in bfs_order(g, root, &vec![true; g.vertex_count()]).into_iter().rev() {
        b.place(v)?;
    }
    Ok(b.finish())
}

/// Which construction handled a connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Row2Case {
    SingleVertex {
        vertex: String,
    },
    /// Connectivity 1: the cut vertex is placed last after realigning two
    /// components so that `a` and `b` both start at time 0.
    CutVertex {
        cut: String,
        a: String,
        b: String,
    },
    /// Connectivity 2 with maximum degree 2.
    EvenCycle,
    /// Connectivity at least 2, maximum degree at least 3: `a` and `b` are
    /// pre-placed at time 0 and the root is placed last.
    Triple {
        root: String,
        a: String,
        b: String,
    },
}

/// Schedule for the strengthened row constraints (no designated vertex).
pub fn schedule_row2(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<Schedule> {
    schedule_row2_with_cases(g, tau, horizon).map(|(s, _)| s)
}

/// As [`schedule_row2`], also reporting the construction used per component
/// (components in order of their smallest vertex index).
pub fn schedule_row2_with_cases(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
) -> Result<(Schedule, Vec<Row2Case>)> {
    check_row2(g, tau, horizon)?.require_pass()?;
    let values = tau.resolve(g)?;
    let mut schedule = Schedule::new(horizon.clone());
    let mut cases = Vec::new();
    for (members, comp) in g.component_graphs() {
        let local_tau =
            DemandVector::from_slice(&comp, &members.iter().map(|&v| values[v].clone()).collect::<Vec<_>>());
        let (part, case) = row2_component(&comp, &local_tau, horizon)?;
        schedule.assignment.extend(part.assignment);
        cases.push(case);
    }
    Ok((schedule, cases))
}

fn row2_component(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<(Schedule, Row2Case)> {
    let n = g.vertex_count();
    let mut b = Builder::new(g, tau, horizon)?;
    if n == 1 {
        b.place(0)?;
        return Ok((
            b.finish(),
            Row2Case::SingleVertex {
                vertex: g.id(0).to_string(),
            },
        ));
    }
    if vertex_connectivity(g) == 1 {
        return cut_vertex_case(g, b);
    }
    if g.is_cycle() {
        return Ok((even_cycle_case(g, b), Row2Case::EvenCycle));
    }
    let (root, a, bb) = find_triple(g)?;
    b.fix(a, IntervalSet::single(Rational::zero(), b.tau[a].clone()));
    b.fix(bb, IntervalSet::single(Rational::zero(), b.tau[bb].clone()));
    let mut alive = vec![true; n];
    alive[a] = false;
    alive[bb] = false;
    for v in bfs_order(g, root, &alive).into_iter().rev() {
        b.place(v)?;
    }
    let case = Row2Case::Triple {
        root: g.id(root).to_string(),
        a: g.id(a).to_string(),
        b: g.id(bb).to_string(),
    };
    Ok((b.finish(), case))
}

fn cut_vertex_case(g: &ConflictGraph, mut b: Builder<'_>) -> Result<(Schedule, Row2Case)> {
    let n = g.vertex_count();
    let cut = g
        .sorted_indices()
        .into_iter()
        .find(|&v| !g.connected_without(&[v]))
        .ok_or_else(|| Error::Internal("connectivity 1 but no cut vertex found".into()))?;
    let mut alive = vec![true; n];
    alive[cut] = false;
    // Components of G − cut, ordered by their smallest id.
    let mut comps = g.components_within(&alive);
    let min_id = |c: &Vec<usize>| c.iter().map(|&v| g.id(v)).min().map(str::to_string);
    comps.sort_by_key(min_id);
    let pick = |c: &Vec<usize>| {
        c.iter()
            .copied()
            .filter(|&v| g.adjacent(v, cut))
            .min_by(|&x, &y| g.id(x).cmp(g.id(y)))
    };
    let a = pick(&comps[0]).ok_or_else(|| Error::Internal("cut vertex without neighbor in a component".into()))?;
    let bb = pick(&comps[1]).ok_or_else(|| Error::Internal("cut vertex without neighbor in a component".into()))?;
    for v in bfs_order(g, cut, &vec![true; n]).into_iter().skip(1).rev() {
        b.place(v)?;
    }
    for (comp, target) in [(&comps[0], a), (&comps[1], bb)] {
        let front = b.sets[target].clone().unwrap_or_default();
        let perm = TimePermutation::front_load(&front, &b.horizon);
        for &v in comp {
            if let Some(set) = b.sets[v].take() {
                b.sets[v] = Some(perm.apply(&set));
            }
        }
    }
    b.place(cut)?;
    let case = Row2Case::CutVertex {
        cut: g.id(cut).to_string(),
        a: g.id(a).to_string(),
        b: g.id(bb).to_string(),
    };
    Ok((b.finish(), case))
}

/// Walks the cycle from its smallest id toward the smaller-id neighbor;
/// odd positions take `[0, τ)`, even positions `[T − τ, T)`.
fn even_cycle_case(g: &ConflictGraph, mut b: Builder<'_>) -> Schedule {
    let start = g.sorted_indices()[0];
    let first = *g
        .neighbors(start)
        .iter()
        .min_by(|&&x, &&y| g.id(x).cmp(g.id(y)))
        .expect("cycle vertex has neighbors");
    let mut walk = vec![start, first];
    while walk.len() < g.vertex_count() {
        let (prev, cur) = (walk[walk.len() - 2], walk[walk.len() - 1]);
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).expect("2-regular");
        walk.push(next);
    }
    for (pos, &v) in walk.iter().enumerate() {
        let t = b.tau[v].clone();
        let set = if t.is_zero() {
            IntervalSet::empty()
        } else if pos % 2 == 0 {
            IntervalSet::single(Rational::zero(), t)
        } else {
            IntervalSet::single(&b.horizon - &t, b.horizon.clone())
        };
        b.fix(v, set);
    }
    b.finish()
}

/// A root with two non-adjacent neighbors `a`, `b` such that removing `a`
/// and `b` leaves the graph connected. Searched in id order; its absence on
/// a 2-connected graph that is neither complete nor a cycle is reported as
/// an internal error.
fn find_triple(g: &ConflictGraph) -> Result<(usize, usize, usize)> {
    for root in g.sorted_indices() {
        let mut nbrs = g.neighbors(root).to_vec();
        nbrs.sort_by(|&x, &y| g.id(x).cmp(g.id(y)));
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !g.adjacent(a, b) && g.connected_without(&[a, b]) {
                    return Ok((root, a, b));
                }
            }
        }
    }
    Err(Error::Internal(
        "no root with two non-adjacent neighbors whose removal keeps the graph connected".into(),
    ))
}
