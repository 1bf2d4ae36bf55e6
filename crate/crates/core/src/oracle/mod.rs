//! Exact centralized ground truth: fractional chromatic number, feasibility,
//! and worst-case ratios of the local conditions, all by exact linear programs
//! over explicitly enumerated maximal independent sets.

pub mod lp;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::admission::{degree_lhs, mixed_lhs, row2_applicable, row2_lhs, row_lhs};
use crate::demand::DemandVector;
use crate::enumerate::{maximal_independent_sets, Limits};
use crate::error::{Error, Result};
use crate::generators::rng;
use crate::graph::ConflictGraph;
use crate::invariants::maximal_cliques;
use crate::rational::Rational;
use crate::schedule::SetSchedule;

use lp::{LinearProgram, LpOutcome};

/// Optimal fractional coloring value with a certifying set-form schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiF {
    pub value: Rational,
    pub schedule: SetSchedule,
}

fn optimal(lp: &LinearProgram) -> Result<lp::LpSolution> {
    match lp.maximize()? {
        LpOutcome::Optimal(s) => Ok(s),
        LpOutcome::Unbounded => Err(Error::Internal("bounded program reported unbounded".into())),
    }
}

/// Fractional chromatic number of `g` weighted by `x`: the minimum total
/// duration of independent-set slices covering every vertex `v` for `x(v)`.
///
/// Solved through its dual (a fractional clique program with one row per
/// maximal independent set of the support); the row multipliers are the
/// slice durations, which are then checked against `x` exactly.
pub fn chi_f(g: &ConflictGraph, x: &DemandVector, limits: &Limits) -> Result<ChiF> {
    let weights = x.resolve(g)?;
    let support: Vec<usize> = (0..g.vertex_count()).filter(|&v| weights[v].is_positive()).collect();
    if support.is_empty() {
        return Ok(ChiF {
            value: Rational::zero(),
            schedule: SetSchedule::new(Rational::zero()),
        });
    }
    let sets = maximal_independent_sets(g, &support, limits)?;
    let column: Vec<usize> = {
        let mut c = vec![usize::MAX; g.vertex_count()];
        for (k, &v) in support.iter().enumerate() {
            c[v] = k;
        }
        c
    };
    let mut program = LinearProgram::new(support.iter().map(|&v| weights[v].clone()).collect());
    for set in &sets {
        let entries: Vec<(usize, Rational)> = set.iter().map(|&v| (column[v], Rational::one())).collect();
        program.add_sparse_row(&entries, Rational::one());
    }
    let solution = optimal(&program)?;
    let mut schedule = SetSchedule::new(solution.value.clone());
    for (set, t) in sets.iter().zip(&solution.dual) {
        if t.is_positive() {
            schedule.add(set.iter().map(|&v| g.id(v).to_string()).collect(), t.clone());
        }
    }
    if schedule.total() != solution.value {
        return Err(Error::Internal(format!(
            "slice durations sum to {} but the optimum is {}",
            schedule.total(),
            solution.value
        )));
    }
    let coverage = schedule.coverage();
    for &v in &support {
        if coverage.get(g.id(v)) < weights[v] {
            return Err(Error::Internal(format!("optimal slices undercover {}", g.id(v))));
        }
    }
    Ok(ChiF {
        value: solution.value,
        schedule,
    })
}

/// Whether `tau` can be scheduled within `[0, horizon]`.
pub fn feasible(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational, limits: &Limits) -> Result<bool> {
    Ok(chi_f(g, tau, limits)?.value <= *horizon)
}

/// Largest clique demand `max_K τ(K)`.
pub fn t_clique(g: &ConflictGraph, tau: &DemandVector, limits: &Limits) -> Result<Rational> {
    let values = tau.resolve(g)?;
    Ok(maximal_cliques(g, limits)?
        .iter()
        .map(|k| k.iter().map(|&v| &values[v]).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero))
}

/// Exact worst case of a condition over unit-time-feasible demands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaResult {
    pub value: Rational,
    /// A demand vector in the unit independent-set polytope attaining `value`.
    pub witness: DemandVector,
    pub vertex: String,
    /// For the strengthened row condition, the neighbor whose demand is discounted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbor: Option<String>,
}

/// Linear form over demand coordinates, as `(vertex, coefficient)` pairs.
type Form = Vec<(usize, Rational)>;

/// Maximizes over demands in the unit independent-set polytope of `g[local]`.
/// With one form the objective is that form; with several, the objective is
/// their pointwise minimum (via an auxiliary variable).
///
/// Variables: demands for `local`, one duration per maximal independent set,
/// then the auxiliary variable if used. Rows: each demand is covered by the
/// durations of the sets containing it, and the durations sum to at most 1.
fn polytope_max(
    g: &ConflictGraph,
    local: &[usize],
    forms: &[Form],
    limits: &Limits,
) -> Result<(Rational, Vec<Rational>)> {
    let sets = maximal_independent_sets(g, local, limits)?;
    let n = local.len();
    let k = sets.len();
    let aux = forms.len() > 1;
    let width = n + k + usize::from(aux);
    let mut column = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in local.iter().enumerate() {
        column[v] = i;
    }
    let mut objective = vec![Rational::zero(); width];
    if aux {
        objective[n + k] = Rational::one();
    } else {
        for (v, c) in &forms[0] {
            objective[column[*v]] += c;
        }
    }
    let mut program = LinearProgram::new(objective);
    for (i, &v) in local.iter().enumerate() {
        let mut entries = vec![(i, Rational::one())];
        for (j, set) in sets.iter().enumerate() {
            if set.binary_search(&v).is_ok() {
                entries.push((n + j, -Rational::one()));
            }
        }
        program.add_sparse_row(&entries, Rational::zero());
    }
    let all_durations: Vec<(usize, Rational)> = (0..k).map(|j| (n + j, Rational::one())).collect();
    program.add_sparse_row(&all_durations, Rational::one());
    if aux {
        for form in forms {
            let mut entries = vec![(n + k, Rational::one())];
            entries.extend(form.iter().map(|(v, c)| (column[*v], -c)));
            program.add_sparse_row(&entries, Rational::zero());
        }
    }
    let solution = optimal(&program)?;
    let mut tau = vec![Rational::zero(); g.vertex_count()];
    for (i, &v) in local.iter().enumerate() {
        tau[v] = solution.primal[i].clone();
    }
    Ok((solution.value, tau))
}

fn closed_neighborhood(g: &ConflictGraph, v: usize) -> Vec<usize> {
    let mut out = g.neighbors(v).to_vec();
    out.push(v);
    out.sort_unstable();
    out
}

fn row_form(g: &ConflictGraph, v: usize) -> Form {
    closed_neighborhood(g, v)
        .into_iter()
        .map(|w| (w, Rational::one()))
        .collect()
}

fn degree_form(g: &ConflictGraph, v: usize) -> Form {
    vec![(v, Rational::from(g.degree(v) + 1))]
}

/// Runs `per_vertex` on every vertex in id order and keeps the first maximum.
fn beta_over_vertices(
    g: &ConflictGraph,
    mut per_vertex: impl FnMut(usize) -> Result<(Rational, Vec<Rational>, Option<usize>)>,
) -> Result<BetaResult> {
    if g.vertex_count() == 0 {
        return Err(Error::NotApplicable("worst-case ratio of the empty graph".into()));
    }
    let mut best: Option<(Rational, Vec<Rational>, usize, Option<usize>)> = None;
    for v in g.sorted_indices() {
        let (value, tau, neighbor) = per_vertex(v)?;
        if best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, tau, v, neighbor));
        }
    }
    let (value, tau, v, neighbor) = best.expect("nonempty graph");
    Ok(BetaResult {
        value,
        witness: DemandVector::from_slice(g, &tau),
        vertex: g.id(v).to_string(),
        neighbor: neighbor.map(|w| g.id(w).to_string()),
    })
}

/// Worst case of the row constraints: `max τ(ℓ) + τ(Γ(ℓ))` over the unit polytope.
pub fn beta_row(g: &ConflictGraph, limits: &Limits) -> Result<BetaResult> {
    beta_over_vertices(g, |v| {
        let (value, tau) = polytope_max(g, &closed_neighborhood(g, v), &[row_form(g, v)], limits)?;
        Ok((value, tau, None))
    })
}

/// Worst case of the degree condition: `max τ(ℓ)(d(ℓ)+1)` over the unit polytope.
pub fn beta_degree(g: &ConflictGraph, limits: &Limits) -> Result<BetaResult> {
    beta_over_vertices(g, |v| {
        let (value, tau) = polytope_max(g, &[v], &[degree_form(g, v)], limits)?;
        Ok((value, tau, None))
    })
}

/// Worst case of the mixed condition: the larger of the row and degree
/// left-hand sides' minimum, maximized over the unit polytope.
pub fn beta_mixed(g: &ConflictGraph, limits: &Limits) -> Result<BetaResult> {
    beta_over_vertices(g, |v| {
        let forms = [row_form(g, v), degree_form(g, v)];
        let (value, tau) = polytope_max(g, &closed_neighborhood(g, v), &forms, limits)?;
        Ok((value, tau, None))
    })
}

/// Worst case of the strengthened row constraints: one program per vertex
/// and neighbor whose demand is subtracted.
pub fn beta_row2(g: &ConflictGraph, limits: &Limits) -> Result<BetaResult> {
    beta_over_vertices(g, |v| {
        let local = closed_neighborhood(g, v);
        let mut nbrs = g.neighbors(v).to_vec();
        if nbrs.is_empty() {
            let (value, tau) = polytope_max(g, &local, &[row_form(g, v)], limits)?;
            return Ok((value, tau, None));
        }
        nbrs.sort_by(|&a, &b| g.id(a).cmp(g.id(b)));
        let mut best: Option<(Rational, Vec<Rational>, Option<usize>)> = None;
        for j in nbrs {
            let form: Form = row_form(g, v).into_iter().filter(|(w, _)| *w != j).collect();
            let (value, tau) = polytope_max(g, &local, &[form], limits)?;
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, tau, Some(j)));
            }
        }
        Ok(best.expect("nonempty neighborhood"))
    })
}

fn random_weights(r: &mut impl Rng, n: usize) -> Vec<Rational> {
    loop {
        let w: Vec<Rational> = (0..n).map(|_| Rational::from(r.random_range(0..=10i64))).collect();
        if w.iter().any(Rational::is_positive) {
            return w;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImpOptions {
    /// Random integer weight vectors tried.
    pub samples: usize,
    pub seed: u64,
    /// Largest vertex subset whose indicator vector is tried.
    pub subset_cap: usize,
    /// If there are more such subsets than this, this many are drawn at random.
    pub subset_budget: usize,
}

impl Default for ImpOptions {
    fn default() -> Self {
        ImpOptions {
            samples: 100,
            seed: 0,
            subset_cap: 5,
            subset_budget: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpEstimate {
    /// A certified lower bound: the best sampled `chi_f / t_clique`.
    pub ratio: Rational,
    pub witness: DemandVector,
}

/// Lower bound on the imperfection ratio by sampling demand vectors: the
/// all-ones vector, random integer vectors, and indicators of small subsets.
pub fn imp_estimate(g: &ConflictGraph, options: &ImpOptions, limits: &Limits) -> Result<ImpEstimate> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::NotApplicable("imperfection ratio of the empty graph".into()));
    }
    let mut r = rng(options.seed);
    let mut candidates: Vec<Vec<Rational>> = vec![vec![Rational::one(); n]];
    for _ in 0..options.samples {
        candidates.push(random_weights(&mut r, n));
    }
    let cap = options.subset_cap.min(n);
    let subset_count: usize = (2..=cap).map(|k| binomial(n, k)).sum();
    let indicator = |set: &[usize]| {
        let mut w = vec![Rational::zero(); n];
        for &v in set {
            w[v] = Rational::one();
        }
        w
    };
    if subset_count <= options.subset_budget {
        for k in 2..=cap {
            for set in combinations(n, k) {
                candidates.push(indicator(&set));
            }
        }
    } else {
        for _ in 0..options.subset_budget {
            let k = r.random_range(2..=cap);
            let mut set: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = r.random_range(i..n);
                set.swap(i, j);
            }
            set.truncate(k);
            candidates.push(indicator(&set));
        }
    }
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for w in candidates {
        let x = DemandVector::from_slice(g, &w);
        let ratio = chi_f(g, &x, limits)?.value / t_clique(g, &x, limits)?;
        if best.as_ref().is_none_or(|b| ratio > b.0) {
            best = Some((ratio, w));
        }
    }
    let (ratio, w) = best.expect("at least the all-ones vector");
    Ok(ImpEstimate {
        ratio,
        witness: DemandVector::from_slice(g, &w),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Conditions whose worst-case scaling can be checked empirically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaledCondition {
    Row,
    Row2,
    Degree,
    Mixed,
    Clique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for ScalingOptions {
    fn default() -> Self {
        ScalingOptions { samples: 50, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingVerdict {
    /// Every sampled unit-feasible demand has condition value at most `β`.
    pub containment: bool,
    /// Every sampled demand passing the condition (at scale `1/β` for
    /// cliques, at scale 1 otherwise) is unit-feasible.
    pub sufficiency: bool,
    pub points_checked: usize,
}

impl ScalingVerdict {
    pub fn holds(&self) -> bool {
        self.containment && self.sufficiency
    }
}

/// Largest left-hand side of the condition at horizon 1.
fn condition_value(g: &ConflictGraph, cond: ScaledCondition, values: &[Rational], cliques: &[Vec<usize>]) -> Rational {
    let per_vertex = |f: fn(&ConflictGraph, &[Rational], usize) -> Rational| {
        (0..g.vertex_count())
            .map(|v| f(g, values, v))
            .max()
            .unwrap_or_else(Rational::zero)
    };
    match cond {
        ScaledCondition::Row => per_vertex(row_lhs),
        ScaledCondition::Row2 => per_vertex(row2_lhs),
        ScaledCondition::Degree => per_vertex(degree_lhs),
        ScaledCondition::Mixed => per_vertex(mixed_lhs),
        ScaledCondition::Clique => cliques
            .iter()
            .map(|k| k.iter().map(|&v| &values[v]).sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero),
    }
}

/// Empirical check of the sandwich `P_cond ⊆ P_I ⊆ β·P_cond` (for cliques,
/// `P_I ⊆ β·P_clique` and `P_clique / β ⊆ P_I`).
///
/// Unit-feasible points are the maximal independent set indicators plus
/// random convex combinations of them; condition-passing points are random
/// integer vectors scaled onto the condition's boundary.
pub fn scaling_check(
    g: &ConflictGraph,
    cond: ScaledCondition,
    beta: &Rational,
    options: &ScalingOptions,
    limits: &Limits,
) -> Result<ScalingVerdict> {
    if !beta.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "scaling factor must be positive, got {beta}"
        )));
    }
    if cond == ScaledCondition::Row2 {
        row2_applicable(g)?;
    }
    let n = g.vertex_count();
    let all: Vec<usize> = (0..n).collect();
    let sets = maximal_independent_sets(g, &all, limits)?;
    let cliques = if cond == ScaledCondition::Clique {
        maximal_cliques(g, limits)?
    } else {
        Vec::new()
    };
    let mut r = rng(options.seed);

    let mut feasible_points: Vec<Vec<Rational>> = sets
        .iter()
        .map(|s| {
            let mut w = vec![Rational::zero(); n];
            for &v in s {
                w[v] = Rational::one();
            }
            w
        })
        .collect();
    if !sets.is_empty() {
        for _ in 0..options.samples {
            let weights = random_weights(&mut r, sets.len());
            let total: Rational = weights.iter().sum();
            let mut w = vec![Rational::zero(); n];
            for (s, c) in sets.iter().zip(&weights) {
                for &v in s {
                    w[v] += c / &total;
                }
            }
            feasible_points.push(w);
        }
    }
    let containment = feasible_points
        .iter()
        .all(|w| condition_value(g, cond, w, &cliques) <= *beta);

    let scale = if cond == ScaledCondition::Clique {
        beta.recip()
    } else {
        Rational::one()
    };
    let mut sufficiency = true;
    let mut passing = 0;
    if n > 0 {
        for _ in 0..options.samples {
            let raw = random_weights(&mut r, n);
            let value = condition_value(g, cond, &raw, &cliques);
            if !value.is_positive() {
                continue;
            }
            let factor = &scale / &value;
            let w: Vec<Rational> = raw.iter().map(|x| x * &factor).collect();
            passing += 1;
            if chi_f(g, &DemandVector::from_slice(g, &w), limits)?.value > 1 {
                sufficiency = false;
                break;
            }
        }
    }
    Ok(ScalingVerdict {
        containment,
        sufficiency,
        points_checked: feasible_points.len() + passing,
    })
}
