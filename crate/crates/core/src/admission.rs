//! Local admission-control conditions.
//!
//! Every checker returns a [`ConditionReport`] with one row per subject
//! (vertex, clique, node or triangle), sorted by id. Per-vertex conditions only
//! read demands in the closed neighborhood of the vertex; clique conditions
//! only read the clique.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::demand::{neighbor_sum, DemandVector};
use crate::enumerate::Limits;
use crate::error::{ConditionFailure, Error, Result};
use crate::graph::{ConflictGraph, NetworkGraph};
use crate::invariants::maximal_cliques;
use crate::rational::{q, Rational};

/// What a pass or a failure of the condition tells about feasibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    /// Pass implies feasibility.
    Sufficient,
    /// Failure implies infeasibility.
    Necessary,
    /// Pass implies feasibility on the named graph class.
    SufficientOn(String),
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    Vertex(String),
    Clique(Vec<String>),
    Node(String),
    Triangle(Vec<String>),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Vertex(v) | Subject::Node(v) => write!(f, "{v}"),
            Subject::Clique(ids) | Subject::Triangle(ids) => write!(f, "{{{}}}", ids.join(",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub subject: Subject,
    pub lhs: Rational,
    pub bound: Rational,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub semantics: Semantics,
    pub horizon: Rational,
    pub rows: Vec<ReportRow>,
    pub overall: bool,
}

impl ConditionReport {
    fn new(condition: &str, semantics: Semantics, horizon: &Rational, mut rows: Vec<ReportRow>) -> Self {
        rows.sort_by(|a, b| a.subject.cmp(&b.subject));
        let overall = rows.iter().all(|r| r.passes);
        ConditionReport {
            condition: condition.to_string(),
            semantics,
            horizon: horizon.clone(),
            rows,
            overall,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.passes)
    }

    /// Converts a failing report into [`Error::ConditionFailed`] at its first failing row.
    pub fn require_pass(&self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(row) => Err(Error::ConditionFailed(Box::new(ConditionFailure {
                condition: self.condition.clone(),
                subject: row.subject.to_string(),
                lhs: row.lhs.clone(),
                bound: row.bound.clone(),
            }))),
        }
    }

    /// Left-hand side recorded for a vertex row.
    pub fn lhs_of(&self, id: &str) -> Option<&Rational> {
        self.rows.iter().find_map(|r| match &r.subject {
            Subject::Vertex(v) | Subject::Node(v) if v == id => Some(&r.lhs),
            _ => None,
        })
    }
}

fn check_horizon(horizon: &Rational) -> Result<()> {
    if horizon.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidHorizon(horizon.clone()))
    }
}

fn row(subject: Subject, lhs: Rational, bound: &Rational) -> ReportRow {
    let passes = lhs <= *bound;
    ReportRow {
        subject,
        lhs,
        bound: bound.clone(),
        passes,
    }
}

fn vertex_report(
    name: &str,
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    lhs: impl Fn(&[Rational], usize) -> Rational,
) -> Result<ConditionReport> {
    check_horizon(horizon)?;
    let values = tau.resolve(g)?;
    let rows = (0..g.vertex_count())
        .map(|v| row(Subject::Vertex(g.id(v).to_string()), lhs(&values, v), horizon))
        .collect();
    Ok(ConditionReport::new(name, Semantics::Sufficient, horizon, rows))
}

/// Row-constraint left-hand side `τ(ℓ) + τ(Γ(ℓ))`.
pub fn row_lhs(g: &ConflictGraph, values: &[Rational], v: usize) -> Rational {
    &values[v] + neighbor_sum(g, values, v)
}

/// Degree-condition left-hand side `τ(ℓ)·(d(ℓ)+1)`.
pub fn degree_lhs(g: &ConflictGraph, values: &[Rational], v: usize) -> Rational {
    &values[v] * Rational::from(g.degree(v) + 1)
}

pub fn mixed_lhs(g: &ConflictGraph, values: &[Rational], v: usize) -> Rational {
    row_lhs(g, values, v).min(degree_lhs(g, values, v))
}

/// Strengthened row left-hand side: the row sum less the smallest neighbor
/// demand (0 for an isolated vertex).
pub fn row2_lhs(g: &ConflictGraph, values: &[Rational], v: usize) -> Rational {
    let discount = g
        .neighbors(v)
        .iter()
        .map(|&w| &values[w])
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    row_lhs(g, values, v) - discount
}

pub fn check_row(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    vertex_report("row", g, tau, horizon, |x, v| row_lhs(g, x, v))
}

pub fn check_degree(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    vertex_report("degree", g, tau, horizon, |x, v| degree_lhs(g, x, v))
}

pub fn check_mixed(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    vertex_report("mixed", g, tau, horizon, |x, v| mixed_lhs(g, x, v))
}

/// Strengthened row constraints with one designated vertex held to the plain row test.
pub fn check_row2_designated(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    designated: &str,
) -> Result<ConditionReport> {
    let d = g.index_of(designated)?;
    vertex_report("row2-designated", g, tau, horizon, |x, v| {
        if v == d {
            row_lhs(g, x, v)
        } else {
            row2_lhs(g, x, v)
        }
    })
}

/// Strengthened row constraints on every vertex.
///
/// Each connected component must be a single vertex or be neither complete
/// nor an odd cycle; on those classes the test is not sufficient.
pub fn check_row2(g: &ConflictGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    row2_applicable(g)?;
    vertex_report("row2", g, tau, horizon, |x, v| row2_lhs(g, x, v))
}

pub(crate) fn row2_applicable(g: &ConflictGraph) -> Result<()> {
    for (_, comp) in g.component_graphs() {
        if comp.vertex_count() == 1 {
            continue;
        }
        if comp.is_complete() {
            return Err(Error::NotApplicable(format!(
                "strengthened row constraints exclude complete components ({} vertices)",
                comp.vertex_count()
            )));
        }
        if comp.is_odd_cycle() {
            return Err(Error::NotApplicable(format!(
                "strengthened row constraints exclude odd cycles ({} vertices)",
                comp.vertex_count()
            )));
        }
    }
    Ok(())
}

/// Named clique scale presets.
pub fn clique_scale_preset(name: &str) -> Option<Rational> {
    match name {
        "necessary" => Some(Rational::one()),
        "line" => Some(q(4, 5)),
        "udg" | "unit-disk" => Some(q(10, 21)),
        "shannon" => Some(q(2, 3)),
        _ => None,
    }
}

/// Parses a preset name or a rational literal.
pub fn parse_clique_scale(text: &str) -> Result<Rational> {
    if let Some(scale) = clique_scale_preset(text) {
        return Ok(scale);
    }
    let scale: Rational = text
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("unknown clique scale {text:?}")))?;
    if !scale.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "clique scale must be positive, got {scale}"
        )));
    }
    Ok(scale)
}

fn clique_semantics(scale: &Rational) -> Semantics {
    if *scale == 1 {
        Semantics::Necessary
    } else if *scale == q(10, 21) {
        Semantics::SufficientOn("unit-disk graphs".into())
    } else if *scale == q(4, 5) || *scale == q(2, 3) {
        Semantics::SufficientOn("line graphs".into())
    } else {
        Semantics::Unclassified
    }
}

/// Clique constraints `τ(K) ≤ scale·T` over all maximal cliques.
pub fn check_clique(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    scale: &Rational,
    limits: &Limits,
) -> Result<ConditionReport> {
    check_horizon(horizon)?;
    let values = tau.resolve(g)?;
    let bound = scale * horizon;
    let rows = maximal_cliques(g, limits)?
        .into_iter()
        .map(|k| {
            let lhs: Rational = k.iter().map(|&v| &values[v]).sum();
            let mut ids: Vec<String> = k.iter().map(|&v| g.id(v).to_string()).collect();
            ids.sort();
            row(Subject::Clique(ids), lhs, &bound)
        })
        .collect();
    let name = if *scale == 1 {
        "clique".to_string()
    } else {
        format!("clique-scaled({scale})")
    };
    Ok(ConditionReport::new(&name, clique_semantics(scale), horizon, rows))
}

/// Per-link demands resolved in link order.
fn resolve_links(n: &NetworkGraph, tau: &DemandVector) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); n.links().len()];
    for (id, value) in tau.iter() {
        let l = n
            .links()
            .iter()
            .position(|l| &l.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))?;
        if value.is_negative() {
            return Err(Error::InvalidDemand {
                vertex: id.clone(),
                reason: format!("negative demand {value}"),
            });
        }
        out[l] = value.clone();
    }
    Ok(out)
}

fn node_loads(n: &NetworkGraph, values: &[Rational]) -> Vec<Rational> {
    (0..n.nodes().len())
        .map(|u| n.incident(u).iter().map(|&l| &values[l]).sum())
        .collect()
}

/// Row constraints on a primary-interference network, phrased with node loads:
/// `τ(u) + τ(v) − τ(ℓ)` for each link `ℓ = {u, v}`.
pub fn check_row_primary(n: &NetworkGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    check_horizon(horizon)?;
    let values = resolve_links(n, tau)?;
    let loads = node_loads(n, &values);
    let rows = n
        .links()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let lhs = &loads[l.u] + &loads[l.v] - &values[k];
            row(Subject::Vertex(l.id.clone()), lhs, horizon)
        })
        .collect();
    Ok(ConditionReport::new(
        "row-primary",
        Semantics::Sufficient,
        horizon,
        rows,
    ))
}

fn node_rows(n: &NetworkGraph, loads: &[Rational], bound: &Rational) -> Vec<ReportRow> {
    n.nodes()
        .iter()
        .zip(loads)
        .map(|(id, load)| row(Subject::Node(id.clone()), load.clone(), bound))
        .collect()
}

/// Node loads and link triangles held to `4/5·T`.
pub fn check_clique_line_scaled(n: &NetworkGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    check_horizon(horizon)?;
    let values = resolve_links(n, tau)?;
    let bound = q(4, 5) * horizon;
    let mut rows = node_rows(n, &node_loads(n, &values), &bound);
    for [u, v, w] in n.triangles() {
        let links = [(u, v), (v, w), (u, w)].map(|(a, b)| n.link_between(a, b).expect("triangle link"));
        let lhs: Rational = links.iter().map(|&l| &values[l]).sum();
        let mut ids: Vec<String> = [u, v, w].iter().map(|&x| n.nodes()[x].clone()).collect();
        ids.sort();
        rows.push(row(Subject::Triangle(ids), lhs, &bound));
    }
    Ok(ConditionReport::new(
        "clique-line",
        Semantics::Sufficient,
        horizon,
        rows,
    ))
}

/// Node loads held to `2/3·T`.
pub fn check_shannon(n: &NetworkGraph, tau: &DemandVector, horizon: &Rational) -> Result<ConditionReport> {
    check_horizon(horizon)?;
    let values = resolve_links(n, tau)?;
    let bound = q(2, 3) * horizon;
    let rows = node_rows(n, &node_loads(n, &values), &bound);
    Ok(ConditionReport::new("shannon", Semantics::Sufficient, horizon, rows))
}
