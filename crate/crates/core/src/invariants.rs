//! Graph invariants and closed-form worst-case ratio predictions.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::demand::{neighbor_sum, DemandVector};
use crate::enumerate::{self, Limits, LocalMasks};
use crate::error::{Error, Result};
use crate::graph::{ConflictGraph, NetworkGraph};
use crate::rational::Rational;

/// A center with a maximum set of pairwise non-adjacent neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub center: String,
    pub leaves: Vec<String>,
}

/// Size of a maximum independent set of `g[subset]`.
pub fn alpha(g: &ConflictGraph, subset: &[usize], limits: &Limits) -> Result<usize> {
    Ok(maximum_independent_subset(g, subset, limits)?.len())
}

fn maximum_independent_subset(g: &ConflictGraph, subset: &[usize], limits: &Limits) -> Result<Vec<usize>> {
    let local = LocalMasks::new(g, subset, limits)?;
    let best = enumerate::maximum_independent_set(&local.adj, local.full_mask());
    Ok(local.to_indices(best))
}

/// Induced star number: the largest independent set inside any open neighborhood.
///
/// Returns 0 and no witness for the empty graph. Ties go to the smallest id.
pub fn sigma(g: &ConflictGraph, limits: &Limits) -> Result<(usize, Option<StarWitness>)> {
    let mut best: Option<(usize, StarWitness)> = None;
    for v in g.sorted_indices() {
        let leaves = maximum_independent_subset(g, g.neighbors(v), limits)?;
        if best.as_ref().is_none_or(|(s, _)| leaves.len() > *s) {
            let mut ids: Vec<String> = leaves.iter().map(|&w| g.id(w).to_string()).collect();
            ids.sort();
            best = Some((
                leaves.len(),
                StarWitness {
                    center: g.id(v).to_string(),
                    leaves: ids,
                },
            ));
        }
    }
    Ok(match best {
        Some((s, w)) => (s, Some(w)),
        None => (0, None),
    })
}

pub fn max_degree(g: &ConflictGraph) -> usize {
    (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// Inclusion-maximal cliques as sorted index lists, in lexicographic order.
pub fn maximal_cliques(g: &ConflictGraph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let local = LocalMasks::whole(g, limits)?;
    let mut out: Vec<Vec<usize>> = enumerate::maximal_cliques(&local.adj, limits.max_sets)?
        .into_iter()
        .map(|m| local.to_indices(m))
        .collect();
    out.sort();
    Ok(out)
}

/// Maximal cliques of the primary-interference conflict graph, read off the
/// network directly: triangles of links, plus the link stars at each node that
/// no triangle contains. Returned as sorted link-index lists.
pub fn line_graph_cliques(n: &NetworkGraph) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for [u, v, w] in n.triangles() {
        let mut tri: Vec<usize> = [(u, v), (v, w), (u, w)]
            .iter()
            .map(|&(a, b)| n.link_between(a, b).expect("triangle link"))
            .collect();
        tri.sort_unstable();
        out.insert(tri);
    }
    for node in 0..n.nodes().len() {
        let star = n.incident(node);
        match star.len() {
            0 => {}
            1 => {
                let link = &n.links()[star[0]];
                let other = if link.u == node { link.v } else { link.u };
                if n.incident(other).len() == 1 {
                    out.insert(vec![star[0]]);
                }
            }
            2 => {
                let ends: Vec<usize> = star
                    .iter()
                    .map(|&l| {
                        let link = &n.links()[l];
                        if link.u == node {
                            link.v
                        } else {
                            link.u
                        }
                    })
                    .collect();
                if n.link_between(ends[0], ends[1]).is_none() {
                    let mut s = star.to_vec();
                    s.sort_unstable();
                    out.insert(s);
                }
            }
            _ => {
                let mut s = star.to_vec();
                s.sort_unstable();
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

/// Upper bound on the chromatic index of the multigraph:
/// the maximum over links `{u,v}` of `μ(u) + μ(v) − μ{u,v}`.
pub fn chromatic_index_bound(n: &NetworkGraph) -> Rational {
    n.links()
        .iter()
        .map(|l| n.weighted_degree(l.u) + n.weighted_degree(l.v) - l.multiplicity)
        .max()
        .map(|b| Rational::from(b as usize))
        .unwrap_or_else(Rational::zero)
}

/// Components of the neighborhood of `v`, or `None` if one of them is not complete.
fn neighborhood_clique_count(g: &ConflictGraph, v: usize) -> Option<usize> {
    let mut alive = vec![false; g.vertex_count()];
    for &w in g.neighbors(v) {
        alive[w] = true;
    }
    let comps = g.components_within(&alive);
    let all_complete = comps
        .iter()
        .all(|c| c.iter().all(|&a| c.iter().all(|&b| a == b || g.adjacent(a, b))));
    all_complete.then_some(comps.len())
}

/// Closed-form worst-case ratio of the mixed condition when every
/// neighborhood is a disjoint union of cliques; `None` otherwise (or for the
/// empty graph). Isolated vertices contribute 1.
pub fn beta_mixed_predicted(g: &ConflictGraph) -> Option<Rational> {
    if g.vertex_count() == 0 {
        return None;
    }
    let mut best = Rational::one();
    for v in 0..g.vertex_count() {
        let eta = neighborhood_clique_count(g, v)?;
        let d = g.degree(v);
        if d == 0 {
            continue;
        }
        let value = Rational::from(eta * (1 + d)) / Rational::from(eta + d);
        best = best.max(value);
    }
    Some(best)
}

/// Closed-form worst-case ratio of the strengthened row condition:
/// `σ` if a vertex attaining `σ` has degree above `σ`, else `σ − 1`.
pub fn beta_row2_predicted(g: &ConflictGraph, limits: &Limits) -> Result<Rational> {
    if !g.is_connected() || g.is_complete() || g.is_odd_cycle() {
        return Err(Error::NotApplicable(
            "strengthened row prediction needs a connected graph that is neither complete nor an odd cycle".into(),
        ));
    }
    let mut local_alpha = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        local_alpha.push(alpha(g, g.neighbors(v), limits)?);
    }
    let s = local_alpha.iter().copied().max().unwrap_or(0);
    let attained_with_spare_degree = (0..g.vertex_count()).any(|v| local_alpha[v] == s && g.degree(v) > s);
    Ok(Rational::from(if attained_with_spare_degree { s } else { s - 1 }))
}

/// `max_v { x(v) + x(Γ(v)) }`, an upper bound on the fractional chromatic number.
pub fn b_bound(g: &ConflictGraph, x: &DemandVector) -> Result<Rational> {
    let values = x.resolve(g)?;
    Ok((0..g.vertex_count())
        .map(|v| &values[v] + neighbor_sum(g, &values, v))
        .max()
        .unwrap_or_else(Rational::zero))
}

/// Exact vertex connectivity. Complete graphs on `n` vertices give `n − 1`.
pub fn vertex_connectivity(g: &ConflictGraph) -> usize {
    let n = g.vertex_count();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if !g.adjacent(s, t) {
                best = best.min(disjoint_paths(g, s, t, best));
            }
        }
    }
    best
}

/// Number of internally vertex-disjoint `s`–`t` paths, stopping at `cap`.
/// Unit-capacity max flow on the split graph (each vertex `v` becomes
/// `v_in → v_out` with capacity 1).
fn disjoint_paths(g: &ConflictGraph, s: usize, t: usize, cap: usize) -> usize {
    let n = g.vertex_count();
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    let mut to = Vec::new();
    let mut cap_of = Vec::new();
    let mut head = vec![Vec::new(); 2 * n];
    let mut add = |head: &mut Vec<Vec<usize>>, a: usize, b: usize, c: usize| {
        head[a].push(to.len());
        to.push(b);
        cap_of.push(c);
        head[b].push(to.len());
        to.push(a);
        cap_of.push(0);
    };
    for v in 0..n {
        let c = if v == s || v == t { n } else { 1 };
        add(&mut head, node_in(v), node_out(v), c);
        for &w in g.neighbors(v) {
            add(&mut head, node_out(v), node_in(w), 1);
        }
    }
    let (source, sink) = (node_out(s), node_in(t));
    let mut flow = 0;
    while flow < cap {
        let mut prev_edge = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &head[u] {
                let w = to[e];
                if cap_of[e] > 0 && !seen[w] {
                    seen[w] = true;
                    prev_edge[w] = e;
                    queue.push_back(w);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut w = sink;
        while w != source {
            let e = prev_edge[w];
            cap_of[e] -= 1;
            cap_of[e ^ 1] += 1;
            w = to[e ^ 1];
        }
        flow += 1;
    }
    flow
}
