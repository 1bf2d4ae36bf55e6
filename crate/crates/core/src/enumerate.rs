//! Exponential-time enumeration on small graphs, using `u64` bitsets.
//!
//! Every routine here is guarded by [`Limits`]; callers translate between
//! graph indices and bit positions with [`LocalMasks`].

use crate::error::{Error, Result};
use crate::graph::ConflictGraph;

/// Hard caps for exponential routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex set handed to independent-set or clique enumeration.
    pub max_vertices: usize,
    /// Largest number of maximal independent sets (LP columns) enumerated.
    pub max_sets: usize,
}

/// Bitsets are 64 bits wide; no limit may exceed this.
pub const MAX_MASK_VERTICES: usize = 64;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 30,
            max_sets: 10_000,
        }
    }
}

impl Limits {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        Limits {
            max_vertices,
            ..Limits::default()
        }
    }

    pub(crate) fn check_vertices(&self, actual: usize) -> Result<()> {
        let limit = self.max_vertices.min(MAX_MASK_VERTICES);
        if actual > limit {
            return Err(Error::ResourceLimit {
                resource: "vertex enumeration",
                limit,
                actual,
            });
        }
        Ok(())
    }
}

/// Adjacency bitsets of an induced subgraph, with the map back to graph indices.
#[derive(Debug, Clone)]
pub(crate) struct LocalMasks {
    pub vertices: Vec<usize>,
    pub adj: Vec<u64>,
}

impl LocalMasks {
    pub fn new(g: &ConflictGraph, vertices: &[usize], limits: &Limits) -> Result<Self> {
        limits.check_vertices(vertices.len())?;
        let mut pos = vec![usize::MAX; g.vertex_count()];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| pos[w] != usize::MAX)
                    .fold(0u64, |m, &w| m | (1u64 << pos[w]))
            })
            .collect();
        Ok(LocalMasks {
            vertices: vertices.to_vec(),
            adj,
        })
    }

    pub fn whole(g: &ConflictGraph, limits: &Limits) -> Result<Self> {
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        LocalMasks::new(g, &all, limits)
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.vertices.len())
    }

    pub fn complement(&self) -> Vec<u64> {
        let full = self.full_mask();
        self.adj
            .iter()
            .enumerate()
            .map(|(k, &m)| full & !m & !(1u64 << k))
            .collect()
    }

    /// Graph indices of the bits in `mask`, ascending.
    pub fn to_indices(&self, mask: u64) -> Vec<usize> {
        bits(mask).map(|b| self.vertices[b]).collect()
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// A maximum independent set within `candidates`, by branch and bound.
pub(crate) fn maximum_independent_set(adj: &[u64], candidates: u64) -> u64 {
    let mut best = 0u64;
    mis_search(adj, candidates, 0, &mut best);
    best
}

fn mis_search(adj: &[u64], mut cand: u64, mut chosen: u64, best: &mut u64) {
    // Vertices with at most one remaining neighbor can always be taken.
    loop {
        let mut changed = false;
        for v in bits(cand) {
            if cand & (1u64 << v) == 0 {
                continue;
            }
            let nbrs = adj[v] & cand;
            if nbrs.count_ones() <= 1 {
                chosen |= 1u64 << v;
                cand &= !(nbrs | (1u64 << v));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() || *best == 0 {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    let pivot = bits(cand)
        .max_by_key(|&v| (adj[v] & cand).count_ones())
        .expect("nonempty candidates");
    let bit = 1u64 << pivot;
    mis_search(adj, cand & !(adj[pivot] | bit), chosen | bit, best);
    mis_search(adj, cand & !bit, chosen, best);
}

/// All maximal cliques of the graph given by `adj`, Bron–Kerbosch with
/// Tomita pivoting and a degeneracy-ordered outer loop.
pub(crate) fn maximal_cliques(adj: &[u64], cap: usize) -> Result<Vec<u64>> {
    let n = adj.len();
    let mut out = Vec::new();
    let order = degeneracy_order(adj);
    let mut earlier = 0u64;
    for &v in &order {
        let bit = 1u64 << v;
        let p = adj[v] & !earlier & full_mask(n);
        let x = adj[v] & earlier;
        bron_kerbosch(adj, bit, p, x, &mut out, cap)?;
        earlier |= bit;
    }
    Ok(out)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>, cap: usize) -> Result<()> {
    if p == 0 {
        if x == 0 {
            if out.len() >= cap {
                return Err(Error::ResourceLimit {
                    resource: "maximal set enumeration",
                    limit: cap,
                    actual: out.len() + 1,
                });
            }
            out.push(r);
        }
        return Ok(());
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("nonempty");
    for v in bits(p & !adj[pivot]) {
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out, cap)?;
        p &= !bit;
        x |= bit;
    }
    Ok(())
}

fn degeneracy_order(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut remaining = full_mask(n);
    let mut order = Vec::with_capacity(n);
    while remaining != 0 {
        let v = bits(remaining)
            .min_by_key(|&u| (adj[u] & remaining).count_ones())
            .expect("nonempty");
        order.push(v);
        remaining &= !(1u64 << v);
    }
    order
}

/// Maximal independent sets of `g` as sorted index lists.
pub(crate) fn maximal_independent_sets(
    g: &ConflictGraph,
    vertices: &[usize],
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    let local = LocalMasks::new(g, vertices, limits)?;
    let comp = local.complement();
    let sets = maximal_cliques(&comp, limits.max_sets)?;
    let mut out: Vec<Vec<usize>> = sets.into_iter().map(|m| local.to_indices(m)).collect();
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}
