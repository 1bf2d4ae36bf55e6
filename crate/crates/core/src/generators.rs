//! Deterministic graph families and random instances.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so outputs are
//! identical across platforms for a given seed. Generated vertex ids are
//! `v0, v1, ...`, zero-padded so that lexicographic order matches numeric order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{ConflictGraph, LinkSpec, NetworkGraph};
use crate::rational::Rational;

/// Ids `{prefix}0 .. {prefix}{n-1}`, padded to a common width.
pub fn padded_ids(prefix: &str, n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

fn build(n: usize, edges: &[(usize, usize)]) -> ConflictGraph {
    ConflictGraph::from_index_edges(padded_ids("v", n), edges).expect("generated edges are valid")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `K_{1,d}` with center `v0`.
pub fn star(d: usize) -> ConflictGraph {
    let edges: Vec<(usize, usize)> = (1..=d).map(|i| (0, i)).collect();
    build(d + 1, &edges)
}

pub fn path(n: usize) -> ConflictGraph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// `C_n` for `n ≥ 3`; smaller `n` give a path.
pub fn cycle(n: usize) -> ConflictGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        edges.push((n - 1, 0));
    }
    build(n, &edges)
}

pub fn complete(n: usize) -> ConflictGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

/// `K4` on `a, b, c, d` with the edge `c–d` removed.
pub fn k4_minus_e() -> ConflictGraph {
    ConflictGraph::new(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("static graph")
}

/// Center `x` joined to every vertex of disjoint cliques of the given sizes.
/// Clique `i` (1-based) has vertices `L{i}_{j}`.
pub fn center_with_cliques(clique_sizes: &[usize]) -> ConflictGraph {
    let mut ids = vec!["x".to_string()];
    let mut edges = Vec::new();
    for (i, &size) in clique_sizes.iter().enumerate() {
        let first = ids.len();
        for j in 1..=size {
            ids.push(format!("L{}_{}", i + 1, j));
        }
        for a in first..ids.len() {
            edges.push((0, a));
            for b in a + 1..ids.len() {
                edges.push((a, b));
            }
        }
    }
    ConflictGraph::from_index_edges(ids, &edges).expect("generated edges are valid")
}

pub fn petersen() -> ConflictGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Primary-interference conflict graph: one vertex per link (named by link id),
/// adjacent iff the links share an endpoint.
pub fn line_graph(n: &NetworkGraph) -> ConflictGraph {
    let mut edges = Vec::new();
    for node in 0..n.nodes().len() {
        let inc = n.incident(node);
        for (k, &a) in inc.iter().enumerate() {
            for &b in &inc[k + 1..] {
                edges.push((a, b));
            }
        }
    }
    ConflictGraph::from_index_edges(n.link_ids(), &edges).expect("link ids are unique")
}

/// Conflict graph of equal disks of radius `radius` centered at `points`:
/// adjacent iff the squared center distance is at most `(2·radius)²`.
/// Vertices are `p0, p1, ...`.
pub fn unit_disk(points: &[(Rational, Rational)], radius: &Rational) -> ConflictGraph {
    let reach = {
        let d = Rational::from(2i64) * radius;
        &d * &d
    };
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dx = &points[i].0 - &points[j].0;
            let dy = &points[i].1 - &points[j].1;
            if &dx * &dx + &dy * &dy <= reach {
                edges.push((i, j));
            }
        }
    }
    ConflictGraph::from_index_edges(padded_ids("p", points.len()), &edges).expect("generated edges are valid")
}

/// `G(n, p)`: each pair joined independently with probability `p`.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> ConflictGraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.random_bool(edge_probability.clamp(0.0, 1.0)) {
                edges.push((i, j));
            }
        }
    }
    build(n, &edges)
}

/// `G(n, p)` conditioned on connectivity, by rejection (seed advances per try).
pub fn random_connected_graph(n: usize, edge_probability: f64, seed: u64) -> ConflictGraph {
    let mut r = rng(seed);
    loop {
        let g = random_graph(n, edge_probability, r.random());
        if g.is_connected() {
            return g;
        }
    }
}

/// `n` points on a 1000×1000 integer grid scaled into `[0, side]²`.
pub fn random_points(n: usize, side: &Rational, seed: u64) -> Vec<(Rational, Rational)> {
    let mut r = rng(seed);
    let unit = side / &Rational::from(1000i64);
    (0..n)
        .map(|_| {
            let x: i64 = r.random_range(0..=1000);
            let y: i64 = r.random_range(0..=1000);
            (Rational::from(x) * &unit, Rational::from(y) * &unit)
        })
        .collect()
}

/// Random simple network on nodes `n0, n1, ...` with link probability `p`.
pub fn random_network(nodes: usize, link_probability: f64, seed: u64) -> NetworkGraph {
    random_multigraph(nodes, link_probability, 1, seed)
}

/// Random network whose links carry multiplicities drawn from `1..=max_multiplicity`.
pub fn random_multigraph(nodes: usize, link_probability: f64, max_multiplicity: u64, seed: u64) -> NetworkGraph {
    let mut r = rng(seed);
    let ids = padded_ids("n", nodes);
    let mut links = Vec::new();
    for i in 0..nodes {
        for j in i + 1..nodes {
            if r.random_bool(link_probability.clamp(0.0, 1.0)) {
                let mult = r.random_range(1..=max_multiplicity.max(1));
                links.push(LinkSpec::new(ids[i].clone(), ids[j].clone()).with_multiplicity(mult));
            }
        }
    }
    NetworkGraph::new(&ids, links).expect("generated links are valid")
}
