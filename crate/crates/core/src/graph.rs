//! Conflict graphs (vertices are links, edges are interference) and the
//! network graphs they are derived from.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Undirected simple graph whose vertices are link identifiers.
///
/// Vertices keep their insertion order; that order is the "input order" used
/// by order-sensitive schedulers. Neighbor lists are sorted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let ids: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {id:?}")));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            pairs.push((i, j));
        }
        let adj = build_adjacency(ids.len(), &pairs)?;
        Ok(ConflictGraph { ids, index, adj })
    }

    /// Builds a graph on `ids` from index pairs.
    pub fn from_index_edges(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {id:?}")));
            }
        }
        let adj = build_adjacency(ids.len(), edges)?;
        Ok(ConflictGraph { ids, index, adj })
    }

    pub fn empty() -> Self {
        ConflictGraph {
            ids: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Vertex indices sorted lexicographically by id.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.ids.len()).collect();
        order.sort_by(|&a, &b| self.ids[a].cmp(&self.ids[b]));
        order
    }

    /// True when no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &u)| set[k + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }

    /// Connected components of the subgraph induced by `alive`, each sorted.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.ids.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.ids.len()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether the graph with the vertices in `removed` deleted is connected.
    pub fn connected_without(&self, removed: &[usize]) -> bool {
        let mut alive = vec![true; self.ids.len()];
        for &r in removed {
            alive[r] = false;
        }
        self.components_within(&alive).len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.ids.len();
        self.adj.iter().all(|ns| ns.len() + 1 == n)
    }

    /// Connected and 2-regular with at least three vertices.
    pub fn is_cycle(&self) -> bool {
        self.ids.len() >= 3 && self.adj.iter().all(|ns| ns.len() == 2) && self.is_connected()
    }

    pub fn is_odd_cycle(&self) -> bool {
        self.is_cycle() && self.ids.len() % 2 == 1
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> ConflictGraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let ids: Vec<String> = vertices.iter().map(|&v| self.ids[v].clone()).collect();
        let index = ids.iter().cloned().enumerate().map(|(k, id)| (id, k)).collect();
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut ns: Vec<usize> = self.adj[v].iter().filter_map(|w| pos.get(w).copied()).collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        ConflictGraph { ids, index, adj }
    }

    /// Connected components as standalone graphs, paired with the original indices.
    pub fn component_graphs(&self) -> Vec<(Vec<usize>, ConflictGraph)> {
        self.components()
            .into_iter()
            .map(|comp| {
                let g = self.induced(&comp);
                (comp, g)
            })
            .collect()
    }
}

fn build_adjacency(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut sets = vec![BTreeSet::new(); n];
    for &(i, j) in pairs {
        if i >= n || j >= n {
            return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range")));
        }
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex index {i}")));
        }
        sets[i].insert(j);
        sets[j].insert(i);
    }
    Ok(sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// A network link between two distinct nodes, possibly with parallel copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub multiplicity: u64,
}

/// Input description of a link before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSpec {
    pub id: Option<String>,
    pub u: String,
    pub v: String,
    pub multiplicity: Option<u64>,
}

impl LinkSpec {
    pub fn new(u: impl Into<String>, v: impl Into<String>) -> Self {
        LinkSpec {
            id: None,
            u: u.into(),
            v: v.into(),
            multiplicity: None,
        }
    }

    pub fn with_multiplicity(mut self, mult: u64) -> Self {
        self.multiplicity = Some(mult);
        self
    }
}

/// Network graph: nodes joined by links. Links default to the id `"u-v"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkGraph {
    nodes: Vec<String>,
    node_index: HashMap<String, usize>,
    links: Vec<Link>,
    incident: Vec<Vec<usize>>,
}

impl NetworkGraph {
    pub fn new<S: AsRef<str>>(nodes: &[S], links: Vec<LinkSpec>) -> Result<Self> {
        let nodes: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        let mut node_index = HashMap::with_capacity(nodes.len());
        for (i, id) in nodes.iter().enumerate() {
            if node_index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node id {id:?}")));
            }
        }
        let mut seen_ids = HashMap::new();
        let mut seen_pairs = HashMap::new();
        let mut out = Vec::with_capacity(links.len());
        let mut incident = vec![Vec::new(); nodes.len()];
        for spec in links {
            let u = *node_index
                .get(&spec.u)
                .ok_or_else(|| Error::UnknownNode(spec.u.clone()))?;
            let v = *node_index
                .get(&spec.v)
                .ok_or_else(|| Error::UnknownNode(spec.v.clone()))?;
            if u == v {
                return Err(Error::InvalidGraph(format!("link endpoints coincide at {:?}", spec.u)));
            }
            let multiplicity = spec.multiplicity.unwrap_or(1);
            if multiplicity == 0 {
                return Err(Error::InvalidGraph(format!(
                    "link {}-{} has multiplicity 0",
                    spec.u, spec.v
                )));
            }
            let id = spec.id.unwrap_or_else(|| format!("{}-{}", spec.u, spec.v));
            if seen_ids.insert(id.clone(), ()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate link id {id:?}")));
            }
            if seen_pairs.insert((u.min(v), u.max(v)), ()).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "parallel links between {:?} and {:?}; use multiplicity instead",
                    spec.u, spec.v
                )));
            }
            incident[u].push(out.len());
            incident[v].push(out.len());
            out.push(Link { id, u, v, multiplicity });
        }
        Ok(NetworkGraph {
            nodes,
            node_index,
            links: out,
            incident,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        self.node_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    /// Indices of links incident to node `u`.
    pub fn incident(&self, u: usize) -> &[usize] {
        &self.incident[u]
    }

    /// Index of the link joining `u` and `v`, if any.
    pub fn link_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incident[u].iter().copied().find(|&l| {
            let link = &self.links[l];
            (link.u == u && link.v == v) || (link.u == v && link.v == u)
        })
    }

    /// Sum of multiplicities of links at `u` (edge-endpoints counted with multiplicity).
    pub fn weighted_degree(&self, u: usize) -> u64 {
        self.incident[u].iter().map(|&l| self.links[l].multiplicity).sum()
    }

    pub fn link_ids(&self) -> Vec<String> {
        self.links.iter().map(|l| l.id.clone()).collect()
    }

    /// Node triples `(u, v, w)`, `u < v < w`, whose three links are all present.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.nodes.len();
        let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for l in &self.links {
            nbrs[l.u].insert(l.v);
            nbrs[l.v].insert(l.u);
        }
        let mut out = Vec::new();
        for u in 0..n {
            for &v in nbrs[u].range(u + 1..) {
                for &w in nbrs[v].range(v + 1..) {
                    if nbrs[u].contains(&w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Whether the node set splits into two sides with every link crossing.
    pub fn is_bipartite(&self) -> bool {
        let n = self.nodes.len();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap_or(false);
                for &l in &self.incident[u] {
                    let link = &self.links[l];
                    let w = if link.u == u { link.v } else { link.u };
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}
