use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ConflictGraph;
use crate::rational::Rational;

/// Per-link time demand. Vertices without an entry demand nothing.
///
/// Also used for vertex weights when computing fractional chromatic numbers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DemandVector(BTreeMap<String, Rational>);

impl DemandVector {
    pub fn new() -> Self {
        DemandVector(BTreeMap::new())
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Rational)>) -> Self {
        DemandVector(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    /// Demand vector aligned with the graph's vertex order.
    pub fn from_slice(g: &ConflictGraph, values: &[Rational]) -> Self {
        DemandVector(g.ids().iter().cloned().zip(values.iter().cloned()).collect())
    }

    /// The same value at every vertex of `g`.
    pub fn uniform(g: &ConflictGraph, value: Rational) -> Self {
        DemandVector(g.ids().iter().map(|id| (id.clone(), value.clone())).collect())
    }

    pub fn get(&self, id: &str) -> Rational {
        self.0.get(id).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, id: impl Into<String>, value: Rational) {
        self.0.insert(id.into(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        DemandVector(self.0.iter().map(|(k, v)| (k.clone(), v * factor)).collect())
    }

    /// Validates keys and signs, returning values in graph vertex order.
    pub fn resolve(&self, g: &ConflictGraph) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); g.vertex_count()];
        for (id, value) in &self.0 {
            let v = g.index_of(id)?;
            if value.is_negative() {
                return Err(Error::InvalidDemand {
                    vertex: id.clone(),
                    reason: format!("negative demand {value}"),
                });
            }
            out[v] = value.clone();
        }
        Ok(out)
    }
}

impl FromIterator<(String, Rational)> for DemandVector {
    fn from_iter<I: IntoIterator<Item = (String, Rational)>>(iter: I) -> Self {
        DemandVector(iter.into_iter().collect())
    }
}

/// Sum of `values` over the neighbors of `v`.
pub(crate) fn neighbor_sum(g: &ConflictGraph, values: &[Rational], v: usize) -> Rational {
    g.neighbors(v).iter().map(|&w| &values[w]).sum()
}
