use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Weight → multiplicity. Serialized as a sorted array of `[weight, count]` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<[u64; 2]>", from = "Vec<[u64; 2]>")]
pub struct WeightDistribution {
    dist: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_weights(weights: impl IntoIterator<Item = u64>) -> Self {
        let mut d = Self::new();
        for w in weights {
            d.add(w, 1);
        }
        d
    }

    /// Adds `count` words of weight `w`; zero counts are dropped.
    pub fn add(&mut self, w: u64, count: u64) {
        if count > 0 {
            *self.dist.entry(w).or_insert(0) += count;
        }
    }

    pub fn get(&self, w: u64) -> u64 {
        self.dist.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dist.values().sum()
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.dist.keys().copied().find(|&w| w > 0)
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.dist.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.dist.iter().map(|(&w, &c)| (w, c))
    }

    pub fn to_pairs(&self) -> Vec<[u64; 2]> {
        self.iter().map(|(w, c)| [w, c]).collect()
    }

    /// Every weight scaled by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        let mut d = Self::new();
        for (w, c) in self.iter() {
            d.add(w * k, c);
        }
        d
    }

    /// Human-readable differences against `other`, empty when equal.
    pub fn diff(&self, other: &WeightDistribution) -> Vec<String> {
        let mut keys: Vec<u64> = self.dist.keys().chain(other.dist.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter(|&w| self.get(w) != other.get(w))
            .map(|w| format!("weight {w}: {} vs {}", self.get(w), other.get(w)))
            .collect()
    }
}

impl From<WeightDistribution> for Vec<[u64; 2]> {
    fn from(d: WeightDistribution) -> Self {
        d.to_pairs()
    }
}

impl From<Vec<[u64; 2]>> for WeightDistribution {
    fn from(v: Vec<[u64; 2]>) -> Self {
        let mut d = WeightDistribution::new();
        for [w, c] in v {
            d.add(w, c);
        }
        d
    }
}

impl<const N: usize> From<[(u64, u64); N]> for WeightDistribution {
    fn from(v: [(u64, u64); N]) -> Self {
        let mut d = WeightDistribution::new();
        for (w, c) in v {
            d.add(w, c);
        }
        d
    }
}
