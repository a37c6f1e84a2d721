//! Non-dominated sorting, critical-layer selection and crowding distance.
//!
//! All functions work on slices of fitness vectors and return indices into
//! those slices, so callers keep ownership of their individuals.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::FitnessVector;

/// Layers `F¹, F², …` of a multiset, as index lists in ascending input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPartition {
    layers: Vec<Vec<usize>>,
}

impl LayerPartition {
    pub fn from_layers(layers: Vec<Vec<usize>>) -> Self {
        LayerPartition { layers }
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn total(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn last(&self) -> Option<&[usize]> {
        self.layers.last().map(Vec::as_slice)
    }

    pub fn critical_layer(&self, mu: usize) -> Result<CriticalLayer> {
        select_critical_layer(&self.layers, mu)
    }
}

/// Result of locating the critical layer for a capacity `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalLayer {
    /// Zero-based position of the critical layer `i*` in the partition.
    pub index: usize,
    /// Union `Y` of all layers before the critical one.
    pub kept: Vec<usize>,
    /// Slots `r = μ − |Y|` left for members of the critical layer; always ≥ 1.
    pub remaining: usize,
}

/// Sorts `fitness` into non-dominated layers.
///
/// Uses per-point dominator counts (quadratic in the input size); layer
/// membership does not depend on input order, and each layer lists its
/// members in ascending index order.
pub fn non_dominated_sort(fitness: &[FitnessVector]) -> LayerPartition {
    let m = fitness.len();
    let mut dominated_by_count = vec![0usize; m];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); m];
    for p in 0..m {
        for q in p + 1..m {
            match fitness[p].compare_unchecked(&fitness[q]) {
                crate::model::Dominance::Dominates => {
                    dominates[p].push(q);
                    dominated_by_count[q] += 1;
                }
                crate::model::Dominance::DominatedBy => {
                    dominates[q].push(p);
                    dominated_by_count[p] += 1;
                }
                _ => {}
            }
        }
    }

    let mut layers = Vec::new();
    let mut current: Vec<usize> = (0..m).filter(|&p| dominated_by_count[p] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominates[p] {
                dominated_by_count[q] -= 1;
                if dominated_by_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        layers.push(std::mem::replace(&mut current, next));
    }
    LayerPartition { layers }
}

/// Finds `i*` with `Σ_{i<i*}|Fⁱ| < μ ≤ Σ_{i≤i*}|Fⁱ|`.
pub fn select_critical_layer(layers: &[Vec<usize>], mu: usize) -> Result<CriticalLayer> {
    if mu == 0 {
        return Err(Error::invalid("population capacity must be positive"));
    }
    let available: usize = layers.iter().map(Vec::len).sum();
    if available < mu {
        return Err(Error::InsufficientIndividuals {
            available,
            capacity: mu,
        });
    }
    let mut kept = Vec::new();
    for (index, layer) in layers.iter().enumerate() {
        if kept.len() + layer.len() >= mu {
            let remaining = mu - kept.len();
            return Ok(CriticalLayer {
                index,
                kept,
                remaining,
            });
        }
        kept.extend_from_slice(layer);
    }
    unreachable!("capacity check guarantees a critical layer")
}

/// A crowding distance; `Infinite` ranks above every finite value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CrowdingValue {
    Finite(f64),
    Infinite,
}

impl CrowdingValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, CrowdingValue::Infinite)
    }
}

impl Eq for CrowdingValue {}

impl PartialOrd for CrowdingValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CrowdingValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CrowdingValue::Infinite, CrowdingValue::Infinite) => Ordering::Equal,
            (CrowdingValue::Infinite, _) => Ordering::Greater,
            (_, CrowdingValue::Infinite) => Ordering::Less,
            (CrowdingValue::Finite(a), CrowdingValue::Finite(b)) => a.total_cmp(b),
        }
    }
}

/// Crowding distance of every member of `layer`.
///
/// Per objective, members are stably sorted by descending value; the first
/// and last positions are infinite, interior positions add the normalised gap
/// between their neighbours. An objective with zero range adds nothing to
/// interior members.
pub fn crowding_distance(layer: &[FitnessVector]) -> Vec<CrowdingValue> {
    let m = layer.len();
    if m == 0 {
        return Vec::new();
    }
    let d = layer[0].dim();
    let mut total = vec![0.0f64; m];
    let mut infinite = vec![false; m];
    let mut order: Vec<usize> = Vec::with_capacity(m);
    for k in 0..d {
        order.clear();
        order.extend(0..m);
        order.sort_by(|&a, &b| layer[b].get(k).cmp(&layer[a].get(k)));
        infinite[order[0]] = true;
        infinite[order[m - 1]] = true;
        let range = layer[order[0]].get(k) - layer[order[m - 1]].get(k);
        if range > 0 {
            for i in 1..m.saturating_sub(1) {
                let gap = layer[order[i - 1]].get(k) - layer[order[i + 1]].get(k);
                total[order[i]] += gap as f64 / range as f64;
            }
        }
    }
    total
        .into_iter()
        .zip(infinite)
        .map(|(t, inf)| {
            if inf {
                CrowdingValue::Infinite
            } else {
                CrowdingValue::Finite(t)
            }
        })
        .collect()
}

/// Picks the `r` members with the largest crowding values, breaking ties
/// uniformly at random. Returns indices into `values`.
pub fn nsga2_truncate<R: Rng + ?Sized>(
    values: &[CrowdingValue],
    r: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if r > values.len() {
        return Err(Error::InsufficientIndividuals {
            available: values.len(),
            capacity: r,
        });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.shuffle(rng);
    order.sort_by(|&a, &b| values[b].cmp(&values[a]));
    order.truncate(r);
    Ok(order)
}
