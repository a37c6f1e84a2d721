//! Slow reference implementations used to cross-check the fast paths.

use crate::error::{Error, Result};
use crate::model::FitnessVector;
use crate::ranking::LayerPartition;

pub const ORACLE_SORT_LIMIT: usize = 256;
pub const LATTICE_BOUND: i64 = 4096;

/// Non-dominated sorting by repeated peeling.
///
/// Panics above [`ORACLE_SORT_LIMIT`] points, where peeling gets too slow to
/// be a useful oracle.
pub fn oracle_non_dominated_sort(points: &[FitnessVector]) -> LayerPartition {
    assert!(
        points.len() <= ORACLE_SORT_LIMIT,
        "oracle sort is limited to {ORACLE_SORT_LIMIT} points"
    );
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let (front, rest): (Vec<usize>, Vec<usize>) = remaining
            .iter()
            .partition(|&&i| !remaining.iter().any(|&j| points[j].dominates(&points[i])));
        layers.push(front);
        remaining = rest;
    }
    LayerPartition::from_layers(layers)
}

/// Hypervolume by counting unit lattice cells.
///
/// The cell `[i, i+1) × [j, j+1)` is covered when some point satisfies
/// `f₁ ≥ i+1` and `f₂ ≥ j+1`.
pub fn oracle_hypervolume_lattice(points: &[FitnessVector], h: [i64; 2]) -> Result<u128> {
    for p in points {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: p.dim(),
            });
        }
        if p.get(0) < h[0] || p.get(1) < h[1] {
            return Err(Error::BelowReference {
                point: p.values().to_vec(),
                reference: h,
            });
        }
        if p.get(0) - h[0] > LATTICE_BOUND || p.get(1) - h[1] > LATTICE_BOUND {
            return Err(Error::invalid(format!(
                "point {p} is more than {LATTICE_BOUND} cells from the reference"
            )));
        }
    }
    let top1 = points.iter().map(|p| p.get(0)).max().unwrap_or(h[0]);
    let top2 = points.iter().map(|p| p.get(1)).max().unwrap_or(h[1]);
    let mut cells = 0u128;
    for i in h[0]..top1 {
        for j in h[1]..top2 {
            if points.iter().any(|p| p.get(0) > i && p.get(1) > j) {
                cells += 1;
            }
        }
    }
    Ok(cells)
}
