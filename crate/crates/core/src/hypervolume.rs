//! Exact bi-objective hypervolume and SMS-EMOA's ejection rule.
//!
//! Fitness values and the reference point are integers, so volumes are
//! exact and ties between contributions are never a rounding artefact.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::FitnessVector;

/// Reference point `h` for hypervolume computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HypervolumeConfig {
    pub reference: [i64; 2],
}

impl HypervolumeConfig {
    pub fn new(h1: i64, h2: i64) -> Self {
        HypervolumeConfig {
            reference: [h1, h2],
        }
    }

    /// `h = (−⌈n/2⌉², −⌈n/2⌉²)`, which lies weakly below `(−(n/2)², −(n/2)²)`.
    pub fn default_for(n: usize) -> Self {
        let half = n.div_ceil(2) as i64;
        Self::new(-half * half, -half * half)
    }

    /// Whether `h ⪯ (−(n/2)², −(n/2)²)`, the precondition under which the
    /// extremes of an OneTrapZeroTrap layer outrank its interior.
    pub fn separates_extremes(&self, n: usize) -> bool {
        // Compare 4·h against −n² to stay in integers.
        let bound = -((n * n) as i128);
        self.reference.iter().all(|&h| 4 * h as i128 <= bound)
    }
}

fn check_point(f: &FitnessVector, h: [i64; 2]) -> Result<()> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: f.dim(),
        });
    }
    if f.get(0) < h[0] || f.get(1) < h[1] {
        return Err(Error::BelowReference {
            point: f.values().to_vec(),
            reference: h,
        });
    }
    Ok(())
}

/// Area of the union of boxes `[h₁, f₁] × [h₂, f₂]`.
///
/// Sweeps the points by descending first objective and adds the strip each
/// one contributes above the best second objective seen so far.
pub fn hypervolume_2d(points: &[FitnessVector], h: [i64; 2]) -> Result<u128> {
    for p in points {
        check_point(p, h)?;
    }
    let mut sorted: Vec<(i64, i64)> = points.iter().map(|p| (p.get(0), p.get(1))).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut best = h[1];
    let mut area: u128 = 0;
    for (f1, f2) in sorted {
        if f2 > best {
            area += (f1 - h[0]) as u128 * (f2 - best) as u128;
            best = f2;
        }
    }
    Ok(area)
}

/// `HV(S) − HV(S ∖ {S[index]})`.
pub fn hv_contribution(points: &[FitnessVector], index: usize, h: [i64; 2]) -> Result<u128> {
    if index >= points.len() {
        return Err(Error::NotAMember {
            index,
            len: points.len(),
        });
    }
    let whole = hypervolume_2d(points, h)?;
    let rest: Vec<FitnessVector> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, p)| p.clone())
        .collect();
    Ok(whole - hypervolume_2d(&rest, h)?)
}

/// Contribution of every member, by remove-and-recompute.
pub fn contributions(points: &[FitnessVector], h: [i64; 2]) -> Result<Vec<u128>> {
    (0..points.len())
        .map(|i| hv_contribution(points, i, h))
        .collect()
}

/// Index of the member to eject: uniform among minimal contributors.
pub fn smsemoa_eject<R: Rng + ?Sized>(
    layer: &[FitnessVector],
    h: [i64; 2],
    rng: &mut R,
) -> Result<usize> {
    if layer.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let contrib = contributions(layer, h)?;
    let least = *contrib.iter().min().expect("non-empty");
    let worst: Vec<usize> = (0..layer.len()).filter(|&i| contrib[i] == least).collect();
    Ok(*worst.choose(rng).expect("non-empty"))
}
