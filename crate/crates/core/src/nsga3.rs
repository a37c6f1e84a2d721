//! NSGA-III survival selection: normalisation against ideal and nadir
//! points, association to reference rays, and niching.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::FitnessVector;

/// Default lower bound for every nadir coordinate.
pub const DEFAULT_EPS_NADIR: f64 = 1e-6;

/// A set of nonzero, pairwise distinct reference points of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePointSet {
    points: Vec<Vec<f64>>,
    // Parameter `p` when the set was built by `das_dennis`; used for display.
    divisions: Option<usize>,
}

impl ReferencePointSet {
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let d = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::invalid("reference point set is empty"))?;
        for p in &points {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: p.len(),
                });
            }
            if p.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::invalid(format!(
                    "reference point {p:?} is not nonnegative"
                )));
            }
            if p.iter().all(|v| *v == 0.0) {
                return Err(Error::invalid(
                    "reference point set contains the zero vector",
                ));
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::invalid(format!("duplicate reference point {p:?}")));
            }
        }
        Ok(ReferencePointSet {
            points,
            divisions: None,
        })
    }

    /// The `d` unit vectors.
    pub fn units(d: usize) -> Self {
        let mut set = das_dennis(d, 1).expect("d >= 2 and p = 1 are valid");
        set.divisions = None;
        set
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn contains_unit_vectors(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            self.points.iter().any(|p| {
                p.iter()
                    .enumerate()
                    .all(|(j, &v)| v == if i == j { 1.0 } else { 0.0 })
            })
        })
    }
}

/// Flag form: `units` or `das-dennis:p=<P>`.
impl fmt::Display for ReferencePointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.divisions {
            Some(p) => write!(f, "das-dennis:p={p}"),
            None if self.len() == self.dim() && self.contains_unit_vectors() => {
                f.write_str("units")
            }
            None => write!(f, "custom({})", self.len()),
        }
    }
}

impl FromStr for ReferencePointSet {
    type Err = Error;

    /// Parses the bi-objective flag forms.
    fn from_str(s: &str) -> Result<Self> {
        if s == "units" {
            return Ok(Self::units(2));
        }
        let p = s
            .strip_prefix("das-dennis:p=")
            .ok_or_else(|| Error::parse(format!("unknown reference points `{s}`")))?;
        let p: usize = p
            .parse()
            .map_err(|_| Error::parse(format!("invalid das-dennis parameter `{p}`")))?;
        das_dennis(2, p)
    }
}

/// All points `(a₁/p, …, a_d/p)` with nonnegative integers summing to `p`,
/// ordered lexicographically by `(a₁, …, a_d)`.
pub fn das_dennis(d: usize, p: usize) -> Result<ReferencePointSet> {
    if d < 2 {
        return Err(Error::invalid(format!("das-dennis needs d >= 2, got {d}")));
    }
    if p < 1 {
        return Err(Error::invalid("das-dennis needs p >= 1"));
    }
    fn compose(left: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            compose(left - a, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut compositions = Vec::new();
    compose(p, d, &mut Vec::with_capacity(d), &mut compositions);
    let points = compositions
        .into_iter()
        .map(|c| c.into_iter().map(|a| a as f64 / p as f64).collect())
        .collect();
    Ok(ReferencePointSet {
        points,
        divisions: Some(p),
    })
}

/// Ideal, maximum and nadir points of one selection step.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationContext {
    pub ideal: Vec<f64>,
    pub max: Vec<f64>,
    pub nadir: Vec<f64>,
    pub eps_nadir: f64,
}

/// Builds the context from the fitness of `Y ∪ F^{i*}`.
///
/// Nadir rule per objective: the observed maximum when it exceeds the
/// ideal value and is at least `eps_nadir`, else `max(ideal + eps, eps)`.
/// This guarantees `nadir ≥ eps` and `nadir > ideal` always, and
/// `nadir ≤ max` whenever those two are satisfiable by the maximum.
pub fn compute_context(fitness: &[FitnessVector], eps_nadir: f64) -> Result<NormalizationContext> {
    let first = fitness.first().ok_or(Error::EmptyPopulation)?;
    if !(eps_nadir > 0.0 && eps_nadir.is_finite()) {
        return Err(Error::invalid(format!(
            "eps_nadir must be positive, got {eps_nadir}"
        )));
    }
    let d = first.dim();
    let mut ideal = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    for f in fitness {
        if f.dim() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: f.dim(),
            });
        }
        for (j, &v) in f.values().iter().enumerate() {
            ideal[j] = ideal[j].min(v as f64);
            max[j] = max[j].max(v as f64);
        }
    }
    let nadir = ideal
        .iter()
        .zip(&max)
        .map(|(&lo, &hi)| {
            if hi > lo && hi >= eps_nadir {
                hi
            } else {
                (lo + eps_nadir).max(eps_nadir)
            }
        })
        .collect();
    Ok(NormalizationContext {
        ideal,
        max,
        nadir,
        eps_nadir,
    })
}

impl NormalizationContext {
    /// `(f_j − ideal_j) / (nadir_j − ideal_j)` per objective.
    pub fn normalize(&self, f: &FitnessVector) -> Vec<f64> {
        f.values()
            .iter()
            .enumerate()
            .map(|(j, &v)| (v as f64 - self.ideal[j]) / (self.nadir[j] - self.ideal[j]))
            .collect()
    }
}

/// Euclidean distance from `v` to the line through the origin and `r`.
pub fn ray_distance(v: &[f64], r: &[f64]) -> Result<f64> {
    if v.len() != r.len() {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: r.len(),
        });
    }
    let rr: f64 = r.iter().map(|x| x * x).sum();
    if rr == 0.0 {
        return Err(Error::invalid("reference ray through the zero vector"));
    }
    let t = v.iter().zip(r).map(|(a, b)| a * b).sum::<f64>() / rr;
    Ok(v.iter()
        .zip(r)
        .map(|(a, b)| (a - t * b).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// Nearest reference point of one normalised vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Association {
    /// Index into the reference point set.
    pub point: usize,
    pub distance: f64,
}

/// Associates each vector to a nearest reference ray. Exact distance ties
/// are broken uniformly at random.
pub fn associate<R: Rng + ?Sized>(
    normalized: &[Vec<f64>],
    refs: &ReferencePointSet,
    rng: &mut R,
) -> Result<Vec<Association>> {
    let mut nearest = Vec::with_capacity(refs.len());
    normalized
        .iter()
        .map(|v| {
            let mut best = f64::INFINITY;
            nearest.clear();
            for (i, r) in refs.points().iter().enumerate() {
                let dist = ray_distance(v, r)?;
                if dist < best {
                    best = dist;
                    nearest.clear();
                    nearest.push(i);
                } else if dist == best {
                    nearest.push(i);
                }
            }
            let point = match nearest.len() {
                0 => return Err(Error::invalid("no finite ray distance")),
                1 => nearest[0],
                _ => *nearest.choose(rng).expect("non-empty"),
            };
            Ok(Association {
                point,
                distance: best,
            })
        })
        .collect()
}

/// Fills the `μ − |Y|` free slots from the critical layer.
///
/// `kept` are the associations of `Y`, `critical` those of the critical
/// layer. The niche count of each reference point starts at the number of
/// `Y` members associated with it. Each round takes an active point with
/// minimal niche count (random among ties); if it has an unselected critical
/// member, the one nearest its ray (random among ties) is selected and the
/// count incremented, otherwise the point is deactivated.
///
/// Returns indices into `critical`, in selection order.
pub fn niching<R: Rng + ?Sized>(
    kept: &[Association],
    critical: &[Association],
    reference_count: usize,
    mu: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if kept.len() >= mu || kept.len() + critical.len() < mu {
        return Err(Error::invalid(format!(
            "niching needs |Y| < mu <= |Y| + |F|, got |Y|={}, |F|={}, mu={mu}",
            kept.len(),
            critical.len()
        )));
    }
    if let Some(a) = kept
        .iter()
        .chain(critical)
        .find(|a| a.point >= reference_count)
    {
        return Err(Error::NotAMember {
            index: a.point,
            len: reference_count,
        });
    }

    let mut niche = vec![0usize; reference_count];
    for a in kept {
        niche[a.point] += 1;
    }
    let mut pools: Vec<Vec<usize>> = vec![Vec::new(); reference_count];
    for (i, a) in critical.iter().enumerate() {
        pools[a.point].push(i);
    }
    let mut active: Vec<usize> = (0..reference_count).collect();
    let mut selected = Vec::with_capacity(mu - kept.len());
    let mut ties = Vec::new();

    loop {
        let least = active
            .iter()
            .map(|&r| niche[r])
            .min()
            .expect("unselected critical members keep their reference point active");
        ties.clear();
        ties.extend(active.iter().copied().filter(|&r| niche[r] == least));
        let r_min = *ties.choose(rng).expect("non-empty");

        let pool = &mut pools[r_min];
        if pool.is_empty() {
            active.retain(|&r| r != r_min);
            continue;
        }
        let closest = pool
            .iter()
            .map(|&i| critical[i].distance)
            .fold(f64::INFINITY, f64::min);
        ties.clear();
        ties.extend(
            pool.iter()
                .enumerate()
                .filter(|(_, &i)| critical[i].distance == closest)
                .map(|(slot, _)| slot),
        );
        let slot = *ties.choose(rng).expect("non-empty");
        selected.push(pool.swap_remove(slot));
        niche[r_min] += 1;
        if kept.len() + selected.len() == mu {
            return Ok(selected);
        }
    }
}

/// Full critical-layer selection: context from `kept ∪ critical`,
/// normalisation, association, then niching. Returns indices into `critical`.
pub fn nsga3_select<R: Rng + ?Sized>(
    kept: &[FitnessVector],
    critical: &[FitnessVector],
    refs: &ReferencePointSet,
    mu: usize,
    eps_nadir: f64,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let all: Vec<FitnessVector> = kept.iter().chain(critical).cloned().collect();
    let ctx = compute_context(&all, eps_nadir)?;
    let normalized: Vec<Vec<f64>> = all.iter().map(|f| ctx.normalize(f)).collect();
    let assoc = associate(&normalized, refs, rng)?;
    let (kept_assoc, crit_assoc) = assoc.split_at(kept.len());
    niching(kept_assoc, crit_assoc, refs.len(), mu, rng)
}
