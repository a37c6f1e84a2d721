//! Property and oracle suites behind `emo-lab verify`.
//!
//! Each check returns a [`SuiteReport`] carrying the first counterexample it
//! met. The sorting and hypervolume checks take the implementation under
//! test as a parameter, so a deliberately broken one can be plugged in.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::experiment::derive_seed;
use super::monotone_violations;
use super::oracle::{oracle_hypervolume_lattice, oracle_non_dominated_sort};
use crate::algorithms::{run, AlgorithmConfig, FrontCoverage, GenerationTrace, TraceRecorder};
use crate::error::{Error, Result};
use crate::hypervolume::{contributions, hypervolume_2d, HypervolumeConfig};
use crate::model::{Bitstring, Dominance, FitnessVector};
use crate::nsga3::das_dennis;
use crate::problems::ProblemInstance;
use crate::ranking::{non_dominated_sort, LayerPartition};
use crate::variation::MutationOperator;

/// Largest `n` for which the front structure is checked exhaustively.
pub const STRUCTURE_MAX_N: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Sorting,
    Hypervolume,
    /// The two Pareto optima dominate everything else and the interior is an antichain.
    FrontStructure,
    /// Extremes of an interior layer outrank its inner points by hypervolume contribution.
    ExtremeContributions,
    /// Engines with dedup never lose their maximal ones or zeros counts.
    Monotone,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Sorting,
        Suite::Hypervolume,
        Suite::FrontStructure,
        Suite::ExtremeContributions,
        Suite::Monotone,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Sorting => "sorting",
            Suite::Hypervolume => "hypervolume",
            Suite::FrontStructure => "structure",
            Suite::ExtremeContributions => "extremes",
            Suite::Monotone => "monotone",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    /// Also accepts `lemma1` and `lemma5` for the structure and extremes suites.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sorting" => Suite::Sorting,
            "hypervolume" => Suite::Hypervolume,
            "structure" | "lemma1" => Suite::FrontStructure,
            "extremes" | "lemma5" => Suite::ExtremeContributions,
            "monotone" => Suite::Monotone,
            other => return Err(Error::parse(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: pass ({} checks)", self.suite, self.checks),
            Some(c) => write!(
                f,
                "{}: FAIL after {} checks\n  counterexample: {c}",
                self.suite, self.checks
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Restricts size-dependent suites to one `n`.
    pub n: Option<usize>,
    /// Random instances for the oracle suites; a tenth of it for the extremes suite.
    pub cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: None,
            cases: 10_000,
            seed: 0,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, suite as u64, 0));
    let report = match suite {
        Suite::Sorting => check_sorting(
            non_dominated_sort,
            opts.cases,
            opts.n.unwrap_or(10),
            &mut rng,
        ),
        Suite::Hypervolume => check_hypervolume(hypervolume_2d, opts.cases, &mut rng),
        Suite::FrontStructure => {
            let ns: Vec<usize> = match opts.n {
                Some(n) if n > STRUCTURE_MAX_N => {
                    return Err(Error::invalid(format!(
                        "structure suite is exhaustive, n ≤ {STRUCTURE_MAX_N}"
                    )))
                }
                Some(n) => vec![n],
                None => (1..=12).collect(),
            };
            merge(suite, ns.into_iter().map(check_front_structure))
        }
        Suite::ExtremeContributions => {
            let ns = opts.n.map_or_else(|| vec![8, 16, 32], |n| vec![n]);
            if ns.iter().any(|&n| n < 4) {
                return Err(Error::invalid("extremes suite needs n ≥ 4"));
            }
            let layers = (opts.cases / 10).max(1);
            let reports: Vec<SuiteReport> = ns
                .iter()
                .map(|&n| check_extreme_contributions(n, layers, &mut rng))
                .collect();
            merge(suite, reports.into_iter())
        }
        Suite::Monotone => check_monotone(opts.n.unwrap_or(16), 10, opts.seed)?,
    };
    Ok(report)
}

fn merge(suite: Suite, reports: impl Iterator<Item = SuiteReport>) -> SuiteReport {
    let mut total = SuiteReport {
        suite,
        checks: 0,
        counterexample: None,
    };
    for r in reports {
        total.checks += r.checks;
        if r.counterexample.is_some() {
            total.counterexample = r.counterexample;
            break;
        }
    }
    total
}

fn random_multiset<R: Rng + ?Sized>(max_n: usize, rng: &mut R) -> Vec<FitnessVector> {
    let n = rng.random_range(1..=max_n.max(1));
    let size = rng.random_range(1..=64);
    if rng.random_bool(0.5) {
        let problem = ProblemInstance::otzt(n);
        (0..size)
            .map(|_| {
                let x = match rng.random_range(0..10) {
                    0 => Bitstring::zeros(n),
                    1 => Bitstring::ones(n),
                    _ => Bitstring::random(n, rng),
                };
                problem.evaluate_otzt(&x).expect("lengths match")
            })
            .collect()
    } else {
        let top = n as i64 + 1;
        (0..size)
            .map(|_| FitnessVector::pair(rng.random_range(0..=top), rng.random_range(0..=top)))
            .collect()
    }
}

/// Compares `sort` against repeated peeling on random multisets of at most
/// 64 fitness vectors, drawn from OneTrapZeroTrap with `n ≤ max_n` or from
/// the grid `[0, n+1]²`.
pub fn check_sorting<F, R>(sort: F, cases: usize, max_n: usize, rng: &mut R) -> SuiteReport
where
    F: Fn(&[FitnessVector]) -> LayerPartition,
    R: Rng + ?Sized,
{
    for case in 0..cases {
        let points = random_multiset(max_n, rng);
        let fast = sort(&points);
        let slow = oracle_non_dominated_sort(&points);
        if normalized(&fast) != normalized(&slow) {
            return SuiteReport {
                suite: Suite::Sorting,
                checks: case as u64,
                counterexample: Some(format!(
                    "points {:?}: got {:?}, oracle {:?}",
                    points.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    fast.layers(),
                    slow.layers()
                )),
            };
        }
    }
    SuiteReport {
        suite: Suite::Sorting,
        checks: cases as u64,
        counterexample: None,
    }
}

fn normalized(p: &LayerPartition) -> Vec<Vec<usize>> {
    p.layers()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        })
        .collect()
}

/// Compares `hv` against lattice counting on random integer point sets.
pub fn check_hypervolume<F, R>(hv: F, cases: usize, rng: &mut R) -> SuiteReport
where
    F: Fn(&[FitnessVector], [i64; 2]) -> Result<u128>,
    R: Rng + ?Sized,
{
    for case in 0..cases {
        let h = [rng.random_range(-40..=0), rng.random_range(-40..=0)];
        let size = rng.random_range(0..=12);
        let points: Vec<FitnessVector> = (0..size)
            .map(|_| FitnessVector::pair(rng.random_range(h[0]..=40), rng.random_range(h[1]..=40)))
            .collect();
        let fast = hv(&points, h);
        let slow = oracle_hypervolume_lattice(&points, h);
        if fast.as_ref().ok() != slow.as_ref().ok() {
            return SuiteReport {
                suite: Suite::Hypervolume,
                checks: case as u64,
                counterexample: Some(format!(
                    "points {:?}, h {h:?}: got {fast:?}, oracle {slow:?}",
                    points.iter().map(ToString::to_string).collect::<Vec<_>>()
                )),
            };
        }
    }
    SuiteReport {
        suite: Suite::Hypervolume,
        checks: cases as u64,
        counterexample: None,
    }
}

/// Exhaustive check over all `2ⁿ` strings: each optimum dominates every
/// other string, the optima are incomparable, and any two other strings are
/// incomparable or equal in fitness.
pub fn check_front_structure(n: usize) -> SuiteReport {
    assert!(
        (1..=STRUCTURE_MAX_N).contains(&n),
        "n must be in 1..={STRUCTURE_MAX_N}"
    );
    let problem = ProblemInstance::otzt(n);
    let strings: Vec<Bitstring> = (0u64..1 << n)
        .map(|v| {
            Bitstring::from_bits(
                &(0..n)
                    .map(|i| v >> (n - 1 - i) & 1 == 1)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let fitness: Vec<FitnessVector> = strings
        .iter()
        .map(|x| problem.evaluate_otzt(x).expect("length n"))
        .collect();
    let front = [0usize, (1 << n) - 1];
    let mut checks = 0u64;
    let fail = |checks, what: String| SuiteReport {
        suite: Suite::FrontStructure,
        checks,
        counterexample: Some(format!("n = {n}: {what}")),
    };

    if fitness[front[0]].compare_unchecked(&fitness[front[1]]) != Dominance::Incomparable {
        return fail(checks, "the two optima are comparable".into());
    }
    checks += 1;
    let interior: Vec<usize> = (1..(1 << n) - 1).collect();
    for &i in &interior {
        for &p in &front {
            checks += 1;
            if !fitness[p].dominates(&fitness[i]) {
                return fail(
                    checks,
                    format!("{} does not dominate {}", strings[p], strings[i]),
                );
            }
        }
    }
    for (a, &i) in interior.iter().enumerate() {
        for &j in &interior[a + 1..] {
            checks += 1;
            if !matches!(
                fitness[i].compare_unchecked(&fitness[j]),
                Dominance::Incomparable | Dominance::Equal
            ) {
                return fail(
                    checks,
                    format!("{} and {} are comparable", strings[i], strings[j]),
                );
            }
        }
    }
    SuiteReport {
        suite: Suite::FrontStructure,
        checks,
        counterexample: None,
    }
}

/// Random layers of at least three interior points with distinct fitness,
/// under the default reference point: both extremes must contribute strictly
/// more hypervolume than every other member.
pub fn check_extreme_contributions<R: Rng + ?Sized>(
    n: usize,
    layers: usize,
    rng: &mut R,
) -> SuiteReport {
    assert!(n >= 4, "an interior layer of three points needs n ≥ 4");
    let problem = ProblemInstance::otzt(n);
    let h = HypervolumeConfig::default_for(n).reference;
    for case in 0..layers {
        let size = rng.random_range(3..n);
        let ks: Vec<usize> = sample(rng, n - 1, size)
            .into_iter()
            .map(|k| k + 1)
            .collect();
        let layer: Vec<FitnessVector> = ks
            .iter()
            .map(|&k| {
                let x = Bitstring::zeros(n).with_flipped(sample(rng, n, k));
                problem.evaluate_otzt(&x).expect("length n")
            })
            .collect();
        let delta = contributions(&layer, h).expect("interior points lie above h");
        let lo = (0..size).min_by_key(|&i| ks[i]).expect("non-empty");
        let hi = (0..size).max_by_key(|&i| ks[i]).expect("non-empty");
        let inner_max = (0..size)
            .filter(|&i| i != lo && i != hi)
            .map(|i| delta[i])
            .max()
            .expect("size ≥ 3");
        if delta[lo] <= inner_max || delta[hi] <= inner_max {
            return SuiteReport {
                suite: Suite::ExtremeContributions,
                checks: case as u64,
                counterexample: Some(format!(
                    "n = {n}, layer {:?}, contributions {delta:?}",
                    layer.iter().map(ToString::to_string).collect::<Vec<_>>()
                )),
            };
        }
    }
    SuiteReport {
        suite: Suite::ExtremeContributions,
        checks: layers as u64,
        counterexample: None,
    }
}

/// Engine configurations whose populations are monotone on OneTrapZeroTrap.
pub fn monotone_configs() -> Vec<AlgorithmConfig> {
    vec![
        AlgorithmConfig::nsga2(4).with_init_excludes_front(true),
        AlgorithmConfig::nsga3(4, crate::nsga3::ReferencePointSet::units(2))
            .with_init_excludes_front(true),
        AlgorithmConfig::nsga3(10, das_dennis(2, 4).expect("valid")).with_init_excludes_front(true),
        AlgorithmConfig::smsemoa(3)
            .with_mutation(MutationOperator::Local)
            .with_init_excludes_front(true),
        AlgorithmConfig::smsemoa(3).with_init_excludes_front(true),
    ]
}

/// Checks the monitor on a synthetic trace, then runs every configuration
/// of [`monotone_configs`] `runs` times at size `n` and demands zero violations.
pub fn check_monotone(n: usize, runs: usize, seed: u64) -> Result<SuiteReport> {
    let mut checks = 1;
    let synthetic: Vec<GenerationTrace> = [(3, 5), (4, 5), (2, 6), (5, 6), (5, 4)]
        .iter()
        .enumerate()
        .map(|(t, &(ones, zeros))| GenerationTrace {
            generation: t as u64,
            evaluations: 0,
            max_ones: ones,
            max_zeros: zeros,
            population_size: 1,
            coverage: FrontCoverage::None,
        })
        .collect();
    if monotone_violations(&synthetic) != 2 {
        return Ok(SuiteReport {
            suite: Suite::Monotone,
            checks: 0,
            counterexample: Some("monitor missed an injected decrease".into()),
        });
    }
    let problem = ProblemInstance::otzt(n);
    for (c, config) in monotone_configs().into_iter().enumerate() {
        for r in 0..runs {
            let run_seed = derive_seed(seed, c as u64, r as u64);
            let mut rec = TraceRecorder::default();
            let result = run(
                &problem,
                &config,
                1_000_000,
                &mut ChaCha8Rng::seed_from_u64(run_seed),
                &mut rec,
            )?;
            checks += 1;
            if result.monotone_violations > 0 || monotone_violations(&rec.traces) > 0 {
                return Ok(SuiteReport {
                    suite: Suite::Monotone,
                    checks,
                    counterexample: Some(format!(
                        "{} mu={} {} at n = {n}, seed {run_seed}: {} violations",
                        config.kind, config.mu, config.mutation, result.monotone_violations
                    )),
                });
            }
        }
    }
    Ok(SuiteReport {
        suite: Suite::Monotone,
        checks,
        counterexample: None,
    })
}
