//! The algorithm engines and the data they report.
//!
//! Every engine follows the same contract: it owns its population, draws
//! all randomness from the caller's RNG in a fixed order, counts one fitness
//! evaluation per [`Individual`] it creates, emits one [`GenerationTrace`]
//! after initialisation and after every generation (or steady-state
//! iteration), and stops once both Pareto-optimal fitness vectors are in the
//! population or the evaluation budget cannot cover another step.

mod config;
mod gsemo;
mod nsga;
mod smsemoa;
mod trace;

use std::collections::HashSet;

use rand::Rng;

pub use config::{AlgorithmConfig, AlgorithmKind};
pub use gsemo::archive_insert;
pub use gsemo::run_gsemo;
pub use nsga::{run_nsga2, run_nsga3, select_survivors};
pub use smsemoa::run_smsemoa;
pub use trace::{
    FrontCoverage, GenerationTrace, MonotoneMonitor, NoopObserver, Observer, TraceRecorder,
    TraceWriter,
};

use crate::error::{Error, Result};
use crate::model::{Bitstring, Individual, Population};
use crate::problems::ProblemInstance;

/// Outcome of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    /// Assigned by the harness; zero for standalone runs.
    pub run_id: u64,
    /// Seed of the run's RNG stream when known; zero otherwise.
    pub seed: u64,
    pub success: bool,
    /// Fitness evaluations consumed in total.
    pub evaluations: u64,
    /// Evaluations at the end of the generation that completed the front.
    pub evaluations_to_cover: Option<u64>,
    /// Generations (NSGA-II/III) or iterations (SEMO, GSEMO, SMS-EMOA) run.
    pub generations: u64,
    pub monotone_violations: u64,
    pub final_max_ones: usize,
    pub final_max_zeros: usize,
    pub final_population_size: usize,
}

/// Runs the engine selected by `config.kind`.
pub fn run<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &AlgorithmConfig,
    budget: u64,
    rng: &mut R,
    observer: &mut dyn Observer,
) -> Result<RunResult> {
    match config.kind {
        AlgorithmKind::Semo | AlgorithmKind::Gsemo => {
            run_gsemo(problem, config, budget, rng, observer)
        }
        AlgorithmKind::Nsga2 => run_nsga2(problem, config, budget, rng, observer),
        AlgorithmKind::Nsga3 => run_nsga3(problem, config, budget, rng, observer),
        AlgorithmKind::SmsEmoa => run_smsemoa(problem, config, budget, rng, observer),
    }
}

/// `μ` uniform random genotypes, evaluated. With `excludes_front`, any
/// Pareto-optimal sample is redrawn.
pub fn initialize_population<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    mu: usize,
    excludes_front: bool,
    rng: &mut R,
) -> Result<Population> {
    if mu == 0 {
        return Err(Error::invalid("population size must be positive"));
    }
    if excludes_front && problem.n() < 2 {
        return Err(Error::invalid("every string is Pareto-optimal for n < 2"));
    }
    let members = (0..mu)
        .map(|_| {
            let mut x = Bitstring::random(problem.n(), rng);
            while excludes_front && problem.is_pareto_optimal(&x) {
                x = Bitstring::random(problem.n(), rng);
            }
            problem.evaluate_individual(x)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Population::with_capacity(members, mu))
}

/// Merges parents and offspring into `R_t`.
///
/// With `dedup`, offspring are first reduced to distinct genotypes and any
/// offspring whose genotype already occurs among the parents is dropped.
/// Parents are never touched, and the result lists parents first.
pub fn dedup_merge(
    parents: &[Individual],
    offspring: Vec<Individual>,
    dedup: bool,
) -> Vec<Individual> {
    let mut merged = Vec::with_capacity(parents.len() + offspring.len());
    merged.extend_from_slice(parents);
    if !dedup {
        merged.extend(offspring);
        return merged;
    }
    let mut seen: HashSet<Bitstring> = parents.iter().map(|p| p.genotype().clone()).collect();
    for child in offspring {
        if seen.insert(child.genotype().clone()) {
            merged.push(child);
        }
    }
    merged
}

/// Bookkeeping shared by the engines.
struct RunState<'a> {
    problem: &'a ProblemInstance,
    observer: &'a mut dyn Observer,
    monitor: MonotoneMonitor,
    evaluations: u64,
    generation: u64,
    covered_at: Option<u64>,
    last: Option<GenerationTrace>,
}

impl<'a> RunState<'a> {
    fn new(problem: &'a ProblemInstance, observer: &'a mut dyn Observer) -> Self {
        RunState {
            problem,
            observer,
            monitor: MonotoneMonitor::default(),
            evaluations: 0,
            generation: 0,
            covered_at: None,
            last: None,
        }
    }

    fn evaluate(&mut self, x: Bitstring) -> Result<Individual> {
        self.evaluations += 1;
        self.problem.evaluate_individual(x)
    }

    fn covered(&self) -> bool {
        self.covered_at.is_some()
    }

    fn record(&mut self, members: &[Individual]) {
        let trace = GenerationTrace::of(self.problem, self.generation, self.evaluations, members);
        if trace.coverage == FrontCoverage::Both && self.covered_at.is_none() {
            self.covered_at = Some(self.evaluations);
        }
        self.monitor.observe(&trace);
        self.observer.observe(&trace);
        self.last = Some(trace);
    }

    fn finish(self, budget: u64) -> RunResult {
        let last = self.last.expect("initial population is always recorded");
        let evaluations_to_cover = self.covered_at.filter(|&e| e <= budget);
        RunResult {
            run_id: 0,
            seed: 0,
            success: evaluations_to_cover.is_some(),
            evaluations: self.evaluations,
            evaluations_to_cover,
            generations: self.generation,
            monotone_violations: self.monitor.violations(),
            final_max_ones: last.max_ones,
            final_max_zeros: last.max_zeros,
            final_population_size: last.population_size,
        }
    }
}

fn check_budget(budget: u64) -> Result<()> {
    if budget == 0 {
        return Err(Error::invalid("evaluation budget must be positive"));
    }
    Ok(())
}
