use rand::Rng;

use super::{
    check_budget, initialize_population, AlgorithmConfig, AlgorithmKind, Observer, RunResult,
    RunState,
};
use crate::error::{Error, Result};
use crate::model::Individual;
use crate::problems::ProblemInstance;
use crate::variation::uniform_parent_select;

/// SEMO (local mutation) or GSEMO (bitwise mutation).
///
/// Starts from one uniform string. Each iteration mutates a uniformly chosen
/// member; the offspring enters unless some member dominates it, and then
/// evicts every member it weakly dominates.
pub fn run_gsemo<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &AlgorithmConfig,
    budget: u64,
    rng: &mut R,
    observer: &mut dyn Observer,
) -> Result<RunResult> {
    if !matches!(config.kind, AlgorithmKind::Semo | AlgorithmKind::Gsemo) {
        return Err(Error::invalid(format!(
            "run_gsemo cannot run {}",
            config.kind
        )));
    }
    check_budget(budget)?;
    config.validate(problem)?;

    let mut state = RunState::new(problem, observer);
    let mut population =
        initialize_population(problem, 1, config.init_excludes_front, rng)?.into_members();
    state.evaluations += 1;
    state.record(&population);

    while !state.covered() && state.evaluations < budget {
        let parent = uniform_parent_select(&population, rng)?;
        let child = config.mutation.mutate(parent.genotype(), rng);
        let child = state.evaluate(child)?;
        archive_insert(&mut population, child);
        state.generation += 1;
        state.record(&population);
    }
    Ok(state.finish(budget))
}

/// One archive update. Returns whether `y` was accepted.
pub fn archive_insert(population: &mut Vec<Individual>, y: Individual) -> bool {
    if population
        .iter()
        .any(|x| x.fitness().dominates(y.fitness()))
    {
        return false;
    }
    population.retain(|x| !y.fitness().weakly_dominates(x.fitness()));
    population.push(y);
    true
}
