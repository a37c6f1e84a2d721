use rand::Rng;

use super::{
    check_budget, dedup_merge, initialize_population, AlgorithmConfig, AlgorithmKind, Observer,
    RunResult, RunState,
};
use crate::error::{Error, Result};
use crate::model::{FitnessVector, Individual};
use crate::nsga3::nsga3_select;
use crate::problems::ProblemInstance;
use crate::ranking::{crowding_distance, non_dominated_sort, nsga2_truncate};
use crate::variation::uniform_parent_select;

/// NSGA-II: the critical layer is truncated by crowding distance.
pub fn run_nsga2<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &AlgorithmConfig,
    budget: u64,
    rng: &mut R,
    observer: &mut dyn Observer,
) -> Result<RunResult> {
    if config.kind != AlgorithmKind::Nsga2 {
        return Err(Error::invalid(format!(
            "run_nsga2 cannot run {}",
            config.kind
        )));
    }
    run_mu_plus_mu(problem, config, budget, rng, observer)
}

/// NSGA-III: the critical layer is filled by reference-point niching.
pub fn run_nsga3<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &AlgorithmConfig,
    budget: u64,
    rng: &mut R,
    observer: &mut dyn Observer,
) -> Result<RunResult> {
    if config.kind != AlgorithmKind::Nsga3 {
        return Err(Error::invalid(format!(
            "run_nsga3 cannot run {}",
            config.kind
        )));
    }
    run_mu_plus_mu(problem, config, budget, rng, observer)
}

fn run_mu_plus_mu<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &AlgorithmConfig,
    budget: u64,
    rng: &mut R,
    observer: &mut dyn Observer,
) -> Result<RunResult> {
    check_budget(budget)?;
    config.validate(problem)?;
    let mu = config.mu;

    let mut state = RunState::new(problem, observer);
    let mut population =
        initialize_population(problem, mu, config.init_excludes_front, rng)?.into_members();
    state.evaluations += mu as u64;
    state.record(&population);

    while !state.covered() && state.evaluations + mu as u64 <= budget {
        let mut offspring = Vec::with_capacity(mu);
        for _ in 0..mu {
            let parent = uniform_parent_select(&population, rng)?;
            let child = config.mutation.mutate(parent.genotype(), rng);
            offspring.push(state.evaluate(child)?);
        }
        let merged = dedup_merge(&population, offspring, config.dedup);
        let fitness: Vec<FitnessVector> = merged.iter().map(|m| m.fitness().clone()).collect();
        let survivors = select_survivors(config, &fitness, rng)?;
        population = take(merged, &survivors);
        state.generation += 1;
        state.record(&population);
    }
    Ok(state.finish(budget))
}

/// Survival selection of one NSGA-II/III generation over `R_t`.
///
/// Returns `μ` indices into `fitness`: first `Y_t` (the layers before the
/// critical one), then the members chosen from the critical layer.
pub fn select_survivors<R: Rng + ?Sized>(
    config: &AlgorithmConfig,
    fitness: &[FitnessVector],
    rng: &mut R,
) -> Result<Vec<usize>> {
    let partition = non_dominated_sort(fitness);
    let critical = partition.critical_layer(config.mu)?;
    let layer = &partition.layers()[critical.index];
    let layer_fitness: Vec<FitnessVector> = layer.iter().map(|&i| fitness[i].clone()).collect();

    let chosen = match config.kind {
        AlgorithmKind::Nsga2 => {
            nsga2_truncate(&crowding_distance(&layer_fitness), critical.remaining, rng)?
        }
        AlgorithmKind::Nsga3 => {
            let kept: Vec<FitnessVector> =
                critical.kept.iter().map(|&i| fitness[i].clone()).collect();
            nsga3_select(
                &kept,
                &layer_fitness,
                &config.refpoints,
                config.mu,
                config.eps_nadir,
                rng,
            )?
        }
        other => {
            return Err(Error::invalid(format!(
                "{other} has no layered survival selection"
            )))
        }
    };
    let mut survivors = critical.kept;
    survivors.extend(chosen.into_iter().map(|i| layer[i]));
    Ok(survivors)
}

fn take(merged: Vec<Individual>, indices: &[usize]) -> Vec<Individual> {
    let mut slots: Vec<Option<Individual>> = merged.into_iter().map(Some).collect();
    indices
        .iter()
        .map(|&i| slots[i].take().expect("survivor indices are distinct"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{NoopObserver, TraceRecorder};
    use crate::nsga3::{das_dennis, ReferencePointSet};
    use crate::variation::MutationOperator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn otzt_layer(n: i64, ks: &[i64]) -> Vec<FitnessVector> {
        ks.iter().map(|&k| FitnessVector::pair(k, n - k)).collect()
    }

    #[test]
    fn survivors_keep_layer_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let n = 20;
        // Front-free R_t: one layer, extremes 15 ones and 16 zeros (k = 4).
        let fitness = otzt_layer(n, &[7, 15, 9, 4, 11, 12, 7, 8]);
        for config in [
            AlgorithmConfig::nsga2(4),
            AlgorithmConfig::nsga3(4, ReferencePointSet::units(2)),
        ] {
            for _ in 0..300 {
                let s = select_survivors(&config, &fitness, &mut rng).unwrap();
                assert_eq!(s.len(), 4);
                assert!(s.contains(&1) && s.contains(&3), "{:?} {s:?}", config.kind);
            }
        }
    }

    #[test]
    fn survivors_with_one_pareto_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 20;
        let mut fitness = otzt_layer(n, &[7, 15, 9, 4, 11, 12, 8]);
        fitness.push(FitnessVector::pair(n + 1, n));
        for config in [
            AlgorithmConfig::nsga2(4),
            AlgorithmConfig::nsga3(4, ReferencePointSet::units(2)),
        ] {
            for _ in 0..300 {
                let s = select_survivors(&config, &fitness, &mut rng).unwrap();
                assert_eq!(s[0], 7, "the Pareto point is Y");
                assert!(s.contains(&1) && s.contains(&3));
            }
        }
    }

    #[test]
    fn nsga2_covers_small_instance() {
        let p = ProblemInstance::otzt(16);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = AlgorithmConfig::nsga2(4).with_init_excludes_front(true);
        let mut rec = TraceRecorder::default();
        let r = run_nsga2(&p, &cfg, 1_000_000, &mut rng, &mut rec).unwrap();
        assert!(r.success);
        assert_eq!(r.monotone_violations, 0);
        assert_eq!(r.evaluations, 4 * (r.generations + 1));
        assert!(rec.traces.iter().all(|t| t.population_size == 4));
        assert_eq!(r.evaluations_to_cover, Some(r.evaluations));
    }

    #[test]
    fn nsga3_covers_with_das_dennis_points() {
        let p = ProblemInstance::otzt(16);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = AlgorithmConfig::nsga3(10, das_dennis(2, 4).unwrap())
            .with_init_excludes_front(true)
            .with_mutation(MutationOperator::Local);
        let r = run_nsga3(&p, &cfg, 1_000_000, &mut rng, &mut NoopObserver).unwrap();
        assert!(r.success);
        assert_eq!(r.monotone_violations, 0);
    }

    #[test]
    fn budget_is_respected() {
        let p = ProblemInstance::otzt(64);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = run_nsga2(
            &p,
            &AlgorithmConfig::nsga2(4),
            42,
            &mut rng,
            &mut NoopObserver,
        )
        .unwrap();
        assert!(!r.success);
        assert_eq!(r.evaluations, 40);
        // A budget below the initial population still evaluates it, but cannot succeed.
        let r = run_nsga2(
            &p,
            &AlgorithmConfig::nsga2(4),
            1,
            &mut rng,
            &mut NoopObserver,
        )
        .unwrap();
        assert!(!r.success);
        assert_eq!(r.generations, 0);
    }

    #[test]
    fn deterministic_given_seed() {
        let p = ProblemInstance::otzt(24);
        let cfg = AlgorithmConfig::nsga3(4, ReferencePointSet::units(2));
        let go = |seed| {
            let mut rec = TraceRecorder::default();
            let r = run_nsga3(
                &p,
                &cfg,
                100_000,
                &mut ChaCha8Rng::seed_from_u64(seed),
                &mut rec,
            )
            .unwrap();
            (r, rec.traces)
        };
        assert_eq!(go(11), go(11));
        assert_ne!(go(11).1, go(12).1);
    }

    #[test]
    fn kind_checked() {
        let p = ProblemInstance::otzt(8);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(run_nsga2(
            &p,
            &AlgorithmConfig::smsemoa(3),
            10,
            &mut rng,
            &mut NoopObserver
        )
        .is_err());
        assert!(run_nsga3(
            &p,
            &AlgorithmConfig::nsga2(4),
            10,
            &mut rng,
            &mut NoopObserver
        )
        .is_err());
        assert!(
            select_survivors(&AlgorithmConfig::gsemo(), &otzt_layer(8, &[1, 2]), &mut rng).is_err()
        );
    }
}
