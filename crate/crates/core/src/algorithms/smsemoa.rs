use rand::Rng;

use super::{
    check_budget, initialize_population, AlgorithmConfig, AlgorithmKind, Observer, RunResult,
    RunState,
};
use crate::error::{Error, Result};
use crate::hypervolume::smsemoa_eject;
use crate::model::FitnessVector;
use crate::problems::ProblemInstance;
use crate::ranking::non_dominated_sort;
use crate::variation::uniform_parent_select;

/// Steady-state SMS-EMOA.
///
/// Each iteration creates one offspring. The member of the last
/// non-dominated layer with the least hypervolume contribution is ejected.
/// With dedup, an offspring whose genotype is already present is discarded
/// before evaluation; the iteration still counts.
pub fn run_smsemoa<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &AlgorithmConfig,
    budget: u64,
    rng: &mut R,
    observer: &mut dyn Observer,
) -> Result<RunResult> {
    if config.kind != AlgorithmKind::SmsEmoa {
        return Err(Error::invalid(format!(
            "run_smsemoa cannot run {}",
            config.kind
        )));
    }
    check_budget(budget)?;
    config.validate(problem)?;
    let h = config.hv_reference(problem).reference;

    let mut state = RunState::new(problem, observer);
    let mut population =
        initialize_population(problem, config.mu, config.init_excludes_front, rng)?.into_members();
    state.evaluations += config.mu as u64;
    state.record(&population);

    while !state.covered() && state.evaluations < budget {
        let parent = uniform_parent_select(&population, rng)?;
        let child = config.mutation.mutate(parent.genotype(), rng);
        state.generation += 1;
        if config.dedup && population.iter().any(|m| m.genotype() == &child) {
            state.record(&population);
            continue;
        }
        population.push(state.evaluate(child)?);

        let fitness: Vec<FitnessVector> = population.iter().map(|m| m.fitness().clone()).collect();
        let partition = non_dominated_sort(&fitness);
        let last = partition.last().expect("population is non-empty");
        let layer: Vec<FitnessVector> = last.iter().map(|&i| fitness[i].clone()).collect();
        let ejected = last[smsemoa_eject(&layer, h, rng)?];
        population.remove(ejected);
        state.record(&population);
    }
    Ok(state.finish(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{NoopObserver, TraceRecorder};
    use crate::hypervolume::HypervolumeConfig;
    use crate::variation::MutationOperator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn covers_small_instance_with_both_operators() {
        let p = ProblemInstance::otzt(16);
        for (seed, op) in [
            (0, MutationOperator::Local),
            (1, MutationOperator::StandardBitwise),
        ] {
            let cfg = AlgorithmConfig::smsemoa(3)
                .with_mutation(op)
                .with_init_excludes_front(true);
            let mut rec = TraceRecorder::default();
            let r = run_smsemoa(
                &p,
                &cfg,
                1_000_000,
                &mut ChaCha8Rng::seed_from_u64(seed),
                &mut rec,
            )
            .unwrap();
            assert!(r.success, "{op}");
            assert_eq!(r.monotone_violations, 0);
            assert!(rec.traces.iter().all(|t| t.population_size == 3));
        }
    }

    #[test]
    fn dedup_rejections_cost_nothing() {
        // Local mutation at n = 4 often recreates a member.
        let p = ProblemInstance::otzt(4);
        let cfg = AlgorithmConfig::smsemoa(3).with_mutation(MutationOperator::Local);
        let mut rec = TraceRecorder::default();
        let r = run_smsemoa(
            &p,
            &cfg,
            10_000,
            &mut ChaCha8Rng::seed_from_u64(2),
            &mut rec,
        )
        .unwrap();
        let evaluated = rec
            .traces
            .windows(2)
            .filter(|w| w[1].evaluations == w[0].evaluations + 1)
            .count();
        let skipped = rec
            .traces
            .windows(2)
            .filter(|w| w[1].evaluations == w[0].evaluations)
            .count();
        assert_eq!(evaluated + skipped, r.generations as usize);
        assert_eq!(r.evaluations, 3 + evaluated as u64);
    }

    #[test]
    fn vanilla_evaluates_every_offspring() {
        let p = ProblemInstance::otzt(12);
        let cfg = AlgorithmConfig::smsemoa(3).with_dedup(false);
        let r = run_smsemoa(
            &p,
            &cfg,
            500,
            &mut ChaCha8Rng::seed_from_u64(3),
            &mut NoopObserver,
        )
        .unwrap();
        assert_eq!(r.evaluations, 3 + r.generations);
    }

    #[test]
    fn deterministic_given_seed() {
        let p = ProblemInstance::otzt(20);
        let cfg = AlgorithmConfig::smsemoa(3).with_hv_ref(HypervolumeConfig::new(-200, -200));
        let go = |seed| {
            let mut rec = TraceRecorder::default();
            run_smsemoa(
                &p,
                &cfg,
                20_000,
                &mut ChaCha8Rng::seed_from_u64(seed),
                &mut rec,
            )
            .unwrap();
            rec.traces
        };
        assert_eq!(go(5), go(5));
    }

    #[test]
    fn rejects_wrong_kind() {
        let p = ProblemInstance::otzt(8);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(run_smsemoa(
            &p,
            &AlgorithmConfig::nsga2(4),
            10,
            &mut rng,
            &mut NoopObserver
        )
        .is_err());
    }
}
