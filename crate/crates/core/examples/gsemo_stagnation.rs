//! SEMO and GSEMO lose their population once an optimum appears.
//!
//! The first Pareto-optimal string dominates every other string, so the
//! archive collapses to it and the second optimum can only be reached by
//! flipping all bits at once.

use emo_lab::algorithms::{run, AlgorithmConfig, FrontCoverage, GenerationTrace};
use emo_lab::problems::ProblemInstance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> emo_lab::Result<()> {
    let problem = ProblemInstance::otzt(16);
    for config in [AlgorithmConfig::semo(), AlgorithmConfig::gsemo()] {
        let mut first_hit = None;
        let mut peak = 0;
        let mut observer = |t: &GenerationTrace| {
            peak = peak.max(t.population_size);
            if first_hit.is_none() && t.coverage != FrontCoverage::None {
                first_hit = Some((t.generation, t.population_size));
            }
        };
        let result = run(
            &problem,
            &config,
            200_000,
            &mut ChaCha8Rng::seed_from_u64(1),
            &mut observer,
        )?;
        println!(
            "{}: success={} after {} evaluations, peak population {peak}, first optimum at {:?}, final population {}",
            config.kind, result.success, result.evaluations, first_hit, result.final_population_size
        );
    }
    Ok(())
}
