//! Per-generation trace of one NSGA-III run, with the monotonicity audit.

use emo_lab::algorithms::{run, AlgorithmConfig, TraceRecorder};
use emo_lab::harness::monotone_violations;
use emo_lab::nsga3::ReferencePointSet;
use emo_lab::problems::ProblemInstance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> emo_lab::Result<()> {
    let problem = ProblemInstance::otzt(24);
    let config =
        AlgorithmConfig::nsga3(4, ReferencePointSet::units(2)).with_init_excludes_front(true);
    let mut recorder = TraceRecorder::default();
    let result = run(
        &problem,
        &config,
        1_000_000,
        &mut ChaCha8Rng::seed_from_u64(3),
        &mut recorder,
    )?;

    println!("t,evals,max_ones,max_zeros,pop_size,coverage");
    for t in &recorder.traces {
        println!("{t}");
    }
    println!(
        "success={} evaluations={} violations={}",
        result.success,
        result.evaluations,
        monotone_violations(&recorder.traces)
    );
    Ok(())
}
