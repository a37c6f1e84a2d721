//! Without duplicate avoidance, copies of the first optimum flood the
//! population and the second optimum is lost.

use emo_lab::algorithms::AlgorithmConfig;
use emo_lab::harness::{run_experiment, ExperimentPlan};
use emo_lab::nsga3::ReferencePointSet;

fn main() -> emo_lab::Result<()> {
    let mut algorithms = Vec::new();
    for dedup in [true, false] {
        algorithms.push(AlgorithmConfig::nsga2(4).with_dedup(dedup));
        algorithms.push(AlgorithmConfig::nsga3(4, ReferencePointSet::units(2)).with_dedup(dedup));
        algorithms.push(AlgorithmConfig::smsemoa(3).with_dedup(dedup));
    }
    let plan = ExperimentPlan::new(algorithms, vec![32], 20, 100_000, 5);
    print!("{}", run_experiment(&plan)?.table());
    Ok(())
}
