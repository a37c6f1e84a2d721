//! Hitting times of NSGA-II with duplicate avoidance, fitted to c·n·ln n.

use emo_lab::algorithms::AlgorithmConfig;
use emo_lab::harness::{run_experiment, ExperimentPlan};

fn main() -> emo_lab::Result<()> {
    let config = AlgorithmConfig::nsga2(4).with_init_excludes_front(true);
    let plan = ExperimentPlan::new(vec![config], vec![16, 32, 64, 128], 30, 10_000_000, 1);
    let report = run_experiment(&plan)?;
    print!("{}", report.table());
    if let Some(fit) = report.scaling_fit(0) {
        println!(
            "c = {:.3}, max relative residual = {:.3}",
            fit.c, fit.max_relative_residual
        );
        for cell in &report.cells {
            println!(
                "n = {:>3}: observed {:>8.0}, model {:>8.0}",
                cell.n,
                cell.summary.mean.unwrap_or(0.0),
                fit.predict(cell.n as f64)
            );
        }
    }
    Ok(())
}
