//! Experiment plumbing: seeded sweeps, summaries, scaling fits, audits and
//! brute-force oracles for the fast selection primitives.

mod experiment;
mod oracle;
mod plan;
mod plot;
mod stats;
pub mod verify;

pub use experiment::{
    config_label, derive_seed, resolve_workers, run_experiment, CellSummary, ExperimentPlan,
    ExperimentReport, MaskSpec, RunRecord, CSV_HEADER, WORKERS_ENV,
};
pub use oracle::{
    oracle_hypervolume_lattice, oracle_non_dominated_sort, LATTICE_BOUND, ORACLE_SORT_LIMIT,
};
pub use plan::PlanSpec;
pub use plot::{scaling_svg, PlotSeries};
pub use stats::{fit_scaling, summarize, ScalingFit, Summary};

use crate::algorithms::{GenerationTrace, MonotoneMonitor, Observer};

/// Number of generations in which the maximal ones-count or the maximal
/// zeros-count decreased.
pub fn monotone_violations(traces: &[GenerationTrace]) -> u64 {
    let mut monitor = MonotoneMonitor::default();
    for t in traces {
        monitor.observe(t);
    }
    monitor.violations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::FrontCoverage;

    fn trace(ones: usize, zeros: usize) -> GenerationTrace {
        GenerationTrace {
            generation: 0,
            evaluations: 0,
            max_ones: ones,
            max_zeros: zeros,
            population_size: 4,
            coverage: FrontCoverage::None,
        }
    }

    #[test]
    fn monitor_examples() {
        assert_eq!(monotone_violations(&[trace(5, 5); 4]), 0);
        let rising: Vec<_> = [5, 6, 6, 7].iter().map(|&o| trace(o, 3)).collect();
        assert_eq!(monotone_violations(&rising), 0);
        assert_eq!(monotone_violations(&[trace(1, 8), trace(1, 7)]), 1);
        assert_eq!(monotone_violations(&[]), 0);
    }

    #[test]
    fn injected_decreases_are_counted_exactly() {
        let mut traces: Vec<_> = (0..50).map(|t| trace(10 + t / 5, 10 + t / 7)).collect();
        traces[10].max_ones = 0;
        traces[30].max_zeros = 0;
        traces[31].max_zeros = 0;
        // Drops at 10 and 30; the recoveries at 11 and 32 are increases.
        assert_eq!(monotone_violations(&traces), 2);
    }
}
