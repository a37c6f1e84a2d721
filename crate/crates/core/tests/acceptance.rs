//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.
//!
//! Runs the full experiment budgets, so expect a few minutes per core.

use std::process::ExitCode;

use emo_lab::algorithms::{run, AlgorithmConfig, FrontCoverage, GenerationTrace};
use emo_lab::harness::verify::{
    check_extreme_contributions, check_front_structure, check_hypervolume, check_sorting,
};
use emo_lab::harness::{fit_scaling, run_experiment, ExperimentPlan, ExperimentReport, MaskSpec};
use emo_lab::hypervolume::hypervolume_2d;
use emo_lab::model::Bitstring;
use emo_lab::nsga3::{das_dennis, ReferencePointSet};
use emo_lab::problems::ProblemInstance;
use emo_lab::ranking::non_dominated_sort;
use emo_lab::variation::MutationOperator;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NS: [usize; 3] = [32, 64, 128];
const RUNS: usize = 100;
const BUDGET: u64 = 10_000_000;
const RATIO_BAND: (f64, f64) = (2.8, 9.0);
const MAX_RESIDUAL: f64 = 0.35;
const VANILLA_MAX_SUCCESS: f64 = 0.05;
const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn scaling_plan(config: AlgorithmConfig, seed: u64) -> ExperimentPlan {
    ExperimentPlan::new(
        vec![config.with_init_excludes_front(true)],
        NS.to_vec(),
        RUNS,
        BUDGET,
        seed,
    )
}

/// Success everywhere and the growth ratio in band; optionally the fit residual too.
fn scaling_outcome(report: &ExperimentReport, check_fit: bool) -> Outcome {
    let cells: Vec<_> = report.cells_of(0).collect();
    let rates: Vec<f64> = cells.iter().map(|c| c.summary.success_rate).collect();
    let means: Vec<f64> = cells
        .iter()
        .map(|c| c.summary.mean.unwrap_or(f64::NAN))
        .collect();
    let all_success = rates.iter().all(|&r| r == 1.0);
    let ratio = means[2] / means[0];
    let in_band = ratio >= RATIO_BAND.0 && ratio <= RATIO_BAND.1;
    let fit = fit_scaling(&NS, &means).ok();
    let fit_ok = !check_fit || fit.is_some_and(|f| f.max_relative_residual <= MAX_RESIDUAL);
    let fit_text = fit.map_or("no fit".to_string(), |f| {
        format!("c {:.3}, residual {:.3}", f.c, f.max_relative_residual)
    });
    Outcome {
        pass: all_success && in_band && fit_ok,
        detail: format!(
            "{}: success {rates:?}, means [{:.0}, {:.0}, {:.0}], ratio {ratio:.2}, {fit_text}",
            cells[0].label, means[0], means[1], means[2]
        ),
    }
}

fn merge(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        pass: parts.iter().all(|o| o.pass),
        detail: parts
            .into_iter()
            .map(|o| o.detail)
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// Runs (G)SEMO and checks that the front is never covered and that the
/// population stays at size 1 once a Pareto-optimal string is in it.
fn semo_collapse(config: AlgorithmConfig, seed: u64) -> Outcome {
    let problem = ProblemInstance::otzt(16);
    let mut successes = 0;
    let mut collapse_breaks = 0;
    let mut reached = 0;
    for r in 0..RUNS {
        let mut seen_front = false;
        let mut broken = false;
        let mut observer = |t: &GenerationTrace| {
            if t.coverage != FrontCoverage::None {
                seen_front = true;
            }
            if seen_front && t.population_size != 1 {
                broken = true;
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed + r as u64);
        let result =
            run(&problem, &config, 1_000_000, &mut rng, &mut observer).expect("valid config");
        successes += result.success as usize;
        collapse_breaks += broken as usize;
        reached += seen_front as usize;
    }
    Outcome {
        pass: successes == 0 && collapse_breaks == 0,
        detail: format!(
            "{}: {successes}/{RUNS} covered, {reached} reached one optimum, {collapse_breaks} grew afterwards",
            config.kind
        ),
    }
}

fn vanilla(config: AlgorithmConfig, seed: u64) -> Outcome {
    let plan = ExperimentPlan::new(
        vec![config.with_dedup(false)],
        vec![64],
        50,
        1_000_000,
        seed,
    );
    let report = run_experiment(&plan).expect("valid plan");
    let cell = &report.cells[0];
    Outcome {
        pass: cell.summary.success_rate <= VANILLA_MAX_SUCCESS,
        detail: format!("{}: success {:.2}", cell.label, cell.summary.success_rate),
    }
}

fn main() -> ExitCode {
    let mut lines: Vec<(usize, Outcome)> = Vec::new();
    let mut report_line = |k: usize, o: Outcome| {
        println!(
            "criterion {k:>2}: {} | {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        lines.push((k, o));
    };

    // Scaling of the deduplicating algorithms.
    let nsga2 = run_experiment(&scaling_plan(AlgorithmConfig::nsga2(4), SEED)).expect("valid plan");
    let nsga3 = run_experiment(&scaling_plan(
        AlgorithmConfig::nsga3(4, ReferencePointSet::units(2)),
        SEED + 1,
    ))
    .expect("valid plan");
    let nsga3_dd = run_experiment(&scaling_plan(
        AlgorithmConfig::nsga3(10, das_dennis(2, 4).expect("valid")),
        SEED + 2,
    ))
    .expect("valid plan");
    let sms_local = run_experiment(&scaling_plan(
        AlgorithmConfig::smsemoa(3).with_mutation(MutationOperator::Local),
        SEED + 3,
    ))
    .expect("valid plan");
    let sms_bitwise =
        run_experiment(&scaling_plan(AlgorithmConfig::smsemoa(3), SEED + 4)).expect("valid plan");

    report_line(1, scaling_outcome(&nsga2, true));
    let dd_cells: Vec<f64> = nsga3_dd
        .cells
        .iter()
        .map(|c| c.summary.success_rate)
        .collect();
    report_line(
        2,
        merge(vec![
            scaling_outcome(&nsga3, true),
            Outcome {
                pass: dd_cells.iter().all(|&r| r == 1.0),
                detail: format!("{}: success {dd_cells:?}", nsga3_dd.cells[0].label),
            },
        ]),
    );
    report_line(
        3,
        merge(vec![
            scaling_outcome(&sms_local, false),
            scaling_outcome(&sms_bitwise, false),
        ]),
    );

    report_line(
        4,
        merge(vec![
            semo_collapse(AlgorithmConfig::gsemo(), SEED + 10_000),
            semo_collapse(AlgorithmConfig::semo(), SEED + 20_000),
        ]),
    );

    report_line(
        5,
        merge(vec![
            vanilla(AlgorithmConfig::nsga2(4), SEED + 5),
            vanilla(
                AlgorithmConfig::nsga3(4, ReferencePointSet::units(2)),
                SEED + 6,
            ),
            vanilla(AlgorithmConfig::smsemoa(3), SEED + 7),
        ]),
    );

    let monotone_reports = [&nsga2, &nsga3, &nsga3_dd, &sms_local, &sms_bitwise];
    let monitored_runs: usize = monotone_reports.iter().map(|r| r.records.len()).sum();
    let violations: u64 = monotone_reports
        .iter()
        .flat_map(|r| &r.records)
        .map(|r| r.result.monotone_violations)
        .sum();
    report_line(
        6,
        Outcome {
            pass: violations == 0 && monitored_runs >= 900,
            detail: format!("{violations} violations over {monitored_runs} runs"),
        },
    );

    let structure: Vec<_> = (1..=12).map(check_front_structure).collect();
    let checks: u64 = structure.iter().map(|r| r.checks).sum();
    let failed = structure.iter().find(|r| !r.passed());
    report_line(
        7,
        Outcome {
            pass: failed.is_none(),
            detail: failed.map_or(format!("n = 1..=12 exhaustive, {checks} checks"), |r| {
                r.to_string()
            }),
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let extremes: Vec<_> = [8, 16, 32]
        .iter()
        .map(|&n| check_extreme_contributions(n, 1000, &mut rng))
        .collect();
    let failed = extremes.iter().find(|r| !r.passed());
    report_line(
        8,
        Outcome {
            pass: failed.is_none(),
            detail: failed.map_or("n = 8, 16, 32 with 1000 layers each".to_string(), |r| {
                r.to_string()
            }),
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let sorting = check_sorting(non_dominated_sort, 10_000, 10, &mut rng);
    let hv = check_hypervolume(hypervolume_2d, 10_000, &mut rng);
    report_line(
        9,
        Outcome {
            pass: sorting.passed() && hv.passed(),
            detail: format!("{sorting}; {hv}"),
        },
    );

    let mut mask_rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let mask = Bitstring::random(64, &mut mask_rng);
    let masked_plan = ExperimentPlan::new(
        vec![AlgorithmConfig::nsga2(4).with_init_excludes_front(true)],
        vec![64],
        RUNS,
        BUDGET,
        SEED + 12,
    )
    .with_mask(MaskSpec::Fixed(mask.clone()));
    let masked = run_experiment(&masked_plan).expect("valid plan");
    let unmasked_mean = nsga2.cells[1].summary.mean.unwrap_or(f64::NAN);
    let masked_cell = &masked.cells[0];
    let masked_mean = masked_cell.summary.mean.unwrap_or(f64::NAN);
    let factor = masked_mean / unmasked_mean;
    report_line(
        10,
        Outcome {
            pass: masked_cell.summary.success_rate == 1.0 && (0.5..=2.0).contains(&factor),
            detail: format!(
                "mask {}: success {:.2}, mean {masked_mean:.0} vs unmasked {unmasked_mean:.0} (x{factor:.2})",
                mask.to_hex(),
                masked_cell.summary.success_rate
            ),
        },
    );

    let failures: Vec<usize> = lines
        .iter()
        .filter(|(_, o)| !o.pass)
        .map(|(k, _)| *k)
        .collect();
    if failures.is_empty() {
        println!("all {} criteria pass", lines.len());
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failures:?}");
        ExitCode::FAILURE
    }
}
