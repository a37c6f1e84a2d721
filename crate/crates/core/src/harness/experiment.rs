use std::io::Write;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::stats::{fit_scaling, summarize, ScalingFit, Summary};
use crate::algorithms::{run, AlgorithmConfig, NoopObserver, RunResult};
use crate::error::{Error, Result};
use crate::model::Bitstring;
use crate::problems::ProblemInstance;

pub const CSV_HEADER: [&str; 13] = [
    "run_id",
    "seed",
    "algo",
    "problem",
    "n",
    "mu",
    "mutation",
    "dedup",
    "budget",
    "success",
    "evaluations",
    "generations",
    "violations",
];

/// Environment variable overriding the worker count of every experiment.
pub const WORKERS_ENV: &str = "EMO_LAB_WORKERS";

/// Stream index reserved for drawing random masks.
const MASK_STREAM: u64 = u64::MAX;

/// Which member of the masked OneTrapZeroTrap class each cell optimises.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum MaskSpec {
    #[default]
    None,
    /// One mask for every cell; only valid when all cells share its length.
    Fixed(Bitstring),
    /// A uniform mask per problem size, drawn from the master seed.
    Random,
}

/// A grid of algorithms × problem sizes, each cell repeated `runs` times.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan {
    pub algorithms: Vec<AlgorithmConfig>,
    pub ns: Vec<usize>,
    pub mask: MaskSpec,
    pub runs: usize,
    pub budget: u64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl ExperimentPlan {
    pub fn new(
        algorithms: Vec<AlgorithmConfig>,
        ns: Vec<usize>,
        runs: usize,
        budget: u64,
        seed: u64,
    ) -> Self {
        ExperimentPlan {
            algorithms,
            ns,
            mask: MaskSpec::None,
            runs,
            budget,
            seed,
            output: None,
            workers: None,
        }
    }

    pub fn with_mask(mut self, mask: MaskSpec) -> Self {
        self.mask = mask;
        self
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output = Some(path.into());
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::invalid("runs per cell must be at least 1"));
        }
        if self.budget == 0 {
            return Err(Error::invalid("budget must be at least 1"));
        }
        if self.ns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "problem sizes must be strictly increasing: {:?}",
                self.ns
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::invalid("worker count must be positive"));
        }
        for &n in &self.ns {
            let problem = self.problem(n)?;
            for config in &self.algorithms {
                config.validate(&problem)?;
            }
        }
        Ok(())
    }

    /// Cells in output order: algorithms outermost, then ascending `n`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let per = self.ns.len();
        (0..self.algorithms.len() * per).map(move |cell| (cell, cell / per, self.ns[cell % per]))
    }

    /// The problem instance optimised by every cell of size `n`.
    pub fn problem(&self, n: usize) -> Result<ProblemInstance> {
        match &self.mask {
            MaskSpec::None => Ok(ProblemInstance::otzt(n)),
            MaskSpec::Fixed(mask) => ProblemInstance::otzt_masked(n, mask.clone()),
            MaskSpec::Random => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(derive_seed(self.seed, MASK_STREAM, n as u64));
                ProblemInstance::otzt_masked(n, Bitstring::random(n, &mut rng))
            }
        }
    }
}

/// Seed of run `run` in cell `cell`.
///
/// SplitMix64 finaliser applied to the master seed, then folded with the
/// cell id and the run index, each step re-mixed.
pub fn derive_seed(master: u64, cell: u64, run: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(master) ^ cell) ^ run)
}

/// Worker count: `EMO_LAB_WORKERS` if set, else the plan's, else one per core.
pub fn resolve_workers(plan_workers: Option<usize>) -> Result<usize> {
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        return match raw.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(w),
            _ => Err(Error::invalid(format!(
                "{WORKERS_ENV} must be a positive integer, got `{raw}`"
            ))),
        };
    }
    Ok(plan_workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |w| w.get())))
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub cell: usize,
    pub algorithm: usize,
    pub config: AlgorithmConfig,
    pub problem: String,
    pub n: usize,
    pub budget: u64,
    pub result: RunResult,
}

impl RunRecord {
    fn fields(&self) -> [String; 13] {
        let r = &self.result;
        [
            r.run_id.to_string(),
            r.seed.to_string(),
            self.config.kind.to_string(),
            self.problem.clone(),
            self.n.to_string(),
            self.config.mu.to_string(),
            self.config.mutation.to_string(),
            self.config.dedup.to_string(),
            self.budget.to_string(),
            r.success.to_string(),
            r.evaluations.to_string(),
            r.generations.to_string(),
            r.monotone_violations.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub cell: usize,
    pub algorithm: usize,
    pub label: String,
    pub n: usize,
    pub summary: Summary,
    /// Monotonicity violations summed over the cell's runs.
    pub violations: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    pub records: Vec<RunRecord>,
    pub cells: Vec<CellSummary>,
}

impl ExperimentReport {
    /// Cells of algorithm `algorithm`, in ascending `n`.
    pub fn cells_of(&self, algorithm: usize) -> impl Iterator<Item = &CellSummary> {
        self.cells.iter().filter(move |c| c.algorithm == algorithm)
    }

    /// `c · n ln n` fit for one algorithm; `None` with fewer than three
    /// sizes or when some size had no success.
    pub fn scaling_fit(&self, algorithm: usize) -> Option<ScalingFit> {
        let cells: Vec<&CellSummary> = self.cells_of(algorithm).collect();
        let means: Option<Vec<f64>> = cells.iter().map(|c| c.summary.mean).collect();
        let ns: Vec<usize> = cells.iter().map(|c| c.n).collect();
        fit_scaling(&ns, &means?).ok()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(CSV_HEADER)?;
        for record in &self.records {
            writer.write_record(record.fields())?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.write_csv(std::io::BufWriter::new(file))
            .map_err(|source| Error::Csv {
                path: path.to_path_buf(),
                source,
            })
    }

    /// Fixed-width text table, one line per cell.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<32} {:>6} {:>6} {:>9} {:>12} {:>12} {:>12} {:>6}\n",
            "algorithm", "n", "runs", "success", "mean", "median", "stddev", "viol"
        );
        let show = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.1}"));
        for c in &self.cells {
            out.push_str(&format!(
                "{:<32} {:>6} {:>6} {:>9.3} {:>12} {:>12} {:>12} {:>6}\n",
                c.label,
                c.n,
                c.summary.runs,
                c.summary.success_rate,
                show(c.summary.mean),
                show(c.summary.median),
                show(c.summary.stddev),
                c.violations
            ));
        }
        out
    }
}

/// Short description such as `nsga2 mu=4 bitwise dedup`.
pub fn config_label(config: &AlgorithmConfig) -> String {
    let mut label = config.kind.to_string();
    if config.kind.has_fixed_population() {
        label.push_str(&format!(" mu={}", config.mu));
    }
    label.push_str(&format!(" {}", config.mutation));
    if config.kind.has_fixed_population() {
        label.push_str(if config.dedup { " dedup" } else { " vanilla" });
    }
    label
}

/// Runs every cell of `plan` and writes the CSV if the plan names an output.
///
/// Runs are distributed over a worker pool. Each run draws from its own
/// RNG seeded by [`derive_seed`], and results are gathered in plan order, so
/// the report does not depend on the worker count.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    let problems: Vec<ProblemInstance> = plan
        .ns
        .iter()
        .map(|&n| plan.problem(n))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize, usize, usize)> = plan
        .cells()
        .flat_map(|(cell, algorithm, _)| {
            (0..plan.runs).map(move |r| (cell, algorithm, cell % plan.ns.len(), r))
        })
        .collect();

    let execute =
        |&(cell, algorithm, size, r): &(usize, usize, usize, usize)| -> Result<RunRecord> {
            let config = &plan.algorithms[algorithm];
            let problem = &problems[size];
            let seed = derive_seed(plan.seed, cell as u64, r as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut result = run(problem, config, plan.budget, &mut rng, &mut NoopObserver)?;
            result.run_id = (cell * plan.runs + r) as u64;
            result.seed = seed;
            log::debug!("cell {cell} run {r}: {result:?}");
            Ok(RunRecord {
                cell,
                algorithm,
                config: config.clone(),
                problem: problem.to_string(),
                n: problem.n(),
                budget: plan.budget,
                result,
            })
        };

    let workers = resolve_workers(plan.workers)?;
    let records: Vec<RunRecord> = if workers == 1 {
        jobs.iter().map(execute).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {workers} workers: {e}")))?;
        pool.install(|| jobs.par_iter().map(execute).collect::<Result<_>>())?
    };

    let cells = plan
        .cells()
        .map(|(cell, algorithm, n)| {
            let rows = &records[cell * plan.runs..(cell + 1) * plan.runs];
            let results: Vec<RunResult> = rows.iter().map(|r| r.result.clone()).collect();
            CellSummary {
                cell,
                algorithm,
                label: config_label(&plan.algorithms[algorithm]),
                n,
                summary: summarize(&results),
                violations: results.iter().map(|r| r.monotone_violations).sum(),
            }
        })
        .collect();

    let report = ExperimentReport { records, cells };
    if let Some(path) = &plan.output {
        report.write_csv_file(path)?;
    }
    Ok(report)
}
