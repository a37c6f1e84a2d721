//! The `emo-lab` command line.
//!
//! Exit codes: 0 on success or a completed run, 1 on runtime or suite
//! failure, 2 on usage errors (bad flags or invalid parameter combinations).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{run, AlgorithmKind, Observer, TraceWriter};
use crate::error::{Error, Result};
use crate::harness::verify::{run_suite, Suite, VerifyOptions};
use crate::harness::{derive_seed, run_experiment, scaling_svg, PlanSpec, PlotSeries};
use crate::model::Bitstring;
use crate::problems::ProblemInstance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "emo-lab",
    version,
    about = "Evolutionary multi-objective algorithms on OneTrapZeroTrap"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute one run and print its result.
    Run(RunArgs),
    /// Execute a grid of runs and write a CSV.
    Sweep(SweepArgs),
    /// Run the oracle and property suites.
    Verify(VerifyArgs),
    /// Print the Pareto front and the unitation classes of an instance.
    Front(FrontArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

impl From<Switch> for bool {
    fn from(s: Switch) -> bool {
        s == Switch::On
    }
}

/// Algorithm parameters shared by `run` and `sweep`.
#[derive(Debug, Args)]
pub struct AlgorithmArgs {
    /// Population size (ignored by SEMO and GSEMO) [default: 4, SMS-EMOA 3]
    #[arg(long)]
    pub mu: Option<usize>,
    /// `bitwise` or `local` [default: local for SEMO, bitwise otherwise]
    #[arg(long)]
    pub mutation: Option<String>,
    /// Genotype deduplication [default: on]
    #[arg(long, value_enum)]
    pub dedup: Option<Switch>,
    /// NSGA-III reference points: `units` or `das-dennis:p=P` [default: units]
    #[arg(long)]
    pub refpoints: Option<String>,
    /// NSGA-III nadir floor [default: 1e-6]
    #[arg(long)]
    pub eps_nadir: Option<f64>,
    /// SMS-EMOA reference point as `h1,h2` [default: -ceil(n/2)^2 per axis]
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub hv_ref: Option<[i64; 2]>,
    /// XOR mask: a hex string of ceil(n/4) digits, or `random`
    #[arg(long)]
    pub mask: Option<String>,
    /// Redraw Pareto-optimal strings during initialisation
    #[arg(long)]
    pub init_excludes_front: bool,
}

impl AlgorithmArgs {
    fn spec(&self) -> PlanSpec {
        PlanSpec {
            mu: self.mu,
            mutation: self.mutation.clone(),
            dedup: self.dedup.map(bool::from),
            refpoints: self.refpoints.clone(),
            eps_nadir: self.eps_nadir,
            hv_ref: self.hv_ref,
            init_excludes_front: self.init_excludes_front.then_some(true),
            mask: self.mask.clone(),
            ..PlanSpec::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// semo, gsemo, nsga2, nsga3 or smsemoa
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub n: usize,
    /// Evaluation budget; accepts `10000000`, `1e7` or `10^7`
    #[arg(long, default_value = "10^7", value_parser = parse_count)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write one trace line per generation to this file (`-` for stdout)
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub algorithm: AlgorithmArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Plan file; flags given here override its keys
    #[arg(long)]
    pub plan: Option<PathBuf>,
    /// Comma-separated algorithms
    #[arg(long, value_delimiter = ',')]
    pub algo: Option<Vec<String>>,
    /// Comma-separated problem sizes, strictly increasing
    #[arg(long, value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long, value_parser = parse_count)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination; printed to stdout when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// SVG scaling plot destination
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Worker threads; EMO_LAB_WORKERS overrides
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub algorithm: AlgorithmArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite to run (repeatable) [default: all]
    #[arg(long)]
    pub suite: Vec<String>,
    /// Restrict size-dependent suites to this n
    #[arg(long)]
    pub n: Option<usize>,
    /// Random instances for the oracle suites
    #[arg(long, default_value_t = 10_000)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FrontArgs {
    #[arg(long)]
    pub n: usize,
}

/// Parses `12345`, `1_000`, `1e7` or `10^7`.
pub fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim().replace('_', "");
    let bad = || format!("`{s}` is not a positive count");
    let v = if let Some((b, e)) = t.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        b.checked_pow(e).ok_or_else(bad)?
    } else if let Some((m, e)) = t.split_once(['e', 'E']) {
        let m: u64 = m.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        10u64
            .checked_pow(e)
            .and_then(|p| p.checked_mul(m))
            .ok_or_else(bad)?
    } else {
        t.parse().map_err(|_| bad())?
    };
    Ok(v)
}

fn parse_pair(s: &str) -> std::result::Result<[i64; 2], String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `h1,h2`, got `{s}`"))?;
    let p = |v: &str| {
        v.trim()
            .parse::<i64>()
            .map_err(|_| format!("`{v}` is not an integer"))
    };
    Ok([p(a)?, p(b)?])
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Csv { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Front(a) => cmd_front(&a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point of the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli(args, &mut stdout.lock(), &mut stderr.lock())
}

fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn problem_for(n: usize, mask: Option<&str>, seed: u64) -> Result<ProblemInstance> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    match mask {
        None | Some("none") => Ok(ProblemInstance::otzt(n)),
        Some("random") => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, u64::MAX, n as u64));
            ProblemInstance::otzt_masked(n, Bitstring::random(n, &mut rng))
        }
        Some(hex) => ProblemInstance::otzt_masked(n, Bitstring::from_hex(hex, n)?),
    }
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let kind: AlgorithmKind = args.algo.parse()?;
    let spec = args.algorithm.spec();
    let config = spec.config_for(kind)?;
    let problem = problem_for(args.n, spec.mask.as_deref(), args.seed)?;
    config.validate(&problem)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    const HEADER: &str = "t,evals,max_ones,max_zeros,pop_size,coverage";
    let result = match &args.trace {
        None => run(
            &problem,
            &config,
            args.budget,
            &mut rng,
            &mut crate::algorithms::NoopObserver,
        )?,
        Some(path) if path.as_os_str() == "-" => {
            writeln!(out, "{HEADER}").map_err(io_err(path))?;
            let mut writer = TraceWriter::new(&mut *out);
            let result = run(
                &problem,
                &config,
                args.budget,
                &mut rng,
                &mut writer as &mut dyn Observer,
            )?;
            writer.finish().map_err(io_err(path))?;
            result
        }
        Some(path) => {
            let mut file = BufWriter::new(File::create(path).map_err(io_err(path))?);
            writeln!(file, "{HEADER}").map_err(io_err(path))?;
            let mut writer = TraceWriter::new(file);
            let result = run(&problem, &config, args.budget, &mut rng, &mut writer)?;
            writer.finish().map_err(io_err(path))?;
            result
        }
    };
    writeln!(
        out,
        "algo={} problem={} mu={} mutation={} dedup={} budget={} seed={} success={} evaluations={} generations={} violations={} max_ones={} max_zeros={} pop_size={}",
        config.kind,
        problem,
        config.mu,
        config.mutation,
        if config.dedup { "on" } else { "off" },
        args.budget,
        args.seed,
        result.success,
        result.evaluations,
        result.generations,
        result.monotone_violations,
        result.final_max_ones,
        result.final_max_zeros,
        result.final_population_size
    )
    .map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let base = match &args.plan {
        Some(path) => PlanSpec::from_file(path)?,
        None => PlanSpec::default(),
    };
    let flags = PlanSpec {
        algos: args.algo.clone(),
        ns: args.ns.clone(),
        runs: args.runs,
        budget: args.budget,
        seed: args.seed,
        output: args.output.clone(),
        plot: args.plot.clone(),
        workers: args.workers,
        ..args.algorithm.spec()
    };
    let spec = base.overlay(flags);
    let plot = spec.plot.clone();
    let plan = spec.into_plan()?;
    let report = run_experiment(&plan)?;

    let stdout_path = std::path::Path::new("<stdout>");
    // Keep stdout clean for the CSV when no output file is given.
    let table_out: &mut dyn Write = if plan.output.is_some() { out } else { err };
    write!(table_out, "{}", report.table()).map_err(io_err(stdout_path))?;
    let mut series = Vec::new();
    for (a, config) in plan.algorithms.iter().enumerate() {
        let fit = report.scaling_fit(a);
        if let Some(fit) = fit {
            writeln!(
                table_out,
                "{}: mean ≈ {:.4} · n ln n, max relative residual {:.3}",
                crate::harness::config_label(config),
                fit.c,
                fit.max_relative_residual
            )
            .map_err(io_err(stdout_path))?;
        }
        series.push(PlotSeries {
            label: crate::harness::config_label(config),
            points: report
                .cells_of(a)
                .filter_map(|c| c.summary.mean.map(|m| (c.n as f64, m)))
                .collect(),
            fit: fit.map(|f| f.c),
        });
    }
    if plan.output.is_none() {
        report.write_csv(&mut *out).map_err(|source| Error::Csv {
            path: stdout_path.to_path_buf(),
            source,
        })?;
    }
    if let Some(path) = plot {
        std::fs::write(&path, scaling_svg(&series)).map_err(io_err(&path))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suites: Vec<Suite> = if args.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suite
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?
    };
    let opts = VerifyOptions {
        n: args.n,
        cases: args.cases,
        seed: args.seed,
    };
    let stdout_path = std::path::Path::new("<stdout>");
    for suite in suites {
        let report = run_suite(suite, &opts)?;
        writeln!(out, "{report}").map_err(io_err(stdout_path))?;
        if !report.passed() {
            return Ok(EXIT_FAILURE);
        }
    }
    Ok(EXIT_OK)
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k);
    (0..k).try_fold(1u128, |acc, i| {
        acc.checked_mul((n - i) as u128)
            .map(|v| v / (i as u128 + 1))
    })
}

fn cmd_front(args: &FrontArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = problem_for(args.n, None, 0)?;
    let n = args.n;
    let stdout_path = std::path::Path::new("<stdout>");
    let mut rows = vec!["kind,ones,f1,f2,strings".to_string()];
    for x in [Bitstring::zeros(n), Bitstring::ones(n)] {
        let f = problem.evaluate(&x)?;
        rows.push(format!(
            "front,{},{},{},1",
            x.ones_count(),
            f.get(0),
            f.get(1)
        ));
    }
    for k in 1..n {
        let x = Bitstring::zeros(n).with_flipped(0..k);
        let f = problem.evaluate(&x)?;
        let count = binomial(n, k).map_or_else(|| "overflow".to_string(), |c| c.to_string());
        rows.push(format!("interior,{k},{},{},{count}", f.get(0), f.get(1)));
    }
    for row in rows {
        writeln!(out, "{row}").map_err(io_err(stdout_path))?;
    }
    Ok(EXIT_OK)
}
