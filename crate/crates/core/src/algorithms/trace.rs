use std::fmt;
use std::io::Write;

use crate::model::Individual;
use crate::problems::ProblemInstance;

/// How many of the two Pareto-optimal fitness vectors a population holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrontCoverage {
    None,
    One,
    Both,
}

impl fmt::Display for FrontCoverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrontCoverage::None => "none",
            FrontCoverage::One => "one",
            FrontCoverage::Both => "both",
        })
    }
}

/// Snapshot of a population after generation `generation`.
///
/// Ones and zeros are counted on `x XOR mask`, so the record means the same
/// thing for every member of the masked function class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationTrace {
    pub generation: u64,
    pub evaluations: u64,
    pub max_ones: usize,
    pub max_zeros: usize,
    pub population_size: usize,
    pub coverage: FrontCoverage,
}

impl GenerationTrace {
    pub fn of(
        problem: &ProblemInstance,
        generation: u64,
        evaluations: u64,
        members: &[Individual],
    ) -> Self {
        let mut max_ones = 0;
        let mut max_zeros = 0;
        for m in members {
            let ones = problem.relative_ones(m.genotype());
            max_ones = max_ones.max(ones);
            max_zeros = max_zeros.max(problem.n() - ones);
        }
        let coverage = match problem.front_hits(members) {
            (true, true) => FrontCoverage::Both,
            (false, false) => FrontCoverage::None,
            _ => FrontCoverage::One,
        };
        GenerationTrace {
            generation,
            evaluations,
            max_ones,
            max_zeros,
            population_size: members.len(),
            coverage,
        }
    }
}

/// Trace line format: `t,evals,max_ones,max_zeros,pop_size,coverage`.
impl fmt::Display for GenerationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.generation,
            self.evaluations,
            self.max_ones,
            self.max_zeros,
            self.population_size,
            self.coverage
        )
    }
}

/// Receives one trace record per generation of a run.
pub trait Observer {
    fn observe(&mut self, trace: &GenerationTrace);
}

impl<F: FnMut(&GenerationTrace)> Observer for F {
    fn observe(&mut self, trace: &GenerationTrace) {
        self(trace)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NoopObserver;

impl Observer for NoopObserver {
    fn observe(&mut self, _: &GenerationTrace) {}
}

/// Keeps every trace record in memory.
#[derive(Clone, Debug, Default)]
pub struct TraceRecorder {
    pub traces: Vec<GenerationTrace>,
}

impl Observer for TraceRecorder {
    fn observe(&mut self, trace: &GenerationTrace) {
        self.traces.push(*trace);
    }
}

/// Writes trace lines to `W`. The first write error is kept and later
/// records are dropped.
pub struct TraceWriter<W: Write> {
    out: W,
    error: Option<std::io::Error>,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(out: W) -> Self {
        TraceWriter { out, error: None }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> Observer for TraceWriter<W> {
    fn observe(&mut self, trace: &GenerationTrace) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.out, "{trace}") {
                self.error = Some(e);
            }
        }
    }
}

/// Counts generations in which the population's maximal ones-count or
/// maximal zeros-count went down.
#[derive(Clone, Debug, Default)]
pub struct MonotoneMonitor {
    previous: Option<(usize, usize)>,
    violations: u64,
}

impl MonotoneMonitor {
    pub fn violations(&self) -> u64 {
        self.violations
    }
}

impl Observer for MonotoneMonitor {
    fn observe(&mut self, trace: &GenerationTrace) {
        if let Some((ones, zeros)) = self.previous {
            if trace.max_ones < ones || trace.max_zeros < zeros {
                self.violations += 1;
            }
        }
        self.previous = Some((trace.max_ones, trace.max_zeros));
    }
}
