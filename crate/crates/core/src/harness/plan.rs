//! Plan files.
//!
//! A plan is a flat TOML table. Every key is optional in the file, but
//! `algos` and `ns` must be provided by the file or on the command line.
//!
//! ```toml
//! algos = ["nsga2", "nsga3", "smsemoa"]
//! ns = [32, 64, 128]
//! runs = 100                  # default 10
//! budget = 10_000_000         # default 10^7
//! seed = 0                    # default 0
//! output = "results.csv"
//! plot = "scaling.svg"
//! workers = 4                 # EMO_LAB_WORKERS wins if set
//! mu = 4                      # default 4, SMS-EMOA 3
//! mutation = "bitwise"        # or "local"; default local for SEMO only
//! dedup = true
//! refpoints = "units"         # or "das-dennis:p=4"
//! eps_nadir = 1e-6
//! hv_ref = [-1024, -1024]     # default per n
//! init_excludes_front = true
//! mask = "random"             # or a hex mask for a single n
//! ```
//!
//! `mu`, `mutation` and the other algorithm keys apply to every algorithm
//! in `algos`; SEMO and GSEMO ignore `mu`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::experiment::{ExperimentPlan, MaskSpec};
use crate::algorithms::{AlgorithmConfig, AlgorithmKind};
use crate::error::{Error, Result};
use crate::hypervolume::HypervolumeConfig;
use crate::model::Bitstring;
use crate::nsga3::ReferencePointSet;
use crate::variation::MutationOperator;

pub const DEFAULT_RUNS: usize = 10;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    pub algos: Option<Vec<String>>,
    pub ns: Option<Vec<usize>>,
    pub runs: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub workers: Option<usize>,
    pub mu: Option<usize>,
    pub mutation: Option<String>,
    pub dedup: Option<bool>,
    pub refpoints: Option<String>,
    pub eps_nadir: Option<f64>,
    pub hv_ref: Option<[i64; 2]>,
    pub init_excludes_front: Option<bool>,
    pub mask: Option<String>,
}

impl PlanSpec {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::parse(format!("plan: {}", e.message())))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
    }

    /// Keys set in `top` replace those in `self`.
    pub fn overlay(self, top: PlanSpec) -> PlanSpec {
        PlanSpec {
            algos: top.algos.or(self.algos),
            ns: top.ns.or(self.ns),
            runs: top.runs.or(self.runs),
            budget: top.budget.or(self.budget),
            seed: top.seed.or(self.seed),
            output: top.output.or(self.output),
            plot: top.plot.or(self.plot),
            workers: top.workers.or(self.workers),
            mu: top.mu.or(self.mu),
            mutation: top.mutation.or(self.mutation),
            dedup: top.dedup.or(self.dedup),
            refpoints: top.refpoints.or(self.refpoints),
            eps_nadir: top.eps_nadir.or(self.eps_nadir),
            hv_ref: top.hv_ref.or(self.hv_ref),
            init_excludes_front: top.init_excludes_front.or(self.init_excludes_front),
            mask: top.mask.or(self.mask),
        }
    }

    /// Configuration of `kind` with this spec's algorithm keys applied.
    pub fn config_for(&self, kind: AlgorithmKind) -> Result<AlgorithmConfig> {
        let mut config = AlgorithmConfig::for_kind(kind);
        if let Some(mu) = self.mu {
            config = config.with_mu(mu);
        }
        if let Some(m) = &self.mutation {
            config = config.with_mutation(m.parse::<MutationOperator>()?);
        }
        if let Some(d) = self.dedup {
            config = config.with_dedup(d);
        }
        if let Some(r) = &self.refpoints {
            config = config.with_refpoints(r.parse::<ReferencePointSet>()?);
        }
        if let Some(e) = self.eps_nadir {
            config = config.with_eps_nadir(e);
        }
        if let Some([h1, h2]) = self.hv_ref {
            config = config.with_hv_ref(HypervolumeConfig::new(h1, h2));
        }
        if let Some(x) = self.init_excludes_front {
            config = config.with_init_excludes_front(x);
        }
        Ok(config)
    }

    pub fn into_plan(self) -> Result<ExperimentPlan> {
        let algos = self
            .algos
            .clone()
            .ok_or_else(|| Error::invalid("plan lacks `algos`"))?;
        let ns = self
            .ns
            .clone()
            .ok_or_else(|| Error::invalid("plan lacks `ns`"))?;
        let algorithms = algos
            .iter()
            .map(|a| self.config_for(a.trim().parse()?))
            .collect::<Result<Vec<_>>>()?;
        let mask = match self.mask.as_deref() {
            None | Some("none") => MaskSpec::None,
            Some("random") => MaskSpec::Random,
            Some(hex) => match ns.as_slice() {
                [n] => MaskSpec::Fixed(Bitstring::from_hex(hex, *n)?),
                _ => {
                    return Err(Error::invalid(
                        "a fixed mask needs exactly one problem size",
                    ))
                }
            },
        };
        let plan = ExperimentPlan {
            algorithms,
            ns,
            mask,
            runs: self.runs.unwrap_or(DEFAULT_RUNS),
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            seed: self.seed.unwrap_or(0),
            output: self.output,
            workers: self.workers,
        };
        plan.validate()?;
        Ok(plan)
    }
}
