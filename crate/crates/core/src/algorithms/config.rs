use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypervolume::HypervolumeConfig;
use crate::nsga3::{ReferencePointSet, DEFAULT_EPS_NADIR};
use crate::problems::{ProblemInstance, ProblemKind};
use crate::variation::MutationOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Semo,
    Gsemo,
    Nsga2,
    Nsga3,
    SmsEmoa,
}

impl AlgorithmKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmKind::Semo => "semo",
            AlgorithmKind::Gsemo => "gsemo",
            AlgorithmKind::Nsga2 => "nsga2",
            AlgorithmKind::Nsga3 => "nsga3",
            AlgorithmKind::SmsEmoa => "smsemoa",
        }
    }

    /// Whether the population has a fixed size `μ`.
    pub fn has_fixed_population(&self) -> bool {
        !matches!(self, AlgorithmKind::Semo | AlgorithmKind::Gsemo)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "semo" => AlgorithmKind::Semo,
            "gsemo" => AlgorithmKind::Gsemo,
            "nsga2" | "nsga-ii" => AlgorithmKind::Nsga2,
            "nsga3" | "nsga-iii" => AlgorithmKind::Nsga3,
            "smsemoa" | "sms-emoa" => AlgorithmKind::SmsEmoa,
            other => return Err(Error::parse(format!("unknown algorithm `{other}`"))),
        })
    }
}

/// Parameters of one algorithm.
///
/// `mu` is ignored by SEMO and GSEMO, whose population is unbounded.
/// `refpoints` and `eps_nadir` only matter for NSGA-III, `hv_ref` only for
/// SMS-EMOA (`None` selects [`HypervolumeConfig::default_for`] the problem size).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    pub mu: usize,
    pub mutation: MutationOperator,
    pub dedup: bool,
    pub refpoints: ReferencePointSet,
    pub eps_nadir: f64,
    pub hv_ref: Option<HypervolumeConfig>,
    pub init_excludes_front: bool,
}

impl AlgorithmConfig {
    fn base(kind: AlgorithmKind, mu: usize, mutation: MutationOperator) -> Self {
        AlgorithmConfig {
            kind,
            mu,
            mutation,
            dedup: true,
            refpoints: ReferencePointSet::units(2),
            eps_nadir: DEFAULT_EPS_NADIR,
            hv_ref: None,
            init_excludes_front: false,
        }
    }

    pub fn semo() -> Self {
        Self::base(AlgorithmKind::Semo, 1, MutationOperator::Local)
    }

    pub fn gsemo() -> Self {
        Self::base(AlgorithmKind::Gsemo, 1, MutationOperator::StandardBitwise)
    }

    pub fn nsga2(mu: usize) -> Self {
        Self::base(AlgorithmKind::Nsga2, mu, MutationOperator::StandardBitwise)
    }

    pub fn nsga3(mu: usize, refpoints: ReferencePointSet) -> Self {
        Self {
            refpoints,
            ..Self::base(AlgorithmKind::Nsga3, mu, MutationOperator::StandardBitwise)
        }
    }

    pub fn smsemoa(mu: usize) -> Self {
        Self::base(
            AlgorithmKind::SmsEmoa,
            mu,
            MutationOperator::StandardBitwise,
        )
    }

    /// Default configuration for `kind`: `μ = 4` (3 for SMS-EMOA), unit
    /// reference vectors, bitwise mutation except for SEMO.
    pub fn for_kind(kind: AlgorithmKind) -> Self {
        match kind {
            AlgorithmKind::Semo => Self::semo(),
            AlgorithmKind::Gsemo => Self::gsemo(),
            AlgorithmKind::Nsga2 => Self::nsga2(4),
            AlgorithmKind::Nsga3 => Self::nsga3(4, ReferencePointSet::units(2)),
            AlgorithmKind::SmsEmoa => Self::smsemoa(3),
        }
    }

    pub fn with_mu(mut self, mu: usize) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_mutation(mut self, mutation: MutationOperator) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn with_init_excludes_front(mut self, excludes: bool) -> Self {
        self.init_excludes_front = excludes;
        self
    }

    pub fn with_refpoints(mut self, refpoints: ReferencePointSet) -> Self {
        self.refpoints = refpoints;
        self
    }

    pub fn with_eps_nadir(mut self, eps: f64) -> Self {
        self.eps_nadir = eps;
        self
    }

    pub fn with_hv_ref(mut self, h: HypervolumeConfig) -> Self {
        self.hv_ref = Some(h);
        self
    }

    /// Effective SMS-EMOA reference point for `problem`.
    pub fn hv_reference(&self, problem: &ProblemInstance) -> HypervolumeConfig {
        self.hv_ref
            .unwrap_or_else(|| HypervolumeConfig::default_for(problem.n()))
    }

    /// Rejects configurations the engines cannot run.
    ///
    /// NSGA-III with `μ < 2|R|` or without the unit vectors is accepted but
    /// logged, since the monotonicity guarantee no longer applies.
    pub fn validate(&self, problem: &ProblemInstance) -> Result<()> {
        if problem.kind() != ProblemKind::Otzt {
            return Err(Error::invalid(
                "the engines optimise bi-objective OneTrapZeroTrap instances",
            ));
        }
        match (self.kind, self.mutation) {
            (AlgorithmKind::Semo, MutationOperator::StandardBitwise) => {
                return Err(Error::invalid(
                    "SEMO uses local mutation; use GSEMO for bitwise mutation",
                ))
            }
            (AlgorithmKind::Gsemo, MutationOperator::Local) => {
                return Err(Error::invalid(
                    "GSEMO uses bitwise mutation; use SEMO for local mutation",
                ))
            }
            _ => {}
        }
        if self.kind.has_fixed_population() && self.mu == 0 {
            return Err(Error::invalid("population size mu must be at least 1"));
        }
        if self.init_excludes_front && problem.n() < 2 {
            return Err(Error::invalid(
                "cannot exclude the front from initialisation when n < 2",
            ));
        }
        match self.kind {
            AlgorithmKind::Nsga3 => {
                if self.refpoints.dim() != problem.num_objectives() {
                    return Err(Error::DimensionMismatch {
                        left: problem.num_objectives(),
                        right: self.refpoints.dim(),
                    });
                }
                if !(self.eps_nadir > 0.0 && self.eps_nadir.is_finite()) {
                    return Err(Error::invalid(format!(
                        "eps_nadir must be positive, got {}",
                        self.eps_nadir
                    )));
                }
                if self.mu < 2 * self.refpoints.len() || !self.refpoints.contains_unit_vectors() {
                    log::warn!(
                        "NSGA-III with mu={} and {} reference points ({}): monotonicity is not guaranteed",
                        self.mu,
                        self.refpoints.len(),
                        self.refpoints
                    );
                }
            }
            AlgorithmKind::SmsEmoa => {
                // Every OneTrapZeroTrap objective value is nonnegative.
                let h = self.hv_reference(problem);
                if h.reference.iter().any(|&v| v > 0) {
                    return Err(Error::invalid(format!(
                        "hypervolume reference {:?} must lie below (0, 0)",
                        h.reference
                    )));
                }
                if !h.separates_extremes(problem.n()) {
                    log::warn!(
                        "hypervolume reference {:?} is above -(n/2)^2: monotonicity is not guaranteed",
                        h.reference
                    );
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_must_match_semo_variant() {
        let p = ProblemInstance::otzt(8);
        assert!(AlgorithmConfig::semo().validate(&p).is_ok());
        assert!(AlgorithmConfig::gsemo().validate(&p).is_ok());
        assert!(AlgorithmConfig::semo()
            .with_mutation(MutationOperator::StandardBitwise)
            .validate(&p)
            .is_err());
        assert!(AlgorithmConfig::gsemo()
            .with_mutation(MutationOperator::Local)
            .validate(&p)
            .is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        let p = ProblemInstance::otzt(8);
        assert!(AlgorithmConfig::nsga2(0).validate(&p).is_err());
        assert!(AlgorithmConfig::smsemoa(3)
            .with_hv_ref(HypervolumeConfig::new(1, -5))
            .validate(&p)
            .is_err());
        assert!(AlgorithmConfig::nsga2(4)
            .validate(&ProblemInstance::trap(8))
            .is_err());
        assert!(AlgorithmConfig::nsga3(4, ReferencePointSet::units(3))
            .validate(&p)
            .is_err());
        assert!(AlgorithmConfig::nsga3(4, ReferencePointSet::units(2))
            .with_eps_nadir(0.0)
            .validate(&p)
            .is_err());
        // Small populations are legal, only the guarantee is lost.
        assert!(AlgorithmConfig::nsga3(2, ReferencePointSet::units(2))
            .validate(&p)
            .is_ok());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in [
            AlgorithmKind::Semo,
            AlgorithmKind::Gsemo,
            AlgorithmKind::Nsga2,
            AlgorithmKind::Nsga3,
            AlgorithmKind::SmsEmoa,
        ] {
            assert_eq!(kind.name().parse::<AlgorithmKind>().unwrap(), kind);
        }
        assert!("moead".parse::<AlgorithmKind>().is_err());
    }
}
