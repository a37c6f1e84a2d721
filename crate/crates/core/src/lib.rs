//! Discrete evolutionary multi-objective optimisation on bitstrings.
//!
//! The crate implements five elitist EMO algorithms (SEMO, GSEMO, NSGA-II,
//! NSGA-III and SMS-EMOA) over the OneTrapZeroTrap benchmark, together with
//! the selection machinery they share:
//!
//! - [`model`]: bitstrings, fitness vectors, dominance and individuals.
//! - [`problems`]: OneTrapZeroTrap (optionally XOR-masked) and scalar TRAP.
//! - [`variation`]: uniform parent selection, bitwise and local mutation.
//! - [`ranking`]: non-dominated sorting, critical layers, crowding distance.
//! - [`nsga3`]: normalisation, Das-Dennis reference points and niching.
//! - [`hypervolume`]: exact bi-objective hypervolume and contributions.
//! - [`algorithms`]: the run loops, with optional genotype deduplication.
//! - [`harness`]: seeded experiment runner, statistics, oracles and audits.
//! - [`cli`]: the `emo-lab` command line.
//!
//! Every algorithm is driven by a caller-supplied RNG and reports a
//! [`algorithms::GenerationTrace`] per generation, so runs are bitwise
//! reproducible and their population dynamics can be audited.
//!
//! ```
//! use emo_lab::algorithms::{run, AlgorithmConfig, NoopObserver};
//! use emo_lab::problems::ProblemInstance;
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//!
//! let problem = ProblemInstance::otzt(16);
//! let config = AlgorithmConfig::nsga2(4);
//! let mut rng = ChaCha8Rng::seed_from_u64(7);
//! let result = run(&problem, &config, 1_000_000, &mut rng, &mut NoopObserver).unwrap();
//! assert!(result.success);
//! ```

pub mod algorithms;
pub mod cli;
pub mod error;
pub mod harness;
pub mod hypervolume;
pub mod model;
pub mod nsga3;
pub mod problems;
pub mod ranking;
pub mod variation;

pub use error::{Error, Result};
