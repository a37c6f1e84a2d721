//! Uniform parent selection and the two mutation operators.

use std::fmt;
use std::str::FromStr;

use rand::distr::{Bernoulli, Distribution};
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::Bitstring;

/// Mutation operator applied to a copy of the parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationOperator {
    /// Standard bit mutation: every bit flips independently with probability `1/n`.
    ///
    /// Implemented as one Bernoulli draw per position, in position order.
    StandardBitwise,
    /// Local (one-bit) mutation: exactly one uniformly chosen bit flips.
    Local,
}

impl MutationOperator {
    pub fn mutate<R: Rng + ?Sized>(&self, x: &Bitstring, rng: &mut R) -> Bitstring {
        let n = x.len();
        assert!(n >= 1, "cannot mutate an empty bitstring");
        match self {
            MutationOperator::StandardBitwise => {
                let coin = Bernoulli::new(1.0 / n as f64).expect("1/n is a probability");
                x.with_flipped((0..n).filter(|_| coin.sample(rng)))
            }
            MutationOperator::Local => x.with_flipped([rng.random_range(0..n)]),
        }
    }
}

impl fmt::Display for MutationOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationOperator::StandardBitwise => "bitwise",
            MutationOperator::Local => "local",
        })
    }
}

impl FromStr for MutationOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bitwise" => Ok(MutationOperator::StandardBitwise),
            "local" => Ok(MutationOperator::Local),
            other => Err(Error::parse(format!(
                "unknown mutation `{other}` (expected bitwise or local)"
            ))),
        }
    }
}

/// Picks one member uniformly at random, with replacement across calls.
pub fn uniform_parent_select<'a, T, R: Rng + ?Sized>(
    members: &'a [T],
    rng: &mut R,
) -> Result<&'a T> {
    if members.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    Ok(&members[rng.random_range(0..members.len())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn empty_population_rejected() {
        let empty: [u8; 0] = [];
        assert!(matches!(
            uniform_parent_select(&empty, &mut rng(0)),
            Err(Error::EmptyPopulation)
        ));
    }

    #[test]
    fn single_member_always_selected() {
        let mut r = rng(1);
        for _ in 0..100 {
            assert_eq!(*uniform_parent_select(&[42], &mut r).unwrap(), 42);
        }
    }

    #[test]
    fn selection_is_uniform() {
        let mut r = rng(2);
        let members = [0usize, 1, 2, 3];
        let mut counts = [0usize; 4];
        let draws = 100_000;
        for _ in 0..draws {
            counts[*uniform_parent_select(&members, &mut r).unwrap()] += 1;
        }
        for c in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 0.25).abs() <= 0.02, "frequency {freq}");
        }
    }

    #[test]
    fn duplicates_are_distinct_slots() {
        let mut r = rng(3);
        let members = ["x", "x"];
        let mut first = 0;
        let draws = 20_000;
        for _ in 0..draws {
            let pick = uniform_parent_select(&members, &mut r).unwrap();
            if std::ptr::eq(pick, &members[0]) {
                first += 1;
            }
        }
        let freq = first as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.02, "frequency {freq}");
    }

    #[test]
    fn local_flips_exactly_one_bit() {
        let mut r = rng(4);
        let x = Bitstring::random(37, &mut r);
        for _ in 0..1000 {
            let y = MutationOperator::Local.mutate(&x, &mut r);
            assert_eq!(y.len(), x.len());
            assert_eq!(x.hamming(&y).unwrap(), 1);
        }
    }

    #[test]
    fn bitwise_mean_flips_is_one() {
        let mut r = rng(5);
        let x = Bitstring::zeros(20);
        let trials = 100_000;
        let total: usize = (0..trials)
            .map(|_| {
                MutationOperator::StandardBitwise
                    .mutate(&x, &mut r)
                    .ones_count()
            })
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 1.0).abs() <= 0.05, "mean {mean}");
    }

    #[test]
    fn bitwise_all_flip_probability() {
        // P(all four bits flip) = (1/4)^4 = 1/256.
        let mut r = rng(6);
        let x = Bitstring::zeros(4);
        let trials = 1_000_000;
        let hits = (0..trials)
            .filter(|_| {
                MutationOperator::StandardBitwise
                    .mutate(&x, &mut r)
                    .is_all_ones()
            })
            .count();
        let p = 1.0 / 256.0;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let freq = hits as f64 / trials as f64;
        assert!((freq - p).abs() <= 3.0 * sigma, "frequency {freq}");
    }

    #[test]
    fn bitwise_positions_independent() {
        let n = 8;
        let mut r = rng(7);
        let x = Bitstring::zeros(n);
        let trials = 200_000;
        let mut single = vec![0f64; n];
        let mut pair = 0f64;
        for _ in 0..trials {
            let y = MutationOperator::StandardBitwise.mutate(&x, &mut r);
            for (i, s) in single.iter_mut().enumerate() {
                if y.get(i) {
                    *s += 1.0;
                }
            }
            if y.get(0) && y.get(1) {
                pair += 1.0;
            }
        }
        let t = trials as f64;
        let p = 1.0 / n as f64;
        let sigma = (p * (1.0 - p) / t).sqrt();
        for s in &single {
            assert!((s / t - p).abs() <= 4.0 * sigma);
        }
        let cov = pair / t - (single[0] / t) * (single[1] / t);
        assert!(cov.abs() < 2e-3, "covariance {cov}");
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "bitwise".parse::<MutationOperator>().unwrap(),
            MutationOperator::StandardBitwise
        );
        assert_eq!(
            "local".parse::<MutationOperator>().unwrap(),
            MutationOperator::Local
        );
        assert!("heavy".parse::<MutationOperator>().is_err());
    }
}
