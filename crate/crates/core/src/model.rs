//! Genotypes, fitness vectors and the dominance relation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A fixed-length bitstring. Values are immutable; variation operators
/// return fresh strings.
///
/// Position 0 is the leftmost character of the textual form, so `"10100"`
/// has bits 0 and 2 set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring {
    len: usize,
    // Bits beyond `len` in the last word are always zero.
    words: Vec<u64>,
}

impl Bitstring {
    pub fn zeros(n: usize) -> Self {
        Bitstring {
            len: n,
            words: vec![0; n.div_ceil(WORD)],
        }
    }

    pub fn ones(n: usize) -> Self {
        Self::zeros(n).complement()
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut out = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                out.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        out
    }

    /// Uniformly random string of length `n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut out = Bitstring {
            len: n,
            words: (0..n.div_ceil(WORD)).map(|_| rng.random::<u64>()).collect(),
        };
        out.clear_padding();
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Number of one-bits, `|x|₁`.
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of zero-bits, `|x|₀ = n − |x|₁`.
    pub fn zeros_count(&self) -> usize {
        self.len - self.ones_count()
    }

    pub fn is_all_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.ones_count() == self.len
    }

    pub fn complement(&self) -> Self {
        let mut out = Bitstring {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_padding();
        out
    }

    pub fn xor(&self, other: &Bitstring) -> Result<Self> {
        self.check_len(other)?;
        Ok(Bitstring {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn hamming(&self, other: &Bitstring) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Copy with the given positions flipped. Repeated positions cancel.
    pub fn with_flipped(&self, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut out = self.clone();
        for i in positions {
            assert!(
                i < self.len,
                "bit index {i} out of range for length {}",
                self.len
            );
            out.words[i / WORD] ^= 1 << (i % WORD);
        }
        out
    }

    /// Raw little-endian words; bits beyond `len()` are zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Hex form used in problem descriptors: bits are read left to right,
    /// position 0 being the most significant bit of the first digit, with
    /// exactly `ceil(n / 4)` digits and zero padding at the end.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        (0..digits)
            .map(|d| {
                let mut v = 0u32;
                for k in 0..4 {
                    let i = 4 * d + k;
                    if i < self.len && self.get(i) {
                        v |= 8 >> k;
                    }
                }
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    /// Inverse of [`to_hex`](Self::to_hex).
    pub fn from_hex(hex: &str, n: usize) -> Result<Self> {
        if hex.len() != n.div_ceil(4) {
            return Err(Error::parse(format!(
                "mask `{hex}` needs exactly {} hex digits for n={n}",
                n.div_ceil(4)
            )));
        }
        let mut bits = vec![false; n];
        for (d, c) in hex.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::parse(format!("invalid hex digit `{c}` in mask")))?;
            for k in 0..4 {
                let set = v & (8 >> k) != 0;
                let i = 4 * d + k;
                if i < n {
                    bits[i] = set;
                } else if set {
                    return Err(Error::parse(format!("mask `{hex}` sets bits beyond n={n}")));
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }

    fn check_len(&self, other: &Bitstring) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        Ok(())
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstring({self})")
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(format!("invalid bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }
}

/// Outcome of comparing two fitness vectors under maximisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Dominates,
    DominatedBy,
    Incomparable,
    Equal,
}

/// Integer objective values, all maximised.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FitnessVector(SmallVec<[i64; 2]>);

impl FitnessVector {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Self {
        FitnessVector(values.into_iter().collect())
    }

    pub fn pair(f1: i64, f2: i64) -> Self {
        FitnessVector(SmallVec::from_buf([f1, f2]))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, k: usize) -> i64 {
        self.0[k]
    }

    pub fn compare(&self, other: &FitnessVector) -> Result<Dominance> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self.compare_unchecked(other))
    }

    /// Same as [`compare`](Self::compare) for vectors already known to share a dimension.
    pub fn compare_unchecked(&self, other: &FitnessVector) -> Dominance {
        debug_assert_eq!(self.dim(), other.dim());
        let mut better = false;
        let mut worse = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            better |= a > b;
            worse |= a < b;
        }
        match (better, worse) {
            (false, false) => Dominance::Equal,
            (true, false) => Dominance::Dominates,
            (false, true) => Dominance::DominatedBy,
            (true, true) => Dominance::Incomparable,
        }
    }

    /// `self ≻ other`.
    pub fn dominates(&self, other: &FitnessVector) -> bool {
        self.compare_unchecked(other) == Dominance::Dominates
    }

    /// `self ⪰ other`.
    pub fn weakly_dominates(&self, other: &FitnessVector) -> bool {
        matches!(
            self.compare_unchecked(other),
            Dominance::Dominates | Dominance::Equal
        )
    }
}

impl fmt::Debug for FitnessVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FitnessVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<(i64, i64)> for FitnessVector {
    fn from((a, b): (i64, i64)) -> Self {
        FitnessVector::pair(a, b)
    }
}

/// A genotype together with its fitness, fixed at evaluation time.
///
/// Individuals are only created by evaluating a genotype against a problem
/// (see [`crate::problems::ProblemInstance::evaluate_individual`]), so the
/// number of constructions equals the number of fitness evaluations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Individual {
    genotype: Bitstring,
    fitness: FitnessVector,
}

impl Individual {
    pub(crate) fn new(genotype: Bitstring, fitness: FitnessVector) -> Self {
        Individual { genotype, fitness }
    }

    pub fn genotype(&self) -> &Bitstring {
        &self.genotype
    }

    pub fn fitness(&self) -> &FitnessVector {
        &self.fitness
    }
}

/// Ordered multiset of individuals with an optional capacity `μ`.
#[derive(Clone, Debug, Default)]
pub struct Population {
    members: Vec<Individual>,
    capacity: Option<usize>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Population {
            members,
            capacity: None,
        }
    }

    pub fn with_capacity(members: Vec<Individual>, capacity: usize) -> Self {
        Population {
            members,
            capacity: Some(capacity),
        }
    }

    pub fn capacity(&self) -> Option<usize> {
        self.capacity
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual> {
        self.members.iter()
    }

    pub fn contains_genotype(&self, x: &Bitstring) -> bool {
        self.members.iter().any(|m| m.genotype() == x)
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }
}

impl<'a> IntoIterator for &'a Population {
    type Item = &'a Individual;
    type IntoIter = std::slice::Iter<'a, Individual>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
