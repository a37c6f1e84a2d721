//! OneTrapZeroTrap, its XOR-masked class, and scalar TRAP.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Bitstring, FitnessVector, Individual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Otzt,
    Trap,
}

/// A benchmark instance of size `n` with an XOR mask `a`.
///
/// Every function is evaluated on `y = x XOR a`, so the default all-zeros
/// mask gives the textbook function and any other mask swaps the roles of
/// ones and zeros at the masked positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProblemInstance {
    kind: ProblemKind,
    n: usize,
    mask: Bitstring,
}

impl ProblemInstance {
    pub fn otzt(n: usize) -> Self {
        Self::build(ProblemKind::Otzt, n)
    }

    pub fn otzt_masked(n: usize, mask: Bitstring) -> Result<Self> {
        Self::otzt(n).with_mask(mask)
    }

    pub fn trap(n: usize) -> Self {
        Self::build(ProblemKind::Trap, n)
    }

    fn build(kind: ProblemKind, n: usize) -> Self {
        assert!(n >= 1, "problem size must be positive");
        ProblemInstance {
            kind,
            n,
            mask: Bitstring::zeros(n),
        }
    }

    pub fn with_mask(mut self, mask: Bitstring) -> Result<Self> {
        if mask.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: mask.len(),
            });
        }
        self.mask = mask;
        Ok(self)
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> &Bitstring {
        &self.mask
    }

    pub fn num_objectives(&self) -> usize {
        match self.kind {
            ProblemKind::Otzt => 2,
            ProblemKind::Trap => 1,
        }
    }

    fn unmasked(&self, x: &Bitstring) -> Result<Bitstring> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        x.xor(&self.mask)
    }

    /// OneTrapZeroTrap on `x XOR mask`.
    pub fn evaluate_otzt(&self, x: &Bitstring) -> Result<FitnessVector> {
        let y = self.unmasked(x)?;
        Ok(otzt_of(&y))
    }

    pub fn evaluate(&self, x: &Bitstring) -> Result<FitnessVector> {
        match self.kind {
            ProblemKind::Otzt => self.evaluate_otzt(x),
            ProblemKind::Trap => {
                let y = self.unmasked(x)?;
                Ok(FitnessVector::new([evaluate_trap(self.n, &y)?]))
            }
        }
    }

    /// Evaluates `x` once and binds the result to it.
    pub fn evaluate_individual(&self, x: Bitstring) -> Result<Individual> {
        let fitness = self.evaluate(&x)?;
        Ok(Individual::new(x, fitness))
    }

    /// `|x XOR mask|₁`, the unitation the landscape is built on.
    pub fn relative_ones(&self, x: &Bitstring) -> usize {
        x.hamming(&self.mask).unwrap_or(0)
    }

    pub fn relative_zeros(&self, x: &Bitstring) -> usize {
        self.n - self.relative_ones(x)
    }

    /// True iff `x XOR mask` is all-zeros or all-ones. Strings of the wrong
    /// length are never optimal.
    pub fn is_pareto_optimal(&self, x: &Bitstring) -> bool {
        match self.unmasked(x) {
            Ok(y) => y.is_all_zeros() || y.is_all_ones(),
            Err(_) => false,
        }
    }

    /// The two Pareto-optimal fitness vectors `(n+1, n)` and `(n, n+1)`.
    pub fn front_fitness(&self) -> [FitnessVector; 2] {
        let n = self.n as i64;
        [FitnessVector::pair(n + 1, n), FitnessVector::pair(n, n + 1)]
    }

    /// Whether both Pareto-optimal fitness vectors are present.
    pub fn front_covered<'a>(&self, members: impl IntoIterator<Item = &'a Individual>) -> bool {
        let (a, b) = self.front_hits(members);
        a && b
    }

    pub(crate) fn front_hits<'a>(
        &self,
        members: impl IntoIterator<Item = &'a Individual>,
    ) -> (bool, bool) {
        let [zero_end, one_end] = self.front_fitness();
        let (mut a, mut b) = (false, false);
        for m in members {
            a |= *m.fitness() == zero_end;
            b |= *m.fitness() == one_end;
        }
        (a, b)
    }
}

fn otzt_of(y: &Bitstring) -> FitnessVector {
    let n = y.len() as i64;
    let ones = y.ones_count() as i64;
    let zero_bonus = if ones == 0 { n + 1 } else { 0 };
    let one_bonus = if ones == n { n + 1 } else { 0 };
    FitnessVector::pair(ones + zero_bonus, (n - ones) + one_bonus)
}

/// TRAP(x) = |x|₁ + (n+1)·[x = 0ⁿ].
pub fn evaluate_trap(n: usize, x: &Bitstring) -> Result<i64> {
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    let bonus = if x.is_all_zeros() { n as i64 + 1 } else { 0 };
    Ok(x.ones_count() as i64 + bonus)
}

/// Descriptor form: `otzt:n=<N>[:mask=<hex>]` (or `trap:n=<N>`).
impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ProblemKind::Otzt => "otzt",
            ProblemKind::Trap => "trap",
        };
        write!(f, "{kind}:n={}", self.n)?;
        if !self.mask.is_all_zeros() {
            write!(f, ":mask={}", self.mask.to_hex())?;
        }
        Ok(())
    }
}

impl FromStr for ProblemInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = match parts.next() {
            Some("otzt") => ProblemKind::Otzt,
            Some("trap") => ProblemKind::Trap,
            other => {
                return Err(Error::parse(format!(
                    "unknown problem `{}`",
                    other.unwrap_or_default()
                )))
            }
        };
        let mut n = None;
        let mut mask = None;
        for part in parts {
            match part.split_once('=') {
                Some(("n", v)) => {
                    let v: usize = v
                        .parse()
                        .map_err(|_| Error::parse(format!("invalid n `{v}`")))?;
                    if v == 0 {
                        return Err(Error::parse("n must be positive"));
                    }
                    n = Some(v);
                }
                Some(("mask", v)) => mask = Some(v.to_string()),
                _ => return Err(Error::parse(format!("unknown problem field `{part}`"))),
            }
        }
        let n = n.ok_or_else(|| Error::parse("problem descriptor lacks `n=`"))?;
        let inst = Self::build(kind, n);
        match mask {
            Some(hex) => inst.with_mask(Bitstring::from_hex(&hex, n)?),
            None => Ok(inst),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Dominance;

    fn bits(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    #[test]
    fn otzt_examples() {
        let p = ProblemInstance::otzt(20);
        assert_eq!(
            p.evaluate_otzt(&Bitstring::zeros(20)).unwrap(),
            (21, 20).into()
        );
        assert_eq!(
            p.evaluate_otzt(&Bitstring::ones(20)).unwrap(),
            (20, 21).into()
        );
        let p5 = ProblemInstance::otzt(5);
        assert_eq!(p5.evaluate_otzt(&bits("10100")).unwrap(), (2, 3).into());
        let masked = ProblemInstance::otzt_masked(5, bits("11111")).unwrap();
        assert_eq!(masked.evaluate_otzt(&bits("11111")).unwrap(), (6, 5).into());
    }

    #[test]
    fn length_mismatch_rejected() {
        let p = ProblemInstance::otzt(5);
        assert!(matches!(
            p.evaluate_otzt(&bits("101")),
            Err(Error::LengthMismatch {
                expected: 5,
                actual: 3
            })
        ));
        assert!(evaluate_trap(5, &bits("1")).is_err());
        assert!(ProblemInstance::otzt(5).with_mask(bits("11")).is_err());
    }

    #[test]
    fn trap_examples() {
        assert_eq!(evaluate_trap(5, &bits("00000")).unwrap(), 6);
        assert_eq!(evaluate_trap(5, &bits("11111")).unwrap(), 5);
        assert_eq!(evaluate_trap(5, &bits("10100")).unwrap(), 2);
        let p = ProblemInstance::trap(5);
        assert_eq!(p.evaluate(&bits("00000")).unwrap().values(), &[6]);
    }

    #[test]
    fn pareto_optimality() {
        let n = 8;
        let p = ProblemInstance::otzt(n);
        assert!(p.is_pareto_optimal(&Bitstring::zeros(n)));
        assert!(p.is_pareto_optimal(&Bitstring::ones(n)));
        assert!(!p.is_pareto_optimal(&bits("10000000")));
        let masked = ProblemInstance::otzt_masked(n, bits("10000000")).unwrap();
        assert!(masked.is_pareto_optimal(&bits("01111111")));
        assert!(masked.is_pareto_optimal(&bits("10000000")));
        assert!(!masked.is_pareto_optimal(&Bitstring::zeros(n)));
    }

    #[test]
    fn front_coverage() {
        let p = ProblemInstance::otzt(6);
        let ind = |s: &str| p.evaluate_individual(bits(s)).unwrap();
        let both = [ind("000000"), ind("111111"), ind("101010")];
        assert!(p.front_covered(&both));
        assert!(!p.front_covered(&both[..1]));
        let interior = [ind("100000"), ind("110000"), ind("111110")];
        assert!(!p.front_covered(&interior));
    }

    #[test]
    fn descriptor_round_trip() {
        let p: ProblemInstance = "otzt:n=20".parse().unwrap();
        assert_eq!(p, ProblemInstance::otzt(20));
        assert_eq!(p.to_string(), "otzt:n=20");
        let m: ProblemInstance = "otzt:n=5:mask=f8".parse().unwrap();
        assert_eq!(m.mask(), &bits("11111"));
        assert_eq!(m.to_string(), "otzt:n=5:mask=f8");
        assert!("otzt".parse::<ProblemInstance>().is_err());
        assert!("otzt:n=0".parse::<ProblemInstance>().is_err());
        assert!("ojzj:n=3".parse::<ProblemInstance>().is_err());
        assert!("otzt:n=4:k=2".parse::<ProblemInstance>().is_err());
    }

    #[test]
    fn front_dominates_interior_exhaustively() {
        for n in 1..=12usize {
            let p = ProblemInstance::otzt(n);
            let all: Vec<_> = (0..1u32 << n)
                .map(|v| {
                    let b: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
                    p.evaluate_individual(Bitstring::from_bits(&b)).unwrap()
                })
                .collect();
            let (front, rest): (Vec<_>, Vec<_>) =
                all.iter().partition(|x| p.is_pareto_optimal(x.genotype()));
            assert_eq!(front.len(), 2);
            assert_eq!(
                front[0].fitness().compare(front[1].fitness()).unwrap(),
                Dominance::Incomparable
            );
            for f in &front {
                assert!(rest.iter().all(|r| f.fitness().dominates(r.fitness())));
            }
            // Interior fitness is a function of unitation, so comparing one
            // representative per ones-count covers every pair.
            for k in 1..n {
                for l in 1..n {
                    let u = FitnessVector::pair(k as i64, (n - k) as i64);
                    let v = FitnessVector::pair(l as i64, (n - l) as i64);
                    let rel = u.compare(&v).unwrap();
                    assert!(matches!(rel, Dominance::Incomparable | Dominance::Equal));
                }
            }
            for r in &rest {
                let k = r.genotype().ones_count() as i64;
                assert_eq!(*r.fitness(), FitnessVector::pair(k, n as i64 - k));
            }
        }
    }

    #[test]
    fn mask_invariance_exhaustive() {
        for n in 1..=10usize {
            for mask_seed in [0u32, 1, 0b1011, (1 << n) - 1] {
                let mask_bits: Vec<bool> = (0..n).map(|i| mask_seed >> i & 1 == 1).collect();
                let mask = Bitstring::from_bits(&mask_bits);
                let plain = ProblemInstance::otzt(n);
                let masked = ProblemInstance::otzt_masked(n, mask.clone()).unwrap();
                for v in 0..1u32 << n {
                    let b: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
                    let x = Bitstring::from_bits(&b);
                    assert_eq!(
                        masked.evaluate_otzt(&x).unwrap(),
                        plain.evaluate_otzt(&x.xor(&mask).unwrap()).unwrap()
                    );
                }
            }
        }
    }
}
