//! Exact rational probability distributions over tuples.
//!
//! Every tuple must carry strictly positive probability and the
//! probabilities must sum to exactly 1. Both conditions are enforced at
//! construction; there is no tolerance anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alphabet::{checked_tuple_count, indices_of_rank, Alphabet, DEFAULT_SIZE_BOUND};
use crate::error::{Error, Result};

/// A distribution over all `base^arity` tuples, indexed by tuple rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDistribution {
    base: usize,
    arity: usize,
    probs: Vec<BigRational>,
}

impl InputDistribution {
    /// Build from explicit per-rank probabilities. There must be exactly
    /// `base^arity` of them, all positive, summing to exactly 1.
    pub fn from_probs(base: usize, arity: usize, probs: Vec<BigRational>) -> Result<Self> {
        let n = checked_tuple_count(base, arity, DEFAULT_SIZE_BOUND)?;
        if probs.len() != n {
            return Err(Error::InvalidDistribution(format!(
                "expected {n} probabilities, got {}",
                probs.len()
            )));
        }
        let mut sum = BigRational::zero();
        for (rank, p) in probs.iter().enumerate() {
            if *p <= BigRational::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "probability of tuple rank {rank} is not positive"
                )));
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(InputDistribution { base, arity, probs })
    }

    /// The uniform distribution: every tuple has probability `1 / v^arity`.
    pub fn uniform(alphabet: &Alphabet, arity: usize) -> Result<Self> {
        let n = alphabet.tuple_count(arity)?;
        let p = BigRational::new(BigInt::one(), BigInt::from(n));
        Ok(InputDistribution {
            base: alphabet.size(),
            arity,
            probs: vec![p; n],
        })
    }

    /// Independent coordinates with the given per-position marginals.
    /// Each marginal must list one positive probability per symbol, in
    /// alphabet order, summing to exactly 1.
    pub fn product(alphabet: &Alphabet, marginals: &[Vec<BigRational>]) -> Result<Self> {
        let v = alphabet.size();
        for (position, marginal) in marginals.iter().enumerate() {
            if marginal.len() != v {
                return Err(Error::InvalidMarginal {
                    position: position + 1,
                    reason: format!("expected {v} entries, got {}", marginal.len()),
                });
            }
            let mut sum = BigRational::zero();
            for p in marginal {
                if *p <= BigRational::zero() {
                    return Err(Error::InvalidMarginal {
                        position: position + 1,
                        reason: "non-positive entry".into(),
                    });
                }
                sum += p;
            }
            if !sum.is_one() {
                return Err(Error::InvalidMarginal {
                    position: position + 1,
                    reason: format!("entries sum to {sum}, not 1"),
                });
            }
        }
        let arity = marginals.len();
        let n = alphabet.tuple_count(arity)?;
        let mut probs = Vec::with_capacity(n);
        for rank in 0..n {
            let digits = indices_of_rank(v, arity, rank);
            let p = digits
                .iter()
                .zip(marginals)
                .fold(BigRational::one(), |acc, (&d, marginal)| {
                    acc * &marginal[d]
                });
            probs.push(p);
        }
        Ok(InputDistribution {
            base: v,
            arity,
            probs,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of tuples, `base^arity`.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least base^0 = 1 tuple by construction
    }

    pub fn prob(&self, rank: usize) -> &BigRational {
        &self.probs[rank]
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn is_uniform(&self) -> bool {
        let p = BigRational::new(BigInt::one(), BigInt::from(self.len()));
        self.probs.iter().all(|q| *q == p)
    }
}
