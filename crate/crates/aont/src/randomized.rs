//! The randomized AONT protocol: `t` designated inputs are combined with
//! `s - t` fresh uniform random inputs and pushed through a verified
//! transform.
//!
//! The protocol's guarantee is unconditional on the designated-input
//! distribution: as long as the underlying transform satisfies the
//! combinatorial definition at parameter `t`, the adversary's view of any
//! `s - t` output coordinates is exactly uniform and independent of the
//! designated inputs. [`verify_randomized_perfect_security`] re-derives
//! that guarantee by exact enumeration instead of trusting it.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::alphabet::{indices_of_rank, rank_of_indices};
use crate::columns::ColumnSet;
use crate::dist::InputDistribution;
use crate::error::{Error, Result};
use crate::security::{joint_table, SecurityVerdict, SecurityWitness, WitnessKind};
use crate::transform::Transform;
use crate::unbiased::verify_aont;

/// A transform together with a choice of which `t` input positions carry
/// the caller's message; the remaining `s - t` positions are filled with
/// fresh uniform randomness on every encoding.
#[derive(Debug, Clone)]
pub struct RandomizedScheme {
    phi: Transform,
    inverse: Vec<usize>,
    designated: ColumnSet,
    /// 0-based input positions, ascending.
    designated_positions: Vec<usize>,
    /// 0-based input positions of the random coordinates, ascending.
    random_positions: Vec<usize>,
}

impl RandomizedScheme {
    /// Build a scheme over `phi` with the given designated input columns.
    ///
    /// The designation must name exactly `phi.t()` distinct input columns,
    /// and `phi` must pass the combinatorial verifier at that parameter —
    /// the protocol's guarantee holds only for genuine AONTs, so an
    /// unverified transform is rejected here rather than silently encoded.
    pub fn new(phi: Transform, designated: ColumnSet) -> Result<Self> {
        let s = phi.s();
        let t = phi.t();
        let designated_positions = designated.input_positions(s).map_err(|e| {
            Error::InvalidDesignation(format!("designated columns must be input columns: {e}"))
        })?;
        if designated_positions.len() != t {
            return Err(Error::InvalidDesignation(format!(
                "transform protects t = {t} inputs, designation names {}",
                designated_positions.len()
            )));
        }
        let report = verify_aont(&phi.to_array(), t)?;
        if !report.pass {
            return Err(Error::NotAnAont {
                t,
                s,
                v: phi.v(),
            });
        }
        let random_positions = (0..s)
            .filter(|p| !designated_positions.contains(p))
            .collect();
        let inverse = phi.inverse_table();
        Ok(RandomizedScheme {
            phi,
            inverse,
            designated,
            designated_positions,
            random_positions,
        })
    }

    pub fn phi(&self) -> &Transform {
        &self.phi
    }

    pub fn designated(&self) -> &ColumnSet {
        &self.designated
    }

    /// 1-based input columns that receive fresh randomness.
    pub fn random_columns(&self) -> Vec<usize> {
        self.random_positions.iter().map(|p| p + 1).collect()
    }

    /// Place the designated tuple `u` and the random tuple `r` into a full
    /// input tuple of symbol indices.
    fn assemble(&self, u: &[usize], r: &[usize]) -> Vec<usize> {
        let mut x = vec![0; self.phi.s()];
        for (&pos, &val) in self.designated_positions.iter().zip(u) {
            x[pos] = val;
        }
        for (&pos, &val) in self.random_positions.iter().zip(r) {
            x[pos] = val;
        }
        x
    }

    fn check_message(&self, u: &[usize]) -> Result<()> {
        let t = self.phi.t();
        if u.len() != t {
            return Err(Error::ArityMismatch {
                expected: t,
                got: u.len(),
            });
        }
        let v = self.phi.v();
        for &d in u {
            if d >= v {
                return Err(Error::SymbolIndexOutOfRange { index: d, size: v });
            }
        }
        Ok(())
    }

    /// Encode the designated tuple `u`, deterministically given `seed`.
    ///
    /// Randomness contract: a ChaCha12 generator is seeded with `seed` and
    /// one 64-bit word is drawn per random position in ascending position
    /// order, reduced mod `v`. The reduction bias (at most `v`/2^64) is
    /// far below anything observable at this crate's scale; the contract
    /// here is reproducibility, not cryptographic quality.
    pub fn encode(&self, u: &[usize], seed: u64) -> Result<Vec<usize>> {
        self.check_message(u)?;
        let v = self.phi.v();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let r: Vec<usize> = self
            .random_positions
            .iter()
            .map(|_| (rng.next_u64() % v as u64) as usize)
            .collect();
        let x = self.assemble(u, &r);
        let y = self.phi.apply_rank(rank_of_indices(v, &x));
        Ok(indices_of_rank(v, self.phi.s(), y))
    }

    /// Invert the transform and project onto the designated positions,
    /// discarding the random coordinates.
    pub fn decode(&self, y: &[usize]) -> Result<Vec<usize>> {
        let s = self.phi.s();
        let v = self.phi.v();
        if y.len() != s {
            return Err(Error::ArityMismatch {
                expected: s,
                got: y.len(),
            });
        }
        for &d in y {
            if d >= v {
                return Err(Error::SymbolIndexOutOfRange { index: d, size: v });
            }
        }
        let x = indices_of_rank(v, s, self.inverse[rank_of_indices(v, y)]);
        Ok(self
            .designated_positions
            .iter()
            .map(|&p| x[p])
            .collect())
    }
}

fn check_message_dist(scheme: &RandomizedScheme, dist_u: &InputDistribution) -> Result<()> {
    let t = scheme.phi.t();
    let v = scheme.phi.v();
    if dist_u.base() != v || dist_u.arity() != t {
        return Err(Error::DimensionMismatch(format!(
            "message distribution is over {}^{} tuples, scheme designates {} of {} symbols",
            dist_u.base(),
            dist_u.arity(),
            t,
            v
        )));
    }
    Ok(())
}

/// The exact distribution of the full input tuple when the designated
/// coordinates follow `dist_u` and the rest are uniform and independent.
pub fn induced_input_distribution(
    scheme: &RandomizedScheme,
    dist_u: &InputDistribution,
) -> Result<InputDistribution> {
    check_message_dist(scheme, dist_u)?;
    let s = scheme.phi.s();
    let v = scheme.phi.v();
    let n = scheme.phi.tuple_count();
    let r_count = v.pow(scheme.random_positions.len() as u32);
    let r_weight = BigRational::new(1.into(), (r_count as u64).into());
    let probs = (0..n)
        .map(|x_rank| {
            let x = indices_of_rank(v, s, x_rank);
            let u: Vec<usize> = scheme
                .designated_positions
                .iter()
                .map(|&p| x[p])
                .collect();
            dist_u.prob(rank_of_indices(v, &u)) * &r_weight
        })
        .collect();
    InputDistribution::from_probs(v, s, probs)
}

/// The exact distribution of `Y_J` under `u ~ dist_u` and uniform
/// randomness, indexed by the rank of the `J`-projected output tuple.
///
/// For a valid scheme this is uniform — every entry `1/v^{s-t}` — whatever
/// `dist_u` is; the function computes the sum honestly rather than
/// returning that constant.
pub fn induced_output_distribution(
    scheme: &RandomizedScheme,
    dist_u: &InputDistribution,
    j: &ColumnSet,
) -> Result<Vec<BigRational>> {
    check_message_dist(scheme, dist_u)?;
    let s = scheme.phi.s();
    let t = scheme.phi.t();
    let positions = j.output_positions(s)?;
    if positions.len() != s - t {
        return Err(Error::ArityMismatch {
            expected: s - t,
            got: positions.len(),
        });
    }
    let full = induced_input_distribution(scheme, dist_u)?;
    let v = scheme.phi.v();
    let mut buckets = vec![BigRational::zero(); v.pow(positions.len() as u32)];
    for x_rank in 0..full.len() {
        let y = indices_of_rank(v, s, scheme.phi.apply_rank(x_rank));
        let j_rank = rank_of_indices(v, &positions.iter().map(|&p| y[p]).collect::<Vec<_>>());
        buckets[j_rank] += full.prob(x_rank);
    }
    Ok(buckets)
}

/// Check, by exact enumeration, that the designated tuple is independent
/// of every `(s-t)`-subset of output coordinates:
/// `Pr[X = u, Y_J = v] = Pr[X = u] Pr[Y_J = v]` for all `J`, `u`, `v`.
///
/// When `t = s` there is no `J` to check (the scheme has no randomness and
/// shows the adversary nothing partial); the verdict passes vacuously.
pub fn verify_randomized_perfect_security(
    scheme: &RandomizedScheme,
    dist_u: &InputDistribution,
) -> Result<SecurityVerdict> {
    check_message_dist(scheme, dist_u)?;
    let s = scheme.phi.s();
    let t = scheme.phi.t();
    if t == s {
        return Ok(SecurityVerdict {
            perfect: Some(true),
            weak: true,
            witness: None,
        });
    }
    let full = induced_input_distribution(scheme, dist_u)?;
    let v = scheme.phi.v();
    let in_positions = scheme.designated.input_positions(s)?;
    let mut perfect_violation: Option<SecurityWitness> = None;
    let mut weak_violation: Option<SecurityWitness> = None;
    for j_cols in (s + 1..=2 * s).combinations(s - t) {
        let output_cols = ColumnSet::new(j_cols, s)?;
        let out_positions = output_cols.output_positions(s)?;
        let table = joint_table(&full, &scheme.phi, &in_positions, &out_positions);
        let in_marg = table.input_marginals();
        let out_marg = table.output_marginals();
        for (u_rank, u_prob) in in_marg.iter().enumerate() {
            for (v_rank, v_prob) in out_marg.iter().enumerate() {
                let joint = table.get(u_rank, v_rank);
                if weak_violation.is_none() && joint.is_zero() {
                    weak_violation = Some(SecurityWitness {
                        kind: WitnessKind::ZeroPosterior,
                        input_cols: scheme.designated.clone(),
                        output_cols: output_cols.clone(),
                        input_tuple: indices_of_rank(v, t, u_rank),
                        output_tuple: indices_of_rank(v, s - t, v_rank),
                        lhs: BigRational::zero(),
                        rhs: u_prob.clone(),
                    });
                }
                if perfect_violation.is_none() {
                    let product = u_prob * v_prob;
                    if *joint != product {
                        perfect_violation = Some(SecurityWitness {
                            kind: WitnessKind::ProductEquality,
                            input_cols: scheme.designated.clone(),
                            output_cols: output_cols.clone(),
                            input_tuple: indices_of_rank(v, t, u_rank),
                            output_tuple: indices_of_rank(v, s - t, v_rank),
                            lhs: joint.clone(),
                            rhs: product,
                        });
                    }
                }
            }
        }
    }
    Ok(SecurityVerdict {
        perfect: Some(perfect_violation.is_none()),
        weak: weak_violation.is_none(),
        witness: perfect_violation.or(weak_violation),
    })
}
