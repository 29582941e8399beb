//! Exact security analysis of a transform under an input distribution.
//!
//! All verdicts are decided on exact rationals: perfect security is the
//! product identity `Pr[X_I = u, Y_J = v] = Pr[X_I = u] Pr[Y_J = v]` over
//! every choice of `t` input columns `I`, `s-t` output columns `J` and
//! every pair of tuples `(u, v)`; weak security requires every such joint
//! probability to be strictly positive. Entropies and mutual information
//! are floating-point reports in bits and never feed back into a verdict.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::alphabet::digit_at;
use crate::columns::ColumnSet;
use crate::dist::InputDistribution;
use crate::error::{Error, Result};
use crate::transform::Transform;

/// Mutual-information values in `(-1e-12, 0)` are floating-point noise on
/// an exactly-zero quantity and are reported as 0.
const MI_CLAMP: f64 = 1e-12;

fn check_compat(dist: &InputDistribution, phi: &Transform) -> Result<()> {
    if dist.base() != phi.v() || dist.arity() != phi.s() {
        return Err(Error::DimensionMismatch(format!(
            "distribution is over {}^{} tuples, transform over {}^{}",
            dist.base(),
            dist.arity(),
            phi.v(),
            phi.s()
        )));
    }
    Ok(())
}

fn tuple_rank_checked(v: usize, expected_arity: usize, tuple: &[usize]) -> Result<usize> {
    if tuple.len() != expected_arity {
        return Err(Error::ArityMismatch {
            expected: expected_arity,
            got: tuple.len(),
        });
    }
    let mut rank = 0;
    for &d in tuple {
        if d >= v {
            return Err(Error::SymbolIndexOutOfRange { index: d, size: v });
        }
        rank = rank * v + d;
    }
    Ok(rank)
}

/// Rank of `rank`'s digits restricted to `positions` (0-based, ascending).
fn project(v: usize, arity: usize, rank: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .fold(0, |acc, &p| acc * v + digit_at(v, arity, rank, p))
}

/// `Pr[X_I = u]`: the sum of `Pr[x]` over all `x` with `x_I = u`.
pub fn marginal_input(
    dist: &InputDistribution,
    input_cols: &ColumnSet,
    u: &[usize],
) -> Result<BigRational> {
    let s = dist.arity();
    let v = dist.base();
    let positions = input_cols.input_positions(s)?;
    let u_rank = tuple_rank_checked(v, positions.len(), u)?;
    let mut sum = BigRational::zero();
    for x in 0..dist.len() {
        if project(v, s, x, &positions) == u_rank {
            sum += dist.prob(x);
        }
    }
    Ok(sum)
}

/// `Pr[Y_J = v]`: the sum of `Pr[x]` over all `x` with `φ(x)_J = v`.
pub fn marginal_output(
    dist: &InputDistribution,
    phi: &Transform,
    output_cols: &ColumnSet,
    val: &[usize],
) -> Result<BigRational> {
    check_compat(dist, phi)?;
    let s = phi.s();
    let v = phi.v();
    let positions = output_cols.output_positions(s)?;
    let v_rank = tuple_rank_checked(v, positions.len(), val)?;
    let mut sum = BigRational::zero();
    for x in 0..dist.len() {
        if project(v, s, phi.apply_rank(x), &positions) == v_rank {
            sum += dist.prob(x);
        }
    }
    Ok(sum)
}

/// `Pr[X_I = u, Y_J = v]`: the sum of `Pr[x]` over all `x` with `x_I = u`
/// and `φ(x)_J = v`.
pub fn joint(
    dist: &InputDistribution,
    phi: &Transform,
    input_cols: &ColumnSet,
    output_cols: &ColumnSet,
    u: &[usize],
    val: &[usize],
) -> Result<BigRational> {
    check_compat(dist, phi)?;
    let s = phi.s();
    let v = phi.v();
    let in_positions = input_cols.input_positions(s)?;
    let out_positions = output_cols.output_positions(s)?;
    let u_rank = tuple_rank_checked(v, in_positions.len(), u)?;
    let v_rank = tuple_rank_checked(v, out_positions.len(), val)?;
    let mut sum = BigRational::zero();
    for x in 0..dist.len() {
        if project(v, s, x, &in_positions) == u_rank
            && project(v, s, phi.apply_rank(x), &out_positions) == v_rank
        {
            sum += dist.prob(x);
        }
    }
    Ok(sum)
}

/// Dense joint distribution of `(X_I, Y_J)`, indexed by
/// `u_rank * v^{|J|} + v_rank`.
pub(crate) struct JointTable {
    pub in_cells: usize,
    pub out_cells: usize,
    pub entries: Vec<BigRational>,
}

impl JointTable {
    pub(crate) fn get(&self, u_rank: usize, v_rank: usize) -> &BigRational {
        &self.entries[u_rank * self.out_cells + v_rank]
    }

    pub(crate) fn input_marginals(&self) -> Vec<BigRational> {
        (0..self.in_cells)
            .map(|u| {
                (0..self.out_cells).fold(BigRational::zero(), |acc, v| acc + self.get(u, v))
            })
            .collect()
    }

    pub(crate) fn output_marginals(&self) -> Vec<BigRational> {
        (0..self.out_cells)
            .map(|v| {
                (0..self.in_cells).fold(BigRational::zero(), |acc, u| acc + self.get(u, v))
            })
            .collect()
    }
}

pub(crate) fn joint_table(
    dist: &InputDistribution,
    phi: &Transform,
    in_positions: &[usize],
    out_positions: &[usize],
) -> JointTable {
    let s = phi.s();
    let v = phi.v();
    let in_cells = v.pow(in_positions.len() as u32);
    let out_cells = v.pow(out_positions.len() as u32);
    let mut entries = vec![BigRational::zero(); in_cells * out_cells];
    for x in 0..dist.len() {
        let u_rank = project(v, s, x, in_positions);
        let v_rank = project(v, s, phi.apply_rank(x), out_positions);
        entries[u_rank * out_cells + v_rank] += dist.prob(x);
    }
    JointTable {
        in_cells,
        out_cells,
        entries,
    }
}

/// All values of `Pr[X_I = u]`, indexed by the rank of `u`.
pub fn input_marginal_table(
    dist: &InputDistribution,
    input_cols: &ColumnSet,
) -> Result<Vec<BigRational>> {
    let s = dist.arity();
    let v = dist.base();
    let positions = input_cols.input_positions(s)?;
    let mut table = vec![BigRational::zero(); v.pow(positions.len() as u32)];
    for x in 0..dist.len() {
        table[project(v, s, x, &positions)] += dist.prob(x);
    }
    Ok(table)
}

/// All values of `Pr[Y_J = v]`, indexed by the rank of `v`.
pub fn output_marginal_table(
    dist: &InputDistribution,
    phi: &Transform,
    output_cols: &ColumnSet,
) -> Result<Vec<BigRational>> {
    check_compat(dist, phi)?;
    let s = phi.s();
    let v = phi.v();
    let positions = output_cols.output_positions(s)?;
    let mut table = vec![BigRational::zero(); v.pow(positions.len() as u32)];
    for x in 0..dist.len() {
        table[project(v, s, phi.apply_rank(x), &positions)] += dist.prob(x);
    }
    Ok(table)
}

/// The a posteriori distribution `Pr[X_I = · | Y_J = given]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalTable {
    pub input_cols: ColumnSet,
    pub output_cols: ColumnSet,
    pub given: Vec<usize>,
    /// Indexed by the rank of the input tuple `u`.
    entries: Vec<BigRational>,
}

impl ConditionalTable {
    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn prob(&self, base: usize, u: &[usize]) -> Result<&BigRational> {
        let arity = self.input_cols.len();
        let rank = tuple_rank_checked(base, arity, u)?;
        Ok(&self.entries[rank])
    }
}

pub fn conditional_input_given_output(
    dist: &InputDistribution,
    phi: &Transform,
    input_cols: &ColumnSet,
    output_cols: &ColumnSet,
    given: &[usize],
) -> Result<ConditionalTable> {
    check_compat(dist, phi)?;
    let s = phi.s();
    let v = phi.v();
    let in_positions = input_cols.input_positions(s)?;
    let out_positions = output_cols.output_positions(s)?;
    let v_rank = tuple_rank_checked(v, out_positions.len(), given)?;
    let mut buckets = vec![BigRational::zero(); v.pow(in_positions.len() as u32)];
    let mut total = BigRational::zero();
    for x in 0..dist.len() {
        if project(v, s, phi.apply_rank(x), &out_positions) == v_rank {
            buckets[project(v, s, x, &in_positions)] += dist.prob(x);
            total += dist.prob(x);
        }
    }
    if total.is_zero() {
        return Err(Error::ZeroConditioningEvent);
    }
    let entries: Vec<BigRational> = buckets.into_iter().map(|b| b / &total).collect();
    debug_assert!(entries.iter().fold(BigRational::zero(), |a, b| a + b).is_one());
    Ok(ConditionalTable {
        input_cols: input_cols.clone(),
        output_cols: output_cols.clone(),
        given: given.to_vec(),
        entries,
    })
}

/// Which identity a [`SecurityWitness`] violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `Pr[X_I = u, Y_J = v] != Pr[X_I = u] Pr[Y_J = v]`; `lhs` is the
    /// joint, `rhs` the product.
    ProductEquality,
    /// `Pr[X_I = u | Y_J = v] = 0` while `u` is possible a priori; `lhs`
    /// is the zero posterior, `rhs` the a-priori `Pr[X_I = u]`.
    ZeroPosterior,
}

/// Lexicographically first `(I, J, u, v)` at which a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityWitness {
    pub kind: WitnessKind,
    pub input_cols: ColumnSet,
    pub output_cols: ColumnSet,
    pub input_tuple: Vec<usize>,
    pub output_tuple: Vec<usize>,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

/// Combined verdict of the exact security checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityVerdict {
    /// `None` when `t = s`, where the perfect-security analysis is not
    /// defined (it requires `t < s`).
    pub perfect: Option<bool>,
    pub weak: bool,
    pub witness: Option<SecurityWitness>,
}

struct Scan {
    perfect_violation: Option<SecurityWitness>,
    weak_violation: Option<SecurityWitness>,
}

fn security_scan(
    dist: &InputDistribution,
    phi: &Transform,
    t: usize,
    need_perfect: bool,
) -> Result<Scan> {
    let s = phi.s();
    let v = phi.v();
    let mut scan = Scan {
        perfect_violation: None,
        weak_violation: None,
    };
    'grid: for i_cols in (1..=s).combinations(t) {
        for j_cols in (s + 1..=2 * s).combinations(s - t) {
            let input_cols = ColumnSet::new(i_cols.clone(), s)?;
            let output_cols = ColumnSet::new(j_cols, s)?;
            let in_positions = input_cols.input_positions(s)?;
            let out_positions = output_cols.output_positions(s)?;
            let table = joint_table(dist, phi, &in_positions, &out_positions);
            let in_marg = table.input_marginals();
            let out_marg = table.output_marginals();
            for (u_rank, u_prob) in in_marg.iter().enumerate() {
                for (v_rank, v_prob) in out_marg.iter().enumerate() {
                    let j = table.get(u_rank, v_rank);
                    if scan.weak_violation.is_none() && j.is_zero() {
                        scan.weak_violation = Some(SecurityWitness {
                            kind: WitnessKind::ZeroPosterior,
                            input_cols: input_cols.clone(),
                            output_cols: output_cols.clone(),
                            input_tuple: crate::alphabet::indices_of_rank(v, t, u_rank),
                            output_tuple: crate::alphabet::indices_of_rank(v, s - t, v_rank),
                            lhs: BigRational::zero(),
                            rhs: u_prob.clone(),
                        });
                    }
                    if need_perfect && scan.perfect_violation.is_none() {
                        let product = u_prob * v_prob;
                        if *j != product {
                            scan.perfect_violation = Some(SecurityWitness {
                                kind: WitnessKind::ProductEquality,
                                input_cols: input_cols.clone(),
                                output_cols: output_cols.clone(),
                                input_tuple: crate::alphabet::indices_of_rank(v, t, u_rank),
                                output_tuple: crate::alphabet::indices_of_rank(v, s - t, v_rank),
                                lhs: j.clone(),
                                rhs: product,
                            });
                        }
                    }
                    let perfect_done = !need_perfect || scan.perfect_violation.is_some();
                    if perfect_done && scan.weak_violation.is_some() {
                        break 'grid;
                    }
                }
            }
        }
    }
    Ok(scan)
}

/// Decide perfect security at parameter `t` (requires `1 <= t <= s-1`).
pub fn is_perfectly_secure(
    dist: &InputDistribution,
    phi: &Transform,
    t: usize,
) -> Result<SecurityVerdict> {
    check_compat(dist, phi)?;
    let s = phi.s();
    if t == 0 || t + 1 > s {
        return Err(Error::InvalidT {
            t,
            max: s.saturating_sub(1),
        });
    }
    let scan = security_scan(dist, phi, t, true)?;
    let perfect = scan.perfect_violation.is_none();
    let weak = scan.weak_violation.is_none();
    let witness = scan.perfect_violation.or(scan.weak_violation);
    Ok(SecurityVerdict {
        perfect: Some(perfect),
        weak,
        witness,
    })
}

/// Decide weak security at parameter `t` (requires `1 <= t <= s`).
pub fn is_weakly_secure(
    dist: &InputDistribution,
    phi: &Transform,
    t: usize,
) -> Result<SecurityVerdict> {
    check_compat(dist, phi)?;
    let s = phi.s();
    if t == 0 || t > s {
        return Err(Error::InvalidT { t, max: s });
    }
    let need_perfect = t < s;
    let scan = security_scan(dist, phi, t, need_perfect)?;
    let weak = scan.weak_violation.is_none();
    let witness = scan.weak_violation.or(scan.perfect_violation.clone());
    Ok(SecurityVerdict {
        perfect: if need_perfect {
            Some(scan.perfect_violation.is_none())
        } else {
            None
        },
        weak,
        witness,
    })
}

/// Shannon entropy of a probability vector, in bits. Zero entries
/// contribute nothing (`0 log 0 = 0`).
pub fn entropy(p: &[BigRational]) -> Result<f64> {
    let mut sum = BigRational::zero();
    for q in p {
        if *q < BigRational::zero() {
            return Err(Error::NotADistribution("negative entry".into()));
        }
        sum += q;
    }
    if !sum.is_one() {
        return Err(Error::NotADistribution(format!("entries sum to {sum}, not 1")));
    }
    Ok(p.iter()
        .filter(|q| !q.is_zero())
        .map(|q| {
            let x = q.to_f64().expect("probability fits in f64");
            -x * x.log2()
        })
        .sum())
}

/// `H(X_I | Y_J)` in bits: the output-marginal-weighted entropy of the
/// a posteriori distributions.
pub fn conditional_entropy(
    dist: &InputDistribution,
    phi: &Transform,
    input_cols: &ColumnSet,
    output_cols: &ColumnSet,
) -> Result<f64> {
    check_compat(dist, phi)?;
    let s = phi.s();
    let in_positions = input_cols.input_positions(s)?;
    let out_positions = output_cols.output_positions(s)?;
    let table = joint_table(dist, phi, &in_positions, &out_positions);
    let out_marg = table.output_marginals();
    let mut h = 0.0;
    for (v_rank, pv) in out_marg.iter().enumerate() {
        if pv.is_zero() {
            continue;
        }
        let conditional: Vec<BigRational> = (0..table.in_cells)
            .map(|u_rank| table.get(u_rank, v_rank) / pv)
            .collect();
        h += pv.to_f64().expect("probability fits in f64") * entropy(&conditional)?;
    }
    Ok(h)
}

/// `I(X_I ; Y_J) = H(X_I) - H(X_I | Y_J)` in bits, clamped to 0 when the
/// difference is floating-point noise below [`MI_CLAMP`].
pub fn mutual_information(
    dist: &InputDistribution,
    phi: &Transform,
    input_cols: &ColumnSet,
    output_cols: &ColumnSet,
) -> Result<f64> {
    let h_prior = entropy(&input_marginal_table(dist, input_cols)?)?;
    let h_posterior = conditional_entropy(dist, phi, input_cols, output_cols)?;
    let mi = h_prior - h_posterior;
    if mi < 0.0 && mi > -MI_CLAMP {
        Ok(0.0)
    } else {
        Ok(mi)
    }
}
