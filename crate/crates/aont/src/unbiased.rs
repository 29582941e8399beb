//! Unbiasedness of column subsets and the combinatorial AONT verdict.
//!
//! An array is unbiased with respect to a column subset `D` when every
//! `|D|`-tuple over the alphabet occurs exactly `N / v^{|D|}` times among
//! the rows restricted to `D`. A `(t,s,v)`-AONT is an array that is
//! unbiased with respect to three families of subsets: the input columns,
//! the output columns, and every `I ∪ J` with `I` a `t`-subset of the
//! inputs and `J` an `(s-t)`-subset of the outputs.

use itertools::Itertools;

use crate::alphabet::indices_of_rank;
use crate::columns::ColumnSet;
use crate::error::{Error, Result};
use crate::transform::AontArray;

/// Outcome of counting one column subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbiasednessReport {
    pub subset: ColumnSet,
    /// `N / v^{|D|}`.
    pub expected_count: usize,
    pub pass: bool,
    /// Lexicographically least projected tuple whose count is wrong,
    /// with its observed count.
    pub first_violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Symbol indices of the offending `|D|`-tuple, in column order.
    pub tuple: Vec<usize>,
    pub observed: usize,
}

/// Occurrence count of every `|D|`-tuple among the rows restricted to
/// `subset`, indexed by projected tuple rank.
pub fn projection_counts(arr: &AontArray, subset: &ColumnSet) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if subset.len() > arr.s() {
        return Err(Error::SubsetTooLarge {
            len: subset.len(),
            s: arr.s(),
        });
    }
    for &c in subset.indices() {
        if c == 0 || c > 2 * arr.s() {
            return Err(Error::ColumnOutOfRange {
                column: c,
                max: 2 * arr.s(),
            });
        }
    }
    let cells = arr.v().pow(subset.len() as u32);
    let mut counts = vec![0usize; cells];
    for row in 0..arr.row_count() {
        counts[arr.project_rank(row, subset)] += 1;
    }
    Ok(counts)
}

/// Check that every `|D|`-tuple occurs exactly `N / v^{|D|}` times among
/// the rows restricted to `subset`.
pub fn is_unbiased(arr: &AontArray, subset: &ColumnSet) -> Result<UnbiasednessReport> {
    let counts = projection_counts(arr, subset)?;
    let v = arr.v();
    let expected = arr.row_count() / counts.len();
    let first_violation = counts
        .iter()
        .position(|&c| c != expected)
        .map(|rank| Violation {
            tuple: indices_of_rank(v, subset.len(), rank),
            observed: counts[rank],
        });
    Ok(UnbiasednessReport {
        subset: subset.clone(),
        expected_count: expected,
        pass: first_violation.is_none(),
        first_violation,
    })
}

/// How the `I ∪ J` family was covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family3 {
    /// `t = s`: `J` is empty and every `I ∪ J` equals the input-column
    /// family, which is checked separately.
    VacuouslyCovered,
    Checked {
        pairs_checked: usize,
        /// Failing pairs in lexicographic `(I, J)` order. In first-failure
        /// mode this holds at most one entry.
        failures: Vec<PairFailure>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub input_cols: ColumnSet,
    pub output_cols: ColumnSet,
    pub report: UnbiasednessReport,
}

/// Full verdict against the combinatorial definition at parameter `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialReport {
    pub t: usize,
    pub pass: bool,
    /// Unbiasedness of the input columns `{1..s}`.
    pub family1: UnbiasednessReport,
    /// Unbiasedness of the output columns `{s+1..2s}`.
    pub family2: UnbiasednessReport,
    pub family3: Family3,
}

impl CombinatorialReport {
    /// The first failing check in family order, if any.
    pub fn first_failure(&self) -> Option<FailedCheck<'_>> {
        if !self.family1.pass {
            return Some(FailedCheck::Inputs(&self.family1));
        }
        if !self.family2.pass {
            return Some(FailedCheck::Outputs(&self.family2));
        }
        if let Family3::Checked { failures, .. } = &self.family3 {
            if let Some(f) = failures.first() {
                return Some(FailedCheck::Pair(f));
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCheck<'a> {
    Inputs(&'a UnbiasednessReport),
    Outputs(&'a UnbiasednessReport),
    Pair(&'a PairFailure),
}

/// Verify the combinatorial definition, stopping at the first failing
/// `(I, J)` pair.
pub fn verify_aont(arr: &AontArray, t: usize) -> Result<CombinatorialReport> {
    verify_with(arr, t, false)
}

/// Verify the combinatorial definition, recording every failing pair.
pub fn verify_aont_exhaustive(arr: &AontArray, t: usize) -> Result<CombinatorialReport> {
    verify_with(arr, t, true)
}

fn verify_with(arr: &AontArray, t: usize, exhaustive: bool) -> Result<CombinatorialReport> {
    let s = arr.s();
    if t == 0 || t > s {
        return Err(Error::InvalidT { t, max: s });
    }
    let family1 = is_unbiased(arr, &ColumnSet::all_inputs(s))?;
    let family2 = is_unbiased(arr, &ColumnSet::all_outputs(s))?;
    let family3 = if t == s {
        Family3::VacuouslyCovered
    } else {
        let mut pairs_checked = 0;
        let mut failures = Vec::new();
        'pairs: for i_cols in (1..=s).combinations(t) {
            for j_cols in (s + 1..=2 * s).combinations(s - t) {
                let input_cols = ColumnSet::new(i_cols.clone(), s)?;
                let output_cols = ColumnSet::new(j_cols, s)?;
                let subset = input_cols.union(&output_cols)?;
                let report = is_unbiased(arr, &subset)?;
                pairs_checked += 1;
                if !report.pass {
                    failures.push(PairFailure {
                        input_cols,
                        output_cols,
                        report,
                    });
                    if !exhaustive {
                        break 'pairs;
                    }
                }
            }
        }
        Family3::Checked {
            pairs_checked,
            failures,
        }
    };
    let family3_pass = match &family3 {
        Family3::VacuouslyCovered => true,
        Family3::Checked { failures, .. } => failures.is_empty(),
    };
    Ok(CombinatorialReport {
        t,
        pass: family1.pass && family2.pass && family3_pass,
        family1,
        family2,
        family3,
    })
}
