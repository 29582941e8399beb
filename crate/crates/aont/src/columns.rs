//! Column subsets of the `2s`-column array representation.
//!
//! Columns are 1-based: `1..=s` are the input coordinates, `s+1..=2s` the
//! output coordinates.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSet {
    indices: Vec<usize>,
}

impl ColumnSet {
    /// Build a subset of the columns of an array with `s` input columns.
    /// Indices must be distinct and within `1..=2s`; they are kept sorted.
    pub fn new<I: IntoIterator<Item = usize>>(indices: I, s: usize) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        for pair in indices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateColumn(pair[0]));
            }
        }
        for &c in &indices {
            if c == 0 || c > 2 * s {
                return Err(Error::ColumnOutOfRange {
                    column: c,
                    max: 2 * s,
                });
            }
        }
        Ok(ColumnSet { indices })
    }

    /// Input columns `1..=s`.
    pub fn all_inputs(s: usize) -> Self {
        ColumnSet {
            indices: (1..=s).collect(),
        }
    }

    /// Output columns `s+1..=2s`.
    pub fn all_outputs(s: usize) -> Self {
        ColumnSet {
            indices: (s + 1..=2 * s).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, column: usize) -> bool {
        self.indices.binary_search(&column).is_ok()
    }

    pub fn union(&self, other: &ColumnSet) -> Result<ColumnSet> {
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        indices.sort_unstable();
        for pair in indices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateColumn(pair[0]));
            }
        }
        Ok(ColumnSet { indices })
    }

    /// 0-based input positions, failing if any column is on the output side.
    pub fn input_positions(&self, s: usize) -> Result<Vec<usize>> {
        self.indices
            .iter()
            .map(|&c| {
                if c >= 1 && c <= s {
                    Ok(c - 1)
                } else {
                    Err(Error::NotAnInputColumn { column: c, s })
                }
            })
            .collect()
    }

    /// 0-based output positions, failing if any column is on the input side.
    pub fn output_positions(&self, s: usize) -> Result<Vec<usize>> {
        self.indices
            .iter()
            .map(|&c| {
                if c > s && c <= 2 * s {
                    Ok(c - s - 1)
                } else {
                    Err(Error::NotAnOutputColumn {
                        column: c,
                        lo: s + 1,
                        hi: 2 * s,
                    })
                }
            })
            .collect()
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_sorts_and_validates() {
        let d = ColumnSet::new([4, 1], 2).unwrap();
        assert_eq!(d.indices(), &[1, 4]);
        assert!(matches!(
            ColumnSet::new([1, 1], 2),
            Err(Error::DuplicateColumn(1))
        ));
        assert!(matches!(
            ColumnSet::new([5], 2),
            Err(Error::ColumnOutOfRange { column: 5, max: 4 })
        ));
        assert!(matches!(
            ColumnSet::new([0], 2),
            Err(Error::ColumnOutOfRange { column: 0, .. })
        ));
    }

    #[test]
    fn side_projections() {
        let s = 3;
        let i = ColumnSet::new([1, 3], s).unwrap();
        assert_eq!(i.input_positions(s).unwrap(), vec![0, 2]);
        assert!(i.output_positions(s).is_err());
        let j = ColumnSet::new([4, 6], s).unwrap();
        assert_eq!(j.output_positions(s).unwrap(), vec![0, 2]);
        assert!(j.input_positions(s).is_err());
    }

    #[test]
    fn display_is_braced_list() {
        let d = ColumnSet::new([2, 4], 2).unwrap();
        assert_eq!(d.to_string(), "{2,4}");
        assert_eq!(ColumnSet::new([], 2).unwrap().to_string(), "{}");
    }
}
