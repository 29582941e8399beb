//! Transforms on `Γ^s` and their array representation.
//!
//! A [`Transform`] is a bijection stored as a permutation of tuple ranks.
//! An [`AontArray`] is the `(v^s, 2s, v)` array whose rows pair every input
//! tuple with an output tuple; its input side must enumerate every tuple
//! exactly once, but its output side is unconstrained until verified.

use crate::alphabet::{digit_at, indices_of_rank, rank_of_indices, Alphabet};
use crate::columns::ColumnSet;
use crate::error::{Error, Result};

/// A bijection `φ : Γ^s → Γ^s` with a claimed protection parameter `t`.
///
/// `t` is carried for bookkeeping only; nothing is checked against it until
/// the transform is verified, so the same map can be tested at several `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    alphabet: Alphabet,
    s: usize,
    t: usize,
    table: Vec<usize>,
}

impl Transform {
    /// `table[input_rank] = output_rank`; must be a permutation of `0..v^s`.
    pub fn new(alphabet: Alphabet, s: usize, t: usize, table: Vec<usize>) -> Result<Self> {
        if s == 0 || t == 0 || t > s {
            return Err(Error::InvalidT { t, max: s });
        }
        let n = alphabet.tuple_count(s)?;
        if table.len() != n {
            return Err(Error::WrongRowCount {
                expected: n,
                got: table.len(),
            });
        }
        let mut seen = vec![false; n];
        for &o in &table {
            if o >= n {
                return Err(Error::RankOutOfRange {
                    value: o,
                    arity: s,
                    base: alphabet.size(),
                });
            }
            if seen[o] {
                return Err(Error::NotABijection { duplicate: o });
            }
            seen[o] = true;
        }
        Ok(Transform {
            alphabet,
            s,
            t,
            table,
        })
    }

    /// Same map with a different claimed `t`.
    pub fn with_claimed_t(&self, t: usize) -> Result<Self> {
        if t == 0 || t > self.s {
            return Err(Error::InvalidT { t, max: self.s });
        }
        Ok(Transform {
            alphabet: self.alphabet.clone(),
            s: self.s,
            t,
            table: self.table.clone(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn v(&self) -> usize {
        self.alphabet.size()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of input tuples, `v^s`.
    pub fn tuple_count(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_rank(&self, input_rank: usize) -> usize {
        self.table[input_rank]
    }

    pub fn apply(&self, input: &[usize]) -> Result<Vec<usize>> {
        if input.len() != self.s {
            return Err(Error::ArityMismatch {
                expected: self.s,
                got: input.len(),
            });
        }
        for &d in input {
            if d >= self.v() {
                return Err(Error::SymbolIndexOutOfRange {
                    index: d,
                    size: self.v(),
                });
            }
        }
        let out = self.table[rank_of_indices(self.v(), input)];
        Ok(indices_of_rank(self.v(), self.s, out))
    }

    /// `inverse[output_rank] = input_rank`.
    pub fn inverse_table(&self) -> Vec<usize> {
        let mut inv = vec![0; self.table.len()];
        for (i, &o) in self.table.iter().enumerate() {
            inv[o] = i;
        }
        inv
    }

    /// The array representation: one row per input tuple, in rank order.
    pub fn to_array(&self) -> AontArray {
        AontArray {
            alphabet: self.alphabet.clone(),
            s: self.s,
            outputs: self.table.clone(),
        }
    }
}

/// The `(v^s, 2s, v)` array representation. Rows are stored in input-rank
/// order; columns `1..=s` hold the input tuple, `s+1..=2s` the output tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AontArray {
    alphabet: Alphabet,
    s: usize,
    /// `outputs[input_rank] = output_rank`. Arbitrary values; duplicates
    /// mean the array does not define a bijection.
    outputs: Vec<usize>,
}

impl AontArray {
    /// Build from explicit rows of symbol indices. The input sides must
    /// enumerate every `s`-tuple exactly once; row order is normalized to
    /// input-rank order.
    pub fn from_rows(
        alphabet: Alphabet,
        s: usize,
        rows: &[(Vec<usize>, Vec<usize>)],
    ) -> Result<Self> {
        let n = alphabet.tuple_count(s)?;
        if rows.len() != n {
            return Err(Error::WrongRowCount {
                expected: n,
                got: rows.len(),
            });
        }
        let v = alphabet.size();
        let mut outputs = vec![usize::MAX; n];
        for (input, output) in rows {
            for side in [input, output] {
                if side.len() != s {
                    return Err(Error::ArityMismatch {
                        expected: s,
                        got: side.len(),
                    });
                }
                for &d in side.iter() {
                    if d >= v {
                        return Err(Error::SymbolIndexOutOfRange { index: d, size: v });
                    }
                }
            }
            let in_rank = rank_of_indices(v, input);
            if outputs[in_rank] != usize::MAX {
                return Err(Error::DuplicateInputTuple { rank: in_rank });
            }
            outputs[in_rank] = rank_of_indices(v, output);
        }
        Ok(AontArray {
            alphabet,
            s,
            outputs,
        })
    }

    /// Build directly from `outputs[input_rank] = output_rank`.
    pub fn from_output_ranks(alphabet: Alphabet, s: usize, outputs: Vec<usize>) -> Result<Self> {
        let n = alphabet.tuple_count(s)?;
        if outputs.len() != n {
            return Err(Error::WrongRowCount {
                expected: n,
                got: outputs.len(),
            });
        }
        for &o in &outputs {
            if o >= n {
                return Err(Error::RankOutOfRange {
                    value: o,
                    arity: s,
                    base: alphabet.size(),
                });
            }
        }
        Ok(AontArray {
            alphabet,
            s,
            outputs,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn v(&self) -> usize {
        self.alphabet.size()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `N = v^s`.
    pub fn row_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn output_rank(&self, input_rank: usize) -> usize {
        self.outputs[input_rank]
    }

    /// Row `input_rank` as `(input indices, output indices)`.
    pub fn row(&self, input_rank: usize) -> (Vec<usize>, Vec<usize>) {
        let v = self.v();
        (
            indices_of_rank(v, self.s, input_rank),
            indices_of_rank(v, self.s, self.outputs[input_rank]),
        )
    }

    /// Rank of row `input_rank` restricted to `cols`, in column order.
    pub fn project_rank(&self, input_rank: usize, cols: &ColumnSet) -> usize {
        let v = self.v();
        let o = self.outputs[input_rank];
        cols.indices().iter().fold(0, |acc, &c| {
            let d = if c <= self.s {
                digit_at(v, self.s, input_rank, c - 1)
            } else {
                digit_at(v, self.s, o, c - self.s - 1)
            };
            acc * v + d
        })
    }

    /// The transform defined by reading each row as `φ(inputs) = outputs`,
    /// claiming parameter `t`. Fails if any output tuple repeats.
    pub fn to_transform(&self, t: usize) -> Result<Transform> {
        Transform::new(self.alphabet.clone(), self.s, t, self.outputs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The (1,2,3)-AONT used as the running small example: over {a,b,c},
    /// (a,a)->(a,a), (a,b)->(c,b), (a,c)->(b,c), (b,a)->(b,b), (b,b)->(a,c),
    /// (b,c)->(c,a), (c,a)->(c,c), (c,b)->(b,a), (c,c)->(a,b).
    fn classic() -> Transform {
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        Transform::new(al, 2, 1, vec![0, 7, 5, 4, 2, 6, 8, 3, 1]).unwrap()
    }

    fn identity22() -> Transform {
        let al = Alphabet::of_digits(2).unwrap();
        Transform::new(al, 2, 1, (0..4).collect()).unwrap()
    }

    #[test]
    fn array_rows_pair_inputs_with_outputs() {
        let phi = classic();
        let arr = phi.to_array();
        // input (a,b) has rank 1 and maps to (c,b)
        let (input, output) = arr.row(1);
        assert_eq!(input, vec![0, 1]);
        assert_eq!(output, vec![2, 1]);
        // input (c,c) maps to (a,b)
        let (input, output) = arr.row(8);
        assert_eq!(input, vec![2, 2]);
        assert_eq!(output, vec![0, 1]);
        // identity maps (0,1) to (0,1)
        let arr = identity22().to_array();
        assert_eq!(arr.row(1), (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn transform_array_round_trip() {
        let phi = classic();
        let back = phi.to_array().to_transform(phi.t()).unwrap();
        assert_eq!(back, phi);
        let id = identity22();
        assert_eq!(id.to_array().to_transform(1).unwrap(), id);
    }

    #[test]
    fn constant_output_is_not_a_bijection() {
        let al = Alphabet::of_digits(2).unwrap();
        // both (0,0) and (0,1) map to (0,0)
        let arr = AontArray::from_output_ranks(al, 2, vec![0, 0, 3, 2]).unwrap();
        assert_eq!(
            arr.to_transform(1).unwrap_err(),
            Error::NotABijection { duplicate: 0 }
        );
    }

    #[test]
    fn from_rows_rejects_duplicate_inputs() {
        let al = Alphabet::of_digits(2).unwrap();
        let rows = vec![
            (vec![0, 0], vec![0, 0]),
            (vec![0, 0], vec![0, 1]),
            (vec![1, 0], vec![1, 0]),
            (vec![1, 1], vec![1, 1]),
        ];
        assert_eq!(
            AontArray::from_rows(al, 2, &rows).unwrap_err(),
            Error::DuplicateInputTuple { rank: 0 }
        );
    }

    #[test]
    fn projection_follows_column_order() {
        let phi = classic();
        let arr = phi.to_array();
        // row 1: inputs (a,b) = (0,1), outputs (c,b) = (2,1)
        let d = ColumnSet::new([1, 4], 2).unwrap(); // (x1, y2)
        assert_eq!(arr.project_rank(1, &d), 1); // digits (0, 1), base 3
        let d = ColumnSet::new([2, 3], 2).unwrap(); // (x2, y1)
        assert_eq!(arr.project_rank(1, &d), 5); // digits (1, 2), base 3
    }

    #[test]
    fn apply_and_inverse_agree() {
        let phi = classic();
        let out = phi.apply(&[0, 1]).unwrap();
        assert_eq!(out, vec![2, 1]);
        let inv = phi.inverse_table();
        for i in 0..phi.tuple_count() {
            assert_eq!(inv[phi.apply_rank(i)], i);
        }
    }
}
