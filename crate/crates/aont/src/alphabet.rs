//! Alphabets and the canonical ranking of tuples over them.
//!
//! A tuple is ranked in mixed radix with the leftmost coordinate most
//! significant, so ranks enumerate tuples in lexicographic order of their
//! symbol indices. All per-tuple quantities elsewhere in the crate are
//! indexed by these ranks.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Operations refuse to enumerate more than this many tuples unless the
/// caller raises the bound explicitly (see [`Alphabet::tuple_count_bounded`]).
pub const DEFAULT_SIZE_BOUND: usize = 1 << 24;

/// An ordered set of distinct symbol tokens. Declaration order defines the
/// symbol-to-index bijection.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, sym) in symbols.iter().enumerate() {
            // keep symbols unambiguous in the whitespace-separated text formats
            if sym.is_empty()
                || sym.contains(char::is_whitespace)
                || sym.contains('#')
                || sym == "->"
                || sym == ":"
            {
                return Err(Error::InvalidSymbol(sym.clone()));
            }
            if index.insert(sym.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(sym.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// The alphabet `0, 1, ..., v-1` with decimal symbol tokens.
    pub fn of_digits(v: usize) -> Result<Self> {
        Alphabet::new((0..v).map(|d| d.to_string()))
    }

    /// Number of symbols, `v`.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, index: usize) -> Result<&str> {
        self.symbols
            .get(index)
            .map(String::as_str)
            .ok_or(Error::SymbolIndexOutOfRange {
                index,
                size: self.symbols.len(),
            })
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// `v^arity`, refusing sizes above [`DEFAULT_SIZE_BOUND`].
    pub fn tuple_count(&self, arity: usize) -> Result<usize> {
        self.tuple_count_bounded(arity, DEFAULT_SIZE_BOUND)
    }

    /// `v^arity`, refusing sizes above `bound`.
    pub fn tuple_count_bounded(&self, arity: usize, bound: usize) -> Result<usize> {
        checked_tuple_count(self.size(), arity, bound)
    }

    /// Translate a tuple of symbol tokens into symbol indices.
    pub fn indices_of<S: AsRef<str>>(&self, tuple: &[S]) -> Result<Vec<usize>> {
        tuple.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    /// Translate symbol indices back into tokens.
    pub fn tuple_of_indices(&self, indices: &[usize]) -> Result<Vec<&str>> {
        indices.iter().map(|&i| self.symbol(i)).collect()
    }
}

pub(crate) fn checked_tuple_count(v: usize, arity: usize, bound: usize) -> Result<usize> {
    let err = Error::SizeBoundExceeded { v, arity, bound };
    let count = v
        .checked_pow(u32::try_from(arity).map_err(|_| err.clone())?)
        .ok_or(err.clone())?;
    if count > bound {
        return Err(err);
    }
    Ok(count)
}

/// The canonical rank of a `k`-tuple over a `v`-symbol alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TupleRank {
    value: usize,
    arity: usize,
    base: usize,
}

impl TupleRank {
    pub fn new(value: usize, arity: usize, base: usize) -> Result<Self> {
        let max = checked_tuple_count(base, arity, usize::MAX)?;
        if value >= max {
            return Err(Error::RankOutOfRange { value, arity, base });
        }
        Ok(TupleRank { value, arity, base })
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> usize {
        self.base
    }
}

/// Rank a tuple of symbol tokens.
pub fn rank_tuple<S: AsRef<str>>(alphabet: &Alphabet, tuple: &[S]) -> Result<TupleRank> {
    let indices = alphabet.indices_of(tuple)?;
    Ok(TupleRank {
        value: rank_of_indices(alphabet.size(), &indices),
        arity: tuple.len(),
        base: alphabet.size(),
    })
}

/// Recover the tuple of symbol tokens from a rank. Inverse of [`rank_tuple`].
pub fn unrank_tuple(alphabet: &Alphabet, rank: TupleRank) -> Result<Vec<&str>> {
    if rank.base != alphabet.size() {
        return Err(Error::DimensionMismatch(format!(
            "rank is over a {}-symbol alphabet, this alphabet has {} symbols",
            rank.base,
            alphabet.size()
        )));
    }
    let indices = indices_of_rank(rank.base, rank.arity, rank.value);
    alphabet.tuple_of_indices(&indices)
}

/// Mixed-radix rank of a tuple of symbol indices, leftmost most significant.
pub fn rank_of_indices(base: usize, indices: &[usize]) -> usize {
    indices.iter().fold(0, |acc, &d| acc * base + d)
}

/// Digits of `rank` as an `arity`-tuple of symbol indices.
pub fn indices_of_rank(base: usize, arity: usize, rank: usize) -> Vec<usize> {
    let mut digits = vec![0; arity];
    let mut r = rank;
    for slot in digits.iter_mut().rev() {
        *slot = r % base;
        r /= base;
    }
    digits
}

/// Digit `pos` (0-based from the left) of `rank` seen as an `arity`-tuple.
pub(crate) fn digit_at(base: usize, arity: usize, rank: usize, pos: usize) -> usize {
    debug_assert!(pos < arity);
    let shift = arity - 1 - pos;
    (rank / base.pow(shift as u32)) % base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn rejects_tiny_and_duplicate_alphabets() {
        assert_eq!(Alphabet::new(["a"]).unwrap_err(), Error::AlphabetTooSmall(1));
        assert_eq!(
            Alphabet::new(["a", "b", "a"]).unwrap_err(),
            Error::DuplicateSymbol("a".into())
        );
    }

    #[test]
    fn rejects_symbols_that_break_the_text_formats() {
        for bad in ["", "a b", "x\t", "#", "c#", "->", ":"] {
            assert_eq!(
                Alphabet::new([bad, "ok"]).unwrap_err(),
                Error::InvalidSymbol(bad.into()),
                "symbol {bad:?} should be rejected"
            );
        }
        // multi-character tokens without separators are fine
        assert!(Alphabet::new(["10", "11", ":-)"]).is_ok());
    }

    #[test]
    fn rank_examples() {
        let al = abc();
        assert_eq!(rank_tuple(&al, &["a", "a"]).unwrap().value(), 0);
        assert_eq!(rank_tuple(&al, &["c", "c"]).unwrap().value(), 8);
        // enumerate all nine pairs in mixed-radix order and locate (b, a)
        let mut expected = None;
        let mut k = 0;
        for x1 in ["a", "b", "c"] {
            for x2 in ["a", "b", "c"] {
                if (x1, x2) == ("b", "a") {
                    expected = Some(k);
                }
                k += 1;
            }
        }
        assert_eq!(
            rank_tuple(&al, &["b", "a"]).unwrap().value(),
            expected.unwrap()
        );
        assert_eq!(rank_tuple(&al, &["b", "a"]).unwrap().value(), 3);
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let al = abc();
        assert_eq!(
            rank_tuple(&al, &["a", "d"]).unwrap_err(),
            Error::UnknownSymbol("d".into())
        );
    }

    #[test]
    fn unrank_inverts_rank_exhaustively() {
        // every alphabet/arity combination with at most 10^4 tuples
        for v in 2..=5 {
            let al = Alphabet::of_digits(v).unwrap();
            for arity in 1..=4 {
                let n = al.tuple_count(arity).unwrap();
                if n > 10_000 {
                    continue;
                }
                for r in 0..n {
                    let rank = TupleRank::new(r, arity, v).unwrap();
                    let tuple = unrank_tuple(&al, rank).unwrap();
                    assert_eq!(rank_tuple(&al, &tuple).unwrap(), rank);
                }
            }
        }
    }

    #[test]
    fn size_bound_is_enforced() {
        let al = Alphabet::of_digits(2).unwrap();
        assert!(matches!(
            al.tuple_count(25),
            Err(Error::SizeBoundExceeded { .. })
        ));
        assert_eq!(al.tuple_count_bounded(25, 1 << 25).unwrap(), 1 << 25);
    }

    #[test]
    fn digit_extraction_matches_unrank() {
        for rank in 0..27 {
            let digits = indices_of_rank(3, 3, rank);
            for (pos, &digit) in digits.iter().enumerate() {
                assert_eq!(digit_at(3, 3, rank, pos), digit);
            }
            assert_eq!(rank_of_indices(3, &digits), rank);
        }
    }
}
