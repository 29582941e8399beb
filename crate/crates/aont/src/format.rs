//! Text formats for transforms and input distributions.
//!
//! Both formats are whitespace-tolerant and allow `#` comments (everything
//! from the first `#` to the end of the line is ignored). Symbols are
//! whitespace-free tokens, so lines split cleanly on whitespace.
//!
//! Array file:
//!
//! ```text
//! aont t=1 s=2 v=3
//! alphabet: a b c
//! a a -> a a
//! a b -> c b
//! ...                # exactly v^s data rows
//! ```
//!
//! Distribution file (the alphabet and arity come from the array file it
//! accompanies):
//!
//! ```text
//! a a : 1/6
//! a b : 1/12
//! ...                # every s-tuple exactly once, rationals summing to 1
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::alphabet::{indices_of_rank, Alphabet};
use crate::dist::InputDistribution;
use crate::error::{Error, Result};
use crate::transform::AontArray;

/// A parsed array file: the claimed protection parameter from the header
/// plus the array itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayFile {
    pub t: usize,
    pub array: AontArray,
}

/// Significant lines with their 1-based line numbers: comments stripped,
/// blank lines skipped.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_header_field(line_no: usize, token: Option<&str>, key: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line_no, format!("missing {key}=<int>")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::parse(line_no, format!("expected {key}=<int>, got {token:?}")))?;
    value
        .parse::<usize>()
        .map_err(|e| Error::parse(line_no, format!("bad value for {key}: {e}")))
}

pub fn parse_array_file(text: &str) -> Result<ArrayFile> {
    let mut lines = significant_lines(text);

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse_eof("empty file; expected an `aont` header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("aont") {
        return Err(Error::parse(header_no, "header must start with `aont`"));
    }
    let t = parse_header_field(header_no, tokens.next(), "t")?;
    let s = parse_header_field(header_no, tokens.next(), "s")?;
    let v = parse_header_field(header_no, tokens.next(), "v")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::parse(
            header_no,
            format!("unexpected token {extra:?} after header fields"),
        ));
    }
    if s == 0 {
        return Err(Error::parse(header_no, "s must be at least 1"));
    }
    if t == 0 || t > s {
        return Err(Error::parse(
            header_no,
            format!("t must satisfy 1 <= t <= s = {s}, got {t}"),
        ));
    }

    let (alpha_no, alpha_line) = lines
        .next()
        .ok_or_else(|| Error::parse_eof("expected an `alphabet:` line"))?;
    let mut tokens = alpha_line.split_whitespace();
    if tokens.next() != Some("alphabet:") {
        return Err(Error::parse(alpha_no, "expected an `alphabet:` line"));
    }
    let symbols: Vec<&str> = tokens.collect();
    if symbols.len() != v {
        return Err(Error::parse(
            alpha_no,
            format!("header declares v={v} symbols, alphabet line lists {}", symbols.len()),
        ));
    }
    let alphabet =
        Alphabet::new(symbols).map_err(|e| Error::parse(alpha_no, e.to_string()))?;
    let n = alphabet
        .tuple_count(s)
        .map_err(|e| Error::parse(header_no, e.to_string()))?;

    let mut rows: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(Error::parse(
                line_no,
                format!("unexpected extra data row; expected exactly {n}"),
            ));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 * s + 1 || tokens[s] != "->" {
            return Err(Error::parse(
                line_no,
                format!("expected `<{s} symbols> -> <{s} symbols>`"),
            ));
        }
        let input = alphabet
            .indices_of(&tokens[..s])
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let output = alphabet
            .indices_of(&tokens[s + 1..])
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let in_rank = input.iter().fold(0, |acc, &d| acc * v + d);
        if seen[in_rank] {
            return Err(Error::parse(line_no, "duplicate input tuple"));
        }
        seen[in_rank] = true;
        rows.push((input, output));
    }
    if rows.len() != n {
        return Err(Error::parse_eof(format!(
            "expected {n} data rows, found {}",
            rows.len()
        )));
    }

    let array = AontArray::from_rows(alphabet, s, &rows)?;
    Ok(ArrayFile { t, array })
}

pub fn write_array_file(t: usize, array: &AontArray) -> String {
    let alphabet = array.alphabet();
    let s = array.s();
    let mut out = String::new();
    let _ = writeln!(out, "aont t={t} s={s} v={}", alphabet.size());
    let symbols: Vec<&str> = alphabet.symbols().collect();
    let _ = writeln!(out, "alphabet: {}", symbols.join(" "));
    for input_rank in 0..array.row_count() {
        let (input, output) = array.row(input_rank);
        let show = |tuple: &[usize]| {
            tuple
                .iter()
                .map(|&d| symbols[d])
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "{} -> {}", show(&input), show(&output));
    }
    out
}

fn parse_rational(line_no: usize, token: &str) -> Result<BigRational> {
    let (num, den) = token
        .split_once('/')
        .ok_or_else(|| Error::parse(line_no, format!("expected <num>/<den>, got {token:?}")))?;
    let parse_int = |text: &str, what: &str| -> Result<BigInt> {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(
                line_no,
                format!("{what} must be a positive integer, got {text:?}"),
            ));
        }
        text.parse::<BigInt>()
            .map_err(|e| Error::parse(line_no, format!("bad {what}: {e}")))
    };
    let num = parse_int(num, "numerator")?;
    let den = parse_int(den, "denominator")?;
    if num.is_zero() || den.is_zero() {
        return Err(Error::parse(
            line_no,
            "numerator and denominator must be positive",
        ));
    }
    Ok(BigRational::new(num, den))
}

/// Parse a distribution over `s`-tuples of `alphabet` symbols. Every tuple
/// must appear exactly once and the probabilities must sum to exactly 1.
pub fn parse_dist_file(
    text: &str,
    alphabet: &Alphabet,
    s: usize,
) -> Result<InputDistribution> {
    let v = alphabet.size();
    let n = alphabet.tuple_count(s)?;
    let mut probs: Vec<Option<BigRational>> = vec![None; n];
    let mut seen: HashSet<usize> = HashSet::new();
    for (line_no, line) in significant_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != s + 2 || tokens[s] != ":" {
            return Err(Error::parse(
                line_no,
                format!("expected `<{s} symbols> : <num>/<den>`"),
            ));
        }
        let tuple = alphabet
            .indices_of(&tokens[..s])
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let rank = tuple.iter().fold(0, |acc, &d| acc * v + d);
        if !seen.insert(rank) {
            return Err(Error::parse(line_no, "duplicate tuple"));
        }
        probs[rank] = Some(parse_rational(line_no, tokens[s + 1])?);
    }
    if seen.len() != n {
        return Err(Error::parse_eof(format!(
            "expected one line per tuple ({n} total), found {}",
            seen.len()
        )));
    }
    let probs: Vec<BigRational> = probs.into_iter().map(Option::unwrap).collect();
    InputDistribution::from_probs(v, s, probs)
}

pub fn write_dist_file(dist: &InputDistribution, alphabet: &Alphabet) -> Result<String> {
    if alphabet.size() != dist.base() {
        return Err(Error::DimensionMismatch(format!(
            "alphabet has {} symbols, distribution is over {}",
            alphabet.size(),
            dist.base()
        )));
    }
    let symbols: Vec<&str> = alphabet.symbols().collect();
    let mut out = String::new();
    for rank in 0..dist.len() {
        let tuple = indices_of_rank(dist.base(), dist.arity(), rank);
        let shown = tuple.iter().map(|&d| symbols[d]).collect::<Vec<_>>().join(" ");
        let p = dist.prob(rank);
        let _ = writeln!(out, "{shown} : {}/{}", p.numer(), p.denom());
    }
    Ok(out)
}
