//! Exact-arithmetic toolkit for all-or-nothing transforms (AONTs).
//!
//! A `(t, s, v)`-AONT is a bijection `φ` on `s`-tuples over a `v`-symbol
//! alphabet such that no `s - t` output coordinates give anything away
//! about any `t` input coordinates. This crate decides that property in
//! two equivalent ways and keeps every verdict exact:
//!
//! * [`unbiased`] checks the combinatorial definition on the `(v^s, 2s, v)`
//!   array of `φ`: unbiasedness with respect to the input columns, the
//!   output columns, and every mixed family `I ∪ J` with `|I| = t` and
//!   `|J| = s - t`.
//! * [`security`] analyzes `φ` under an arbitrary rational input
//!   distribution: perfect security (independence of `X_I` and `Y_J`),
//!   weak security (no posterior ever hits zero), plus entropy and mutual
//!   information reports in bits.
//!
//! [`randomized`] runs the protocol that makes the guarantee practical —
//! `t` designated inputs padded with `s - t` fresh uniform symbols — and
//! re-verifies its security by exact enumeration. [`search`] enumerates
//! all small AONTs by pruned backtracking and builds linear candidates
//! over prime fields. [`format`] defines the text formats used by the
//! command-line front end.
//!
//! Probabilities are `BigRational` throughout; `f64` appears only in
//! entropy and mutual-information *reports*, never in a verdict.

pub mod alphabet;
pub mod columns;
pub mod dist;
mod error;
pub mod format;
pub mod randomized;
pub mod search;
pub mod security;
pub mod transform;
pub mod unbiased;

pub use alphabet::Alphabet;
pub use columns::ColumnSet;
pub use dist::InputDistribution;
pub use error::{Error, Result};
pub use transform::{AontArray, Transform};
