//! Exhaustive enumeration of small AONTs by pruned backtracking, and a
//! linear construction over prime-order alphabets.
//!
//! The enumeration's accept/reject predicate is exactly the combinatorial
//! verifier's family set, nothing stronger: a bijection is counted iff its
//! array is unbiased with respect to all outputs and with respect to every
//! `I ∪ J` with `|I| = t` input and `|J| = s - t` output columns. Since
//! every such family spans `s` columns, each value combination may occur
//! at most once among the `v^s` rows, so a branch dies the moment any
//! combination repeats.

use itertools::Itertools;

use crate::alphabet::{checked_tuple_count, digit_at, Alphabet};
use crate::error::{Error, Result};
use crate::transform::Transform;

/// Enumeration refuses instances with more than this many rows: the
/// backtracking depth equals the row count, and anything past this bound
/// could not be exhausted in reasonable time anyway.
pub const SEARCH_SIZE_BOUND: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Count solutions without materializing them.
    CountOnly,
    /// Collect solutions as [`Transform`]s over the digit alphabet.
    Collect,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub t: usize,
    pub s: usize,
    pub v: usize,
    pub mode: SearchMode,
    /// In [`SearchMode::Collect`], stop the whole search once this many
    /// solutions have been collected (the reported count is then a lower
    /// bound and the outcome is marked truncated). Ignored when counting.
    pub limit: Option<usize>,
    /// Fix the image of the first input tuple to the first output tuple.
    /// Solutions come in orbits of size `v^s` under symbol-wise
    /// translation of the output side, so this cuts the count by exactly
    /// that factor while keeping one representative per orbit.
    pub canonical_only: bool,
}

impl SearchSpec {
    pub fn count(t: usize, s: usize, v: usize) -> Self {
        SearchSpec {
            t,
            s,
            v,
            mode: SearchMode::CountOnly,
            limit: None,
            canonical_only: false,
        }
    }

    pub fn collect(t: usize, s: usize, v: usize) -> Self {
        SearchSpec {
            t,
            s,
            v,
            mode: SearchMode::Collect,
            limit: None,
            canonical_only: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Number of solutions seen before the search ended. Exact unless
    /// `truncated` is set.
    pub count: usize,
    /// Collected solutions in enumeration order (empty when counting).
    pub solutions: Vec<Transform>,
    /// True when a collection limit stopped the search early.
    pub truncated: bool,
}

struct Search {
    n: usize,
    out_cells: usize,
    collect: bool,
    limit: Option<usize>,
    /// Per (I, J) pair, the projection key of each input rank onto I.
    pair_in_keys: Vec<Vec<usize>>,
    /// Per (I, J) pair, the projection key of each output rank onto J.
    pair_out_keys: Vec<Vec<usize>>,
    /// Per pair, which (I-key, J-key) combinations are already present.
    pair_used: Vec<Vec<bool>>,
    used_output: Vec<bool>,
    assignment: Vec<usize>,
    count: usize,
    solutions: Vec<Vec<usize>>,
    truncated: bool,
}

impl Search {
    fn feasible(&self, x: usize, y: usize) -> bool {
        if self.used_output[y] {
            return false;
        }
        (0..self.pair_used.len()).all(|p| {
            let key = self.pair_in_keys[p][x] * self.out_cells + self.pair_out_keys[p][y];
            !self.pair_used[p][key]
        })
    }

    fn set_used(&mut self, x: usize, y: usize, used: bool) {
        self.used_output[y] = used;
        for p in 0..self.pair_used.len() {
            let key = self.pair_in_keys[p][x] * self.out_cells + self.pair_out_keys[p][y];
            self.pair_used[p][key] = used;
        }
    }

    /// Depth-first assignment of input rank `x`; returns false to abort
    /// the whole search (collection limit reached).
    fn dfs(&mut self, x: usize, canonical_root: bool) -> bool {
        if x == self.n {
            self.count += 1;
            if self.collect {
                self.solutions.push(self.assignment.clone());
                if Some(self.solutions.len()) == self.limit {
                    self.truncated = true;
                    return false;
                }
            }
            return true;
        }
        let hi = if x == 0 && canonical_root { 1 } else { self.n };
        for y in 0..hi {
            if !self.feasible(x, y) {
                continue;
            }
            self.assignment[x] = y;
            self.set_used(x, y, true);
            let keep_going = self.dfs(x + 1, canonical_root);
            self.set_used(x, y, false);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Enumerate every bijection on `Γ^s` that satisfies the combinatorial
/// definition at `spec.t`, in deterministic order: input ranks ascending,
/// candidate output ranks ascending.
pub fn enumerate_aonts(spec: &SearchSpec) -> Result<SearchOutcome> {
    if spec.v < 2 {
        return Err(Error::AlphabetTooSmall(spec.v));
    }
    if spec.t == 0 || spec.t > spec.s {
        return Err(Error::InvalidT {
            t: spec.t,
            max: spec.s,
        });
    }
    let n = checked_tuple_count(spec.v, spec.s, SEARCH_SIZE_BOUND)?;
    let (s, t, v) = (spec.s, spec.t, spec.v);
    let out_cells = v.pow((s - t) as u32);

    // Precompute projection keys for every (I, J) column pair. At t = s
    // the third family is vacuous and only bijectivity constrains the
    // assignment.
    let mut pair_in_keys = Vec::new();
    let mut pair_out_keys = Vec::new();
    if t < s {
        for i_pos in (0..s).combinations(t) {
            for j_pos in (0..s).combinations(s - t) {
                pair_in_keys.push(
                    (0..n)
                        .map(|x| i_pos.iter().fold(0, |acc, &p| acc * v + digit_at(v, s, x, p)))
                        .collect::<Vec<_>>(),
                );
                pair_out_keys.push(
                    (0..n)
                        .map(|y| j_pos.iter().fold(0, |acc, &p| acc * v + digit_at(v, s, y, p)))
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let pairs = pair_in_keys.len();

    let mut search = Search {
        n,
        out_cells,
        collect: spec.mode == SearchMode::Collect,
        limit: spec.limit,
        pair_in_keys,
        pair_out_keys,
        pair_used: vec![vec![false; n]; pairs],
        used_output: vec![false; n],
        assignment: vec![0; n],
        count: 0,
        solutions: Vec::new(),
        truncated: false,
    };
    if search.collect && spec.limit == Some(0) {
        search.truncated = true;
    } else {
        search.dfs(0, spec.canonical_only);
    }

    let alphabet = Alphabet::of_digits(v)?;
    let solutions = search
        .solutions
        .into_iter()
        .map(|table| Transform::new(alphabet.clone(), s, t, table))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        count: search.count,
        solutions,
        truncated: search.truncated,
    })
}

/// A linear map `x ↦ M·x` over the integers mod a prime `p`.
#[derive(Debug, Clone)]
pub struct LinearSpec {
    pub p: usize,
    pub s: usize,
    /// Row-major `s × s` matrix; entries are reduced mod `p`.
    pub matrix: Vec<Vec<usize>>,
}

fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (u128::from(acc) * u128::from(base) % u128::from(p)) as u64;
        }
        base = (u128::from(base) * u128::from(base) % u128::from(p)) as u64;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn check_invertible(matrix: &[Vec<usize>], s: usize, p: usize) -> Result<()> {
    let p64 = p as u64;
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&e| (e % p) as u64).collect())
        .collect();
    for col in 0..s {
        let pivot = (col..s)
            .find(|&r| m[r][col] != 0)
            .ok_or(Error::SingularMatrix(p))?;
        m.swap(col, pivot);
        let inv = mod_inv(m[col][col], p64);
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let factor = row[col] * inv % p64;
            if factor == 0 {
                continue;
            }
            for (entry, &pivot_entry) in row.iter_mut().zip(&pivot_row).skip(col) {
                let sub = factor * pivot_entry % p64;
                *entry = (*entry + p64 - sub) % p64;
            }
        }
    }
    Ok(())
}

/// Realize the linear map as a [`Transform`] over the digit alphabet
/// `0..p-1`. The claimed protection parameter is set to 1; callers decide
/// what the map actually achieves by running the combinatorial verifier at
/// the `t` they care about.
pub fn linear_aont(spec: &LinearSpec) -> Result<Transform> {
    if !is_prime(spec.p) {
        return Err(Error::NotPrime(spec.p));
    }
    if spec.matrix.len() != spec.s || spec.matrix.iter().any(|row| row.len() != spec.s) {
        return Err(Error::DimensionMismatch(format!(
            "matrix must be {s}×{s}",
            s = spec.s
        )));
    }
    if spec.s == 0 {
        return Err(Error::InvalidT { t: 1, max: 0 });
    }
    check_invertible(&spec.matrix, spec.s, spec.p)?;

    let alphabet = Alphabet::of_digits(spec.p)?;
    let n = alphabet.tuple_count(spec.s)?;
    let (s, p) = (spec.s, spec.p as u64);
    let table = (0..n)
        .map(|x_rank| {
            let mut y_rank = 0u64;
            for row in &spec.matrix {
                let yi = (0..s).fold(0u64, |acc, j| {
                    let e = (row[j] % spec.p) as u64;
                    (acc + e * digit_at(spec.p, s, x_rank, j) as u64) % p
                });
                y_rank = y_rank * p + yi;
            }
            y_rank as usize
        })
        .collect();
    Transform::new(alphabet, spec.s, 1, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unbiased::verify_aont;

    fn count(t: usize, s: usize, v: usize) -> usize {
        enumerate_aonts(&SearchSpec::count(t, s, v)).unwrap().count
    }

    #[test]
    fn no_single_protection_exists_over_two_symbols() {
        assert_eq!(count(1, 2, 2), 0);
    }

    #[test]
    fn degenerate_t_equals_s_accepts_every_bijection() {
        assert_eq!(count(2, 2, 2), 24);
    }

    #[test]
    fn ternary_pairs_enumerate_to_seventy_two() {
        let outcome = enumerate_aonts(&SearchSpec::collect(1, 2, 3)).unwrap();
        assert_eq!(outcome.count, 72);
        assert_eq!(outcome.solutions.len(), 72);
        assert!(!outcome.truncated);
        // the published 3-symbol example is among them
        assert!(outcome
            .solutions
            .iter()
            .any(|phi| phi.table() == [0, 7, 5, 4, 2, 6, 8, 3, 1]));
    }

    #[test]
    fn every_collected_solution_passes_the_verifier() {
        for (t, s, v) in [(1, 2, 3), (2, 2, 2)] {
            let outcome = enumerate_aonts(&SearchSpec::collect(t, s, v)).unwrap();
            assert_eq!(outcome.count, outcome.solutions.len());
            for phi in &outcome.solutions {
                assert!(verify_aont(&phi.to_array(), t).unwrap().pass);
            }
        }
    }

    #[test]
    fn enumeration_order_is_deterministic_and_lexicographic() {
        let a = enumerate_aonts(&SearchSpec::collect(1, 2, 3)).unwrap();
        let b = enumerate_aonts(&SearchSpec::collect(1, 2, 3)).unwrap();
        let tables: Vec<&[usize]> = a.solutions.iter().map(|t| t.table()).collect();
        let tables_b: Vec<&[usize]> = b.solutions.iter().map(|t| t.table()).collect();
        assert_eq!(tables, tables_b);
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_counts_are_one_orbit_representative_each() {
        // symbol-wise translation of the output side acts freely on the
        // solution set, in orbits of size v^s
        let mut spec = SearchSpec::count(1, 2, 3);
        spec.canonical_only = true;
        let canonical = enumerate_aonts(&spec).unwrap().count;
        assert_eq!(canonical, 8);
        assert_eq!(canonical * 9, count(1, 2, 3));

        let mut spec = SearchSpec::count(2, 2, 2);
        spec.canonical_only = true;
        assert_eq!(enumerate_aonts(&spec).unwrap().count, 6);
    }

    #[test]
    fn solution_set_is_closed_under_symbol_relabeling() {
        let outcome = enumerate_aonts(&SearchSpec::collect(1, 2, 3)).unwrap();
        let tables: std::collections::BTreeSet<Vec<usize>> = outcome
            .solutions
            .iter()
            .map(|t| t.table().to_vec())
            .collect();
        // conjugate by the cyclic relabeling 0 -> 1 -> 2 -> 0 on both sides
        let sigma = |d: usize| (d + 1) % 3;
        let relabel_rank = |r: usize| {
            let digits = crate::alphabet::indices_of_rank(3, 2, r);
            digits.iter().fold(0, |acc, &d| acc * 3 + sigma(d))
        };
        for table in &tables {
            let mut conjugate = vec![0; 9];
            for (x, &y) in table.iter().enumerate() {
                conjugate[relabel_rank(x)] = relabel_rank(y);
            }
            assert!(tables.contains(&conjugate));
        }
    }

    #[test]
    fn collection_limit_truncates_the_search() {
        let mut spec = SearchSpec::collect(1, 2, 3);
        spec.limit = Some(3);
        let outcome = enumerate_aonts(&spec).unwrap();
        assert_eq!(outcome.solutions.len(), 3);
        assert_eq!(outcome.count, 3);
        assert!(outcome.truncated);

        spec.limit = Some(100);
        let outcome = enumerate_aonts(&spec).unwrap();
        assert_eq!(outcome.count, 72);
        assert!(!outcome.truncated);

        spec.limit = Some(0);
        let outcome = enumerate_aonts(&spec).unwrap();
        assert_eq!(outcome.count, 0);
        assert!(outcome.truncated);
    }

    #[test]
    fn parameter_bounds_are_enforced() {
        assert!(matches!(
            enumerate_aonts(&SearchSpec::count(0, 2, 3)),
            Err(Error::InvalidT { t: 0, max: 2 })
        ));
        assert!(matches!(
            enumerate_aonts(&SearchSpec::count(3, 2, 3)),
            Err(Error::InvalidT { t: 3, max: 2 })
        ));
        assert!(matches!(
            enumerate_aonts(&SearchSpec::count(1, 2, 1)),
            Err(Error::AlphabetTooSmall(1))
        ));
        assert!(matches!(
            enumerate_aonts(&SearchSpec::count(1, 13, 2)),
            Err(Error::SizeBoundExceeded { .. })
        ));
    }

    #[test]
    fn linear_map_over_gf3_yields_a_verified_aont() {
        let spec = LinearSpec {
            p: 3,
            s: 2,
            matrix: vec![vec![1, 1], vec![1, 2]],
        };
        let phi = linear_aont(&spec).unwrap();
        assert!(verify_aont(&phi.to_array(), 1).unwrap().pass);
    }

    #[test]
    fn identity_matrix_is_a_bijection_but_not_an_aont() {
        let spec = LinearSpec {
            p: 3,
            s: 2,
            matrix: vec![vec![1, 0], vec![0, 1]],
        };
        let phi = linear_aont(&spec).unwrap();
        assert!(!verify_aont(&phi.to_array(), 1).unwrap().pass);
    }

    #[test]
    fn no_binary_linear_map_protects_a_single_input() {
        // exhaust all sixteen 2x2 matrices mod 2: exactly six are
        // invertible, and none of their transforms passes at t = 1,
        // consistent with the empty (1,2,2) enumeration
        let mut invertible = 0;
        for bits in 0..16usize {
            let matrix = vec![
                vec![bits & 1, (bits >> 1) & 1],
                vec![(bits >> 2) & 1, (bits >> 3) & 1],
            ];
            let spec = LinearSpec { p: 2, s: 2, matrix };
            match linear_aont(&spec) {
                Ok(phi) => {
                    invertible += 1;
                    assert!(!verify_aont(&phi.to_array(), 1).unwrap().pass);
                }
                Err(Error::SingularMatrix(2)) => {}
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
        assert_eq!(invertible, 6);
    }

    #[test]
    fn singular_and_composite_moduli_are_rejected() {
        let spec = LinearSpec {
            p: 3,
            s: 2,
            matrix: vec![vec![1, 2], vec![2, 4]],
        };
        assert_eq!(linear_aont(&spec).unwrap_err(), Error::SingularMatrix(3));
        let spec = LinearSpec {
            p: 4,
            s: 2,
            matrix: vec![vec![1, 0], vec![0, 1]],
        };
        assert_eq!(linear_aont(&spec).unwrap_err(), Error::NotPrime(4));
        let spec = LinearSpec {
            p: 3,
            s: 2,
            matrix: vec![vec![1, 0]],
        };
        assert!(matches!(
            linear_aont(&spec).unwrap_err(),
            Error::DimensionMismatch(_)
        ));
    }

    #[test]
    fn matrix_entries_are_reduced_mod_p() {
        let a = LinearSpec {
            p: 3,
            s: 2,
            matrix: vec![vec![1, 1], vec![1, 2]],
        };
        let b = LinearSpec {
            p: 3,
            s: 2,
            matrix: vec![vec![4, 7], vec![10, 5]],
        };
        assert_eq!(
            linear_aont(&a).unwrap().table(),
            linear_aont(&b).unwrap().table()
        );
    }
}
