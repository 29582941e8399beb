//! Fixtures shared by the integration suites.
#![allow(dead_code)] // each suite uses its own slice of the fixtures

use aont::{Alphabet, InputDistribution, Transform};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn abc() -> Alphabet {
    Alphabet::new(["a", "b", "c"]).unwrap()
}

/// The published (1,2,3) transform over {a,b,c}:
/// aa→aa, ab→cb, ac→bc, ba→bb, bb→ac, bc→ca, ca→cc, cb→ba, cc→ab.
pub fn classic() -> Transform {
    Transform::new(abc(), 2, 1, vec![0, 7, 5, 4, 2, 6, 8, 3, 1]).unwrap()
}

/// x1 uniform and x2 distributed (1/2, 1/4, 1/4), independent.
pub fn skewed_dist() -> InputDistribution {
    InputDistribution::product(
        &abc(),
        &[
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)],
            vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)],
        ],
    )
    .unwrap()
}

/// An all-positive distribution over `v^s` tuples with random integer
/// weights in 1..=99 (normalized exactly).
pub fn random_positive_dist(rng: &mut ChaCha12Rng, v: usize, s: usize) -> InputDistribution {
    let n = v.pow(s as u32);
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(1..100)).collect();
    let total: i64 = weights.iter().sum();
    let probs = weights.iter().map(|&w| ratio(w, total)).collect();
    InputDistribution::from_probs(v, s, probs).unwrap()
}

/// A uniformly random permutation of the output ranks `0..v^s`.
pub fn random_bijection(rng: &mut ChaCha12Rng, v: usize, s: usize) -> Vec<usize> {
    let n = v.pow(s as u32);
    let mut table: Vec<usize> = (0..n).collect();
    table.shuffle(rng);
    table
}

/// Reference decision procedure for the combinatorial definition,
/// restricted to bijections given as permutation tables. Checks, for every
/// `t`-subset `I` of input positions and `(s-t)`-subset `J` of output
/// positions, that no `(x_I, y_J)` value combination repeats across rows —
/// each family spans `s` columns, so its quota per combination is 1.
pub fn naive_is_aont(table: &[usize], t: usize, s: usize, v: usize) -> bool {
    let n = v.pow(s as u32);
    assert_eq!(table.len(), n);
    let digit = |rank: usize, pos: usize| (rank / v.pow((s - 1 - pos) as u32)) % v;
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        // all k-subsets of 0..s, by counting bitmasks
        (0..1usize << s)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..s).filter(|p| m >> p & 1 == 1).collect())
            .collect()
    };
    for i_pos in subsets(t) {
        for j_pos in subsets(s - t) {
            let mut seen = vec![false; n];
            for (x, &y) in table.iter().enumerate() {
                let mut key = 0;
                for &p in &i_pos {
                    key = key * v + digit(x, p);
                }
                for &p in &j_pos {
                    key = key * v + digit(y, p);
                }
                if seen[key] {
                    return false;
                }
                seen[key] = true;
            }
        }
    }
    true
}

/// Count AONTs among all `n!` bijections by brute force.
pub fn naive_count(t: usize, s: usize, v: usize) -> usize {
    use itertools::Itertools;
    let n = v.pow(s as u32);
    (0..n)
        .permutations(n)
        .filter(|table| naive_is_aont(table, t, s, v))
        .count()
}
