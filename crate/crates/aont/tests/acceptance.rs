//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every probability assertion is exact rational equality unless the
//! criterion itself states a floating-point tolerance.

mod common;

use std::time::{Duration, Instant};

use aont::columns::ColumnSet;
use aont::randomized::{
    induced_input_distribution, induced_output_distribution,
    verify_randomized_perfect_security, RandomizedScheme,
};
use aont::search::{enumerate_aonts, SearchSpec};
use aont::security::{
    conditional_entropy, conditional_input_given_output, entropy, is_perfectly_secure,
    is_weakly_secure, marginal_output, mutual_information,
};
use aont::unbiased::verify_aont;
use aont::{Alphabet, InputDistribution, Transform};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use common::{
    skewed_dist, naive_count, random_bijection, random_positive_dist, ratio, classic,
};

struct Criterion {
    num: u32,
    desc: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(num: u32, desc: &'static str) -> Self {
        Criterion {
            num,
            desc,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn finish(self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("acceptance criterion {}: {} — {}", self.num, status, self.desc);
        assert!(
            self.failures.is_empty(),
            "criterion {} failed checks: {:?}",
            self.num,
            self.failures
        );
    }
}

fn uniform_third() -> Vec<BigRational> {
    vec![ratio(1, 3); 3]
}

#[test]
fn criterion_1_published_array_verifies_instantly() {
    let mut c = Criterion::new(1, "published (1,2,3) array passes the verifier, < 1 ms");
    let arr = classic().to_array();
    let warmup = verify_aont(&arr, 1).unwrap();
    c.check("verifier passes", warmup.pass);
    let start = Instant::now();
    let report = verify_aont(&arr, 1).unwrap();
    let elapsed = start.elapsed();
    c.check("verdict stable", report.pass);
    c.check(
        format!("runtime {elapsed:?} under 1 ms"),
        elapsed < Duration::from_millis(1),
    );
    c.finish();
}

#[test]
fn criterion_2_uniform_input_gives_flat_posteriors_and_perfect_security() {
    let mut c = Criterion::new(2, "uniform input: flat a posteriori, perfect security");
    let phi = classic();
    let uniform = InputDistribution::uniform(phi.alphabet(), 2).unwrap();
    let x1 = ColumnSet::new([1], 2).unwrap();
    let y2 = ColumnSet::new([4], 2).unwrap();
    let posterior = conditional_input_given_output(&uniform, &phi, &x1, &y2, &[0]).unwrap();
    c.check(
        "Pr[X_1 = . | Y_2 = a] = (1/3, 1/3, 1/3)",
        posterior.entries() == uniform_third(),
    );
    let verdict = is_perfectly_secure(&uniform, &phi, 1).unwrap();
    c.check("perfect security passes", verdict.perfect == Some(true));
    c.finish();
}

#[test]
fn criterion_3_skewed_input_reproduces_the_worked_posteriors_exactly() {
    let mut c = Criterion::new(3, "skewed input: exact posteriors, perfect fails, weak holds");
    let phi = classic();
    let dist = skewed_dist();
    let y2 = ColumnSet::new([4], 2).unwrap();
    c.check(
        "Pr[Y_2 = a] = 1/3",
        marginal_output(&dist, &phi, &y2, &[0]).unwrap() == ratio(1, 3),
    );
    let expected = vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)];
    for i in [1usize, 2] {
        let i_cols = ColumnSet::new([i], 2).unwrap();
        let posterior =
            conditional_input_given_output(&dist, &phi, &i_cols, &y2, &[0]).unwrap();
        c.check(
            format!("Pr[X_{i} = . | Y_2 = a] = (1/2, 1/4, 1/4)"),
            posterior.entries() == expected,
        );
    }
    let verdict = is_perfectly_secure(&dist, &phi, 1).unwrap();
    c.check("perfect security fails", verdict.perfect == Some(false));
    let verdict = is_weakly_secure(&dist, &phi, 1).unwrap();
    c.check("weak security passes", verdict.weak);
    c.finish();
}

#[test]
fn criterion_4_every_enumerated_aont_is_perfectly_secure_under_uniform_input() {
    let mut c = Criterion::new(4, "all enumerated (1,2,3)-AONTs: uniform ⇒ perfect security");
    let start = Instant::now();
    let outcome = enumerate_aonts(&SearchSpec::collect(1, 2, 3)).unwrap();
    c.check("full enumeration finds 72 transforms", outcome.count == 72);
    c.check("nothing truncated", !outcome.truncated);
    let uniform = InputDistribution::uniform(&Alphabet::of_digits(3).unwrap(), 2).unwrap();
    let mut all_perfect = true;
    for phi in &outcome.solutions {
        let verdict = is_perfectly_secure(&uniform, phi, 1).unwrap();
        all_perfect &= verdict.perfect == Some(true);
    }
    c.check("every solution is perfectly secure", all_perfect);
    let elapsed = start.elapsed();
    c.check(
        format!("runtime {elapsed:?} under 10 minutes"),
        elapsed < Duration::from_secs(600),
    );
    c.finish();
}

#[test]
fn criterion_5_nonuniform_inputs_always_break_perfect_security() {
    let mut c = Criterion::new(5, "perfect security fails off the uniform point");
    let phi = classic();
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 100 {
        let dist = random_positive_dist(&mut rng, 3, 2);
        if dist.is_uniform() {
            continue; // astronomically unlikely, but the criterion wants non-uniform
        }
        tested += 1;
        let verdict = is_perfectly_secure(&dist, &phi, 1).unwrap();
        if verdict.perfect != Some(false) {
            c.check(format!("random distribution #{tested} must fail"), false);
        }
    }
    c.check("tested 100 random non-uniform distributions", tested == 100);

    // one-parameter family through uniform: move k/90 of mass from the
    // last tuple to the first; only k = 0 may pass
    for k in -5i64..=5 {
        let mut probs = vec![ratio(1, 9); 9];
        probs[0] = ratio(1, 9) + ratio(k, 90);
        probs[8] = ratio(1, 9) - ratio(k, 90);
        let dist = InputDistribution::from_probs(3, 2, probs).unwrap();
        let verdict = is_perfectly_secure(&dist, &phi, 1).unwrap();
        c.check(
            format!("family point k={k} passes iff k=0"),
            verdict.perfect == Some(k == 0),
        );
    }
    c.finish();
}

#[test]
fn criterion_6_weak_security_agrees_with_the_verifier_on_random_bijections() {
    let mut c = Criterion::new(6, "weak security ⇔ combinatorial verifier, all tested dists");
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let mut cases = 0;
    for (s, v) in [(2usize, 2usize), (2, 3), (3, 2)] {
        for _ in 0..18 {
            cases += 1;
            let table = random_bijection(&mut rng, v, s);
            let phi = Transform::new(Alphabet::of_digits(v).unwrap(), s, 1, table).unwrap();
            let combinatorial = verify_aont(&phi.to_array(), 1).unwrap().pass;
            for d in 0..20 {
                let dist = random_positive_dist(&mut rng, v, s);
                let verdict = is_weakly_secure(&dist, &phi, 1).unwrap();
                if verdict.weak != combinatorial {
                    c.check(
                        format!(
                            "bijection #{cases} (s={s}, v={v}), dist #{d}: weak={} verifier={}",
                            verdict.weak, combinatorial
                        ),
                        false,
                    );
                }
            }
        }
    }
    c.check("at least 50 bijections tested", cases >= 50);
    c.finish();
}

#[test]
fn criterion_7_randomized_protocol_hides_the_designated_input() {
    let mut c = Criterion::new(7, "randomized protocol: uniform outputs, posterior = prior");
    let phi = classic();
    let scheme = RandomizedScheme::new(phi.clone(), ColumnSet::new([2], 2).unwrap()).unwrap();
    let dist_u =
        InputDistribution::from_probs(3, 1, vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)])
            .unwrap();
    for j in [3usize, 4] {
        let j_cols = ColumnSet::new([j], 2).unwrap();
        let induced = induced_output_distribution(&scheme, &dist_u, &j_cols).unwrap();
        c.check(
            format!("induced distribution on column {j} is (1/3, 1/3, 1/3)"),
            induced == uniform_third(),
        );
    }
    let verdict = verify_randomized_perfect_security(&scheme, &dist_u).unwrap();
    c.check("exact verification passes", verdict.perfect == Some(true));

    let h_prior = entropy(dist_u.probs()).unwrap();
    c.check("H(X_2) = 1.5 bits", h_prior == 1.5);
    let full = induced_input_distribution(&scheme, &dist_u).unwrap();
    let x2 = ColumnSet::new([2], 2).unwrap();
    for j in [3usize, 4] {
        let j_cols = ColumnSet::new([j], 2).unwrap();
        let h_cond = conditional_entropy(&full, &phi, &x2, &j_cols).unwrap();
        c.check(
            format!("|H(X_2|Y_{}) - H(X_2)| < 1e-12", j - 2),
            (h_cond - h_prior).abs() < 1e-12,
        );
    }
    c.finish();
}

#[test]
fn criterion_8_enumeration_matches_the_brute_force_oracle() {
    let mut c = Criterion::new(8, "enumerator equals brute force on the 24-bijection shapes");
    let pruned = enumerate_aonts(&SearchSpec::count(1, 2, 2)).unwrap().count;
    let naive = naive_count(1, 2, 2);
    c.check("no (1,2,2)-AONT exists", pruned == 0);
    c.check("(1,2,2) matches brute force", pruned == naive);
    let pruned = enumerate_aonts(&SearchSpec::count(2, 2, 2)).unwrap().count;
    let naive = naive_count(2, 2, 2);
    c.check("(2,2,2) count is 24", pruned == 24);
    c.check("(2,2,2) matches brute force", pruned == naive);
    c.finish();
}

#[test]
fn criterion_9_mutual_information_matches_the_closed_forms() {
    let mut c = Criterion::new(9, "MI(X_1;Y_2) = log2(3) - 1.5, MI(X_2;Y_2) = 0");
    let phi = classic();
    let dist = skewed_dist();
    let y2 = ColumnSet::new([4], 2).unwrap();
    let mi = mutual_information(&dist, &phi, &ColumnSet::new([1], 2).unwrap(), &y2).unwrap();
    let expected = 3f64.log2() - 1.5;
    c.check(
        format!("MI(X_1;Y_2) = {mi} within 1e-9 of {expected}"),
        (mi - expected).abs() < 1e-9,
    );
    let mi = mutual_information(&dist, &phi, &ColumnSet::new([2], 2).unwrap(), &y2).unwrap();
    c.check(format!("MI(X_2;Y_2) = {mi} within 1e-12 of 0"), mi.abs() < 1e-12);
    c.finish();
}
