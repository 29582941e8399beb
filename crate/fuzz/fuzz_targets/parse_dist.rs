//! The distribution parser must never panic for any (alphabet, arity)
//! pairing, and accepted inputs must survive a write/parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;

use aont::format::{parse_dist_file, write_dist_file};
use aont::Alphabet;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let alphabets = [
        Alphabet::new(["a", "b", "c"]).unwrap(),
        Alphabet::of_digits(2).unwrap(),
        Alphabet::of_digits(3).unwrap(),
    ];
    for alphabet in &alphabets {
        for arity in 1..=3 {
            if let Ok(dist) = parse_dist_file(&text, alphabet, arity) {
                let rewritten = write_dist_file(&dist, alphabet).expect("writable");
                let reparsed =
                    parse_dist_file(&rewritten, alphabet, arity).expect("writer output parses");
                assert_eq!(reparsed.probs(), dist.probs());
            }
        }
    }
});
