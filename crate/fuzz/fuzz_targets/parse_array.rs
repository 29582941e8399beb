//! The array parser must never panic, and anything it accepts must
//! survive a write/parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

use aont::format::{parse_array_file, write_array_file};

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(file) = parse_array_file(&text) {
        let rewritten = write_array_file(file.t, &file.array);
        let reparsed = parse_array_file(&rewritten).expect("writer output parses");
        assert_eq!(reparsed.t, file.t);
        assert_eq!(reparsed.array, file.array);
    }
});
