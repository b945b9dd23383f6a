#![no_main]

use libfuzzer_sys::fuzz_target;
use unising::ingest::{parse, parse_unchecked, render};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 1 << 16 {
        return;
    }
    if let Ok(t) = parse_unchecked(s) {
        let again = parse_unchecked(&render(&t)).expect("rendered table must parse");
        assert_eq!(again, t);
    }
    if let Ok(t) = parse(s) {
        assert_eq!(parse(&render(&t)).expect("valid table must re-validate"), t);
    }
});
