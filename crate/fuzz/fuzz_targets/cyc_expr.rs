#![no_main]

use libfuzzer_sys::fuzz_target;
use unising::cyclo::text::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 4096 {
        return;
    }
    if let Ok(x) = parse(s) {
        let printed = x.to_string();
        let back = parse(&printed).expect("rendered value must parse");
        assert_eq!(back, x);
        assert_eq!(back.to_string(), printed);
    }
});
