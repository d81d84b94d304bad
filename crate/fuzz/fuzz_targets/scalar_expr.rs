//! Fuzz the scalar expression parser: must never panic, and accepted
//! inputs must round-trip through display and reparse.

#![no_main]

use libfuzzer_sys::fuzz_target;

use inertia::text::{parse_scalar, scalar_string};

fuzz_target!(|data: &[u8]| {
    if data.len() > 256 {
        return;
    }
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_scalar(input) {
        let rendered = scalar_string(&value);
        let reparsed = parse_scalar(&rendered).expect("canonical output reparses");
        assert_eq!(reparsed, value, "display/parse round trip");
    }
});
