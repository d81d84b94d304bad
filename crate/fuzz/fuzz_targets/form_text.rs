//! Fuzz the differential-form parser on both coordinate space kinds:
//! must never panic, and accepted forms must round-trip.

#![no_main]

use libfuzzer_sys::fuzz_target;

use inertia::forms::CoordinateSpace;
use inertia::text::{form_string, parse_form};

fuzz_target!(|data: &[u8]| {
    if data.len() > 512 {
        return;
    }
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    for space in [CoordinateSpace::Real(3), CoordinateSpace::ComplexPairs(2)] {
        if let Ok(form) = parse_form(input, space) {
            let rendered = form_string(&form);
            let reparsed = parse_form(&rendered, space).expect("canonical output reparses");
            assert_eq!(reparsed, form, "display/parse round trip");
        }
    }
});
