//! Fuzz the scenario document decoder: deserialization and generator
//! matrix parsing must never panic on arbitrary bytes.

#![no_main]

use libfuzzer_sys::fuzz_target;

use inertia::scenario::ScenarioFile;
use inertia::text::parse_scalar;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = serde_json::from_str::<ScenarioFile>(input) {
        // Exercise the scalar parser on any generator entries.
        if let inertia::scenario::ActionSpec::FiniteGroup { generators, .. } = &file.action {
            for g in generators {
                for row in g {
                    for cell in row {
                        let _ = parse_scalar(cell);
                    }
                }
            }
        }
    }
});
