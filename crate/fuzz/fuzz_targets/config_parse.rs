#![no_main]

use libfuzzer_sys::fuzz_target;
use qinv::config::{parse_config, serialize_config};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // Parsing must never panic, and any accepted config must round-trip
        // through the canonical serialization unchanged.
        if let Ok(config) = parse_config(text) {
            let canonical = serialize_config(&config);
            let reparsed = parse_config(&canonical).expect("canonical form reparses");
            assert_eq!(config, reparsed);
        }
    }
});
