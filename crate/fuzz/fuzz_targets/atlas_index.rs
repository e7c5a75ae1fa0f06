#![no_main]

use libfuzzer_sys::fuzz_target;
use weightforge_cli::atlas::parse_index;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_index(s);
    }
});
