#![no_main]

use libfuzzer_sys::fuzz_target;
use weightforge::perm::Permutation;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let degree = 1 + data[0] as usize % 64;
    let Ok(s) = std::str::from_utf8(&data[1..]) else { return };
    if let Ok(p) = Permutation::parse_cycles(s, degree) {
        assert_eq!(Permutation::parse_cycles(&p.to_string(), degree).unwrap(), p);
    }
});
