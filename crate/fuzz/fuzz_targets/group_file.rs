#![no_main]

use libfuzzer_sys::fuzz_target;
use weightforge::perm::GroupFile;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = GroupFile::parse(s) {
        // building can be expensive for large degrees; decoding must never panic
        if let Ok(gens) = f.permutations() {
            if f.degree <= 32 {
                let _ = f.build();
            }
            for g in gens {
                assert_eq!(g.degree(), f.degree);
            }
        }
    }
});
