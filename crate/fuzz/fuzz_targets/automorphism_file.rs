#![no_main]

use libfuzzer_sys::fuzz_target;
use weightforge::actions::AutomorphismFile;
use weightforge::perm::{Permutation, PermutationGroup};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = AutomorphismFile::parse(s) {
        let gens = ["(1,2,3)", "(1,2,3,4,5)"].iter().map(|c| Permutation::parse_cycles(c, 5).unwrap()).collect();
        let a5 = PermutationGroup::from_generators(5, gens).unwrap();
        let _ = f.validate(&a5);
    }
});
