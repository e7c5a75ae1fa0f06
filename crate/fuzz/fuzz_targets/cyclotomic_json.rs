#![no_main]

use libfuzzer_sys::fuzz_target;
use weightforge::cyclo::Cyclotomic;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = Cyclotomic::from_json_str(s) {
        let back = serde_json::to_string(&x).unwrap();
        assert_eq!(Cyclotomic::from_json_str(&back).unwrap(), x);
    }
});
