#![no_main]

use libfuzzer_sys::fuzz_target;
use weightforge::chartab::TableFile;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = TableFile::parse(s) {
        let again = TableFile::parse(&t.to_json()).expect("serialized table parses");
        assert_eq!(again.to_json(), t.to_json());
    }
});
