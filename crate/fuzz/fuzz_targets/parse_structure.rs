#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(file) = twistlab::io::parse_structure(text) {
            let _ = file.structure();
            let _ = file.operator_structure();
        }
    }
});
