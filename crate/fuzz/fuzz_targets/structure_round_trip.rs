#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::io::{parse_structure, write_structure};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_structure(text) else { return };
    let emitted = write_structure(&file);
    let again = parse_structure(&emitted).expect("emitted structure must parse");
    assert_eq!(again, file);
    assert_eq!(write_structure(&again), emitted);
});
