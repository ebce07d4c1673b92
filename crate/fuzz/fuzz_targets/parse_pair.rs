#![no_main]

use libfuzzer_sys::fuzz_target;
use twistlab::twist::{long_pair_name, pair_namer, parse_pair};
use twistlab::Poset;

fuzz_target!(|data: &[u8]| {
    let Ok(token) = std::str::from_utf8(data) else { return };
    let base = Poset::chain(&["0", "a", "1"]).expect("chain");
    if let Ok(pair) = parse_pair(&base, token) {
        assert_eq!(parse_pair(&base, &long_pair_name(&base, pair)).ok(), Some(pair));
        assert_eq!(parse_pair(&base, &pair_namer(&base)(pair)).ok(), Some(pair));
    }
});
