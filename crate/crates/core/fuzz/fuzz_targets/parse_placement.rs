#![no_main]

use libfuzzer_sys::fuzz_target;
use normrig::io::{parse_placement, write_placement};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_placement(text) {
        assert_eq!(parse_placement(&write_placement(&p)).unwrap(), p);
    }
});
