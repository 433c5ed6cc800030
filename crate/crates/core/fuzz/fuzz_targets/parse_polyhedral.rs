#![no_main]

use libfuzzer_sys::fuzz_target;
use normrig::io::parse_polyhedral;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_polyhedral(text) {
        let x = vec![1.0; s.dim()];
        let _ = s.norm(&x);
    }
});
