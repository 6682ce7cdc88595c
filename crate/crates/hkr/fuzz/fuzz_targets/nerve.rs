#![no_main]

use hkr::cech::nerve::parse_nerve;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_nerve(s);
    }
});
