#![no_main]

use hkr::cech::input::parse_twist;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_twist(s);
    }
});
