#![no_main]

use hkr::poly::{parse_poly, standard_names};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_poly(s, &standard_names(2, 2));
    }
});
