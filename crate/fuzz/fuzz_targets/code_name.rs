#![no_main]

use libfuzzer_sys::fuzz_target;
use tecode::constructions::code_by_name;

fuzz_target!(|data: &[u8]| {
    let Ok(name) = std::str::from_utf8(data) else {
        return;
    };
    if name.len() > 64 {
        return;
    }
    if let Ok(c) = code_by_name(name) {
        assert!(c.dim() <= c.length());
    }
});
