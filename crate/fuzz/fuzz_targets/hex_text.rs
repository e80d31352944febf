#![no_main]

use libfuzzer_sys::fuzz_target;
use tecode::gf2::hexio::{emit_hex_text, parse_hex_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_hex_text(text, None) {
        let back = parse_hex_text(&emit_hex_text(&c), None).expect("emitted text parses");
        assert_eq!(back, c);
    }
});
