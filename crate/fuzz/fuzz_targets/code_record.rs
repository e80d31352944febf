#![no_main]

use libfuzzer_sys::fuzz_target;
use tecode::gf2::CodeRecord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rec) = CodeRecord::from_json(text) else {
        return;
    };
    if let Ok(c) = rec.to_code() {
        assert_eq!(c.length(), rec.length);
        assert_eq!(c.dim(), rec.dim);
        let again = CodeRecord::from_code_unenumerated(&c);
        assert_eq!(again.to_code().expect("own record parses"), c);
    }
});
