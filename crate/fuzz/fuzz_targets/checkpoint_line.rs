#![no_main]

use libfuzzer_sys::fuzz_target;
use tecode::pipeline::CheckpointLine;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(line) = CheckpointLine::parse(text) {
        let again = CheckpointLine::parse(&line.to_line()).expect("own line parses");
        assert_eq!(again, line);
    }
});
