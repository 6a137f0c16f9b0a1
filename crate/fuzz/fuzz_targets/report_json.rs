#![no_main]

use depthforge::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = Report::from_json(text) {
        // re-encoding a decoded report must decode again
        let again = Report::from_json(&report.to_json()).expect("re-encoded report decodes");
        let _ = again.to_text();
    }
});
