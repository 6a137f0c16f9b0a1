#![no_main]

use depthforge::{format_ideal, parse_ideal};
use libfuzzer_sys::fuzz_target;

// Anything that parses must print to an expression that parses back to it.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((ctx, ideal)) = parse_ideal(text) {
        let printed = format_ideal(&ctx, &ideal);
        let (ctx2, ideal2) = parse_ideal(&printed).expect("printed expression parses");
        assert_eq!(ctx, ctx2);
        assert_eq!(ideal, ideal2);
    }
});
