#![no_main]

use libfuzzer_sys::fuzz_target;
use patword::algebra::TSeries;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 1 << 16 {
        return;
    }
    if let Ok(series) = serde_json::from_str::<TSeries>(text) {
        if series.order() > 64 {
            return;
        }
        // canonical form: serialize and re-parse reproduces the value
        let out = serde_json::to_string(&series).expect("serializes");
        let again: TSeries = serde_json::from_str(&out).expect("canonical form parses");
        assert_eq!(again, series);
        // arithmetic on parsed input must not panic
        let _ = series.add(&series);
        let _ = series.mul(&series);
    }
});
