#![no_main]

use libfuzzer_sys::fuzz_target;
use patword::words::Word;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 4096 {
        return;
    }
    if let Ok(word) = Word::parse(text) {
        // whatever parses must survive a display round trip
        let shown = word.to_string();
        let again = Word::parse(&shown).expect("displayed word re-parses");
        assert_eq!(again, word, "round trip through {shown:?}");
        // reduction is total and idempotent on parsed input
        let red = word.reduce();
        assert_eq!(red.reduce(), red);
        let _ = word.stats();
    }
});
