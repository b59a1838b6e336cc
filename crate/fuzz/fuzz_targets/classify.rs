#![no_main]

use libfuzzer_sys::fuzz_target;
use patword::overlap::{classify_pattern, AlphabetSpec};
use patword::words::{MatchMode, Pattern, Word};

// first byte selects the alphabet, the rest the pattern letters; sizes
// capped so the witness search stays quick
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 || data.len() > 7 {
        return;
    }
    let k = (data[0] % 9) as u32 + 1;
    let letters: Vec<u32> = data[1..].iter().map(|b| (*b % 9) as u32 + 1).collect();
    let word = Word::new(letters).expect("letters are >= 1");
    let reduced = word.reduce();
    let u = Pattern::new(reduced, MatchMode::Reduced).expect("reduced pattern");
    if u.len() < 2 {
        return;
    }
    let class = classify_pattern(&u, AlphabetSpec::Bounded(k)).expect("classification is total");
    // the bounded overlap set embeds in the unbounded one
    assert!(
        class.st_bounded.is_subset(&class.st_unbounded),
        "pattern {u} over [{k}]"
    );
    // exact overlaps of a reduced pattern are reduced overlaps
    assert!(class.est.is_subset(&class.st_unbounded), "pattern {u}");
});
