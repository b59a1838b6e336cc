//! Words over a positive-integer alphabet: reduction, the descent
//! statistic family, and consecutive-pattern match detection.
//!
//! Positions are 1-based throughout.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest alphabet accepted anywhere a `[k]` is supplied.
pub const MAX_ALPHABET: u32 = 16;

pub fn validate_alphabet(k: u32) -> Result<()> {
    if k < 1 || k > MAX_ALPHABET {
        return Err(Error::InvalidRequest(format!(
            "alphabet size must be in 1..={MAX_ALPHABET}, got {k}"
        )));
    }
    Ok(())
}

/// A finite (possibly empty) sequence of letters >= 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.iter().any(|&c| c == 0) {
            return Err(Error::InvalidPattern("letters must be >= 1".to_string()));
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Parses the compact digit form ("31442") or, when a comma is
    /// present, the comma-separated form ("10,3,11"). The empty string
    /// is the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let letters: Vec<u32> = if text.contains(',') {
            let mut parts: Vec<&str> = text.split(',').collect();
            // tolerate one trailing comma, the disambiguator emitted for
            // single letters above 9
            if parts.last() == Some(&"") {
                parts.pop();
            }
            parts
                .into_iter()
                .map(|part| {
                    let part = part.trim();
                    part.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad letter {part:?}")))
                })
                .collect::<Result<_>>()?
        } else if text.chars().all(|ch| ch.is_ascii_digit() && ch != '0') {
            text.chars().map(|ch| ch as u32 - '0' as u32).collect()
        } else if let Ok(single) = text.parse::<u32>() {
            // a lone letter above 9 round-trips without a comma
            vec![single]
        } else {
            return Err(Error::Parse(format!(
                "expected digits 1-9, a single integer, or a comma-separated list, got {text:?}"
            )));
        };
        Word::new(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn max_letter(&self) -> u32 {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    /// Replace every occurrence of the i-th smallest letter by i.
    pub fn reduce(&self) -> Word {
        Word {
            letters: reduce_slice(&self.letters),
        }
    }

    pub fn is_reduced(&self) -> bool {
        reduce_slice(&self.letters) == self.letters
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn stats(&self) -> StatRecord {
        let n = self.letters.len();
        let mut r = StatRecord::default();
        for i in 1..n {
            let (a, b) = (self.letters[i - 1], self.letters[i]);
            if a > b {
                r.des_set.insert(i);
            }
            if a >= b {
                r.wdes_set.insert(i);
            }
            if a < b {
                r.rise_set.insert(i);
            }
            if a <= b {
                r.wrise_set.insert(i);
            }
            if a == b {
                r.lev_set.insert(i);
            }
        }
        r
    }
}

pub fn reduce_slice(letters: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = letters.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    letters
        .iter()
        .map(|c| (distinct.binary_search(c).unwrap() + 1) as u32)
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&c| c <= 9) {
            for c in &self.letters {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))?;
            if self.letters.len() == 1 {
                // "11," reads back as one letter; bare "11" would not
                write!(f, ",")?;
            }
            Ok(())
        }
    }
}

/// Position sets (1-based, i in 1..n-1) and counts for the descent
/// statistic family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatRecord {
    pub des_set: BTreeSet<usize>,
    pub wdes_set: BTreeSet<usize>,
    pub rise_set: BTreeSet<usize>,
    pub wrise_set: BTreeSet<usize>,
    pub lev_set: BTreeSet<usize>,
}

impl StatRecord {
    pub fn des(&self) -> usize {
        self.des_set.len()
    }
    pub fn wdes(&self) -> usize {
        self.wdes_set.len()
    }
    pub fn ris(&self) -> usize {
        self.rise_set.len()
    }
    pub fn wris(&self) -> usize {
        self.wrise_set.len()
    }
    pub fn lev(&self) -> usize {
        self.lev_set.len()
    }
}

/// Whether a factor must reduce to the pattern or equal it literally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    Reduced,
    Exact,
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchMode::Reduced => write!(f, "reduced"),
            MatchMode::Exact => write!(f, "exact"),
        }
    }
}

/// A consecutive pattern together with its match mode. Caches the
/// descent positions of the pattern word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    word: Word,
    mode: MatchMode,
    descent_positions: Vec<usize>,
    reduced: bool,
}

impl Pattern {
    pub fn new(word: Word, mode: MatchMode) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidPattern("pattern must be nonempty".to_string()));
        }
        let reduced = word.is_reduced();
        if mode == MatchMode::Reduced && !reduced {
            return Err(Error::InvalidPattern(format!(
                "reduced-match pattern must be reduced: {} reduces to {}",
                word,
                word.reduce()
            )));
        }
        let descent_positions = word.stats().des_set.into_iter().collect();
        Ok(Pattern {
            word,
            mode,
            descent_positions,
            reduced,
        })
    }

    pub fn parse(text: &str, mode: MatchMode) -> Result<Self> {
        Pattern::new(Word::parse(text)?, mode)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[u32] {
        self.word.letters()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn mode(&self) -> MatchMode {
        self.mode
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn descent_positions(&self) -> &[usize] {
        &self.descent_positions
    }

    pub fn descent_count(&self) -> usize {
        self.descent_positions.len()
    }

    /// The unique descent position when there is exactly one.
    pub fn single_descent(&self) -> Option<usize> {
        match self.descent_positions.as_slice() {
            [s] => Some(*s),
            _ => None,
        }
    }

    /// Does the factor slice match this pattern?
    pub fn matches_window(&self, window: &[u32]) -> bool {
        debug_assert_eq!(window.len(), self.len());
        match self.mode {
            MatchMode::Exact => window == self.letters(),
            MatchMode::Reduced => windows_order_isomorphic(window, self.letters()),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// Order isomorphism test: same pairwise <,=,> relations everywhere.
/// Used instead of reducing the window, which allocates.
pub fn windows_order_isomorphic(a: &[u32], b: &[u32]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    for i in 0..a.len() {
        for l in (i + 1)..a.len() {
            let ra = a[i].cmp(&a[l]);
            let rb = b[i].cmp(&b[l]);
            if ra != rb {
                return false;
            }
        }
    }
    true
}

/// All 1-based start positions of (reduced or exact) pattern matches in
/// `w`, plus the count.
pub fn match_positions(w: &Word, u: &Pattern) -> (Vec<usize>, usize) {
    let j = u.len();
    let letters = w.letters();
    if letters.len() < j {
        return (Vec::new(), 0);
    }
    let mut positions = Vec::new();
    for start in 0..=(letters.len() - j) {
        if u.matches_window(&letters[start..start + j]) {
            positions.push(start + 1);
        }
    }
    let count = positions.len();
    (positions, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduce_paper_example() {
        assert_eq!(w("44537792").reduce(), w("33425561"));
    }

    #[test]
    fn reduce_trivial_cases() {
        assert_eq!(Word::empty().reduce(), Word::empty());
        assert_eq!(w("111").reduce(), w("111"));
        assert_eq!(w("91").reduce(), w("21"));
        assert_eq!(w("19").reduce(), w("12"));
    }

    #[test]
    fn stats_hand_checked() {
        let r = w("2211").stats();
        assert_eq!(r.des(), 1);
        assert!(r.des_set.contains(&2));
        assert_eq!(r.lev(), 2);
        assert_eq!(r.lev_set, [1usize, 3].into_iter().collect());
        assert_eq!(r.ris(), 0);

        let r = w("1234").stats();
        assert_eq!((r.des(), r.ris(), r.lev(), r.wris(), r.wdes()), (0, 3, 0, 3, 0));

        let r = w("7").stats();
        assert_eq!(r, StatRecord::default());

        let r = Word::empty().stats();
        assert_eq!(r, StatRecord::default());
    }

    #[test]
    fn match_positions_paper_example() {
        let word = w("31442521337792");
        let u = Pattern::parse("213", MatchMode::Reduced).unwrap();
        let (pos, count) = match_positions(&word, &u);
        assert_eq!(pos, vec![1, 4, 7]);
        assert_eq!(count, 3);

        let u = Pattern::parse("213", MatchMode::Exact).unwrap();
        let (pos, count) = match_positions(&word, &u);
        assert_eq!(pos, vec![7]);
        assert_eq!(count, 1);
    }

    #[test]
    fn pattern_matches_itself() {
        let u = Pattern::parse("2341", MatchMode::Reduced).unwrap();
        let (pos, count) = match_positions(&w("2341"), &u);
        assert_eq!((pos, count), (vec![1], 1));
    }

    #[test]
    fn short_word_has_no_matches() {
        let u = Pattern::parse("2341", MatchMode::Reduced).unwrap();
        assert_eq!(match_positions(&w("23"), &u).1, 0);
        assert_eq!(match_positions(&Word::empty(), &u).1, 0);
    }

    #[test]
    fn reduced_pattern_must_be_reduced() {
        assert!(Pattern::parse("131", MatchMode::Reduced).is_err());
        assert!(Pattern::parse("131", MatchMode::Exact).is_ok());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w("10,3,11").letters(), &[10, 3, 11]);
        assert_eq!(w(" 2, 1 ").letters(), &[2, 1]);
        // a 0 digit forces the single-integer reading
        assert_eq!(w("102").letters(), &[102]);
        assert_eq!(w("10").letters(), &[10]);
        assert!(Word::parse("1,x").is_err());
        assert!(Word::parse("0,2").is_err());
        assert!(Word::parse("0").is_err());
        assert!(Word::parse("1 2").is_err());
        assert_eq!(Word::parse("").unwrap(), Word::empty());
        assert_eq!(Word::parse("  ").unwrap(), Word::empty());
    }

    #[test]
    fn display_round_trip() {
        for s in ["31442", "10,3,11", ""] {
            let word = w(s);
            assert_eq!(Word::parse(&word.to_string()).unwrap(), word);
        }
    }

    #[test]
    fn pattern_descent_cache() {
        let u = Pattern::parse("2341", MatchMode::Reduced).unwrap();
        assert_eq!(u.descent_positions(), &[3]);
        assert_eq!(u.single_descent(), Some(3));
        let u = Pattern::parse("123", MatchMode::Reduced).unwrap();
        assert_eq!(u.single_descent(), None);
        assert_eq!(u.descent_count(), 0);
    }
}
