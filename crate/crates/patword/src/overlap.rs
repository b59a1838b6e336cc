//! Overlap sets and the overlapping-property taxonomy.
//!
//! `overlap_set(u, a)` finds the positions s in 2..=j at which a second
//! reduced match of u can start while one is in progress at position 1,
//! witnessed by an actual word over the given alphabet. Over the
//! unbounded alphabet the answer for each s is computed over [s+j-1]:
//! reducing a witness yields a witness, and a word of length s+j-1 uses
//! at most s+j-1 distinct letters.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{validate_alphabet, MatchMode, Pattern};

/// A bounded alphabet `[k]` or the unbounded positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphabetSpec {
    Bounded(u32),
    Unbounded,
}

impl AlphabetSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            AlphabetSpec::Bounded(k) => validate_alphabet(*k),
            AlphabetSpec::Unbounded => Ok(()),
        }
    }
}

/// Property flags of one overlap set relative to the pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OverlapFlags {
    pub minimal_overlapping: bool,
    pub non_overlapping: bool,
    pub weakly_increasing: bool,
    pub weakly_decreasing: bool,
    pub level: bool,
}

impl OverlapFlags {
    fn from_set(u: &Pattern, set: &BTreeSet<usize>) -> Self {
        let letters = u.letters();
        let j = u.len();
        let first = letters[0];
        let at = |s: usize| letters[s - 1];
        OverlapFlags {
            minimal_overlapping: set.len() == 1 && set.contains(&j),
            non_overlapping: set.is_empty(),
            weakly_increasing: set.iter().all(|&s| first <= at(s)),
            weakly_decreasing: set.iter().all(|&s| first >= at(s)),
            level: set.iter().all(|&s| first == at(s)),
        }
    }
}

/// How the closed-form pipeline will treat the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DispatchCase {
    Descent,
    Rise,
    Level,
    WeakDescent,
    Des0,
    Unsupported,
}

impl fmt::Display for DispatchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DispatchCase::Descent => "descent",
            DispatchCase::Rise => "rise",
            DispatchCase::Level => "level",
            DispatchCase::WeakDescent => "weak_descent",
            DispatchCase::Des0 => "des0",
            DispatchCase::Unsupported => "unsupported",
        };
        write!(f, "{s}")
    }
}

/// Full classification of a pattern over a bounded alphabet, with the
/// unbounded sets alongside.
#[derive(Clone, Debug)]
pub struct PatternClass {
    pub descent_count: usize,
    /// Ordering of u_1 versus u_j.
    pub endpoint: std::cmp::Ordering,
    pub st_unbounded: BTreeSet<usize>,
    pub st_bounded: BTreeSet<usize>,
    pub est: BTreeSet<usize>,
    pub flags_unbounded: OverlapFlags,
    pub flags_bounded: OverlapFlags,
    pub est_flags: OverlapFlags,
    pub case: DispatchCase,
}

/// Positions s in 2..=j admitting overlapping reduced matches at 1 and s.
pub fn overlap_set(u: &Pattern, alphabet: AlphabetSpec) -> Result<BTreeSet<usize>> {
    if !u.is_reduced() {
        return Err(Error::InvalidPattern(format!(
            "overlap sets are defined for reduced patterns, got {u}"
        )));
    }
    let j = u.len();
    if j < 2 {
        return Err(Error::InvalidPattern(
            "overlap sets need a pattern of length >= 2".to_string(),
        ));
    }
    alphabet.validate()?;
    let mut set = BTreeSet::new();
    for s in 2..=j {
        let k = match alphabet {
            AlphabetSpec::Bounded(k) => k,
            // A witness of length s+j-1 reduces to one over [s+j-1].
            AlphabetSpec::Unbounded => (s + j - 1) as u32,
        };
        if witness_exists(u.letters(), s, k) {
            set.insert(s);
        }
    }
    Ok(set)
}

/// Backtracking witness search: does a word of length s+j-1 over `[k]`
/// exist with reduced u-matches at positions 1 and s? Each placement is
/// checked against the pattern's pairwise order relations inside both
/// windows, which prunes almost everything immediately.
fn witness_exists(u: &[u32], s: usize, k: u32) -> bool {
    let j = u.len();
    let n = s + j - 1;
    let mut word = vec![0u32; n];

    fn compatible(word: &[u32], pos: usize, letter: u32, win_start: usize, u: &[u32]) -> bool {
        // window occupies win_start..win_start+j, pattern index of pos is
        // pos - win_start
        let pi = pos - win_start;
        for q in win_start..pos {
            let qi = q - win_start;
            if word[q].cmp(&letter) != u[qi].cmp(&u[pi]) {
                return false;
            }
        }
        true
    }

    fn rec(word: &mut [u32], pos: usize, s: usize, j: usize, k: u32, u: &[u32]) -> bool {
        if pos == word.len() {
            return true;
        }
        for letter in 1..=k {
            let in_first = pos < j;
            let in_second = pos + 1 >= s; // 0-based: window 2 covers s-1..s-1+j
            if in_first && !compatible(word, pos, letter, 0, u) {
                continue;
            }
            if in_second && !compatible(word, pos, letter, s - 1, u) {
                continue;
            }
            word[pos] = letter;
            if rec(word, pos + 1, s, j, k, u) {
                return true;
            }
        }
        false
    }

    rec(&mut word, 0, s, j, k, u)
}

/// Positions s with overlapping exact matches at 1 and s. This is the
/// border condition u_p = u_{p-s+1} for p in s..=j: a witness exists iff
/// the two copies agree on the shared letters, and the witness only uses
/// letters of u, so the answer does not grow with the alphabet.
pub fn exact_overlap_set(u: &Pattern, alphabet: AlphabetSpec) -> BTreeSet<usize> {
    let j = u.len();
    let letters = u.letters();
    if let AlphabetSpec::Bounded(k) = alphabet {
        if u.word().max_letter() > k {
            // no exact match at all fits inside [k]
            return BTreeSet::new();
        }
    }
    (2..=j)
        .filter(|&s| (s..=j).all(|p| letters[p - 1] == letters[p - s]))
        .collect()
}

/// Classify a pattern over a bounded alphabet. The dispatch case is
/// driven by the pattern's match mode: reduced matches consult the
/// bounded overlap set, exact matches the exact overlap set.
pub fn classify_pattern(u: &Pattern, alphabet: AlphabetSpec) -> Result<PatternClass> {
    alphabet.validate()?;
    let j = u.len();
    let letters = u.letters();
    let endpoint = letters[0].cmp(&letters[j - 1]);
    let descent_count = u.descent_count();

    let (st_unbounded, st_bounded) = if u.is_reduced() && j >= 2 {
        let st_p = overlap_set(u, AlphabetSpec::Unbounded)?;
        let st_k = match alphabet {
            AlphabetSpec::Bounded(_) => overlap_set(u, alphabet)?,
            AlphabetSpec::Unbounded => st_p.clone(),
        };
        (st_p, st_k)
    } else {
        (BTreeSet::new(), BTreeSet::new())
    };
    let est = if j >= 2 {
        exact_overlap_set(u, alphabet)
    } else {
        BTreeSet::new()
    };

    let flags_unbounded = OverlapFlags::from_set(u, &st_unbounded);
    let flags_bounded = OverlapFlags::from_set(u, &st_bounded);
    let est_flags = OverlapFlags::from_set(u, &est);

    let dispatch_flags = match u.mode() {
        MatchMode::Reduced => &flags_bounded,
        MatchMode::Exact => &est_flags,
    };
    let case = if descent_count == 0 {
        DispatchCase::Des0
    } else if descent_count >= 2 {
        DispatchCase::Unsupported
    } else {
        match endpoint {
            std::cmp::Ordering::Greater => DispatchCase::Descent,
            std::cmp::Ordering::Less => {
                if dispatch_flags.weakly_increasing {
                    DispatchCase::Rise
                } else {
                    DispatchCase::Unsupported
                }
            }
            std::cmp::Ordering::Equal => {
                if dispatch_flags.level {
                    DispatchCase::Level
                } else {
                    DispatchCase::WeakDescent
                }
            }
        }
    };

    Ok(PatternClass {
        descent_count,
        endpoint,
        st_unbounded,
        st_bounded,
        est,
        flags_unbounded,
        flags_bounded,
        est_flags,
        case,
    })
}

impl PatternClass {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "positions": "1-based",
            "st": {
                "P": self.st_unbounded.iter().collect::<Vec<_>>(),
                "k": self.st_bounded.iter().collect::<Vec<_>>(),
            },
            "est": self.est.iter().collect::<Vec<_>>(),
            "flags": {
                "P": self.flags_unbounded,
                "k": self.flags_bounded,
                "exact": self.est_flags,
            },
            "case": self.case.to_string(),
        })
    }
}
