//! Collapse clusters and the per-letter-pair weight tables.
//!
//! A cluster is a word that begins and ends with a pattern match, in
//! which consecutive matches are linked (share at least two letters) and
//! whose descents sit exactly at the match descent positions. Collapsing
//! a cluster keeps only its first and last letter; the weight table
//! records, per surviving ordered pair, the signed generating function
//! of everything that was deleted: (-x)^r t^{m-2} z_interior over all
//! clusters with r matches and m letters.

use std::collections::BTreeMap;

use crate::algebra::{Mono, Rat, TSeries, XPoly, ZMode};
use crate::error::{Error, Result};
use crate::overlap::{classify_pattern, AlphabetSpec, DispatchCase};
use crate::words::{validate_alphabet, MatchMode, Pattern, Word};

/// A maximal chain of linked matches, with 1-based match start positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub word: Word,
    pub match_starts: Vec<usize>,
}

impl Cluster {
    pub fn match_count(&self) -> usize {
        self.match_starts.len()
    }

    /// Letters removed by the collapse map.
    pub fn removed(&self) -> usize {
        self.word.len() - 2
    }
}

/// All clusters over `[k]` with first letter `a`, last letter `b`, and at
/// most `removed_budget` removed letters. Requires des(u) = 1.
pub fn enumerate_clusters(
    u: &Pattern,
    k: u32,
    a: u32,
    b: u32,
    removed_budget: usize,
) -> Result<Vec<Cluster>> {
    validate_alphabet(k)?;
    let s = u.single_descent().ok_or_else(|| Error::UnsupportedClass {
        case: format!("des={}", u.descent_count()),
        detail: "clusters are defined for patterns with exactly one descent".to_string(),
    })?;
    if a < 1 || a > k || b < 1 || b > k {
        return Err(Error::InvalidRequest(format!(
            "cluster endpoints must lie in [1, {k}], got ({a}, {b})"
        )));
    }
    let j = u.len();
    let mut out = Vec::new();
    if j < 2 || removed_budget + 2 < j {
        return Ok(out);
    }

    // DFS over match-start sequences (1-based), consecutive gaps 1..=j-2
    fn starts_dfs(
        u: &Pattern,
        k: u32,
        a: u32,
        b: u32,
        s: usize,
        removed_budget: usize,
        starts: &mut Vec<usize>,
        out: &mut Vec<Cluster>,
    ) {
        let j = u.len();
        let last = *starts.last().unwrap();
        let m = last + j - 1;
        if m - 2 <= removed_budget {
            fill_letters(u, k, a, b, s, starts, m, out);
        }
        if j < 3 {
            return; // matches of length 2 cannot share two letters
        }
        for next in (last + 1)..=(last + j - 2) {
            if (next + j - 1) - 2 <= removed_budget {
                starts.push(next);
                starts_dfs(u, k, a, b, s, removed_budget, starts, out);
                starts.pop();
            }
        }
    }

    let mut starts = vec![1usize];
    starts_dfs(u, k, a, b, s, removed_budget, &mut starts, &mut out);
    Ok(out)
}

/// Backtrack over letter assignments for a fixed match-start sequence.
/// Descents must occur exactly at {p + s - 1 : p in starts}; every
/// window at a start must match the pattern; endpoints are pinned.
fn fill_letters(
    u: &Pattern,
    k: u32,
    a: u32,
    b: u32,
    s: usize,
    starts: &[usize],
    m: usize,
    out: &mut Vec<Cluster>,
) {
    let mut descent_at = vec![false; m + 1]; // descent_at[d]: c_d > c_{d+1}
    for &p in starts {
        descent_at[p + s - 1] = true;
    }
    let mut letters = vec![0u32; m + 1]; // 1-based

    fn compatible(
        u: &Pattern,
        letters: &[u32],
        i: usize,
        c: u32,
        starts: &[usize],
    ) -> bool {
        let j = u.len();
        let up = u.letters();
        for &p in starts {
            if i < p || i > p + j - 1 {
                continue;
            }
            let ui = i - p; // 0-based index into the pattern
            match u.mode() {
                MatchMode::Exact => {
                    if c != up[ui] {
                        return false;
                    }
                }
                MatchMode::Reduced => {
                    for q in p..i {
                        if letters[q].cmp(&c) != up[q - p].cmp(&up[ui]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        u: &Pattern,
        k: u32,
        a: u32,
        b: u32,
        i: usize,
        m: usize,
        starts: &[usize],
        descent_at: &[bool],
        letters: &mut Vec<u32>,
        out: &mut Vec<Cluster>,
    ) {
        if i > m {
            let word = Word::new(letters[1..=m].to_vec()).expect("letters >= 1");
            out.push(Cluster {
                word,
                match_starts: starts.to_vec(),
            });
            return;
        }
        let (lo, hi) = if i == 1 {
            (a, a)
        } else if descent_at[i - 1] {
            if letters[i - 1] <= 1 {
                return;
            }
            (1, letters[i - 1] - 1)
        } else {
            (letters[i - 1], k)
        };
        for c in lo..=hi.min(k) {
            if i == m && c != b {
                continue;
            }
            if !compatible(u, letters, i, c, starts) {
                continue;
            }
            letters[i] = c;
            rec(u, k, a, b, i + 1, m, starts, descent_at, letters, out);
        }
        letters[i] = 0;
    }

    rec(u, k, a, b, 1, m, starts, &descent_at, &mut letters, out);
}

/// Weight table: map from surviving ordered letter pairs to truncated
/// series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub case: DispatchCase,
    pub k: u32,
    pub order: usize,
    pub zmode: ZMode,
    pub entries: BTreeMap<(u32, u32), TSeries>,
}

impl WeightTable {
    pub fn entry(&self, a: u32, b: u32) -> Option<&TSeries> {
        self.entries.get(&(a, b))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|((a, b), series)| {
                (
                    format!("{a},{b}"),
                    serde_json::to_value(series).expect("series serializes"),
                )
            })
            .collect();
        serde_json::json!({
            "case": self.case.to_string(),
            "k": self.k,
            "order": self.order,
            "entries": entries,
        })
    }
}

/// Pairs the table must cover for each dispatch case.
fn pair_domain(case: DispatchCase, k: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            let keep = match case {
                DispatchCase::Descent => a > b,
                DispatchCase::Rise => a < b,
                DispatchCase::Level => a == b,
                DispatchCase::WeakDescent => a >= b,
                _ => false,
            };
            if keep {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn base_term(case: DispatchCase, a: u32, b: u32) -> XPoly {
    match case {
        DispatchCase::Descent => XPoly::zero(),
        DispatchCase::Rise => XPoly::one_minus_x(),
        DispatchCase::Level => XPoly::one_minus_x(),
        DispatchCase::WeakDescent => {
            if a == b {
                XPoly::one_minus_x()
            } else {
                XPoly::zero()
            }
        }
        _ => XPoly::zero(),
    }
}

/// Build the collapse-weight table for a supported pattern over `[k]`,
/// truncated at `order` (which also bounds the removed-letter count).
pub fn weight_table(u: &Pattern, k: u32, order: usize, zmode: ZMode) -> Result<WeightTable> {
    validate_alphabet(k)?;
    zmode.validate(order)?;
    let class = classify_pattern(u, AlphabetSpec::Bounded(k))?;
    let case = class.case;
    if !matches!(
        case,
        DispatchCase::Descent | DispatchCase::Rise | DispatchCase::Level | DispatchCase::WeakDescent
    ) {
        return Err(Error::UnsupportedClass {
            case: case.to_string(),
            detail: format!(
                "weight tables need exactly one descent and a supported overlap class; flags {:?}",
                class.flags_bounded
            ),
        });
    }

    let mut entries = BTreeMap::new();
    for (a, b) in pair_domain(case, k) {
        let mut series = TSeries::constant(base_term(case, a, b), order, zmode);
        for cluster in enumerate_clusters(u, k, a, b, order)? {
            let letters = cluster.word.letters();
            debug_assert_eq!(letters[0], a);
            debug_assert_eq!(letters[letters.len() - 1], b);
            let r = cluster.match_count();
            let removed = cluster.removed();
            if removed > order {
                continue;
            }
            let mut zcounts = vec![0u16; k as usize];
            for &c in &letters[1..letters.len() - 1] {
                zcounts[(c - 1) as usize] += 1;
            }
            let mono = match zmode {
                ZMode::Ones => Mono {
                    x: r as u32,
                    z: Vec::new(),
                },
                ZMode::Symbolic { .. } => Mono {
                    x: r as u32,
                    z: zcounts,
                },
            };
            let sign = if r % 2 == 1 { -1i64 } else { 1 };
            series
                .coeff_mut(removed)
                .add_assign_term(mono, Rat::from_integer(sign.into()));
        }
        entries.insert((a, b), series);
    }

    Ok(WeightTable {
        case,
        k,
        order,
        zmode,
        entries,
    })
}
