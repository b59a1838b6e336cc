//! Ground-truth enumeration of the avoidance distribution polynomials.
//!
//! Two independent routes compute the same series: `brute_series` walks
//! every word with subtree pruning, `dp_series` runs a transfer-matrix
//! DP whose states are the last j-1 letters, packed base-k and merged by
//! forward bisimulation before any coefficient arithmetic happens.
//!
//! The symmetric-function side lives here too: `recip_coeff_compositions`
//! expands the reciprocal coefficient over integer compositions (brick
//! tabloids of a one-row shape), and `recip_coeff_fixed_points` counts
//! the surviving brick fillings directly.

use std::collections::HashMap;

use crate::algebra::{Mono, Rat, TSeries, XPoly, ZMode};
use crate::error::{Error, Result};
use crate::words::{validate_alphabet, MatchMode, Pattern, Word};

/// Work limits. Exceeding one is a typed error, never silent truncation.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Bound on sum_{n<=N} k^n for brute-force enumeration.
    pub brute_word_steps: u64,
    /// Bound on k^{j-1} * k, the raw transition-table size for the DP.
    pub dp_transitions: u64,
    /// Largest n for the composition expansion (2^{n-1} compositions).
    pub composition_max_n: usize,
    /// Bound on k^n for fixed-point backtracking.
    pub fixpoint_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            brute_word_steps: 100_000_000,
            dp_transitions: 100_000_000,
            composition_max_n: 14,
            fixpoint_steps: 300_000_000,
        }
    }
}

/// One request for an avoidance series.
#[derive(Clone, Debug)]
pub struct SeriesRequest {
    pub pattern: Pattern,
    pub k: u32,
    pub order: usize,
    pub zmode: ZMode,
    pub budget: Budget,
    pub threads: usize,
}

impl SeriesRequest {
    pub fn new(pattern: Pattern, k: u32, order: usize) -> Self {
        SeriesRequest {
            pattern,
            k,
            order,
            zmode: ZMode::Ones,
            budget: Budget::default(),
            threads: 1,
        }
    }

    pub fn with_zmode(mut self, zmode: ZMode) -> Self {
        self.zmode = zmode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_alphabet(self.k)?;
        self.zmode.validate(self.order)?;
        if let ZMode::Symbolic { k } = self.zmode {
            if k != self.k {
                return Err(Error::InvalidRequest(format!(
                    "symbolic z alphabet {k} differs from request alphabet {}",
                    self.k
                )));
            }
        }
        Ok(())
    }
}

fn zdeg_mono(x: u32, counts: &[u16], zmode: ZMode) -> Mono {
    match zmode {
        ZMode::Ones => Mono { x, z: Vec::new() },
        ZMode::Symbolic { .. } => Mono {
            x,
            z: counts.to_vec(),
        },
    }
}

// ---------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------

fn brute_budget(k: u32, order: usize) -> u128 {
    let mut total: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 1..=order {
        pw = pw.saturating_mul(k as u128);
        total = total.saturating_add(pw);
    }
    total
}

/// Every word over `[k]` of length 1..=N, pruned at the first match:
/// any extension of a matched prefix still contains the match.
pub fn brute_series(req: &SeriesRequest) -> Result<TSeries> {
    req.validate()?;
    let needed = brute_budget(req.k, req.order);
    if needed > req.budget.brute_word_steps as u128 {
        return Err(Error::BudgetExceeded {
            what: "brute-force word enumeration".to_string(),
            needed,
            budget: req.budget.brute_word_steps as u128,
        });
    }
    let k = req.k;
    let shard = |first: u32| -> Vec<XPoly> {
        let mut coeffs = vec![XPoly::zero(); req.order + 1];
        if req.order == 0 {
            return coeffs;
        }
        let mut letters: Vec<u32> = Vec::with_capacity(req.order);
        let mut zcounts = vec![0u16; k as usize];
        brute_rec(
            req,
            &mut letters,
            &mut zcounts,
            0,
            first,
            &mut coeffs,
        );
        coeffs
    };

    let per_letter: Vec<Vec<XPoly>> = if req.threads > 1 && k > 1 {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (1..=k)
                .map(|first| scope.spawn(move || shard(first)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    } else {
        (1..=k).map(shard).collect()
    };

    let mut out = TSeries::zero(req.order, req.zmode);
    *out.coeff_mut(0) = XPoly::one();
    // deterministic reduction in first-letter order
    for coeffs in per_letter {
        for (n, p) in coeffs.into_iter().enumerate() {
            if !p.is_zero() {
                out.coeff_mut(n).add_assign(&p);
            }
        }
    }
    Ok(out)
}

fn brute_rec(
    req: &SeriesRequest,
    letters: &mut Vec<u32>,
    zcounts: &mut [u16],
    des: u32,
    next: u32,
    coeffs: &mut [XPoly],
) {
    let j = req.pattern.len();
    let des = des
        + match letters.last() {
            Some(&prev) if prev > next => 1,
            _ => 0,
        };
    letters.push(next);
    zcounts[(next - 1) as usize] += 1;
    let n = letters.len();
    let matched = n >= j && req.pattern.matches_window(&letters[n - j..]);
    if !matched {
        coeffs[n].add_assign_term(zdeg_mono(des + 1, zcounts, req.zmode), Rat::from_integer(1.into()));
        if n < req.order {
            for c in 1..=req.k {
                brute_rec(req, letters, zcounts, des, c, coeffs);
            }
        }
    }
    zcounts[(next - 1) as usize] -= 1;
    letters.pop();
}

// ---------------------------------------------------------------------
// Transfer-matrix DP
// ---------------------------------------------------------------------

const DEAD: u32 = u32::MAX;

struct Automaton {
    /// transitions[class * k + c]: DEAD or target class, bit 31 = descent
    trans: Vec<u32>,
    /// initial value per class, aggregated over raw suffix states
    init: Vec<XPoly>,
    classes: usize,
}

fn decode_state(mut id: u64, k: u64, len: usize, out: &mut [u32]) {
    for i in (0..len).rev() {
        out[i] = (id % k) as u32 + 1;
        id /= k;
    }
}

/// Build the raw suffix automaton at window length j-1 and merge states
/// by iterated signature refinement (forward bisimulation). Merging is
/// sound for aggregate sums because merged states have identical outgoing
/// descent flags and target classes for every letter.
fn build_automaton(req: &SeriesRequest) -> Result<Automaton> {
    let u = &req.pattern;
    let j = u.len();
    let lwin = j - 1;
    let k = req.k as u64;
    let raw: u128 = (k as u128)
        .checked_pow(lwin as u32)
        .unwrap_or(u128::MAX);
    let table: u128 = raw.saturating_mul(k as u128);
    if table > req.budget.dp_transitions as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("dp transition table ({} states)", raw),
            needed: table,
            budget: req.budget.dp_transitions as u128,
        });
    }
    let raw = raw as usize;
    let kk = req.k as usize;

    // raw transition table with descent flags
    let mut trans = vec![0u32; raw * kk];
    let mut window = vec![0u32; j];
    let mod_shift = (k).pow(lwin.saturating_sub(1) as u32);
    for s in 0..raw {
        decode_state(s as u64, k, lwin, &mut window[..lwin]);
        for c in 1..=req.k {
            window[lwin] = c;
            let entry = if u.matches_window(&window) {
                DEAD
            } else {
                let target = if lwin == 0 {
                    0
                } else {
                    ((s as u64 % mod_shift) * k + (c - 1) as u64) as u32
                };
                let desc = lwin > 0 && window[lwin - 1] > c;
                target | ((desc as u32) << 31)
            };
            trans[s * kk + (c as usize - 1)] = entry;
        }
    }

    // signature refinement to the coarsest forward bisimulation
    let mut class = vec![0u32; raw];
    let mut nclasses = 1usize;
    loop {
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut next = vec![0u32; raw];
        for s in 0..raw {
            let mut sig = Vec::with_capacity(kk + 1);
            sig.push(class[s]);
            for c in 0..kk {
                let e = trans[s * kk + c];
                sig.push(if e == DEAD {
                    DEAD
                } else {
                    let target = (e & 0x7FFF_FFFF) as usize;
                    (class[target] << 1) | (e >> 31)
                });
            }
            let n = ids.len() as u32;
            next[s] = *ids.entry(sig).or_insert(n);
        }
        let count = ids.len();
        class = next;
        if count == nclasses {
            break;
        }
        nclasses = count;
    }

    // class-level transitions from representatives
    let mut ctrans = vec![DEAD; nclasses * kk];
    let mut seen = vec![false; nclasses];
    for s in 0..raw {
        let cl = class[s] as usize;
        if seen[cl] {
            continue;
        }
        seen[cl] = true;
        for c in 0..kk {
            let e = trans[s * kk + c];
            ctrans[cl * kk + c] = if e == DEAD {
                DEAD
            } else {
                (class[(e & 0x7FFF_FFFF) as usize] << 1) | (e >> 31)
            };
        }
    }
    drop(trans);

    // initial values: aggregate x^{des(s)} z^s over raw states per class
    let mut init = vec![XPoly::zero(); nclasses];
    let mut letters = vec![0u32; lwin];
    let mut zcounts = vec![0u16; kk];
    for s in 0..raw {
        decode_state(s as u64, k, lwin, &mut letters);
        let mut des = 0u32;
        for w in letters.windows(2) {
            if w[0] > w[1] {
                des += 1;
            }
        }
        zcounts.fill(0);
        for &c in &letters {
            zcounts[(c - 1) as usize] += 1;
        }
        init[class[s] as usize]
            .add_assign_term(zdeg_mono(des, &zcounts, req.zmode), Rat::from_integer(1.into()));
    }

    Ok(Automaton {
        trans: ctrans,
        init,
        classes: nclasses,
    })
}

/// Full-distribution DP keyed only by the last letter; valid while the
/// word is too short to contain any match.
fn short_word_coeffs(req: &SeriesRequest, upto: usize, coeffs: &mut [XPoly]) {
    let kk = req.k as usize;
    if upto == 0 {
        return;
    }
    let mut vals: Vec<XPoly> = (1..=req.k)
        .map(|c| {
            let mut zc = vec![0u16; kk];
            zc[(c - 1) as usize] = 1;
            XPoly::monomial(zdeg_mono(0, &zc, req.zmode), Rat::from_integer(1.into()))
        })
        .collect();
    let sum_x = |vals: &[XPoly]| {
        let mut s = XPoly::zero();
        for v in vals {
            s.add_assign(v);
        }
        s.mul_xpow(1)
    };
    coeffs[1] = sum_x(&vals);
    for n in 2..=upto {
        let mut next: Vec<XPoly> = vec![XPoly::zero(); kk];
        for c in 1..=req.k {
            let mut acc = XPoly::zero();
            for d in 1..=req.k {
                if vals[(d - 1) as usize].is_zero() {
                    continue;
                }
                let mut term = vals[(d - 1) as usize].clone();
                if d > c {
                    term = term.mul_xpow(1);
                }
                acc.add_assign(&term);
            }
            let zc = req.zmode.z(c);
            next[(c - 1) as usize] = acc.mul(&zc);
        }
        vals = next;
        coeffs[n] = sum_x(&vals);
    }
}

/// Transfer-matrix computation of the avoidance series; agrees with
/// `brute_series` everywhere both run.
pub fn dp_series(req: &SeriesRequest) -> Result<TSeries> {
    req.validate()?;
    let mut out = TSeries::zero(req.order, req.zmode);
    *out.coeff_mut(0) = XPoly::one();
    if req.order == 0 {
        return Ok(out);
    }
    let j = req.pattern.len();

    if j == 1 {
        // every letter is its own window
        match req.pattern.mode() {
            MatchMode::Reduced => return Ok(out), // red(c) = 1 = u for any c
            MatchMode::Exact => {
                // words avoiding one literal letter: last-letter DP over the rest
                let banned = req.pattern.letters()[0];
                let mut vals: Vec<XPoly> = Vec::new();
                let alive: Vec<u32> = (1..=req.k).filter(|&c| c != banned).collect();
                for n in 1..=req.order {
                    if n == 1 {
                        vals = alive
                            .iter()
                            .map(|&c| {
                                let mut zc = vec![0u16; req.k as usize];
                                zc[(c - 1) as usize] = 1;
                                XPoly::monomial(
                                    zdeg_mono(0, &zc, req.zmode),
                                    Rat::from_integer(1.into()),
                                )
                            })
                            .collect();
                    } else {
                        let mut next = vec![XPoly::zero(); alive.len()];
                        for (ci, &c) in alive.iter().enumerate() {
                            let mut acc = XPoly::zero();
                            for (di, &d) in alive.iter().enumerate() {
                                let mut term = vals[di].clone();
                                if d > c {
                                    term = term.mul_xpow(1);
                                }
                                acc.add_assign(&term);
                            }
                            next[ci] = acc.mul(&req.zmode.z(c));
                        }
                        vals = next;
                    }
                    let mut s = XPoly::zero();
                    for v in &vals {
                        s.add_assign(v);
                    }
                    *out.coeff_mut(n) = s.mul_xpow(1);
                }
                return Ok(out);
            }
        }
    }

    let lwin = j - 1;
    let short_upto = req.order.min(lwin - 1);
    let mut coeffs = vec![XPoly::zero(); req.order + 1];
    short_word_coeffs(req, short_upto, &mut coeffs);
    for n in 1..=short_upto {
        *out.coeff_mut(n) = std::mem::take(&mut coeffs[n]);
    }
    if req.order < lwin {
        return Ok(out);
    }

    let auto = build_automaton(req)?;
    let kk = req.k as usize;
    let mut vals = auto.init;
    let sum_x = |vals: &[XPoly]| {
        let mut s = XPoly::zero();
        for v in vals {
            s.add_assign(v);
        }
        s.mul_xpow(1)
    };
    *out.coeff_mut(lwin) = sum_x(&vals);
    let zfactors: Vec<XPoly> = (1..=req.k).map(|c| req.zmode.z(c)).collect();
    for n in (lwin + 1)..=req.order {
        let mut next = vec![XPoly::zero(); auto.classes];
        for cl in 0..auto.classes {
            if vals[cl].is_zero() {
                continue;
            }
            for c in 0..kk {
                let e = auto.trans[cl * kk + c];
                if e == DEAD {
                    continue;
                }
                let target = (e >> 1) & 0x3FFF_FFFF;
                let desc = e & 1;
                let mut term = vals[cl].mul(&zfactors[c]);
                if desc == 1 {
                    term = term.mul_xpow(1);
                }
                next[(target) as usize].add_assign(&term);
            }
        }
        vals = next;
        *out.coeff_mut(n) = sum_x(&vals);
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Compositions and the reciprocal coefficients
// ---------------------------------------------------------------------

/// A composition of n: ordered parts >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Coefficient of t^n in the reciprocal of the avoidance series,
/// expanded as sum over compositions (b_1..b_l) of n of
/// (-1)^l prod_i N_{b_i}. Part values reuse one memoized DP run.
pub fn recip_coeff_compositions(
    u: &Pattern,
    k: u32,
    n: usize,
    zmode: ZMode,
    budget: &Budget,
) -> Result<XPoly> {
    if n == 0 {
        return Ok(XPoly::one());
    }
    if n > budget.composition_max_n {
        return Err(Error::BudgetExceeded {
            what: "composition expansion".to_string(),
            needed: 1u128.checked_shl(n as u32 - 1).unwrap_or(u128::MAX),
            budget: 1u128 << (budget.composition_max_n.min(127) - 1),
        });
    }
    let mut req = SeriesRequest::new(u.clone(), k, n).with_zmode(zmode);
    req.budget = budget.clone();
    let series = dp_series(&req)?;
    let parts: Vec<XPoly> = (0..=n).map(|b| series.coeff(b).clone()).collect();

    fn rec(remaining: usize, acc: &XPoly, len: usize, parts: &[XPoly], total: &mut XPoly) {
        if remaining == 0 {
            if len % 2 == 1 {
                total.sub_assign(acc);
            } else {
                total.add_assign(acc);
            }
            return;
        }
        for b in 1..=remaining {
            if parts[b].is_zero() {
                continue;
            }
            let next = acc.mul(&parts[b]);
            rec(remaining - b, &next, len + 1, parts, total);
        }
    }

    let mut total = XPoly::zero();
    rec(n, &XPoly::one(), 0, &parts, &mut total);
    Ok(total)
}

// ---------------------------------------------------------------------
// Fixed points of the brick-splitting involution
// ---------------------------------------------------------------------

/// A brick composition together with a filling word that survives the
/// sign-reversing involution: weakly increasing inside each brick, no
/// match inside a single brick, and every decrease between bricks is
/// covered by a match spanning exactly those two bricks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub composition: Composition,
    pub word: Word,
}

struct FpSearch<'a, F: FnMut(&[usize], &[u32])> {
    u: &'a Pattern,
    k: u32,
    brick_of: Vec<usize>,
    brick_start: Vec<usize>,
    brick_end: Vec<usize>,
    word: Vec<u32>,
    visit: F,
}

impl<'a, F: FnMut(&[usize], &[u32])> FpSearch<'a, F> {
    /// Obligations: (boundary position p, deadline) for a decrease
    /// between bricks at positions p-1, p awaiting a covering match.
    fn rec(&mut self, pos: usize, parts: &[usize], pending: &[(usize, usize)]) {
        let n = self.word.len();
        if pos == n {
            debug_assert!(pending.is_empty());
            (self.visit)(parts, &self.word);
            return;
        }
        let j = self.u.len();
        let new_brick = pos > 0 && self.brick_of[pos] != self.brick_of[pos - 1];
        for c in 1..=self.k {
            // weakly increasing inside a brick
            if pos > 0 && !new_brick && self.word[pos - 1] > c {
                continue;
            }
            let mut pend: Vec<(usize, usize)> = pending.to_vec();
            if new_brick && self.word[pos - 1] > c {
                // decrease between bricks: a covering match must fit
                let bi = self.brick_of[pos - 1];
                let lo = self.brick_start[bi].max(pos.saturating_sub(j - 1));
                let deadline = (pos + j - 2).min(self.brick_end[bi + 1]);
                if lo + j - 1 > self.brick_end[bi + 1] || lo > pos - 1 {
                    continue; // no window can cover the pair inside the two bricks
                }
                pend.push((pos, deadline));
            }
            self.word[pos] = c;
            if self.check_windows(pos, &mut pend) {
                self.rec(pos + 1, parts, &pend);
            }
        }
        self.word[pos] = 0;
    }

    /// Process windows ending at `pos`; false means prune this letter.
    fn check_windows(&self, pos: usize, pending: &mut Vec<(usize, usize)>) -> bool {
        let j = self.u.len();
        if pos + 1 >= j {
            let q = pos + 1 - j;
            let window = &self.word[q..=pos];
            if self.u.matches_window(window) {
                // a match wholly inside one brick is forbidden
                if self.brick_of[q] == self.brick_of[pos] {
                    return false;
                }
                // resolve any obligation whose boundary pair the window
                // covers while staying inside the two bricks involved
                pending.retain(|&(b, _)| {
                    let bi = self.brick_of[b - 1];
                    let covers = q <= b - 1 && pos >= b;
                    let inside = q >= self.brick_start[bi] && pos <= self.brick_end[bi + 1];
                    !(covers && inside)
                });
            }
        }
        // unresolved obligation at its deadline kills the branch
        !pending.iter().any(|&(_, d)| d <= pos)
    }
}

fn visit_fixed_points<F: FnMut(&[usize], &[u32])>(
    u: &Pattern,
    k: u32,
    n: usize,
    budget: &Budget,
    visit: F,
) -> Result<()> {
    if u.descent_count() >= 2 {
        return Err(Error::UnsupportedClass {
            case: "des>=2".to_string(),
            detail: "fixed points of the involution are only characterized for patterns with at most one descent"
                .to_string(),
        });
    }
    validate_alphabet(k)?;
    let needed = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget.fixpoint_steps as u128 {
        return Err(Error::BudgetExceeded {
            what: "fixed-point backtracking".to_string(),
            needed,
            budget: budget.fixpoint_steps as u128,
        });
    }
    if n == 0 {
        return Ok(());
    }

    let mut search = FpSearch {
        u,
        k,
        brick_of: vec![0; n],
        brick_start: Vec::new(),
        brick_end: Vec::new(),
        word: vec![0; n],
        visit,
    };

    // enumerate compositions of n as the brick layout
    fn comps<F: FnMut(&[usize], &[u32])>(
        s: &mut FpSearch<'_, F>,
        remaining: usize,
        parts: &mut Vec<usize>,
        n: usize,
    ) {
        if remaining == 0 {
            let mut pos = 0;
            s.brick_start.clear();
            s.brick_end.clear();
            for (bi, &b) in parts.iter().enumerate() {
                s.brick_start.push(pos);
                s.brick_end.push(pos + b - 1);
                for _ in 0..b {
                    s.brick_of[pos] = bi;
                    pos += 1;
                }
            }
            debug_assert_eq!(pos, n);
            s.rec(0, parts, &[]);
            return;
        }
        for b in 1..=remaining {
            parts.push(b);
            comps(s, remaining - b, parts, n);
            parts.pop();
        }
    }

    let mut parts = Vec::new();
    comps(&mut search, n, &mut parts, n);
    Ok(())
}

/// All fixed points for bricks filling a word of length n over `[k]`.
pub fn enumerate_fixed_points(
    u: &Pattern,
    k: u32,
    n: usize,
    budget: &Budget,
) -> Result<Vec<FixedPoint>> {
    let mut out = Vec::new();
    visit_fixed_points(u, k, n, budget, |parts, word| {
        out.push(FixedPoint {
            composition: Composition(parts.to_vec()),
            word: Word::new(word.to_vec()).expect("letters are >= 1"),
        });
    })?;
    Ok(out)
}

/// Signed fixed-point sum: sum over fixed points of (-1)^l x^l z^w with
/// l the number of bricks. Equals `recip_coeff_compositions`.
pub fn recip_coeff_fixed_points(
    u: &Pattern,
    k: u32,
    n: usize,
    zmode: ZMode,
    budget: &Budget,
) -> Result<XPoly> {
    if n == 0 {
        return Ok(XPoly::one());
    }
    zmode.validate(n)?;
    let mut total = XPoly::zero();
    let mut zcounts = vec![0u16; k as usize];
    visit_fixed_points(u, k, n, budget, |parts, word| {
        let l = parts.len();
        zcounts.fill(0);
        for &c in word {
            zcounts[(c - 1) as usize] += 1;
        }
        let sign = if l % 2 == 1 { -1i64 } else { 1 };
        total.add_assign_term(
            zdeg_mono(l as u32, &zcounts, zmode),
            Rat::from_integer(sign.into()),
        );
    })?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn pat(s: &str) -> Pattern {
        Pattern::parse(s, MatchMode::Reduced).unwrap()
    }

    fn epat(s: &str) -> Pattern {
        Pattern::parse(s, MatchMode::Exact).unwrap()
    }

    fn xcoeff(p: &XPoly, m: u32) -> i64 {
        let c = p.coeff_x(m);
        assert!(c.denom() == &num_bigint::BigInt::from(1));
        let n: num_bigint::BigInt = c.numer().clone();
        i64::try_from(n).unwrap()
    }

    #[test]
    fn brute_2341_matches_hand_values() {
        let req = SeriesRequest::new(pat("2341"), 5, 4);
        let s = brute_series(&req).unwrap();
        assert!(s.coeff(0).is_one());
        assert_eq!(xcoeff(s.coeff(1), 1), 5);
        assert_eq!(xcoeff(s.coeff(2), 1), 15);
        assert_eq!(xcoeff(s.coeff(2), 2), 10);
        assert_eq!(xcoeff(s.coeff(4), 1), 70);
        assert_eq!(xcoeff(s.coeff(4), 2), 360);
        assert_eq!(xcoeff(s.coeff(4), 3), 185);
        assert_eq!(xcoeff(s.coeff(4), 4), 5);
    }

    #[test]
    fn brute_full_distribution_mass_before_pattern_fits() {
        // n < |u| means nothing can match: mass is k^n
        let req = SeriesRequest::new(pat("2341"), 3, 3);
        let s = brute_series(&req).unwrap();
        for n in 0..=3 {
            assert_eq!(s.coeff(n).eval_ones(), rat(3i64.pow(n as u32)));
        }
    }

    #[test]
    fn brute_2221_t4() {
        let req = SeriesRequest::new(pat("2221"), 5, 4);
        let s = brute_series(&req).unwrap();
        assert_eq!(xcoeff(s.coeff(4), 2), 355); // 5 * 71
        assert_eq!(s.coeff(4).eval_ones(), rat(615));
    }

    #[test]
    fn brute_budget_guard() {
        let mut req = SeriesRequest::new(pat("21"), 5, 10);
        req.budget.brute_word_steps = 100;
        match brute_series(&req) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn dp_agrees_with_brute_small_grid() {
        for (p, k) in [
            ("2341", 5u32),
            ("2221", 4),
            ("3412", 5),
            ("12433", 4),
            ("12311", 4),
            ("2312", 4),
            ("132", 3),
            ("11", 3),
            ("112", 3),
        ] {
            let req = SeriesRequest::new(pat(p), k, 6);
            let b = brute_series(&req).unwrap();
            let d = dp_series(&req).unwrap();
            assert_eq!(b, d, "pattern {p} over [{k}]");
        }
    }

    #[test]
    fn dp_agrees_with_brute_exact_mode() {
        for (p, k) in [("131", 3u32), ("132", 3), ("2341", 5), ("12433", 5)] {
            let req = SeriesRequest::new(epat(p), k, 6);
            let b = brute_series(&req).unwrap();
            let d = dp_series(&req).unwrap();
            assert_eq!(b, d, "exact pattern {p} over [{k}]");
        }
    }

    #[test]
    fn dp_agrees_with_brute_symbolic_z() {
        let req = SeriesRequest::new(pat("231"), 3, 5).with_zmode(ZMode::Symbolic { k: 3 });
        let b = brute_series(&req).unwrap();
        let d = dp_series(&req).unwrap();
        assert_eq!(b, d);
    }

    #[test]
    fn dp_12433_exact_t5_mass() {
        // exactly one word of length 5 equals the pattern
        let req = SeriesRequest::new(epat("12433"), 9, 5);
        let s = dp_series(&req).unwrap();
        assert_eq!(s.coeff(5).eval_ones(), rat(59048));
        assert_eq!(xcoeff(s.coeff(5), 2), 18611);
    }

    #[test]
    fn dp_pattern_11_over_1() {
        let req = SeriesRequest::new(pat("11"), 1, 5);
        let s = dp_series(&req).unwrap();
        assert!(s.coeff(0).is_one());
        assert_eq!(xcoeff(s.coeff(1), 1), 1);
        for n in 2..=5 {
            assert!(s.coeff(n).is_zero(), "t^{n}");
        }
    }

    #[test]
    fn dp_length_one_patterns() {
        // reduced: every letter matches, only the empty word survives
        let req = SeriesRequest::new(pat("1"), 3, 4);
        let s = dp_series(&req).unwrap();
        assert!(s.coeff(0).is_one());
        for n in 1..=4 {
            assert!(s.coeff(n).is_zero());
        }
        // exact: avoid the letter 2 over [3]
        let req = SeriesRequest::new(epat("2"), 3, 4);
        let s = dp_series(&req).unwrap();
        let b = brute_series(&req).unwrap();
        assert_eq!(s, b);
        assert_eq!(s.coeff(4).eval_ones(), rat(16)); // 2^4
    }

    #[test]
    fn composition_coeff_n1_is_minus_kx() {
        let p = recip_coeff_compositions(&pat("2341"), 5, 1, ZMode::Ones, &Budget::default())
            .unwrap();
        assert_eq!(xcoeff(&p, 1), -5);
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn composition_coeff_n2_sign_convention() {
        // (-1)^2 N_1^2 + (-1)^1 N_2
        let u = pat("2341");
        let req = SeriesRequest::new(u.clone(), 5, 2);
        let s = dp_series(&req).unwrap();
        let expect = s.coeff(1).mul(s.coeff(1)).sub(s.coeff(2));
        let got = recip_coeff_compositions(&u, 5, 2, ZMode::Ones, &Budget::default()).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn fixed_points_equal_composition_sum() {
        let budget = Budget::default();
        for n in 1..=5 {
            let a = recip_coeff_compositions(&pat("2341"), 5, n, ZMode::Ones, &budget).unwrap();
            let b = recip_coeff_fixed_points(&pat("2341"), 5, n, ZMode::Ones, &budget).unwrap();
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn fixed_points_match_recip_of_series() {
        // recurrence route: coefficients of 1/N via series reciprocal
        let u = pat("2312");
        let req = SeriesRequest::new(u.clone(), 4, 6);
        let recip = dp_series(&req).unwrap().reciprocal().unwrap();
        for n in 0..=6 {
            let fp =
                recip_coeff_fixed_points(&u, 4, n, ZMode::Ones, &Budget::default()).unwrap();
            assert_eq!(&fp, recip.coeff(n), "n={n}");
        }
    }

    #[test]
    fn fixed_points_des0_are_weakly_increasing_brick_fillings() {
        // for des(u)=0 every fixed point's word is weakly increasing and
        // no brick contains a match
        let u = pat("112");
        let fps = enumerate_fixed_points(&u, 3, 4, &Budget::default()).unwrap();
        assert!(!fps.is_empty());
        for fp in &fps {
            assert!(fp.word.is_weakly_increasing());
            let letters = fp.word.letters();
            let mut pos = 0;
            for &b in fp.composition.parts() {
                let brick = &letters[pos..pos + b];
                for q in 0..brick.len().saturating_sub(2) {
                    assert!(!u.matches_window(&brick[q..q + 3]));
                }
                pos += b;
            }
        }
        // direct filter cross-check of the signed sum
        let got = recip_coeff_fixed_points(&u, 3, 4, ZMode::Ones, &Budget::default()).unwrap();
        let series = dp_series(&SeriesRequest::new(u.clone(), 3, 4)).unwrap();
        let expect = series.reciprocal().unwrap();
        assert_eq!(&got, expect.coeff(4));
    }

    #[test]
    fn fixed_points_reject_two_descent_patterns() {
        let u = pat("213243");
        assert!(matches!(
            recip_coeff_fixed_points(&u, 4, 3, ZMode::Ones, &Budget::default()),
            Err(Error::UnsupportedClass { .. })
        ));
    }

    #[test]
    fn reversal_symmetry_of_avoidance_mass() {
        // mass at x=1 is invariant under reversing the pattern
        for (p, k) in [("2341", 4u32), ("12311", 4), ("2312", 4)] {
            let u = pat(p);
            let rev = Pattern::new(u.word().reverse(), MatchMode::Reduced).unwrap();
            let a = dp_series(&SeriesRequest::new(u, k, 6)).unwrap();
            let b = dp_series(&SeriesRequest::new(rev, k, 6)).unwrap();
            assert_eq!(a.masses(), b.masses(), "{p}");
        }
    }

    #[test]
    fn threads_do_not_change_results() {
        let mut req = SeriesRequest::new(pat("2341"), 5, 5);
        let one = brute_series(&req).unwrap();
        req.threads = 4;
        let four = brute_series(&req).unwrap();
        assert_eq!(one, four);
    }
}
