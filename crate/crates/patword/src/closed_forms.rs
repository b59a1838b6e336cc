//! The labeled master generating functions and the substitution pipeline
//! that turns a weight table into the avoidance series.
//!
//! The four masters compute, for a fully generic assignment of the pair
//! variables x_{ab}, the variable y, and per-letter z values, the series
//!
//!   des:  1 - x sum_w t^{|w|} y^{wris(w)} z^w prod_{descents} x_{ab}
//!   ris:  1 - x sum_{weakly incr w} t^{|w|} y^{lev(w)} z^w prod_{rises} x_{ab}
//!   lev:  1 - x sum_{weakly incr w} t^{|w|} y^{ris(w)} z^w prod_{levels} x_{aa}
//!   wdes: 1 - x sum_w t^{|w|} y^{ris(w)} z^w prod_{weak descents} x_{ab}
//!
//! each evaluated by its compact right-hand side (chain sums over
//! subsets, a telescoping product, or weakly decreasing words) rather
//! than by word enumeration. Substituting y = 1-x and the collapse
//! weights for x_{ab} turns these into the reciprocal of the avoidance
//! series; `closed_series` performs that substitution and the final
//! division.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Rat, TSeries, XPoly, ZMode};
use crate::clusters::{weight_table, WeightTable};
use crate::error::{Error, Result};
use crate::overlap::{classify_pattern, AlphabetSpec, DispatchCase};
use crate::verify::{compare_series, VerifyReport};
use crate::words::{validate_alphabet, Pattern};

/// Which master to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasterKind {
    Des,
    Ris,
    Lev,
    WDes,
}

impl std::fmt::Display for MasterKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MasterKind::Des => "des",
            MasterKind::Ris => "ris",
            MasterKind::Lev => "lev",
            MasterKind::WDes => "wdes",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for MasterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "des" => Ok(MasterKind::Des),
            "ris" => Ok(MasterKind::Ris),
            "lev" => Ok(MasterKind::Lev),
            "wdes" => Ok(MasterKind::WDes),
            other => Err(Error::Parse(format!("unknown master {other:?}"))),
        }
    }
}

/// Assignment of the pair variables and y. Entries are series; rational
/// constants embed as constant series.
#[derive(Clone, Debug)]
pub struct XAssignment {
    pub entries: BTreeMap<(u32, u32), TSeries>,
    pub y: XPoly,
}

impl XAssignment {
    pub fn from_weight_table(table: &WeightTable) -> Self {
        XAssignment {
            entries: table.entries.clone(),
            y: XPoly::one_minus_x(),
        }
    }

    fn get(&self, a: u32, b: u32) -> Result<&TSeries> {
        self.entries.get(&(a, b)).ok_or_else(|| {
            Error::InvalidRequest(format!("assignment is missing the pair ({a},{b})"))
        })
    }
}

/// Per-letter z polynomials (all 1, symbolic, or rational constants).
pub fn z_polys(k: u32, zmode: ZMode) -> Vec<XPoly> {
    (1..=k).map(|i| zmode.z(i)).collect()
}

struct MasterCtx<'a> {
    k: u32,
    order: usize,
    zmode: ZMode,
    assign: &'a XAssignment,
    zs: &'a [XPoly],
}

impl<'a> MasterCtx<'a> {
    fn y_series(&self) -> TSeries {
        TSeries::constant(self.assign.y.clone(), self.order, self.zmode)
    }

    fn zt(&self, i: u32) -> TSeries {
        // z_i t
        TSeries::monomial(self.zs[(i - 1) as usize].clone(), 1, self.order, self.zmode)
    }
}

/// sum over nonempty S subseteq `[k]` of t^{|S|} DXYZ(S), where
/// DXYZ couples consecutive elements of S by (x_{j_{i+1} j_i} - y).
fn des_inner(ctx: &MasterCtx) -> Result<TSeries> {
    let mut total = TSeries::zero(ctx.order, ctx.zmode);
    let y = ctx.y_series();
    // DFS over ascending subsets with incremental products
    fn dfs(
        ctx: &MasterCtx,
        y: &TSeries,
        prev: u32,
        term: &TSeries,
        total: &mut TSeries,
    ) -> Result<()> {
        for j in (prev + 1)..=ctx.k {
            let mut next = term.mul(&ctx.zt(j))?;
            if prev >= 1 {
                let factor = ctx.assign.get(j, prev)?.sub(y)?;
                next = next.mul(&factor)?;
            }
            if next.is_zero() {
                continue;
            }
            *total = total.add(&next)?;
            dfs(ctx, y, j, &next, total)?;
        }
        Ok(())
    }
    let one = TSeries::one(ctx.order, ctx.zmode);
    dfs(ctx, &y, 0, &one, &mut total)?;
    Ok(total)
}

/// sum over nonempty S of t^{|S|} RXYZ(S): per-element factors
/// z_j/(1 - z_j y t), consecutive elements coupled by x_{j_i j_{i+1}}.
fn ris_inner(ctx: &MasterCtx) -> Result<TSeries> {
    let y = ctx.y_series();
    // element factor: t z_j geom(y z_j t)
    let mut elem = Vec::with_capacity(ctx.k as usize);
    for j in 1..=ctx.k {
        let a = ctx.zt(j).mul(&y)?;
        elem.push(ctx.zt(j).mul(&a.geom()?)?);
    }
    let mut total = TSeries::zero(ctx.order, ctx.zmode);
    fn dfs(
        ctx: &MasterCtx,
        elem: &[TSeries],
        prev: u32,
        term: &TSeries,
        total: &mut TSeries,
    ) -> Result<()> {
        for j in (prev + 1)..=ctx.k {
            let mut next = term.mul(&elem[(j - 1) as usize])?;
            if prev >= 1 {
                next = next.mul(ctx.assign.get(prev, j)?)?;
            }
            if next.is_zero() {
                continue;
            }
            *total = total.add(&next)?;
            dfs(ctx, elem, j, &next, total)?;
        }
        Ok(())
    }
    let one = TSeries::one(ctx.order, ctx.zmode);
    dfs(ctx, &elem, 0, &one, &mut total)?;
    Ok(total)
}

/// Q = (prod_{i=1..k}(1 + y A_i) - 1)/y with A_i = z_i t/(1 - x_{ii} z_i t),
/// computed by the division-free recurrence Q_i = Q_{i-1} + A_i P_{i-1}.
fn lev_inner(ctx: &MasterCtx) -> Result<TSeries> {
    let y = ctx.y_series();
    let mut p = TSeries::one(ctx.order, ctx.zmode);
    let mut q = TSeries::zero(ctx.order, ctx.zmode);
    for i in 1..=ctx.k {
        let denom_arg = ctx.assign.get(i, i)?.mul(&ctx.zt(i))?;
        let a = ctx.zt(i).mul(&denom_arg.geom()?)?;
        q = q.add(&a.mul(&p)?)?;
        p = p.add(&p.mul(&a.mul(&y)?)?)?;
    }
    Ok(q)
}

/// sum over nonempty weakly decreasing words v over `[k]`, |v| <= order,
/// of t^{|v|} WDXYZ(v): adjacent letters coupled by (x_{ab} - y).
fn wdes_inner(ctx: &MasterCtx) -> Result<TSeries> {
    let y = ctx.y_series();
    let mut total = TSeries::zero(ctx.order, ctx.zmode);
    fn dfs(
        ctx: &MasterCtx,
        y: &TSeries,
        last: u32,
        depth: usize,
        term: &TSeries,
        total: &mut TSeries,
    ) -> Result<()> {
        if depth >= ctx.order {
            return Ok(());
        }
        for c in (1..=last).rev() {
            let mut next = term.mul(&ctx.zt(c))?;
            let factor = ctx.assign.get(last, c)?.sub(y)?;
            next = next.mul(&factor)?;
            if next.is_zero() {
                continue;
            }
            *total = total.add(&next)?;
            dfs(ctx, y, c, depth + 1, &next, total)?;
        }
        Ok(())
    }
    for first in 1..=ctx.k {
        let term = ctx.zt(first);
        if term.is_zero() {
            continue;
        }
        total = total.add(&term)?;
        dfs(ctx, &y, first, 1, &term, &mut total)?;
    }
    Ok(total)
}

fn x_series(order: usize, zmode: ZMode) -> TSeries {
    TSeries::constant(XPoly::x(), order, zmode)
}

/// The master's inner sum before the outer 1 - x(...) wrapping: the
/// subset chain sum (des), the subset product-chain sum (ris), the
/// telescoped product remainder (lev), or the weakly decreasing word
/// sum (wdes).
pub fn inner_sum(
    kind: MasterKind,
    k: u32,
    order: usize,
    assign: &XAssignment,
    zs: &[XPoly],
    zmode: ZMode,
) -> Result<TSeries> {
    validate_alphabet(k)?;
    zmode.validate(order)?;
    let ctx = MasterCtx {
        k,
        order,
        zmode,
        assign,
        zs,
    };
    match kind {
        MasterKind::Des => des_inner(&ctx),
        MasterKind::Ris => ris_inner(&ctx),
        MasterKind::Lev => lev_inner(&ctx),
        MasterKind::WDes => wdes_inner(&ctx),
    }
}

/// U-series for the given master: the generic left-hand side
/// 1 - x sum ... evaluated via the compact right-hand side.
pub fn master(
    kind: MasterKind,
    k: u32,
    order: usize,
    assign: &XAssignment,
    zs: &[XPoly],
    zmode: ZMode,
) -> Result<TSeries> {
    if k == 0 {
        // empty alphabet: only the empty word contributes
        return Ok(TSeries::one(order, zmode));
    }
    validate_alphabet(k)?;
    zmode.validate(order)?;
    if zs.len() != k as usize {
        return Err(Error::InvalidRequest(format!(
            "need {k} z values, got {}",
            zs.len()
        )));
    }
    let ctx = MasterCtx {
        k,
        order,
        zmode,
        assign,
        zs,
    };
    let one = TSeries::one(order, zmode);
    let x = x_series(order, zmode);
    let y = ctx.y_series();
    match kind {
        MasterKind::Des | MasterKind::WDes => {
            let inner = if kind == MasterKind::Des {
                des_inner(&ctx)?
            } else {
                wdes_inner(&ctx)?
            };
            // (1 - (x+y) inner) / (1 - y inner)
            let num = one.sub(&x.add(&y)?.mul(&inner)?)?;
            let den = one.sub(&y.mul(&inner)?)?;
            num.mul(&den.reciprocal()?)
        }
        MasterKind::Ris => {
            let inner = ris_inner(&ctx)?;
            one.sub(&x.mul(&inner)?)
        }
        MasterKind::Lev => {
            let q = lev_inner(&ctx)?;
            one.sub(&x.mul(&q)?)
        }
    }
}

fn case_master(case: DispatchCase) -> Option<MasterKind> {
    match case {
        DispatchCase::Descent => Some(MasterKind::Des),
        DispatchCase::Rise => Some(MasterKind::Ris),
        DispatchCase::Level => Some(MasterKind::Lev),
        DispatchCase::WeakDescent => Some(MasterKind::WDes),
        _ => None,
    }
}

/// Evaluate the closed form with an explicit (possibly perturbed) weight
/// table. Returns the avoidance series itself.
pub fn closed_series_with_table(
    u: &Pattern,
    k: u32,
    order: usize,
    zmode: ZMode,
    table: &WeightTable,
) -> Result<TSeries> {
    let class = classify_pattern(u, AlphabetSpec::Bounded(k))?;
    let Some(kind) = case_master(class.case) else {
        return Err(Error::UnsupportedClass {
            case: class.case.to_string(),
            detail: format!(
                "closed forms cover one-descent patterns in the descent/rise/level/weak-descent classes; \
                 endpoint {:?}, bounded flags {:?}",
                class.endpoint, class.flags_bounded
            ),
        });
    };
    let assign = XAssignment::from_weight_table(table);
    let zs = z_polys(k, zmode);
    let one = TSeries::one(order, zmode);
    let x = x_series(order, zmode);
    let y = TSeries::constant(assign.y.clone(), order, zmode);
    let ctx = MasterCtx {
        k,
        order,
        zmode,
        assign: &assign,
        zs: &zs,
    };
    match kind {
        // ratio forms: N = (1 - y inner) / (1 - (x+y) inner)
        MasterKind::Des | MasterKind::WDes => {
            let inner = if kind == MasterKind::Des {
                des_inner(&ctx)?
            } else {
                wdes_inner(&ctx)?
            };
            let num = one.sub(&y.mul(&inner)?)?;
            let den = one.sub(&x.add(&y)?.mul(&inner)?)?;
            num.mul(&den.reciprocal()?)
        }
        // product/sum forms: N = 1/U
        MasterKind::Ris | MasterKind::Lev => {
            let u_series = master(kind, k, order, &assign, &zs, zmode)?;
            u_series.reciprocal()
        }
    }
}

/// The collapse-method avoidance series for a supported pattern.
pub fn closed_series(u: &Pattern, k: u32, order: usize, zmode: ZMode) -> Result<TSeries> {
    let table = weight_table(u, k, order, zmode)?;
    closed_series_with_table(u, k, order, zmode, &table)
}

// ---------------------------------------------------------------------
// Randomized verification of the master identities
// ---------------------------------------------------------------------

fn random_rat<R: Rng>(rng: &mut R) -> Rat {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=3);
    Rat::new(num.into(), den.into())
}

fn pair_domain(kind: MasterKind, k: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            let keep = match kind {
                MasterKind::Des => a > b,
                MasterKind::Ris => a < b,
                MasterKind::Lev => a == b,
                MasterKind::WDes => a >= b,
            };
            if keep {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Direct word-sum evaluation of the master's left-hand side under a
/// rational assignment; the oracle side of `identity_check`.
fn brute_master(
    kind: MasterKind,
    k: u32,
    order: usize,
    xvals: &BTreeMap<(u32, u32), Rat>,
    y: &Rat,
    zvals: &[Rat],
) -> TSeries {
    let mut total = TSeries::one(order, ZMode::Ones);
    let weakly_increasing_only = matches!(kind, MasterKind::Ris | MasterKind::Lev);

    // weight of one word, None when a needed pair variable is absent
    // (outside the kind's domain, e.g. a strict descent in ris mode)
    fn word_weight(
        kind: MasterKind,
        word: &[u32],
        xvals: &BTreeMap<(u32, u32), Rat>,
        y: &Rat,
        zvals: &[Rat],
    ) -> Rat {
        let mut w = Rat::from_integer(1.into());
        for &c in word {
            w *= &zvals[(c - 1) as usize];
        }
        for i in 0..word.len() - 1 {
            let (a, b) = (word[i], word[i + 1]);
            let (pair_stat, y_stat) = match kind {
                MasterKind::Des => (a > b, a <= b),
                MasterKind::Ris => (a < b, a == b),
                MasterKind::Lev => (a == b, a < b),
                MasterKind::WDes => (a >= b, a < b),
            };
            if pair_stat {
                w *= xvals.get(&(a, b)).expect("pair inside kind domain");
            }
            if y_stat {
                w *= y;
            }
        }
        w
    }

    let mut word: Vec<u32> = Vec::new();
    fn rec(
        kind: MasterKind,
        k: u32,
        order: usize,
        word: &mut Vec<u32>,
        weakly: bool,
        xvals: &BTreeMap<(u32, u32), Rat>,
        y: &Rat,
        zvals: &[Rat],
        total: &mut TSeries,
    ) {
        let n = word.len();
        if n >= 1 {
            let w = word_weight(kind, word, xvals, y, zvals);
            // contribution: -x * weight at t^n
            total
                .coeff_mut(n)
                .add_assign(&XPoly::x().scale(&-w));
        }
        if n == order {
            return;
        }
        let lo = if weakly { word.last().copied().unwrap_or(1) } else { 1 };
        for c in lo..=k {
            word.push(c);
            rec(kind, k, order, word, weakly, xvals, y, zvals, total);
            word.pop();
        }
    }
    rec(
        kind,
        k,
        order,
        &mut word,
        weakly_increasing_only,
        xvals,
        y,
        zvals,
        &mut total,
    );
    total
}

/// Seeded randomized comparison of a master's compact form against the
/// word-sum definition. All trials must agree coefficient by coefficient.
pub fn identity_check(
    kind: MasterKind,
    k: u32,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if k > 5 || order > 8 {
        return Err(Error::InvalidRequest(format!(
            "identity_check brute side is exponential; need k <= 5 and order <= 8, got k={k}, order={order}"
        )));
    }
    validate_alphabet(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new(vec![
        format!("master_{kind}"),
        "word_sum".to_string(),
    ]);
    for trial in 0..trials {
        let y: Rat = random_rat(&mut rng);
        let zvals: Vec<Rat> = (0..k).map(|_| random_rat(&mut rng)).collect();
        let mut xvals = BTreeMap::new();
        let mut entries = BTreeMap::new();
        for (a, b) in pair_domain(kind, k) {
            let v = random_rat(&mut rng);
            xvals.insert((a, b), v.clone());
            entries.insert(
                (a, b),
                TSeries::constant(XPoly::constant(v), order, ZMode::Ones),
            );
        }
        let assign = XAssignment {
            entries,
            y: XPoly::constant(y.clone()),
        };
        let zs: Vec<XPoly> = zvals.iter().cloned().map(XPoly::constant).collect();
        let compact = master(kind, k, order, &assign, &zs, ZMode::Ones)?;
        let brute = brute_master(kind, k, order, &xvals, &y, &zvals);
        if let Some(mm) = compare_series(&compact, &brute) {
            report
                .warnings
                .push(format!("failed on trial {trial} of seed {seed}"));
            report.fail(mm);
            return Ok(report);
        }
    }
    report
        .warnings
        .push(format!("{trials} randomized trials, seed {seed}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dp_series, SeriesRequest};
    use crate::words::MatchMode;
    use crate::algebra::rat;

    fn pat(s: &str) -> Pattern {
        Pattern::parse(s, MatchMode::Reduced).unwrap()
    }

    fn epat(s: &str) -> Pattern {
        Pattern::parse(s, MatchMode::Exact).unwrap()
    }

    #[test]
    fn master_trivial_sizes() {
        // order 0 or an empty alphabet: every master is the constant 1
        let assign = XAssignment {
            entries: BTreeMap::new(),
            y: XPoly::one_minus_x(),
        };
        for kind in [MasterKind::Des, MasterKind::Ris, MasterKind::Lev, MasterKind::WDes] {
            let u = master(kind, 1, 0, &with_unit_pairs(&assign, kind, 1), &z_polys(1, ZMode::Ones), ZMode::Ones).unwrap();
            assert!(u.coeff(0).is_one(), "{kind}");
            let empty = master(kind, 0, 4, &assign, &[], ZMode::Ones).unwrap();
            assert_eq!(empty, TSeries::one(4, ZMode::Ones), "{kind} over the empty alphabet");
        }
    }

    fn with_unit_pairs(base: &XAssignment, kind: MasterKind, k: u32) -> XAssignment {
        let mut a = base.clone();
        for (p, q) in pair_domain(kind, k) {
            a.entries
                .insert((p, q), TSeries::constant(XPoly::zero(), 0, ZMode::Ones));
        }
        a
    }

    #[test]
    fn master_ris_k1_single_subset() {
        // k=1: U = 1 - x z1 t/(1 - z1 y t)
        let order = 5;
        let mut entries = BTreeMap::new();
        entries.insert(
            (1u32, 1u32),
            TSeries::constant(XPoly::zero(), order, ZMode::Ones),
        );
        let assign = XAssignment {
            entries,
            y: XPoly::one_minus_x(),
        };
        let u = master(
            MasterKind::Ris,
            1,
            order,
            &assign,
            &z_polys(1, ZMode::Ones),
            ZMode::Ones,
        )
        .unwrap();
        // coefficient of t^n is -x (1-x)^{n-1} for n >= 1
        let mut pow = XPoly::one();
        for n in 1..=order {
            let expect = pow.mul_xpow(1).neg();
            assert_eq!(u.coeff(n), &expect, "t^{n}");
            pow = pow.mul(&XPoly::one_minus_x());
        }
    }

    #[test]
    fn master_lev_k1_forced() {
        // k=1, x_{11} = 0: U = 1 - x z1 t
        let order = 4;
        let mut entries = BTreeMap::new();
        entries.insert(
            (1u32, 1u32),
            TSeries::constant(XPoly::zero(), order, ZMode::Ones),
        );
        let assign = XAssignment {
            entries,
            y: XPoly::one_minus_x(),
        };
        let u = master(
            MasterKind::Lev,
            1,
            order,
            &assign,
            &z_polys(1, ZMode::Ones),
            ZMode::Ones,
        )
        .unwrap();
        assert_eq!(u.coeff(1), &XPoly::x().neg());
        for n in 2..=order {
            assert!(u.coeff(n).is_zero(), "t^{n}");
        }
    }

    #[test]
    fn stars_and_bars_specialization() {
        // rise inner sum with x_{ij} = 1, y = 1, z = 1 counts weakly
        // increasing words: coefficient of t^n is C(n+k-1, k-1)
        let k = 4u32;
        let order = 7;
        let mut entries = BTreeMap::new();
        for (a, b) in pair_domain(MasterKind::Ris, k) {
            entries.insert((a, b), TSeries::constant(XPoly::one(), order, ZMode::Ones));
        }
        let assign = XAssignment {
            entries,
            y: XPoly::one(),
        };
        let zs = z_polys(k, ZMode::Ones);
        let ctx = MasterCtx {
            k,
            order,
            zmode: ZMode::Ones,
            assign: &assign,
            zs: &zs,
        };
        let inner = ris_inner(&ctx).unwrap();
        let choose = |n: i64, r: i64| -> i64 {
            let mut v = 1i64;
            for i in 0..r {
                v = v * (n - i) / (i + 1);
            }
            v
        };
        for n in 1..=order {
            let expect = choose((n as i64) + (k as i64) - 1, (k as i64) - 1);
            assert_eq!(inner.coeff(n).coeff_x(0), rat(expect), "t^{n}");
        }
    }

    #[test]
    fn closed_2341_matches_dp() {
        let u = pat("2341");
        let closed = closed_series(&u, 5, 7, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 5, 7)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_3412_matches_dp() {
        let u = pat("3412");
        let closed = closed_series(&u, 8, 6, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 8, 6)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_12433_exact_matches_dp() {
        let u = epat("12433");
        let closed = closed_series(&u, 9, 6, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 9, 6)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_12311_matches_dp() {
        let u = pat("12311");
        let closed = closed_series(&u, 7, 6, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 7, 6)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_2312_matches_dp() {
        let u = pat("2312");
        let closed = closed_series(&u, 4, 8, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 4, 8)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_exact_non_overlapping_132() {
        // degenerate weight tables must not break dispatch
        let u = epat("132");
        let closed = closed_series(&u, 4, 7, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 4, 7)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_exact_pattern_outside_alphabet() {
        // no window can ever match, so the series is the full
        // distribution; the all-zero table must reproduce it
        let u = epat("2341");
        let closed = closed_series(&u, 3, 6, ZMode::Ones).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 3, 6)).unwrap();
        assert_eq!(closed, dp);
        assert_eq!(closed.coeff(6).eval_ones(), crate::algebra::rat(729));
    }

    #[test]
    fn closed_symbolic_z_matches_dp() {
        let u = pat("2341");
        let zm = ZMode::Symbolic { k: 4 };
        let closed = closed_series(&u, 4, 5, zm).unwrap();
        let dp = dp_series(&SeriesRequest::new(u, 4, 5).with_zmode(zm)).unwrap();
        assert_eq!(closed, dp);
    }

    #[test]
    fn closed_unsupported_class_reports_classification() {
        let u = pat("2413");
        match closed_series(&u, 5, 5, ZMode::Ones) {
            Err(Error::UnsupportedClass { case, .. }) => assert_eq!(case, "unsupported"),
            other => panic!("expected UnsupportedClass, got {other:?}"),
        }
    }

    #[test]
    fn identity_check_all_masters_small() {
        for kind in [MasterKind::Des, MasterKind::Ris, MasterKind::Lev, MasterKind::WDes] {
            for k in 1..=3u32 {
                let report = identity_check(kind, k, 5, 5, 0xC0FFEE).unwrap();
                assert!(report.agree, "{kind} over [{k}]: {:?}", report.first_mismatch);
            }
        }
    }

    #[test]
    fn identity_check_rejects_oversize() {
        assert!(identity_check(MasterKind::Des, 6, 5, 1, 1).is_err());
        assert!(identity_check(MasterKind::Des, 3, 9, 1, 1).is_err());
    }
}
