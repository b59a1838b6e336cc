//! Truncated formal power series in `t` with [`XPoly`] coefficients.
//!
//! The truncation order is explicit state: a series of order N knows its
//! coefficients for t^0..t^N and nothing beyond. Binary operations take
//! the minimum of the operand orders; a coefficient past the order is an
//! error, never a silent zero.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::xpoly::{Mono, Rat, XPoly};
use crate::error::{Error, Result};

/// Whether z-variables are tracked symbolically or all set to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZMode {
    Ones,
    Symbolic { k: u32 },
}

impl ZMode {
    /// Guard rails for symbolic z: the dense exponent vectors blow up
    /// past small alphabets and orders.
    pub fn validate(&self, order: usize) -> Result<()> {
        if let ZMode::Symbolic { k } = self {
            if *k > 9 {
                return Err(Error::InvalidRequest(format!(
                    "symbolic z supports k <= 9, got {k}"
                )));
            }
            if order > 12 {
                return Err(Error::InvalidRequest(format!(
                    "symbolic z supports order <= 12, got {order}"
                )));
            }
        }
        Ok(())
    }

    /// The polynomial standing for z_i under this mode.
    pub fn z(&self, i: u32) -> XPoly {
        match self {
            ZMode::Ones => XPoly::one(),
            ZMode::Symbolic { k } => XPoly::zvar(i, *k),
        }
    }
}

/// Truncated power series in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    order: usize,
    zmode: ZMode,
    coeffs: Vec<XPoly>,
}

impl TSeries {
    pub fn zero(order: usize, zmode: ZMode) -> Self {
        TSeries {
            order,
            zmode,
            coeffs: vec![XPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize, zmode: ZMode) -> Self {
        let mut s = TSeries::zero(order, zmode);
        s.coeffs[0] = XPoly::one();
        s
    }

    pub fn constant(p: XPoly, order: usize, zmode: ZMode) -> Self {
        let mut s = TSeries::zero(order, zmode);
        s.coeffs[0] = p;
        s
    }

    /// The series t (zero when order is 0).
    pub fn t(order: usize, zmode: ZMode) -> Self {
        let mut s = TSeries::zero(order, zmode);
        if order >= 1 {
            s.coeffs[1] = XPoly::one();
        }
        s
    }

    /// c * t^n.
    pub fn monomial(c: XPoly, n: usize, order: usize, zmode: ZMode) -> Self {
        let mut s = TSeries::zero(order, zmode);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zmode(&self) -> ZMode {
        self.zmode
    }

    pub fn coeff(&self, n: usize) -> &XPoly {
        assert!(
            n <= self.order,
            "coefficient of t^{n} requested from a series of order {}",
            self.order
        );
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut XPoly {
        assert!(n <= self.order);
        &mut self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(XPoly::is_zero)
    }

    fn zmode_join(&self, other: &TSeries) -> Result<ZMode> {
        match (self.zmode, other.zmode) {
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::ZModeMismatch(format!("{a:?} vs {b:?}"))),
        }
    }

    pub fn add(&self, other: &TSeries) -> Result<TSeries> {
        let zmode = self.zmode_join(other)?;
        let order = self.order.min(other.order);
        let mut r = TSeries::zero(order, zmode);
        for n in 0..=order {
            r.coeffs[n] = self.coeffs[n].add(&other.coeffs[n]);
        }
        Ok(r)
    }

    pub fn sub(&self, other: &TSeries) -> Result<TSeries> {
        let zmode = self.zmode_join(other)?;
        let order = self.order.min(other.order);
        let mut r = TSeries::zero(order, zmode);
        for n in 0..=order {
            r.coeffs[n] = self.coeffs[n].sub(&other.coeffs[n]);
        }
        Ok(r)
    }

    /// Cauchy product truncated at the minimum operand order.
    pub fn mul(&self, other: &TSeries) -> Result<TSeries> {
        let zmode = self.zmode_join(other)?;
        let order = self.order.min(other.order);
        let mut r = TSeries::zero(order, zmode);
        for n1 in 0..=order {
            if self.coeffs[n1].is_zero() {
                continue;
            }
            for n2 in 0..=(order - n1) {
                if other.coeffs[n2].is_zero() {
                    continue;
                }
                let prod = self.coeffs[n1].mul(&other.coeffs[n2]);
                r.coeffs[n1 + n2].add_assign(&prod);
            }
        }
        Ok(r)
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            order: self.order,
            zmode: self.zmode,
            coeffs: self.coeffs.iter().map(XPoly::neg).collect(),
        }
    }

    pub fn scale_poly(&self, p: &XPoly) -> TSeries {
        TSeries {
            order: self.order,
            zmode: self.zmode,
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Multiply by t^m, shifting coefficients and dropping overflow.
    pub fn shift_t(&self, m: usize) -> TSeries {
        let mut r = TSeries::zero(self.order, self.zmode);
        for n in 0..=self.order {
            if n + m > self.order {
                break;
            }
            r.coeffs[n + m] = self.coeffs[n].clone();
        }
        r
    }

    /// Reciprocal: R with self * R = 1 + O(t^{N+1}). Requires a constant
    /// term of exactly 1; computed by the standard recurrence
    /// R_n = -sum_{m=1..n} S_m R_{n-m}.
    pub fn reciprocal(&self) -> Result<TSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant(self.coeffs[0].to_string()));
        }
        let mut r = TSeries::zero(self.order, self.zmode);
        r.coeffs[0] = XPoly::one();
        for n in 1..=self.order {
            let mut acc = XPoly::zero();
            for m in 1..=n {
                if self.coeffs[m].is_zero() || r.coeffs[n - m].is_zero() {
                    continue;
                }
                acc.add_assign(&self.coeffs[m].mul(&r.coeffs[n - m]));
            }
            r.coeffs[n] = acc.neg();
        }
        Ok(r)
    }

    /// Geometric expansion 1/(1 - self) = sum_m self^m. Requires a zero
    /// constant term; computed by r_n = sum_{m=1..n} a_m r_{n-m}.
    pub fn geom(&self) -> Result<TSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant(self.coeffs[0].to_string()));
        }
        let mut r = TSeries::zero(self.order, self.zmode);
        r.coeffs[0] = XPoly::one();
        for n in 1..=self.order {
            let mut acc = XPoly::zero();
            for m in 1..=n {
                if self.coeffs[m].is_zero() || r.coeffs[n - m].is_zero() {
                    continue;
                }
                acc.add_assign(&self.coeffs[m].mul(&r.coeffs[n - m]));
            }
            r.coeffs[n] = acc;
        }
        Ok(r)
    }

    /// The rational coefficient of x^m in each t-power. Requires plain
    /// z-mode so the coefficients are honest rationals.
    pub fn x_slice(&self, m: u32) -> Result<Vec<Rat>> {
        if self.zmode != ZMode::Ones {
            return Err(Error::ZModeMismatch(
                "x_slice requires z-mode ones".to_string(),
            ));
        }
        Ok((0..=self.order)
            .map(|n| self.coeffs[n].coeff_x(m))
            .collect())
    }

    /// Evaluate every coefficient at x = 1, z = 1.
    pub fn masses(&self) -> Vec<Rat> {
        self.coeffs.iter().map(XPoly::eval_ones).collect()
    }
}

/// True iff S * den = num through the length of S. `num` and `den` are
/// polynomials in t with rational coefficients, den(0) != 0.
pub fn rational_match(s: &[Rat], num: &[Rat], den: &[Rat]) -> bool {
    assert!(!den.is_empty() && !den[0].is_zero(), "den(0) must be nonzero");
    for n in 0..s.len() {
        let mut lhs = Rat::zero();
        for (i, d) in den.iter().enumerate() {
            if i > n {
                break;
            }
            lhs += d * &s[n - i];
        }
        let rhs = num.get(n).cloned().unwrap_or_else(Rat::zero);
        if lhs != rhs {
            return false;
        }
    }
    true
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for n in 0..=self.order {
            let c = &self.coeffs[n];
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            let needs_parens = c.num_terms() > 1;
            let cs = c.to_string();
            match n {
                0 => write!(f, "{cs}")?,
                _ => {
                    let tpow = if n == 1 {
                        "t".to_string()
                    } else {
                        format!("t^{n}")
                    };
                    if c.is_one() {
                        write!(f, "{tpow}")?;
                    } else if needs_parens {
                        write!(f, "({cs}) {tpow}")?;
                    } else {
                        write!(f, "{cs} {tpow}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

// ---------------------------------------------------------------------
// JSON form. Rationals are strings ("p/q" or "n"), term order mirrors
// the canonical in-memory order.
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermDto {
    x: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    z: Vec<u16>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct CoeffDto {
    t: usize,
    terms: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    order: usize,
    z: ZMode,
    coeffs: Vec<CoeffDto>,
}

fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |txt: &str| -> Result<num_bigint::BigInt> {
        txt.parse()
            .map_err(|_| Error::Parse(format!("bad integer {txt:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".to_string()));
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Serialize for TSeries {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = SeriesDto {
            order: self.order,
            z: self.zmode,
            coeffs: (0..=self.order)
                .map(|n| CoeffDto {
                    t: n,
                    terms: self.coeffs[n]
                        .terms()
                        .map(|(m, c)| TermDto {
                            x: m.x,
                            z: m.z.clone(),
                            c: fmt_rat(c),
                        })
                        .collect(),
                })
                .collect(),
        };
        dto.serialize(ser)
    }
}

/// Largest truncation order accepted from the wire; allocation is
/// proportional to the order, so untrusted input must be capped before
/// the coefficient vector is built.
pub const MAX_WIRE_ORDER: usize = 4096;

impl<'de> Deserialize<'de> for TSeries {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let dto = SeriesDto::deserialize(de)?;
        if dto.order > MAX_WIRE_ORDER {
            return Err(D::Error::custom(format!(
                "order {} exceeds the wire cap {MAX_WIRE_ORDER}",
                dto.order
            )));
        }
        let mut s = TSeries::zero(dto.order, dto.z);
        for cd in dto.coeffs {
            if cd.t > dto.order {
                return Err(D::Error::custom(format!(
                    "coefficient t^{} beyond order {}",
                    cd.t, dto.order
                )));
            }
            let mut p = XPoly::zero();
            for term in cd.terms {
                if let ZMode::Symbolic { k } = dto.z {
                    if !term.z.is_empty() && term.z.len() != k as usize {
                        return Err(D::Error::custom("z-multidegree length mismatch"));
                    }
                }
                let c = parse_rat(&term.c).map_err(D::Error::custom)?;
                p.add_assign_term(Mono { x: term.x, z: term.z }, c);
            }
            s.coeffs[cd.t] = p;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::xpoly::rat;

    fn ones(order: usize) -> ZMode {
        let _ = order;
        ZMode::Ones
    }

    #[test]
    fn one_plus_t_times_one_minus_t() {
        let ord = 2;
        let one = TSeries::one(ord, ones(ord));
        let t = TSeries::t(ord, ones(ord));
        let a = one.add(&t).unwrap();
        let b = one.sub(&t).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(0), &XPoly::one());
        assert!(p.coeff(1).is_zero());
        assert_eq!(p.coeff(2), &XPoly::from_int(-1));
    }

    #[test]
    fn mul_identity() {
        let ord = 5;
        let mut a = TSeries::zero(ord, ZMode::Ones);
        for n in 0..=ord {
            *a.coeff_mut(n) = XPoly::from_int((n as i64) + 2);
        }
        let one = TSeries::one(ord, ZMode::Ones);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn telescoping_geometric() {
        // (sum t^n) * (1 - t) = 1 through order 5
        let ord = 5;
        let mut g = TSeries::zero(ord, ZMode::Ones);
        for n in 0..=ord {
            *g.coeff_mut(n) = XPoly::one();
        }
        let one_minus_t = TSeries::one(ord, ZMode::Ones)
            .sub(&TSeries::t(ord, ZMode::Ones))
            .unwrap();
        let p = g.mul(&one_minus_t).unwrap();
        assert_eq!(p, TSeries::one(ord, ZMode::Ones));
    }

    #[test]
    fn reciprocal_of_one_minus_t() {
        let ord = 6;
        let s = TSeries::one(ord, ZMode::Ones)
            .sub(&TSeries::t(ord, ZMode::Ones))
            .unwrap();
        let r = s.reciprocal().unwrap();
        for n in 0..=ord {
            assert!(r.coeff(n).is_one(), "t^{n}");
        }
        assert_eq!(
            TSeries::one(ord, ZMode::Ones).reciprocal().unwrap(),
            TSeries::one(ord, ZMode::Ones)
        );
    }

    #[test]
    fn reciprocal_requires_unit_constant() {
        let s = TSeries::zero(3, ZMode::Ones);
        assert!(s.reciprocal().is_err());
    }

    #[test]
    fn geom_of_t() {
        let ord = 5;
        let g = TSeries::t(ord, ZMode::Ones).geom().unwrap();
        for n in 0..=ord {
            assert!(g.coeff(n).is_one());
        }
    }

    #[test]
    fn geom_of_scaled_t_has_power_coefficients() {
        // geom((1-x) t): coefficient of t^n is (1-x)^n
        let ord = 4;
        let a = TSeries::t(ord, ZMode::Ones).scale_poly(&XPoly::one_minus_x());
        let g = a.geom().unwrap();
        let mut pow = XPoly::one();
        for n in 0..=ord {
            assert_eq!(g.coeff(n), &pow, "t^{n}");
            pow = pow.mul(&XPoly::one_minus_x());
        }
    }

    #[test]
    fn min_order_semantics() {
        let a = TSeries::one(7, ZMode::Ones);
        let b = TSeries::one(3, ZMode::Ones);
        assert_eq!(a.mul(&b).unwrap().order(), 3);
        assert_eq!(a.add(&b).unwrap().order(), 3);
    }

    #[test]
    fn zmode_mismatch_is_error() {
        let a = TSeries::one(3, ZMode::Ones);
        let b = TSeries::one(3, ZMode::Symbolic { k: 2 });
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn x_slice_of_one() {
        let one = TSeries::one(4, ZMode::Ones);
        let s = one.x_slice(0).unwrap();
        assert_eq!(s[0], rat(1));
        assert!(s[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn rational_match_geometric() {
        let s: Vec<Rat> = (0..8).map(|_| rat(1)).collect();
        assert!(rational_match(&s, &[rat(1)], &[rat(1), rat(-1)]));
        assert!(!rational_match(&s, &[rat(1)], &[rat(1), rat(1)]));
    }

    #[test]
    fn wire_order_is_capped() {
        let big = r#"{"order":999999999,"z":"ones","coeffs":[]}"#;
        assert!(serde_json::from_str::<TSeries>(big).is_err());
        let ok = format!(r#"{{"order":{MAX_WIRE_ORDER},"z":"ones","coeffs":[]}}"#);
        assert!(serde_json::from_str::<TSeries>(&ok).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let ord = 3;
        let mut s = TSeries::zero(ord, ZMode::Symbolic { k: 2 });
        *s.coeff_mut(0) = XPoly::one();
        *s.coeff_mut(2) = XPoly::zvar(1, 2)
            .mul(&XPoly::x())
            .scale(&rat_frac_test(-3, 2));
        let txt = serde_json::to_string(&s).unwrap();
        let back: TSeries = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, s);
    }

    fn rat_frac_test(n: i64, d: i64) -> Rat {
        crate::algebra::xpoly::rat_frac(n, d)
    }

    #[test]
    fn display_matches_expected_shape() {
        let ord = 2;
        let mut s = TSeries::one(ord, ZMode::Ones);
        *s.coeff_mut(1) = XPoly::x().scale(&rat(5));
        *s.coeff_mut(2) = XPoly::x()
            .scale(&rat(15))
            .add(&XPoly::x_power(2).scale(&rat(10)));
        assert_eq!(s.to_string(), "1 + 5x t + (15x + 10x^2) t^2 + O(t^3)");
    }
}
