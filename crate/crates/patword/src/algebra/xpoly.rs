//! Sparse exact-rational polynomials in `x`, optionally carrying a
//! z-multidegree over a fixed alphabet `[k]`.
//!
//! Invariants:
//! - no zero coefficients stored
//! - term ordering is canonical: x-degree first, then z-multidegree
//!   lexicographically (this is the order `BTreeMap` gives us for free)
//! - all arithmetic is exact; there is no floating point anywhere

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Monomial key: x-exponent plus an optional z-multidegree.
///
/// In plain mode (`z` empty) only the x-exponent matters. In symbolic-z
/// mode every monomial of a polynomial carries a vector of the same
/// length k, entry i being the exponent of z_{i+1}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub x: u32,
    pub z: Vec<u16>,
}

impl Mono {
    pub fn xpow(x: u32) -> Self {
        Mono { x, z: Vec::new() }
    }

    pub fn unit() -> Self {
        Mono::xpow(0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let z = match (self.z.is_empty(), other.z.is_empty()) {
            (true, true) => Vec::new(),
            (false, true) => self.z.clone(),
            (true, false) => other.z.clone(),
            (false, false) => {
                debug_assert_eq!(self.z.len(), other.z.len());
                self.z
                    .iter()
                    .zip(&other.z)
                    .map(|(a, b)| a + b)
                    .collect()
            }
        };
        Mono {
            x: self.x + other.x,
            z,
        }
    }
}

/// Sparse polynomial in x (and optionally z_1..z_k) with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = XPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::unit(), c);
        }
        p
    }

    pub fn from_int(c: i64) -> Self {
        XPoly::constant(rat(c))
    }

    /// The variable x.
    pub fn x() -> Self {
        XPoly::x_power(1)
    }

    pub fn x_power(m: u32) -> Self {
        let mut p = XPoly::zero();
        p.terms.insert(Mono::xpow(m), Rat::one());
        p
    }

    /// 1 - x.
    pub fn one_minus_x() -> Self {
        let mut p = XPoly::one();
        p.terms.insert(Mono::xpow(1), -Rat::one());
        p
    }

    /// The variable z_i (1-based) over a fixed alphabet of size k.
    pub fn zvar(i: u32, k: u32) -> Self {
        assert!(i >= 1 && i <= k, "z index out of range");
        let mut z = vec![0u16; k as usize];
        z[(i - 1) as usize] = 1;
        let mut p = XPoly::zero();
        p.terms.insert(Mono { x: 0, z }, Rat::one());
        p
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let mut p = XPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of x^m, summed over all z-multidegrees.
    pub fn coeff_x(&self, m: u32) -> Rat {
        self.terms
            .iter()
            .filter(|(mono, _)| mono.x == m)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// The x^m part of the polynomial with the x factor removed; keeps
    /// any z-multidegrees.
    pub fn x_section(&self, m: u32) -> XPoly {
        XPoly {
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.x == m)
                .map(|(mono, c)| (Mono { x: 0, z: mono.z.clone() }, c.clone()))
                .collect(),
        }
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn add_assign_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &XPoly) {
        for (m, c) in &other.terms {
            self.add_assign_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &XPoly) {
        for (m, c) in &other.terms {
            self.add_assign_term(m.clone(), -c.clone());
        }
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.sub_assign(other);
        r
    }

    pub fn neg(&self) -> XPoly {
        XPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut r = XPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_assign_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    /// Multiply by x^e.
    pub fn mul_xpow(&self, e: u32) -> XPoly {
        XPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Mono {
                            x: m.x + e,
                            z: m.z.clone(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Evaluate at x = 1 (and z = 1): sum of all coefficients.
    pub fn eval_ones(&self) -> Rat {
        self.terms.values().cloned().sum()
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }
}

fn fmt_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            match m.x {
                0 => {}
                1 => parts.push("x".to_string()),
                e => parts.push(format!("x^{e}")),
            }
            for (i, &e) in m.z.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("z{}", i + 1)),
                    e => parts.push(format!("z{}^{}", i + 1, e)),
                }
            }
            let vars = parts.join(" ");
            let abs = c.abs();
            let coeff_str = fmt_coeff(&abs);
            let body = if vars.is_empty() {
                coeff_str
            } else if abs.is_one() {
                vars
            } else {
                format!("{coeff_str}{vars}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}
