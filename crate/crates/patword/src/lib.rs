//! Exact-arithmetic descent distributions for words avoiding a
//! consecutive pattern.
//!
//! For a pattern u over a finite alphabet `[k]`, the library computes the
//! polynomials sum over u-avoiding words w in `[k]`^n of x^{des(w)+1}
//! (optionally with a z-weight per letter) as a truncated power series
//! in t, by four independent routes:
//!
//! - brute-force enumeration with subtree pruning ([`oracle::brute_series`]);
//! - a transfer-matrix DP over suffix states ([`oracle::dp_series`]);
//! - series reciprocity through signed brick fillings
//!   ([`oracle::recip_coeff_compositions`], [`oracle::recip_coeff_fixed_points`]);
//! - collapse-weight closed forms ([`closed_forms::closed_series`]).
//!
//! [`verify::verify_methods`] diffs the routes coefficient by coefficient.
//! All arithmetic is exact rational; truncation orders are explicit.

pub mod algebra;
pub mod clusters;
pub mod closed_forms;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod overlap;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
