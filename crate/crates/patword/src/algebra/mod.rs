//! Exact-rational polynomial and truncated-series arithmetic.

mod series;
mod xpoly;

pub use series::{rational_match, TSeries, ZMode, MAX_WIRE_ORDER};
pub use xpoly::{rat, rat_frac, Mono, Rat, XPoly};
