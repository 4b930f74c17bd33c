//! Algebraic relations among the quotients `D^j y / y` of a function `y`
//! when both `y` and `1/y` (or a power of `y`) satisfy linear differential
//! equations over a differential field such as `Q(x)` or `GF(p)(x)`.

pub mod basefield;
mod combinat;
pub mod converse;
pub mod error;
pub mod groebner;
pub mod logdiff;
pub mod mpoly;
pub mod oracle;
pub mod pipeline;

pub use combinat::{binomial, falling_ratio};
pub use error::{Error, Result};

/// `Q(x)`.
pub type QFunc = basefield::RatFunc<basefield::Rat>;
/// `GF(p)(x)`.
pub type FpFunc = basefield::RatFunc<basefield::Fp>;
