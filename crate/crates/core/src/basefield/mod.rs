//! Exact coefficient arithmetic: Q, GF(p), dense univariate polynomials and
//! the differential field k(x).

mod field;
mod fp;
pub mod linalg;
mod rat;
mod ratfunc;
mod upoly;

pub use field::{DiffField, Field};
pub use fp::{is_prime, Fp};
pub use rat::{rat, Rat};
pub use ratfunc::RatFunc;
pub use upoly::UPoly;

pub(crate) use upoly::{forward_owned, push_term};
