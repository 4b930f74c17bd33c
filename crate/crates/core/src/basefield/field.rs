use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

/// A computable field whose elements know enough about their parent to
/// build constants.
///
/// `Ctx` carries whatever is needed to construct `0`, `1` and integer images
/// without an existing element at hand: `()` for Q, the modulus for GF(p).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + Eq + Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    /// Sign used when rendering: `true` if the canonical text starts with `-`.
    fn is_negative(&self) -> bool;

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Greatest common divisor of two univariate polynomials given by dense
    /// coefficient vectors (lowest degree first, trimmed). Returns the monic
    /// gcd. Fields with a better algorithm than plain Euclid override this.
    fn poly_gcd(a: &[Self], b: &[Self], ctx: &Self::Ctx) -> Vec<Self> {
        super::upoly::euclid_gcd(a, b, ctx)
    }

    /// `true` only if `a` and `b` are known to be coprime; `false` means
    /// "not shown". Cheaper than [`Field::poly_gcd`] for function fields.
    fn certainly_coprime(a: &[Self], b: &[Self], ctx: &Self::Ctx) -> bool {
        Self::poly_gcd(a, b, ctx).len() == 1
    }

    /// Coefficients of the polynomial taking `ys[i]` at `start + i`.
    fn interpolate_consecutive(start: i64, ys: &[Self], ctx: &Self::Ctx) -> Vec<Self> {
        let xs: Vec<Self> = (0..ys.len() as i64).map(|i| Self::from_i64(ctx, start + i)).collect();
        super::linalg::interpolate(&xs, ys, ctx).coeffs().to_vec()
    }

    /// `det(X*I - A)` for a square matrix, low degree first.
    fn charpoly(a: &[Vec<Self>], ctx: &Self::Ctx) -> Vec<Self> {
        super::linalg::charpoly_hessenberg(a, ctx)
    }

    /// A scalar `s` such that `s * c` has integral, content-free coefficients
    /// for every `c` in `coeffs`. Only meaningful for Q; other fields return 1.
    fn integral_scale(coeffs: &[Self], ctx: &Self::Ctx) -> Self {
        let _ = coeffs;
        Self::one(ctx)
    }
}

/// A field equipped with a derivation.
pub trait DiffField: Field {
    fn derive(&self) -> Self;

    /// Whether every element of the field is a constant for the derivation.
    fn is_constant_field(ctx: &Self::Ctx) -> bool {
        let _ = ctx;
        false
    }
}
