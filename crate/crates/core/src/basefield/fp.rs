//! Prime fields GF(p) for word-sized p.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::field::{DiffField, Field};
use crate::error::{Error, Result};

/// Element of GF(p). Every element carries its modulus, so constants can be
/// created from any element and mixed-modulus arithmetic is caught.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// Validates `p` as a modulus and returns it.
    pub fn modulus_checked(p: u64) -> Result<u64> {
        if p >= 1 << 63 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(p)
    }

    pub fn new(value: i64, p: u64) -> Result<Self> {
        let p = Self::modulus_checked(p)?;
        Ok(Self::reduce_i128(value as i128, p))
    }

    fn reduce_i128(v: i128, p: u64) -> Self {
        Fp { value: v.rem_euclid(p as i128) as u64, modulus: p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in GF(p) arithmetic");
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these witnesses are exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = self.value as u128 + rhs.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let value = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in GF(p)")
    }
}

impl fmt::Display for Fp {
    /// Balanced representative, so that `p - 1` prints as `-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "-{}", self.modulus - self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.modulus
    }

    fn zero(p: &u64) -> Self {
        Fp { value: 0, modulus: *p }
    }

    fn one(p: &u64) -> Self {
        Fp { value: 1 % *p, modulus: *p }
    }

    fn from_bigint(p: &u64, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(*p));
        Fp { value: r.to_u64().expect("reduced value fits"), modulus: *p }
    }

    fn from_i64(p: &u64, n: i64) -> Self {
        Self::reduce_i128(n as i128, *p)
    }

    fn characteristic(p: &u64) -> u64 {
        *p
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(Fp { value: pow_mod(self.value, self.modulus - 2, self.modulus), modulus: self.modulus })
    }

    fn is_negative(&self) -> bool {
        self.value > self.modulus / 2
    }
}

impl DiffField for Fp {
    fn derive(&self) -> Self {
        Fp::zero(&self.modulus)
    }

    fn is_constant_field(_: &u64) -> bool {
        true
    }
}
