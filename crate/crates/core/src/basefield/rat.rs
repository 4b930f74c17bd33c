//! Q as a coefficient field, backed by `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{DiffField, Field};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

impl Field for BigRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_bigint(_: &(), n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn poly_gcd(a: &[Self], b: &[Self], _: &()) -> Vec<Self> {
        primitive_prs_gcd(a, b)
    }

    /// Clears denominators and works over Z, where the coefficients can be
    /// recovered exactly from residues.
    fn charpoly(a: &[Vec<Self>], _: &()) -> Vec<Self> {
        let mut d = BigInt::one();
        for c in a.iter().flatten() {
            d = d.lcm(c.denom());
        }
        let ints: Vec<Vec<BigInt>> =
            a.iter().map(|row| row.iter().map(|c| c.numer() * (&d / c.denom())).collect()).collect();
        let n = a.len();
        // det(X - dA) = d^n det(X/d - A)
        let mut out = Vec::with_capacity(n + 1);
        let mut pow = BigInt::one();
        let coeffs = super::linalg::charpoly_integer(&ints);
        for k in (0..=n).rev() {
            out.push(BigRational::new(coeffs[k].clone(), pow.clone()));
            pow *= &d;
        }
        out.reverse();
        out
    }

    /// Forward differences and a Horner expansion in the falling-factorial
    /// basis, all over Z after clearing denominators once.
    fn interpolate_consecutive(start: i64, ys: &[Self], _: &()) -> Vec<Self> {
        let n = ys.len();
        if n == 0 {
            return Vec::new();
        }
        let mut l = BigInt::one();
        for y in ys {
            l = l.lcm(y.denom());
        }
        let mut d: Vec<BigInt> = ys.iter().map(|y| y.numer() * (&l / y.denom())).collect();
        for k in 1..n {
            for i in (k..n).rev() {
                let prev = d[i - 1].clone();
                d[i] -= prev;
            }
        }
        // (n-1)! * sum_k d[k]/k! (x - start)(x - start - 1)...(x - start - k + 1)
        let mut weight = BigInt::one();
        let mut acc = vec![d[n - 1].clone()];
        for k in (0..n - 1).rev() {
            weight *= BigInt::from(k as i64 + 1);
            let root = BigInt::from(start + k as i64);
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &root;
            }
            next[0] += &d[k] * &weight;
            acc = next;
        }
        let fact: BigInt = (1..n as i64).map(BigInt::from).product();
        let den = fact * l;
        let mut out: Vec<Rat> = acc.into_iter().map(|c| BigRational::new(c, den.clone())).collect();
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    fn integral_scale(coeffs: &[Self], _: &()) -> Self {
        let mut lcm = BigInt::one();
        for c in coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in coeffs {
            let scaled = c.numer() * (&lcm / c.denom());
            content = content.gcd(&scaled);
        }
        if content.is_zero() {
            return <BigRational as One>::one();
        }
        BigRational::new(lcm, content)
    }
}

impl DiffField for BigRational {
    fn derive(&self) -> Self {
        Zero::zero()
    }

    fn is_constant_field(_: &()) -> bool {
        true
    }
}

/// Builds a rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_primitive_int(p: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in &p {
        content = content.gcd(c);
        if content.is_one() {
            break;
        }
    }
    if !content.is_zero() && !content.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &content;
        }
    }
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` over Z, both trimmed and `b` nonzero.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd over Q through the primitive polynomial remainder sequence in Z[x].
fn primitive_prs_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (mut f, mut g) = (to_primitive_int(a), to_primitive_int(b));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        if g.len() == 1 {
            return vec![<BigRational as One>::one()];
        }
        let r = make_primitive(pseudo_rem(&f, &g));
        f = g;
        g = r;
    }
    if f.is_empty() {
        return Vec::new();
    }
    let lead = f.last().unwrap().clone();
    f.into_iter().map(|c| BigRational::new(c, lead.clone())).collect()
}
