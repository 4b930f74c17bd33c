//! Dense linear algebra over a field.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::field::Field;
use super::fp::is_prime;
use super::upoly::UPoly;

/// `det(X*I - A)`, low degree first, by reduction to Hessenberg form.
pub fn charpoly_hessenberg<F: Field>(a: &[Vec<F>], ctx: &F::Ctx) -> Vec<F> {
    let n = a.len();
    let mut h: Vec<Vec<F>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = h[m][m - 1].inv().expect("nonzero pivot");
        for r in m + 1..n {
            if h[r][m - 1].is_zero() {
                continue;
            }
            let u = h[r][m - 1].clone() * inv.clone();
            for c in 0..n {
                if !h[m][c].is_zero() {
                    h[r][c] = h[r][c].clone() - u.clone() * h[m][c].clone();
                }
            }
            for row in h.iter_mut() {
                if !row[r].is_zero() {
                    row[m] = row[m].clone() + u.clone() * row[r].clone();
                }
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block.
    let x = UPoly::x(ctx);
    let mut p: Vec<UPoly<F>> = vec![UPoly::one(ctx)];
    for m in 1..=n {
        let mut next = &(&x * &p[m - 1]) - &p[m - 1].scale(&h[m - 1][m - 1]);
        let mut t = F::one(ctx);
        for i in (1..m).rev() {
            t = t * h[i][i - 1].clone();
            let c = h[i - 1][m - 1].clone() * t.clone();
            if !c.is_zero() {
                next = &next - &p[i - 1].scale(&c);
            }
        }
        p.push(next);
    }
    p.pop().unwrap().into_coeffs()
}

/// `det(X*I - A)` for an integer matrix.
///
/// Computed modulo word-sized primes and recombined by CRT. Every
/// coefficient is a signed sum of at most `2^n` principal minors, each at
/// most `B^n` with `B` the largest row norm (Hadamard), so once the product
/// of the primes exceeds twice that bound the symmetric residues are the
/// coefficients themselves.
pub fn charpoly_integer(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let max_sq = a.iter().map(|row| row.iter().map(|c| c * c).sum::<BigInt>()).max().unwrap_or_default();
    let bound_bits = n as u64 + n as u64 * max_sq.bits().div_ceil(2) + 2;
    let mut value: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut modulus = BigInt::one();
    let mut k = 0;
    while modulus.bits() <= bound_bits {
        let p = nth_prime(k);
        k += 1;
        let pb = BigInt::from(p);
        let image: Vec<Vec<u64>> =
            a.iter().map(|row| row.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()).collect();
        let residues = charpoly_mod(&image, p);
        let m_mod = modulus.mod_floor(&pb).to_u64().unwrap();
        let inv = pow_mod(m_mod, p - 2, p);
        for (x, r) in value.iter_mut().zip(residues) {
            let x_mod = x.mod_floor(&pb).to_u64().unwrap();
            let t = mul_mod((r + p - x_mod) % p, inv, p);
            if t != 0 {
                *x += &modulus * t;
            }
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    value.into_iter().map(|x| if x > half { x - &modulus } else { x }).collect()
}

/// Word-sized primes just below `2^62`, largest first.
fn nth_prime(k: usize) -> u64 {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let mut primes = PRIMES.get_or_init(|| Mutex::new(Vec::new())).lock().unwrap();
    let mut candidate = primes.last().map_or(1u64 << 62, |&p| p - 2) | 1;
    while primes.len() <= k {
        if is_prime(candidate) {
            primes.push(candidate);
        }
        candidate -= 2;
    }
    primes[k]
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Hessenberg charpoly over Z/p.
fn charpoly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = pow_mod(h[m][m - 1], p - 2, p);
        for r in m + 1..n {
            if h[r][m - 1] == 0 {
                continue;
            }
            let u = mul_mod(h[r][m - 1], inv, p);
            let neg_u = p - u;
            for c in 0..n {
                if h[m][c] != 0 {
                    h[r][c] = (h[r][c] + mul_mod(neg_u, h[m][c], p)) % p;
                }
            }
            for row in h.iter_mut() {
                if row[r] != 0 {
                    row[m] = (row[m] + mul_mod(u, row[r], p)) % p;
                }
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + mul_mod(p - h[m - 1][m - 1], c, p)) % p;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mul_mod(t, h[i][i - 1], p);
            let c = mul_mod(h[i - 1][m - 1], t, p);
            if c != 0 {
                for (d, &q) in polys[i - 1].iter().enumerate() {
                    next[d] = (next[d] + p - mul_mod(c, q, p)) % p;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// The polynomial of degree below `xs.len()` through the given points,
/// by Newton divided differences.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F], ctx: &F::Ctx) -> UPoly<F> {
    let n = xs.len();
    let mut coef: Vec<F> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = coef[i].clone() - coef[i - 1].clone();
            let den = xs[i].clone() - xs[i - level].clone();
            coef[i] = num / den;
        }
    }
    let mut acc = UPoly::zero(ctx);
    for i in (0..n).rev() {
        let shift = UPoly::new(vec![-xs[i].clone(), F::one(ctx)], ctx.clone());
        acc = &(&acc * &shift) + &UPoly::constant(coef[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{rat, Fp, Rat};

    fn q(n: i64) -> Rat {
        rat(n, 1)
    }

    #[test]
    fn small_charpolys() {
        let a = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(charpoly_hessenberg(&a, &()), vec![q(-1), q(0), q(1)]);
        // companion matrix of X^3 - 2X + 5
        let c = vec![vec![q(0), q(0), q(-5)], vec![q(1), q(0), q(2)], vec![q(0), q(1), q(0)]];
        assert_eq!(charpoly_hessenberg(&c, &()), vec![q(5), q(-2), q(0), q(1)]);
        let z = vec![vec![q(2), q(0), q(0)], vec![q(0), q(0), q(0)], vec![q(1), q(7), q(3)]];
        // (X - 2) X (X - 3)
        assert_eq!(charpoly_hessenberg(&z, &()), vec![q(0), q(6), q(-5), q(1)]);
    }

    #[test]
    fn charpoly_matches_cofactor_expansion() {
        let a = vec![
            vec![q(1), q(2), q(0), q(-1)],
            vec![q(3), q(0), q(1), q(2)],
            vec![q(0), q(4), q(-2), q(1)],
            vec![q(5), q(1), q(1), q(0)],
        ];
        let p = charpoly_hessenberg(&a, &());
        // value at X = t is det(tI - A)
        for t in -2..3 {
            let m: Vec<Vec<Rat>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { q(t) - a[i][j].clone() } else { -a[i][j].clone() }).collect())
                .collect();
            let value = UPoly::new(p.clone(), ()).eval(&q(t));
            assert_eq!(value, det(m));
        }
    }

    fn det(m: Vec<Vec<Rat>>) -> Rat {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = q(0);
        for c in 0..m.len() {
            let minor: Vec<Vec<Rat>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect()).collect();
            let term = m[0][c].clone() * det(minor);
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn integer_charpoly_matches_rational() {
        let a = vec![
            vec![q(1), q(-2), q(0), q(7)],
            vec![q(3), q(0), q(1), q(2)],
            vec![q(0), q(40), q(-2), q(1)],
            vec![q(5), q(1), q(1), q(-9)],
        ];
        let ints: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|c| c.numer().clone()).collect()).collect();
        let expected: Vec<BigInt> = charpoly_hessenberg(&a, &()).into_iter().map(|c| c.numer().clone()).collect();
        assert_eq!(charpoly_integer(&ints), expected);
        let big = BigInt::from(10).pow(40);
        let ints = vec![vec![big.clone(), BigInt::from(1)], vec![-big.clone(), BigInt::from(-3)]];
        // trace 10^40 - 3, determinant -2 * 10^40
        let expected = vec![-(&big * BigInt::from(2)), BigInt::from(3) - &big, BigInt::one()];
        assert_eq!(charpoly_integer(&ints), expected);
    }

    #[test]
    fn consecutive_interpolation_agrees() {
        let f = |t: i64| rat(t * t * t - 7, 3) + rat(1, t + 100);
        for start in [-3, 0, 5] {
            let ys: Vec<Rat> = (0..6).map(|i| f(start + i)).collect();
            let xs: Vec<Rat> = (0..6).map(|i| q(start + i)).collect();
            let fast = Rat::interpolate_consecutive(start, &ys, &());
            assert_eq!(fast, interpolate(&xs, &ys, &()).coeffs().to_vec());
            let fp: Vec<Fp> = (0..6).map(|i| Fp::from_i64(&101, start * i - 4)).collect();
            let xs: Vec<Fp> = (0..6).map(|i| Fp::from_i64(&101, start + i)).collect();
            assert_eq!(Fp::interpolate_consecutive(start, &fp, &101), interpolate(&xs, &fp, &101).coeffs().to_vec());
        }
        assert_eq!(Rat::interpolate_consecutive(4, &[q(9)], &()), vec![q(9)]);
        assert!(Rat::interpolate_consecutive(4, &[q(0), q(0)], &()).is_empty());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = UPoly::<Rat>::from_ints(&[3, -1, 0, 2], &());
        let xs: Vec<Rat> = (0..4).map(q).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys, &()), f);
    }
}
