use crate::basefield::Field;
use crate::combinat::pascal;
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial};

fn check_index<K: Field>(n: usize, ctx: &K::Ctx) -> Result<()> {
    let p = K::characteristic(ctx);
    if p > 0 && n as u64 >= p {
        return Err(Error::FactorialNotInvertible { index: n, p });
    }
    Ok(())
}

/// `y_j` as a polynomial, with `y_0 = 1`.
fn y<K: Field>(j: usize, ctx: &K::Ctx) -> MPoly<K> {
    if j == 0 {
        MPoly::one(ctx)
    } else {
        MPoly::var(j, ctx)
    }
}

/// `p_0, ..., p_n` where `D^k(1/y) = p_k / y`.
///
/// Uses Leibniz on `y * (1/y) = 1`:
/// `p_m = -y_m - sum_{j=1}^{m-1} C(m, j) p_{m-j} y_j`.
pub fn p_reciprocal_table<K: Field>(n: usize, ctx: &K::Ctx) -> Result<Vec<MPoly<K>>> {
    check_index::<K>(n, ctx)?;
    let binom = pascal(n);
    let mut table: Vec<MPoly<K>> = vec![MPoly::one(ctx)];
    for m in 1..=n {
        let mut acc = -&y::<K>(m, ctx);
        for j in 1..m {
            let c = K::from_bigint(ctx, &binom[m][j]);
            acc = &acc - &table[m - j].mul_monomial(&Monomial::var(j)).scale(&c);
        }
        table.push(acc);
    }
    Ok(table)
}

pub fn p_reciprocal<K: Field>(n: usize, ctx: &K::Ctx) -> Result<MPoly<K>> {
    Ok(p_reciprocal_table(n, ctx)?.pop().expect("nonempty table"))
}

/// `p_{0,q}, ..., p_{n,q}` where `D^k(y^q) = y^q p_{k,q}`.
///
/// Starts from `p_{k,1} = y_k` and applies Leibniz to `y^q = y^{q-1} * y`:
/// `p_{m,q} = y_m + sum_{j=0}^{m-1} C(m, j) y_j p_{m-j,q-1}`.
pub fn p_power_table<K: Field>(n: usize, q: u32, ctx: &K::Ctx) -> Result<Vec<MPoly<K>>> {
    if q == 0 {
        return Err(Error::Hypothesis("q must be a positive integer".into()));
    }
    check_index::<K>(n, ctx)?;
    let binom = pascal(n);
    let mut table: Vec<MPoly<K>> = (0..=n).map(|m| y::<K>(m, ctx)).collect();
    for _ in 2..=q {
        let prev = table;
        table = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = y::<K>(m, ctx);
            for j in 0..m {
                let c = K::from_bigint(ctx, &binom[m][j]);
                let shifted = if j == 0 { prev[m].clone() } else { prev[m - j].mul_monomial(&Monomial::var(j)) };
                acc = &acc + &shifted.scale(&c);
            }
            table.push(acc);
        }
    }
    Ok(table)
}

pub fn p_power<K: Field>(n: usize, q: u32, ctx: &K::Ctx) -> Result<MPoly<K>> {
    Ok(p_power_table(n, q, ctx)?.pop().expect("nonempty table"))
}

/// Sends `y_j` to zero for every `j >= n`.
pub fn phi_truncate<K: Field>(f: &MPoly<K>, n: usize) -> MPoly<K> {
    f.truncate_vars(n)
}
