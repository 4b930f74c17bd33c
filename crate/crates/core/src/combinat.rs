use num_bigint::BigInt;
use num_traits::One;

/// Rows `0..=n` of Pascal's triangle.
pub(crate) fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = vec![BigInt::one(); m + 1];
        for j in 1..m {
            row[j] = &rows[m - 1][j - 1] + &rows[m - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `C(n, k)` in u128, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// `a! / b!` for `b <= a`, `None` on overflow.
pub fn falling_ratio(a: u64, b: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in (b + 1)..=a {
        acc = acc.checked_mul(i as u128)?;
    }
    Some(acc)
}
