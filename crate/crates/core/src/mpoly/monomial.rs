use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Power product `y_1^e_1 * y_2^e_2 * ...`. Slot 0 holds the exponent of
/// `y_1`; trailing zero exponents are never stored, so the empty vector is
/// the unit monomial.
///
/// The `Ord` impl is graded reverse lexicographic with `y_1 < y_2 < ...`,
/// which is also the order used for canonical rendering.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Monomial { exps: SmallVec::from_slice(exps) };
        m.trim();
        m
    }

    /// The variable `y_index` (1-based).
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        let mut exps = SmallVec::from_elem(0, index);
        exps[index - 1] = 1;
        Monomial { exps }
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of `y_index`.
    pub fn exp(&self, index: usize) -> u32 {
        self.exps.get(index - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Highest variable index present, 0 for the unit monomial.
    pub fn max_var(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `(index, exponent)` pairs with nonzero exponent, ascending index.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i + 1, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.exps.len() >= other.exps.len() { (self, other) } else { (other, self) };
        let mut exps = long.exps.clone();
        for (i, e) in short.exps.iter().enumerate() {
            exps[i] += e;
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.len() <= other.exps.len() && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps.clone();
        for (i, e) in self.exps.iter().enumerate() {
            exps[i] -= e;
        }
        let mut m = Monomial { exps };
        m.trim();
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n)
            .map(|i| {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                a.max(b)
            })
            .collect();
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lowers the exponent of `y_index` by one. Panics if it is zero.
    pub fn without_one(&self, index: usize) -> Self {
        let mut exps = self.exps.clone();
        exps[index - 1] -= 1;
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    /// `Some(index)` if this is a pure power `y_index^e`, e >= 1.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.support();
        let (i, _) = support.next()?;
        if support.next().is_some() {
            None
        } else {
            Some(i)
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in 0..n {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                if a != b {
                    // larger exponent in the smallest variable means smaller
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(i, e)| if e == 1 { format!("y{i}") } else { format!("y{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        // degree dominates
        assert!(m(&[0, 0, 1]) < m(&[2]));
        // same degree: more y1 is smaller
        assert!(m(&[1, 1]) < m(&[0, 2]));
        assert!(m(&[1, 0, 1]) < m(&[0, 2]));
        assert!(m(&[2]) < m(&[0, 1]).mul(&m(&[0, 1])));
        assert!(m(&[]) < m(&[1]));
        assert_eq!(m(&[2, 0, 1]).to_string(), "y1^2*y3");
        assert_eq!(m(&[0, 0]), Monomial::one());
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2]);
        let b = m(&[2, 1, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 2, 1]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.quotient_of(&m(&[1, 3])), Some(m(&[0, 1])));
        assert_eq!(m(&[0, 3]).pure_power_var(), Some(2));
        assert_eq!(a.pure_power_var(), None);
        assert!(m(&[1]).is_coprime(&m(&[0, 4])));
    }
}
