use std::cmp::Ordering;

use super::Monomial;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// Weighted degree with `w(y_i) = i`, ties broken by grevlex.
    WeightedGrevlex,
}

/// A monomial order used by Gröbner computations.
///
/// Variables are ranked by `priority` from most to least significant. Without
/// an explicit priority the ranking is `y_k > ... > y_2 > y_1`. Variables
/// missing from an explicit priority list rank below every listed variable.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Option<Vec<usize>>,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::grevlex()
    }
}

impl TermOrder {
    pub fn grevlex() -> Self {
        TermOrder { kind: OrderKind::Grevlex, priority: None }
    }

    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, priority: None }
    }

    /// Refines the grading `w(y_i) = i`, so leading monomials of a
    /// polynomial are leading monomials of its leading form.
    pub fn weighted() -> Self {
        TermOrder { kind: OrderKind::WeightedGrevlex, priority: None }
    }

    /// Order with an explicit variable ranking, most significant first.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        TermOrder { kind, priority: Some(priority) }
    }

    /// Lex order in which `y_j` is the smallest variable; the last element of
    /// a reduced basis for this order generates the elimination ideal in `y_j`.
    pub fn elimination(j: usize, nvars: usize) -> Self {
        let mut priority: Vec<usize> = (1..=nvars).rev().filter(|&i| i != j).collect();
        priority.push(j);
        TermOrder::with_priority(OrderKind::Lex, priority)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Exponents listed from the most significant variable down.
    fn ranked(&self, m: &Monomial, width: usize) -> Vec<u32> {
        match &self.priority {
            None => (1..=width).rev().map(|i| m.exp(i)).collect(),
            Some(p) => {
                let mut out: Vec<u32> = p.iter().map(|&i| m.exp(i)).collect();
                out.extend((1..=width).rev().filter(|i| !p.contains(i)).map(|i| m.exp(i)));
                out
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match (self.kind, &self.priority) {
            (OrderKind::Grevlex, None) => a.cmp(b),
            (OrderKind::WeightedGrevlex, None) => weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)),
            (kind, _) => {
                let width = a.max_var().max(b.max_var());
                let (ra, rb) = (self.ranked(a, width), self.ranked(b, width));
                let revlex = || {
                    for (x, y) in ra.iter().zip(rb.iter()).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                };
                match kind {
                    OrderKind::Lex => ra.cmp(&rb),
                    OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(revlex),
                    OrderKind::WeightedGrevlex => weight(a).cmp(&weight(b)).then_with(|| a.degree().cmp(&b.degree())).then_with(revlex),
                }
            }
        }
    }
}

fn weight(m: &Monomial) -> u64 {
    m.support().map(|(i, e)| i as u64 * e as u64).sum()
}
