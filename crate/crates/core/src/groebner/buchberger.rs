use std::cmp::Ordering;

use crate::basefield::Field;
use crate::mpoly::{MPoly, Monomial, TermOrder};

/// Terms sorted ascending under a term order, leading term last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Sparse<K: Field> {
    pub(crate) terms: Vec<(Monomial, K)>,
}

impl<K: Field> Sparse<K> {
    pub(crate) fn from_mpoly(f: &MPoly<K>, order: &TermOrder) -> Self {
        let mut terms: Vec<(Monomial, K)> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sparse { terms }
    }

    pub(crate) fn to_mpoly(&self, ctx: &K::Ctx) -> MPoly<K> {
        MPoly::from_terms(ctx, self.terms.iter().cloned())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn lc(&self) -> &K {
        &self.terms.last().expect("nonzero polynomial").1
    }

    fn monic(mut self) -> Self {
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        for t in &mut self.terms {
            t.1 = t.1.clone() * inv.clone();
        }
        self
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, c: &K, m: &Monomial, g: &Sparse<K>, order: &TermOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -(c.clone() * bc.clone())));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let s = ac.clone() - c.clone() * bc.clone();
                    if !s.is_zero() {
                        out.push((am.clone(), s));
                    }
                }
            }
        }
        Sparse { terms: out }
    }
}

/// Reduces `f` by the monic polynomials in `basis`. With `full` every term
/// is reduced, otherwise only the leading one.
pub(crate) fn reduce<K: Field>(f: Sparse<K>, basis: &[Sparse<K>], order: &TermOrder, full: bool) -> Sparse<K> {
    let mut p = f;
    let mut rem: Vec<(Monomial, K)> = Vec::new();
    while let Some((lm, lc)) = p.terms.last() {
        match basis.iter().find(|g| g.lm().divides(lm)) {
            Some(g) => {
                let q = g.lm().quotient_of(lm).expect("divisor");
                let c = lc.clone();
                p = p.sub_mul(&c, &q, g, order);
            }
            None if full => rem.push(p.terms.pop().unwrap()),
            None => break,
        }
    }
    if full {
        rem.reverse();
        Sparse { terms: rem }
    } else {
        p
    }
}

fn spoly<K: Field>(f: &Sparse<K>, g: &Sparse<K>, order: &TermOrder) -> Sparse<K> {
    let l = f.lm().lcm(g.lm());
    let uf = f.lm().quotient_of(&l).unwrap();
    let ug = g.lm().quotient_of(&l).unwrap();
    let one = K::one(&f.lc().ctx());
    let zero = Sparse { terms: Vec::new() };
    zero.sub_mul(&-one.clone(), &uf, f, order).sub_mul(&one, &ug, g, order)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroebnerOptions {
    /// Gebauer-Moller pair pruning in addition to the coprime criterion.
    pub chain_criterion: bool,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { chain_criterion: true }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_pruned: usize,
}

/// A reduced Gröbner basis: monic generators sorted by ascending leading
/// monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis<K: Field> {
    pub(crate) gens: Vec<Sparse<K>>,
    order: TermOrder,
    ctx: K::Ctx,
    stats: GroebnerStats,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub fn buchberger<K: Field>(gens: &[MPoly<K>], order: &TermOrder, ctx: &K::Ctx) -> GroebnerBasis<K> {
    buchberger_with(gens, order, ctx, &GroebnerOptions::default())
}

pub fn buchberger_with<K: Field>(
    gens: &[MPoly<K>],
    order: &TermOrder,
    ctx: &K::Ctx,
    opts: &GroebnerOptions,
) -> GroebnerBasis<K> {
    let mut basis: Vec<Sparse<K>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = GroebnerStats::default();
    let unit = |stats| GroebnerBasis {
        gens: vec![Sparse { terms: vec![(Monomial::one(), K::one(ctx))] }],
        order: order.clone(),
        ctx: ctx.clone(),
        stats,
    };

    let mut queue: Vec<Sparse<K>> = gens.iter().map(|f| Sparse::from_mpoly(f, order)).collect();
    queue.sort_by(|a, b| match (a.terms.last(), b.terms.last()) {
        (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
        _ => a.terms.len().cmp(&b.terms.len()),
    });
    let mut incoming = queue.into_iter();
    loop {
        let h = if let Some(f) = incoming.next() {
            reduce(f, &basis, order, true)
        } else if let Some(k) = select(&pairs, order) {
            let pair = pairs.swap_remove(k);
            stats.pairs_reduced += 1;
            let s = spoly(&basis[pair.i], &basis[pair.j], order);
            let r = reduce(s, &basis, order, true);
            if r.is_zero() {
                stats.zero_reductions += 1;
            }
            r
        } else {
            break;
        };
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return unit(stats);
        }
        let h = h.monic();
        stats.pairs_pruned += update(&basis, &mut pairs, &h, opts);
        basis.push(h);
    }
    let mut gb = GroebnerBasis { gens: basis, order: order.clone(), ctx: ctx.clone(), stats };
    gb.make_reduced();
    gb
}

/// Normal strategy: smallest lcm first, ties by pair indices.
fn select(pairs: &[Pair], order: &TermOrder) -> Option<usize> {
    (0..pairs.len()).min_by(|&a, &b| {
        let (p, q) = (&pairs[a], &pairs[b]);
        order.cmp(&p.lcm, &q.lcm).then((p.j, p.i).cmp(&(q.j, q.i)))
    })
}

/// Adds the pairs for a new element `h` (index `basis.len()`), returning
/// the number of pairs pruned.
fn update<K: Field>(basis: &[Sparse<K>], pairs: &mut Vec<Pair>, h: &Sparse<K>, opts: &GroebnerOptions) -> usize {
    let t = basis.len();
    let lh = h.lm();
    let mut new: Vec<(usize, Monomial, bool)> =
        basis.iter().enumerate().map(|(i, g)| (i, g.lm().lcm(lh), g.lm().is_coprime(lh))).collect();
    let before = new.len() + pairs.len();
    if opts.chain_criterion {
        // B: an old pair whose lcm is a proper multiple through h is redundant.
        pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && basis[p.i].lm().lcm(lh) != p.lcm
                && basis[p.j].lm().lcm(lh) != p.lcm)
        });
        // M: drop (i, h) when some (k, h) has an lcm properly dividing it.
        let lcms: Vec<Monomial> = new.iter().map(|(_, l, _)| l.clone()).collect();
        new.retain(|(_, l, _)| !lcms.iter().any(|o| o.divides(l) && o != l));
        // F: one pair per lcm; if any of them is coprime the whole class goes.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, l, coprime) in new {
            if let Some(k) = kept.iter_mut().find(|k| k.1 == l) {
                k.2 |= coprime;
            } else {
                kept.push((i, l, coprime));
            }
        }
        new = kept;
    }
    new.retain(|(_, _, coprime)| !coprime);
    pairs.extend(new.into_iter().map(|(i, lcm, _)| Pair { i, j: t, lcm }));
    before - pairs.len()
}

impl<K: Field> GroebnerBasis<K> {
    fn make_reduced(&mut self) {
        let order = self.order.clone();
        let mut gens = std::mem::take(&mut self.gens);
        gens.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let mut minimal: Vec<Sparse<K>> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
                minimal.push(g);
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<Sparse<K>> =
                minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
            let mut g = minimal[k].clone();
            let lead = g.terms.pop().unwrap();
            let mut tail = reduce(g, &others, &order, true);
            tail.terms.push(lead);
            reduced.push(tail);
        }
        self.gens = reduced;
    }

    pub fn generators(&self) -> Vec<MPoly<K>> {
        self.gens.iter().map(|g| g.to_mpoly(&self.ctx)).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].lm().is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn normal_form(&self, f: &MPoly<K>) -> MPoly<K> {
        reduce(Sparse::from_mpoly(f, &self.order), &self.gens, &self.order, true).to_mpoly(&self.ctx)
    }

    pub fn contains(&self, f: &MPoly<K>) -> bool {
        reduce(Sparse::from_mpoly(f, &self.order), &self.gens, &self.order, false).is_zero()
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        for j in 0..self.gens.len() {
            for i in 0..j {
                let s = spoly(&self.gens[i], &self.gens[j], &self.order);
                if !reduce(s, &self.gens, &self.order, false).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the reduced-basis conditions: monic, and no term of any
    /// generator divisible by another generator's leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.gens.iter().enumerate().all(|(k, g)| {
            g.lc().is_one()
                && self.gens.iter().enumerate().all(|(i, o)| i == k || g.terms.iter().all(|(m, _)| !o.lm().divides(m)))
        })
    }
}
