//! Truncated power series at a rational point, used to check relations
//! independently of the algebra that produced them.

use num_traits::{One, Zero};

use crate::basefield::{Rat, UPoly};
use crate::error::{Error, Result};
use crate::logdiff::{NonlinearSpec, OdeSpec};
use crate::mpoly::MPoly;
use crate::QFunc;

pub const DEFAULT_ORDER: usize = 40;
pub const DEFAULT_SLACK: usize = 8;

/// `sum c_k (x - x0)^k`, known modulo `(x - x0)^T` with `T = coeffs.len()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    x0: Rat,
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn new(x0: Rat, coeffs: Vec<Rat>) -> Self {
        Series { x0, coeffs }
    }

    pub fn constant(x0: Rat, c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order];
        if order > 0 {
            coeffs[0] = c;
        }
        Series { x0, coeffs }
    }

    pub fn x0(&self) -> &Rat {
        &self.x0
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series { x0: self.x0.clone(), coeffs: self.coeffs[..order.min(self.order())].to_vec() }
    }

    /// Index of the first nonzero coefficient, `None` if all known ones vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series { x0: self.x0.clone(), coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series { x0: self.x0.clone(), coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Series { x0: self.x0.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Series { x0: self.x0.clone(), coeffs }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer(k.into())).collect();
        Series { x0: self.x0.clone(), coeffs }
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs.first().filter(|c| !c.is_zero()).ok_or(Error::ZeroConstantTerm)?;
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let s: Rat = (1..=k).map(|i| &self.coeffs[i] * &out[k - i]).sum();
            out.push(-s * &inv0);
        }
        Ok(Series { x0: self.x0.clone(), coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::constant(self.x0.clone(), Rat::one(), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Expansion of a rational function at `x0`.
    pub fn expand(f: &QFunc, x0: &Rat, order: usize) -> Result<Self> {
        let num = Series::new(x0.clone(), taylor_shift(f.num(), x0, order));
        let den = Series::new(x0.clone(), taylor_shift(f.den(), x0, order));
        let inv = den.inverse().map_err(|_| Error::SingularPoint { coefficient: f.to_string() })?;
        Ok(num.mul(&inv))
    }
}

/// Coefficients of `p(x0 + s)` in `s`, padded or cut to `order`.
fn taylor_shift(p: &UPoly<Rat>, x0: &Rat, order: usize) -> Vec<Rat> {
    let mut acc: Vec<Rat> = Vec::new();
    for c in p.coeffs().iter().rev() {
        // acc * (s + x0) + c
        let mut next = vec![Rat::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a;
            next[i] += a * x0;
        }
        next[0] += c;
        acc = next;
    }
    acc.resize(order, Rat::zero());
    acc
}

/// `y(x0), y'(x0), ..., y^(n-1)(x0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InitialConditions {
    values: Vec<Rat>,
}

impl InitialConditions {
    pub fn new(values: Vec<Rat>) -> Result<Self> {
        if values.first().is_none_or(|v| v.is_zero()) {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(InitialConditions { values })
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }
}

fn expand_coeffs(spec: &OdeSpec<QFunc>, x0: &Rat, order: usize) -> Result<Vec<Series>> {
    (0..spec.order())
        .map(|i| {
            Series::expand(&spec.coeff(i), x0, order).map_err(|_| Error::SingularPoint {
                coefficient: format!("a{i} = {}", spec.coeff(i)),
            })
        })
        .collect()
}

/// The series solution of `spec` with the given jet at `x0`, correct to `order` terms.
pub fn series_solve(spec: &OdeSpec<QFunc>, ics: &InitialConditions, x0: &Rat, order: usize) -> Result<Series> {
    let n = spec.order();
    if ics.values.len() != n {
        return Err(Error::InitialConditions { expected: n, got: ics.values.len() });
    }
    let a = expand_coeffs(spec, x0, order)?;
    // c_k with y = sum c_k s^k; y^(i) has coefficient c_{j+i} (j+i)!/j! at s^j.
    let mut fact = vec![Rat::one()];
    for k in 1..order.max(n) + 1 {
        let prev = fact[k - 1].clone();
        fact.push(prev * Rat::from_integer(k.into()));
    }
    let mut c: Vec<Rat> = ics.values.iter().enumerate().map(|(k, v)| v / &fact[k]).collect();
    let rising = |j: usize, i: usize| &fact[j + i] / &fact[j];
    for j in 0..order.saturating_sub(n) {
        let mut s = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            for l in 0..=j {
                let al = &ai.coeffs[l];
                if !al.is_zero() {
                    s += al * &c[j - l + i] * rising(j - l, i);
                }
            }
        }
        c.push(-s / rising(j, n));
    }
    c.truncate(order);
    Ok(Series::new(x0.clone(), c))
}

/// The series solution of `y_n = g(y_1, ..., y_{n-1})` with the given jet,
/// one coefficient at a time: `D^n y = y g(...)` is known one term further
/// than the coefficients it is computed from.
pub fn series_solve_solved(spec: &NonlinearSpec<QFunc>, ics: &InitialConditions, x0: &Rat, order: usize) -> Result<Series> {
    let n = spec.order();
    if ics.values.len() != n {
        return Err(Error::InitialConditions { expected: n, got: ics.values.len() });
    }
    let mut fact = vec![Rat::one()];
    for k in 1..order.max(n) + 1 {
        let prev = fact[k - 1].clone();
        fact.push(prev * Rat::from_integer(k.into()));
    }
    let mut c: Vec<Rat> = ics.values.iter().enumerate().map(|(k, v)| v / &fact[k]).collect();
    while c.len() < order {
        let len = c.len();
        let y = Series::new(x0.clone(), c.clone());
        let qs = quotient_series(&y, n - 1)?;
        let rhs = y.mul(&eval_at_series(spec.solved(), &qs, x0, len - n + 1)?);
        let k = len - n;
        c.push(&rhs.coeffs[k] * &fact[k] / &fact[len]);
    }
    c.truncate(order);
    Ok(Series::new(x0.clone(), c))
}

/// `g(qs[0], qs[1], ...)` to `order` terms.
pub fn eval_at_series(g: &MPoly<QFunc>, qs: &[Series], x0: &Rat, order: usize) -> Result<Series> {
    let mut acc = Series::constant(x0.clone(), Rat::zero(), order);
    for (m, coeff) in g.terms() {
        let mut t = Series::expand(coeff, x0, order)?;
        for (var, e) in m.support() {
            let q = qs.get(var - 1).ok_or(Error::VariableOutOfRange { index: var, max: qs.len() })?;
            t = t.mul(&q.pow(e));
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// `y' / y`.
pub fn logderiv_series(y: &Series) -> Result<Series> {
    Ok(y.derivative().mul(&y.inverse()?))
}

/// `D^j y / y` for `j = 1..=count`.
pub fn quotient_series(y: &Series, count: usize) -> Result<Vec<Series>> {
    let inv = y.inverse()?;
    let mut d = y.clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        d = d.derivative();
        out.push(d.mul(&inv));
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// The first `checked` coefficients vanish.
    Pass { checked: usize },
    /// Coefficient `index` is the first that does not vanish.
    Fail { index: usize },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

fn judge(residual: &Series, required: usize) -> Result<Verdict> {
    if residual.order() < required {
        return Err(Error::InsufficientPrecision { available: residual.order(), required });
    }
    Ok(match residual.truncate(required).valuation() {
        None => Verdict::Pass { checked: required },
        Some(index) => Verdict::Fail { index },
    })
}

/// Substitutes `u` into `g` with denominators cleared and checks the
/// first `order(u) - slack` coefficients.
pub fn verify_eliminant(g: &UPoly<QFunc>, u: &Series, slack: usize) -> Result<Verdict> {
    let order = u.order();
    let x0 = u.x0();
    for c in g.coeffs() {
        if c.den().eval(x0).is_zero() {
            return Err(Error::SingularPoint { coefficient: c.to_string() });
        }
    }
    let mut lcm = UPoly::one(&());
    for c in g.coeffs() {
        let h = lcm.gcd(c.den())?;
        lcm = &lcm * &c.den().exact_div(&h)?;
    }
    let lcm = QFunc::from_poly(lcm);
    let mut acc = Series::constant(x0.clone(), Rat::zero(), order);
    for c in g.coeffs().iter().rev() {
        let cleared = Series::expand(&(c.clone() * lcm.clone()), x0, order)?;
        acc = acc.mul(u).add(&cleared);
    }
    judge(&acc, order.saturating_sub(slack))
}

/// Applies `spec` to `target` and checks the first `order(target) - slack`
/// coefficients of the result.
pub fn verify_annihilator(spec: &OdeSpec<QFunc>, target: &Series, slack: usize) -> Result<Verdict> {
    let order = target.order();
    let a = expand_coeffs(spec, target.x0(), order)?;
    let mut d = target.clone();
    let mut acc = Series::constant(target.x0().clone(), Rat::zero(), order);
    for ai in &a {
        acc = acc.add(&ai.mul(&d));
        d = d.derivative();
    }
    acc = acc.add(&d);
    judge(&acc, order.saturating_sub(slack))
}

/// The smallest nonnegative integer that is not a pole of any coefficient.
pub fn suggest_x0(coeffs: &[QFunc]) -> Rat {
    let mut t = 0i64;
    loop {
        let at = Rat::from_integer(t.into());
        if coeffs.iter().all(|c| !c.den().eval(&at).is_zero()) {
            return at;
        }
        t += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::rat;
    use proptest::prelude::*;

    fn c(n: i64) -> QFunc {
        QFunc::constant(rat(n, 1))
    }

    fn q(n: i64) -> Rat {
        rat(n, 1)
    }

    fn op(lower: Vec<QFunc>) -> OdeSpec<QFunc> {
        OdeSpec::monic(lower, &()).unwrap()
    }

    fn ics(v: &[i64]) -> InitialConditions {
        InitialConditions::new(v.iter().map(|&k| q(k)).collect()).unwrap()
    }

    fn exp_jet(order: usize) -> Series {
        series_solve(&op(vec![c(-1), c(0)]), &ics(&[1, 1]), &q(0), order).unwrap()
    }

    #[test]
    fn exponential_jet() {
        let y = exp_jet(10);
        let mut f = Rat::one();
        for (k, coeff) in y.coeffs().iter().enumerate() {
            if k > 0 {
                f *= Rat::from_integer(k.into());
            }
            assert_eq!(coeff, &f.recip());
        }
        let u = logderiv_series(&y).unwrap();
        assert_eq!(u, Series::constant(q(0), q(1), 9));
    }

    #[test]
    fn straight_line() {
        let y = series_solve(&op(vec![c(0), c(0)]), &ics(&[1, 1]), &q(0), 8).unwrap();
        assert_eq!(y.coeffs()[..2], [q(1), q(1)]);
        assert!(y.coeffs()[2..].iter().all(|c| c.is_zero()));
        let u = logderiv_series(&y).unwrap();
        let alternating: Vec<Rat> = (0..7).map(|k| q(if k % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(u.coeffs(), &alternating[..]);
        let flat = Series::constant(q(0), q(7), 5);
        assert!(logderiv_series(&flat).unwrap().valuation().is_none());
    }

    #[test]
    fn singular_points_are_reported() {
        let x = QFunc::x(&());
        let l = op(vec![-x.clone(), -(c(1) / (c(2) * x))]);
        let err = series_solve(&l, &ics(&[1, 1]), &q(0), 10).unwrap_err();
        assert!(matches!(err, Error::SingularPoint { ref coefficient } if coefficient.starts_with("a1")));
        assert!(series_solve(&l, &ics(&[1, 1]), &q(1), 10).is_ok());
        assert_eq!(InitialConditions::new(vec![q(0), q(1)]), Err(Error::ZeroConstantTerm));
        assert_eq!(
            series_solve(&l, &ics(&[1]), &q(1), 10).unwrap_err(),
            Error::InitialConditions { expected: 2, got: 1 }
        );
    }

    #[test]
    fn eliminant_checks() {
        let u = logderiv_series(&exp_jet(40)).unwrap();
        let g = UPoly::from_ints(&[-1, 0, 1], &());
        assert_eq!(verify_eliminant(&g, &u, 8).unwrap(), Verdict::Pass { checked: 31 });
        let bad = UPoly::from_ints(&[-2, 1], &());
        assert_eq!(verify_eliminant(&bad, &u, 8).unwrap(), Verdict::Fail { index: 0 });
        let tampered = UPoly::from_ints(&[1, 0, 1], &());
        assert_eq!(verify_eliminant(&tampered, &u, 8).unwrap(), Verdict::Fail { index: 0 });
    }

    #[test]
    fn square_root_branch() {
        // y'' = (1/(2x)) y' + x y at x0 = 1 with y = y' = 1 has y'/y = sqrt(x)
        let x = QFunc::x(&());
        let l = op(vec![-x.clone(), -(c(1) / (c(2) * x.clone()))]);
        let y = series_solve(&l, &ics(&[1, 1]), &q(1), 40).unwrap();
        let u = logderiv_series(&y).unwrap();
        let g = UPoly::new(vec![-x, c(0), c(1)], ());
        assert!(verify_eliminant(&g, &u, 8).unwrap().passed());
        assert!(verify_annihilator(&l, &y, 8).unwrap().passed());
        assert!(verify_annihilator(&l, &y.inverse().unwrap(), 8).unwrap().passed());
    }

    #[test]
    fn annihilator_checks() {
        let y = exp_jet(40);
        assert!(verify_annihilator(&op(vec![c(-1), c(0)]), &y, 8).unwrap().passed());
        assert!(verify_annihilator(&op(vec![c(-4), c(0)]), &y.pow(2), 8).unwrap().passed());
        let line = Series::new(q(0), vec![q(1), q(1), q(0), q(0), q(0), q(0), q(0), q(0), q(0), q(0)]);
        assert!(!verify_annihilator(&op(vec![c(-1), c(0)]), &line, 2).unwrap().passed());
        assert_eq!(
            verify_annihilator(&op(vec![c(-1), c(0)]), &line, 0),
            Err(Error::InsufficientPrecision { available: 8, required: 10 })
        );
    }

    #[test]
    fn solved_form_matches_linear_solver() {
        // y2 = 1 is y'' = y
        let spec = NonlinearSpec::new(2, MPoly::one(&())).unwrap();
        assert_eq!(series_solve_solved(&spec, &ics(&[1, 1]), &q(0), 20).unwrap(), exp_jet(20));
        let g = &(-&MPoly::var(1, &()).pow(2)) - &MPoly::one(&());
        let spec = NonlinearSpec::new(3, g.clone()).unwrap();
        let y = series_solve_solved(&spec, &ics(&[1, 2, -1]), &q(0), 30).unwrap();
        let qs = quotient_series(&y, 3).unwrap();
        let residual = qs[2].sub(&eval_at_series(&g, &qs[..2], &q(0), 27).unwrap());
        assert!(residual.valuation().is_none());
    }

    #[test]
    fn expansion_point_suggestion() {
        let x = QFunc::x(&());
        assert_eq!(suggest_x0(&[c(1) / x.clone(), c(1) / (x.clone() - c(1)), x]), q(2));
        assert_eq!(suggest_x0(&[c(3)]), q(0));
    }

    fn arb_coeff() -> impl Strategy<Value = QFunc> {
        (prop::collection::vec(-3i64..=3, 0..4), prop::collection::vec(-3i64..=3, 0..3)).prop_map(|(n, d)| {
            let num = UPoly::from_ints(&n, &());
            // denominators 1 + x * (...) never vanish at 0
            let mut den = vec![1];
            den.extend(d);
            QFunc::new(num, UPoly::from_ints(&den, &())).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn solver_leaves_high_valuation(lower in prop::collection::vec(arb_coeff(), 1..=3), seed in prop::collection::vec(1i64..5, 3)) {
            let l = op(lower);
            let n = l.order();
            let y = series_solve(&l, &ics(&seed[..n]), &q(0), 40).unwrap();
            // slack n: the residual is known to 40 - n terms and all of them vanish
            let v = verify_annihilator(&l, &y, n).unwrap();
            prop_assert_eq!(v, Verdict::Pass { checked: 40 - n });
        }
    }
}
