//! Expressions over `k(x)`:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | factor
//! factor := base ('^' uint)?
//! base   := integer | identifier | '(' expr ')'
//! ```
//!
//! Which identifiers exist depends on what is being parsed: `x` always, plus
//! `T` in a defining polynomial, `D` in an operator, `y1, y2, ...` in a
//! polynomial relation.

use std::fmt;

use logderiv::basefield::{Field, RatFunc, UPoly};
use logderiv::logdiff::OdeSpec;
use logderiv::mpoly::MPoly;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            col += s.len();
            Tok::Int(s.parse().unwrap())
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
            }
            col += s.len();
            Tok::Ident(s)
        } else if "+-*/^()".contains(c) {
            chars.next();
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line: l, col: k, message: format!("unexpected character '{c}'") });
        };
        out.push(Token { tok, line: l, col: k });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

/// The algebra an expression is evaluated in.
trait Target {
    type Value: Clone;
    fn int(&self, n: &BigInt) -> Self::Value;
    fn ident(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
}

struct Parser<'t, T: Target> {
    toks: Vec<Token>,
    pos: usize,
    target: &'t T,
}

impl<T: Target> Parser<'_, T> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn error_at(&self, tok: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: tok.line, col: tok.col, message: message.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<T::Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.target.add(acc, t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.target.add(acc, self.target.neg(t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T::Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.peek().clone();
            let r = if self.eat('*') {
                let f = self.unary()?;
                self.target.mul(acc, f)
            } else if self.eat('/') {
                let f = self.unary()?;
                self.target.div(acc, f)
            } else {
                return Ok(acc);
            };
            acc = r.map_err(|m| self.error_at(&at, m))?;
        }
    }

    fn unary(&mut self) -> Result<T::Value, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.target.neg(v));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<T::Value, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let tok = self.peek().clone();
        let Tok::Int(n) = &tok.tok else {
            return Err(self.error_at(&tok, "expected a nonnegative integer exponent"));
        };
        let e = n.to_u32().filter(|&e| e <= 10_000).ok_or_else(|| self.error_at(&tok, "exponent too large"))?;
        self.pos += 1;
        let mut acc = self.target.int(&BigInt::from(1));
        for _ in 0..e {
            acc = self.target.mul(acc, base.clone()).map_err(|m| self.error_at(&tok, m))?;
        }
        Ok(acc)
    }

    fn base(&mut self) -> Result<T::Value, ParseError> {
        let tok = self.peek().clone();
        match &tok.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(self.target.int(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                self.target.ident(name).ok_or_else(|| self.error_at(&tok, format!("unknown identifier '{name}'")))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let v = self.expr()?;
                let close = self.peek().clone();
                if !self.eat(')') {
                    return Err(self.error_at(&close, "expected ')'"));
                }
                Ok(v)
            }
            Tok::End => Err(self.error_at(&tok, "unexpected end of input")),
            Tok::Sym(c) => Err(self.error_at(&tok, format!("unexpected '{c}'"))),
        }
    }
}

fn run<T: Target>(text: &str, target: &T) -> Result<T::Value, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, target };
    let v = p.expr()?;
    let tok = p.peek().clone();
    if tok.tok != Tok::End {
        return Err(p.error_at(&tok, "expected an operator or end of input"));
    }
    Ok(v)
}

struct Coeffs<'c, F: Field>(&'c F::Ctx);

impl<F: Field> Target for Coeffs<'_, F> {
    type Value = RatFunc<F>;

    fn int(&self, n: &BigInt) -> RatFunc<F> {
        RatFunc::from_bigint(self.0, n)
    }

    fn ident(&self, name: &str) -> Option<RatFunc<F>> {
        (name == "x").then(|| RatFunc::x(self.0))
    }

    fn add(&self, a: RatFunc<F>, b: RatFunc<F>) -> RatFunc<F> {
        a + b
    }

    fn neg(&self, a: RatFunc<F>) -> RatFunc<F> {
        -a
    }

    fn mul(&self, a: RatFunc<F>, b: RatFunc<F>) -> Result<RatFunc<F>, String> {
        Ok(a * b)
    }

    fn div(&self, a: RatFunc<F>, b: RatFunc<F>) -> Result<RatFunc<F>, String> {
        if b.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(a / b)
    }
}

/// Polynomials in one formal variable over `k(x)`. For operators the
/// variable is `D`, which does not commute with `x`; products are only
/// accepted when they cannot depend on the order.
struct Formal<'c, F: Field> {
    ctx: &'c F::Ctx,
    var: &'static str,
    operator: bool,
}

fn is_scalar<F: Field>(p: &UPoly<RatFunc<F>>) -> bool {
    p.coeffs().iter().all(|c| c.as_constant().is_some())
}

impl<F: Field> Target for Formal<'_, F> {
    type Value = UPoly<RatFunc<F>>;

    fn int(&self, n: &BigInt) -> Self::Value {
        UPoly::constant(RatFunc::from_bigint(self.ctx, n))
    }

    fn ident(&self, name: &str) -> Option<Self::Value> {
        match name {
            "x" => Some(UPoly::constant(RatFunc::x(self.ctx))),
            v if v == self.var => Some(UPoly::x(self.ctx)),
            _ => None,
        }
    }

    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        &a + &b
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        -&a
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String> {
        if self.operator && !a.is_constant() && !is_scalar(&b) {
            return Err("coefficients must stand to the left of D".into());
        }
        Ok(&a * &b)
    }

    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String> {
        if b.is_zero() {
            return Err("zero denominator".into());
        }
        if !b.is_constant() {
            return Err(format!("cannot divide by an expression in {}", self.var));
        }
        if self.operator && !a.is_constant() && !is_scalar(&b) {
            return Err("coefficients must stand to the left of D".into());
        }
        let inv = b.coeff(0).inv().unwrap();
        Ok(a.scale(&inv))
    }
}

struct Relation<'c, F: Field>(&'c F::Ctx);

impl<F: Field> Target for Relation<'_, F> {
    type Value = MPoly<RatFunc<F>>;

    fn int(&self, n: &BigInt) -> Self::Value {
        MPoly::constant(RatFunc::from_bigint(self.0, n))
    }

    fn ident(&self, name: &str) -> Option<Self::Value> {
        if name == "x" {
            return Some(MPoly::constant(RatFunc::x(self.0)));
        }
        let index: usize = name.strip_prefix('y')?.parse().ok()?;
        (index >= 1 && !name[1..].starts_with('0')).then(|| MPoly::var(index, self.0))
    }

    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        &a + &b
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        -&a
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String> {
        Ok(&a * &b)
    }

    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String> {
        match b.as_constant() {
            _ if b.is_zero() => Err("zero denominator".into()),
            Some(c) => Ok(a.scale(&c.inv().unwrap())),
            None => Err("cannot divide by an expression in y".into()),
        }
    }
}

/// A coefficient in `k(x)`.
pub fn parse_ratfunc<F: Field>(text: &str, ctx: &F::Ctx) -> Result<RatFunc<F>, ParseError> {
    run(text, &Coeffs::<F>(ctx))
}

/// A polynomial in `T` over `k(x)`.
pub fn parse_upoly_t<F: Field>(text: &str, ctx: &F::Ctx) -> Result<UPoly<RatFunc<F>>, ParseError> {
    run(text, &Formal::<F> { ctx, var: "T", operator: false })
}

/// A polynomial in `y1, y2, ...` over `k(x)`.
pub fn parse_relation<F: Field>(text: &str, ctx: &F::Ctx) -> Result<MPoly<RatFunc<F>>, ParseError> {
    run(text, &Relation::<F>(ctx))
}

/// An operator such as `D^2 - (1/(2*x))*D - x`, made monic.
pub fn parse_operator<F: Field>(text: &str, ctx: &F::Ctx) -> Result<OdeSpec<RatFunc<F>>, ParseError> {
    let p = run(text, &Formal::<F> { ctx, var: "D", operator: true })?;
    if p.degree().unwrap_or(0) == 0 {
        return Err(ParseError { line: 1, col: 1, message: "operator must have order at least 1".into() });
    }
    let all: Vec<RatFunc<F>> = p.coeffs().iter().rev().cloned().collect();
    Ok(OdeSpec::from_highest_first(all, ctx).expect("order at least 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use logderiv::basefield::{rat, Fp, Rat};
    use logderiv::QFunc;

    fn q(text: &str) -> QFunc {
        parse_ratfunc::<Rat>(text, &()).unwrap()
    }

    fn err(text: &str) -> ParseError {
        parse_ratfunc::<Rat>(text, &()).unwrap_err()
    }

    #[test]
    fn normalizes_over_a_common_denominator() {
        let r = q("3/(2*x) - x^2");
        assert_eq!(r.num(), &UPoly::new(vec![rat(3, 2), rat(0, 1), rat(0, 1), rat(-1, 1)], ()));
        assert_eq!(r.den(), &UPoly::from_ints(&[0, 1], &()));
        assert_eq!(r, q("(-2*x^3 + 3)/(2*x)"));
        assert!(q("0").is_zero());
        assert!(q("0").den().is_one());
        assert_eq!(q("-x^2"), -(q("x") * q("x")));
        assert_eq!(q("- - 3"), q("3"));
        assert_eq!(q("2^10"), q("1024"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = err("1/(x - x)");
        assert_eq!((e.line, e.col), (1, 2));
        assert_eq!(e.message, "zero denominator");
        let e = err("x +\n  * 2");
        assert_eq!((e.line, e.col), (2, 3));
        let e = err("(x + 1");
        assert_eq!(e.message, "expected ')'");
        assert_eq!(err("2x").message, "expected an operator or end of input");
        assert_eq!(err("z").message, "unknown identifier 'z'");
        assert_eq!(err("x ^ -1").message, "expected a nonnegative integer exponent");
        assert_eq!(err("x $ 1").message, "unexpected character '$'");
        assert_eq!(err("").message, "unexpected end of input");
    }

    #[test]
    fn operators() {
        let l = parse_operator::<Rat>("D^2 - (1/(2*x))*D - x", &()).unwrap();
        assert_eq!(l.lower_coeffs(), &[-q("x"), -q("1/(2*x)")]);
        let l = parse_operator::<Rat>("2*D^2 - 2", &()).unwrap();
        assert_eq!(l.lower_coeffs(), &[q("-1"), q("0")]);
        assert_eq!(l.render(), "D^2 - 1");
        let e = parse_operator::<Rat>("D*x", &()).unwrap_err();
        assert_eq!(e.message, "coefficients must stand to the left of D");
        assert!(parse_operator::<Rat>("D/x", &()).is_err());
        assert!(parse_operator::<Rat>("D/2 + 1", &()).is_ok());
        assert!(parse_operator::<Rat>("x", &()).is_err());
        assert!(parse_operator::<Rat>("T", &()).is_err());
    }

    #[test]
    fn defining_polynomials_and_relations() {
        let f = parse_upoly_t::<Rat>("T^2 - x", &()).unwrap();
        assert_eq!(f, UPoly::new(vec![-q("x"), q("0"), q("1")], ()));
        let f = parse_upoly_t::<Rat>("(T - 1)^2", &()).unwrap();
        assert_eq!(f, UPoly::new(vec![q("1"), q("-2"), q("1")], ()));
        assert!(parse_upoly_t::<Rat>("1/T", &()).is_err());
        let g = parse_relation::<Rat>("-y1^2 - 1", &()).unwrap();
        assert_eq!(g.to_string(), "-y1^2 - 1");
        let g = parse_relation::<Rat>("y12 * y3 / 2 - x", &()).unwrap();
        assert_eq!(g.max_var(), 12);
        assert!(parse_relation::<Rat>("y0", &()).is_err());
        assert!(parse_relation::<Rat>("y01", &()).is_err());
    }

    #[test]
    fn positive_characteristic() {
        let r = parse_ratfunc::<Fp>("7*x + 1/2", &5).unwrap();
        assert_eq!(r, parse_ratfunc::<Fp>("2*x + 3", &5).unwrap());
        assert_eq!(parse_ratfunc::<Fp>("1/5", &5).unwrap_err().message, "zero denominator");
    }

    #[test]
    fn rendering_reparses() {
        for text in ["3/(2*x) - x^2", "(x^2 + 1)/(x - 3)^2", "-7/9", "x^5 - 1/x", "(2*x + 1)/(3*x^2 - x + 4)", "0"] {
            let r = q(text);
            assert_eq!(q(&r.to_string()), r, "{text} -> {r}");
        }
        let l = parse_operator::<Rat>("D^3 + (x/(x+1))*D - 2/x", &()).unwrap();
        assert_eq!(parse_operator::<Rat>(&l.render(), &()).unwrap(), l);
    }
}
