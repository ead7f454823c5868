//! Expression parser for polynomials in `z` (and `w`) and rational functions.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = atom [ "^" exponent ] ;
//! exponent = INTEGER [ "^" exponent ] ;        (* right-associative *)
//! atom     = NUMBER | "z" | "w" | "(" expr ")" ;
//! NUMBER   = INTEGER | INTEGER "/" INTEGER ;   (* no whitespace around "/" *)
//! ```
//!
//! There is no implicit multiplication: `2z` is rejected, write `2*z`. An
//! integer, a slash and an integer written with no whitespace between them
//! lex as one rational literal (`3/2`); every other `/` is division. A
//! division by a non-constant makes the result a rational function; any
//! occurrence of `w` makes it a bivariate polynomial, where only division by
//! constants is allowed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::bipoly::BiPoly;
use crate::error::ParseError;
use crate::poly::{Rational, UniPoly};
use crate::ratfn::RationalFunction;

pub const MAX_INPUT_BYTES: usize = 64 * 1024;
/// Largest degree any intermediate value may reach.
pub const MAX_DEGREE: u32 = 1024;
const MAX_NESTING: usize = 200;
/// Upper bound on coefficient multiplications spent lowering one input.
const WORK_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z,
    W,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(r) => r.to_string(),
            Tok::Int(i) => i.to_string(),
            Tok::Var(Var::Z) => "z".into(),
            Tok::Var(Var::W) => "w".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::End => String::new(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number {}", r),
            Tok::Int(i) => format!("number {}", i),
            Tok::Var(Var::Z) => "'z'".into(),
            Tok::Var(Var::W) => "'w'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let int_end = scan_digits(bytes, i);
                let after_caret = matches!(out.last(), Some((_, Tok::Caret)));
                let has_fraction = !after_caret
                    && int_end + 1 < bytes.len()
                    && bytes[int_end] == b'/'
                    && bytes[int_end + 1].is_ascii_digit();
                let numer: BigInt = src[i..int_end].parse().expect("ascii digits");
                if has_fraction {
                    let den_end = scan_digits(bytes, int_end + 1);
                    let denom: BigInt = src[int_end + 1..den_end].parse().expect("ascii digits");
                    if denom.is_zero() {
                        return Err(ParseError::new(
                            int_end,
                            "zero denominator in rational literal",
                        ));
                    }
                    i = den_end;
                    Tok::Num(Rational::new(numer, denom))
                } else {
                    i = int_end;
                    Tok::Int(numer)
                }
            }
            b'z' | b'w' => {
                i += 1;
                if i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    return Err(
                        ParseError::new(start, "unknown identifier").expecting(&["'z'", "'w'"])
                    );
                }
                Tok::Var(if c == b'z' { Var::Z } else { Var::W })
            }
            b'+' => single(&mut i, Tok::Plus),
            b'-' => single(&mut i, Tok::Minus),
            b'*' => single(&mut i, Tok::Star),
            b'/' => single(&mut i, Tok::Slash),
            b'^' => single(&mut i, Tok::Caret),
            b'(' => single(&mut i, Tok::LParen),
            b')' => single(&mut i, Tok::RParen),
            _ => {
                let msg = if c.is_ascii_alphabetic() {
                    "unknown identifier".to_string()
                } else {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    format!("unexpected character {:?}", ch)
                };
                return Err(ParseError::new(start, msg)
                    .expecting(&["number", "'z'", "'w'", "operator", "'('", "')'"]));
            }
        };
        out.push((start, tok));
    }
    out.push((bytes.len(), Tok::End));
    Ok(out)
}

fn scan_digits(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

fn single(i: &mut usize, t: Tok) -> Tok {
    *i += 1;
    t
}

/// Parse tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Byte offset of the `/` is kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32, usize),
}

impl Expr {
    fn mentions_w(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(v) => *v == Var::W,
            Expr::Neg(a) | Expr::Pow(a, ..) => a.mentions_w(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.mentions_w() || b.mentions_w()
            }
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

const OPERAND: &[&str] = &["number", "'z'", "'w'", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::new(
            self.offset(),
            format!("unexpected {}", self.peek().describe()),
        )
        .expecting(expected)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::new(
                self.offset(),
                "expression nested too deeply",
            ));
        }
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let (at, _) = self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                Tok::Num(_) | Tok::Int(_) | Tok::Var(_) | Tok::LParen => {
                    let mut err = self.unexpected(&["operator", "')'", "end of input"]);
                    let prev = self.toks[self.pos - 1].1.text();
                    err.message.push_str(&format!(
                        "; implicit multiplication is not supported, write {}*{}",
                        prev,
                        self.peek().text()
                    ));
                    return Err(err);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.depth += 1;
            if self.depth > MAX_NESTING {
                return Err(ParseError::new(
                    self.offset(),
                    "expression nested too deeply",
                ));
            }
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            let (at, _) = self.bump();
            let exp = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), exp, at));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.offset();
        let base = match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                i
            }
            _ => {
                let mut err = self.unexpected(&["non-negative integer"]);
                err.message = format!(
                    "exponent must be a non-negative integer literal, found {}",
                    self.peek().describe()
                );
                return Err(err);
            }
        };
        let too_big = || ParseError::new(at, format!("exponent exceeds {}", MAX_DEGREE));
        let base = base
            .to_u32()
            .filter(|&b| b <= MAX_DEGREE)
            .ok_or_else(too_big)?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return base
                .checked_pow(e)
                .filter(|&v| v <= MAX_DEGREE)
                .ok_or_else(too_big);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::Int(i) => {
                self.bump();
                Ok(Expr::Num(Rational::from_integer(i)))
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Expr::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["')'", "operator"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected(OPERAND)),
        }
    }
}

/// Parses text into a tree without lowering it.
pub fn parse_tree(text: &str) -> Result<Expr, ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ParseError::new(MAX_INPUT_BYTES, "input exceeds 64 KiB"));
    }
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        depth: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected(&["operator", "end of input"]));
    }
    Ok(expr)
}

/// A lowered expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Uni(UniPoly),
    Bi(BiPoly),
    Rational(RationalFunction),
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::Uni(_) => "polynomial",
            Parsed::Bi(_) => "bivariate polynomial",
            Parsed::Rational(_) => "rational function",
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Uni(p) => p.fmt(f),
            Parsed::Bi(p) => p.fmt(f),
            Parsed::Rational(r) => r.fmt(f),
        }
    }
}

impl Serialize for Parsed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Budget(u64);

impl Budget {
    fn spend(&mut self, work: usize) -> Result<(), ParseError> {
        self.0 = self.0.saturating_add(work as u64);
        if self.0 > WORK_BUDGET {
            return Err(ParseError::new(0, "expression too large to expand"));
        }
        Ok(())
    }
}

fn degree_guard(deg: Option<u32>, at: usize) -> Result<(), ParseError> {
    match deg {
        Some(d) if d > MAX_DEGREE => Err(ParseError::new(
            at,
            format!("intermediate degree {} exceeds {}", d, MAX_DEGREE),
        )),
        _ => Ok(()),
    }
}

fn pow_degree(deg: Option<u32>, exp: u32) -> Option<u32> {
    deg.map(|d| d.saturating_mul(exp))
}

struct UniLowering {
    budget: Budget,
    saw_rational_division: bool,
}

impl UniLowering {
    fn lower(&mut self, e: &Expr) -> Result<RationalFunction, ParseError> {
        Ok(match e {
            Expr::Num(r) => RationalFunction::from_poly(UniPoly::constant(r.clone())),
            Expr::Var(_) => RationalFunction::from_poly(UniPoly::z()),
            Expr::Neg(a) => self.lower(a)?.neg(),
            Expr::Add(a, b) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                if !(x.den().is_constant() && y.den().is_constant()) {
                    binary_guard(&x, &y, 0)?;
                }
                self.budget.spend(cost(&x, &y))?;
                x.add(&y)
            }
            Expr::Sub(a, b) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                if !(x.den().is_constant() && y.den().is_constant()) {
                    binary_guard(&x, &y, 0)?;
                }
                self.budget.spend(cost(&x, &y))?;
                x.sub(&y)
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                binary_guard(&x, &y, 0)?;
                self.budget.spend(cost(&x, &y))?;
                x.mul(&y)
            }
            Expr::Div(a, b, at) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                if y.is_zero() {
                    return Err(ParseError::new(*at, "division by zero"));
                }
                if y.as_polynomial().is_none_or(|p| !p.is_constant()) {
                    self.saw_rational_division = true;
                }
                binary_guard(&x, &y, *at)?;
                self.budget.spend(cost(&x, &y))?;
                x.div(&y)
                    .map_err(|_| ParseError::new(*at, "division by zero"))?
            }
            Expr::Pow(a, exp, at) => {
                let x = self.lower(a)?;
                degree_guard(pow_degree(rf_degree(&x), *exp), *at)?;
                let terms = x.num().num_terms() + x.den().num_terms();
                self.budget
                    .spend(terms.saturating_mul(terms).saturating_mul(*exp as usize))?;
                x.pow(*exp)
            }
        })
    }
}

fn rf_degree(x: &RationalFunction) -> Option<u32> {
    x.num().degree().max(x.den().degree())
}

/// Rejects a binary operation whose result could exceed the degree cap.
fn binary_guard(x: &RationalFunction, y: &RationalFunction, at: usize) -> Result<(), ParseError> {
    let sum = rf_degree(x)
        .unwrap_or(0)
        .saturating_add(rf_degree(y).unwrap_or(0));
    degree_guard(Some(sum), at)
}

fn cost(x: &RationalFunction, y: &RationalFunction) -> usize {
    let a = x.num().num_terms() + x.den().num_terms();
    let b = y.num().num_terms() + y.den().num_terms();
    a.saturating_mul(b).saturating_mul(4)
}

fn lower_bi(e: &Expr, budget: &mut Budget) -> Result<BiPoly, ParseError> {
    Ok(match e {
        Expr::Num(r) => BiPoly::constant(r.clone()),
        Expr::Var(Var::Z) => BiPoly::z(),
        Expr::Var(Var::W) => BiPoly::w(),
        Expr::Neg(a) => -&lower_bi(a, budget)?,
        Expr::Add(a, b) => &lower_bi(a, budget)? + &lower_bi(b, budget)?,
        Expr::Sub(a, b) => &lower_bi(a, budget)? - &lower_bi(b, budget)?,
        Expr::Mul(a, b) => {
            let (x, y) = (lower_bi(a, budget)?, lower_bi(b, budget)?);
            let sum = x
                .total_degree()
                .unwrap_or(0)
                .saturating_add(y.total_degree().unwrap_or(0));
            degree_guard(Some(sum), 0)?;
            budget.spend(x.terms().count().saturating_mul(y.terms().count()))?;
            &x * &y
        }
        Expr::Div(a, b, at) => {
            let (x, y) = (lower_bi(a, budget)?, lower_bi(b, budget)?);
            if y.is_zero() {
                return Err(ParseError::new(*at, "division by zero"));
            }
            if !y.is_constant() {
                return Err(ParseError::new(
                    *at,
                    "division by a non-constant is not allowed in expressions with w",
                ));
            }
            x.scale(&y.constant_term().recip())
        }
        Expr::Pow(a, exp, at) => {
            let x = lower_bi(a, budget)?;
            degree_guard(pow_degree(x.total_degree(), *exp), *at)?;
            let terms = x.terms().count();
            budget.spend(terms.saturating_mul(terms).saturating_mul(*exp as usize))?;
            x.pow(*exp)
        }
    })
}

/// Parses and lowers to a polynomial, bivariate polynomial or rational
/// function.
pub fn parse_expr(text: &str) -> Result<Parsed, ParseError> {
    let tree = parse_tree(text)?;
    let mut budget = Budget(0);
    if tree.mentions_w() {
        return Ok(Parsed::Bi(lower_bi(&tree, &mut budget)?));
    }
    let mut lowering = UniLowering {
        budget,
        saw_rational_division: false,
    };
    let rf = lowering.lower(&tree)?;
    if lowering.saw_rational_division {
        Ok(Parsed::Rational(rf))
    } else {
        let (num, _) = rf.into_parts();
        Ok(Parsed::Uni(num))
    }
}

fn kind_error(found: &Parsed, wanted: &str) -> ParseError {
    ParseError::new(
        0,
        format!("expected a {}, found a {}", wanted, found.kind()),
    )
    .expecting(&[wanted])
}

/// Parses a univariate polynomial in `z`.
pub fn parse_uni(text: &str) -> Result<UniPoly, ParseError> {
    match parse_expr(text)? {
        Parsed::Uni(p) => Ok(p),
        other => Err(kind_error(&other, "polynomial in z")),
    }
}

/// Parses a polynomial in `z` and `w` (a polynomial in `z` alone is accepted).
pub fn parse_bi(text: &str) -> Result<BiPoly, ParseError> {
    match parse_expr(text)? {
        Parsed::Uni(p) => Ok(BiPoly::from_uni(&p)),
        Parsed::Bi(p) => Ok(p),
        other => Err(kind_error(&other, "polynomial in z and w")),
    }
}

/// Parses a rational function (a polynomial is accepted as `p/1`).
pub fn parse_rational(text: &str) -> Result<RationalFunction, ParseError> {
    match parse_expr(text)? {
        Parsed::Uni(p) => Ok(RationalFunction::from_poly(p)),
        Parsed::Rational(r) => Ok(r),
        other => Err(kind_error(&other, "rational function")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_frac};

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs)
    }

    #[test]
    fn polynomial_input() {
        assert_eq!(parse_expr("z^2 + 2*z").unwrap(), Parsed::Uni(p(&[0, 2, 1])));
        assert_eq!(parse_uni("(z+1)^3").unwrap(), p(&[1, 3, 3, 1]));
        assert_eq!(parse_uni("-z^2").unwrap(), p(&[0, 0, -1]));
        assert_eq!(
            parse_uni("z/2").unwrap(),
            UniPoly::monomial(rat_frac(1, 2), 1)
        );
        assert_eq!(parse_uni("2*-z").unwrap(), p(&[0, -2]));
        assert_eq!(parse_uni("z^2^3").unwrap(), UniPoly::z().pow(8));
        assert_eq!(parse_uni("7").unwrap(), p(&[7]));
        assert_eq!(parse_uni("z - z").unwrap(), UniPoly::zero());
    }

    #[test]
    fn rational_literal_versus_division() {
        assert_eq!(
            parse_uni("3/2*z").unwrap(),
            UniPoly::monomial(rat_frac(3, 2), 1)
        );
        // with whitespace, `/` is division but the value is the same
        assert_eq!(
            parse_uni("3 / 2*z").unwrap(),
            UniPoly::monomial(rat_frac(3, 2), 1)
        );
        // literal binds tighter than ^: (1/2)^2
        assert_eq!(
            parse_uni("1/2^2").unwrap(),
            UniPoly::constant(rat_frac(1, 4))
        );
        // after ^ the digits are an exponent, so this is 64 divided by 3
        assert_eq!(
            parse_uni("2^6/3").unwrap(),
            UniPoly::constant(rat_frac(64, 3))
        );
        assert!(parse_uni("1/0").is_err());
    }

    #[test]
    fn rational_function_input() {
        let Parsed::Rational(f) = parse_expr("(z^2+z+1)/(z^2-z+1)").unwrap() else {
            panic!();
        };
        assert_eq!(f.num(), &p(&[1, 1, 1]));
        assert_eq!(f.den(), &p(&[1, -1, 1]));
        let f = parse_rational("(z/(z-1))^2").unwrap();
        assert_eq!(f.den(), &p(&[1, -2, 1]));
        assert!(matches!(parse_expr("z^2/z").unwrap(), Parsed::Rational(_)));
        assert_eq!(
            parse_expr("1/(z-z)").unwrap_err().message,
            "division by zero"
        );
    }

    #[test]
    fn bivariate_input() {
        let Parsed::Bi(b) = parse_expr("z - w^2").unwrap() else {
            panic!();
        };
        assert_eq!(b, BiPoly::from_int_terms(&[(1, 0, 1), (0, 2, -1)]));
        assert_eq!(
            parse_bi("z*w/2").unwrap(),
            BiPoly::monomial(rat_frac(1, 2), 1, 1)
        );
        let err = parse_expr("z/w").unwrap_err();
        assert_eq!(err.offset, 1);
        assert_eq!(parse_bi("z^2").unwrap(), BiPoly::monomial(rat(1), 2, 0));
    }

    #[test]
    fn positioned_errors() {
        let err = parse_expr("z**2").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(!err.expected.is_empty());
        let err = parse_expr("2z").unwrap_err();
        assert_eq!(err.offset, 1);
        assert!(err.message.contains("implicit multiplication"));
        assert!(err.message.contains("write 2*z"), "{}", err.message);
        assert_eq!(parse_expr("z^-1").unwrap_err().offset, 2);
        assert_eq!(parse_expr("z^z").unwrap_err().offset, 2);
        assert_eq!(parse_expr("z^(2)").unwrap_err().offset, 2);
        assert_eq!(parse_expr("(z+1").unwrap_err().offset, 4);
        assert_eq!(parse_expr("").unwrap_err().offset, 0);
        assert_eq!(parse_expr("z + x").unwrap_err().offset, 4);
        assert_eq!(parse_expr("z $").unwrap_err().offset, 2);
        assert_eq!(parse_expr("zz").unwrap_err().offset, 0);
        assert!(parse_expr("z^99999999999").is_err());
        assert!(parse_expr("(z+1)^1000*(z+1)^1000").is_err());
    }

    #[test]
    fn totality_on_hostile_input() {
        let deep = "(".repeat(10_000) + "z" + &")".repeat(10_000);
        assert!(parse_expr(&deep).is_err());
        let minuses = "-".repeat(10_000) + "z";
        assert!(parse_expr(&minuses).is_err());
        let big = "z+".repeat(40_000);
        assert!(parse_expr(&big).is_err());
        assert!(parse_expr("é").is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        for src in ["z^6 + 4*z^3 + 4", "-3/2*z^3 + 1/7", "-z^2 - 1", "0"] {
            assert_eq!(parse_uni(src).unwrap().to_string(), src);
        }
        let f = parse_rational("(3*z^4 + 7*z^2 + 3) / (z^4 + 5*z^2 + 1)").unwrap();
        assert_eq!(parse_rational(&f.to_string()).unwrap(), f);
        let b = parse_bi("z^2*w + z*w^2 + w").unwrap();
        assert_eq!(b.to_string(), "z^2*w + z*w^2 + w");
    }
}
