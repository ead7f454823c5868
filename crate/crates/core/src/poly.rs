//! Sparse univariate polynomials over the exact rationals.
//!
//! A [`UniPoly`] stores only nonzero coefficients, keyed by exponent. All
//! arithmetic is exact; the one floating-point entry point is
//! [`UniPoly::eval_complex`], used by numeric cross-checks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::PolyError;

/// Exact rational coefficient.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parity-free membership test result for the classes `C_k` mod `N`.
///
/// A nonzero polynomial belongs to `C_k` when every exponent is congruent to
/// `k` modulo `N`. The zero polynomial belongs to every class and is reported
/// separately so callers decide what that means for them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "residue")]
pub enum CyclicClass {
    Zero,
    NotCyclic,
    Class(u64),
}

impl CyclicClass {
    /// Member of some `C_k` (the zero polynomial counts).
    pub fn is_cyclic(self) -> bool {
        !matches!(self, CyclicClass::NotCyclic)
    }

    /// Member of `C_0` (the zero polynomial counts).
    pub fn is_class_zero(self) -> bool {
        matches!(self, CyclicClass::Zero | CyclicClass::Class(0))
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicClass::Zero => write!(f, "zero"),
            CyclicClass::NotCyclic => write!(f, "not cyclic"),
            CyclicClass::Class(k) => write!(f, "C_{}", k),
        }
    }
}

/// Even or odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// `p = even + odd`, split by exponent parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenOddParts {
    pub even: UniPoly,
    pub odd: UniPoly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    terms: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from integer coefficients listed lowest degree first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as u32, rat(c))))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// `p(0)`.
    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(z))`, by sparse Horner evaluation.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut iter = self.terms.iter().rev();
        let Some((&top, lead)) = iter.next() else {
            return Self::zero();
        };
        let mut acc = Self::constant(lead.clone());
        let mut current = top;
        for (&e, c) in iter {
            acc = &acc * &inner.pow(current - e);
            acc.add_term(0, c.clone());
            current = e;
        }
        if current > 0 {
            acc = &acc * &inner.pow(current);
        }
        acc
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, if e % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn even_odd_parts(&self) -> EvenOddParts {
        let (even, odd): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .terms
            .iter()
            .map(|(&e, c)| (e, c.clone()))
            .partition(|(e, _)| e % 2 == 0);
        EvenOddParts {
            even: Self { terms: even },
            odd: Self { terms: odd },
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 1)
    }

    pub fn parity(&self) -> Option<Parity> {
        if self.is_even() {
            Some(Parity::Even)
        } else if self.is_odd() {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    /// Exponent-residue classification mod `modulus`. Primality is not
    /// required here.
    pub fn cyclic_class(&self, modulus: u64) -> Result<CyclicClass, PolyError> {
        if modulus < 2 {
            return Err(PolyError::InvalidModulus(modulus));
        }
        Ok(residue_class(self.terms.keys().copied(), modulus))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut current = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (&e, c) in self.terms.iter().rev() {
            acc = acc * pow_rat(x, current - e) + c;
            current = e;
        }
        acc * pow_rat(x, current)
    }

    /// Horner evaluation in double-precision complex arithmetic.
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut current = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (&e, c) in self.terms.iter().rev() {
            acc = acc * x.powu(current - e) + rational_to_f64(c);
            current = e;
        }
        acc * x.powu(current)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let (dd, dlc) = match (divisor.degree(), divisor.leading_coeff()) {
            (Some(d), Some(lc)) => (d, lc.clone()),
            _ => return Err(PolyError::DivisionByZero),
        };
        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() / &dlc;
            let shift = rd - dd;
            for (&e, c) in &divisor.terms {
                rem.add_term(e + shift, -(c * &factor));
            }
            quotient.add_term(shift, factor);
        }
        Ok((quotient, rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * rat(e as i64))),
        )
    }
}

/// Terms scaled by the lcm of the denominators, and that lcm.
fn integer_terms(p: &UniPoly) -> (Vec<(u32, BigInt)>, BigInt) {
    let l = p
        .terms
        .values()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let terms = p
        .terms
        .iter()
        .map(|(&e, c)| (e, c.numer() * (&l / c.denom())))
        .collect();
    (terms, l)
}

fn pow_rat(x: &Rational, exp: u32) -> Rational {
    num_traits::pow::pow(x.clone(), exp as usize)
}

/// Shared residue scan over exponents (also used for bivariate total degrees).
pub(crate) fn residue_class<I: IntoIterator<Item = u32>>(exps: I, modulus: u64) -> CyclicClass {
    let mut seen: Option<u64> = None;
    for e in exps {
        let r = u64::from(e) % modulus;
        match seen {
            None => seen = Some(r),
            Some(s) if s != r => return CyclicClass::NotCyclic,
            _ => {}
        }
    }
    seen.map_or(CyclicClass::Zero, CyclicClass::Class)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        // integer products avoid a gcd per accumulated term
        let (xs, dx) = integer_terms(self);
        let (ys, dy) = integer_terms(rhs);
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (a, x) in &xs {
            for (b, y) in &ys {
                *acc.entry(a + b).or_default() += x * y;
            }
        }
        let den = dx * dy;
        UniPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, Rational::new(c, den.clone())))
                .collect(),
        }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Writes one signed term in canonical form. `first` controls whether a
/// positive sign is printed as ` + `.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    monomial: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag = c.abs();
    if monomial.is_empty() {
        write!(f, "{}", mag)
    } else if mag.is_one() {
        write!(f, "{}", monomial)
    } else {
        write!(f, "{}*{}", mag, monomial)
    }
}

pub(crate) fn power_text(var: &str, exp: u32) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{}^{}", var, exp),
    }
}

/// Canonical text: decreasing exponents, e.g. `z^6 + 4*z^3 + 4`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, i == 0, c, &power_text("z", e))?;
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) mod serde_rational {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }
}
