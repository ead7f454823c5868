//! Sparse polynomials in `z` and `w`.
//!
//! "Even" here means `P(-z, -w) = P(z, w)`, i.e. every term has even total
//! degree. The stronger "even in each variable separately" is a separate
//! predicate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::oracle::TheoremStatus;
use crate::poly::{power_text, rat, write_term, Rational, UniPoly};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly {
    /// `(z exponent, w exponent) -> coefficient`
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Result of [`BiPoly::homogeneity`] for a homogeneous polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u32),
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn z() -> Self {
        Self::monomial(rat(1), 1, 0)
    }

    pub fn w() -> Self {
        Self::monomial(rat(1), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Integer coefficients as `(i, j, c)` triples.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), rat(c))))
    }

    /// Embeds a univariate polynomial in `z`.
    pub fn from_uni(p: &UniPoly) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `P(0, 0)`
    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Depends only on `z`; returns it as a univariate polynomial.
    pub fn as_univariate(&self) -> Option<UniPoly> {
        self.terms
            .keys()
            .all(|&(_, j)| j == 0)
            .then(|| UniPoly::from_terms(self.terms.iter().map(|(&(i, _), c)| (i, c.clone()))))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, a)| (k, a * c)))
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

    /// Every term has even total degree.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|&(i, j)| (i + j) % 2 == 0)
    }

    /// Even in `z` and in `w` separately.
    pub fn is_even_in_each_variable(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i % 2 == 0 && j % 2 == 0)
    }

    /// `P(az, bz)`
    pub fn restrict_line(&self, a: &Rational, b: &Rational) -> UniPoly {
        UniPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let coeff =
                c * num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize);
            (i + j, coeff)
        }))
    }

    /// Homogeneous components grouped by total degree, highest degree first.
    pub fn homogeneous_components(&self) -> Vec<(u32, BiPoly)> {
        let mut groups: BTreeMap<u32, BiPoly> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            groups.entry(i + j).or_default().add_term((i, j), c.clone());
        }
        groups.into_iter().rev().collect()
    }

    /// The odd-degree homogeneous components; empty exactly when `P` is even.
    pub fn odd_homogeneous_components(&self) -> Vec<(u32, BiPoly)> {
        self.homogeneous_components()
            .into_iter()
            .filter(|(k, _)| k % 2 == 1)
            .collect()
    }

    /// `Some` when all terms share one total degree.
    pub fn homogeneity(&self) -> Option<Homogeneity> {
        let mut degrees = self.terms.keys().map(|&(i, j)| i + j);
        let Some(first) = degrees.next() else {
            return Some(Homogeneity::Zero);
        };
        degrees
            .all(|d| d == first)
            .then_some(Homogeneity::Degree(first))
    }

    /// Coefficient of `z^i w^j` equals that of `z^j w^i` throughout.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(i, j), c)| self.terms.get(&(j, i)) == Some(c))
    }

    /// `P(Q(z), R(z))`
    pub fn subst_uni(&self, q: &UniPoly, r: &UniPoly) -> UniPoly {
        let (mut qp, mut rp) = (PowerCache::new(q), PowerCache::new(r));
        self.terms
            .iter()
            .fold(UniPoly::zero(), |acc, (&(i, j), c)| {
                let term = qp.get(i) * rp.get(j);
                &acc + &term.scale(c)
            })
    }

    /// `p(Q(z, w))` for univariate `p`.
    pub fn compose_outer(p: &UniPoly, q: &BiPoly) -> BiPoly {
        let mut iter = p.terms().rev();
        let Some((top, lead)) = iter.next() else {
            return BiPoly::zero();
        };
        let mut acc = BiPoly::constant(lead.clone());
        let mut current = top;
        for (e, c) in iter {
            acc = &acc * &q.pow(current - e);
            acc.add_term((0, 0), c.clone());
            current = e;
        }
        &acc * &q.pow(current)
    }
}

struct PowerCache<'a> {
    base: &'a UniPoly,
    pows: Vec<UniPoly>,
}

impl<'a> PowerCache<'a> {
    fn new(base: &'a UniPoly) -> Self {
        Self {
            base,
            pows: vec![UniPoly::one()],
        }
    }

    fn get(&mut self, e: u32) -> &UniPoly {
        while self.pows.len() <= e as usize {
            let next = self.pows.last().unwrap() * self.base;
            self.pows.push(next);
        }
        &self.pows[e as usize]
    }
}

/// If `Q(0,0) = 0` and `R = P∘Q` is even, then `P` or `Q` is even.
pub fn theorem_pqr_assert(p: &UniPoly, q: &BiPoly) -> TheoremStatus {
    if !q.constant_term().is_zero() {
        return TheoremStatus::HypothesesUnmet("Q(0,0) != 0".into());
    }
    let r = BiPoly::compose_outer(p, q);
    if !r.is_even() {
        return TheoremStatus::HypothesesUnmet("P(Q) is not even".into());
    }
    TheoremStatus::check(p.is_even() || q.is_even(), || {
        format!(
            "P = {}, Q = {}: P(Q) = {} even, neither P nor Q even",
            p, q, r
        )
    })
}

/// Homogeneous analogue: if `Q(0,0) = 0` and `P∘Q` is homogeneous, then `P`
/// (as a univariate polynomial, i.e. a monomial) or `Q` is homogeneous.
pub fn homogeneous_pqr_assert(p: &UniPoly, q: &BiPoly) -> TheoremStatus {
    if !q.constant_term().is_zero() {
        return TheoremStatus::HypothesesUnmet("Q(0,0) != 0".into());
    }
    let r = BiPoly::compose_outer(p, q);
    if r.homogeneity().is_none() {
        return TheoremStatus::HypothesesUnmet("P(Q) is not homogeneous".into());
    }
    let p_homogeneous = p.num_terms() <= 1;
    TheoremStatus::check(p_homogeneous || q.homogeneity().is_some(), || {
        format!(
            "P = {}, Q = {}: P(Q) = {} homogeneous, neither P nor Q",
            p, q, r
        )
    })
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), x * y);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

/// Graded-lex order: total degree descending, then `z` exponent descending.
fn graded_lex(a: &(u32, u32), b: &(u32, u32)) -> std::cmp::Ordering {
    (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(graded_lex);
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let mono = match (power_text("z", i), power_text("w", j)) {
                (a, b) if a.is_empty() => b,
                (a, b) if b.is_empty() => a,
                (a, b) => format!("{}*{}", a, b),
            };
            write_term(f, n == 0, &self.terms[&(i, j)], &mono)?;
        }
        Ok(())
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
