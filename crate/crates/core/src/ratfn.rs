//! Rational functions `P/Q` over the rationals in canonical form.
//!
//! Canonical means `gcd(P, Q) = 1` and `Q` monic, so two rational functions
//! are equal exactly when their stored parts are.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{PolyError, RationalFnError, WitnessError};
use crate::numeric::{check_params, unit_circle_samples, Residuals, VerificationReport};
use crate::parity::Target;
use crate::poly::{CyclicClass, Parity, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, RationalFnError> {
        if den.is_zero() {
            return Err(RationalFnError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(UniPoly::zero()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = den.div_rem(&g).expect("gcd is nonzero");
        let lc = den.leading_coeff().expect("nonzero").recip();
        Ok(Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn into_parts(self) -> (UniPoly, UniPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        self.den.is_constant().then_some(&self.num)
    }

    /// `f(0)`, or `None` when `0` is a pole.
    pub fn value_at_zero(&self) -> Option<Rational> {
        let d = self.den.constant_term();
        (!d.is_zero()).then(|| self.num.constant_term() / d)
    }

    /// `f(g(z))`. With `f = P/Q`, `n = max(deg P, deg Q)` and `g = A/B`, the
    /// result is `Σ p_i A^i B^(n-i) / Σ q_i A^i B^(n-i)`.
    pub fn compose(&self, g: &RationalFunction) -> Result<Self, RationalFnError> {
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let num_pows = powers(&g.num, n);
        let den_pows = powers(&g.den, n);
        let homogenize = |p: &UniPoly| {
            p.terms().fold(UniPoly::zero(), |acc, (i, c)| {
                let term = &num_pows[i as usize] * &den_pows[(n - i) as usize];
                &acc + &term.scale(c)
            })
        };
        let top = homogenize(&self.num);
        let bottom = homogenize(&self.den);
        if bottom.is_zero() {
            return Err(RationalFnError::DegenerateComposition);
        }
        Self::new(top, bottom)
    }

    /// Exact class membership mod `modulus`.
    ///
    /// In lowest terms, `f(ωz) = ω^k f(z)` forces `Q(ωz)` to be a scalar
    /// multiple of `Q(z)`, so `Q ∈ C_j` for some `j` and then `P ∈ C_{j+k}`.
    /// Both sides reduce to exponent-residue scans.
    pub fn cyclic_class(&self, modulus: u64) -> Result<CyclicClass, PolyError> {
        let num = self.num.cyclic_class(modulus)?;
        let den = self.den.cyclic_class(modulus)?;
        Ok(match (num, den) {
            (CyclicClass::Zero, _) => CyclicClass::Zero,
            (CyclicClass::Class(i), CyclicClass::Class(j)) => {
                CyclicClass::Class((i + modulus - j) % modulus)
            }
            _ => CyclicClass::NotCyclic,
        })
    }

    /// `f(-z)`
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }

    /// `None` when `z` is within about `1e-6` of a pole.
    pub fn eval_complex(&self, z: Complex64) -> Option<Complex64> {
        let d = self.den.eval_complex(z);
        let slope = self.den.derivative().eval_complex(z).norm().max(1.0);
        if d.norm() < 1e-6 * slope {
            return None;
        }
        Some(self.num.eval_complex(z) / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den.is_constant() && rhs.den.is_constant() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.den.is_constant() && rhs.den.is_constant() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RationalFnError> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        // already coprime, so powers stay coprime
        Self {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

fn powers(p: &UniPoly, n: u32) -> Vec<UniPoly> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(UniPoly::one());
    for i in 0..n as usize {
        let next = &out[i] * p;
        out.push(next);
    }
    out
}

/// Parity by the signed cross-multiplication identity
/// `P(z)Q(-z) = ±P(-z)Q(z)`, independent of the residue test.
pub fn cross_parity(f: &RationalFunction) -> Option<Parity> {
    let lhs = f.num() * &f.den().reflect();
    let rhs = &f.num().reflect() * f.den();
    if lhs == rhs {
        Some(Parity::Even)
    } else if lhs == -&rhs {
        Some(Parity::Odd)
    } else {
        None
    }
}

/// Samples `f(x)` against `±f(-x)` on the unit circle, skipping points near
/// poles. `samples` counts the points actually compared.
pub fn numeric_parity_check(
    f: &RationalFunction,
    target: Target,
    samples: usize,
    tol: f64,
) -> Result<VerificationReport, WitnessError> {
    check_params(samples, tol)?;
    let mut acc = Residuals::default();
    // over-sample so that skipped poles still leave `samples` comparisons
    let mut taken = 0;
    for x in unit_circle_samples(samples * 2 + 8) {
        if taken == samples {
            break;
        }
        let (Some(a), Some(b)) = (f.eval_complex(x), f.eval_complex(-x)) else {
            continue;
        };
        match target {
            Target::Even => acc.push(a, b),
            Target::Odd => acc.push(a, -b),
        }
        taken += 1;
    }
    Ok(acc.finish(tol))
}

/// Canonical text `(P) / (Q)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<UniPoly> for RationalFunction {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl std::ops::Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RationalFunction::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let f = rf(&[0, 0, 1], &[0, 1]);
        assert_eq!(f.num(), &UniPoly::z());
        assert_eq!(f.den(), &UniPoly::one());
        let f = rf(&[0, 2], &[-2, 2]);
        assert_eq!(f.num(), &UniPoly::z());
        assert_eq!(f.den(), &p(&[-1, 1]));
        assert_eq!(
            RationalFunction::new(UniPoly::z(), UniPoly::zero()),
            Err(RationalFnError::ZeroDenominator)
        );
        let zero = rf(&[], &[3, 1]);
        assert!(zero.is_zero());
        assert_eq!(zero.den(), &UniPoly::one());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let f = rf(&[6, 0, -2], &[4, 4]);
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn mobius_self_composition_is_identity() {
        let f = rf(&[0, 1], &[-1, 1]);
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff, RationalFunction::from_poly(UniPoly::z()));
        assert_eq!(ff.cyclic_class(2).unwrap(), CyclicClass::Class(1));
        assert_eq!(f.cyclic_class(2).unwrap(), CyclicClass::NotCyclic);
        assert_eq!(f.value_at_zero(), Some(rat(0)));
    }

    #[test]
    fn squared_mobius_composition() {
        let g = rf(&[0, 1], &[-1, 1]);
        let f = g.pow(2);
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg, RationalFunction::from_poly(p(&[0, 0, 1])));
        assert_eq!(fg.cyclic_class(2).unwrap(), CyclicClass::Class(0));
        assert_eq!(f.cyclic_class(2).unwrap(), CyclicClass::NotCyclic);
    }

    #[test]
    fn even_self_composition_with_nonzero_constant_term() {
        let f = rf(&[1, 1, 1], &[1, -1, 1]);
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff, rf(&[3, 0, 7, 0, 3], &[1, 0, 5, 0, 1]));
        assert_eq!(ff.cyclic_class(2).unwrap(), CyclicClass::Class(0));
        assert_eq!(f.cyclic_class(2).unwrap(), CyclicClass::NotCyclic);
        assert_eq!(f.value_at_zero(), Some(rat(1)));
        assert_eq!(ff.to_string(), "(3*z^4 + 7*z^2 + 3) / (z^4 + 5*z^2 + 1)");
    }

    #[test]
    fn cyclic_power_counterexample() {
        // (z/(z-1))^N ∘ z/(z-1) = z^N
        for n in [3u32, 5] {
            let g = rf(&[0, 1], &[-1, 1]);
            let f = g.pow(n);
            let fg = f.compose(&g).unwrap();
            assert_eq!(fg.as_polynomial(), Some(&UniPoly::z().pow(n)));
            assert_eq!(fg.cyclic_class(n as u64).unwrap(), CyclicClass::Class(0));
            assert_eq!(f.cyclic_class(n as u64).unwrap(), CyclicClass::NotCyclic);
            assert_eq!(g.cyclic_class(n as u64).unwrap(), CyclicClass::NotCyclic);
        }
    }

    #[test]
    fn class_with_cyclic_denominator() {
        assert_eq!(
            rf(&[0, 1], &[1]).cyclic_class(2).unwrap(),
            CyclicClass::Class(1)
        );
        // 1/z ∈ C_{N-1}
        assert_eq!(
            rf(&[1], &[0, 1]).cyclic_class(5).unwrap(),
            CyclicClass::Class(4)
        );
        // z^2/(z^3+1) mod 3: 2 - 0
        assert_eq!(
            rf(&[0, 0, 1], &[1, 0, 0, 1]).cyclic_class(3).unwrap(),
            CyclicClass::Class(2)
        );
        assert!(rf(&[1], &[1]).cyclic_class(1).is_err());
    }

    #[test]
    fn degenerate_composition() {
        let f = rf(&[1], &[-2, 1]);
        let g = RationalFunction::from_poly(p(&[2]));
        assert_eq!(f.compose(&g), Err(RationalFnError::DegenerateComposition));
    }

    #[test]
    fn agrees_with_polynomial_compose() {
        let a = p(&[1, -1, 0, 2]);
        let b = p(&[0, 3, 1]);
        let via_rf = RationalFunction::from_poly(a.clone())
            .compose(&RationalFunction::from_poly(b.clone()))
            .unwrap();
        assert_eq!(via_rf.as_polynomial(), Some(&a.compose(&b)));
    }

    #[test]
    fn cross_parity_route() {
        assert_eq!(
            cross_parity(&rf(&[3, 0, 7, 0, 3], &[1, 0, 5, 0, 1])),
            Some(Parity::Even)
        );
        assert_eq!(cross_parity(&rf(&[0, 1], &[1, 0, 1])), Some(Parity::Odd));
        assert_eq!(cross_parity(&rf(&[0, 1], &[-1, 1])), None);
    }

    #[test]
    fn numeric_parity_skips_poles() {
        let ff = rf(&[3, 0, 7, 0, 3], &[1, 0, 5, 0, 1]);
        let rep = numeric_parity_check(&ff, Target::Even, 64, 1e-9).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.samples, 64);
        let f = rf(&[0, 1], &[-1, 1]);
        assert!(
            !numeric_parity_check(&f, Target::Even, 64, 1e-9)
                .unwrap()
                .pass
        );
        // pole at every 4th root of unity in the sample grid is skipped
        let g = rf(&[1], &[-1, 0, 0, 0, 1]);
        assert!(g.eval_complex(Complex64::i()).is_none());
    }

    #[test]
    fn field_operations() {
        let f = rf(&[0, 1], &[-1, 1]);
        let g = rf(&[1], &[0, 1]);
        let sum = f.add(&g);
        // z/(z-1) + 1/z = (z^2 + z - 1)/(z^2 - z)
        assert_eq!(sum, rf(&[-1, 1, 1], &[0, -1, 1]));
        assert_eq!(sum.sub(&g), f);
        assert_eq!(f.div(&f).unwrap(), RationalFunction::one());
        assert_eq!(
            f.div(&RationalFunction::from_poly(UniPoly::zero())),
            Err(RationalFnError::ZeroDenominator)
        );
    }
}
