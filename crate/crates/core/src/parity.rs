//! Deciding whether some non-constant entire `f` makes `f∘p` even (or odd),
//! and building that `f` explicitly.
//!
//! Writing `p = E + O` with `E` even and `O` odd, `p` admits such an `f` for
//! evenness exactly when `O = 0`, when `E` is constant, or when
//! `p = (s + d)^2 + k` with `s` odd and `d != 0`. The last shape is detected
//! without radicals: it forces `E = s^2 + d^2 + k` and `O = 2ds`, hence
//! `E - O^2 / (4d^2)` is the constant `d^2 + k`, and the multiplier
//! `1 / (4d^2)` is pinned by the leading coefficients of `E` and `O`.

use std::f64::consts::PI;
use std::fmt;
use std::num::NonZeroU32;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::WitnessError;
use crate::numeric::{check_params, unit_circle_samples, Residuals, VerificationReport};
use crate::poly::{rat, rational_to_f64, serde_rational, Parity, Rational, UniPoly};

/// `p = (s + d)^2 + k` with `s` odd and nonzero, `d^2 != 0`.
///
/// `d` may be irrational or imaginary, so the odd part `O = 2ds` is stored
/// instead of `s`; [`QuadOdd::s`] recovers `s` whenever `d` is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadOdd {
    pub odd_part: UniPoly,
    #[serde(with = "serde_rational")]
    pub d_squared: Rational,
    #[serde(with = "serde_rational")]
    pub k: Rational,
}

impl QuadOdd {
    /// Expands `(s + d)^2 + k` back into a polynomial, using
    /// `s^2 = O^2 / (4 d^2)` and `2ds = O`.
    pub fn expand(&self) -> UniPoly {
        let lambda = (rat(4) * &self.d_squared).recip();
        let even =
            &self.odd_part.pow(2).scale(&lambda) + &UniPoly::constant(&self.d_squared + &self.k);
        &even + &self.odd_part
    }

    /// The positive rational square root of `d^2`, if there is one.
    pub fn rational_d(&self) -> Option<Rational> {
        rational_sqrt(&self.d_squared)
    }

    /// `s = O / (2d)` when `d` is rational (taking `d > 0`).
    pub fn s(&self) -> Option<UniPoly> {
        self.rational_d()
            .map(|d| self.odd_part.scale(&(rat(2) * d).recip()))
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Detects the `(s + d)^2 + k` shape from the even/odd split.
fn detect_quad_odd(even: &UniPoly, odd: &UniPoly) -> Option<QuadOdd> {
    let (de, dodd) = (even.degree()?, odd.degree()?);
    if de == 0 || de != 2 * dodd {
        return None;
    }
    let lambda = even.leading_coeff()? / odd.leading_coeff()?.pow(2);
    let rest = even - &odd.pow(2).scale(&lambda);
    if !rest.is_constant() {
        return None;
    }
    let d_squared = (rat(4) * lambda).recip();
    let k = rest.constant_term() - &d_squared;
    Some(QuadOdd {
        odd_part: odd.clone(),
        d_squared,
        k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant")]
pub enum RpeClassification {
    /// `p` is even.
    EvenA,
    /// `p = s + k` with `s` odd and nonzero.
    OddPlusConstB {
        s: UniPoly,
        #[serde(with = "serde_rational")]
        k: Rational,
    },
    /// `p = (s + d)^2 + k`.
    QuadOddC(QuadOdd),
    NotRpe,
}

impl RpeClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            RpeClassification::EvenA => "A",
            RpeClassification::OddPlusConstB { .. } => "B",
            RpeClassification::QuadOddC(_) => "C",
            RpeClassification::NotRpe => "none",
        }
    }

    pub fn witness(&self) -> Result<Witness, WitnessError> {
        match self {
            RpeClassification::EvenA => Ok(Witness::Identity),
            RpeClassification::OddPlusConstB { k, .. } => {
                Ok(Witness::ShiftedSquare { k: k.clone() })
            }
            RpeClassification::QuadOddC(q) => Ok(Witness::CosSqrt {
                kind: CosKind::EvenMaker,
                d_squared: q.d_squared.clone(),
                k: q.k.clone(),
            }),
            RpeClassification::NotRpe => Err(WitnessError::NoWitness),
        }
    }
}

/// Classification for odd compositions `f∘p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant")]
pub enum RpoClassification {
    /// `p` is odd.
    OddA,
    /// `p = s + k` with `s` odd (possibly zero) and `k != 0`; `f = z - k`
    /// gives `f∘p = s`.
    OddPlusConst {
        s: UniPoly,
        #[serde(with = "serde_rational")]
        k: Rational,
    },
    /// `p = (s + d)^2 + k`.
    QuadOddB(QuadOdd),
    NotRpo,
}

impl RpoClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            RpoClassification::OddA => "A",
            RpoClassification::OddPlusConst { .. } => "A'",
            RpoClassification::QuadOddB(_) => "B",
            RpoClassification::NotRpo => "none",
        }
    }

    pub fn witness(&self) -> Result<Witness, WitnessError> {
        match self {
            RpoClassification::OddA => Ok(Witness::Identity),
            RpoClassification::OddPlusConst { k, .. } => Ok(Witness::Shift { k: k.clone() }),
            RpoClassification::QuadOddB(q) => Ok(Witness::CosSqrt {
                kind: CosKind::OddMaker,
                d_squared: q.d_squared.clone(),
                k: q.k.clone(),
            }),
            RpoClassification::NotRpo => Err(WitnessError::NoWitness),
        }
    }
}

/// Priority A, then B, then C. Constants land in A.
pub fn classify_rpe(p: &UniPoly) -> RpeClassification {
    let parts = p.even_odd_parts();
    if parts.odd.is_zero() {
        return RpeClassification::EvenA;
    }
    if parts.even.is_constant() {
        return RpeClassification::OddPlusConstB {
            s: parts.odd,
            k: parts.even.constant_term(),
        };
    }
    match detect_quad_odd(&parts.even, &parts.odd) {
        Some(q) => RpeClassification::QuadOddC(q),
        None => RpeClassification::NotRpe,
    }
}

pub fn classify_rpo(p: &UniPoly) -> RpoClassification {
    let parts = p.even_odd_parts();
    if parts.even.is_zero() {
        return RpoClassification::OddA;
    }
    if parts.even.is_constant() {
        return RpoClassification::OddPlusConst {
            s: parts.odd,
            k: parts.even.constant_term(),
        };
    }
    match detect_quad_odd(&parts.even, &parts.odd) {
        Some(q) => RpoClassification::QuadOddB(q),
        None => RpoClassification::NotRpo,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CosKind {
    /// `cos(2π/d · √(z − k))`
    EvenMaker,
    /// `cos(π/(2d) · √(z − k))`
    OddMaker,
}

/// An explicit outer function `f` realizing a symmetry of `f∘p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `f(z) = z`
    Identity,
    /// `f(z) = z - k`
    Shift {
        #[serde(with = "serde_rational")]
        k: Rational,
    },
    /// `f(z) = (z - k)^2`
    ShiftedSquare {
        #[serde(with = "serde_rational")]
        k: Rational,
    },
    /// `f(z) = cos(α √(z - k))`, entire because only even powers of the
    /// square root survive.
    CosSqrt {
        kind: CosKind,
        #[serde(with = "serde_rational")]
        d_squared: Rational,
        #[serde(with = "serde_rational")]
        k: Rational,
    },
    /// `f(z) = (z - c)^n`
    PowerShift {
        #[serde(with = "serde_rational")]
        c: Rational,
        n: u64,
    },
}

impl Witness {
    /// The witness as a polynomial, for the variants that are one.
    pub fn as_polynomial(&self) -> Option<UniPoly> {
        let shifted = |k: &Rational| &UniPoly::z() - &UniPoly::constant(k.clone());
        match self {
            Witness::Identity => Some(UniPoly::z()),
            Witness::Shift { k } => Some(shifted(k)),
            Witness::ShiftedSquare { k } => Some(shifted(k).pow(2)),
            Witness::PowerShift { c, n } => Some(shifted(c).pow(u32::try_from(*n).ok()?)),
            Witness::CosSqrt { .. } => None,
        }
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        match self {
            Witness::Identity => u,
            Witness::Shift { k } => u - rational_to_f64(k),
            Witness::ShiftedSquare { k } => (u - rational_to_f64(k)).powu(2),
            Witness::PowerShift { c, n } => (u - rational_to_f64(c)).powu(*n as u32),
            Witness::CosSqrt { kind, d_squared, k } => {
                let d = Complex64::new(rational_to_f64(d_squared), 0.0).sqrt();
                let alpha = match kind {
                    CosKind::EvenMaker => 2.0 * PI / d,
                    CosKind::OddMaker => PI / (2.0 * d),
                };
                (alpha * (u - rational_to_f64(k)).sqrt()).cos()
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shifted = |k: &Rational| &UniPoly::z() - &UniPoly::constant(k.clone());
        match self {
            Witness::Identity => write!(f, "z"),
            Witness::Shift { k } => write!(f, "{}", shifted(k)),
            Witness::ShiftedSquare { k } => write!(f, "({})^2", shifted(k)),
            Witness::PowerShift { c, n } => write!(f, "({})^{}", shifted(c), n),
            Witness::CosSqrt { kind, d_squared, k } => {
                let d = match rational_sqrt(d_squared) {
                    Some(d) if d.is_one() => None,
                    Some(d) => Some(d.to_string()),
                    None => Some(format!("sqrt({})", d_squared)),
                };
                let alpha = match (kind, d) {
                    (CosKind::EvenMaker, None) => "2*pi".to_string(),
                    (CosKind::EvenMaker, Some(d)) => format!("2*pi/({})", d),
                    (CosKind::OddMaker, None) => "pi/2".to_string(),
                    (CosKind::OddMaker, Some(d)) => format!("pi/(2*{})", d),
                };
                write!(f, "cos({}*sqrt({}))", alpha, shifted(k))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Even,
    Odd,
}

/// Samples `F(p(x))` against `±F(p(-x))` on the unit circle.
pub fn verify_witness_numeric(
    w: &Witness,
    p: &UniPoly,
    target: Target,
    samples: usize,
    tol: f64,
) -> Result<VerificationReport, WitnessError> {
    check_params(samples, tol)?;
    let mut acc = Residuals::default();
    for x in unit_circle_samples(samples) {
        let a = w.eval(p.eval_complex(x));
        let b = w.eval(p.eval_complex(-x));
        match target {
            Target::Even => acc.push(a, b),
            Target::Odd => acc.push(a, -b),
        }
    }
    Ok(acc.finish(tol))
}

/// Exact check for polynomial witnesses; `None` for transcendental ones.
pub fn verify_witness_exact(w: &Witness, p: &UniPoly, target: Target) -> Option<bool> {
    let composed = w.as_polynomial()?.compose(p);
    Some(match target {
        Target::Even => composed.is_even(),
        Target::Odd => composed.is_odd(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "f_parity", rename_all = "snake_case")]
pub enum PowerParity {
    /// `f^n` is even, and `f` itself has the reported parity.
    PowerEven(Parity),
    PowerNotEven,
    /// `f^n` is even but `f` is neither even nor odd. Cannot happen for a
    /// correct implementation.
    Violation,
}

pub fn power_parity_check(f: &UniPoly, n: NonZeroU32) -> PowerParity {
    if !f.pow(n.get()).is_even() {
        return PowerParity::PowerNotEven;
    }
    match f.parity() {
        Some(par) => PowerParity::PowerEven(par),
        None => PowerParity::Violation,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EoDemoReport {
    /// `p(f(x))` against `p(f(-x))`, `p = z^4 - 2z^2`, `f = cos + sin`.
    pub evenness: VerificationReport,
    /// `p(f(x))` against `-4cos^4 x + 4cos^2 x - 1`.
    pub closed_form: VerificationReport,
    /// `q(g(x))` against `-q(g(-x))`, `q = z^2 + 2z`, `g = cos + sin - 1`.
    pub shifted_oddness: VerificationReport,
    pub pass: bool,
}

/// The quartic `z^4 - 2z^2` made even by composing with `cos + sin`.
pub fn eo_quartic() -> UniPoly {
    UniPoly::from_coeffs(&[0, 0, -2, 0, 1])
}

pub fn theorem_eo_demo(samples: usize, tol: f64) -> Result<EoDemoReport, WitnessError> {
    check_params(samples, tol)?;
    let p = eo_quartic();
    let q = UniPoly::from_coeffs(&[0, 2, 1]);
    let f = |x: Complex64| x.cos() + x.sin();
    let g = |x: Complex64| x.cos() + x.sin() - 1.0;
    let (mut even, mut closed, mut odd) = (
        Residuals::default(),
        Residuals::default(),
        Residuals::default(),
    );
    for x in unit_circle_samples(samples) {
        let pf = p.eval_complex(f(x));
        even.push(pf, p.eval_complex(f(-x)));
        let c2 = x.cos().powu(2);
        closed.push(pf, -4.0 * c2 * c2 + 4.0 * c2 - 1.0);
        odd.push(q.eval_complex(g(x)), -q.eval_complex(g(-x)));
    }
    let (evenness, closed_form, shifted_oddness) =
        (even.finish(tol), closed.finish(tol), odd.finish(tol));
    let pass = evenness.pass && closed_form.pass && shifted_oddness.pass;
    Ok(EoDemoReport {
        evenness,
        closed_form,
        shifted_oddness,
        pass,
    })
}
