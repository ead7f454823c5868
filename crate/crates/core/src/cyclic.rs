//! Cyclic classes mod a prime `N`.
//!
//! `f ∈ C_k` means `f(ωz) = ω^k f(z)` for a primitive `N`-th root of unity
//! `ω`. For polynomials this is the statement that every exponent is `≡ k`
//! mod `N`, so every exact test here is an exponent-residue scan and `ω`
//! only shows up in the floating-point cross-check.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{CyclicError, WitnessError};
use crate::numeric::{check_params, unit_circle_samples, Residuals, VerificationReport};
use crate::oracle::TheoremStatus;
use crate::parity::Witness;
use crate::poly::{CyclicClass, UniPoly};

/// A prime modulus, checked by trial division at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(n: u64) -> Result<Self, CyclicError> {
        if is_prime(n) {
            Ok(Self(n))
        } else {
            Err(CyclicError::NotPrime(n))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `exp(2πi/N)`
    pub fn omega(self) -> Complex64 {
        Complex64::from_polar(1.0, TAU / self.0 as f64)
    }

    pub fn class_of(self, p: &UniPoly) -> CyclicClass {
        p.cyclic_class(self.0).expect("prime modulus is at least 2")
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RightCyclicResult {
    No,
    /// `p - p(0) ∈ C_k`, and `f = (z - p(0))^N` makes `f∘p ∈ C_0`.
    Yes {
        k: u64,
        witness: Witness,
    },
}

/// Decides whether some non-constant entire `f` puts `f∘p` in a cyclic
/// class, for `N >= 3`. The witness is re-checked symbolically before it is
/// returned.
pub fn right_cyclic_classify(
    p: &UniPoly,
    m: PrimeModulus,
) -> Result<RightCyclicResult, CyclicError> {
    if m.get() == 2 {
        return Err(CyclicError::UseParityModule);
    }
    let c = p.constant_term();
    let shifted = p - &UniPoly::constant(c.clone());
    let k = match m.class_of(&shifted) {
        CyclicClass::NotCyclic => return Ok(RightCyclicResult::No),
        CyclicClass::Zero => 0,
        CyclicClass::Class(k) => k,
    };
    let witness = Witness::PowerShift { c, n: m.get() };
    let f = witness.as_polynomial().ok_or_else(|| {
        CyclicError::WitnessCheckFailed(format!("modulus {} too large to expand", m))
    })?;
    let composed = f.compose(p);
    if !m.class_of(&composed).is_class_zero() {
        return Err(CyclicError::WitnessCheckFailed(format!(
            "({})∘p = {} is not in C_0",
            witness, composed
        )));
    }
    Ok(RightCyclicResult::Yes { k, witness })
}

pub fn composition_class(p: &UniPoly, q: &UniPoly, m: PrimeModulus) -> CyclicClass {
    m.class_of(&p.compose(q))
}

/// `p` nonconstant, `q(0) = 0`, `q ∉ C` imply `p∘q ∉ C`.
pub fn proposition_c_assert(p: &UniPoly, q: &UniPoly, m: PrimeModulus) -> TheoremStatus {
    if p.is_constant() {
        return TheoremStatus::HypothesesUnmet("p is constant".into());
    }
    if !q.constant_term().is_zero() {
        return TheoremStatus::HypothesesUnmet("q(0) != 0".into());
    }
    if m.class_of(q).is_cyclic() {
        return TheoremStatus::HypothesesUnmet("q is cyclic".into());
    }
    let class = composition_class(p, q, m);
    TheoremStatus::check(!class.is_cyclic(), || {
        format!("p = {}, q = {}, N = {}: p∘q in {}", p, q, m, class)
    })
}

/// Conclusions of the decomposition for compositions with `q(0) = 0`, checked
/// on one instance.
pub fn theorem_f_a_assert(p: &UniPoly, q: &UniPoly, m: PrimeModulus) -> TheoremStatus {
    if !q.constant_term().is_zero() {
        return TheoremStatus::HypothesesUnmet("q(0) != 0".into());
    }
    let pq = composition_class(p, q, m);
    if !pq.is_cyclic() {
        return TheoremStatus::HypothesesUnmet("p∘q not cyclic".into());
    }
    let (pc, qc) = (m.class_of(p), m.class_of(q));
    let ctx = || format!("p = {}, q = {}, N = {}, p∘q in {}", p, q, m, pq);
    let mut parts = vec![TheoremStatus::check(
        pc.is_cyclic() || qc.is_cyclic(),
        || format!("{}: neither p nor q cyclic", ctx()),
    )];
    if !p.is_constant() && !qc.is_class_zero() {
        parts.push(TheoremStatus::check(
            pc.is_cyclic() && qc.is_cyclic(),
            || format!("{}: p in {}, q in {}", ctx(), pc, qc),
        ));
    }
    if pq.is_class_zero() {
        parts.push(TheoremStatus::check(
            pc.is_class_zero() || qc.is_class_zero(),
            || format!("{}: neither p nor q in C_0", ctx()),
        ));
    }
    TheoremStatus::merge(parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftDecomposition {
    /// `q - q(0)`
    pub r: UniPoly,
    /// `p(z + q(0))`
    pub s: UniPoly,
    pub r_class: CyclicClass,
    pub s_class: CyclicClass,
    pub composition_class: CyclicClass,
    /// Whether `q ∉ C_0`, making the cyclicity claim non-vacuous.
    pub claim_applies: bool,
    pub conclusion_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum ShiftOutcome {
    HypothesesUnmet(String),
    Decomposed(ShiftDecomposition),
}

/// Splits `p∘q` with `q(0) != 0` as `s∘r`, `r = q - q(0)`,
/// `s = p(z + q(0))`, and checks that both pieces are cyclic when `q ∉ C_0`.
pub fn shift_decompose(p: &UniPoly, q: &UniPoly, m: PrimeModulus) -> ShiftOutcome {
    let c = q.constant_term();
    if c.is_zero() {
        return ShiftOutcome::HypothesesUnmet("q(0) = 0".into());
    }
    if p.is_constant() {
        return ShiftOutcome::HypothesesUnmet("p is constant".into());
    }
    let composition_class = composition_class(p, q, m);
    if !composition_class.is_cyclic() {
        return ShiftOutcome::HypothesesUnmet("p∘q not cyclic".into());
    }
    let shift = UniPoly::constant(c);
    let r = q - &shift;
    let s = p.compose(&(&UniPoly::z() + &shift));
    let (r_class, s_class) = (m.class_of(&r), m.class_of(&s));
    let claim_applies = !m.class_of(q).is_class_zero();
    let conclusion_ok = !claim_applies || (r_class.is_cyclic() && s_class.is_cyclic());
    ShiftOutcome::Decomposed(ShiftDecomposition {
        r,
        s,
        r_class,
        s_class,
        composition_class,
        claim_applies,
        conclusion_ok,
    })
}

/// `p∘p ∈ C` with `p(0) = 0` implies `p ∈ C`; `p∘p ∈ C_0` implies `p ∈ C_0`.
pub fn self_composition_assert(p: &UniPoly, m: PrimeModulus) -> TheoremStatus {
    let pp = composition_class(p, p, m);
    let pc = m.class_of(p);
    let ctx = || format!("p = {}, N = {}, p∘p in {}, p in {}", p, m, pp, pc);
    let part_a = if !p.constant_term().is_zero() {
        TheoremStatus::HypothesesUnmet("p(0) != 0".into())
    } else if !pp.is_cyclic() {
        TheoremStatus::HypothesesUnmet("p∘p not cyclic".into())
    } else {
        TheoremStatus::check(pc.is_cyclic(), ctx)
    };
    let part_b = if pp.is_class_zero() {
        TheoremStatus::check(pc.is_class_zero(), ctx)
    } else {
        TheoremStatus::HypothesesUnmet("p∘p not in C_0".into())
    };
    TheoremStatus::merge(vec![part_a, part_b])
}

/// Samples `|p(ωx) - ω^k p(x)|` on the unit circle.
pub fn numeric_omega_check(
    p: &UniPoly,
    k: u64,
    m: PrimeModulus,
    samples: usize,
    tol: f64,
) -> Result<VerificationReport, WitnessError> {
    check_params(samples, tol)?;
    let omega = m.omega();
    let omega_k = omega.powu((k % m.get()) as u32);
    let mut acc = Residuals::default();
    for x in unit_circle_samples(samples) {
        acc.push(p.eval_complex(omega * x), omega_k * p.eval_complex(x));
    }
    Ok(acc.finish(tol))
}

/// Triples `(m, n, r)` in `1..=3N` with `n ≡ 0` and `r ≢ m` (mod `N`) for
/// which `m(n-1) + r ≡ 0`. Always empty.
pub fn lemma_mod_violations(m: PrimeModulus) -> Vec<(u64, u64, u64)> {
    let n_mod = m.get();
    let bound = 3 * n_mod;
    let mut out = Vec::new();
    for a in 1..=bound {
        for n in (n_mod..=bound).step_by(n_mod as usize) {
            for r in 1..=bound {
                if r % n_mod == a % n_mod {
                    continue;
                }
                if (a * (n - 1) + r) % n_mod == 0 {
                    out.push((a, n, r));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs)
    }

    fn m(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert_eq!(PrimeModulus::new(9), Err(CyclicError::NotPrime(9)));
        assert_eq!(PrimeModulus::new(1), Err(CyclicError::NotPrime(1)));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn right_cyclic_examples() {
        let cube = p(&[1, 1]).pow(3);
        assert_eq!(
            right_cyclic_classify(&cube, m(3)).unwrap(),
            RightCyclicResult::No
        );

        let q = p(&[5, 2, 0, 0, 1]);
        let RightCyclicResult::Yes { k, witness } = right_cyclic_classify(&q, m(3)).unwrap() else {
            panic!();
        };
        assert_eq!(k, 1);
        assert_eq!(witness.to_string(), "(z - 5)^3");
        // (p - 5)^3 = (z^4 + 2z)^3 has exponents 12, 9, 6, 3
        let expanded = p(&[0, 2, 0, 0, 1]).pow(3);
        let exps: Vec<u32> = expanded.terms().map(|(e, _)| e).collect();
        assert_eq!(exps, vec![3, 6, 9, 12]);
        assert_eq!(witness.as_polynomial().unwrap().compose(&q), expanded);

        let q = p(&[0, 0, 0, 1, 0, 0, 1]);
        assert!(matches!(
            right_cyclic_classify(&q, m(3)).unwrap(),
            RightCyclicResult::Yes { k: 0, .. }
        ));
        assert!(matches!(
            right_cyclic_classify(&p(&[4]), m(5)).unwrap(),
            RightCyclicResult::Yes { k: 0, .. }
        ));
        assert_eq!(
            right_cyclic_classify(&q, m(2)),
            Err(CyclicError::UseParityModule)
        );
    }

    #[test]
    fn composition_class_examples() {
        let cube = p(&[1, 1]).pow(3);
        assert_eq!(
            composition_class(&cube, &p(&[-1, 1]), m(3)),
            CyclicClass::Class(0)
        );
        assert_eq!(
            composition_class(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1]), m(2)),
            CyclicClass::Class(0)
        );
        // (z^2 + z)^2 = z^4 + 2z^3 + z^2
        assert_eq!(p(&[0, 1, 1]).pow(2), p(&[0, 0, 1, 2, 1]));
        assert_eq!(
            composition_class(&p(&[0, 0, 1]), &p(&[0, 1, 1]), m(5)),
            CyclicClass::NotCyclic
        );
    }

    #[test]
    fn proposition_c_examples() {
        let q = p(&[0, 1, 1]);
        assert_eq!(
            proposition_c_assert(&p(&[1, 0, 1]), &q, m(3)),
            TheoremStatus::Holds
        );
        let cube = p(&[1, 1]).pow(3);
        assert_eq!(
            proposition_c_assert(&cube, &p(&[-1, 1]), m(3)),
            TheoremStatus::HypothesesUnmet("q(0) != 0".into())
        );
        assert_eq!(
            proposition_c_assert(&p(&[5]), &q, m(3)),
            TheoremStatus::HypothesesUnmet("p is constant".into())
        );
        assert!(matches!(
            proposition_c_assert(&cube, &p(&[0, 0, 1]), m(3)),
            TheoremStatus::HypothesesUnmet(_)
        ));
    }

    #[test]
    fn shift_decompose_examples() {
        let ShiftOutcome::Decomposed(d) = shift_decompose(&p(&[1, -2, 1]), &p(&[1, 0, 0, 1]), m(2))
        else {
            panic!();
        };
        assert_eq!(d.r, p(&[0, 0, 0, 1]));
        assert_eq!(d.s, p(&[0, 0, 1]));
        assert_eq!(
            (d.r_class, d.s_class),
            (CyclicClass::Class(1), CyclicClass::Class(0))
        );
        assert_eq!(d.composition_class, CyclicClass::Class(0));
        assert!(d.claim_applies && d.conclusion_ok);

        let ShiftOutcome::Decomposed(d) = shift_decompose(&p(&[1, 1]).pow(3), &p(&[-1, 1]), m(3))
        else {
            panic!();
        };
        assert_eq!(d.r, UniPoly::z());
        assert_eq!(d.s, p(&[0, 0, 0, 1]));
        assert_eq!(
            (d.r_class, d.s_class),
            (CyclicClass::Class(1), CyclicClass::Class(0))
        );
        assert!(d.conclusion_ok);

        assert_eq!(
            shift_decompose(&UniPoly::z(), &p(&[1, 1]), m(2)),
            ShiftOutcome::HypothesesUnmet("p∘q not cyclic".into())
        );
        assert_eq!(
            shift_decompose(&UniPoly::z(), &p(&[0, 1]), m(2)),
            ShiftOutcome::HypothesesUnmet("q(0) = 0".into())
        );
    }

    #[test]
    fn self_composition_examples() {
        assert!(matches!(
            self_composition_assert(&p(&[1, -1]), m(2)),
            TheoremStatus::HypothesesUnmet(_)
        ));
        assert_eq!(p(&[1, -1]).compose(&p(&[1, -1])), UniPoly::z());
        // z^4 ∘ z^4 = z^16, 16 ≡ 1 and 4 ≡ 1 mod 3
        assert_eq!(
            composition_class(&p(&[0, 0, 0, 0, 1]), &p(&[0, 0, 0, 0, 1]), m(3)),
            CyclicClass::Class(1)
        );
        assert_eq!(
            self_composition_assert(&p(&[0, 0, 0, 0, 1]), m(3)),
            TheoremStatus::Holds
        );
        assert_eq!(
            self_composition_assert(&p(&[0, 0, 1]), m(2)),
            TheoremStatus::Holds
        );
    }

    #[test]
    fn theorem_f_a_on_examples() {
        assert_eq!(
            theorem_f_a_assert(&p(&[0, 0, 1]), &p(&[0, 1, 0, 1]), m(2)),
            TheoremStatus::Holds
        );
        assert!(matches!(
            theorem_f_a_assert(&p(&[0, 0, 1]), &p(&[0, 1, 1]), m(2)),
            TheoremStatus::HypothesesUnmet(_)
        ));
    }

    #[test]
    fn omega_check() {
        let q = p(&[0, 2, 0, 0, 1]);
        assert!(numeric_omega_check(&q, 1, m(3), 64, 1e-9).unwrap().pass);
        for k in 0..3 {
            assert!(
                !numeric_omega_check(&p(&[0, 1, 1]), k, m(3), 64, 1e-9)
                    .unwrap()
                    .pass
            );
            assert!(
                numeric_omega_check(&UniPoly::zero(), k, m(3), 64, 1e-9)
                    .unwrap()
                    .pass
            );
        }
    }

    #[test]
    fn lemma_mod_integer_property() {
        for n in [2, 3, 5, 7, 11, 13] {
            assert!(lemma_mod_violations(m(n)).is_empty());
        }
    }
}
