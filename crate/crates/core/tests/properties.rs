use std::num::NonZeroU32;

use proptest::prelude::*;

use parity_lab::bipoly::BiPoly;
use parity_lab::cyclic::{right_cyclic_classify, RightCyclicResult};
use parity_lab::parity::{
    classify_rpe, classify_rpo, power_parity_check, verify_witness_exact, verify_witness_numeric,
    PowerParity, RpeClassification, RpoClassification, Target,
};
use parity_lab::parse::{parse_bi, parse_rational, parse_uni};
use parity_lab::poly::{rat, rat_frac, Rational};
use parity_lab::ratfn::{cross_parity, numeric_parity_check, RationalFunction};
use parity_lab::{CyclicClass, Parity, UniPoly};

mod common;
use common::*;

proptest! {
    #![proptest_config(config(0x5eed_0001))]

    #[test]
    fn quad_odd_parameters_are_recovered(
        s in odd_poly(),
        d in nonzero_rat(9),
        k in small_rat(9),
    ) {
        let p = &(&s + &shift(&d)).pow(2) + &shift(&k);
        match classify_rpe(&p) {
            RpeClassification::QuadOddC(q) => {
                prop_assert_eq!(&q.d_squared, &(&d * &d));
                prop_assert_eq!(&q.k, &k);
                prop_assert_eq!(q.expand(), p.clone());
                let recovered = q.s().expect("rational d");
                let sign = if d > rat(0) { rat(1) } else { rat(-1) };
                prop_assert_eq!(recovered, s.scale(&sign));
            }
            other => prop_assert!(false, "{} classified as {}", p, other.tag()),
        }
        match classify_rpo(&p) {
            RpoClassification::QuadOddB(q) => prop_assert_eq!(&q.k, &k),
            other => prop_assert!(false, "{} rpo classified as {}", p, other.tag()),
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0002))]

    #[test]
    fn odd_plus_constant_and_even_cases(s in odd_poly(), k in small_rat(9), e in even_poly()) {
        let p = &s + &shift(&k);
        prop_assert_eq!(
            classify_rpe(&p),
            RpeClassification::OddPlusConstB { s: s.clone(), k: k.clone() }
        );
        prop_assert_eq!(classify_rpe(&e), RpeClassification::EvenA);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0003))]

    #[test]
    fn rpe_and_rpo_witnesses_verify(p in rpe_input()) {
        let rpe = classify_rpe(&p);
        if let Ok(w) = rpe.witness() {
            let report = verify_witness_numeric(&w, &p, Target::Even, 64, 1e-8).unwrap();
            prop_assert!(report.pass, "{} with {}: residual {}", p, w, report.residual);
            if let Some(ok) = verify_witness_exact(&w, &p, Target::Even) {
                prop_assert!(ok);
            }
        }
        let rpo = classify_rpo(&p);
        if let Ok(w) = rpo.witness() {
            let report = verify_witness_numeric(&w, &p, Target::Odd, 64, 1e-8).unwrap();
            prop_assert!(report.pass, "{} with {}: residual {}", p, w, report.residual);
            if let Some(ok) = verify_witness_exact(&w, &p, Target::Odd) {
                prop_assert!(ok);
            }
        }
    }

    #[test]
    fn classification_tag_survives_reflection(p in rpe_input()) {
        let q = p.reflect();
        prop_assert_eq!(classify_rpe(&p).tag(), classify_rpe(&q).tag());
        prop_assert_eq!(classify_rpo(&p).tag(), classify_rpo(&q).tag());
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0004))]

    #[test]
    fn even_odd_parts(p in rational_poly(9, 20)) {
        let parts = p.even_odd_parts();
        prop_assert_eq!(&parts.even + &parts.odd, p.clone());
        prop_assert_eq!(parts.even.reflect(), parts.even.clone());
        prop_assert_eq!(parts.odd.reflect(), -&parts.odd);
    }

    #[test]
    fn parity_class_matches_reflection(p in prop_oneof![poly(6, 3), even_poly(), odd_poly()]) {
        let class = p.cyclic_class(2).unwrap();
        let r = p.reflect();
        if p.is_zero() {
            prop_assert_eq!(class, CyclicClass::Zero);
        } else {
            prop_assert_eq!(class == CyclicClass::Class(0), r == p);
            prop_assert_eq!(class == CyclicClass::Class(1), r == -&p);
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0005))]

    #[test]
    fn composition_is_associative(p in poly(4, 3), q in poly(4, 3), r in poly(4, 3)) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0006))]

    #[test]
    fn class_is_additive_under_products(
        (m, j, k, p, q) in (prime(), 0u32..7, 0u32..7).prop_flat_map(|(m, j, k)| {
            let n = m.get() as u32;
            let (j, k) = (j % n, k % n);
            let nonzero = |p: &UniPoly| !p.is_zero();
            (
                Just(m),
                Just(j),
                Just(k),
                poly_on_residue(j, n, 3, 5).prop_filter("nonzero", nonzero),
                poly_on_residue(k, n, 3, 5).prop_filter("nonzero", nonzero),
            )
        }),
    ) {
        let n = m.get() as u32;
        let product = &p * &q;
        prop_assert_eq!(m.class_of(&p), CyclicClass::Class(j as u64));
        prop_assert_eq!(m.class_of(&q), CyclicClass::Class(k as u64));
        prop_assert_eq!(m.class_of(&product), CyclicClass::Class(((j + k) % n) as u64));
    }
}

fn abs_poly(p: &UniPoly) -> UniPoly {
    UniPoly::from_terms(p.terms().map(|(e, c)| (e, num_traits::Signed::abs(c))))
}

proptest! {
    #![proptest_config(config(0x5eed_0007))]

    #[test]
    fn numeric_composition_matches_nesting(
        p in poly(8, 10),
        q in poly(8, 10),
        z in unit_disk(),
    ) {
        let exact = p.compose(&q).eval_complex(z);
        let nested = p.eval_complex(q.eval_complex(z));
        // relative to the size of the summands, not the possibly cancelled sum
        let magnitude = abs_poly(&p).eval_complex(abs_poly(&q).eval_complex(z.norm().into()));
        let scale = 1f64.max(magnitude.norm());
        prop_assert!(
            (exact - nested).norm() <= 1e-9 * scale,
            "p = {}, q = {}, z = {}: {} vs {}", p, q, z, exact, nested
        );
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0008))]

    #[test]
    fn right_cyclic_iff_shift_is_cyclic(
        m in odd_prime(),
        p in prop_oneof![
            poly(6, 3),
            (0u32..7, small_rat(5), 1usize..4).prop_flat_map(|(r, c, t)| {
                poly_on_residue(r, 3, t, 5).prop_map(move |p| &p + &UniPoly::constant(c.clone()))
            }),
            (1u32..5, small_rat(5)).prop_flat_map(|(r, c)| {
                poly_on_residue(r, 5, 2, 5).prop_map(move |p| &p + &UniPoly::constant(c.clone()))
            }),
        ],
    ) {
        let shifted = &p - &UniPoly::constant(p.constant_term());
        let cyclic = m.class_of(&shifted) != CyclicClass::NotCyclic;
        match right_cyclic_classify(&p, m).unwrap() {
            RightCyclicResult::Yes { witness, .. } => {
                prop_assert!(cyclic);
                let f = witness.as_polynomial().unwrap();
                prop_assert_eq!(
                    &f,
                    &(&UniPoly::z() - &UniPoly::constant(p.constant_term())).pow(m.get() as u32)
                );
                prop_assert!(m.class_of(&f.compose(&p)).is_class_zero());
            }
            RightCyclicResult::No => prop_assert!(!cyclic),
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0009))]

    #[test]
    fn power_parity_forces_parity(f in poly(6, 2), n in 1u32..=4) {
        let n = NonZeroU32::new(n).unwrap();
        match power_parity_check(&f, n) {
            PowerParity::PowerEven(Parity::Even) => prop_assert!(f.is_even()),
            PowerParity::PowerEven(Parity::Odd) => prop_assert!(f.is_odd()),
            PowerParity::PowerNotEven => prop_assert!(!f.pow(n.get()).is_even()),
            PowerParity::Violation => prop_assert!(false, "f = {}, n = {}", f, n),
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_000a))]

    #[test]
    fn uni_text_round_trip(p in rational_poly(12, 50)) {
        prop_assert_eq!(parse_uni(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn bi_text_round_trip(p in bipoly(4, 7)) {
        prop_assert_eq!(parse_bi(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rational_text_round_trip(f in rational_fn(4, 6)) {
        prop_assert_eq!(parse_rational(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_000b))]

    #[test]
    fn rational_canonical_form_is_idempotent(f in rational_fn(4, 6)) {
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn rational_compose_agrees_with_polynomials(p in poly(4, 4), q in poly(4, 4)) {
        let lifted = RationalFunction::from_poly(p.clone())
            .compose(&RationalFunction::from_poly(q.clone()))
            .unwrap();
        prop_assert_eq!(lifted, RationalFunction::from_poly(p.compose(&q)));
    }

    #[test]
    fn cross_parity_agrees_with_sampling(f in prop_oneof![
        rational_fn(3, 3),
        (even_poly(), even_poly().prop_filter("nonzero", |q| !q.is_zero()))
            .prop_map(|(p, q)| RationalFunction::new(p, q).unwrap()),
        (odd_poly(), even_poly().prop_filter("nonzero", |q| !q.is_zero()))
            .prop_map(|(p, q)| RationalFunction::new(p, q).unwrap()),
    ]) {
        let exact = cross_parity(&f);
        let even = numeric_parity_check(&f, Target::Even, 64, 1e-9).unwrap();
        let odd = numeric_parity_check(&f, Target::Odd, 64, 1e-9).unwrap();
        prop_assert_eq!(even.samples, 64);
        if f.is_zero() {
            prop_assert!(even.pass && odd.pass);
        } else {
            prop_assert_eq!(even.pass, exact == Some(Parity::Even), "{}", f);
            prop_assert_eq!(odd.pass, exact == Some(Parity::Odd), "{}", f);
        }
    }
}

/// Lines `(1, j/3)` through the origin, pairwise distinct.
fn probe_lines() -> Vec<(Rational, Rational)> {
    (-25..25).map(|j| (rat(1), rat_frac(j, 3))).collect()
}

proptest! {
    #![proptest_config(config(0x5eed_000c))]

    #[test]
    fn odd_components_vanish_iff_all_lines_even(p in bipoly(4, 2)) {
        let no_odd = p.odd_homogeneous_components().is_empty();
        let lines = probe_lines();
        let all_even = lines.iter().all(|(a, b)| p.restrict_line(a, b).is_even());
        if no_odd {
            prop_assert!(all_even, "{}", p);
        }
        // a nonzero form of degree <= 4 vanishes on at most 4 of the 50 lines
        prop_assert_eq!(no_odd, all_even, "{}", p);
    }

    #[test]
    fn diagonal_restriction_of_a_form(k in 0u32..6, coeffs in prop::collection::vec(-5i64..=5, 6)) {
        let terms: Vec<(u32, u32, i64)> =
            (0..=k).map(|j| (k - j, j, coeffs[j as usize])).collect();
        let p = BiPoly::from_int_terms(&terms);
        let sum: i64 = terms.iter().map(|t| t.2).sum();
        prop_assert_eq!(
            p.restrict_line(&rat(1), &rat(1)),
            UniPoly::monomial(rat(sum), k)
        );
    }
}
