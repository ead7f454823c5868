//! Generators shared by the property suite and the acceptance harness.
#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use parity_lab::bipoly::BiPoly;
use parity_lab::cyclic::PrimeModulus;
use parity_lab::poly::{rat, rat_frac, Rational};
use parity_lab::ratfn::RationalFunction;
use parity_lab::UniPoly;

pub const CASES: u32 = 10_000;

pub fn config(seed: u64) -> Config {
    Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn small_rat(max: i64) -> impl Strategy<Value = Rational> {
    (-max..=max, 1i64..=6).prop_map(|(n, d)| rat_frac(n, d))
}

pub fn nonzero_rat(max: i64) -> impl Strategy<Value = Rational> {
    small_rat(max).prop_filter("nonzero", |r| *r != rat(0))
}

/// Dense polynomial of degree at most `deg` with integer coefficients.
pub fn poly(deg: usize, max: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-max..=max, 0..=deg + 1).prop_map(|c| UniPoly::from_coeffs(&c))
}

pub fn rational_poly(deg: usize, max: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(max), 0..=deg + 1)
        .prop_map(|c| UniPoly::from_terms(c.into_iter().enumerate().map(|(i, x)| (i as u32, x))))
}

/// Polynomial whose exponents all lie in `residue + step * i`.
pub fn poly_on_residue(
    residue: u32,
    step: u32,
    terms: usize,
    max: i64,
) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(max), 1..=terms).prop_map(move |c| {
        UniPoly::from_terms(
            c.into_iter()
                .enumerate()
                .map(|(i, x)| (residue + step * i as u32, x)),
        )
    })
}

/// Nonzero odd polynomial of degree at most 7.
pub fn odd_poly() -> impl Strategy<Value = UniPoly> {
    poly_on_residue(1, 2, 4, 9).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn even_poly() -> impl Strategy<Value = UniPoly> {
    poly_on_residue(0, 2, 5, 9)
}

pub fn bipoly(deg: u32, max: i64) -> impl Strategy<Value = BiPoly> {
    let monomials: Vec<(u32, u32)> = (0..=deg)
        .flat_map(|t| (0..=t).map(move |j| (t - j, j)))
        .collect();
    let n = monomials.len();
    prop::collection::vec(-max..=max, n).prop_map(move |c| {
        let terms: Vec<(u32, u32, i64)> = monomials
            .iter()
            .zip(c)
            .map(|(&(i, j), x)| (i, j, x))
            .collect();
        BiPoly::from_int_terms(&terms)
    })
}

pub fn rational_fn(deg: usize, max: i64) -> impl Strategy<Value = RationalFunction> {
    (
        poly(deg, max),
        poly(deg, max).prop_filter("nonzero", |q| !q.is_zero()),
    )
        .prop_map(|(p, q)| RationalFunction::new(p, q).unwrap())
}

pub fn prime() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|n| PrimeModulus::new(n).unwrap())
}

pub fn odd_prime() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![3u64, 5, 7]).prop_map(|n| PrimeModulus::new(n).unwrap())
}

pub fn shift(k: &Rational) -> UniPoly {
    UniPoly::constant(k.clone())
}

/// Inputs with every classification represented.
pub fn rpe_input() -> impl Strategy<Value = UniPoly> {
    prop_oneof![
        poly(6, 4),
        even_poly(),
        (odd_poly(), small_rat(9)).prop_map(|(s, k)| &s + &shift(&k)),
        (odd_poly(), nonzero_rat(9), small_rat(9))
            .prop_map(|(s, d, k)| &(&s + &shift(&d)).pow(2) + &shift(&k)),
    ]
}

pub fn unit_disk() -> impl Strategy<Value = Complex64> {
    (0.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}
