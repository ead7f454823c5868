//! Bounded enumeration of small polynomial, rational-function and bivariate
//! families, exhaustive theorem sweeps, and counterexample searches.
//!
//! Families are enumerated by random access: index `i` maps to one instance,
//! so any index range can be processed independently. Workers run on a rayon
//! pool and their partial results are merged in index order, which keeps
//! reports identical across parallelism settings.

use std::collections::HashSet;
use std::fmt;
use std::num::NonZeroU32;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::{homogeneous_pqr_assert, theorem_pqr_assert, BiPoly};
use crate::cyclic::{
    lemma_mod_violations, proposition_c_assert, self_composition_assert, shift_decompose,
    theorem_f_a_assert, PrimeModulus, ShiftOutcome,
};
use crate::error::ExplorerError;
use crate::oracle::TheoremStatus;
use crate::parity::{power_parity_check, PowerParity};
use crate::poly::{rat, CyclicClass, Rational, UniPoly};
use crate::ratfn::RationalFunction;

pub const DEFAULT_CEILING: u64 = 100_000_000;
pub const CEILING_ENV: &str = "PARITY_LAB_CEILING";
const LEMMA_MOD_DEFAULT: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Reads the ceiling override from `PARITY_LAB_CEILING`, falling back to
/// [`DEFAULT_CEILING`]. Accepts integers and forms like `1e6`.
pub fn ceiling_from_env() -> Result<u64, String> {
    match std::env::var(CEILING_ENV) {
        Err(_) => Ok(DEFAULT_CEILING),
        Ok(raw) => parse_ceiling(&raw).ok_or_else(|| {
            format!(
                "{} must be a non-negative integer, got {:?}",
                CEILING_ENV, raw
            )
        }),
    }
}

pub fn parse_ceiling(raw: &str) -> Option<u64> {
    let raw = raw.trim();
    raw.parse::<u64>().ok().or_else(|| {
        let v: f64 = raw.parse().ok()?;
        (v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64).then_some(v as u64)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Polynomial,
    RationalFunction,
    Bivariate,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Polynomial => "polynomial",
            Family::RationalFunction => "rational-function",
            Family::Bivariate => "bivariate",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Degree bound for univariate families (numerator and denominator
    /// separately for rational functions).
    pub max_degree: u32,
    pub coefficients: Vec<Rational>,
    pub modulus: Option<PrimeModulus>,
    pub family: Family,
    /// Worker threads; 0 picks the rayon default.
    pub parallelism: usize,
    pub ceiling: u64,
    /// Cap on listed supporting examples (all are still counted).
    pub max_examples: usize,
    /// Largest power `n` in the power-parity sweep.
    pub max_power: u32,
    /// Total-degree bound for the bivariate side of two-variable sweeps.
    pub bivariate_degree: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_degree: 3,
            coefficients: (-2..=2).map(rat).collect(),
            modulus: None,
            family: Family::Polynomial,
            parallelism: 0,
            ceiling: DEFAULT_CEILING,
            max_examples: 1000,
            max_power: 4,
            bivariate_degree: 2,
        }
    }
}

impl SearchConfig {
    pub fn with_coefficient_range(mut self, lo: i64, hi: i64) -> Self {
        self.coefficients = (lo..=hi).map(rat).collect();
        self
    }

    fn validate(&self) -> Result<Vec<Rational>, ExplorerError> {
        if self.coefficients.is_empty() {
            return Err(ExplorerError::EmptyCoefficients);
        }
        if !self.coefficients.iter().any(Zero::is_zero) {
            return Err(ExplorerError::MissingZero);
        }
        if self.max_degree < 1 {
            return Err(ExplorerError::InvalidDegree);
        }
        let mut coeffs = self.coefficients.clone();
        coeffs.sort();
        coeffs.dedup();
        Ok(coeffs)
    }

    fn modulus(&self) -> Result<PrimeModulus, ExplorerError> {
        self.modulus.ok_or(ExplorerError::MissingModulus)
    }

    fn require(&self, allowed: &[Family]) -> Result<(), ExplorerError> {
        if allowed.contains(&self.family) {
            Ok(())
        } else {
            Err(ExplorerError::WrongFamily(match self.family {
                Family::Polynomial => "polynomial",
                Family::RationalFunction => "rational-function",
                Family::Bivariate => "bivariate",
            }))
        }
    }

    fn coefficient_text(&self, coeffs: &[Rational]) -> String {
        let items: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        format!("{{{}}}", items.join(", "))
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism)
            .build()
            .expect("thread pool")
    }
}

/// Nonzero coefficient vectors over `slots` positions, graded by the highest
/// nonzero slot and then lexicographic from that slot down, in the sorted
/// order of the coefficient set.
#[derive(Clone, Debug)]
struct Graded {
    coeffs: Vec<Rational>,
    nonzero: Vec<Rational>,
    len: u64,
}

impl Graded {
    fn new(coeffs: Vec<Rational>, slots: u32) -> Option<Self> {
        let c = coeffs.len() as u64;
        let len = c.checked_pow(slots)? - 1;
        let nonzero = coeffs.iter().filter(|x| !x.is_zero()).cloned().collect();
        Some(Self {
            coeffs,
            nonzero,
            len,
        })
    }

    /// Nonzero `(slot, coefficient)` pairs of the instance at `idx`.
    fn get(&self, mut idx: u64) -> Vec<(u32, Rational)> {
        assert!(idx < self.len, "index {} out of range {}", idx, self.len);
        let c = self.coeffs.len() as u64;
        let z = self.nonzero.len() as u64;
        let mut top = 0u32;
        let mut block = 1u64;
        while idx >= z * block {
            idx -= z * block;
            top += 1;
            block *= c;
        }
        let mut out = vec![(top, self.nonzero[(idx / block) as usize].clone())];
        let mut low = idx % block;
        for slot in 0..top {
            let digit = self.coeffs[(low % c) as usize].clone();
            low /= c;
            if !digit.is_zero() {
                out.push((slot, digit));
            }
        }
        out
    }
}

fn family_size_estimate(c: usize, slots: u32) -> f64 {
    (c as f64).powf(slots as f64) - 1.0
}

fn refuse(estimate: f64, ceiling: u64) -> ExplorerError {
    ExplorerError::CeilingExceeded { estimate, ceiling }
}

/// Nonzero polynomials of degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    graded: Graded,
}

impl PolyFamily {
    fn build(coeffs: Vec<Rational>, max_degree: u32, ceiling: u64) -> Result<Self, ExplorerError> {
        let estimate = family_size_estimate(coeffs.len(), max_degree + 1);
        let graded = Graded::new(coeffs, max_degree + 1).ok_or(refuse(estimate, ceiling))?;
        if graded.len > ceiling {
            return Err(refuse(estimate, ceiling));
        }
        Ok(Self { graded })
    }

    pub fn len(&self) -> u64 {
        self.graded.len
    }

    pub fn is_empty(&self) -> bool {
        self.graded.len == 0
    }

    pub fn get(&self, idx: u64) -> UniPoly {
        UniPoly::from_terms(self.graded.get(idx))
    }

    /// Instances from `start` on; enumeration is restartable at any index.
    pub fn iter_from(&self, start: u64) -> impl Iterator<Item = UniPoly> + '_ {
        (start..self.len()).map(move |i| self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = UniPoly> + '_ {
        self.iter_from(0)
    }
}

/// The polynomial family of `config`, refusing families larger than the
/// ceiling.
pub fn enumerate(config: &SearchConfig) -> Result<PolyFamily, ExplorerError> {
    let coeffs = config.validate()?;
    PolyFamily::build(coeffs, config.max_degree, config.ceiling)
}

/// Nonzero polynomials in `z, w` of total degree at most `degree`.
#[derive(Clone, Debug)]
pub struct BiFamily {
    graded: Graded,
    monomials: Vec<(u32, u32)>,
}

impl BiFamily {
    fn build(coeffs: Vec<Rational>, degree: u32, ceiling: u64) -> Result<Self, ExplorerError> {
        let monomials: Vec<(u32, u32)> = (0..=degree)
            .flat_map(|t| (0..=t).map(move |j| (t - j, j)))
            .collect();
        let slots = monomials.len() as u32;
        let estimate = family_size_estimate(coeffs.len(), slots);
        let graded = Graded::new(coeffs, slots).ok_or(refuse(estimate, ceiling))?;
        if graded.len > ceiling {
            return Err(refuse(estimate, ceiling));
        }
        Ok(Self { graded, monomials })
    }

    pub fn len(&self) -> u64 {
        self.graded.len
    }

    pub fn is_empty(&self) -> bool {
        self.graded.len == 0
    }

    pub fn get(&self, idx: u64) -> BiPoly {
        BiPoly::from_terms(
            self.graded
                .get(idx)
                .into_iter()
                .map(|(slot, c)| (self.monomials[slot as usize], c)),
        )
    }
}

pub fn enumerate_bivariate(config: &SearchConfig) -> Result<BiFamily, ExplorerError> {
    let coeffs = config.validate()?;
    BiFamily::build(coeffs, config.bivariate_degree, config.ceiling)
}

/// Distinct rational functions `P/Q` with `P, Q` nonzero in the polynomial
/// family, canonicalized and deduplicated in enumeration order. Also returns
/// the number of raw pairs.
pub fn enumerate_rational(
    config: &SearchConfig,
) -> Result<(Vec<RationalFunction>, u64), ExplorerError> {
    let coeffs = config.validate()?;
    let polys = PolyFamily::build(coeffs, config.max_degree, config.ceiling)?;
    let n = polys.len();
    let pairs = n
        .checked_mul(n)
        .filter(|&p| p <= config.ceiling)
        .ok_or_else(|| refuse((n as f64) * (n as f64), config.ceiling))?;
    let members: Vec<UniPoly> = polys.iter().collect();
    let canonical: Vec<Vec<RationalFunction>> = config.pool().install(|| {
        members
            .par_iter()
            .map(|num| {
                members
                    .iter()
                    .map(|den| RationalFunction::new(num.clone(), den.clone()).expect("nonzero"))
                    .collect()
            })
            .collect()
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in canonical.into_iter().flatten() {
        if seen.insert(f.clone()) {
            out.push(f);
        }
    }
    Ok((out, pairs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Non-cyclic inner polynomial with zero constant term keeps the
    /// composition non-cyclic.
    PropC,
    /// Cyclic compositions with `q(0) = 0`.
    ThmFA,
    /// Cyclic compositions with `q(0) != 0`, via the shift decomposition.
    ThmFB,
    /// Self-compositions `p∘p`.
    SelfComp,
    /// An even power forces an even or odd base.
    LemmaB,
    /// `P(Q(z,w))` even with `Q(0,0) = 0` forces `P` or `Q` even.
    Pqr,
    /// `p∘f` is never even when `f` is neither even nor odd plus a constant.
    BorelPolyRemark,
    /// The integer congruence lemma behind the cyclic theorems.
    LemmaMod,
    /// Homogeneous analogue of the two-variable composition theorem.
    HomogeneousPqr,
}

impl Theorem {
    pub fn label(self) -> &'static str {
        match self {
            Theorem::PropC => "prop-c",
            Theorem::ThmFA => "thm-f-a",
            Theorem::ThmFB => "thm-f-b",
            Theorem::SelfComp => "self-comp",
            Theorem::LemmaB => "lemma-b",
            Theorem::Pqr => "pqr",
            Theorem::BorelPolyRemark => "borel-poly-remark",
            Theorem::LemmaMod => "lemma-mod",
            Theorem::HomogeneousPqr => "homogeneous-pqr",
        }
    }

    pub const ALL: [Theorem; 9] = [
        Theorem::PropC,
        Theorem::ThmFA,
        Theorem::ThmFB,
        Theorem::SelfComp,
        Theorem::LemmaB,
        Theorem::Pqr,
        Theorem::BorelPolyRemark,
        Theorem::LemmaMod,
        Theorem::HomogeneousPqr,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    TheoremSuite,
    OpenQuestion,
    Remark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Consistent,
    ViolationFound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub label: String,
    pub kind: ReportKind,
    pub scope: String,
    /// Closed-form number of instances swept.
    pub instances_checked: u64,
    /// Instances on which the hypotheses held (or, for searches, that were
    /// examined after canonical deduplication).
    pub hypotheses_met: u64,
    pub violations: Vec<String>,
    pub supporting_examples: Vec<String>,
    pub supporting_total: u64,
    pub status: SearchStatus,
    pub note: String,
    pub elapsed_ms: u64,
}

impl SearchReport {
    pub fn is_consistent(&self) -> bool {
        self.status == SearchStatus::Consistent
    }

    /// Copy with the wall time zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{:?}]", self.label, self.kind)?;
        writeln!(f, "  scope: {}", self.scope)?;
        writeln!(f, "  instances checked: {}", self.instances_checked)?;
        writeln!(f, "  hypotheses met: {}", self.hypotheses_met)?;
        writeln!(f, "  violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "    {}", v)?;
        }
        writeln!(f, "  supporting examples: {}", self.supporting_total)?;
        for s in self.supporting_examples.iter().take(20) {
            writeln!(f, "    {}", s)?;
        }
        if self.supporting_examples.len() > 20 {
            writeln!(
                f,
                "    ... ({} more listed in --json)",
                self.supporting_examples.len() - 20
            )?;
        }
        writeln!(
            f,
            "  status: {}",
            match self.status {
                SearchStatus::Consistent => "consistent",
                SearchStatus::ViolationFound => "violation found",
            }
        )?;
        writeln!(f, "  note: {}", self.note)?;
        write!(f, "  elapsed: {} ms", self.elapsed_ms)
    }
}

/// Per-worker tallies, merged in index order.
#[derive(Default)]
struct Tally {
    checked: u64,
    met: u64,
    violations: Vec<String>,
    supporting: Vec<String>,
}

impl Tally {
    fn record(&mut self, status: TheoremStatus) {
        self.checked += 1;
        match status {
            TheoremStatus::HypothesesUnmet(_) => {}
            TheoremStatus::Holds => self.met += 1,
            TheoremStatus::Violation(detail) => {
                self.met += 1;
                self.violations.push(detail);
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.met += other.met;
        self.violations.extend(other.violations);
        self.supporting.extend(other.supporting);
    }
}

/// Runs `work` for every outer index on the configured pool and merges the
/// tallies in index order.
fn sweep<F>(config: &SearchConfig, outer: u64, work: F) -> Tally
where
    F: Fn(u64, &mut Tally) + Sync,
{
    let parts: Vec<Tally> = config.pool().install(|| {
        (0..outer)
            .into_par_iter()
            .map(|i| {
                let mut t = Tally::default();
                work(i, &mut t);
                t
            })
            .collect()
    });
    let mut total = Tally::default();
    for p in parts {
        total.absorb(p);
    }
    total
}

fn pair_ceiling(a: u64, b: u64, ceiling: u64) -> Result<u64, ExplorerError> {
    a.checked_mul(b)
        .filter(|&n| n <= ceiling)
        .ok_or_else(|| refuse(a as f64 * b as f64, ceiling))
}

struct Finish<'a> {
    label: String,
    kind: ReportKind,
    scope: String,
    config: &'a SearchConfig,
    started: Instant,
}

impl Finish<'_> {
    fn report(self, tally: Tally, instances: u64, note: impl Into<String>) -> SearchReport {
        let supporting_total = tally.supporting.len() as u64;
        let mut supporting = tally.supporting;
        supporting.truncate(self.config.max_examples);
        let status = if tally.violations.is_empty() {
            SearchStatus::Consistent
        } else {
            SearchStatus::ViolationFound
        };
        SearchReport {
            label: self.label,
            kind: self.kind,
            scope: self.scope,
            instances_checked: instances,
            hypotheses_met: tally.met,
            violations: tally.violations,
            supporting_examples: supporting,
            supporting_total,
            status,
            note: note.into(),
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

const PROVED_NOTE: &str =
    "the statement is a proved theorem; any violation indicates an implementation bug";

/// Exhaustively checks one theorem over the configured family.
pub fn run_theorem_suite(
    theorem: Theorem,
    config: &SearchConfig,
) -> Result<SearchReport, ExplorerError> {
    let started = Instant::now();
    let coeffs = config.validate()?;
    let coeff_text = config.coefficient_text(&coeffs);
    let label = theorem.label().to_string();
    let mut finish = Finish {
        label,
        kind: ReportKind::TheoremSuite,
        scope: String::new(),
        config,
        started,
    };
    let modulus_text = |m: PrimeModulus| format!("N = {}", m);

    let (tally, instances) = match theorem {
        Theorem::PropC | Theorem::ThmFA | Theorem::ThmFB => {
            config.require(&[Family::Polynomial])?;
            let m = config.modulus()?;
            let fam = PolyFamily::build(coeffs, config.max_degree, config.ceiling)?;
            let n = pair_ceiling(fam.len(), fam.len(), config.ceiling)?;
            let qs: Vec<UniPoly> = fam.iter().collect();
            finish.scope = format!(
                "pairs (p, q) of nonzero polynomials, degree <= {}, coefficients {}, {}",
                config.max_degree,
                coeff_text,
                modulus_text(m)
            );
            let tally = sweep(config, fam.len(), |i, t| {
                let p = fam.get(i);
                for q in &qs {
                    match theorem {
                        Theorem::PropC => t.record(proposition_c_assert(&p, q, m)),
                        Theorem::ThmFA => t.record(theorem_f_a_assert(&p, q, m)),
                        _ => thm_f_b_instance(&p, q, m, t),
                    }
                }
            });
            (tally, n)
        }
        Theorem::SelfComp => {
            config.require(&[Family::Polynomial])?;
            let m = config.modulus()?;
            let fam = PolyFamily::build(coeffs, config.max_degree, config.ceiling)?;
            finish.scope = format!(
                "nonzero polynomials p, degree <= {}, coefficients {}, {}",
                config.max_degree,
                coeff_text,
                modulus_text(m)
            );
            let tally = sweep(config, fam.len(), |i, t| {
                t.record(self_composition_assert(&fam.get(i), m))
            });
            (tally, fam.len())
        }
        Theorem::LemmaB => {
            config.require(&[Family::Polynomial])?;
            let fam = PolyFamily::build(coeffs, config.max_degree, config.ceiling)?;
            let powers = config.max_power.max(1);
            let n = pair_ceiling(fam.len(), powers as u64, config.ceiling)?;
            finish.scope = format!(
                "nonzero polynomials f, degree <= {}, coefficients {}, powers n = 1..={}",
                config.max_degree, coeff_text, powers
            );
            let tally = sweep(config, fam.len(), |i, t| {
                let f = fam.get(i);
                for n in 1..=powers {
                    let n = NonZeroU32::new(n).expect("n >= 1");
                    t.record(match power_parity_check(&f, n) {
                        PowerParity::PowerNotEven => {
                            TheoremStatus::HypothesesUnmet("f^n not even".into())
                        }
                        PowerParity::PowerEven(_) => TheoremStatus::Holds,
                        PowerParity::Violation => TheoremStatus::Violation(format!(
                            "f = {}, n = {}: f^n even but f neither even nor odd",
                            f, n
                        )),
                    });
                }
            });
            (tally, n)
        }
        Theorem::Pqr | Theorem::HomogeneousPqr => {
            config.require(&[Family::Bivariate])?;
            let ps = PolyFamily::build(coeffs.clone(), config.max_degree, config.ceiling)?;
            let qs = BiFamily::build(coeffs, config.bivariate_degree, config.ceiling)?;
            let n = pair_ceiling(ps.len(), qs.len(), config.ceiling)?;
            let q_list: Vec<BiPoly> = (0..qs.len()).map(|j| qs.get(j)).collect();
            finish.scope = format!(
                "P nonzero univariate of degree <= {}, Q nonzero bivariate of total degree <= {}, coefficients {}",
                config.max_degree, config.bivariate_degree, coeff_text
            );
            let tally = sweep(config, ps.len(), |i, t| {
                let p = ps.get(i);
                for q in &q_list {
                    t.record(if theorem == Theorem::Pqr {
                        theorem_pqr_assert(&p, q)
                    } else {
                        homogeneous_pqr_assert(&p, q)
                    });
                }
            });
            (tally, n)
        }
        Theorem::BorelPolyRemark => {
            config.require(&[Family::Polynomial])?;
            let fam = PolyFamily::build(coeffs, config.max_degree, config.ceiling)?;
            let n = pair_ceiling(fam.len(), fam.len(), config.ceiling)?;
            let ps: Vec<UniPoly> = fam.iter().collect();
            finish.scope = format!(
                "pairs (f, p) of nonzero polynomials, degree <= {}, coefficients {}",
                config.max_degree, coeff_text
            );
            let tally = sweep(config, fam.len(), |i, t| {
                let f = fam.get(i);
                let excluded = f.is_even() || odd_plus_constant(&f);
                for p in &ps {
                    t.record(if excluded {
                        TheoremStatus::HypothesesUnmet("f is even or odd plus a constant".into())
                    } else if p.is_constant() {
                        TheoremStatus::HypothesesUnmet("p is constant".into())
                    } else {
                        let pf = p.compose(&f);
                        TheoremStatus::check(!pf.is_even(), || {
                            format!("f = {}, p = {}: p∘f = {} is even", f, p, pf)
                        })
                    });
                }
            });
            (tally, n)
        }
        Theorem::LemmaMod => {
            let moduli: Vec<PrimeModulus> = match config.modulus {
                Some(m) => vec![m],
                None => LEMMA_MOD_DEFAULT
                    .iter()
                    .map(|&n| PrimeModulus::new(n).expect("prime"))
                    .collect(),
            };
            let names: Vec<String> = moduli.iter().map(|m| m.to_string()).collect();
            finish.scope = format!(
                "integer triples (m, n, r) in 1..=3N with N | n, N in {{{}}}",
                names.join(", ")
            );
            let mut tally = Tally::default();
            let mut n = 0u64;
            for m in moduli {
                let bound = 3 * m.get();
                let count = bound * 3 * bound;
                let violations = lemma_mod_violations(m);
                n += count;
                tally.checked += count;
                tally.met += count;
                tally
                    .violations
                    .extend(violations.into_iter().map(|(a, k, r)| {
                        format!(
                            "N = {}: m = {}, n = {}, r = {} gives m(n-1) + r ≡ 0",
                            m, a, k, r
                        )
                    }));
            }
            (tally, n)
        }
    };
    debug_assert!(theorem == Theorem::LemmaMod || tally.checked == instances);
    Ok(finish.report(tally, instances, PROVED_NOTE))
}

fn thm_f_b_instance(p: &UniPoly, q: &UniPoly, m: PrimeModulus, t: &mut Tally) {
    t.checked += 1;
    let ShiftOutcome::Decomposed(d) = shift_decompose(p, q, m) else {
        return;
    };
    t.met += 1;
    if !d.conclusion_ok {
        t.violations.push(format!(
            "p = {}, q = {}, N = {}: r = {} in {}, s = {} in {}",
            p, q, m, d.r, d.r_class, d.s, d.s_class
        ));
    }
    if !m.class_of(p).is_cyclic() && !m.class_of(q).is_cyclic() {
        t.supporting.push(format!(
            "p = {}, q = {}: p∘q in {} with p, q not cyclic; s = {} in {}, r = {} in {}",
            p, q, d.composition_class, d.s, d.s_class, d.r, d.r_class
        ));
    }
}

fn odd_plus_constant(f: &UniPoly) -> bool {
    (f - &UniPoly::constant(f.constant_term())).is_odd()
}

fn rational_even(f: &RationalFunction) -> bool {
    f.cyclic_class(2).expect("valid modulus").is_class_zero()
}

/// Searches for `f` with `f∘f` even, `f` not even and `f(0) != 0`, recording
/// whether each hit is odd plus a constant.
pub fn search_open_q1(config: &SearchConfig) -> Result<SearchReport, ExplorerError> {
    let started = Instant::now();
    config.require(&[Family::Polynomial, Family::RationalFunction])?;
    let coeffs = config.validate()?;
    let coeff_text = config.coefficient_text(&coeffs);
    let mut finish = Finish {
        label: "open-q1".into(),
        kind: ReportKind::OpenQuestion,
        scope: String::new(),
        config,
        started,
    };
    let note = "hits are evidence only; the question concerns entire functions and is not resolved by a bounded search";
    match config.family {
        Family::Polynomial => {
            let fam = PolyFamily::build(coeffs, config.max_degree, config.ceiling)?;
            finish.scope = format!(
                "nonzero polynomials f, degree <= {}, coefficients {}",
                config.max_degree, coeff_text
            );
            let mut tally = sweep(config, fam.len(), |i, t| {
                t.checked += 1;
                let f = fam.get(i);
                if f.is_even() || f.constant_term().is_zero() || !f.compose(&f).is_even() {
                    return;
                }
                if odd_plus_constant(&f) {
                    t.supporting.push(format!("f = {} (odd plus constant)", f));
                } else {
                    t.violations.push(format!(
                        "f = {}: f∘f even, f(0) != 0, not odd plus constant",
                        f
                    ));
                }
            });
            tally.met = tally.checked;
            Ok(finish.report(tally, fam.len(), note))
        }
        _ => {
            let (family, pairs) = enumerate_rational(config)?;
            finish.scope = format!(
                "rational functions P/Q, deg P, deg Q <= {}, coefficients {} ({} pairs, {} distinct after canonicalization)",
                config.max_degree,
                coeff_text,
                pairs,
                family.len()
            );
            let mut tally = sweep(config, family.len() as u64, |i, t| {
                t.checked += 1;
                let f = &family[i as usize];
                if rational_even(f) {
                    return;
                }
                match f.value_at_zero() {
                    Some(v) if !v.is_zero() => {}
                    _ => return,
                }
                let Ok(ff) = f.compose(f) else { return };
                if !rational_even(&ff) {
                    return;
                }
                let shifted = f.sub(&RationalFunction::from_poly(UniPoly::constant(
                    f.value_at_zero().expect("checked"),
                )));
                let shape = if shifted.cyclic_class(2).expect("valid") == CyclicClass::Class(1) {
                    "odd plus constant"
                } else {
                    "not odd plus constant; rational, outside the question's entire-function scope"
                };
                t.supporting
                    .push(format!("f = {}: f∘f = {} ({})", f, ff, shape));
            });
            tally.met = tally.checked;
            Ok(finish.report(tally, pairs, note))
        }
    }
}

/// Searches rational functions `R ∉ C_0` with `R∘R ∈ C_0` for `N >= 3`.
pub fn search_open_q2(config: &SearchConfig) -> Result<SearchReport, ExplorerError> {
    let started = Instant::now();
    let m = config.modulus()?;
    if m.get() < 3 {
        return Err(ExplorerError::ModulusTooSmall(m.get()));
    }
    config.require(&[Family::RationalFunction])?;
    let coeffs = config.validate()?;
    let (family, pairs) = enumerate_rational(config)?;
    let finish = Finish {
        label: "open-q2".into(),
        kind: ReportKind::OpenQuestion,
        scope: format!(
            "rational functions P/Q, deg P, deg Q <= {}, coefficients {}, N = {} ({} pairs, {} distinct after canonicalization)",
            config.max_degree,
            config.coefficient_text(&coeffs),
            m,
            pairs,
            family.len()
        ),
        config,
        started,
    };
    let mut tally = sweep(config, family.len() as u64, |i, t| {
        t.checked += 1;
        let r = &family[i as usize];
        let class = r.cyclic_class(m.get()).expect("valid modulus");
        if class.is_class_zero() {
            return;
        }
        let Ok(rr) = r.compose(r) else { return };
        let rr_class = rr.cyclic_class(m.get()).expect("valid modulus");
        if rr_class.is_class_zero() {
            t.supporting.push(format!(
                "R = {} in {}: R∘R = {} in {}",
                r, class, rr, rr_class
            ));
        }
    });
    tally.met = tally.checked;
    Ok(finish.report(
        tally,
        pairs,
        "hits are reported without a truth claim; the bounded search does not decide the question",
    ))
}

/// Searches `R = P(Q)` symmetric with `P` nonconstant and `Q` not symmetric.
pub fn search_symmetric_remark(config: &SearchConfig) -> Result<SearchReport, ExplorerError> {
    let started = Instant::now();
    config.require(&[Family::Bivariate])?;
    let coeffs = config.validate()?;
    let ps = PolyFamily::build(coeffs.clone(), config.max_degree, config.ceiling)?;
    let qs = BiFamily::build(coeffs.clone(), config.bivariate_degree, config.ceiling)?;
    let n = pair_ceiling(ps.len(), qs.len(), config.ceiling)?;
    let q_list: Vec<BiPoly> = (0..qs.len())
        .map(|j| qs.get(j))
        .filter(|q| !q.is_symmetric())
        .collect();
    let finish = Finish {
        label: "symmetric-remark".into(),
        kind: ReportKind::Remark,
        scope: format!(
            "P nonzero univariate of degree <= {}, Q nonzero bivariate of total degree <= {}, coefficients {}",
            config.max_degree,
            config.bivariate_degree,
            config.coefficient_text(&coeffs)
        ),
        config,
        started,
    };
    let skipped_symmetric = qs.len() - q_list.len() as u64;
    let mut tally = sweep(config, ps.len(), |i, t| {
        let p = ps.get(i);
        t.checked += skipped_symmetric;
        for q in &q_list {
            t.checked += 1;
            if p.is_constant() {
                continue;
            }
            let r = BiPoly::compose_outer(&p, q);
            if r.is_symmetric() {
                t.supporting
                    .push(format!("P = {}, Q = {}: R = {} symmetric", p, q, r));
            }
        }
    });
    tally.met = tally.checked;
    Ok(finish.report(
        tally,
        n,
        "hits are symmetric compositions with a non-symmetric inner polynomial; nothing is asserted",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_frac;

    fn config(max_degree: u32, lo: i64, hi: i64) -> SearchConfig {
        SearchConfig {
            max_degree,
            ..SearchConfig::default()
        }
        .with_coefficient_range(lo, hi)
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let fam = enumerate(&config(1, 0, 1)).unwrap();
        let items: Vec<String> = fam.iter().map(|p| p.to_string()).collect();
        assert_eq!(items, ["1", "z", "z + 1"]);
        assert_eq!(enumerate(&config(2, -1, 1)).unwrap().len(), 26);
        let refused = enumerate(&SearchConfig {
            ceiling: 10,
            ..config(5, -2, 2)
        });
        assert!(matches!(
            refused,
            Err(ExplorerError::CeilingExceeded { ceiling: 10, .. })
        ));
    }

    #[test]
    fn enumeration_is_graded_and_distinct() {
        let fam = enumerate(&config(3, -2, 2)).unwrap();
        assert_eq!(fam.len(), 5u64.pow(4) - 1);
        let all: Vec<UniPoly> = fam.iter().collect();
        let distinct: HashSet<&UniPoly> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.windows(2).all(|w| w[0].degree() <= w[1].degree()));
        let restarted: Vec<UniPoly> = fam.iter_from(100).take(5).collect();
        assert_eq!(restarted, all[100..105]);
    }

    #[test]
    fn config_validation() {
        let empty = SearchConfig {
            coefficients: vec![],
            ..SearchConfig::default()
        };
        assert_eq!(
            enumerate(&empty).unwrap_err(),
            ExplorerError::EmptyCoefficients
        );
        let no_zero = SearchConfig {
            coefficients: vec![rat(1)],
            ..SearchConfig::default()
        };
        assert_eq!(enumerate(&no_zero).unwrap_err(), ExplorerError::MissingZero);
        assert_eq!(
            enumerate(&config(0, -1, 1)).unwrap_err(),
            ExplorerError::InvalidDegree
        );
        let fractional = SearchConfig {
            coefficients: vec![rat(0), rat_frac(1, 2)],
            max_degree: 1,
            ..SearchConfig::default()
        };
        assert_eq!(enumerate(&fractional).unwrap().len(), 3);
    }

    #[test]
    fn bivariate_family_size() {
        let cfg = SearchConfig {
            bivariate_degree: 2,
            ..config(1, -1, 1)
        };
        let fam = enumerate_bivariate(&cfg).unwrap();
        assert_eq!(fam.len(), 3u64.pow(6) - 1);
        assert_eq!(fam.get(0).to_string(), "-1");
    }

    #[test]
    fn rational_family_dedups() {
        let (fam, pairs) = enumerate_rational(&config(1, -1, 1)).unwrap();
        assert_eq!(pairs, 64);
        let distinct: HashSet<&RationalFunction> = fam.iter().collect();
        assert_eq!(distinct.len(), fam.len());
        assert!(fam.len() < 64);
    }

    #[test]
    fn small_suites_are_consistent() {
        for n in [2, 3] {
            let cfg = SearchConfig {
                modulus: Some(PrimeModulus::new(n).unwrap()),
                ..config(2, -1, 1)
            };
            for th in [
                Theorem::PropC,
                Theorem::ThmFA,
                Theorem::ThmFB,
                Theorem::SelfComp,
            ] {
                let r = run_theorem_suite(th, &cfg).unwrap();
                assert!(r.is_consistent(), "{}", r);
                assert!(r.hypotheses_met > 0, "{}", r);
            }
        }
        let lemma = run_theorem_suite(Theorem::LemmaMod, &SearchConfig::default()).unwrap();
        assert!(lemma.is_consistent());
        assert_eq!(
            lemma.instances_checked,
            [2u64, 3, 5, 7, 11, 13]
                .iter()
                .map(|n| 27 * n * n)
                .sum::<u64>()
        );
    }

    #[test]
    fn thm_f_b_lists_the_shifted_cube() {
        let cfg = SearchConfig {
            modulus: Some(PrimeModulus::new(3).unwrap()),
            max_degree: 3,
            coefficients: (-1..=3).map(rat).collect(),
            ..SearchConfig::default()
        };
        let r = run_theorem_suite(Theorem::ThmFB, &cfg).unwrap();
        assert!(r.is_consistent());
        assert!(r
            .supporting_examples
            .iter()
            .any(|s| s.starts_with("p = z^3 + 3*z^2 + 3*z + 1, q = z - 1:")));
    }

    #[test]
    fn family_mismatch_and_missing_modulus() {
        let cfg = config(2, -1, 1);
        assert_eq!(
            run_theorem_suite(Theorem::PropC, &cfg).unwrap_err(),
            ExplorerError::MissingModulus
        );
        assert!(matches!(
            run_theorem_suite(Theorem::Pqr, &cfg),
            Err(ExplorerError::WrongFamily(_))
        ));
        let q2 = SearchConfig {
            modulus: Some(PrimeModulus::new(2).unwrap()),
            family: Family::RationalFunction,
            ..cfg.clone()
        };
        assert_eq!(
            search_open_q2(&q2).unwrap_err(),
            ExplorerError::ModulusTooSmall(2)
        );
    }

    #[test]
    fn open_q1_rational_flags_the_known_example() {
        let cfg = SearchConfig {
            family: Family::RationalFunction,
            ..config(2, -1, 1)
        };
        let r = search_open_q1(&cfg).unwrap();
        assert!(r.violations.is_empty());
        assert!(r
            .supporting_examples
            .iter()
            .any(|s| s.starts_with("f = (z^2 + z + 1) / (z^2 - z + 1):")
                && s.contains("outside the question's entire-function scope")));
    }

    #[test]
    fn parallelism_does_not_change_reports() {
        let base = SearchConfig {
            modulus: Some(PrimeModulus::new(3).unwrap()),
            ..config(2, -2, 2)
        };
        let one = run_theorem_suite(
            Theorem::ThmFB,
            &SearchConfig {
                parallelism: 1,
                ..base.clone()
            },
        )
        .unwrap();
        let four = run_theorem_suite(
            Theorem::ThmFB,
            &SearchConfig {
                parallelism: 4,
                ..base
            },
        )
        .unwrap();
        assert_eq!(one.without_timing(), four.without_timing());
    }

    #[test]
    fn ceiling_parsing() {
        assert_eq!(parse_ceiling("1000"), Some(1000));
        assert_eq!(parse_ceiling("1e6"), Some(1_000_000));
        assert_eq!(parse_ceiling("-3"), None);
        assert_eq!(parse_ceiling("abc"), None);
    }
}
