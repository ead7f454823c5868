//! Floating-point cross-checks of exact results.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::WitnessError;

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Outcome of a sampled identity check.
///
/// `residual` is the largest relative residual `|a - b| / max(1, |a|, |b|)`
/// and is what `pass` is judged on; `abs_residual` is the largest `|a - b|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub residual: f64,
    pub abs_residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

pub(crate) fn check_params(samples: usize, tol: f64) -> Result<(), WitnessError> {
    if samples == 0 {
        return Err(WitnessError::InvalidSamples);
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(WitnessError::InvalidTolerance);
    }
    Ok(())
}

/// `n` points on the unit circle, offset by half a step so that no sample
/// sits on the real axis.
pub fn unit_circle_samples(n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |j| Complex64::from_polar(1.0, TAU * (j as f64 + 0.5) / n as f64))
}

#[derive(Default)]
pub(crate) struct Residuals {
    count: usize,
    max_rel: f64,
    max_abs: f64,
    non_finite: usize,
}

impl Residuals {
    pub fn push(&mut self, a: Complex64, b: Complex64) {
        self.count += 1;
        let diff = (a - b).norm();
        if !diff.is_finite() || !a.norm().is_finite() || !b.norm().is_finite() {
            self.non_finite += 1;
            return;
        }
        let scale = 1f64.max(a.norm()).max(b.norm());
        self.max_rel = self.max_rel.max(diff / scale);
        self.max_abs = self.max_abs.max(diff);
    }

    pub fn finish(self, tol: f64) -> VerificationReport {
        let diagnostic = (self.non_finite > 0).then(|| {
            format!(
                "{} of {} samples overflowed double precision",
                self.non_finite, self.count
            )
        });
        VerificationReport {
            samples: self.count,
            residual: self.max_rel,
            abs_residual: self.max_abs,
            tol,
            pass: self.non_finite == 0 && self.max_rel <= tol,
            diagnostic,
        }
    }
}
