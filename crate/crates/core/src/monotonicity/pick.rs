//! Sampled Pick condition: a globally operator-monotone function maps the
//! poly-upper-half-plane `Πⁿ` into the closed upper half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::function::{FunctionSpec, FunctionUnderTest};
use crate::error::{Error, Result};

/// A sample counts as a violation when `Im f(z)` is below `−PICK_TOL`.
pub const PICK_TOL: f64 = 1e-10;

/// Deterministic points checked before any random sample: every coordinate
/// equal to `e^{3πi/4}`, then every coordinate equal to `e^{iπ/4}`.
pub fn fixed_probes(n: usize) -> Vec<Vec<Complex64>> {
    [3.0 * PI / 4.0, PI / 4.0]
        .iter()
        .map(|&theta| vec![Complex64::from_polar(1.0, theta); n])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickViolation {
    pub z: Vec<Complex64>,
    pub im: f64,
}

/// Checks the fixed probes and `samples` random points with
/// `Re z_j ∈ (−5, 5)`, `Im z_j ∈ (0.01, 5)`.
pub fn pick_check(f: &FunctionUnderTest, samples: usize, seed: u64) -> Result<Vec<PickViolation>> {
    if !f.has_complex_extension() {
        return Err(Error::MissingComplexExtension {
            function: f.name().to_string(),
        });
    }
    let n = f.arity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..samples).map(|_| {
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(0.01..5.0)))
            .collect::<Vec<_>>()
    });
    let mut violations = Vec::new();
    for z in fixed_probes(n).into_iter().chain(random) {
        let im = f.eval_complex(&z)?.im;
        if im < -PICK_TOL {
            violations.push(PickViolation { z, im });
        }
    }
    Ok(violations)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickReport {
    pub function: String,
    pub spec: Option<FunctionSpec>,
    pub samples: usize,
    pub probes: usize,
    pub seed: u64,
    pub violations: usize,
    /// Violation with the most negative imaginary part.
    pub worst: Option<PickViolation>,
}

impl PickReport {
    pub fn run(f: &FunctionUnderTest, samples: usize, seed: u64) -> Result<Self> {
        let violations = pick_check(f, samples, seed)?;
        let worst = violations
            .iter()
            .min_by(|a, b| a.im.total_cmp(&b.im))
            .cloned();
        Ok(Self {
            function: f.name().to_string(),
            spec: f.spec().cloned(),
            samples,
            probes: fixed_probes(f.arity()).len(),
            seed,
            violations: violations.len(),
            worst,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
