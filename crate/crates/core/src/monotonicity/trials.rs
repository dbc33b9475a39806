use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::function::{FunctionSpec, FunctionUnderTest};
use crate::calculus::apply_function;
use crate::error::{Error, Result};
use crate::linalg::{
    joint_diagonalize_with, sample_dominating_pair, sym_eig_with, CommutingTuple, DominatingPair,
    Interval, JointConfig, Regime, SymMatrix,
};

/// Default pass tolerance on the scaled margin.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default threshold below which a scaled margin counts as a violation.
pub const DEFAULT_VIOLATION_FLOOR: f64 = 1e-6;

/// Parameters shared by every trial of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub n: usize,
    /// Each trial draws its dimension uniformly from `d_min..=d_max`.
    pub d_min: usize,
    pub d_max: usize,
    #[serde(rename = "box")]
    pub bounds: Interval,
    #[serde(rename = "gap_box")]
    pub gaps: Interval,
    pub seed: u64,
    pub eps: f64,
    pub violation_floor: f64,
}

impl TrialConfig {
    /// Defaults for `f`: its default box, gaps in `[0.01, 2]`, `d ∈ 1..=5`.
    pub fn for_function(f: &FunctionUnderTest, seed: u64) -> Self {
        Self {
            n: f.arity(),
            d_min: 1,
            d_max: 5,
            bounds: f.default_box(),
            gaps: Interval { lo: 0.01, hi: 2.0 },
            seed,
            eps: DEFAULT_EPS,
            violation_floor: DEFAULT_VIOLATION_FLOOR,
        }
    }

    pub fn with_dims(mut self, d_min: usize, d_max: usize) -> Self {
        self.d_min = d_min;
        self.d_max = d_max;
        self
    }

    pub fn with_box(mut self, bounds: Interval) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d_min == 0 || self.d_min > self.d_max {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1 and 1 <= d_min <= d_max (n = {}, d = {}..={})",
                self.n, self.d_min, self.d_max
            )));
        }
        self.bounds.validate()?;
        self.gaps.validate()?;
        if !(self.eps >= 0.0 && self.violation_floor >= self.eps) {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= eps <= violation_floor (eps = {}, floor = {})",
                self.eps, self.violation_floor
            )));
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// Dimension drawn for a trial seed.
pub fn trial_dim(cfg: &TrialConfig, seed: u64) -> usize {
    let span = (cfg.d_max - cfg.d_min + 1) as u64;
    cfg.d_min + (splitmix64(seed) % span) as usize
}

/// Regenerates the pair of trial `index`.
pub fn trial_pair(regime: Regime, cfg: &TrialConfig, index: u64) -> Result<(u64, DominatingPair)> {
    let seed = trial_seed(cfg.seed, index);
    let d = trial_dim(cfg, seed);
    let pair = sample_dominating_pair(regime, cfg.n, d, cfg.bounds, cfg.gaps, seed)?;
    Ok((seed, pair))
}

fn apply_checked(
    f: &FunctionUnderTest,
    tuple: &CommutingTuple,
    joint_cfg: &JointConfig,
) -> Result<SymMatrix> {
    let joint = joint_diagonalize_with(tuple, joint_cfg)?;
    if let Some(point) = joint.spectrum.iter().find(|p| !f.domain().contains(p)) {
        return Err(Error::DomainViolation {
            function: f.name().to_string(),
            point: point.clone(),
        });
    }
    apply_function(&joint, f)
}

/// `λ_min(f(B) − f(A)) / max(1, ‖f(A)‖_F, ‖f(B)‖_F)`.
pub fn check_pair(f: &FunctionUnderTest, pair: &DominatingPair) -> Result<f64> {
    check_pair_with(f, pair, &JointConfig::default())
}

pub fn check_pair_with(
    f: &FunctionUnderTest,
    pair: &DominatingPair,
    joint_cfg: &JointConfig,
) -> Result<f64> {
    if f.arity() != pair.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: pair.arity(),
        });
    }
    let fa = apply_checked(f, &pair.a, joint_cfg)?;
    let fb = apply_checked(f, &pair.b, joint_cfg)?;
    let scale = 1f64.max(fa.frobenius_norm()).max(fb.frobenius_norm());
    let diff = fb.sub(&fa)?;
    Ok(sym_eig_with(&diff, &joint_cfg.eigen)?.min_eigenvalue() / scale)
}

/// Classification of a scaled margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// Between `−violation_floor` and `−eps`: too small to call either way.
    Inconclusive,
    Violation,
}

pub fn classify(margin: f64, eps: f64, violation_floor: f64) -> Verdict {
    if margin >= -eps {
        Verdict::Pass
    } else if margin < -violation_floor {
        Verdict::Violation
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Debug, Clone, Copy)]
struct TrialOutcome {
    index: u64,
    seed: u64,
    d: usize,
    margin: f64,
    verdict: Verdict,
}

fn run_one(
    f: &FunctionUnderTest,
    regime: Regime,
    cfg: &TrialConfig,
    index: u64,
) -> Result<TrialOutcome> {
    let (seed, pair) = trial_pair(regime, cfg, index)?;
    let mut margin = check_pair(f, &pair)?;
    let mut verdict = classify(margin, cfg.eps, cfg.violation_floor);
    if verdict == Verdict::Inconclusive {
        margin = check_pair_with(f, &pair, &JointConfig::tight())?;
        verdict = classify(margin, cfg.eps, cfg.violation_floor);
    }
    Ok(TrialOutcome {
        index,
        seed,
        d: pair.dim(),
        margin,
        verdict,
    })
}

/// A pair on which monotonicity fails, with the seed that regenerates it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub matrices_a: Vec<Vec<Vec<f64>>>,
    pub matrices_b: Vec<Vec<Vec<f64>>>,
    pub margin: f64,
}

impl Witness {
    fn from_pair(trial: u64, seed: u64, pair: &DominatingPair, margin: f64) -> Self {
        Self {
            trial,
            seed,
            n: pair.arity(),
            d: pair.dim(),
            matrices_a: pair.a.matrices().iter().map(SymMatrix::to_rows).collect(),
            matrices_b: pair.b.matrices().iter().map(SymMatrix::to_rows).collect(),
            margin,
        }
    }

    /// Rebuilds the validated pair from the stored matrices.
    pub fn pair(&self, regime: Regime) -> Result<DominatingPair> {
        let build = |ms: &[Vec<Vec<f64>>]| -> Result<CommutingTuple> {
            CommutingTuple::new(
                ms.iter()
                    .map(|m| SymMatrix::from_rows(m))
                    .collect::<Result<_>>()?,
            )
        };
        DominatingPair::new(build(&self.matrices_a)?, build(&self.matrices_b)?, regime)
    }
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub function: Option<FunctionSpec>,
    pub regime: Regime,
    pub trials: usize,
    #[serde(flatten)]
    pub trial: TrialConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub function: String,
    pub regime: Regime,
    pub trials: usize,
    pub violations: usize,
    pub inconclusive: usize,
    /// Smallest scaled margin observed; `None` for an empty run.
    pub worst_margin: Option<f64>,
    /// First violating trial, present iff `violations > 0`.
    pub witness: Option<Witness>,
    pub config: ConfigEcho,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.inconclusive == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn check_compatible(f: &FunctionUnderTest, cfg: &TrialConfig) -> Result<()> {
    cfg.validate()?;
    if f.arity() != cfg.n {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: cfg.n,
        });
    }
    Ok(())
}

fn run_range(
    f: &FunctionUnderTest,
    regime: Regime,
    cfg: &TrialConfig,
    range: std::ops::Range<u64>,
) -> Result<Vec<TrialOutcome>> {
    let outcomes: Vec<Result<TrialOutcome>> = range
        .into_par_iter()
        .map(|k| run_one(f, regime, cfg, k))
        .collect();
    outcomes.into_iter().collect()
}

/// Runs `trials` independent dominating-pair checks. Trial `k` depends only on
/// `(cfg.seed, k)`, so the report is independent of scheduling.
pub fn run_trials(
    f: &FunctionUnderTest,
    regime: Regime,
    trials: usize,
    cfg: &TrialConfig,
) -> Result<MonotonicityReport> {
    check_compatible(f, cfg)?;
    let outcomes = run_range(f, regime, cfg, 0..trials as u64)?;

    let violations = outcomes
        .iter()
        .filter(|o| o.verdict == Verdict::Violation)
        .count();
    let inconclusive = outcomes
        .iter()
        .filter(|o| o.verdict == Verdict::Inconclusive)
        .count();
    let worst_margin = outcomes.iter().map(|o| o.margin).reduce(f64::min);
    let witness = match outcomes.iter().find(|o| o.verdict == Verdict::Violation) {
        Some(o) => {
            let (seed, pair) = trial_pair(regime, cfg, o.index)?;
            debug_assert_eq!((seed, pair.dim()), (o.seed, o.d));
            Some(Witness::from_pair(o.index, seed, &pair, o.margin))
        }
        None => None,
    };
    Ok(MonotonicityReport {
        function: f.name().to_string(),
        regime,
        trials,
        violations,
        inconclusive,
        worst_margin,
        witness,
        config: ConfigEcho {
            function: f.spec().cloned(),
            regime,
            trials,
            trial: *cfg,
        },
    })
}

const SEARCH_CHUNK: u64 = 256;

/// First violating pair among trials `0..budget`, or `None`.
pub fn counterexample_search(
    f: &FunctionUnderTest,
    regime: Regime,
    budget: usize,
    cfg: &TrialConfig,
) -> Result<Option<Witness>> {
    counterexample_search_from(f, regime, 0, budget, cfg)
}

/// Resumable search over trials `start..start + budget`.
pub fn counterexample_search_from(
    f: &FunctionUnderTest,
    regime: Regime,
    start: u64,
    budget: usize,
    cfg: &TrialConfig,
) -> Result<Option<Witness>> {
    check_compatible(f, cfg)?;
    let end = start + budget as u64;
    let mut lo = start;
    while lo < end {
        let hi = (lo + SEARCH_CHUNK).min(end);
        let outcomes = run_range(f, regime, cfg, lo..hi)?;
        if let Some(o) = outcomes.iter().find(|o| o.verdict == Verdict::Violation) {
            let (seed, pair) = trial_pair(regime, cfg, o.index)?;
            return Ok(Some(Witness::from_pair(o.index, seed, &pair, o.margin)));
        }
        lo = hi;
    }
    Ok(None)
}
