//! Randomized verification of operator monotonicity: dominating-pair trials
//! in both commutation regimes, counterexample search, and the sampled Pick
//! condition.

mod function;
mod pick;
mod trials;

pub use function::{Domain, FunctionSpec, FunctionUnderTest};
pub use pick::{fixed_probes, pick_check, PickReport, PickViolation, PICK_TOL};
pub use trials::{
    check_pair, check_pair_with, classify, counterexample_search, counterexample_search_from,
    run_trials, trial_dim, trial_pair, trial_seed, ConfigEcho, MonotonicityReport, TrialConfig,
    Verdict, Witness, DEFAULT_EPS, DEFAULT_VIOLATION_FLOOR,
};
