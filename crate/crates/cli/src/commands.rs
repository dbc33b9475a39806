use std::path::Path;

use opmono::linalg::{sample_commuting_tuple, Interval, Regime};
use opmono::monotonicity::{
    counterexample_search, run_trials, trial_dim, trial_seed, FunctionSpec, FunctionUnderTest,
    MonotonicityReport, PickReport, TrialConfig,
};
use opmono::representation::{verify_lemma1, Route};
use opmono::stieltjes::{
    q_alpha_eval, r_minus_eval, stieltjes_transform_real, ClassFunction, QAlphaFunction,
};
use opmono::{Error, Result};
use serde::Serialize;

use crate::args::{EvalArgs, FunctionName, Lemma1Args, PickArgs, RouteArg, VerifyArgs};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 2,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn write_report(path: &Path, json: &str) -> Result<()> {
    std::fs::write(path, format!("{json}\n"))
        .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

fn row(label: &str, value: impl std::fmt::Display) {
    println!("{label:<14}{value}");
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let f = args.function.build()?;
    let regime = match args.regime {
        Some(r) => r.into(),
        None if f.name() == "rminus" => Regime::Cross,
        None => Regime::Tuple,
    };
    let mut cfg = TrialConfig::for_function(&f, args.sampling.seed);
    let (d_min, d_max) = args.sampling.dims((cfg.d_min, cfg.d_max));
    cfg = cfg
        .with_dims(d_min, d_max)
        .with_box(args.sampling.bounds(cfg.bounds)?);
    cfg.gaps = Interval::new(
        args.gap_lo.unwrap_or(cfg.gaps.lo),
        args.gap_hi.unwrap_or(cfg.gaps.hi),
    )?;
    cfg.eps = args.eps.unwrap_or(cfg.eps);
    cfg.violation_floor = args.violation_floor.unwrap_or(cfg.violation_floor);
    cfg.validate()?;

    let report = match args.budget {
        None => run_trials(&f, regime, args.trials, &cfg)?,
        Some(budget) => {
            // Re-run the examined prefix so the report carries full statistics.
            let examined = match counterexample_search(&f, regime, budget, &cfg)? {
                Some(w) => w.trial as usize + 1,
                None => budget,
            };
            run_trials(&f, regime, examined, &cfg)?
        }
    };
    write_report(&args.output, &report.to_json())?;
    print_verify_summary(&report, &args.output);
    Ok(Outcome::from_pass(report.passed()))
}

fn print_verify_summary(report: &MonotonicityReport, output: &Path) {
    row("function", &report.function);
    row("regime", report.regime);
    row("trials", report.trials);
    row("violations", report.violations);
    row("inconclusive", report.inconclusive);
    match report.worst_margin {
        Some(m) => row("worst margin", format!("{m:.3e}")),
        None => row("worst margin", "-"),
    }
    if let Some(w) = &report.witness {
        row(
            "witness",
            format!(
                "trial {} (seed {}), d = {}, margin {:.3e}",
                w.trial, w.seed, w.d, w.margin
            ),
        );
    }
    row("report", output.display());
    let verdict = if report.violations > 0 {
        "VIOLATION"
    } else if report.inconclusive > 0 {
        "PASS (with inconclusive pairs)"
    } else {
        "PASS"
    };
    row("result", verdict);
}

#[derive(Debug, Serialize)]
struct Lemma1Row {
    trial: usize,
    seed: u64,
    d: usize,
    eigen: Option<f64>,
    integral: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Lemma1Report {
    function: Option<FunctionSpec>,
    route: &'static str,
    nodes: usize,
    trials: usize,
    seed: u64,
    d_min: usize,
    d_max: usize,
    #[serde(rename = "box")]
    bounds: Interval,
    tol_eigen: f64,
    tol_integral: f64,
    max_eigen: Option<f64>,
    max_integral: Option<f64>,
    passed: bool,
    rows: Vec<Lemma1Row>,
}

fn max_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    values.flatten().reduce(f64::max)
}

pub fn lemma1(args: &Lemma1Args) -> Result<Outcome> {
    let mut spec = args.function.clone();
    if spec.is_empty() {
        spec.function = Some(FunctionName::Qalpha);
        spec.alpha = spec.alpha.or(Some(0.5));
    }
    let f = spec.build()?;
    let q: QAlphaFunction = match f.source_repr() {
        Some(ClassFunction::QAlpha(q)) => q.clone(),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "lemma1 needs a qalpha representation; {} has none",
                f.name()
            )))
        }
    };
    let (d_min, d_max) = args.sampling.dims((1, 6));
    let bounds = args.sampling.bounds(Interval { lo: 0.1, hi: 10.0 })?;
    let cfg = TrialConfig::for_function(&f, args.sampling.seed)
        .with_dims(d_min, d_max)
        .with_box(bounds);
    cfg.validate()?;
    if args.nodes < 2 {
        return Err(Error::InvalidParameter("--nodes must be at least 2".into()));
    }
    let (use_eigen, use_integral) = match args.route {
        RouteArg::Both => (true, true),
        RouteArg::Eigen => (true, false),
        RouteArg::Integral => (false, true),
    };

    let mut rows = Vec::with_capacity(args.trials);
    for k in 0..args.trials {
        let seed = trial_seed(cfg.seed, k as u64);
        let d = trial_dim(&cfg, seed);
        let tuple = sample_commuting_tuple(q.arity(), d, bounds, seed)?;
        let eigen = use_eigen
            .then(|| verify_lemma1(&tuple, &q, Route::Eigen))
            .transpose()?;
        let integral = use_integral
            .then(|| verify_lemma1(&tuple, &q, Route::Integral { nodes: args.nodes }))
            .transpose()?;
        rows.push(Lemma1Row {
            trial: k,
            seed,
            d,
            eigen,
            integral,
        });
    }

    let max_eigen = max_of(rows.iter().map(|r| r.eigen));
    let max_integral = max_of(rows.iter().map(|r| r.integral));
    let passed = max_eigen.is_none_or(|m| m <= args.tol_eigen)
        && max_integral.is_none_or(|m| m <= args.tol_integral);

    let report = Lemma1Report {
        function: f.spec().cloned(),
        route: match args.route {
            RouteArg::Both => "both",
            RouteArg::Eigen => "eigen",
            RouteArg::Integral => "integral",
        },
        nodes: args.nodes,
        trials: args.trials,
        seed: cfg.seed,
        d_min,
        d_max,
        bounds,
        tol_eigen: args.tol_eigen,
        tol_integral: args.tol_integral,
        max_eigen,
        max_integral,
        passed,
        rows,
    };
    let json = serde_json::to_string_pretty(&report).expect("reports always serialize");
    write_report(&args.output, &json)?;
    println!(
        "{:>5} {:>3} {:>12} {:>12}",
        "trial", "d", "eigen", "integral"
    );
    let cell = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.3e}"));
    for r in &report.rows {
        println!(
            "{:>5} {:>3} {:>12} {:>12}",
            r.trial,
            r.d,
            cell(r.eigen),
            cell(r.integral)
        );
    }
    println!();
    row("max eigen", cell(max_eigen));
    row("max integral", cell(max_integral));
    row("report", args.output.display());
    row("result", if passed { "PASS" } else { "FAIL" });
    Ok(Outcome::from_pass(passed))
}

fn eval_point(f: &FunctionUnderTest, x: &[f64]) -> Result<String> {
    if x.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: x.len(),
        });
    }
    match f.source_repr() {
        Some(ClassFunction::QAlpha(q)) => {
            let s = stieltjes_transform_real(q.measure(), x, q.alpha())?;
            let v = q_alpha_eval(q, x)?;
            Ok(format!("x = {x:?}  S = {s:?}  f = {v:?}"))
        }
        Some(ClassFunction::RMinus(p)) => {
            let v = r_minus_eval(p, x)?;
            let neg: Vec<f64> = x.iter().map(|&w| -w).collect();
            let s = stieltjes_transform_real(p.measure(), &neg, 1.0)?;
            Ok(format!("w = {x:?}  S(-w) = {s:?}  psi = {v:?}"))
        }
        None => Ok(format!("x = {x:?}  f = {:?}", f.eval_real(x)?)),
    }
}

pub fn eval(args: &EvalArgs) -> Result<Outcome> {
    let f = args.function.build()?;
    let lines = args
        .point
        .iter()
        .map(|x| eval_point(&f, x))
        .collect::<Result<Vec<_>>>()?;
    for line in lines {
        println!("{line}");
    }
    Ok(Outcome::Pass)
}

pub fn pick(args: &PickArgs) -> Result<Outcome> {
    let f = args.function.build()?;
    let report = PickReport::run(&f, args.samples, args.seed)?;
    write_report(&args.output, &report.to_json())?;
    row("function", &report.function);
    row("points", report.probes + report.samples);
    row("violations", report.violations);
    if let Some(w) = &report.worst {
        let z: Vec<String> =
            w.z.iter()
                .map(|c| format!("{:.6}{:+.6}i", c.re, c.im))
                .collect();
        row("worst point", format!("({})", z.join(", ")));
        row("worst Im f", format!("{:.6e}", w.im));
    }
    row("report", args.output.display());
    row(
        "result",
        if report.violations == 0 {
            "PASS"
        } else {
            "VIOLATION"
        },
    );
    Ok(Outcome::from_pass(report.violations == 0))
}
