use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opmono::linalg::{Interval, Regime};
use opmono::monotonicity::FunctionUnderTest;
use opmono::stieltjes::{Atom, AtomicMeasure, FunctionDefinition, QAlphaFunction, RMinusFunction};
use opmono::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "opmono",
    version,
    about = "Operator-monotonicity checks for functions of several commuting matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample dominating pairs and check that f(A) <= f(B).
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Compare f(A)^-1 with its Stieltjes-type integral over sampled tuples.
    #[command(allow_negative_numbers = true)]
    Lemma1(Lemma1Args),
    /// Evaluate a function (and its transform) at points.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Check that the complex extension maps the poly-upper-half-plane upward.
    #[command(allow_negative_numbers = true)]
    Pick(PickArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionName {
    Power,
    Qalpha,
    Rminus,
    Polyproduct,
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Cross,
    Tuple,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Cross => Regime::Cross,
            RegimeArg::Tuple => Regime::Tuple,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Both,
    Eigen,
    Integral,
}

/// Function selection shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Registry function.
    #[arg(long, value_enum, conflicts_with = "function_file")]
    pub function: Option<FunctionName>,
    /// JSON definition of a qalpha or rminus function.
    #[arg(long, value_name = "PATH")]
    pub function_file: Option<PathBuf>,
    /// Number of variables (power, qalpha, rminus).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Exponent (power, qalpha).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Additive constant gamma (qalpha, rminus).
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Constant lambda (rminus, bilinear).
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Atoms as JSON, e.g. '[{"xi":[0,0],"w":1}]'; defaults to a unit mass at the origin.
    #[arg(long)]
    pub atoms: Option<String>,
    /// Comma-separated coefficients (polyproduct).
    #[arg(long, value_delimiter = ',')]
    pub coefficients: Vec<f64>,
    /// Comma-separated exponents (polyproduct).
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Fixed matrix dimension; overrides --d-min/--d-max.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub d_min: Option<usize>,
    #[arg(long)]
    pub d_max: Option<usize>,
    /// Lower end of the spectral sampling box.
    #[arg(long)]
    pub box_lo: Option<f64>,
    /// Upper end of the spectral sampling box.
    #[arg(long)]
    pub box_hi: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// Defaults to cross for rminus and tuple otherwise.
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Stop at the first violation found within this many trials.
    #[arg(long, conflicts_with = "trials")]
    pub budget: Option<usize>,
    #[arg(long)]
    pub gap_lo: Option<f64>,
    #[arg(long)]
    pub gap_hi: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub violation_floor: Option<f64>,
    #[arg(long, default_value = "report.json")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct Lemma1Args {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub route: RouteArg,
    /// Quadrature nodes for the integral route.
    #[arg(long, default_value_t = 400)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_eigen: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_integral: f64,
    #[arg(long, default_value = "report.json")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Comma-separated coordinates; repeat for several points.
    #[arg(long, required = true, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct PickArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "report.json")]
    pub output: PathBuf,
}

fn parse_point(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad coordinate {t:?}: {e}"))
        })
        .collect()
}

fn required(value: Option<f64>, flag: &str, function: &str) -> Result<f64> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for {function}")))
}

impl FunctionArgs {
    pub fn is_empty(&self) -> bool {
        self.function.is_none() && self.function_file.is_none()
    }

    fn measure(&self, n: usize) -> Result<AtomicMeasure> {
        match &self.atoms {
            None => Ok(AtomicMeasure::dirac_origin(n)),
            Some(text) => {
                let atoms: Vec<Atom> = serde_json::from_str(text)
                    .map_err(|e| Error::InvalidParameter(format!("--atoms: {e}")))?;
                AtomicMeasure::new(n, atoms)
            }
        }
    }

    pub fn build(&self) -> Result<FunctionUnderTest> {
        if let Some(path) = &self.function_file {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
            })?;
            return Ok(FunctionDefinition::from_json(&text)?.build()?.into());
        }
        let name = self.function.ok_or_else(|| {
            Error::InvalidParameter("one of --function or --function-file is required".into())
        })?;
        match name {
            FunctionName::Power => {
                FunctionUnderTest::power(self.n, required(self.alpha, "alpha", "power")?)
            }
            FunctionName::Qalpha => {
                let alpha = required(self.alpha, "alpha", "qalpha")?;
                let f = QAlphaFunction::new(alpha, self.gamma, self.measure(self.n)?)?;
                Ok(FunctionUnderTest::qalpha(f))
            }
            FunctionName::Rminus => {
                let p = RMinusFunction::new(self.lambda, self.gamma, self.measure(self.n)?)?;
                Ok(FunctionUnderTest::rminus(p))
            }
            FunctionName::Polyproduct => {
                let coefficients = if self.coefficients.is_empty() {
                    vec![1.0; self.n]
                } else {
                    self.coefficients.clone()
                };
                let alphas = if self.alphas.is_empty() {
                    vec![1.0 / coefficients.len() as f64; coefficients.len()]
                } else {
                    self.alphas.clone()
                };
                FunctionUnderTest::polyproduct(coefficients, alphas)
            }
            FunctionName::Bilinear => FunctionUnderTest::bilinear(self.lambda),
        }
    }
}

impl SamplingArgs {
    /// `(d_min, d_max)` after applying `--d` and the given defaults.
    pub fn dims(&self, default: (usize, usize)) -> (usize, usize) {
        match self.d {
            Some(d) => (d, d),
            None => (
                self.d_min.unwrap_or(default.0),
                self.d_max.unwrap_or(default.1),
            ),
        }
    }

    pub fn bounds(&self, default: Interval) -> Result<Interval> {
        Interval::new(
            self.box_lo.unwrap_or(default.lo),
            self.box_hi.unwrap_or(default.hi),
        )
    }
}
