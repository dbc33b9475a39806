use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::calculus::ScalarField;
use crate::error::{Error, Result};
use crate::linalg::Interval;
use crate::stieltjes::{
    power_function_repr, q_alpha_eval, q_alpha_eval_complex, r_minus_eval, r_minus_eval_complex,
    ClassFunction, FunctionDefinition, QAlphaDefinition, QAlphaFunction, RMinusDefinition,
    RMinusFunction,
};

/// Where a function under test may be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `(0, ∞)ⁿ`
    PositiveOrthant,
    /// `(−∞, 0]ⁿ`
    NonPositiveOrthant,
    Everywhere,
}

impl Domain {
    pub fn contains(&self, point: &[f64]) -> bool {
        match self {
            Domain::PositiveOrthant => point.iter().all(|&x| x > 0.0),
            Domain::NonPositiveOrthant => point.iter().all(|&x| x <= 0.0),
            Domain::Everywhere => point.iter().all(|x| x.is_finite()),
        }
    }
}

/// Registry description of a function under test; echoed into reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum FunctionSpec {
    /// `(z₁…zₙ)^α`
    Power {
        n: usize,
        alpha: f64,
    },
    /// `Σ_j c_j (z₁…z_j)^{α_j}`
    PolyProduct {
        coefficients: Vec<f64>,
        alphas: Vec<f64>,
    },
    /// `λ − z₁z₂`
    Bilinear {
        lambda: f64,
    },
    QAlpha(QAlphaDefinition),
    RMinus(RMinusDefinition),
}

impl FunctionSpec {
    pub fn build(&self) -> Result<FunctionUnderTest> {
        match self {
            FunctionSpec::Power { n, alpha } => FunctionUnderTest::power(*n, *alpha),
            FunctionSpec::PolyProduct {
                coefficients,
                alphas,
            } => FunctionUnderTest::polyproduct(coefficients.clone(), alphas.clone()),
            FunctionSpec::Bilinear { lambda } => FunctionUnderTest::bilinear(*lambda),
            FunctionSpec::QAlpha(d) => match FunctionDefinition::QAlpha(d.clone()).build()? {
                ClassFunction::QAlpha(f) => Ok(FunctionUnderTest::qalpha(f)),
                ClassFunction::RMinus(_) => unreachable!(),
            },
            FunctionSpec::RMinus(d) => match FunctionDefinition::RMinus(d.clone()).build()? {
                ClassFunction::RMinus(f) => Ok(FunctionUnderTest::rminus(f)),
                ClassFunction::QAlpha(_) => unreachable!(),
            },
        }
    }
}

impl From<ClassFunction> for FunctionUnderTest {
    fn from(f: ClassFunction) -> Self {
        match f {
            ClassFunction::QAlpha(q) => FunctionUnderTest::qalpha(q),
            ClassFunction::RMinus(r) => FunctionUnderTest::rminus(r),
        }
    }
}

type RealEval = Arc<dyn Fn(&[f64]) -> Result<f64> + Send + Sync>;
type ComplexEval = Arc<dyn Fn(&[Complex64]) -> Result<Complex64> + Send + Sync>;

/// A real function of `n` variables with an optional analytic extension to
/// `Cⁿ`, tested for operator monotonicity on its domain.
#[derive(Clone)]
pub struct FunctionUnderTest {
    name: String,
    arity: usize,
    domain: Domain,
    spec: Option<FunctionSpec>,
    source: Option<ClassFunction>,
    real: RealEval,
    complex: Option<ComplexEval>,
}

impl fmt::Debug for FunctionUnderTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionUnderTest")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("domain", &self.domain)
            .field("spec", &self.spec)
            .field("has_complex", &self.complex.is_some())
            .finish()
    }
}

fn check_nonneg(label: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{label} must be >= 0, got {v}"
        )))
    }
}

/// `exp(α Σ_{i<k} Log z_i)`: the principal-log continuation of `(z₁…z_k)^α`.
fn complex_power_of_product(z: &[Complex64], alpha: f64) -> Complex64 {
    if alpha.fract() == 0.0 && alpha.abs() <= i32::MAX as f64 {
        let p: Complex64 = z.iter().product();
        return p.powi(alpha as i32);
    }
    let log_sum: Complex64 = z.iter().map(|v| v.ln()).sum();
    (alpha * log_sum).exp()
}

impl FunctionUnderTest {
    /// A caller-defined real function without complex extension.
    pub fn custom(
        name: impl Into<String>,
        arity: usize,
        domain: Domain,
        real: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            arity,
            domain,
            spec: None,
            source: None,
            real: Arc::new(move |x| Ok(real(x))),
            complex: None,
        }
    }

    /// Attaches an analytic extension used by the Pick check.
    pub fn with_complex(
        mut self,
        complex: impl Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.complex = Some(Arc::new(move |z| Ok(complex(z))));
        self
    }

    /// `(z₁…zₙ)^α` on `(0,∞)ⁿ`.
    pub fn power(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("arity must be positive".into()));
        }
        check_nonneg("alpha", alpha)?;
        Ok(Self {
            name: "power".into(),
            arity: n,
            domain: Domain::PositiveOrthant,
            spec: Some(FunctionSpec::Power { n, alpha }),
            source: Some(ClassFunction::QAlpha(power_function_repr(n, alpha)?)),
            real: Arc::new(move |x| Ok(x.iter().product::<f64>().powf(alpha))),
            complex: Some(Arc::new(move |z| Ok(complex_power_of_product(z, alpha)))),
        })
    }

    /// `Σ_j c_j (z₁…z_j)^{α_j}` on `(0,∞)ⁿ` with `n = coefficients.len()`.
    pub fn polyproduct(coefficients: Vec<f64>, alphas: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() || coefficients.len() != alphas.len() {
            return Err(Error::InvalidParameter(format!(
                "polyproduct needs equally many coefficients and exponents ({} vs {})",
                coefficients.len(),
                alphas.len()
            )));
        }
        for (&c, &a) in coefficients.iter().zip(&alphas) {
            check_nonneg("coefficient", c)?;
            check_nonneg("alpha", a)?;
        }
        let n = coefficients.len();
        let spec = FunctionSpec::PolyProduct {
            coefficients: coefficients.clone(),
            alphas: alphas.clone(),
        };
        let (c_real, a_real) = (coefficients.clone(), alphas.clone());
        Ok(Self {
            name: "polyproduct".into(),
            arity: n,
            domain: Domain::PositiveOrthant,
            spec: Some(spec),
            source: None,
            real: Arc::new(move |x| {
                let mut prefix = 1.0;
                let mut total = 0.0;
                for (k, (&c, &a)) in c_real.iter().zip(&a_real).enumerate() {
                    prefix *= x[k];
                    total += c * prefix.powf(a);
                }
                Ok(total)
            }),
            complex: Some(Arc::new(move |z| {
                Ok(coefficients
                    .iter()
                    .zip(&alphas)
                    .enumerate()
                    .map(|(k, (&c, &a))| complex_power_of_product(&z[..=k], a) * c)
                    .sum())
            })),
        })
    }

    /// `λ − z₁z₂` on `(−∞,0]²`.
    pub fn bilinear(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {lambda}"
            )));
        }
        Ok(Self {
            name: "bilinear".into(),
            arity: 2,
            domain: Domain::NonPositiveOrthant,
            spec: Some(FunctionSpec::Bilinear { lambda }),
            source: None,
            real: Arc::new(move |x| Ok(lambda - x[0] * x[1])),
            complex: Some(Arc::new(move |z| {
                Ok(Complex64::new(lambda, 0.0) - z[0] * z[1])
            })),
        })
    }

    pub fn qalpha(f: QAlphaFunction) -> Self {
        let (fr, fc) = (f.clone(), f.clone());
        Self {
            name: "qalpha".into(),
            arity: f.arity(),
            domain: Domain::PositiveOrthant,
            spec: Some(match FunctionDefinition::from(&f) {
                FunctionDefinition::QAlpha(d) => FunctionSpec::QAlpha(d),
                FunctionDefinition::RMinus(_) => unreachable!(),
            }),
            source: Some(ClassFunction::QAlpha(f)),
            real: Arc::new(move |x| q_alpha_eval(&fr, x)),
            complex: Some(Arc::new(move |z| q_alpha_eval_complex(&fc, z))),
        }
    }

    pub fn rminus(p: RMinusFunction) -> Self {
        let (pr, pc) = (p.clone(), p.clone());
        Self {
            name: "rminus".into(),
            arity: p.arity(),
            domain: Domain::NonPositiveOrthant,
            spec: Some(match FunctionDefinition::from(&p) {
                FunctionDefinition::RMinus(d) => FunctionSpec::RMinus(d),
                FunctionDefinition::QAlpha(_) => unreachable!(),
            }),
            source: Some(ClassFunction::RMinus(p)),
            real: Arc::new(move |w| r_minus_eval(&pr, w)),
            complex: Some(Arc::new(move |w| r_minus_eval_complex(&pc, w))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn spec(&self) -> Option<&FunctionSpec> {
        self.spec.as_ref()
    }

    pub fn source_repr(&self) -> Option<&ClassFunction> {
        self.source.as_ref()
    }

    pub fn has_complex_extension(&self) -> bool {
        self.complex.is_some()
    }

    /// Sampling box used when the caller does not choose one.
    pub fn default_box(&self) -> Interval {
        match (&self.spec, self.domain) {
            (Some(FunctionSpec::Bilinear { .. }), _) => Interval {
                lo: -3.0,
                hi: -0.01,
            },
            (_, Domain::NonPositiveOrthant) => Interval {
                lo: -10.0,
                hi: -0.01,
            },
            (_, Domain::PositiveOrthant) => Interval { lo: 0.1, hi: 10.0 },
            (_, Domain::Everywhere) => Interval { lo: -5.0, hi: 5.0 },
        }
    }

    pub fn eval_real(&self, x: &[f64]) -> Result<f64> {
        self.check_arity(x.len())?;
        if !self.domain.contains(x) {
            return Err(Error::DomainViolation {
                function: self.name.clone(),
                point: x.to_vec(),
            });
        }
        (self.real)(x)
    }

    pub fn eval_complex(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_arity(z.len())?;
        let complex = self
            .complex
            .as_ref()
            .ok_or_else(|| Error::MissingComplexExtension {
                function: self.name.clone(),
            })?;
        complex(z)
    }

    fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: len,
            });
        }
        Ok(())
    }
}

impl ScalarField for FunctionUnderTest {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, point: &[f64]) -> Result<f64> {
        self.eval_real(point)
    }
}
