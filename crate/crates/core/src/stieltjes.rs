//! Atomic measures on `R₊ⁿ`, their (generalized) n-dimensional Stieltjes
//! transforms, and the function classes built on them.
//!
//! For a positive measure `τ` and exponent `α ≥ 0`
//!
//! ```text
//! S^α τ(z) = ∫ dτ(ξ) / ((ξ₁+z₁)…(ξₙ+zₙ))^α
//! ```
//!
//! A [`QAlphaFunction`] is the positive function `f` with `1/f = γ + S^α τ`,
//! and an [`RMinusFunction`] is the function `ψ` on `(−∞,0]ⁿ` with
//! `1/(λ − ψ(−z)) = γ + S¹τ(z)`.
//!
//! Complex evaluation uses the branch `exp(−α Σ_j Log(ξ_j + z_j))` with the
//! principal logarithm of every factor. On `(0,∞)ⁿ` this coincides with the
//! real power of the product, and on the poly-upper-half-plane it is the
//! analytic continuation of that real function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominators `γ + S^α τ` at or below this value are rejected.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

/// One point mass `w · δ_ξ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub xi: Vec<f64>,
    pub w: f64,
}

/// Finite positive atomic measure on `R₊ⁿ`. May be the zero measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicMeasure {
    n: usize,
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(n: usize, atoms: Vec<Atom>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "measure dimension must be positive".into(),
            ));
        }
        for (k, atom) in atoms.iter().enumerate() {
            if atom.xi.len() != n {
                return Err(Error::DimMismatch {
                    expected: n,
                    found: atom.xi.len(),
                });
            }
            if !atom.xi.iter().all(|&x| x.is_finite() && x >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "atom {k} has a coordinate outside [0, inf): {:?}",
                    atom.xi
                )));
            }
            if !(atom.w.is_finite() && atom.w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "atom {k} has non-positive weight {}",
                    atom.w
                )));
            }
        }
        Ok(Self { n, atoms })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            atoms: Vec::new(),
        }
    }

    /// Unit mass at the origin.
    pub fn dirac_origin(n: usize) -> Self {
        Self {
            n,
            atoms: vec![Atom {
                xi: vec![0.0; n],
                w: 1.0,
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }

    /// `c · τ` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.n,
            self.atoms
                .iter()
                .map(|a| Atom {
                    xi: a.xi.clone(),
                    w: a.w * c,
                })
                .collect(),
        )
    }

    /// `τ + σ` as the concatenation of atom lists.
    pub fn sum(&self, other: &AtomicMeasure) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(Self { n: self.n, atoms })
    }
}

fn is_integer(alpha: f64) -> bool {
    alpha.fract() == 0.0 && alpha.abs() <= i32::MAX as f64
}

fn check_point_len(m: &AtomicMeasure, len: usize) -> Result<()> {
    if len != m.n {
        return Err(Error::DimMismatch {
            expected: m.n,
            found: len,
        });
    }
    Ok(())
}

/// `S^α τ(z)` for complex `z`.
pub fn stieltjes_transform(m: &AtomicMeasure, z: &[Complex64], alpha: f64) -> Result<Complex64> {
    check_point_len(m, z.len())?;
    let mut total = Complex64::new(0.0, 0.0);
    for (k, atom) in m.atoms.iter().enumerate() {
        if alpha == 0.0 {
            total += atom.w;
            continue;
        }
        let factors: Vec<Complex64> = atom.xi.iter().zip(z).map(|(&x, &zj)| zj + x).collect();
        if factors.iter().any(|f| f.re == 0.0 && f.im == 0.0) {
            return Err(Error::SingularAtom { atom: k });
        }
        let term = if is_integer(alpha) {
            let product: Complex64 = factors.iter().product();
            product.powi(-(alpha as i32))
        } else {
            if factors.iter().any(|f| f.im == 0.0 && f.re < 0.0) {
                return Err(Error::BranchCut { atom: k, alpha });
            }
            let log_sum: Complex64 = factors.iter().map(|f| f.ln()).sum();
            (-alpha * log_sum).exp()
        };
        total += term * atom.w;
    }
    Ok(total)
}

/// `S^α τ(x)` for real `x`.
pub fn stieltjes_transform_real(m: &AtomicMeasure, x: &[f64], alpha: f64) -> Result<f64> {
    check_point_len(m, x.len())?;
    let mut total = 0.0;
    for (k, atom) in m.atoms.iter().enumerate() {
        if alpha == 0.0 {
            total += atom.w;
            continue;
        }
        let product: f64 = atom.xi.iter().zip(x).map(|(&xi, &xj)| xi + xj).product();
        if product == 0.0 {
            return Err(Error::SingularAtom { atom: k });
        }
        let term = if is_integer(alpha) {
            product.powi(-(alpha as i32))
        } else {
            if atom.xi.iter().zip(x).any(|(&xi, &xj)| xi + xj < 0.0) {
                return Err(Error::BranchCut { atom: k, alpha });
            }
            product.powf(-alpha)
        };
        total += atom.w * term;
    }
    Ok(total)
}

/// Positive function `f` with `1/f = γ + S^α τ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QAlphaFunction {
    alpha: f64,
    gamma: f64,
    measure: AtomicMeasure,
}

impl QAlphaFunction {
    pub fn new(alpha: f64, gamma: f64, measure: AtomicMeasure) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be >= 0, got {alpha}"
            )));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be finite, got {gamma}"
            )));
        }
        Ok(Self {
            alpha,
            gamma,
            measure,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn arity(&self) -> usize {
        self.measure.dim()
    }

    /// `γ + S^α τ(x)`, the reciprocal of the function value.
    pub fn reciprocal(&self, x: &[f64]) -> Result<f64> {
        Ok(self.gamma + stieltjes_transform_real(&self.measure, x, self.alpha)?)
    }
}

/// Evaluates `f(x) = 1/(γ + S^α τ(x))` for `x` in `[0, ∞)ⁿ`.
pub fn q_alpha_eval(f: &QAlphaFunction, x: &[f64]) -> Result<f64> {
    if x.iter().any(|&v| v.is_nan() || v < 0.0) {
        return Err(Error::DomainViolation {
            function: "qalpha".into(),
            point: x.to_vec(),
        });
    }
    let denom = f.reciprocal(x)?;
    if denom <= DENOMINATOR_FLOOR {
        return Err(Error::NonPositiveDenominator { value: denom });
    }
    Ok(1.0 / denom)
}

/// `1/(γ + S^α τ(z))` on the principal-log branch.
pub fn q_alpha_eval_complex(f: &QAlphaFunction, z: &[Complex64]) -> Result<Complex64> {
    let denom = stieltjes_transform(&f.measure, z, f.alpha)? + f.gamma;
    if denom.norm() <= DENOMINATOR_FLOOR {
        return Err(Error::NonPositiveDenominator {
            value: denom.norm(),
        });
    }
    Ok(denom.inv())
}

/// `(x₁…xₙ)^α` as a member of the class: unit mass at the origin, `γ = 0`.
pub fn power_function_repr(n: usize, alpha: f64) -> Result<QAlphaFunction> {
    if n == 0 {
        return Err(Error::InvalidParameter("arity must be positive".into()));
    }
    QAlphaFunction::new(alpha, 0.0, AtomicMeasure::dirac_origin(n))
}

/// `ψ` on `(−∞,0]ⁿ` given by `1/(λ − ψ(−z)) = γ + Sτ(z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RMinusFunction {
    lambda: f64,
    gamma: f64,
    measure: AtomicMeasure,
}

impl RMinusFunction {
    pub fn new(lambda: f64, gamma: f64, measure: AtomicMeasure) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {lambda}"
            )));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be >= 0, got {gamma}"
            )));
        }
        Ok(Self {
            lambda,
            gamma,
            measure,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn arity(&self) -> usize {
        self.measure.dim()
    }
}

/// `ψ(w) = λ − 1/(γ + Sτ(−w))` for `w` in `(−∞,0]ⁿ`.
pub fn r_minus_eval(p: &RMinusFunction, w: &[f64]) -> Result<f64> {
    if w.iter().any(|&v| v.is_nan() || v > 0.0) {
        return Err(Error::DomainViolation {
            function: "rminus".into(),
            point: w.to_vec(),
        });
    }
    let neg: Vec<f64> = w.iter().map(|&v| -v).collect();
    let denom = p.gamma + stieltjes_transform_real(&p.measure, &neg, 1.0)?;
    if denom <= DENOMINATOR_FLOOR {
        return Err(Error::NonPositiveDenominator { value: denom });
    }
    Ok(p.lambda - 1.0 / denom)
}

/// `λ − 1/(γ + Sτ(−w))` for complex `w`.
pub fn r_minus_eval_complex(p: &RMinusFunction, w: &[Complex64]) -> Result<Complex64> {
    let neg: Vec<Complex64> = w.iter().map(|&v| -v).collect();
    let denom = stieltjes_transform(&p.measure, &neg, 1.0)? + p.gamma;
    if denom.norm() <= DENOMINATOR_FLOOR {
        return Err(Error::NonPositiveDenominator {
            value: denom.norm(),
        });
    }
    Ok(Complex64::new(p.lambda, 0.0) - denom.inv())
}

/// Product `τ₁ ⊗ … ⊗ τₙ` of one-dimensional measures.
pub fn product_measure(parts: &[AtomicMeasure]) -> Result<AtomicMeasure> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("product of zero measures".into()));
    }
    if let Some(bad) = parts.iter().find(|p| p.dim() != 1) {
        return Err(Error::DimMismatch {
            expected: 1,
            found: bad.dim(),
        });
    }
    let mut atoms = vec![Atom {
        xi: Vec::with_capacity(parts.len()),
        w: 1.0,
    }];
    for part in parts {
        atoms = atoms
            .iter()
            .flat_map(|prefix| {
                part.atoms().iter().map(move |a| {
                    let mut xi = prefix.xi.clone();
                    xi.push(a.xi[0]);
                    Atom {
                        xi,
                        w: prefix.w * a.w,
                    }
                })
            })
            .collect();
    }
    AtomicMeasure::new(parts.len(), atoms)
}

/// On-disk definition of a function from either class.
///
/// ```json
/// {"kind":"qalpha","n":2,"alpha":0.5,"gamma":0.0,"atoms":[{"xi":[0.0,0.0],"w":1.0}]}
/// {"kind":"rminus","n":2,"lambda":1.0,"gamma":0.0,"atoms":[{"xi":[0.0,0.0],"w":1.0}]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FunctionDefinition {
    #[serde(rename = "qalpha")]
    QAlpha(QAlphaDefinition),
    #[serde(rename = "rminus")]
    RMinus(RMinusDefinition),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QAlphaDefinition {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMinusDefinition {
    pub n: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub atoms: Vec<Atom>,
}

/// A validated function from either class.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassFunction {
    QAlpha(QAlphaFunction),
    RMinus(RMinusFunction),
}

impl FunctionDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("function definition: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("definitions always serialize")
    }

    pub fn build(&self) -> Result<ClassFunction> {
        match self {
            FunctionDefinition::QAlpha(d) => Ok(ClassFunction::QAlpha(QAlphaFunction::new(
                d.alpha,
                d.gamma,
                AtomicMeasure::new(d.n, d.atoms.clone())?,
            )?)),
            FunctionDefinition::RMinus(d) => Ok(ClassFunction::RMinus(RMinusFunction::new(
                d.lambda,
                d.gamma,
                AtomicMeasure::new(d.n, d.atoms.clone())?,
            )?)),
        }
    }
}

impl From<&QAlphaFunction> for FunctionDefinition {
    fn from(f: &QAlphaFunction) -> Self {
        FunctionDefinition::QAlpha(QAlphaDefinition {
            n: f.arity(),
            alpha: f.alpha,
            gamma: f.gamma,
            atoms: f.measure.atoms.clone(),
        })
    }
}

impl From<&RMinusFunction> for FunctionDefinition {
    fn from(f: &RMinusFunction) -> Self {
        FunctionDefinition::RMinus(RMinusDefinition {
            n: f.arity(),
            lambda: f.lambda,
            gamma: f.gamma,
            atoms: f.measure.atoms.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn atom(xi: &[f64], w: f64) -> Atom {
        Atom { xi: xi.to_vec(), w }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transform_examples() {
        let m = AtomicMeasure::dirac_origin(2);
        assert_eq!(stieltjes_transform_real(&m, &[1.0, 2.0], 1.0).unwrap(), 0.5);
        let m = AtomicMeasure::new(2, vec![atom(&[1.0, 1.0], 2.0)]).unwrap();
        assert_eq!(stieltjes_transform_real(&m, &[1.0, 1.0], 0.5).unwrap(), 1.0);
        let z = [c(1.0, 0.0), c(1.0, 0.0)];
        let v = stieltjes_transform(&m, &z, 0.5).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn two_atoms_add() {
        let a = AtomicMeasure::new(2, vec![atom(&[0.5, 2.0], 1.5)]).unwrap();
        let b = AtomicMeasure::new(2, vec![atom(&[3.0, 0.0], 0.25)]).unwrap();
        let both = a.sum(&b).unwrap();
        let z = [c(0.7, 1.3), c(-2.0, 0.4)];
        let lhs = stieltjes_transform(&both, &z, 0.4).unwrap();
        let rhs =
            stieltjes_transform(&a, &z, 0.4).unwrap() + stieltjes_transform(&b, &z, 0.4).unwrap();
        assert!((lhs - rhs).norm() <= 1e-15);
    }

    #[test]
    fn singular_and_branch_cut() {
        let m = AtomicMeasure::dirac_origin(2);
        assert!(matches!(
            stieltjes_transform_real(&m, &[0.0, 1.0], 0.5),
            Err(Error::SingularAtom { atom: 0 })
        ));
        assert!(matches!(
            stieltjes_transform_real(&m, &[-1.0, 1.0], 0.5),
            Err(Error::BranchCut { .. })
        ));
        assert!(matches!(
            stieltjes_transform(&m, &[c(-1.0, 0.0), c(1.0, 1.0)], 0.5),
            Err(Error::BranchCut { .. })
        ));
        // Integer exponents are defined across the cut.
        assert_eq!(
            stieltjes_transform_real(&m, &[-1.0, 2.0], 1.0).unwrap(),
            -0.5
        );
        // The zeroth power ignores the singularity.
        assert_eq!(stieltjes_transform_real(&m, &[0.0, 0.0], 0.0).unwrap(), 1.0);
    }

    #[test]
    fn q_alpha_examples() {
        let f = QAlphaFunction::new(1.0, 0.0, AtomicMeasure::dirac_origin(2)).unwrap();
        assert_eq!(q_alpha_eval(&f, &[2.0, 3.0]).unwrap(), 6.0);
        let f = QAlphaFunction::new(0.5, 0.0, AtomicMeasure::dirac_origin(2)).unwrap();
        assert_eq!(q_alpha_eval(&f, &[4.0, 9.0]).unwrap(), 6.0);
        let f = QAlphaFunction::new(0.7, 2.0, AtomicMeasure::zero(3)).unwrap();
        for x in [[0.1, 0.2, 0.3], [5.0, 1.0, 9.0]] {
            assert_eq!(q_alpha_eval(&f, &x).unwrap(), 0.5);
        }
    }

    #[test]
    fn q_alpha_rejects_nonpositive_denominator() {
        let f = QAlphaFunction::new(1.0, -1.0, AtomicMeasure::dirac_origin(1)).unwrap();
        assert!(matches!(
            q_alpha_eval(&f, &[2.0]),
            Err(Error::NonPositiveDenominator { .. })
        ));
        let f = QAlphaFunction::new(1.0, 0.0, AtomicMeasure::zero(1)).unwrap();
        assert!(matches!(
            q_alpha_eval(&f, &[2.0]),
            Err(Error::NonPositiveDenominator { .. })
        ));
        assert!(QAlphaFunction::new(-0.1, 0.0, AtomicMeasure::zero(1)).is_err());
    }

    #[test]
    fn power_repr_examples() {
        let f = power_function_repr(2, 0.5).unwrap();
        assert_abs_diff_eq!(q_alpha_eval(&f, &[4.0, 9.0]).unwrap(), 6.0, epsilon = 1e-14);
        let f = power_function_repr(3, 1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(
            q_alpha_eval(&f, &[1.0, 8.0, 27.0]).unwrap(),
            6.0,
            epsilon = 1e-13
        );
        let f = power_function_repr(1, 1.0).unwrap();
        assert_eq!(q_alpha_eval(&f, &[5.0]).unwrap(), 5.0);
    }

    #[test]
    fn r_minus_examples() {
        let p = RMinusFunction::new(1.0, 0.0, AtomicMeasure::dirac_origin(2)).unwrap();
        assert_eq!(r_minus_eval(&p, &[-1.0, -2.0]).unwrap(), -1.0);
        let p = RMinusFunction::new(1.0, 1.0, AtomicMeasure::zero(2)).unwrap();
        assert_eq!(r_minus_eval(&p, &[-3.0, -0.5]).unwrap(), 0.0);
        let p = RMinusFunction::new(
            2.0,
            0.0,
            AtomicMeasure::new(2, vec![atom(&[1.0, 1.0], 1.0)]).unwrap(),
        )
        .unwrap();
        assert_eq!(r_minus_eval(&p, &[0.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(
            r_minus_eval(&p, &[0.5, -1.0]),
            Err(Error::DomainViolation { .. })
        ));
        assert!(RMinusFunction::new(0.0, 0.0, AtomicMeasure::zero(1)).is_err());
        assert!(RMinusFunction::new(1.0, -0.5, AtomicMeasure::zero(1)).is_err());
    }

    #[test]
    fn product_measure_examples() {
        let d0 = AtomicMeasure::dirac_origin(1);
        let p = product_measure(&[d0.clone(), d0]).unwrap();
        assert_eq!(p.atoms(), &[atom(&[0.0, 0.0], 1.0)]);

        let a = AtomicMeasure::new(1, vec![atom(&[1.0], 2.0)]).unwrap();
        let b = AtomicMeasure::new(1, vec![atom(&[3.0], 5.0)]).unwrap();
        let p = product_measure(&[a, b]).unwrap();
        assert_eq!(p.atoms(), &[atom(&[1.0, 3.0], 10.0)]);

        assert!(matches!(
            product_measure(&[AtomicMeasure::dirac_origin(2)]),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn product_measure_factorizes() {
        let a = AtomicMeasure::new(1, vec![atom(&[0.0], 1.0), atom(&[2.0], 0.5)]).unwrap();
        let b = AtomicMeasure::new(
            1,
            vec![atom(&[1.0], 3.0), atom(&[0.5], 0.2), atom(&[4.0], 1.1)],
        )
        .unwrap();
        let p = product_measure(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(p.atoms().len(), 6);
        let x = [0.8, 2.5];
        let alpha = 0.35;
        let direct = stieltjes_transform_real(&a, &x[..1], alpha).unwrap()
            * stieltjes_transform_real(&b, &x[1..], alpha).unwrap();
        let joint = stieltjes_transform_real(&p, &x, alpha).unwrap();
        assert!((direct - joint).abs() <= 1e-12 * direct.abs());
    }

    #[test]
    fn measure_validation() {
        assert!(AtomicMeasure::new(2, vec![atom(&[1.0], 1.0)]).is_err());
        assert!(AtomicMeasure::new(1, vec![atom(&[-1.0], 1.0)]).is_err());
        assert!(AtomicMeasure::new(1, vec![atom(&[1.0], 0.0)]).is_err());
        assert!(AtomicMeasure::new(1, vec![]).unwrap().is_zero());
    }

    #[test]
    fn json_definitions() {
        let q =
            r#"{"kind":"qalpha","n":2,"alpha":0.5,"gamma":0.0,"atoms":[{"xi":[0.0,0.0],"w":1.0}]}"#;
        let def = FunctionDefinition::from_json(q).unwrap();
        assert_eq!(def.to_json(), q);
        match def.build().unwrap() {
            ClassFunction::QAlpha(f) => assert_eq!(f, power_function_repr(2, 0.5).unwrap()),
            other => panic!("unexpected {other:?}"),
        }

        let r = r#"{"kind":"rminus","n":2,"lambda":1.0,"gamma":0.0,"atoms":[{"xi":[0.0,0.0],"w":1.0}]}"#;
        let def = FunctionDefinition::from_json(r).unwrap();
        assert_eq!(def.to_json(), r);
        assert!(matches!(def.build().unwrap(), ClassFunction::RMinus(_)));
    }

    #[test]
    fn json_rejects_unknown_fields_and_kinds() {
        let extra = r#"{"kind":"qalpha","n":1,"alpha":0.5,"gamma":0.0,"atoms":[],"beta":1}"#;
        assert!(FunctionDefinition::from_json(extra).is_err());
        let extra_atom = r#"{"kind":"qalpha","n":1,"alpha":0.5,"gamma":0.0,"atoms":[{"xi":[0.0],"w":1.0,"v":2}]}"#;
        assert!(FunctionDefinition::from_json(extra_atom).is_err());
        let kind = r#"{"kind":"other","n":1}"#;
        assert!(FunctionDefinition::from_json(kind).is_err());
        let bad_dim =
            r#"{"kind":"rminus","n":2,"lambda":1.0,"gamma":0.0,"atoms":[{"xi":[0.0],"w":1.0}]}"#;
        assert!(FunctionDefinition::from_json(bad_dim)
            .unwrap()
            .build()
            .is_err());
    }
}
