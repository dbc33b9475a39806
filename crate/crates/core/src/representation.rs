//! The operator identity
//!
//! ```text
//! f(A)⁻¹ = γI + ∫ (Π_j (ξ_j I + A_j))^{−α} dτ(ξ)
//! ```
//!
//! for `f` with `1/f = γ + S^α τ`, `0 ≤ α ≤ 1`, and a commuting tuple `A`
//! whose joint spectrum lies in `(0,∞)ⁿ`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::calculus::{
    apply_function, frac_power_eigen, inv_frac_power_integral, inverse_pd, ScalarField,
    DEFAULT_NODES,
};
use crate::error::{Error, Result};
use crate::linalg::{joint_diagonalize, CommutingTuple, JointSpectralDecomposition, SymMatrix};
use crate::stieltjes::{q_alpha_eval, QAlphaFunction};

/// How the fractional power of each atom's product matrix is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "route")]
pub enum Route {
    /// `P^{−α}` from the eigendecomposition of `P`.
    Eigen,
    /// `P^{−α}` from the resolvent integral with `nodes` quadrature nodes.
    Integral { nodes: usize },
}

impl Route {
    pub fn integral() -> Self {
        Route::Integral {
            nodes: DEFAULT_NODES,
        }
    }
}

/// `x ↦ q_alpha_eval(F, x)` as a field for the functional calculus.
pub struct QAlphaField<'a>(pub &'a QAlphaFunction);

impl ScalarField for QAlphaField<'_> {
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn eval(&self, point: &[f64]) -> Result<f64> {
        q_alpha_eval(self.0, point)
    }
}

fn check_inputs(tuple: &CommutingTuple, f: &QAlphaFunction) -> Result<JointSpectralDecomposition> {
    if f.arity() != tuple.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: tuple.arity(),
        });
    }
    if f.alpha() > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "the representation requires 0 <= alpha <= 1, got {}",
            f.alpha()
        )));
    }
    let joint = joint_diagonalize(tuple)?;
    if let Some(point) = joint
        .spectrum
        .iter()
        .find(|p| p.iter().any(|&s| s.is_nan() || s <= 0.0))
    {
        return Err(Error::SpectrumOutsideDomain {
            point: point.clone(),
        });
    }
    Ok(joint)
}

/// `Π_j (ξ_j I + A_j)` as an ordinary matrix product.
fn atom_product(tuple: &CommutingTuple, xi: &[f64]) -> SymMatrix {
    let d = tuple.dim();
    let mut p = DMatrix::<f64>::identity(d, d);
    for (m, &x) in tuple.matrices().iter().zip(xi) {
        p *= m.shift(x).as_matrix();
    }
    SymMatrix::symmetrized(p)
}

/// `γI + Σ_k w_k (Π_j (ξ_{k,j} I + A_j))^{−α}`.
///
/// For `α = 0` each term is `I`; for `α = 1` each term is a plain inverse
/// regardless of `route`.
pub fn lemma1_rhs(tuple: &CommutingTuple, f: &QAlphaFunction, route: Route) -> Result<SymMatrix> {
    check_inputs(tuple, f)?;
    let d = tuple.dim();
    let alpha = f.alpha();
    let mut acc = SymMatrix::identity(d).scale(f.gamma());
    for atom in f.measure().atoms() {
        let term = if alpha == 0.0 {
            SymMatrix::identity(d)
        } else {
            let p = atom_product(tuple, &atom.xi);
            if alpha == 1.0 {
                inverse_pd(&p)?
            } else {
                match route {
                    Route::Eigen => frac_power_eigen(&p, -alpha)?,
                    Route::Integral { nodes } => inv_frac_power_integral(&p, alpha, nodes)?,
                }
            }
        };
        acc = acc.add(&term.scale(atom.w))?;
    }
    Ok(acc)
}

/// Relative Frobenius distance between `f(A)⁻¹` (functional calculus, inverted
/// through its eigendecomposition) and [`lemma1_rhs`].
pub fn verify_lemma1(tuple: &CommutingTuple, f: &QAlphaFunction, route: Route) -> Result<f64> {
    let joint = check_inputs(tuple, f)?;
    let fa = apply_function(&joint, &QAlphaField(f))?;
    let lhs = inverse_pd(&fa)?;
    let rhs = lemma1_rhs(tuple, f, route)?;
    Ok(lhs.sub(&rhs)?.frobenius_norm() / lhs.frobenius_norm().max(1.0))
}
