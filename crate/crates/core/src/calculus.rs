//! Joint functional calculus and fractional powers of positive matrices.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{
    joint_diagonalize, sym_eig, CommutingTuple, JointSpectralDecomposition, SymMatrix,
};

/// A real function of `n` real variables, evaluated pointwise on a joint spectrum.
pub trait ScalarField {
    fn arity(&self) -> usize;
    fn eval(&self, point: &[f64]) -> Result<f64>;
}

/// Adapts a plain closure into a [`ScalarField`].
pub struct FnField<F> {
    arity: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnField<F> {
    pub fn new(arity: usize, f: F) -> Self {
        Self { arity, f }
    }
}

impl<F: Fn(&[f64]) -> f64> ScalarField for FnField<F> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, point: &[f64]) -> Result<f64> {
        Ok((self.f)(point))
    }
}

impl<T: ScalarField + ?Sized> ScalarField for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, point: &[f64]) -> Result<f64> {
        (**self).eval(point)
    }
}

/// `f(A) = Q · diag(f(s_1), …, f(s_d)) · Qᵀ` over the joint spectrum.
pub fn apply_function(
    joint: &JointSpectralDecomposition,
    f: &impl ScalarField,
) -> Result<SymMatrix> {
    if f.arity() != joint.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: joint.arity(),
        });
    }
    let values = joint
        .spectrum
        .iter()
        .map(|point| {
            let v = f.eval(point)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteValue {
                    point: point.clone(),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymMatrix::from_spectral(&joint.basis, &values))
}

/// Diagonalizes `tuple` and applies `f`.
pub fn apply_to_tuple(tuple: &CommutingTuple, f: &impl ScalarField) -> Result<SymMatrix> {
    apply_function(&joint_diagonalize(tuple)?, f)
}

/// Relative positive-definiteness threshold on `λ_min / max(1, λ_max)`.
pub const PD_TOL: f64 = 1e-12;

fn check_positive_definite(min: f64, max: f64) -> Result<()> {
    if min > PD_TOL * max.abs().max(1.0) {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        })
    }
}

/// `C^β` through the eigendecomposition of `C`. Non-integral or negative
/// exponents require `C` positive definite.
pub fn frac_power_eigen(c: &SymMatrix, beta: f64) -> Result<SymMatrix> {
    if !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "exponent {beta} is not finite"
        )));
    }
    let eig = sym_eig(c)?;
    if beta >= 0.0 && beta.fract() == 0.0 && beta <= i32::MAX as f64 {
        let k = beta as i32;
        return Ok(eig.map(|l| l.powi(k)));
    }
    check_positive_definite(eig.min_eigenvalue(), eig.max_eigenvalue())?;
    Ok(eig.map(|l| l.powf(beta)))
}

/// `C^{-1}` through the eigendecomposition; fails unless `C` is positive definite.
pub fn inverse_pd(c: &SymMatrix) -> Result<SymMatrix> {
    frac_power_eigen(c, -1.0)
}

/// Default node count of [`inv_frac_power_integral`].
pub const DEFAULT_NODES: usize = 400;

/// Tail decay `e^{-TAIL}` accepted at each end of the truncated integral.
const TAIL: f64 = 32.0;

/// `C^{-α} = sin(απ)/π · ∫_0^∞ t^{-α} (tI + C)^{-1} dt` by the trapezoid rule
/// after `t = e^u`.
///
/// In `u` the integrand is `e^{(1-α)u} (e^u I + C)^{-1}`, analytic in the strip
/// `|Im u| < π` and decaying like `e^{(1-α)u}` on the left and `e^{-αu}` on the
/// right. The window is `[ln λ_min − TAIL/(1−α), ln λ_max + TAIL/α]`, so both
/// truncated tails are below `e^{-TAIL}` relative to the scalar value. Each
/// resolvent is inverted through its own eigendecomposition.
pub fn inv_frac_power_integral(c: &SymMatrix, alpha: f64, nodes: usize) -> Result<SymMatrix> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    if nodes < 2 {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs at least 2 nodes, got {nodes}"
        )));
    }
    let eig = sym_eig(c)?;
    check_positive_definite(eig.min_eigenvalue(), eig.max_eigenvalue())?;

    let u_lo = eig.min_eigenvalue().ln() - TAIL / (1.0 - alpha);
    let u_hi = eig.max_eigenvalue().ln() + TAIL / alpha;
    let h = (u_hi - u_lo) / (nodes - 1) as f64;

    let d = c.dim();
    let mut acc = DMatrix::<f64>::zeros(d, d);
    for i in 0..nodes {
        let u = u_lo + h * i as f64;
        let t = u.exp();
        let end_weight = if i == 0 || i == nodes - 1 { 0.5 } else { 1.0 };
        let resolvent = sym_eig(&c.shift(t))?.map(|l| 1.0 / l);
        acc += resolvent.as_matrix() * (end_weight * ((1.0 - alpha) * u).exp());
    }
    acc *= h * (alpha * PI).sin() / PI;
    Ok(SymMatrix::symmetrized(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn diag_tuple() -> CommutingTuple {
        CommutingTuple::new(vec![
            SymMatrix::from_diagonal(&[1.0, 2.0]),
            SymMatrix::from_diagonal(&[3.0, 4.0]),
        ])
        .unwrap()
    }

    fn assert_close(a: &SymMatrix, b: &SymMatrix, tol: f64) {
        let diff = a.sub(b).unwrap().frobenius_norm();
        assert!(diff <= tol, "difference {diff:e} exceeds {tol:e}");
    }

    #[test]
    fn constant_function_gives_identity() {
        let m = apply_to_tuple(&diag_tuple(), &FnField::new(2, |_| 1.0)).unwrap();
        assert_close(&m, &SymMatrix::identity(2), 1e-15);
    }

    #[test]
    fn sum_on_diagonal_tuple() {
        let m = apply_to_tuple(&diag_tuple(), &FnField::new(2, |s| s[0] + s[1])).unwrap();
        assert_close(&m, &SymMatrix::from_diagonal(&[4.0, 6.0]), 1e-14);
    }

    #[test]
    fn scalar_reduction() {
        let t = CommutingTuple::single(SymMatrix::from_diagonal(&[2.5]));
        let m = apply_to_tuple(&t, &FnField::new(1, |s| s[0].exp())).unwrap();
        assert_abs_diff_eq!(m.get(0, 0), 2.5f64.exp(), epsilon = 1e-14);
    }

    #[test]
    fn arity_and_finiteness_errors() {
        let err = apply_to_tuple(&diag_tuple(), &FnField::new(3, |_| 1.0)).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
        let err =
            apply_to_tuple(&diag_tuple(), &FnField::new(2, |s| (s[0] - 1.0).ln())).unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { .. }));
    }

    #[test]
    fn eigen_power_examples() {
        assert_close(
            &frac_power_eigen(&SymMatrix::identity(3), 0.5).unwrap(),
            &SymMatrix::identity(3),
            1e-15,
        );
        assert_close(
            &frac_power_eigen(&SymMatrix::from_diagonal(&[4.0]), -0.5).unwrap(),
            &SymMatrix::from_diagonal(&[0.5]),
            1e-15,
        );
        assert_close(
            &frac_power_eigen(&SymMatrix::from_diagonal(&[2.0, 8.0]), -0.5).unwrap(),
            &SymMatrix::from_diagonal(&[2f64.powf(-0.5), 8f64.powf(-0.5)]),
            1e-15,
        );
    }

    #[test]
    fn integer_powers_do_not_need_definiteness() {
        let m = SymMatrix::from_diagonal(&[-2.0, 3.0]);
        assert_close(
            &frac_power_eigen(&m, 2.0).unwrap(),
            &SymMatrix::from_diagonal(&[4.0, 9.0]),
            1e-14,
        );
        assert!(matches!(
            frac_power_eigen(&m, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            inverse_pd(&SymMatrix::zeros(2)),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn integral_route_scalar_examples() {
        let r = inv_frac_power_integral(&SymMatrix::identity(2), 0.5, DEFAULT_NODES).unwrap();
        assert_close(&r, &SymMatrix::identity(2), 1e-8);
        let r = inv_frac_power_integral(&SymMatrix::identity(3).scale(9.0), 0.5, DEFAULT_NODES)
            .unwrap();
        assert_close(&r, &SymMatrix::identity(3).scale(1.0 / 3.0), 1e-8);
    }

    #[test]
    fn integral_route_matches_eigen_on_spread_diagonal() {
        let c = SymMatrix::from_diagonal(&[0.1, 50.0]);
        let r = inv_frac_power_integral(&c, 0.3, DEFAULT_NODES).unwrap();
        let e = frac_power_eigen(&c, -0.3).unwrap();
        assert_close(&r, &e, 1e-7);
    }

    #[test]
    fn integral_route_validation() {
        let c = SymMatrix::identity(2);
        assert!(matches!(
            inv_frac_power_integral(&c, 1.0, 400),
            Err(Error::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            inv_frac_power_integral(&c, 0.0, 400),
            Err(Error::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            inv_frac_power_integral(&SymMatrix::from_diagonal(&[1.0, -1.0]), 0.5, 400),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
