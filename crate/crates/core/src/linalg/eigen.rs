//! Cyclic Jacobi eigensolver and Loewner-order comparison.

use nalgebra::DMatrix;

use super::matrix::SymMatrix;
use crate::error::{Error, Result};

/// Stopping rule of the cyclic Jacobi sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    /// Converged once `off(A) ≤ off_tol · ‖A‖_F`.
    pub off_tol: f64,
    pub max_sweeps: usize,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self {
            off_tol: 1e-13,
            max_sweeps: 100,
        }
    }
}

impl EigenConfig {
    /// Tighter thresholds used when re-examining borderline results.
    pub fn tight() -> Self {
        Self {
            off_tol: 1e-15,
            max_sweeps: 200,
        }
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub basis: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dimension is at least 1")
    }

    /// `Q · diag(g(λ_k)) · Qᵀ`.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> SymMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        SymMatrix::from_spectral(&self.basis, &values)
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.map(|l| l)
    }
}

pub fn sym_eig(m: &SymMatrix) -> Result<SpectralDecomposition> {
    sym_eig_with(m, &EigenConfig::default())
}

/// Cyclic Jacobi rotations with the stopping rule from `cfg`.
pub fn sym_eig_with(m: &SymMatrix, cfg: &EigenConfig) -> Result<SpectralDecomposition> {
    let d = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = DMatrix::<f64>::identity(d, d);
    let norm = a.norm();

    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= cfg.off_tol * norm {
            break;
        }
        if sweep == cfg.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps: sweep,
                off_norm: off,
            });
        }
        let mut rotated = false;
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // Late sweeps: drop entries that no longer affect the diagonal.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                rotate(&mut a, &mut v, p, q);
                rotated = true;
            }
        }
        sweep += 1;
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&k| a[(k, k)]).collect();
    let basis = DMatrix::from_fn(d, d, |r, c| v[(r, order[c])]);
    Ok(SpectralDecomposition { eigenvalues, basis })
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let d = a.nrows();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation and accumulates it into `v`.
fn rotate(a: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize) {
    let d = a.nrows();
    let apq = a[(p, q)];
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..d {
        if r != p && r != q {
            let arp = a[(r, p)];
            let arq = a[(r, q)];
            let new_rp = arp - s * (arq + tau * arp);
            let new_rq = arq + s * (arp - tau * arq);
            a[(r, p)] = new_rp;
            a[(p, r)] = new_rp;
            a[(r, q)] = new_rq;
            a[(q, r)] = new_rq;
        }
    }
    for r in 0..d {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp - s * (vrq + tau * vrp);
        v[(r, q)] = vrq + s * (vrp - tau * vrq);
    }
}

/// Outcome of a Loewner comparison `A ≤ B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerCheck {
    pub holds: bool,
    /// `λ_min(B − A)`.
    pub margin: f64,
}

/// Default Loewner tolerance `1e-9 · max(1, ‖A‖_F, ‖B‖_F)`.
pub fn default_loewner_eps(a: &SymMatrix, b: &SymMatrix) -> f64 {
    1e-9 * 1f64.max(a.frobenius_norm()).max(b.frobenius_norm())
}

/// Tests `A ≤ B` in the Loewner order; `eps = None` selects the default tolerance.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, eps: Option<f64>) -> Result<LoewnerCheck> {
    let diff = b.sub(a)?;
    let margin = sym_eig(&diff)?.min_eigenvalue();
    let eps = eps.unwrap_or_else(|| default_loewner_eps(a, b));
    Ok(LoewnerCheck {
        holds: margin >= -eps,
        margin,
    })
}
