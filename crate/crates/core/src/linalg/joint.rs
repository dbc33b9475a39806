//! Commuting tuples and their simultaneous diagonalization.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eigen::{sym_eig, sym_eig_with, EigenConfig};
use super::matrix::SymMatrix;
use crate::error::{Error, Result};

/// Default relative commutator tolerance.
pub const DEFAULT_COMM_TOL: f64 = 1e-10;

/// `n` pairwise commuting symmetric matrices of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutingTuple {
    matrices: Vec<SymMatrix>,
    comm_tol: f64,
}

impl CommutingTuple {
    pub fn new(matrices: Vec<SymMatrix>) -> Result<Self> {
        Self::with_tolerance(matrices, DEFAULT_COMM_TOL)
    }

    /// Validates `‖A_iA_j − A_jA_i‖_F ≤ comm_tol · max(1, ‖A_i‖_F‖A_j‖_F)`.
    pub fn with_tolerance(matrices: Vec<SymMatrix>, comm_tol: f64) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidParameter("a tuple needs at least one matrix".into()))?;
        let dim = first.dim();
        for m in &matrices {
            if m.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
        }
        for i in 0..matrices.len() {
            for j in (i + 1)..matrices.len() {
                let norm = matrices[i].commutator_norm(&matrices[j])?;
                let tolerance = comm_tol
                    * 1f64.max(matrices[i].frobenius_norm() * matrices[j].frobenius_norm());
                if norm > tolerance {
                    return Err(Error::NotCommuting {
                        i,
                        j,
                        norm,
                        tolerance,
                    });
                }
            }
        }
        Ok(Self { matrices, comm_tol })
    }

    /// Single-matrix tuple; always commuting.
    pub fn single(m: SymMatrix) -> Self {
        Self {
            matrices: vec![m],
            comm_tol: DEFAULT_COMM_TOL,
        }
    }

    pub fn arity(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].dim()
    }

    pub fn matrices(&self) -> &[SymMatrix] {
        &self.matrices
    }

    pub fn comm_tol(&self) -> f64 {
        self.comm_tol
    }

    /// Largest pairwise commutator Frobenius norm.
    pub fn max_commutator_norm(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.matrices.len() {
            for j in (i + 1)..self.matrices.len() {
                let c = self.matrices[i]
                    .commutator_norm(&self.matrices[j])
                    .expect("dimensions validated");
                worst = worst.max(c);
            }
        }
        worst
    }

    /// `self` transformed coordinatewise by `x ↦ scale_j · x + offset_j`.
    pub(crate) fn affine(&self, scale: &[f64], offset: &[f64]) -> Self {
        let matrices = self
            .matrices
            .iter()
            .zip(scale.iter().zip(offset))
            .map(|(m, (&s, &o))| m.scale(s).shift(o))
            .collect();
        Self {
            matrices,
            comm_tol: self.comm_tol,
        }
    }

    pub(crate) fn from_parts_unchecked(matrices: Vec<SymMatrix>) -> Self {
        Self {
            matrices,
            comm_tol: DEFAULT_COMM_TOL,
        }
    }
}

/// Shared orthonormal eigenbasis of a commuting tuple and its joint spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralDecomposition {
    /// Columns are the common eigenvectors.
    pub basis: DMatrix<f64>,
    /// `spectrum[k][j]` is the eigenvalue of `A_j` on basis vector `k`.
    pub spectrum: Vec<Vec<f64>>,
}

impl JointSpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn arity(&self) -> usize {
        self.spectrum.first().map_or(0, Vec::len)
    }

    /// Largest distance from a joint spectrum coordinate to the spectrum of
    /// the corresponding matrix.
    pub fn projection_defect(&self, tuple: &CommutingTuple) -> Result<f64> {
        let mut worst = 0.0f64;
        for (j, m) in tuple.matrices().iter().enumerate() {
            let eig = sym_eig(m)?;
            for point in &self.spectrum {
                let dist = eig
                    .eigenvalues
                    .iter()
                    .map(|&l| (l - point[j]).abs())
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(dist);
            }
        }
        Ok(worst)
    }

    /// `max_j ‖Qᵀ A_j Q − diag(spectrum[·][j])‖_F / max(1, ‖A_j‖_F)`.
    pub fn diagonalization_residual(&self, tuple: &CommutingTuple) -> f64 {
        tuple
            .matrices()
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let mut r = m.congruence(&self.basis).into_matrix();
                for (k, point) in self.spectrum.iter().enumerate() {
                    r[(k, k)] -= point[j];
                }
                r.norm() / m.frobenius_norm().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

/// Settings of the recursive joint diagonalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointConfig {
    pub eigen: EigenConfig,
    /// Eigenvalues of the random combination closer than
    /// `cluster_tol · max(1, ‖C‖_F)` are treated as one cluster.
    pub cluster_tol: f64,
    pub max_depth: usize,
    /// Accepted residual of the final diagonalization, relative to `max(1, ‖A_j‖_F)`.
    pub residual_tol: f64,
    /// Seed of the combination coefficients.
    pub seed: u64,
}

impl Default for JointConfig {
    fn default() -> Self {
        Self {
            eigen: EigenConfig::default(),
            cluster_tol: 1e-7,
            max_depth: 5,
            residual_tol: 1e-8,
            seed: 0x6a6f_696e_7464_6961,
        }
    }
}

impl JointConfig {
    pub fn tight() -> Self {
        Self {
            eigen: EigenConfig::tight(),
            ..Self::default()
        }
    }
}

pub fn joint_diagonalize(tuple: &CommutingTuple) -> Result<JointSpectralDecomposition> {
    joint_diagonalize_with(tuple, &JointConfig::default())
}

/// Diagonalizes a random combination `Σ c_j A_j`, then refines every
/// eigenvalue cluster on its restricted block with fresh coefficients.
pub fn joint_diagonalize_with(
    tuple: &CommutingTuple,
    cfg: &JointConfig,
) -> Result<JointSpectralDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let weights: Vec<f64> = tuple
        .matrices()
        .iter()
        .map(|m| 1.0 / m.frobenius_norm().max(1.0))
        .collect();
    let blocks: Vec<SymMatrix> = tuple.matrices().to_vec();
    let basis = refine(&blocks, &weights, 0, cfg, &mut rng)?;

    let spectrum = (0..tuple.dim())
        .map(|k| {
            tuple
                .matrices()
                .iter()
                .map(|m| {
                    let col = basis.column(k);
                    col.dot(&(m.as_matrix() * col))
                })
                .collect()
        })
        .collect();
    let joint = JointSpectralDecomposition { basis, spectrum };
    let residual = joint.diagonalization_residual(tuple);
    if residual > cfg.residual_tol {
        return Err(Error::DegeneracyUnresolved {
            depth: cfg.max_depth,
            residual,
        });
    }
    Ok(joint)
}

fn refine(
    blocks: &[SymMatrix],
    weights: &[f64],
    depth: usize,
    cfg: &JointConfig,
    rng: &mut ChaCha8Rng,
) -> Result<DMatrix<f64>> {
    let k = blocks[0].dim();
    if k == 1
        || blocks
            .iter()
            .zip(weights)
            .all(|(b, &w)| is_scalar(b, w, cfg))
    {
        return Ok(DMatrix::identity(k, k));
    }
    if depth > cfg.max_depth {
        let residual = blocks
            .iter()
            .zip(weights)
            .map(|(b, &w)| scalar_defect(b) * w)
            .fold(0.0, f64::max);
        return Err(Error::DegeneracyUnresolved { depth, residual });
    }

    // Below the top level the scalar part of each block carries no
    // information; the traceless parts are normalized so that cluster
    // separation is judged relative to what is left to resolve.
    let mut combo = SymMatrix::zeros(k);
    for (b, &w) in blocks.iter().zip(weights) {
        let c: f64 = rng.random_range(0.5..1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        if depth == 0 {
            combo = combo.add(&b.scale(c * w))?;
        } else if !is_scalar(b, w, cfg) {
            let mean = b.as_matrix().trace() / k as f64;
            let centered = b.shift(-mean);
            let norm = centered.frobenius_norm();
            combo = combo.add(&centered.scale(c / norm))?;
        }
    }
    let eig = sym_eig_with(&combo, &cfg.eigen)?;
    let gap_tol = cfg.cluster_tol * combo.frobenius_norm().max(1.0);

    let mut basis = eig.basis.clone();
    let mut start = 0;
    while start < k {
        let mut end = start + 1;
        while end < k && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= gap_tol {
            end += 1;
        }
        if end - start > 1 {
            let cols = eig.basis.columns(start, end - start).into_owned();
            let restricted: Vec<SymMatrix> = blocks.iter().map(|b| b.congruence(&cols)).collect();
            let inner = refine(&restricted, weights, depth + 1, cfg, rng)?;
            basis
                .columns_mut(start, end - start)
                .copy_from(&(cols * inner));
        }
        start = end;
    }
    Ok(basis)
}

fn scalar_defect(b: &SymMatrix) -> f64 {
    let k = b.dim();
    let mean = b.as_matrix().trace() / k as f64;
    b.shift(-mean).frobenius_norm()
}

fn is_scalar(b: &SymMatrix, weight: f64, cfg: &JointConfig) -> bool {
    scalar_defect(b) * weight <= cfg.residual_tol * 1e-2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn rotation(theta: f64) -> DMatrix<f64> {
        let (s, c) = theta.sin_cos();
        DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
    }

    fn sorted_rows(mut rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        rows.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        rows
    }

    #[test]
    fn diagonal_tuple_keeps_identity_basis() {
        let t = CommutingTuple::new(vec![
            SymMatrix::from_diagonal(&[1.0, 2.0]),
            SymMatrix::from_diagonal(&[3.0, 4.0]),
        ])
        .unwrap();
        let j = joint_diagonalize(&t).unwrap();
        let rows = sorted_rows(j.spectrum.clone());
        assert_abs_diff_eq!(rows[0][0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[0][1], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[1][0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[1][1], 4.0, epsilon = 1e-14);
        for r in 0..2 {
            for c in 0..2 {
                assert_abs_diff_eq!(
                    j.basis[(r, c)].abs(),
                    if r == c { 1.0 } else { 0.0 },
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn rotated_tuple_recovers_joint_spectrum() {
        let q = rotation(0.7);
        let t = CommutingTuple::new(vec![
            SymMatrix::from_spectral(&q, &[1.0, 2.0]),
            SymMatrix::from_spectral(&q, &[3.0, 4.0]),
        ])
        .unwrap();
        let j = joint_diagonalize(&t).unwrap();
        let rows = sorted_rows(j.spectrum.clone());
        let expected = [[1.0, 3.0], [2.0, 4.0]];
        for (row, exp) in rows.iter().zip(expected) {
            assert_abs_diff_eq!(row[0], exp[0], epsilon = 1e-12);
            assert_abs_diff_eq!(row[1], exp[1], epsilon = 1e-12);
        }
    }

    #[test]
    fn identity_component_needs_refinement() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let t = CommutingTuple::new(vec![SymMatrix::identity(2), m]).unwrap();
        let j = joint_diagonalize(&t).unwrap();
        let mut second: Vec<f64> = j.spectrum.iter().map(|p| p[1]).collect();
        second.sort_by(f64::total_cmp);
        for p in &j.spectrum {
            assert_abs_diff_eq!(p[0], 1.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(second[0], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(second[1], 3.0, epsilon = 1e-13);
    }

    #[test]
    fn degenerate_first_component_is_split_by_second() {
        // A_1 has a double eigenvalue that only A_2 separates.
        let q = rotation(0.3);
        let mut big = DMatrix::identity(3, 3);
        big.view_mut((0, 0), (2, 2)).copy_from(&q);
        let t = CommutingTuple::new(vec![
            SymMatrix::from_spectral(&big, &[5.0, 5.0, 1.0]),
            SymMatrix::from_spectral(&big, &[1.0, 2.0, 3.0]),
        ])
        .unwrap();
        let j = joint_diagonalize(&t).unwrap();
        assert!(j.diagonalization_residual(&t) < 1e-12);
        assert!(j.projection_defect(&t).unwrap() < 1e-12);
    }

    #[test]
    fn non_commuting_pair_rejected() {
        let a = SymMatrix::from_diagonal(&[1.0, 2.0]);
        let b = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            CommutingTuple::new(vec![a, b]),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn zero_depth_budget_with_degeneracy_fails() {
        let q = rotation(0.3);
        let mut big = DMatrix::identity(3, 3);
        big.view_mut((0, 0), (2, 2)).copy_from(&q);
        let t = CommutingTuple::new(vec![
            SymMatrix::from_spectral(&big, &[5.0, 5.0, 1.0]),
            SymMatrix::from_spectral(&big, &[1.0, 1.0 + 1e-8, 3.0]),
        ])
        .unwrap();
        let cfg = JointConfig {
            max_depth: 0,
            cluster_tol: 1e-3,
            ..JointConfig::default()
        };
        assert!(matches!(
            joint_diagonalize_with(&t, &cfg),
            Err(Error::DegeneracyUnresolved { .. })
        ));
        let j = joint_diagonalize(&t).unwrap();
        assert!(j.diagonalization_residual(&t) < 1e-12);
    }
}
