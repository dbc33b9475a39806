use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative tolerance of the symmetry check, scaled by `max(1, max |entry|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A dense real symmetric matrix.
///
/// Construction validates symmetry up to [`SYMMETRY_TOL`] and then stores the
/// exact symmetric part, so every downstream routine sees `M == Mᵀ` bitwise.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    inner: DMatrix<f64>,
}

impl SymMatrix {
    /// Wraps a square matrix after checking symmetry.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix has non-finite entries".into(),
            ));
        }
        let max_entry = m.amax();
        let tolerance = SYMMETRY_TOL * max_entry.max(1.0);
        let asymmetry = asymmetry(&m);
        if asymmetry > tolerance {
            return Err(Error::NonSymmetric {
                asymmetry,
                tolerance,
            });
        }
        Ok(Self::symmetrized(m))
    }

    /// Builds from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut flat = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_row_major(dim, &flat)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        Self {
            inner: DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(values)),
        }
    }

    /// Stores `(M + Mᵀ)/2` without validation. Callers guarantee `M` is
    /// symmetric up to rounding.
    pub(crate) fn symmetrized(m: DMatrix<f64>) -> Self {
        let t = m.transpose();
        Self {
            inner: (m + t) * 0.5,
        }
    }

    /// `Q · diag(values) · Qᵀ`.
    pub fn from_spectral(basis: &DMatrix<f64>, values: &[f64]) -> Self {
        let mut scaled = basis.clone();
        for (k, &v) in values.iter().enumerate() {
            scaled.column_mut(k).scale_mut(v);
        }
        Self::symmetrized(scaled * basis.transpose())
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.inner.amax()
    }

    /// Entries as a list of rows.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.inner.row(i).iter().copied().collect())
            .collect()
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_dim(other)?;
        Ok(Self {
            inner: &self.inner + &other.inner,
        })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_dim(other)?;
        Ok(Self {
            inner: &self.inner - &other.inner,
        })
    }

    pub fn scale(&self, factor: f64) -> SymMatrix {
        Self {
            inner: &self.inner * factor,
        }
    }

    /// `self + shift · I`.
    pub fn shift(&self, shift: f64) -> SymMatrix {
        let mut inner = self.inner.clone();
        for k in 0..self.dim() {
            inner[(k, k)] += shift;
        }
        Self { inner }
    }

    /// Ordinary (generally non-symmetric) product.
    pub fn mul(&self, other: &SymMatrix) -> Result<DMatrix<f64>> {
        self.check_dim(other)?;
        Ok(&self.inner * &other.inner)
    }

    /// Frobenius norm of the commutator `[self, other]`.
    pub fn commutator_norm(&self, other: &SymMatrix) -> Result<f64> {
        self.check_dim(other)?;
        let ab = &self.inner * &other.inner;
        let ba = &other.inner * &self.inner;
        Ok((ab - ba).norm())
    }

    /// `Qᵀ · self · Q` for an orthonormal column block `Q`.
    pub fn congruence(&self, q: &DMatrix<f64>) -> SymMatrix {
        Self::symmetrized(q.transpose() * &self.inner * q)
    }

    fn check_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymMatrix")
            .field("dim", &self.dim())
            .field("rows", &self.to_rows())
            .finish()
    }
}

fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in (i + 1)..d {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}
