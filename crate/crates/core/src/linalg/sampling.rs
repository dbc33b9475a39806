//! Seeded sampling of commuting tuples and Loewner-ordered tuple pairs.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::eigen::loewner_leq;
use super::joint::CommutingTuple;
use super::matrix::SymMatrix;
use crate::error::{Error, Result};

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let iv = Self { lo, hi };
        iv.validate()?;
        Ok(iv)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::InvalidParameter(format!(
                "interval [{}, {}] is empty or not finite",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn sample(&self, rng: &mut impl Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.random_range(self.lo..self.hi)
        }
    }
}

/// Which commutation the two tuples of a dominating pair satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// All `2n` matrices pairwise commute.
    Cross,
    /// Only matrices within the same tuple commute.
    Tuple,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Cross => "cross",
            Regime::Tuple => "tuple",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cross" => Ok(Regime::Cross),
            "tuple" => Ok(Regime::Tuple),
            other => Err(Error::InvalidParameter(format!(
                "unknown regime `{other}` (expected `cross` or `tuple`)"
            ))),
        }
    }
}

/// Two commuting tuples with `A_j ≤ B_j` for every `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominatingPair {
    pub a: CommutingTuple,
    pub b: CommutingTuple,
    pub regime: Regime,
}

/// Loewner margin accepted by [`DominatingPair::new`].
pub const PAIR_ORDER_TOL: f64 = 1e-12;

impl DominatingPair {
    /// Validates the order `A_j ≤ B_j` and, in the cross regime, commutation
    /// of all `2n` matrices.
    pub fn new(a: CommutingTuple, b: CommutingTuple, regime: Regime) -> Result<Self> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch {
                expected: a.arity(),
                found: b.arity(),
            });
        }
        if a.dim() != b.dim() {
            return Err(Error::DimMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        for (j, (aj, bj)) in a.matrices().iter().zip(b.matrices()).enumerate() {
            let check = loewner_leq(aj, bj, Some(PAIR_ORDER_TOL))?;
            if !check.holds {
                return Err(Error::InvalidParameter(format!(
                    "component {j} violates A_j <= B_j (margin {:e})",
                    check.margin
                )));
            }
        }
        if regime == Regime::Cross {
            let all: Vec<SymMatrix> = a.matrices().iter().chain(b.matrices()).cloned().collect();
            CommutingTuple::with_tolerance(all, a.comm_tol())?;
        }
        Ok(Self { a, b, regime })
    }

    pub fn arity(&self) -> usize {
        self.a.arity()
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Haar-distributed orthogonal matrix.
fn random_orthogonal(d: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(d, d, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..d {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    q
}

fn check_shape(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "arity and dimension must be positive (n = {n}, d = {d})"
        )));
    }
    Ok(())
}

fn diagonal_values(n: usize, d: usize, bounds: &Interval, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| bounds.sample(rng)).collect())
        .collect()
}

fn assemble(q: &DMatrix<f64>, values: &[Vec<f64>]) -> CommutingTuple {
    CommutingTuple::from_parts_unchecked(
        values
            .iter()
            .map(|v| SymMatrix::from_spectral(q, v))
            .collect(),
    )
}

/// `n` matrices `Q·diag(·)·Qᵀ` sharing one random orthogonal `Q`, with
/// eigenvalues uniform in `bounds`.
pub fn sample_commuting_tuple(
    n: usize,
    d: usize,
    bounds: Interval,
    seed: u64,
) -> Result<CommutingTuple> {
    check_shape(n, d)?;
    bounds.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_orthogonal(d, &mut rng);
    let values = diagonal_values(n, d, &bounds, &mut rng);
    Ok(assemble(&q, &values))
}

/// Samples `A ≤ B` componentwise.
///
/// In the cross regime both tuples share one eigenbasis and `B`'s eigenvalues
/// are `A`'s plus gaps from `gaps`. In the tuple regime the tuples get
/// independent eigenbases and each `B_j` is shifted by
/// `max(0, −λ_min(B_j − A_j)) + 1e-10·‖B_j‖_F`. Whenever the eigenvalues of a
/// component pair leave `bounds`, that component of both tuples is mapped back
/// into `bounds` by one increasing affine map, which preserves the order and
/// all commutation relations.
pub fn sample_dominating_pair(
    regime: Regime,
    n: usize,
    d: usize,
    bounds: Interval,
    gaps: Interval,
    seed: u64,
) -> Result<DominatingPair> {
    check_shape(n, d)?;
    bounds.validate()?;
    gaps.validate()?;
    if gaps.lo < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gap interval must lie in [0, inf), got [{}, {}]",
            gaps.lo, gaps.hi
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (a, b, a_vals, b_vals) = match regime {
        Regime::Cross => {
            let q = random_orthogonal(d, &mut rng);
            let a_vals = diagonal_values(n, d, &bounds, &mut rng);
            let b_vals: Vec<Vec<f64>> = a_vals
                .iter()
                .map(|row| row.iter().map(|&x| x + gaps.sample(&mut rng)).collect())
                .collect();
            (assemble(&q, &a_vals), assemble(&q, &b_vals), a_vals, b_vals)
        }
        Regime::Tuple => {
            let qa = random_orthogonal(d, &mut rng);
            let a_vals = diagonal_values(n, d, &bounds, &mut rng);
            let qb = random_orthogonal(d, &mut rng);
            let mut b_vals = diagonal_values(n, d, &bounds, &mut rng);
            let a = assemble(&qa, &a_vals);
            let mut b = assemble(&qb, &b_vals);
            let mut shifted = Vec::with_capacity(n);
            for ((aj, bj), vals) in a.matrices().iter().zip(b.matrices()).zip(b_vals.iter_mut()) {
                let margin = loewner_leq(aj, bj, Some(0.0))?.margin;
                let mu = (-margin).max(0.0) + 1e-10 * bj.frobenius_norm();
                for v in vals.iter_mut() {
                    *v += mu;
                }
                shifted.push(bj.shift(mu));
            }
            b = CommutingTuple::from_parts_unchecked(shifted);
            (a, b, a_vals, b_vals)
        }
    };

    let (scale, offset) = fit_into(&bounds, &a_vals, &b_vals);
    let (a, b) = if scale.iter().all(|&s| s == 1.0) && offset.iter().all(|&o| o == 0.0) {
        (a, b)
    } else {
        (a.affine(&scale, &offset), b.affine(&scale, &offset))
    };
    DominatingPair::new(a, b, regime)
}

/// Per-component affine maps `x ↦ s·x + o` (s ≤ 1) bringing both spectra into `bounds`.
fn fit_into(bounds: &Interval, a_vals: &[Vec<f64>], b_vals: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    a_vals
        .iter()
        .zip(b_vals)
        .map(|(ra, rb)| {
            let lo = ra.iter().chain(rb).copied().fold(f64::INFINITY, f64::min);
            let hi = ra
                .iter()
                .chain(rb)
                .copied()
                .fold(f64::NEG_INFINITY, f64::max);
            if bounds.contains(lo) && bounds.contains(hi) {
                return (1.0, 0.0);
            }
            let width = hi - lo;
            if width > bounds.width() {
                let s = bounds.width() / width;
                (s, bounds.lo - s * lo)
            } else if hi > bounds.hi {
                (1.0, bounds.hi - hi)
            } else {
                (1.0, bounds.lo - lo)
            }
        })
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::sym_eig;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn scalar_tuple_lies_in_box() {
        let t = sample_commuting_tuple(1, 1, iv(1.0, 2.0), 42).unwrap();
        let x = t.matrices()[0].get(0, 0);
        assert!((1.0..=2.0).contains(&x));
    }

    #[test]
    fn sampling_is_deterministic() {
        let t1 = sample_commuting_tuple(3, 4, iv(0.5, 4.0), 9).unwrap();
        let t2 = sample_commuting_tuple(3, 4, iv(0.5, 4.0), 9).unwrap();
        assert_eq!(t1, t2);
        let p1 =
            sample_dominating_pair(Regime::Tuple, 2, 3, iv(0.1, 10.0), iv(0.0, 1.0), 5).unwrap();
        let p2 =
            sample_dominating_pair(Regime::Tuple, 2, 3, iv(0.1, 10.0), iv(0.0, 1.0), 5).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn sampled_tuple_commutes_to_rounding() {
        let t = sample_commuting_tuple(3, 6, iv(0.5, 4.0), 7).unwrap();
        assert!(t.max_commutator_norm() <= 1e-12);
        CommutingTuple::new(t.matrices().to_vec()).unwrap();
    }

    #[test]
    fn scalar_cross_pair_is_ordered() {
        let p =
            sample_dominating_pair(Regime::Cross, 1, 1, iv(0.1, 10.0), iv(0.0, 1.0), 3).unwrap();
        assert!(p.a.matrices()[0].get(0, 0) <= p.b.matrices()[0].get(0, 0));
    }

    #[test]
    fn pairs_stay_inside_box() {
        for seed in 0..50 {
            for regime in [Regime::Cross, Regime::Tuple] {
                let bounds = iv(-3.0, -0.01);
                let p = sample_dominating_pair(regime, 2, 3, bounds, iv(0.0, 2.0), seed).unwrap();
                for m in p.a.matrices().iter().chain(p.b.matrices()) {
                    let e = sym_eig(m).unwrap();
                    assert!(e.min_eigenvalue() >= bounds.lo - 1e-12);
                    assert!(e.max_eigenvalue() <= bounds.hi + 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(sample_commuting_tuple(0, 2, iv(0.0, 1.0), 1).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(sample_dominating_pair(
            Regime::Cross,
            1,
            1,
            iv(0.0, 1.0),
            Interval { lo: -1.0, hi: 1.0 },
            1
        )
        .is_err());
    }

    #[test]
    fn regime_round_trips_through_text() {
        for r in [Regime::Cross, Regime::Tuple] {
            assert_eq!(r.to_string().parse::<Regime>().unwrap(), r);
        }
        assert!("both".parse::<Regime>().is_err());
    }
}
