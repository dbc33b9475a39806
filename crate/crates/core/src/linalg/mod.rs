//! Dense real symmetric linear algebra: eigendecomposition, Loewner order,
//! simultaneous diagonalization and seeded sampling of ordered tuples.

mod eigen;
mod joint;
mod matrix;
mod sampling;

pub use eigen::{
    default_loewner_eps, loewner_leq, sym_eig, sym_eig_with, EigenConfig, LoewnerCheck,
    SpectralDecomposition,
};
pub use joint::{
    joint_diagonalize, joint_diagonalize_with, CommutingTuple, JointConfig,
    JointSpectralDecomposition, DEFAULT_COMM_TOL,
};
pub use matrix::{SymMatrix, SYMMETRY_TOL};
pub use sampling::{
    sample_commuting_tuple, sample_dominating_pair, DominatingPair, Interval, Regime,
    PAIR_ORDER_TOL,
};
