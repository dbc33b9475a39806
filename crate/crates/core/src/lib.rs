//! Operator monotonicity of functions of several commuting symmetric matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: symmetric eigensolver, Loewner order, joint diagonalization of
//!   commuting tuples, seeded sampling of ordered tuple pairs.
//! * [`calculus`]: the joint functional calculus `f(A)` and fractional powers.
//! * [`stieltjes`]: atomic measures, n-dimensional Stieltjes transforms and the
//!   function classes defined through them.
//! * [`representation`]: the inverse representation of `f(A)` through the
//!   representing measure.
//! * [`monotonicity`]: the randomized test engine.
//!
//! ```
//! use opmono::linalg::{sample_commuting_tuple, Interval};
//! use opmono::representation::{verify_lemma1, Route};
//! use opmono::stieltjes::power_function_repr;
//!
//! let tuple = sample_commuting_tuple(2, 4, Interval::new(0.5, 3.0)?, 1)?;
//! let f = power_function_repr(2, 0.5)?;
//! assert!(verify_lemma1(&tuple, &f, Route::Eigen)? < 1e-10);
//! # Ok::<(), opmono::Error>(())
//! ```

pub mod calculus;
pub mod error;
pub mod linalg;
pub mod monotonicity;
pub mod representation;
pub mod stieltjes;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/joint-calculus.md")]
    mod joint_calculus {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/inverse-representation.md")]
    mod inverse_representation {}
    #[doc = include_str!("../../../book/src/monotonicity.md")]
    mod monotonicity {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
