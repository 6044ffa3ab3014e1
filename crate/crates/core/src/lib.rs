//! Recovery of the location and residue of a first-order pole of a function
//! meromorphic in the right half-plane, starting from finitely many (possibly
//! noisy) samples `f(N + 1/2)`, `N = 0..=N0`.
//!
//! The pipeline is:
//!
//! 1. [`coefficients`]: data-driven expansion coefficients on the
//!    Meixner–Pollaczek basis (`α = 1/2`), affine in an auxiliary shift `k`.
//! 2. [`recovery`]: linear regression in `k`, the pole and residue traces over
//!    the expansion index `n`, and detection of the range on which each trace
//!    is flat.
//! 3. [`validation`]: the analyticity pre-test, reconstruction of every sample
//!    from all the others through the consistency relations, the relative RMS
//!    error `δ`, and interpolation off the grid.
//!
//! [`special`] provides the complex Gamma function, Pollaczek polynomials and
//! the quadrature kernel `Qₙ`; [`samples`] the sample sets, noise model and the
//! catalog of test functions.

pub mod cli;
pub mod coefficients;
pub mod error;
pub mod recovery;
pub mod samples;
pub mod special;
pub mod validation;

pub use error::{Error, Result};
pub use num_complex::Complex64;
