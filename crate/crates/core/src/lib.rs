//! Plane-wave dispersion analysis for the isotropic relaxed micromorphic,
//! Cosserat (micropolar) and Cauchy continuum models.
//!
//! The crate assembles the real symmetric dispersion blocks of each model,
//! computes their spectra with a self-contained Jacobi eigensolver, evaluates
//! the named inequality sets that decide real wave propagation, and sweeps
//! dispersion branches `omega(k)`. A 12x12 assembly for arbitrary propagation
//! direction cross-checks the block factorization and the isotropy of the
//! problem.
//!
//! Modules:
//!
//! - [`params`]: constitutive constants, derived moduli, homogenization
//! - [`criteria`]: inequality sets and randomized implication scans
//! - [`blocks`]: the dispersion matrices and their closed-form minors
//! - [`eig`]: Jacobi eigensolver plus closed-form oracles
//! - [`acoustic12`]: full 12x12 acoustic tensor for arbitrary direction
//! - [`dispersion`]: branch sweeps, tangents, group velocities
//!
//! Everything is pure and `Send + Sync`; randomized scans derive one
//! generator per trial from `(seed, index)` so results do not depend on how
//! work is partitioned across threads.

pub mod acoustic12;
pub mod blocks;
pub mod criteria;
pub mod dispersion;
pub mod eig;
pub mod mat;
pub mod params;
pub mod rng;
