//! Joint direction-of-arrival (DOA) and array-manifold estimation for a MIMO
//! virtual array in which only the first two transmit antennas are calibrated.
//!
//! The crate is organized around the processing chain:
//!
//! * [`numerics`] — dense complex linear algebra (Kronecker products,
//!   Hermitian eigendecomposition, small general eigenvalue problems,
//!   Hermitian solves).
//! * [`model`] — array geometry, steering vectors with and without gain/phase
//!   errors, and the transmit ⊗ receive virtual manifold.
//! * [`sim`] — matched-filter snapshot generation, sample covariances, and
//!   exact analytic covariances for oracle tests.
//! * [`estimators`] — subspace decomposition, MUSIC and ESPRIT baselines, the
//!   two-calibrated-antenna ESPRIT initializer, the constrained gain/phase
//!   solver, local-search refinement, and the joint iteration.
//! * [`crb`] — the stochastic Cramér-Rao bound for the partially calibrated
//!   virtual array.
//! * [`harness`] — experiment configuration, seeded Monte Carlo execution,
//!   RMSE aggregation, and CSV/plot-script output.

pub mod crb;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod model;
pub mod numerics;
pub mod sim;

pub use error::{Error, Result};
