//! Exact elliptic solutions of the classical SU(2) Yang-Mills equations
//! with a gauge-fixing term, and the machinery to check them.
//!
//! * [`elliptic`]: Jacobi `sn, cn, dn` and `K(m)` for real `m < 1`.
//! * [`minkowski`]: four-vectors in the `(+, −, −, −)` signature.
//! * [`su2field`]: field jets and the equations of motion.
//! * [`solutions`]: amplitude algebra and solution constructors.
//! * [`dynamics`]: leapfrog integration of the homogeneous reductions.
//! * [`verify`]: grid residual scans and related checks.

pub mod cli;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod minkowski;
pub mod solutions;
pub mod su2field;
pub mod verify;

pub use error::{Error, Result};
pub use minkowski::FourVector;
