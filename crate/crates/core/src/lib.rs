//! Dual quaternion linear algebra built on the dual complex adjoint matrix.
//!
//! The crate covers scalar dual quaternion arithmetic, dense dual quaternion
//! matrices, the adjoint mapping into dual complex matrices, linear solvers
//! with flop instrumentation, Rayleigh quotient eigensolvers for Hermitian
//! matrices, closed-form hand-eye calibration, and the formation-graph
//! Laplacian experiments.

pub mod adjoint;
pub mod bench;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod handeye;
pub mod linalg;
pub mod scalar;
pub mod solve;

pub use error::{Error, Result};
pub use linalg::{DCMatrix, DCVector, DQMatrix, DQVector};
pub use scalar::{Complex, Dual, DualComplex, DualNumber, DualQuaternion, Quaternion};
