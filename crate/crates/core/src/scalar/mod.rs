//! Scalar algebra: dual numbers, dual complex numbers, quaternions and dual
//! quaternions.

mod dual;
mod dual_quaternion;
mod quaternion;

pub use dual::{Dual, DualComplex, DualNumber, DualScalar};
pub use dual_quaternion::DualQuaternion;
pub use num_complex::Complex64 as Complex;
pub use quaternion::Quaternion;

/// Standard parts at or below this magnitude count as zero.
pub const APPRECIABLE_TOL: f64 = 1e-12;
