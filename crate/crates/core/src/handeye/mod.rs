//! Closed-form hand-eye calibration on unit dual quaternions.

mod axxb;
mod axyb;
mod diag;
mod pose;

pub use axxb::{axxb_solve, axxb_solve_with_tol, AxxbSolution, C2_TOL, CONSISTENCY_TOL};
pub use axyb::{axyb_family, axyb_family_with_tol, axyb_solve, axyb_solve_with_tol, screw_invariants, AxybFamily, AxybSolution};
pub use diag::{diagonalize, Diagonalization};
pub use pose::{dq_to_pose, pose_to_dq, quaternion_to_rotation, rotation_to_quaternion, Pose, PoseRecord, POSE_TOL, UNIT_TOL};
