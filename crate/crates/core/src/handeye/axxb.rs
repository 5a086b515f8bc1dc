use num_complex::Complex64;
use serde::Serialize;

use super::diag::{diagonalize, is_real};
use crate::error::{Error, Result};
use crate::scalar::{DualComplex, DualQuaternion, Quaternion};

/// Default residual tolerance, relative to the input scale.
pub const CONSISTENCY_TOL: f64 = 1e-6;

/// `|c2|` below this is treated as zero.
pub const C2_TOL: f64 = 1e-10;

/// The two solutions `±q` of `a q = q b`, `c q = q d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxxbSolution {
    pub q_plus: DualQuaternion,
    pub q_minus: DualQuaternion,
    /// `‖a q - q b‖_2R`
    pub residual_ab: f64,
    /// `‖c q - q d‖_2R`
    pub residual_cd: f64,
}

pub(crate) fn scale_of(items: &[DualQuaternion]) -> f64 {
    items.iter().fold(1.0f64, |m, q| m.max(q.mag2()))
}

/// Solves `a q = q b`, `c q = q d` for unit `q` with the default tolerance.
pub fn axxb_solve(a: DualQuaternion, b: DualQuaternion, c: DualQuaternion, d: DualQuaternion) -> Result<AxxbSolution> {
    axxb_solve_with_tol(a, b, c, d, CONSISTENCY_TOL)
}

/// As [`axxb_solve`], rejecting solutions whose residual exceeds
/// `tol · max(1, |inputs|)`.
pub fn axxb_solve_with_tol(
    a: DualQuaternion,
    b: DualQuaternion,
    c: DualQuaternion,
    d: DualQuaternion,
    tol: f64,
) -> Result<AxxbSolution> {
    let da = diagonalize(a);
    let db = diagonalize(b);
    if is_real(da.lambda.st) || is_real(db.lambda.st) {
        return Err(Error::RealAxis);
    }
    let x = da.q;
    let mut y = db.q;
    // b = y μ y* = (y j) conj(μ) (y j)*
    let mu = db.lambda;
    let mu_bar = DualComplex::new(mu.st.conj(), mu.du.conj());
    if dist(da.lambda, mu_bar) < dist(da.lambda, mu) {
        y = y * DualQuaternion::from(Quaternion::J);
    }

    let e = x.conj() * c * x;
    let f = y.conj() * d * y;
    let [_, e2, _, e4] = e.complex_parts();
    let [_, f2, _, f4] = f.complex_parts();
    if e2.norm() < C2_TOL {
        return Err(Error::C2Degenerate { magnitude: e2.norm() });
    }
    if f2.norm() < C2_TOL {
        return Err(Error::C2Degenerate { magnitude: f2.norm() });
    }
    let theta1 = (f2 / e2).sqrt().conj();
    let theta2 = (f4.conj() - theta1 * theta1 * e4.conj()) / (Complex64::new(2.0, 0.0) * theta1 * e2.conj());
    let theta = DualQuaternion::from_dual_complex(DualComplex::new(theta1, theta2));
    let q = x * theta * y.conj();

    let residual_ab = (a * q - q * b).mag2();
    let residual_cd = (c * q - q * d).mag2();
    let limit = tol * scale_of(&[a, b, c, d]);
    let worst = residual_ab.max(residual_cd);
    if !(worst <= limit) {
        return Err(Error::Inconsistent { residual: worst });
    }
    Ok(AxxbSolution {
        q_plus: q,
        q_minus: -q,
        residual_ab,
        residual_cd,
    })
}

fn dist(u: DualComplex, v: DualComplex) -> f64 {
    (u.st - v.st).norm() + (u.du - v.du).norm()
}
