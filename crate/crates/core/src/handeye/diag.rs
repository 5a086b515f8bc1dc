use num_complex::Complex64;
use serde::Serialize;

use crate::adjoint::{adjoint, adjoint_inv_dc};
use crate::linalg::{CMatrix, DCMatrix, DQMatrix};
use crate::scalar::{DualComplex, DualQuaternion};

/// `a = q λ q*` with unit `q` and dual complex `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Diagonalization {
    pub q: DualQuaternion,
    pub lambda: DualComplex,
}

impl Diagonalization {
    /// `q λ q*`.
    pub fn reconstruct(&self) -> DualQuaternion {
        self.q * DualQuaternion::from_dual_complex(self.lambda) * self.q.conj()
    }
}

/// Threshold below which an eigenvalue of the standard part counts as real.
pub(crate) fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-10 * (1.0 + z.norm())
}

/// Eigenvalue with nonnegative imaginary part and a unit eigenvector of a
/// 2×2 matrix `[[m1, m2], [-conj(m2), conj(m1)]]`.
fn adjoint_eigenpair(m: &CMatrix) -> (Complex64, [Complex64; 2]) {
    let (m1, m2) = (m[(0, 0)], m[(0, 1)]);
    // trace 2 Re(m1), determinant |m1|² + |m2|², discriminant never positive
    let half_trace = m1.re;
    let det = m1.norm_sqr() + m2.norm_sqr();
    let im = (det - half_trace * half_trace).max(0.0).sqrt();
    let lambda = Complex64::new(half_trace, im);
    let from_first = [m2, lambda - m1];
    let from_second = [m1.conj() - lambda, m2.conj()];
    let n1 = from_first[0].norm_sqr() + from_first[1].norm_sqr();
    let n2 = from_second[0].norm_sqr() + from_second[1].norm_sqr();
    let (v, n) = if n1 >= n2 { (from_first, n1) } else { (from_second, n2) };
    if n.sqrt() <= 1e-14 * (1.0 + det.sqrt()) {
        return (lambda, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    }
    let n = n.sqrt();
    let mut v = [v[0] / n, v[1] / n];
    // Fix the phase so the first nonzero component is real and positive.
    let lead = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
    let phase = lead.conj() / lead.norm();
    v = [v[0] * phase, v[1] * phase];
    (lambda, v)
}

/// Unitary `[[x1, x2], [-conj(x2), conj(x1)]]` whose first column is `x`.
fn unitary_from(x: [Complex64; 2]) -> CMatrix {
    let (x1, x2) = (x[0], -x[1].conj());
    CMatrix::from_rows(&[vec![x1, x2], vec![-x2.conj(), x1.conj()]]).expect("2x2")
}

/// Finds unit `q` and dual complex `λ` with `q* a q = λ`.
///
/// Of the conjugate pair of standard eigenvalues the one with positive
/// imaginary part is kept. When the standard part is real the dual part
/// is diagonalized instead, again keeping nonnegative imaginary part.
pub fn diagonalize(a: DualQuaternion) -> Diagonalization {
    let j = adjoint(&DQMatrix::from_rows(&[vec![a]]).expect("1x1")).into_inner();
    let (lambda1, x) = adjoint_eigenpair(&j.st);
    if !is_real(lambda1) {
        let big_x = unitary_from(x);
        let m = big_x
            .adjoint()
            .matmul(&j.du)
            .and_then(|t| t.matmul(&big_x))
            .expect("2x2 products");
        let (lambda2, z) = (m[(0, 0)], m[(0, 1)]);
        let gap = lambda1 - lambda1.conj();
        let zero = Complex64::new(0.0, 0.0);
        let big_z = CMatrix::from_rows(&[vec![zero, -z / gap], vec![-z.conj() / gap, zero]]).expect("2x2");
        let xz = big_x.matmul(&big_z).expect("2x2 product");
        let q = adjoint_inv_dc(&DCMatrix { st: big_x, du: xz }).expect("unitary built in the adjoint image");
        Diagonalization {
            q: q[(0, 0)],
            lambda: DualComplex::new(lambda1, lambda2),
        }
    } else {
        let (lambda2, y) = adjoint_eigenpair(&j.du);
        let big_y = unitary_from(y);
        let q = adjoint_inv_dc(&DCMatrix {
            st: big_y,
            du: CMatrix::zeros(2, 2),
        })
        .expect("unitary built in the adjoint image");
        Diagonalization {
            q: q[(0, 0)],
            lambda: DualComplex::new(Complex64::new(lambda1.re, 0.0), lambda2),
        }
    }
}
