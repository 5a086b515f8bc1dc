//! The dual complex adjoint `J`, the vector maps `F`, `G`, `F⁻¹`, and the
//! real dual representation used by the baseline solver.
//!
//! Every dual quaternion part is split as `P1 + P2 j` with complex `P1`, `P2`
//! and mapped to the block matrix `[[P1, P2], [-conj(P2), conj(P1)]]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DCMatrix, DCVector, DQMatrix, DQVector, RMatrix};
use crate::scalar::{DualQuaternion, Quaternion};

/// Entries off the block pattern by more than this are rejected.
pub const PATTERN_TOL: f64 = 1e-10;

/// A dual complex matrix known to carry the adjoint block pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointMatrix(DCMatrix);

impl AdjointMatrix {
    /// Checks the block pattern of a `2m × 2n` dual complex matrix.
    pub fn from_dc(m: DCMatrix) -> Result<Self> {
        let r = pattern_residual(&m)?;
        if r > PATTERN_TOL {
            return Err(Error::NotInImage { residual: r });
        }
        Ok(Self(m))
    }

    pub fn payload(&self) -> &DCMatrix {
        &self.0
    }

    pub fn into_inner(self) -> DCMatrix {
        self.0
    }

    /// Sizes `(m, n)` of the underlying dual quaternion matrix.
    pub fn quaternion_shape(&self) -> (usize, usize) {
        (self.0.rows() / 2, self.0.cols() / 2)
    }
}

fn split_part(
    q: &DQMatrix,
    part: impl Fn(&DualQuaternion) -> Quaternion,
) -> CMatrix {
    let (m, n) = q.shape();
    CMatrix::from_fn(2 * m, 2 * n, |r, c| {
        let (p1, p2) = part(&q[(r % m, c % n)]).complex_pair();
        match (r < m, c < n) {
            (true, true) => p1,
            (true, false) => p2,
            (false, true) => -p2.conj(),
            (false, false) => p1.conj(),
        }
    })
}

/// `J(Q)`.
pub fn adjoint(q: &DQMatrix) -> AdjointMatrix {
    AdjointMatrix(DCMatrix {
        st: split_part(q, |x| x.st),
        du: split_part(q, |x| x.du),
    })
}

fn part_residual(a: &CMatrix, m: usize, n: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..n {
            let p1 = a[(i, j)];
            let p2 = a[(i, j + n)];
            worst = worst
                .max((a[(i + m, j)] + p2.conj()).norm())
                .max((a[(i + m, j + n)] - p1.conj()).norm());
        }
    }
    worst
}

/// Largest entrywise deviation from the adjoint block pattern, over both
/// parts.
pub fn pattern_residual(m: &DCMatrix) -> Result<f64> {
    let (r, c) = m.shape();
    if r % 2 == 1 {
        return Err(Error::OddLength(r));
    }
    if c % 2 == 1 {
        return Err(Error::OddLength(c));
    }
    let (h, w) = (r / 2, c / 2);
    Ok(part_residual(&m.st, h, w).max(part_residual(&m.du, h, w)))
}

/// `J⁻¹`, reading the top block row.
pub fn adjoint_inv(a: &AdjointMatrix) -> DQMatrix {
    let (m, n) = a.quaternion_shape();
    let p = a.payload();
    DQMatrix::from_fn(m, n, |i, j| {
        DualQuaternion::new(
            Quaternion::from_complex_pair(p.st[(i, j)], p.st[(i, j + n)]),
            Quaternion::from_complex_pair(p.du[(i, j)], p.du[(i, j + n)]),
        )
    })
}

/// Pattern-checked `J⁻¹` for a raw dual complex matrix.
pub fn adjoint_inv_dc(m: &DCMatrix) -> Result<DQMatrix> {
    AdjointMatrix::from_dc(m.clone()).map(|a| adjoint_inv(&a))
}

fn split_vec(v: &DQVector, part: impl Fn(&DualQuaternion) -> Quaternion, first: bool) -> Vec<Complex64> {
    let n = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (i, x) in v.iter().enumerate() {
        let (v1, v2) = part(x).complex_pair();
        if first {
            out[i] = v1;
            out[i + n] = -v2.conj();
        } else {
            out[i] = v2;
            out[i + n] = v1.conj();
        }
    }
    out
}

/// `F(v) = [v1; -conj(v2)]`, the first column of `J(v)`.
pub fn fmap(v: &DQVector) -> DCVector {
    DCVector {
        st: split_vec(v, |x| x.st, true),
        du: split_vec(v, |x| x.du, true),
    }
}

/// `G(v) = [v2; conj(v1)]`, the second column of `J(v)`.
pub fn gmap(v: &DQVector) -> DCVector {
    DCVector {
        st: split_vec(v, |x| x.st, false),
        du: split_vec(v, |x| x.du, false),
    }
}

/// `F⁻¹(u) = u1 - conj(u2) j`.
pub fn fmap_inv(u: &DCVector) -> Result<DQVector> {
    let len = u.len();
    if len % 2 == 1 || len == 0 {
        return Err(Error::OddLength(len));
    }
    let n = len / 2;
    DQVector::new(
        (0..n)
            .map(|i| {
                DualQuaternion::new(
                    Quaternion::from_complex_pair(u.st[i], -u.st[i + n].conj()),
                    Quaternion::from_complex_pair(u.du[i], -u.du[i + n].conj()),
                )
            })
            .collect(),
    )
}

/// Real `4m × 4n` dual representation, stored as standard and dual parts.
#[derive(Clone, Debug, PartialEq)]
pub struct DualRepMatrix {
    pub st: RMatrix,
    pub du: RMatrix,
}

/// Dual real vector `st + du·ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualRealVector {
    pub st: Vec<f64>,
    pub du: Vec<f64>,
}

// Sign and component index of each 4×4 block of the dual representation.
const BLOCKS: [[(f64, usize); 4]; 4] = [
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    [(-1.0, 1), (1.0, 0), (-1.0, 3), (1.0, 2)],
    [(-1.0, 2), (1.0, 3), (1.0, 0), (-1.0, 1)],
    [(-1.0, 3), (-1.0, 2), (1.0, 1), (1.0, 0)],
];

fn rep_part(q: &DQMatrix, part: impl Fn(&DualQuaternion) -> Quaternion) -> RMatrix {
    let (m, n) = q.shape();
    RMatrix::from_fn(4 * m, 4 * n, |r, c| {
        let (sign, t) = BLOCKS[r / m][c / n];
        sign * part(&q[(r % m, c % n)]).to_array()[t]
    })
}

/// The dual representation `Q^D`.
pub fn dual_representation(q: &DQMatrix) -> DualRepMatrix {
    DualRepMatrix {
        st: rep_part(q, |x| x.st),
        du: rep_part(q, |x| x.du),
    }
}

fn col_part(x: &DQVector, part: impl Fn(&DualQuaternion) -> Quaternion) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; 4 * n];
    for (i, e) in x.iter().enumerate() {
        let a = part(e).to_array();
        out[i] = a[0];
        out[i + n] = -a[1];
        out[i + 2 * n] = -a[2];
        out[i + 3 * n] = -a[3];
    }
    out
}

/// First column `[x0; -x1; -x2; -x3]` of `x^D`.
pub fn dual_rep_col(x: &DQVector) -> DualRealVector {
    DualRealVector {
        st: col_part(x, |e| e.st),
        du: col_part(x, |e| e.du),
    }
}

/// Inverse of [`dual_rep_col`].
pub fn dual_rep_col_inv(c: &DualRealVector) -> Result<DQVector> {
    let len = c.st.len();
    if len == 0 || !len.is_multiple_of(4) || c.du.len() != len {
        return Err(Error::dims("multiple of 4", len));
    }
    let n = len / 4;
    let q = |v: &[f64], i: usize| Quaternion::new(v[i], -v[i + n], -v[i + 2 * n], -v[i + 3 * n]);
    DQVector::new((0..n).map(|i| DualQuaternion::new(q(&c.st, i), q(&c.du, i))).collect())
}
