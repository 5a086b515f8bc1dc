use std::ops::{Add, Deref, Index, IndexMut, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dense::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{DualNumber, DualQuaternion, Quaternion};

/// Dense dual quaternion matrix.
pub type DQMatrix = Matrix<DualQuaternion>;

/// Which side a scalar multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Column vector of dual quaternions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 8]>", into = "Vec<[f64; 8]>")]
pub struct DQVector(Vec<DualQuaternion>);

impl DQVector {
    pub fn new(entries: Vec<DualQuaternion>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::dims("length >= 1", 0));
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![DualQuaternion::ZERO; n])
    }

    /// `k`-th unit vector.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = DualQuaternion::ONE;
        v
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> DualQuaternion) -> Self {
        Self((0..n).map(f).collect())
    }

    pub fn into_inner(self) -> Vec<DualQuaternion> {
        self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [DualQuaternion] {
        &mut self.0
    }

    /// Standard parts as a quaternion vector.
    pub fn standard(&self) -> Vec<Quaternion> {
        self.0.iter().map(|q| q.st).collect()
    }

    pub fn dual(&self) -> Vec<Quaternion> {
        self.0.iter().map(|q| q.du).collect()
    }

    pub fn standard_norm_sqr(&self) -> f64 {
        self.0.iter().map(|q| q.st.norm_sqr()).sum()
    }

    pub fn dual_norm_sqr(&self) -> f64 {
        self.0.iter().map(|q| q.du.norm_sqr()).sum()
    }

    pub fn is_appreciable(&self) -> bool {
        self.standard_norm_sqr().sqrt() > crate::scalar::APPRECIABLE_TOL
    }

    /// Dual-number 2-norm.
    pub fn norm2(&self) -> DualNumber {
        let st2 = self.standard_norm_sqr();
        if st2.sqrt() > crate::scalar::APPRECIABLE_TOL {
            let st = st2.sqrt();
            let cross: f64 = self.0.iter().map(|q| q.st.dot(q.du)).sum();
            DualNumber::new(st, cross / st)
        } else {
            DualNumber::new(0.0, self.dual_norm_sqr().sqrt())
        }
    }

    /// Real 2^R-norm `sqrt(‖x_st‖² + ‖x_I‖²)`.
    pub fn norm2r(&self) -> f64 {
        (self.standard_norm_sqr() + self.dual_norm_sqr()).sqrt()
    }

    /// `self* other`.
    pub fn dot(&self, other: &Self) -> Result<DualQuaternion> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(DualQuaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b))
    }

    pub fn scale(&self, s: DualQuaternion, side: Side) -> Self {
        Self(
            self.0
                .iter()
                .map(|&x| match side {
                    Side::Left => s * x,
                    Side::Right => x * s,
                })
                .collect(),
        )
    }

    pub fn scale_dual(&self, s: DualNumber) -> Self {
        Self(self.0.iter().map(|x| x.scale_dual(s)).collect())
    }

    /// `x / ‖x‖₂`. Returns the flag set when the degenerate branch of the
    /// division was taken (non-appreciable input).
    pub fn normalized(&self) -> Result<(Self, bool)> {
        let n = self.norm2();
        if n.st > crate::scalar::APPRECIABLE_TOL {
            let inv = DualNumber::new(1.0, 0.0).try_div(n)?;
            Ok((self.scale_dual(inv), false))
        } else if n.du > crate::scalar::APPRECIABLE_TOL {
            // x = x_I ε and ‖x‖₂ = ‖x_I‖ ε: the quotient is x_I / ‖x_I‖.
            let out = Self(
                self.0
                    .iter()
                    .map(|q| DualQuaternion::new(q.du.scale(1.0 / n.du), Quaternion::ZERO))
                    .collect(),
            );
            Ok((out, true))
        } else {
            Err(Error::DegenerateStart)
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(*b)))
    }

    pub(crate) fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::dims(self.len(), other.len()));
        }
        Ok(())
    }
}

impl Deref for DQVector {
    type Target = [DualQuaternion];
    fn deref(&self) -> &[DualQuaternion] {
        &self.0
    }
}

impl Index<usize> for DQVector {
    type Output = DualQuaternion;
    fn index(&self, i: usize) -> &DualQuaternion {
        &self.0[i]
    }
}

impl IndexMut<usize> for DQVector {
    fn index_mut(&mut self, i: usize) -> &mut DualQuaternion {
        &mut self.0[i]
    }
}

impl Add for &DQVector {
    type Output = DQVector;
    fn add(self, rhs: Self) -> DQVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        DQVector(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &DQVector {
    type Output = DQVector;
    fn sub(self, rhs: Self) -> DQVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        DQVector(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

impl TryFrom<Vec<[f64; 8]>> for DQVector {
    type Error = Error;
    fn try_from(v: Vec<[f64; 8]>) -> Result<Self> {
        Self::new(v.into_iter().map(DualQuaternion::from_array).collect())
    }
}

impl From<DQVector> for Vec<[f64; 8]> {
    fn from(v: DQVector) -> Self {
        v.0.into_iter().map(DualQuaternion::to_array).collect()
    }
}

impl Matrix<DualQuaternion> {
    /// Real diagonal matrix.
    pub fn from_real_diagonal(d: &[f64]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                DualQuaternion::from_real(d[i])
            } else {
                DualQuaternion::ZERO
            }
        })
    }

    pub fn from_diagonal(d: &[DualQuaternion]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { DualQuaternion::ZERO })
    }

    pub fn standard_frobenius_sqr(&self) -> f64 {
        self.as_slice().iter().map(|q| q.st.norm_sqr()).sum()
    }

    pub fn dual_frobenius_sqr(&self) -> f64 {
        self.as_slice().iter().map(|q| q.du.norm_sqr()).sum()
    }

    /// Dual-number Frobenius norm.
    pub fn norm_f(&self) -> DualNumber {
        let st2 = self.standard_frobenius_sqr();
        if st2.sqrt() > crate::scalar::APPRECIABLE_TOL {
            let st = st2.sqrt();
            let cross: f64 = self.as_slice().iter().map(|q| q.st.dot(q.du)).sum();
            DualNumber::new(st, cross / st)
        } else {
            DualNumber::new(0.0, self.dual_frobenius_sqr().sqrt())
        }
    }

    /// Real F^R norm `sqrt(‖Q_st‖²_F + ‖Q_I‖²_F)`.
    pub fn norm_fr(&self) -> f64 {
        (self.standard_frobenius_sqr() + self.dual_frobenius_sqr()).sqrt()
    }

    pub fn default_tol(&self) -> f64 {
        1e-10 * self.norm_fr().max(1.0)
    }

    pub fn dq_matvec(&self, v: &DQVector) -> Result<DQVector> {
        self.matvec(v).map(DQVector)
    }

    /// Largest entrywise 2^R deviation from the conjugate transpose.
    pub fn hermitian_residual(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).mag2());
            }
        }
        Ok(worst)
    }

    pub fn is_hermitian(&self, tol: Option<f64>) -> Result<bool> {
        let tol = tol.unwrap_or_else(|| self.default_tol());
        Ok(self.hermitian_residual()? <= tol)
    }

    /// Largest entrywise 2^R deviation of `U*U` and `UU*` from the identity.
    pub fn unitary_residual(&self) -> Result<f64> {
        let n = self.require_square()?;
        let ua = self.adjoint();
        let eye = Self::identity(n);
        let a = (&ua.matmul(self)? - &eye).max_abs();
        let b = (&self.matmul(&ua)? - &eye).max_abs();
        Ok(a.max(b))
    }

    pub fn is_unitary(&self, tol: Option<f64>) -> Result<bool> {
        let tol = tol.unwrap_or_else(|| self.default_tol());
        Ok(self.unitary_residual()? <= tol)
    }

    /// `Q - λI` for a dual number shift.
    pub fn shifted(&self, lambda: DualNumber) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)] -= DualQuaternion::from_dual_number(lambda);
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(*b)))
    }

    pub fn is_zero(&self) -> bool {
        self.as_slice().iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quaternion as Q;
    use proptest::prelude::*;

    fn dq(st: Q, du: Q) -> DualQuaternion {
        DualQuaternion::new(st, du)
    }

    fn unit_example() -> DualQuaternion {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DualQuaternion::from_array([s, 0.0, s, 0.0, s, 0.0, -s, 0.0])
    }

    #[test]
    fn matvec_examples() {
        let j = DualQuaternion::from(Q::J);
        let i = DualQuaternion::from(Q::I);
        let d = DQMatrix::from_diagonal(&[j, j]);
        let v = DQVector::new(vec![i, i]).unwrap();
        let out = d.dq_matvec(&v).unwrap();
        assert_eq!(out[0], DualQuaternion::from(-Q::K));
        assert_eq!(out[1], DualQuaternion::from(-Q::K));
        let eye = DQMatrix::identity(2);
        assert_eq!(eye.dq_matvec(&v).unwrap(), v);
        assert!(eye.dq_matvec(&DQVector::zeros(3)).is_err());
    }

    #[test]
    fn vector_norms() {
        let v = DQVector::new(vec![DualQuaternion::ONE, Q::J.into()]).unwrap();
        assert!((v.norm2r() - 2f64.sqrt()).abs() < 1e-15);
        let w = DQVector::new(vec![dq(Q::ONE, Q::I), Q::J.into()]).unwrap();
        assert!((w.norm2r() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(DQVector::zeros(3).norm2(), DualNumber::new(0.0, 0.0));
        let eps = DQVector::new(vec![dq(Q::ZERO, Q::new(0.0, 3.0, 4.0, 0.0))]).unwrap();
        assert_eq!(eps.norm2(), DualNumber::new(0.0, 5.0));
    }

    #[test]
    fn matrix_norms() {
        assert!((DQMatrix::identity(2).norm_fr() - 2f64.sqrt()).abs() < 1e-15);
        let m = DQMatrix::from_rows(&[vec![dq(Q::J, Q::K)]]).unwrap();
        assert!((m.norm_fr() - 2f64.sqrt()).abs() < 1e-15);
        let pure_dual = DQMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                dq(Q::ZERO, Q::ONE)
            } else {
                DualQuaternion::ZERO
            }
        });
        assert_eq!(pure_dual.norm_f(), DualNumber::new(0.0, 2f64.sqrt()));
    }

    #[test]
    fn structure_predicates() {
        let q = unit_example();
        let eye = DQMatrix::identity(3);
        assert!(eye.is_hermitian(None).unwrap());
        assert!(eye.is_unitary(None).unwrap());
        let h = DQMatrix::from_rows(&[
            vec![DualQuaternion::ZERO, q],
            vec![q.conj(), DualQuaternion::ZERO],
        ])
        .unwrap();
        assert!(h.is_hermitian(None).unwrap());
        assert!(DQMatrix::from_diagonal(&[q, q.conj()]).is_unitary(None).unwrap());
        assert!(!DQMatrix::from_diagonal(&[q.scale(2.0)]).is_unitary(None).unwrap());
        assert!(DQMatrix::zeros(2, 3).is_hermitian(None).is_err());
    }

    #[test]
    fn side_scaling() {
        let v = DQVector::new(vec![Q::I.into()]).unwrap();
        assert_eq!(v.scale(Q::J.into(), Side::Right)[0], Q::K.into());
        assert_eq!(v.scale(Q::J.into(), Side::Left)[0], (-Q::K).into());
        assert_eq!(v.scale(DualQuaternion::ONE, Side::Right), v);
    }

    #[test]
    fn normalization_branches() {
        let v = DQVector::new(vec![dq(Q::new(3.0, 0.0, 0.0, 0.0), Q::I), Q::J.scale(4.0).into()]).unwrap();
        let (u, degenerate) = v.normalized().unwrap();
        assert!(!degenerate);
        let n = u.norm2();
        assert!((n.st - 1.0).abs() < 1e-15 && n.du.abs() < 1e-15);
        let e = DQVector::new(vec![dq(Q::ZERO, Q::K.scale(2.0))]).unwrap();
        let (u, degenerate) = e.normalized().unwrap();
        assert!(degenerate);
        assert_eq!(u[0], Q::K.into());
        assert_eq!(DQVector::zeros(2).normalized(), Err(Error::DegenerateStart));
    }

    #[test]
    fn json_is_eight_reals() {
        let v = DQVector::new(vec![DualQuaternion::ONE]).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[[1.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0]]");
        let back: DQVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<DQVector>("[]").is_err());
        let m: DQMatrix = serde_json::from_str("[[[0,0,1,0,0,0,0,1]]]").unwrap();
        assert_eq!(m[(0, 0)], dq(Q::J, Q::K));
    }

    fn dqs() -> impl Strategy<Value = DualQuaternion> {
        prop::array::uniform8(-2.0..2.0f64).prop_map(DualQuaternion::from_array)
    }

    fn mat(n: usize) -> impl Strategy<Value = DQMatrix> {
        prop::collection::vec(dqs(), n * n).prop_map(move |d| DQMatrix::from_vec(n, n, d).unwrap())
    }

    proptest! {
        #[test]
        fn product_is_associative(a in mat(3), b in mat(3), c in mat(3)) {
            let l = a.matmul(&b).unwrap().matmul(&c).unwrap();
            let r = a.matmul(&b.matmul(&c).unwrap()).unwrap();
            prop_assert!(l.max_abs_diff(&r) < 1e-12 * (1.0 + l.max_abs()));
        }

        #[test]
        fn product_distributes(a in mat(3), b in mat(3), c in mat(3)) {
            let l = a.matmul(&(&b + &c)).unwrap();
            let r = &a.matmul(&b).unwrap() + &a.matmul(&c).unwrap();
            prop_assert!(l.max_abs_diff(&r) < 1e-12 * (1.0 + l.max_abs()));
        }

        #[test]
        fn two_r_norm_sums_parts(v in prop::collection::vec(dqs(), 1..6)) {
            let v = DQVector::new(v).unwrap();
            let expect = v.standard_norm_sqr() + v.dual_norm_sqr();
            prop_assert!((v.norm2r().powi(2) - expect).abs() < 1e-12 * (1.0 + expect));
        }

        #[test]
        fn adjoint_reverses_products(a in mat(2), b in mat(2)) {
            let l = a.matmul(&b).unwrap().adjoint();
            let r = b.adjoint().matmul(&a.adjoint()).unwrap();
            prop_assert!(l.max_abs_diff(&r) < 1e-12);
        }
    }
}
