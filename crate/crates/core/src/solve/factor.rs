use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::flops::{FlopCount, FlopCounter};
use crate::error::{Error, Result};
use crate::linalg::{Conj, Magnitude, Matrix};

/// Pivots smaller than this fraction of the largest entry are singular.
pub const PIVOT_TOL: f64 = 1e-13;

/// Entry type of a factorizable matrix, with the real-operation cost of
/// each arithmetic step.
pub trait Field:
    Copy
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Conj
    + Magnitude
{
    const ADD: FlopCount;
    const MUL: FlopCount;
    const DIV: FlopCount;
    /// Division by a real number.
    const DIV_REAL: FlopCount;

    fn real_part(self) -> f64;
    fn imag_magnitude(self) -> f64;
    fn from_real(x: f64) -> Self;
    fn div_real(self, r: f64) -> Self;
}

impl Field for f64 {
    const ADD: FlopCount = FlopCount::new(1, 0, 0, 0);
    const MUL: FlopCount = FlopCount::new(0, 1, 0, 0);
    const DIV: FlopCount = FlopCount::new(0, 0, 1, 0);
    const DIV_REAL: FlopCount = FlopCount::new(0, 0, 1, 0);

    fn real_part(self) -> f64 {
        self
    }
    fn imag_magnitude(self) -> f64 {
        0.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn div_real(self, r: f64) -> Self {
        self / r
    }
}

impl Field for Complex64 {
    const ADD: FlopCount = FlopCount::new(2, 0, 0, 0);
    const MUL: FlopCount = FlopCount::new(2, 4, 0, 0);
    const DIV: FlopCount = FlopCount::new(3, 6, 2, 0);
    const DIV_REAL: FlopCount = FlopCount::new(0, 0, 2, 0);

    fn real_part(self) -> f64 {
        self.re
    }
    fn imag_magnitude(self) -> f64 {
        self.im.abs()
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn div_real(self, r: f64) -> Self {
        Complex64::new(self.re / r, self.im / r)
    }
}

/// Factorization used for the standard-part solves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Lu,
    Cholesky,
}

/// `PA = LU` with unit lower `L`, packed in one matrix.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
}

impl<T: Field> Lu<T> {
    pub fn factor(a: &Matrix<T>, flops: &mut FlopCounter) -> Result<Self> {
        let n = a.require_square()?;
        let scale = a.max_abs();
        let mut m = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        flops.note_factorization();
        let data = m.as_mut_slice();
        for k in 0..n {
            let (mut p, mut best) = (k, -1.0);
            for i in k..n {
                let v = data[i * n + k].magnitude();
                if v > best {
                    p = i;
                    best = v;
                }
            }
            if !(best >= PIVOT_TOL * scale) || best == 0.0 {
                return Err(Error::SingularPivot { step: k, pivot: best });
            }
            if p != k {
                for j in 0..n {
                    data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let (top, bottom) = data.split_at_mut((k + 1) * n);
            let prow = &top[k * n..];
            let piv = prow[k];
            for row in bottom.chunks_exact_mut(n) {
                let l = row[k] / piv;
                row[k] = l;
                for (x, &u) in row[k + 1..].iter_mut().zip(&prow[k + 1..]) {
                    *x = *x - l * u;
                }
            }
            let below = (n - k - 1) as u64;
            flops.charge(T::DIV, below);
            flops.charge(T::MUL + T::ADD, below * below);
        }
        Ok(Self { lu: m, perm })
    }

    pub fn solve(&self, b: &[T], flops: &mut FlopCounter) -> Result<Vec<T>> {
        let n = self.perm.len();
        if b.len() != n {
            return Err(Error::dims(n, b.len()));
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s = row[..i].iter().zip(&x[..i]).fold(T::zero(), |acc, (&l, &y)| acc + l * y);
            x[i] = x[i] - s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s = row[i + 1..].iter().zip(&x[i + 1..]).fold(T::zero(), |acc, (&u, &y)| acc + u * y);
            x[i] = (x[i] - s) / row[i];
        }
        let tri = (n * (n - 1) / 2) as u64;
        flops.charge(T::MUL + T::ADD, 2 * tri);
        flops.charge(T::DIV, n as u64);
        Ok(x)
    }

    /// `(L, U, P)` with `P A = L U`, unpacked for inspection.
    pub fn unpack(&self) -> (Matrix<T>, Matrix<T>, Vec<usize>) {
        let n = self.perm.len();
        let l = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[(i, j)],
            std::cmp::Ordering::Equal => T::one(),
            std::cmp::Ordering::Less => T::zero(),
        });
        let u = Matrix::from_fn(n, n, |i, j| if i <= j { self.lu[(i, j)] } else { T::zero() });
        (l, u, self.perm.clone())
    }
}

/// `A = L L*` for Hermitian positive definite `A`.
#[derive(Clone, Debug)]
pub struct Cholesky<T> {
    l: Matrix<T>,
}

impl<T: Field> Cholesky<T> {
    pub fn factor(a: &Matrix<T>, flops: &mut FlopCounter) -> Result<Self> {
        let n = a.require_square()?;
        let scale = a.max_abs();
        let herm = (a - &a.adjoint()).max_abs();
        if herm > 1e-10 * scale.max(1.0) {
            return Err(Error::HermitianViolation { residue: herm });
        }
        flops.note_factorization();
        let mut l = Matrix::<T>::zeros(n, n);
        for j in 0..n {
            let (top, rest) = l.as_mut_slice().split_at_mut(j * n + n);
            let lj = &mut top[j * n..];
            let s = a[(j, j)]
                - lj[..j].iter().fold(T::zero(), |acc, &x| acc + x * x.conj());
            let d = s.real_part();
            if !(d > PIVOT_TOL * scale) {
                return Err(Error::NotPositiveDefinite { step: j });
            }
            let d = d.sqrt();
            lj[j] = T::from_real(d);
            let lj = &top[j * n..j * n + j];
            for (r, li) in rest.chunks_exact_mut(n).enumerate() {
                let i = j + 1 + r;
                let s = a[(i, j)]
                    - li[..j].iter().zip(lj).fold(T::zero(), |acc, (&x, &y)| acc + x * y.conj());
                li[j] = s.div_real(d);
            }
            let below = (n - j - 1) as u64;
            flops.charge(T::MUL + T::ADD, j as u64 * (below + 1));
            flops.charge(FlopCount::new(0, 0, 0, 1), 1);
            flops.charge(T::DIV_REAL, below);
        }
        Ok(Self { l })
    }

    pub fn solve(&self, b: &[T], flops: &mut FlopCounter) -> Result<Vec<T>> {
        let n = self.l.rows();
        if b.len() != n {
            return Err(Error::dims(n, b.len()));
        }
        let mut x = b.to_vec();
        for i in 0..n {
            let row = self.l.row(i);
            let s = row[..i].iter().zip(&x[..i]).fold(T::zero(), |acc, (&l, &y)| acc + l * y);
            x[i] = (x[i] - s).div_real(row[i].real_part());
        }
        for i in (0..n).rev() {
            let mut s = T::zero();
            for j in i + 1..n {
                s = s + self.l[(j, i)].conj() * x[j];
            }
            x[i] = (x[i] - s).div_real(self.l[(i, i)].real_part());
        }
        let tri = (n * (n - 1) / 2) as u64;
        flops.charge(T::MUL + T::ADD, 2 * tri);
        flops.charge(T::DIV_REAL, 2 * n as u64);
        Ok(x)
    }

    pub fn factor_l(&self) -> &Matrix<T> {
        &self.l
    }
}

/// Either factorization behind one interface.
#[derive(Clone, Debug)]
pub enum Factorization<T> {
    Lu(Lu<T>),
    Cholesky(Cholesky<T>),
}

impl<T: Field> Factorization<T> {
    pub fn new(a: &Matrix<T>, method: Method, flops: &mut FlopCounter) -> Result<Self> {
        match method {
            Method::Lu => Lu::factor(a, flops).map(Self::Lu),
            Method::Cholesky => Cholesky::factor(a, flops).map(Self::Cholesky),
        }
    }

    pub fn solve(&self, b: &[T], flops: &mut FlopCounter) -> Result<Vec<T>> {
        match self {
            Self::Lu(f) => f.solve(b, flops),
            Self::Cholesky(f) => f.solve(b, flops),
        }
    }

    pub fn method(&self) -> Method {
        match self {
            Self::Lu(_) => Method::Lu,
            Self::Cholesky(_) => Method::Cholesky,
        }
    }
}
