use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Dual, DualQuaternion, Quaternion};

/// Entry types that have a conjugate.
pub trait Conj: Copy {
    fn conj(self) -> Self;
}

impl Conj for f64 {
    #[inline]
    fn conj(self) -> Self {
        self
    }
}

impl Conj for Complex64 {
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
}

impl Conj for Quaternion {
    #[inline]
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
}

impl Conj for DualQuaternion {
    #[inline]
    fn conj(self) -> Self {
        DualQuaternion::conj(self)
    }
}

impl<T: crate::scalar::DualScalar> Conj for Dual<T> {
    #[inline]
    fn conj(self) -> Self {
        Dual::conj(self)
    }
}

/// Entry magnitude used for tolerance checks.
pub trait Magnitude: Copy {
    fn magnitude(self) -> f64;
}

impl Magnitude for f64 {
    #[inline]
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Magnitude for Complex64 {
    #[inline]
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

impl Magnitude for Quaternion {
    #[inline]
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

impl Magnitude for DualQuaternion {
    #[inline]
    fn magnitude(self) -> f64 {
        self.mag2()
    }
}

/// JSON representation of a single matrix entry.
pub trait EntryRepr: Sized {
    type Repr: Serialize + DeserializeOwned;
    fn to_repr(&self) -> Self::Repr;
    fn from_repr(r: Self::Repr) -> Self;
}

impl EntryRepr for f64 {
    type Repr = f64;
    fn to_repr(&self) -> f64 {
        *self
    }
    fn from_repr(r: f64) -> Self {
        r
    }
}

impl EntryRepr for Complex64 {
    type Repr = [f64; 2];
    fn to_repr(&self) -> [f64; 2] {
        [self.re, self.im]
    }
    fn from_repr(r: [f64; 2]) -> Self {
        Complex64::new(r[0], r[1])
    }
}

impl EntryRepr for Quaternion {
    type Repr = [f64; 4];
    fn to_repr(&self) -> [f64; 4] {
        self.to_array()
    }
    fn from_repr(r: [f64; 4]) -> Self {
        Quaternion::from_array(r)
    }
}

impl EntryRepr for DualQuaternion {
    type Repr = [f64; 8];
    fn to_repr(&self) -> [f64; 8] {
        self.to_array()
    }
    fn from_repr(r: [f64; 8]) -> Self {
        DualQuaternion::from_array(r)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RMatrix = Matrix<f64>;
pub type CMatrix = Matrix<Complex64>;

impl<T: Copy> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(rows * cols, data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::dims("non-empty matrix", format!("{r}x{c}")));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::dims(c, row.len()));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Copy + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Copy + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Conj> Matrix<T> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise conjugate (no transpose).
    pub fn conj(&self) -> Self {
        self.map(Conj::conj)
    }
}

impl<T: Magnitude> Matrix<T> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.magnitude()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let m = x.magnitude();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }
}

impl<T> Matrix<T>
where
    T: Copy + Zero + Add<Output = T> + Mul<Output = T>,
{
    /// `self · other`, factor order preserved entrywise.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dims(
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::dims(self.cols, v.len()));
        }
        Ok(self
            .data
            .chunks(self.cols)
            .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect())
    }
}

impl<T: Copy + Add<Output = T>> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Copy + Sub<Output = T>> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Copy + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Copy + EntryRepr> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<T::Repr>> = self
            .data
            .chunks(self.cols)
            .map(|r| r.iter().map(EntryRepr::to_repr).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de, T: Copy + EntryRepr> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<T::Repr>> = Vec::deserialize(d)?;
        let rows: Vec<Vec<T>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(T::from_repr).collect())
            .collect();
        Matrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_matmul_and_transpose() {
        let a = RMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = RMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab.to_rows(), vec![vec![2.0, 1.0], vec![4.0, 3.0]]);
        assert_eq!(a.transpose()[(0, 1)], 3.0);
        assert_eq!(a.matvec(&[1.0, 1.0]).unwrap(), vec![3.0, 7.0]);
        assert!(a.matmul(&RMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RMatrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(serde_json::from_str::<RMatrix>("[]").is_err());
    }

    #[test]
    fn complex_json_shape() {
        let m = CMatrix::from_rows(&[vec![Complex64::new(1.0, -2.0)]]).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[[1.0,-2.0]]]");
        let back: CMatrix = serde_json::from_str("[[[1.0,-2.0]]]").unwrap();
        assert_eq!(back, m);
    }
}
