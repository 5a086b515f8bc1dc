use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::CMatrix;
use crate::error::{Error, Result};

/// Dual complex matrix `st + du·ε`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DCMatrix {
    pub st: CMatrix,
    pub du: CMatrix,
}

/// Dual complex column vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DCVector {
    pub st: Vec<Complex64>,
    pub du: Vec<Complex64>,
}

impl DCMatrix {
    pub fn new(st: CMatrix, du: CMatrix) -> Result<Self> {
        if st.shape() != du.shape() {
            return Err(Error::dims(
                format!("{:?}", st.shape()),
                format!("{:?}", du.shape()),
            ));
        }
        Ok(Self { st, du })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            st: CMatrix::zeros(rows, cols),
            du: CMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            st: CMatrix::identity(n),
            du: CMatrix::zeros(n, n),
        }
    }

    pub fn rows(&self) -> usize {
        self.st.rows()
    }

    pub fn cols(&self) -> usize {
        self.st.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.st.shape()
    }

    /// `(A + Bε)(C + Dε) = AC + (AD + BC)ε`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let st = self.st.matmul(&other.st)?;
        let du = &self.st.matmul(&other.du)? + &self.du.matmul(&other.st)?;
        Ok(Self { st, du })
    }

    pub fn matvec(&self, v: &DCVector) -> Result<DCVector> {
        let st = self.st.matvec(&v.st)?;
        let a = self.st.matvec(&v.du)?;
        let b = self.du.matvec(&v.st)?;
        let du = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Ok(DCVector { st, du })
    }

    /// Conjugate transpose of both parts.
    pub fn adjoint(&self) -> Self {
        Self {
            st: self.st.adjoint(),
            du: self.du.adjoint(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            st: &self.st + &other.st,
            du: &self.du + &other.du,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            st: &self.st - &other.st,
            du: &self.du - &other.du,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.st - &other.st).max_abs().max((&self.du - &other.du).max_abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.st.max_abs().max(self.du.max_abs())
    }

    /// Real norm `sqrt(‖st‖²_F + ‖du‖²_F)`.
    pub fn norm_fr(&self) -> f64 {
        self.st.frobenius().hypot(self.du.frobenius())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.st.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.st.is_square() {
            return false;
        }
        let eye = Self::identity(self.rows());
        let a = self.adjoint();
        match (a.matmul(self), self.matmul(&a)) {
            (Ok(l), Ok(r)) => l.max_abs_diff(&eye) <= tol && r.max_abs_diff(&eye) <= tol,
            _ => false,
        }
    }
}

impl DCVector {
    pub fn new(st: Vec<Complex64>, du: Vec<Complex64>) -> Result<Self> {
        if st.len() != du.len() {
            return Err(Error::dims(st.len(), du.len()));
        }
        Ok(Self { st, du })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            st: vec![Complex64::new(0.0, 0.0); n],
            du: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.st.len()
    }

    pub fn is_empty(&self) -> bool {
        self.st.is_empty()
    }

    /// Real norm `sqrt(‖st‖² + ‖du‖²)`.
    pub fn norm2r(&self) -> f64 {
        self.st
            .iter()
            .chain(&self.du)
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            st: self.st.iter().zip(&other.st).map(|(a, b)| a - b).collect(),
            du: self.du.iter().zip(&other.du).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.st
            .iter()
            .zip(&other.st)
            .chain(self.du.iter().zip(&other.du))
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}
