use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::APPRECIABLE_TOL;
use crate::error::{Error, Result};

/// Real quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Pure quaternion from a 3-vector.
    #[inline]
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    /// Builds `c1 + c2 j` where `c1 = w + x i` and `c2 = y + z i`.
    #[inline]
    pub fn from_complex_pair(c1: Complex64, c2: Complex64) -> Self {
        Self::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// Inverse of [`Quaternion::from_complex_pair`].
    #[inline]
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Magnitude `|p|`.
    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of the coefficient 4-vectors, equal to
    /// `sc(p* q)`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    #[inline]
    pub fn is_appreciable(self) -> bool {
        self.norm() > APPRECIABLE_TOL
    }

    /// `p* / |p|²`.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2.sqrt() <= APPRECIABLE_TOL {
            return Err(Error::Singular);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn normalize(self) -> Result<Self> {
        let n = self.norm();
        if n <= APPRECIABLE_TOL {
            return Err(Error::Singular);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

/// Hamilton product `[p0 q0 - p·q, p0 q + q0 p + p × q]`.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y + p.y * q.w + p.z * q.x - p.x * q.z,
            p.w * q.z + p.z * q.w + p.x * q.y - p.y * q.x,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Self::ONE
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.4}{:+.4}i{:+.4}j{:+.4}k",
            self.w, self.x, self.y, self.z
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    #[test]
    fn multiplication_table() {
        assert_eq!(I * I, -ONE);
        assert_eq!(J * J, -ONE);
        assert_eq!(K * K, -ONE);
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(J * I, -K);
    }

    #[test]
    fn product_examples() {
        let q = Quaternion::new(0.3, -1.0, 2.0, 0.5);
        assert_eq!(ONE * q, q);
        assert_eq!((ONE + I) * J, J + K);
    }

    #[test]
    fn unary_ops() {
        assert_eq!(I.conj(), -I);
        assert_eq!(Quaternion::new(1.0, 2.0, 2.0, 0.0).norm(), 3.0);
        let inv = K.inverse().unwrap();
        assert_eq!(inv, -K);
        assert_eq!(K * inv, ONE);
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::Singular));
    }

    #[test]
    fn complex_pair_split() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let (c1, c2) = q.complex_pair();
        assert_eq!(c1, Complex64::new(1.0, 2.0));
        assert_eq!(c2, Complex64::new(3.0, 4.0));
        // c2 j = 3j + 4ij = 3j + 4k
        let c2j = Quaternion::from_complex_pair(Complex64::new(0.0, 0.0), c2);
        assert_eq!(c2j, Quaternion::new(3.0, 0.0, 0.0, 0.0) * J + Quaternion::new(0.0, 4.0, 0.0, 0.0) * J);
        assert_eq!(Quaternion::from_complex_pair(c1, c2), q);
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-5.0..5.0f64).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn magnitude_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn inverse_multiplies_back(p in quat()) {
            prop_assume!(p.norm() > 1e-3);
            let inv = p.inverse().unwrap();
            prop_assert!((p * inv).max_abs_diff(ONE) < 1e-12);
            prop_assert!((inv * p).max_abs_diff(ONE) < 1e-12);
        }

        #[test]
        fn conjugate_reverses_products(p in quat(), q in quat()) {
            prop_assert!(((p * q).conj()).max_abs_diff(q.conj() * p.conj()) < 1e-12);
        }
    }
}
