use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{DualComplex, DualNumber, Quaternion};
use crate::error::{Error, Result};

/// Dual quaternion `st + du·ε` with quaternion standard and dual parts.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DualQuaternion {
    pub st: Quaternion,
    pub du: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: Self = Self::new(Quaternion::ONE, Quaternion::ZERO);

    #[inline]
    pub const fn new(st: Quaternion, du: Quaternion) -> Self {
        Self { st, du }
    }

    /// Coefficients ordered `[w, x, y, z, w_ε, x_ε, y_ε, z_ε]`.
    #[inline]
    pub fn from_array(a: [f64; 8]) -> Self {
        Self::new(
            Quaternion::new(a[0], a[1], a[2], a[3]),
            Quaternion::new(a[4], a[5], a[6], a[7]),
        )
    }

    #[inline]
    pub fn to_array(self) -> [f64; 8] {
        let (s, d) = (self.st, self.du);
        [s.w, s.x, s.y, s.z, d.w, d.x, d.y, d.z]
    }

    #[inline]
    pub fn from_real(r: f64) -> Self {
        Self::new(Quaternion::real(r), Quaternion::ZERO)
    }

    #[inline]
    pub fn from_dual_number(d: DualNumber) -> Self {
        Self::new(Quaternion::real(d.st), Quaternion::real(d.du))
    }

    /// Embeds a dual complex number, mapping the complex unit to `i`.
    #[inline]
    pub fn from_dual_complex(d: DualComplex) -> Self {
        Self::new(
            Quaternion::new(d.st.re, d.st.im, 0.0, 0.0),
            Quaternion::new(d.du.re, d.du.im, 0.0, 0.0),
        )
    }

    /// Splits as `a1 + a2 j + (a3 + a4 j)ε` with complex `a1..a4`.
    #[inline]
    pub fn complex_parts(self) -> [Complex64; 4] {
        let (a1, a2) = self.st.complex_pair();
        let (a3, a4) = self.du.complex_pair();
        [a1, a2, a3, a4]
    }

    #[inline]
    pub fn from_complex_parts(p: [Complex64; 4]) -> Self {
        Self::new(
            Quaternion::from_complex_pair(p[0], p[1]),
            Quaternion::from_complex_pair(p[2], p[3]),
        )
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.st.conj(), self.du.conj())
    }

    #[inline]
    pub fn is_appreciable(self) -> bool {
        self.st.is_appreciable()
    }

    /// Dual-number absolute value
    /// `|st| + sc(st* du)/|st| ε`, or `|du| ε` when `st = 0`.
    pub fn abs(self) -> DualNumber {
        if self.is_appreciable() {
            let n = self.st.norm();
            DualNumber::new(n, self.st.dot(self.du) / n)
        } else {
            DualNumber::new(0.0, self.du.norm())
        }
    }

    /// `|p|² = p* p` as a dual number.
    #[inline]
    pub fn abs_sqr(self) -> DualNumber {
        DualNumber::new(self.st.norm_sqr(), 2.0 * self.st.dot(self.du))
    }

    /// Magnitude `sqrt(|st|² + |du|²)`.
    #[inline]
    pub fn mag2(self) -> f64 {
        (self.st.norm_sqr() + self.du.norm_sqr()).sqrt()
    }

    /// Deviation of `|p|` from 1, measured on both components.
    pub fn unit_deviation(self) -> f64 {
        let a = self.abs_sqr();
        (a.st - 1.0).abs().max(a.du.abs())
    }

    pub fn is_unit(self, tol: f64) -> bool {
        self.unit_deviation() <= tol
    }

    /// `st⁻¹ - st⁻¹ du st⁻¹ ε`.
    pub fn inverse(self) -> Result<Self> {
        if !self.is_appreciable() {
            return Err(Error::Singular);
        }
        let inv = self.st.inverse()?;
        Ok(Self::new(inv, -(inv * self.du * inv)))
    }

    /// Right division `p q⁻¹`, with the arbitrary dual coefficient of the
    /// degenerate branch fixed to zero.
    pub fn try_div(self, rhs: Self) -> Result<Self> {
        self.div_with(rhs, Quaternion::ZERO)
    }

    /// Right division. When both standard parts vanish the quotient is
    /// `p_I q_I⁻¹ + c ε` with `c = c_choice`.
    pub fn div_with(self, rhs: Self, c_choice: Quaternion) -> Result<Self> {
        if rhs.is_appreciable() {
            Ok(self * rhs.inverse()?)
        } else if !self.is_appreciable() && rhs.du.is_appreciable() {
            Ok(Self::new(self.du * rhs.du.inverse()?, c_choice))
        } else {
            Err(Error::UndefinedDivision)
        }
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.st.scale(s), self.du.scale(s))
    }

    /// Product with a dual number; dual numbers commute with everything.
    #[inline]
    pub fn scale_dual(self, s: DualNumber) -> Self {
        Self::new(self.st.scale(s.st), self.du.scale(s.st) + self.st.scale(s.du))
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.st.max_abs_diff(other.st).max(self.du.max_abs_diff(other.du))
    }
}

impl From<Quaternion> for DualQuaternion {
    fn from(q: Quaternion) -> Self {
        Self::new(q, Quaternion::ZERO)
    }
}

impl Add for DualQuaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.st + r.st, self.du + r.du)
    }
}

impl Sub for DualQuaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.st - r.st, self.du - r.du)
    }
}

impl Neg for DualQuaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.st, -self.du)
    }
}

impl AddAssign for DualQuaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for DualQuaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

/// `p_st q_st + (p_st q_I + p_I q_st)ε`.
impl Mul for DualQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        Self::new(self.st * q.st, self.st * q.du + self.du * q.st)
    }
}

impl Zero for DualQuaternion {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl One for DualQuaternion {
    fn one() -> Self {
        Self::ONE
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})ε", self.st, self.du)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const Q0: Quaternion = Quaternion::ZERO;

    fn dq(st: Quaternion, du: Quaternion) -> DualQuaternion {
        DualQuaternion::new(st, du)
    }

    fn screw_q() -> DualQuaternion {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DualQuaternion::from_array([s, 0.0, s, 0.0, s, 0.0, -s, 0.0])
    }

    #[test]
    fn product() {
        assert_eq!(dq(Quaternion::ONE, I) * dq(J, Q0), dq(J, K));
        let q = DualQuaternion::from_array([0.1, 0.2, -0.3, 0.4, 1.0, -2.0, 0.5, 0.25]);
        assert_eq!(DualQuaternion::ONE * q, q);
        assert_eq!(dq(Q0, I) * dq(Q0, J), DualQuaternion::ZERO);
    }

    #[test]
    fn conjugate() {
        assert_eq!(DualQuaternion::ONE.conj(), DualQuaternion::ONE);
        assert_eq!(dq(J, K).conj(), dq(-J, -K));
        let q = DualQuaternion::from_array([0.1, 0.2, -0.3, 0.4, 1.0, -2.0, 0.5, 0.25]);
        assert_eq!(q.conj().conj(), q);
    }

    #[test]
    fn absolute_value_and_magnitude() {
        let a = screw_q().abs();
        assert!((a.st - 1.0).abs() < 1e-15 && a.du.abs() < 1e-15);
        assert_eq!(dq(Q0, I).abs(), DualNumber::new(0.0, 1.0));
        assert_eq!(DualQuaternion::ONE.abs(), DualNumber::new(1.0, 0.0));
        assert_eq!(DualQuaternion::ONE.mag2(), 1.0);
        assert!((dq(J, K).mag2() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(DualQuaternion::ZERO.mag2(), 0.0);
    }

    #[test]
    fn inverse() {
        assert_eq!(DualQuaternion::ONE.inverse().unwrap(), DualQuaternion::ONE);
        let q = screw_q();
        assert!(q.inverse().unwrap().max_abs_diff(q.conj()) < 1e-15);
        assert_eq!(dq(Q0, I).inverse(), Err(Error::Singular));
    }

    #[test]
    fn division() {
        let p = DualQuaternion::from_array([0.1, 0.2, -0.3, 0.4, 1.0, -2.0, 0.5, 0.25]);
        assert_eq!(p.try_div(DualQuaternion::ONE).unwrap(), p);
        assert!(p.try_div(p).unwrap().max_abs_diff(DualQuaternion::ONE) < 1e-14);
        // degenerate branch: j k⁻¹ = j (-k) = -i
        let r = dq(Q0, J).try_div(dq(Q0, K)).unwrap();
        assert_eq!(r, dq(J * K.inverse().unwrap(), Q0));
        assert_eq!(r.st, -I);
        let c = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(dq(Q0, J).div_with(dq(Q0, K), c).unwrap().du, c);
        assert_eq!(dq(I, Q0).try_div(dq(Q0, K)), Err(Error::UndefinedDivision));
    }

    #[test]
    fn display_matches_print_style() {
        let a = DualQuaternion::from_array([1.0, 2.0, 3.0, 4.0, 4.0, 3.0, 2.0, 1.0]);
        assert_eq!(
            a.to_string(),
            "1.0000+2.0000i+3.0000j+4.0000k + (4.0000+3.0000i+2.0000j+1.0000k)ε"
        );
    }

    fn dquat() -> impl Strategy<Value = DualQuaternion> {
        prop::array::uniform8(-3.0..3.0f64).prop_map(DualQuaternion::from_array)
    }

    fn unit_dq() -> impl Strategy<Value = DualQuaternion> {
        (prop::array::uniform4(-1.0..1.0f64), prop::array::uniform3(-2.0..2.0f64)).prop_filter_map(
            "non-zero rotation",
            |(r, t)| {
                let st = Quaternion::from_array(r).normalize().ok()?;
                let du = Quaternion::pure(t) * st * 0.5;
                Some(DualQuaternion::new(st, du))
            },
        )
    }

    proptest! {
        #[test]
        fn inverse_multiplies_back(p in dquat()) {
            prop_assume!(p.st.norm() > 0.1);
            let inv = p.inverse().unwrap();
            let scale = (1.0 + p.du.norm()) / p.st.norm_sqr();
            prop_assert!((p * inv).max_abs_diff(DualQuaternion::ONE) < 1e-12 * scale * 10.0);
            prop_assert!((inv * p).max_abs_diff(DualQuaternion::ONE) < 1e-12 * scale * 10.0);
        }

        #[test]
        fn unit_products_stay_unit(p in unit_dq(), q in unit_dq()) {
            let a = (p * q).abs();
            prop_assert!((a.st - 1.0).abs() < 1e-12 && a.du.abs() < 1e-12);
        }

        #[test]
        fn complex_split_round_trips(p in dquat()) {
            prop_assert_eq!(DualQuaternion::from_complex_parts(p.complex_parts()), p);
        }
    }
}
