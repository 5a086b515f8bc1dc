//! Dual numbers `a + bε` with `ε² = 0`, over real or complex coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::APPRECIABLE_TOL;
use crate::error::{Error, Result};

/// Coefficient field of a dual number: `f64` or [`Complex64`].
pub trait DualScalar:
    Copy
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn magnitude(self) -> f64;
    fn conjugate(self) -> Self;
}

impl DualScalar for f64 {
    #[inline]
    fn magnitude(self) -> f64 {
        self.abs()
    }
    #[inline]
    fn conjugate(self) -> Self {
        self
    }
}

impl DualScalar for Complex64 {
    #[inline]
    fn magnitude(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn conjugate(self) -> Self {
        self.conj()
    }
}

/// `st + du·ε`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Dual<T> {
    pub st: T,
    pub du: T,
}

/// Real dual number.
pub type DualNumber = Dual<f64>;
/// Dual complex number.
pub type DualComplex = Dual<Complex64>;

impl<T: DualScalar> Dual<T> {
    #[inline]
    pub const fn new(st: T, du: T) -> Self {
        Self { st, du }
    }

    #[inline]
    pub fn from_standard(st: T) -> Self {
        Self { st, du: T::zero() }
    }

    /// Pure infinitesimal `du·ε`.
    #[inline]
    pub fn infinitesimal(du: T) -> Self {
        Self { st: T::zero(), du }
    }

    #[inline]
    pub fn is_appreciable(&self) -> bool {
        self.st.magnitude() > APPRECIABLE_TOL
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.st.conjugate(), self.du.conjugate())
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self::new(self.st * s, self.du * s)
    }

    /// Division with the arbitrary dual coefficient of the degenerate branch
    /// fixed to zero.
    pub fn try_div(self, rhs: Self) -> Result<Self> {
        self.div_with(rhs, T::zero())
    }

    /// Division. When both standard parts vanish the quotient is
    /// `a_I/b_I + c·ε` with `c = c_choice`.
    pub fn div_with(self, rhs: Self, c_choice: T) -> Result<Self> {
        if rhs.is_appreciable() {
            let inv = T::one() / rhs.st;
            let st = self.st * inv;
            Ok(Self::new(st, self.du * inv - st * rhs.du * inv))
        } else if !self.is_appreciable() && rhs.du.magnitude() > APPRECIABLE_TOL {
            Ok(Self::new(self.du / rhs.du, c_choice))
        } else {
            Err(Error::UndefinedDivision)
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.st - other.st).magnitude() <= tol && (self.du - other.du).magnitude() <= tol
    }
}

impl Dual<f64> {
    /// Absolute value: `|a_st| + sgn(a_st)·a_I ε`, or `|a_I|ε` for an
    /// infinitesimal argument.
    pub fn abs(self) -> Self {
        if self.is_appreciable() {
            Self::new(self.st.abs(), self.st.signum() * self.du)
        } else {
            Self::new(0.0, self.du.abs())
        }
    }

    /// Lexicographic order: standard part first, dual part breaks ties.
    pub fn dual_cmp(&self, other: &Self) -> Ordering {
        match self.st.partial_cmp(&other.st) {
            Some(Ordering::Equal) | None => {
                self.du.partial_cmp(&other.du).unwrap_or(Ordering::Equal)
            }
            Some(ord) => ord,
        }
    }

    /// `sqrt(a_st) + a_I / (2 sqrt(a_st)) ε`; defined for positive standard
    /// part and for zero.
    pub fn sqrt(self) -> Result<Self> {
        if self.st > 0.0 {
            let r = self.st.sqrt();
            Ok(Self::new(r, self.du / (2.0 * r)))
        } else if self.st == 0.0 && self.du == 0.0 {
            Ok(Self::zero())
        } else {
            Err(Error::NegativeSqrt)
        }
    }

    #[inline]
    pub fn to_complex(self) -> DualComplex {
        Dual::new(Complex64::new(self.st, 0.0), Complex64::new(self.du, 0.0))
    }
}

impl Dual<Complex64> {
    #[inline]
    pub fn from_parts(st_re: f64, st_im: f64, du_re: f64, du_im: f64) -> Self {
        Self::new(Complex64::new(st_re, st_im), Complex64::new(du_re, du_im))
    }

    /// `|st|² + 2 Re(conj(st)·du) ε`, i.e. `conj(a)·a`.
    pub fn norm_sqr(self) -> DualNumber {
        Dual::new(self.st.norm_sqr(), 2.0 * (self.st.conj() * self.du).re)
    }
}

impl PartialOrd for Dual<f64> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.dual_cmp(other))
    }
}

impl<T: DualScalar> Zero for Dual<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.st.is_zero() && self.du.is_zero()
    }
}

impl<T: DualScalar> One for Dual<T> {
    fn one() -> Self {
        Self::new(T::one(), T::zero())
    }
}

impl<T: DualScalar> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.st + rhs.st, self.du + rhs.du)
    }
}

impl<T: DualScalar> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.st - rhs.st, self.du - rhs.du)
    }
}

impl<T: DualScalar> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.st * rhs.st, self.st * rhs.du + self.du * rhs.st)
    }
}

impl<T: DualScalar> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.st, -self.du)
    }
}

impl<T: DualScalar> AddAssign for Dual<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: DualScalar> SubAssign for Dual<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl fmt::Display for Dual<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}{:+.4}ε", self.st, self.du)
    }
}

impl fmt::Display for Dual<Complex64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.4}{:+.4}i) + ({:.4}{:+.4}i)ε",
            self.st.re, self.st.im, self.du.re, self.du.im
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(st: f64, du: f64) -> DualNumber {
        Dual::new(st, du)
    }

    #[test]
    fn add_and_mul() {
        assert_eq!(d(1.0, 2.0) + d(3.0, 4.0), d(4.0, 6.0));
        assert_eq!(d(0.0, 3.0) * d(0.0, 5.0), d(0.0, 0.0));
        let b = d(-2.5, 7.0);
        assert_eq!(DualNumber::one() * b, b);
    }

    #[test]
    fn division() {
        assert_eq!(d(2.0, 3.0).try_div(d(1.0, 1.0)).unwrap(), d(2.0, 1.0));
        let a = d(3.0, -1.5);
        assert!(a.try_div(a).unwrap().approx_eq(&DualNumber::one(), 1e-15));
        assert_eq!(d(0.0, 4.0).try_div(d(0.0, 2.0)).unwrap(), d(2.0, 0.0));
        assert_eq!(d(0.0, 4.0).div_with(d(0.0, 2.0), 7.0).unwrap(), d(2.0, 7.0));
    }

    #[test]
    fn undefined_division() {
        assert_eq!(d(1.0, 0.0).try_div(d(0.0, 1.0)), Err(Error::UndefinedDivision));
        assert_eq!(d(0.0, 1.0).try_div(d(0.0, 0.0)), Err(Error::UndefinedDivision));
    }

    #[test]
    fn absolute_value() {
        assert_eq!(d(-3.0, 2.0).abs(), d(3.0, -2.0));
        assert_eq!(d(0.0, -5.0).abs(), d(0.0, 5.0));
        assert_eq!(d(1.0, 0.0).abs(), d(1.0, 0.0));
    }

    #[test]
    fn ordering() {
        assert_eq!(d(1.0, 0.0).dual_cmp(&d(0.0, 9.0)), Ordering::Greater);
        assert_eq!(d(2.0, 1.0).dual_cmp(&d(2.0, 0.0)), Ordering::Greater);
        assert_eq!(d(2.0, 1.0).dual_cmp(&d(2.0, 1.0)), Ordering::Equal);
        assert!(d(0.5, 100.0) < d(1.0, -100.0));
    }

    #[test]
    fn square_root() {
        let r = d(4.0, 4.0).sqrt().unwrap();
        assert_eq!(r, d(2.0, 1.0));
        assert_eq!(r * r, d(4.0, 4.0));
        assert_eq!(d(1.0, 0.0).sqrt().unwrap(), d(1.0, 0.0));
        assert_eq!(d(0.0, 0.0).sqrt().unwrap(), d(0.0, 0.0));
        assert_eq!(d(0.0, 1.0).sqrt(), Err(Error::NegativeSqrt));
        assert_eq!(d(-1.0, 0.0).sqrt(), Err(Error::NegativeSqrt));
    }

    #[test]
    fn complex_division_and_conj() {
        let a = DualComplex::from_parts(1.0, 2.0, -0.5, 3.0);
        let b = DualComplex::from_parts(-2.0, 0.5, 1.0, 1.0);
        let q = a.try_div(b).unwrap();
        assert!((q * b).approx_eq(&a, 1e-14));
        assert_eq!(a.conj().conj(), a);
        let n = a.norm_sqr();
        let prod = a.conj() * a;
        assert!((n.st - prod.st.re).abs() < 1e-14 && (n.du - prod.du.re).abs() < 1e-14);
    }

    fn real() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn dn() -> impl Strategy<Value = DualNumber> {
        (real(), real()).prop_map(|(a, b)| d(a, b))
    }

    fn dc() -> impl Strategy<Value = DualComplex> {
        (real(), real(), real(), real()).prop_map(|(a, b, c, e)| DualComplex::from_parts(a, b, c, e))
    }

    proptest! {
        #[test]
        fn ring_laws_real(a in dn(), b in dn(), c in dn()) {
            prop_assert!(((a * b) * c).approx_eq(&(a * (b * c)), 1e-12 * 1e3));
            prop_assert!((a * (b + c)).approx_eq(&(a * b + a * c), 1e-12 * 1e2));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a + b, b + a);
        }

        #[test]
        fn ring_laws_complex(a in dc(), b in dc(), c in dc()) {
            prop_assert!(((a * b) * c).approx_eq(&(a * (b * c)), 1e-12 * 1e3));
            prop_assert!((a * (b + c)).approx_eq(&(a * b + a * c), 1e-12 * 1e2));
            prop_assert!((a * b).approx_eq(&(b * a), 1e-12));
        }

        #[test]
        fn epsilon_is_nilpotent(a in real(), b in real()) {
            prop_assert_eq!(d(0.0, a) * d(0.0, b), d(0.0, 0.0));
        }

        #[test]
        fn division_round_trips(a in dc(), b in dc()) {
            prop_assume!(b.st.norm() > 1e-3);
            let q = a.try_div(b).unwrap();
            let scale = 1.0 + (a.st.norm() + a.du.norm()) * (1.0 + b.du.norm() / b.st.norm()) / b.st.norm();
            prop_assert!((q * b).approx_eq(&a, 1e-12 * scale * 10.0));
        }

        #[test]
        fn order_is_total(a in dn(), b in dn(), c in dn()) {
            let ab = a.dual_cmp(&b);
            prop_assert_eq!(ab.reverse(), b.dual_cmp(&a));
            if ab != Ordering::Greater && b.dual_cmp(&c) != Ordering::Greater {
                prop_assert!(a.dual_cmp(&c) != Ordering::Greater);
            }
        }

        #[test]
        fn sqrt_squares_back(st in 1e-3..100.0f64, du in real()) {
            let x = d(st, du);
            let r = x.sqrt().unwrap();
            prop_assert!((r * r).approx_eq(&x, 1e-12 * (1.0 + du.abs() + st)));
        }
    }
}
