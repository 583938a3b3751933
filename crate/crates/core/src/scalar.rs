//! Real scalar abstraction shared by the double and double-double code paths.

use std::fmt::Debug;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_traits::Num;

use crate::dd::DoubleDouble;

/// Working precision of an evaluation or a dense solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    Double,
    DoubleDouble,
}

pub trait Real:
    Copy
    + Debug
    + Default
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Unit roundoff.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;

    fn from_usize(i: usize) -> Self {
        Self::from_f64(i as f64)
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `sqrt(a^2 + b^2)` without intermediate overflow.
    fn hypot(a: Self, b: Self) -> Self {
        let a = a.abs();
        let b = b.abs();
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big == Self::zero() {
            return big;
        }
        let r = small / big;
        big * (Self::one() + r * r).sqrt()
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON / 2.0;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn hypot(a: Self, b: Self) -> Self {
        f64::hypot(a, b)
    }
}

impl Real for DoubleDouble {
    const EPSILON: f64 = DoubleDouble::EPSILON;

    #[inline]
    fn from_f64(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        DoubleDouble::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        DoubleDouble::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }
}

#[inline]
pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    T::hypot(z.re, z.im)
}

/// Cheap magnitude surrogate `|re| + |im|`.
#[inline]
pub(crate) fn cabs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// Principal square root.
pub(crate) fn csqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let zero = T::zero();
    if z.re == zero && z.im == zero {
        return Complex::new(zero, zero);
    }
    let half = T::from_f64(0.5);
    let r = cabs(z);
    if z.re >= zero {
        let t = ((r + z.re) * half).sqrt();
        Complex::new(t, z.im / (t + t))
    } else {
        let t = ((r - z.re) * half).sqrt();
        let re = z.im.abs() / (t + t);
        let im = if z.im < zero { -t } else { t };
        Complex::new(re, im)
    }
}

#[inline]
pub(crate) fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// Eigenvalues of `[[a, b], [c, d]]`; the first returned value is the one
/// closest to `d`.
pub(crate) fn eig2x2<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> (Complex<T>, Complex<T>) {
    let half = T::from_f64(0.5);
    let p = (a - d).scale(half);
    let bc = b * c;
    let mut disc = csqrt(p * p + bc);
    // pick the root that makes |p + disc| large
    if (p.re * disc.re + p.im * disc.im) < T::zero() {
        disc = -disc;
    }
    let den = p + disc;
    if den.re == T::zero() && den.im == T::zero() {
        return (d, a);
    }
    let corr = bc / den;
    (d - corr, a + corr)
}
