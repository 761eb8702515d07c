//! Scalar abstractions shared by the floating point parts of the crate.
//!
//! Exact quantities live in [`BigInt`]/[`BigRational`]; everything that has to
//! touch transcendental functions is generic over [`Real`], which is
//! implemented for `f32` and `f64`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive, Zero};

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::infinity)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact binary value of a finite float. Returns `None` for NaN or infinities.
pub fn rational_from_float<T: Real>(x: T) -> Option<BigRational> {
    BigRational::from_float(x.to_f64()?)
}

/// Nearest float to an exact rational (saturating to +-inf on overflow).
pub fn rational_to_float<T: Real>(q: &BigRational) -> T {
    match q.to_f64() {
        Some(v) => T::from_f64(v).unwrap_or_else(|| {
            if v.is_sign_negative() {
                T::neg_infinity()
            } else {
                T::infinity()
            }
        }),
        None => T::nan(),
    }
}

pub fn bigint_to_float<T: Real>(n: &BigInt) -> T {
    match n.to_f64() {
        Some(v) => T::from_f64(v).unwrap_or_else(T::infinity),
        None => T::nan(),
    }
}

/// Neumaier (improved Kahan-Babuska) compensated accumulator.
///
/// Works for real and complex values alike; complex sums are compensated
/// componentwise.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<V> {
    sum: V,
    compensation: V,
}

pub trait Compensable: Copy + Add<Output = Self> + Zero {
    /// Returns `(a + b, err)` such that `a + b = sum + err` exactly (modulo underflow).
    fn two_sum(a: Self, b: Self) -> (Self, Self);
}

impl<T: Real> Compensable for T {
    fn two_sum(a: T, b: T) -> (T, T) {
        let s = a + b;
        let err = if a.abs() >= b.abs() {
            (a - s) + b
        } else {
            (b - s) + a
        };
        (s, err)
    }
}

impl<T: Real> Compensable for Complex<T> {
    fn two_sum(a: Self, b: Self) -> (Self, Self) {
        let (re, re_err) = T::two_sum(a.re, b.re);
        let (im, im_err) = T::two_sum(a.im, b.im);
        (Complex::new(re, im), Complex::new(re_err, im_err))
    }
}

impl<V: Compensable> Default for CompensatedSum<V> {
    fn default() -> Self {
        Self {
            sum: V::zero(),
            compensation: V::zero(),
        }
    }
}

impl<V: Compensable> CompensatedSum<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: V) {
        let (s, err) = V::two_sum(self.sum, value);
        self.sum = s;
        self.compensation = self.compensation + err;
    }

    pub fn value(&self) -> V {
        self.sum + self.compensation
    }
}

impl<V: Compensable> AddAssign<V> for CompensatedSum<V> {
    fn add_assign(&mut self, rhs: V) {
        self.add(rhs);
    }
}

impl<V: Compensable> FromIterator<V> for CompensatedSum<V> {
    fn from_iter<I: IntoIterator<Item = V>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Horner evaluation of `sum_k coeffs[k] x^k` with error-free transformations
/// (compensated Horner). The result is as accurate as plain Horner in twice
/// the working precision, then rounded.
pub fn compensated_horner<T: Real>(coeffs: &[T], x: T) -> T {
    let Some((&lead, rest)) = coeffs.split_last() else {
        return T::zero();
    };
    let mut s = lead;
    let mut c = T::zero();
    for &a in rest.iter().rev() {
        let p = s * x;
        let p_err = s.mul_add(x, -p);
        let (next, s_err) = T::two_sum(p, a);
        s = next;
        c = c.mul_add(x, p_err + s_err);
    }
    s + c
}
