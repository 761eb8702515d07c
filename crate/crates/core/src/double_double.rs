//! Unevaluated sums `hi + lo` of two `f64` (about 32 significant digits).
//!
//! Only what the high-accuracy quadrature path needs: ring operations,
//! division by an `f64`, and `exp` of an `f64` argument.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// ln 2 split into two doubles
const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = (self.hi - p - e + self.lo) / b;
        let (hi, lo) = quick_two_sum(q1, r);
        Self { hi, lo }
    }

    /// Exact scaling by `2^k`.
    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    /// `e^self`, using `e^(hi + lo) = e^hi (1 + lo + lo^2 / 2)`.
    pub fn exp(self) -> Self {
        let lo = self.lo;
        Self::exp_f64(self.hi) * (Self::ONE + Self::from(lo) + Self::from(0.5 * lo * lo))
    }

    /// `e^y` to roughly double-double accuracy for `|y| <= 700`.
    pub fn exp_f64(y: f64) -> Self {
        if y == 0.0 {
            return Self::ONE;
        }
        let k = (y / LN2.hi).round();
        // r = (y - k ln 2) / 2^5, |r| <= 0.011
        let r = (Self::from(y) - LN2 * k).ldexp(-5);
        let mut term = Self::ONE;
        let mut sum = Self::ONE;
        for j in 1..=14 {
            term = (term * r).div_f64(j as f64);
            sum = sum + term;
        }
        for _ in 0..5 {
            sum = sum * sum;
        }
        sum.ldexp(k as i32)
    }
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + -b
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }
}

/// Horner evaluation of `sum_k coeffs[k] x^k` in double-double arithmetic.
pub fn horner(coeffs: &[f64], x: DoubleDouble) -> DoubleDouble {
    coeffs
        .iter()
        .rev()
        .fold(DoubleDouble::ZERO, |acc, &c| acc * x + DoubleDouble::from(c))
}
