//! Floating point evaluation of infinite series built on `k^z / k!`.
//!
//! Terms are accumulated in ascending order with compensated summation. A
//! series stops once its terms decrease and the latest one is below half an
//! ulp of the partial sum; the remaining tail is then bounded by the
//! geometric series through the ratio of the last two terms.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exp_poly::phi_eval;
use crate::scalar::{rational_from_float, rational_to_float, CompensatedSum, Real};

pub const TERM_CAP: usize = 10_000;
pub const DOBINSKI_MAX_N: usize = 60;
pub const POLYEXP_MAX_ABS_S: i32 = 8;
pub const POLYEXP_MAX_ABS_X: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T> {
    pub value: Complex<T>,
    pub terms_used: usize,
    /// Bound on the magnitude of the neglected tail.
    pub tail_bound: T,
}

/// Sums `term(0) + term(1) + ...`, not stopping before `min_terms` terms.
fn sum_series<T: Real>(
    min_terms: usize,
    mut term: impl FnMut(usize) -> Complex<T>,
) -> Result<SeriesResult<T>> {
    let threshold = T::epsilon() * T::lit(0.5);
    let mut sum = CompensatedSum::<Complex<T>>::new();
    let mut prev = T::infinity();
    for k in 0..TERM_CAP {
        let t = term(k);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::Overflow(format!("series term {k} is not finite")));
        }
        sum.add(t);
        let mag = t.norm();
        let total = sum.value().norm();
        if k + 1 >= min_terms && mag <= prev && (mag <= threshold * total || (mag.is_zero() && total.is_zero())) {
            let ratio = if prev.is_finite() && prev > T::zero() { mag / prev } else { T::zero() };
            let tail_bound = if ratio < T::one() {
                mag * ratio / (T::one() - ratio)
            } else {
                mag
            };
            return Ok(SeriesResult {
                value: sum.value(),
                terms_used: k + 1,
                tail_bound,
            });
        }
        prev = mag;
    }
    Err(Error::NoConvergence { terms: TERM_CAP })
}

/// Running `ln k!`.
struct LnFactorial<T> {
    acc: CompensatedSum<T>,
    k: usize,
}

impl<T: Real> LnFactorial<T> {
    fn new() -> Self {
        Self { acc: CompensatedSum::new(), k: 0 }
    }

    /// `ln k!`; must be called with `k = 0, 1, 2, ...` in order.
    fn next(&mut self, k: usize) -> T {
        debug_assert_eq!(k, self.k);
        if k > 1 {
            self.acc.add(T::from_usize_lossy(k).ln());
        }
        self.k += 1;
        self.acc.value()
    }
}

/// Dobinski's series `sum_k k^n / k!`, which equals `e * b_n`.
pub fn dobinski_sum<T: Real>(n: usize) -> Result<SeriesResult<T>> {
    if n > DOBINSKI_MAX_N {
        return Err(Error::OutOfRange(format!("dobinski_sum needs n <= {DOBINSKI_MAX_N}")));
    }
    let nf = T::from_usize_lossy(n);
    let mut ln_fact = LnFactorial::<T>::new();
    sum_series(n + 2, |k| {
        let lf = ln_fact.next(k);
        let v = if k == 0 {
            if n == 0 { T::one() } else { T::zero() }
        } else {
            (nf * T::from_usize_lossy(k).ln() - lf).exp()
        };
        Complex::new(v, T::zero())
    })
}

/// `phi_z(x) = e^(-x) sum_k k^z x^k / k!` for complex `z` and `x > 0`.
///
/// `k^z = exp(z ln k)` on the principal branch. The `k = 0` term is `1` for
/// `z = 0` and `0` for `Re z > 0`; other `z` with `Re z <= 0` are rejected.
pub fn phi_fractional<T: Real>(z: Complex<T>, x: T) -> Result<SeriesResult<T>> {
    if x <= T::zero() || !x.is_finite() {
        return Err(Error::OutOfRange("phi_fractional needs finite x > 0".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::OutOfRange("phi_fractional needs finite z".into()));
    }
    let first = if z.is_zero() {
        T::one()
    } else if z.re > T::zero() {
        T::zero()
    } else {
        return Err(Error::OutOfRange("0^z is undefined for Re z <= 0, z != 0".into()));
    };
    let ln_x = x.ln();
    let min_terms = (x + z.norm()).ceil().to_usize().unwrap_or(TERM_CAP) + 2;
    let mut ln_fact = LnFactorial::<T>::new();
    sum_series(min_terms, |k| {
        let lf = ln_fact.next(k);
        if k == 0 {
            return Complex::new(first * (-x).exp(), T::zero());
        }
        let kf = T::from_usize_lossy(k);
        (z * kf.ln() + Complex::new(kf * ln_x - lf - x, T::zero())).exp()
    })
}

/// The polyexponential `sum_n x^n / (n! (n + lambda)^s)`, `lambda > 0`.
pub fn polyexponential<T: Real>(s: i32, x: T, lambda: T) -> Result<SeriesResult<T>> {
    if lambda <= T::zero() || !lambda.is_finite() {
        return Err(Error::OutOfRange("polyexponential needs lambda > 0".into()));
    }
    if s.abs() > POLYEXP_MAX_ABS_S {
        return Err(Error::OutOfRange(format!("polyexponential needs |s| <= {POLYEXP_MAX_ABS_S}")));
    }
    if !x.is_finite() || x.abs() > T::lit(POLYEXP_MAX_ABS_X) {
        return Err(Error::OutOfRange(format!("polyexponential needs |x| <= {POLYEXP_MAX_ABS_X}")));
    }
    let min_terms = x.abs().ceil().to_usize().unwrap_or(0) + s.unsigned_abs() as usize + 2;
    let mut power_over_fact = T::one();
    sum_series(min_terms, |n| {
        if n > 0 {
            power_over_fact = power_over_fact * x / T::from_usize_lossy(n);
        }
        let denom = (T::from_usize_lossy(n) + lambda).powi(s);
        Complex::new(power_over_fact / denom, T::zero())
    })
}

pub const LINEAR_DEPENDENCE_MAX_ABS_X: f64 = 3.0;
pub const LINEAR_DEPENDENCE_MAX_ABS_K: i32 = 3;
pub const LINEAR_DEPENDENCE_MAX_TERMS: usize = 80;

/// `| sum_(n=1)^N phi_n(x) (2 k pi i)^n / n! |`.
///
/// Each `phi_n(x)` is evaluated exactly at the binary value of `x` and rounded
/// once. Errors with [`Error::Overflow`] if a term leaves the `f64` range.
pub fn linear_dependence_residual(x: f64, k: i32, terms: usize) -> Result<f64> {
    if !x.is_finite() || x.abs() > LINEAR_DEPENDENCE_MAX_ABS_X {
        return Err(Error::OutOfRange(format!("needs |x| <= {LINEAR_DEPENDENCE_MAX_ABS_X}")));
    }
    if k == 0 || k.abs() > LINEAR_DEPENDENCE_MAX_ABS_K {
        return Err(Error::OutOfRange(format!("needs 1 <= |k| <= {LINEAR_DEPENDENCE_MAX_ABS_K}")));
    }
    if terms > LINEAR_DEPENDENCE_MAX_TERMS {
        return Err(Error::OutOfRange(format!("needs N <= {LINEAR_DEPENDENCE_MAX_TERMS}")));
    }
    let xq: BigRational = rational_from_float(x).expect("finite");
    let w = 2.0 * std::f64::consts::PI * k as f64;
    let mut sum = CompensatedSum::<Complex<f64>>::new();
    let mut scale = 1.0f64;
    for n in 1..=terms {
        scale *= w / n as f64;
        let phi: f64 = rational_to_float(&phi_eval(n, &xq));
        let mag = phi * scale;
        if !mag.is_finite() {
            return Err(Error::Overflow(format!("term {n} overflows; N * |k| too large")));
        }
        let term = match n % 4 {
            0 => Complex::new(mag, 0.0),
            1 => Complex::new(0.0, mag),
            2 => Complex::new(-mag, 0.0),
            _ => Complex::new(0.0, -mag),
        };
        sum.add(term);
    }
    Ok(sum.value().norm())
}
