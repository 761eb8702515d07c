//! Truncated formal power series.
//!
//! A series of order `N` carries the coefficients of `x^0 ..= x^N`; anything
//! beyond is unknown. Binary operations take the smaller of the two orders and
//! nothing ever extends the order silently.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::poly::{Coefficient, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> FormalPowerSeries<T> {
    /// Builds a series of order `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![T::zero(); order + 1])
    }

    /// A polynomial viewed as a series, truncated (or zero padded) to `order`.
    pub fn from_polynomial(p: &Polynomial<T>, order: usize) -> Self {
        Self::new((0..=order).map(|k| p.coeff(k)).collect())
    }

    /// `exp(a x^p)` to the given order.
    pub fn exp_monomial(a: &T, p: usize, order: usize) -> Self {
        assert!(p >= 1, "exponent must be positive");
        let mut coeffs = vec![T::zero(); order + 1];
        let mut term = T::one();
        let mut j = 0;
        while j * p <= order {
            coeffs[j * p] = term.clone();
            j += 1;
            term = term * a.clone() / T::from_usize(j).expect("index fits");
        }
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncation cannot extend a series");
        Self::new(self.coeffs[..=order].to_vec())
    }

    /// Applies `c_k -> w(k, c_k)`; order is preserved.
    pub fn map_indexed(&self, mut w: impl FnMut(usize, &T) -> T) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| w(k, c)).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map_indexed(|_, c| c.clone() * s.clone())
    }

    /// Term-by-term derivative; the order drops by one (a series of order 0
    /// differentiates to the order-0 zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_usize(k).expect("index fits"))
                .collect(),
        )
    }

    /// Multiplication by `x^k`; the known order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::from_polynomial(&Polynomial::one(), self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(self)` by Horner's rule, order preserved.
    pub fn compose_polynomial(&self, p: &Polynomial<T>) -> Self {
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        acc
    }

    pub fn to_polynomial(&self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<T: Coefficient> Add for &FormalPowerSeries<T> {
    type Output = FormalPowerSeries<T>;

    fn add(self, rhs: Self) -> FormalPowerSeries<T> {
        let n = self.order().min(rhs.order());
        FormalPowerSeries::new(
            (0..=n)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
        )
    }
}

impl<T: Coefficient> Sub for &FormalPowerSeries<T> {
    type Output = FormalPowerSeries<T>;

    fn sub(self, rhs: Self) -> FormalPowerSeries<T> {
        let n = self.order().min(rhs.order());
        FormalPowerSeries::new(
            (0..=n)
                .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
                .collect(),
        )
    }
}

impl<T: Coefficient> Mul for &FormalPowerSeries<T> {
    type Output = FormalPowerSeries<T>;

    fn mul(self, rhs: Self) -> FormalPowerSeries<T> {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        FormalPowerSeries::new(out)
    }
}
