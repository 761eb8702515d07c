//! Dense univariate polynomials over a generic coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Anything usable as a polynomial or series coefficient.
pub trait Coefficient: Clone + Num + Neg<Output = Self> + FromPrimitive + fmt::Debug {}

impl<T: Clone + Num + Neg<Output = T> + FromPrimitive + fmt::Debug> Coefficient for T {}

/// Dense polynomial, `coeffs[k]` multiplies `x^k`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * from_usize::<T>(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Applies `c_k -> w(k) c_k` to every coefficient.
    pub fn map_indexed(&self, mut w: impl FnMut(usize, &T) -> T) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| w(k, c)).collect())
    }

    pub fn map<U: Coefficient>(&self, f: impl FnMut(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coefficient> Polynomial<T> {
    /// Antiderivative vanishing at zero.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![T::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / from_usize::<T>(k + 1));
        }
        Self::new(coeffs)
    }
}

fn from_usize<T: FromPrimitive>(k: usize) -> T {
    T::from_usize(k).expect("index representable in coefficient type")
}

impl<T: Coefficient> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coefficient> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coefficient> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Coefficient> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Coefficient> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coefficient> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $m(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coefficient> std::iter::Sum for Polynomial<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

impl Polynomial<BigInt> {
    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl Polynomial<BigRational> {
    /// Evaluates at an integer argument.
    pub fn eval_int(&self, k: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(k)))
    }
}

impl<T: Coefficient + One> Polynomial<T> {
    /// `x`
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let z = p(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert!((&a - &a).is_zero());
        assert_eq!(p(&[5, 3, 2]).derivative(), p(&[3, 4]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
        assert_eq!(p(&[1, 2]).shift(2), p(&[0, 0, 1, 2]));
        assert_eq!(p(&[1, 2, 3]).eval(&BigInt::from(2)), BigInt::from(17));
    }

    #[test]
    fn integral_inverts_derivative() {
        let q = p(&[0, 3, -4, 8]).to_rational();
        assert_eq!(q.derivative().integral(), q);
    }

    #[test]
    fn float_coefficients() {
        let f = Polynomial::new(vec![1.0f64, -3.0, 2.0]);
        assert_eq!(f.eval(&1.0), 0.0);
        assert_eq!(f.eval(&0.5), 0.0);
    }
}
