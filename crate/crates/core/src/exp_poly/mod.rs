//! Exponential polynomials `phi_n(x) = sum_k S(n, k) x^k` (single-variable
//! Bell polynomials) and the exact identities they satisfy.
//!
//! `phi_n` is built from `phi_0 = 1` by `phi_(n+1) = x (phi_n' + phi_n)`; the
//! coefficient identity with the Stirling triangle is checked in the tests,
//! never assumed. All identity checks here are exact polynomial equalities.
//! Powers follow the convention `0^0 = 1`.

mod roots;

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, int_pow, stirling1_unsigned, stirling2, stirling2_row};
use crate::poly::Polynomial;
use crate::series::FormalPowerSeries;
use crate::{IntPolynomial, RationalPolynomial};

pub use roots::{phi_roots, MAX_ROOT_DEGREE};

/// The degree-`n` exponential polynomial.
///
/// Coefficients are nonnegative integers, `coeffs[k] = S(n, k)`, with a unit
/// leading coefficient and zero constant term for `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolynomial {
    degree: usize,
    poly: IntPolynomial,
}

impl ExpPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn as_polynomial(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        self.poly.to_rational()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.to_rational().eval(x)
    }
}

pub(crate) fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

/// Renders highest power first, e.g. `1·x⁴ + 6·x³ + 7·x² + 1·x`.
impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x{}", superscript(k))?,
            }
        }
        Ok(())
    }
}

static PHI_TABLE: RwLock<Vec<IntPolynomial>> = RwLock::new(Vec::new());

fn phi_poly(n: usize) -> IntPolynomial {
    if let Some(p) = PHI_TABLE.read().expect("phi table poisoned").get(n) {
        return p.clone();
    }
    let mut table = PHI_TABLE.write().expect("phi table poisoned");
    if table.is_empty() {
        table.push(Polynomial::one());
    }
    while table.len() <= n {
        let prev = table.last().expect("nonempty");
        let next = (&prev.derivative() + prev).shift(1);
        table.push(next);
    }
    table[n].clone()
}

/// `phi_n`, built by `phi_(n+1) = x (phi_n' + phi_n)`.
pub fn phi(n: usize) -> ExpPolynomial {
    ExpPolynomial {
        degree: n,
        poly: phi_poly(n),
    }
}

pub fn phi_rational(n: usize) -> RationalPolynomial {
    phi_poly(n).to_rational()
}

/// Exact `phi_n(x)` by Horner's rule.
pub fn phi_eval(n: usize, x: &BigRational) -> BigRational {
    phi_rational(n).eval(x)
}

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `phi_(n+1)(x) == x * sum_k C(n, k) phi_k(x)`
pub fn verify_recurrence_sum(n: usize) -> bool {
    let sum: IntPolynomial = (0..=n).map(|k| phi_poly(k).scale(&binomial(n, k))).sum();
    sum.shift(1) == phi_poly(n + 1)
}

/// `phi_n'(x) == sum_(k<n) C(n, k) phi_k(x)`, defined for `n >= 1`.
pub fn verify_derivative_identity(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::OutOfRange("derivative identity needs n >= 1".into()));
    }
    let sum: IntPolynomial = (0..n).map(|k| phi_poly(k).scale(&binomial(n, k))).sum();
    Ok(sum == phi_poly(n).derivative())
}

/// Right-hand side of the binomial identity
/// `phi_n(x + y) = sum_k C(n, k) phi_k(x) phi_(n-k)(y)`.
pub fn binomial_convolution(n: usize, x: &BigRational, y: &BigRational) -> BigRational {
    (0..=n)
        .map(|k| int(binomial(n, k)) * phi_eval(k, x) * phi_eval(n - k, y))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Spivey's double sum `sum_k sum_j C(n, k) S(m, j) j^(n-k) b_k`, which equals
/// the Bell number `b_(n+m)`.
pub fn spivey(n: usize, m: usize) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..=n {
        let ck = binomial(n, k) * crate::exact::bell(k);
        for j in 0..=m {
            let s = stirling2(m, j);
            if s.is_zero() {
                continue;
            }
            total += &ck * s * int_pow(j as i64, n - k);
        }
    }
    total
}

/// `sum_k sum_j C(n, k) S(m, j) j^(n-k) x^j phi_k(x)`, which equals
/// `phi_(n+m)`.
pub fn phi_addition(n: usize, m: usize) -> IntPolynomial {
    let mut total = IntPolynomial::zero();
    for k in 0..=n {
        let ck = binomial(n, k);
        let pk = phi_poly(k);
        for j in 0..=m {
            let s = stirling2(m, j);
            if s.is_zero() {
                continue;
            }
            let w = &ck * s * int_pow(j as i64, n - k);
            if w.is_zero() {
                continue;
            }
            total = &total + &pk.scale(&w).shift(j);
        }
    }
    total
}

/// `(xD)^n phi_m` as the direct coefficient map `sum_k S(m, k) k^n x^k`.
pub fn mellin_of_phi(n: usize, m: usize) -> RationalPolynomial {
    Polynomial::new(
        stirling2_row(m)
            .into_iter()
            .enumerate()
            .map(|(k, s)| int(s * int_pow(k as i64, n)))
            .collect(),
    )
}

/// The three expressions for `(xD)^n phi_m`: the operator `x d/dx` applied
/// `n` times by differentiation, the Stirling coefficient map, and
/// `sum_k C(n, k) phi_(m+k)(x) phi_(n-k)(-x)`.
pub fn mellin_of_phi_forms(n: usize, m: usize) -> [RationalPolynomial; 3] {
    let mut by_operator = phi_rational(m);
    for _ in 0..n {
        by_operator = by_operator.derivative().shift(1);
    }
    let by_map = mellin_of_phi(n, m);
    let by_products: RationalPolynomial = (0..=n)
        .map(|k| {
            let prod = &phi_rational(m + k) * &phi_rational(n - k).reflect();
            prod.scale(&int(binomial(n, k)))
        })
        .sum();
    [by_operator, by_map, by_products]
}

/// Coordinates of `p` in the basis `phi_0, phi_1, ...`, via
/// `x^j = sum_k (-1)^(j-k) c(j, k) phi_k` with unsigned first-kind Stirling
/// numbers `c`.
pub fn to_phi_basis(p: &RationalPolynomial) -> Vec<BigRational> {
    let len = p.coeffs().len();
    let mut out = vec![BigRational::zero(); len];
    for (j, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(j + 1) {
            let c = int(stirling1_unsigned(j, k)) * a;
            if (j - k) % 2 == 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
    }
    out
}

/// Expands `sum_k c_k phi_k` in the monomial basis.
pub fn from_phi_basis(c: &[BigRational]) -> RationalPolynomial {
    c.iter()
        .enumerate()
        .filter(|(_, ck)| !ck.is_zero())
        .map(|(k, ck)| phi_rational(k).scale(ck))
        .sum()
}

/// Both sides of
/// `int_0^x phi_p(t) dt = 1/(p+1) sum_(k=1)^(p+1) C(p+1, k) B_(p+1-k) phi_k(x)`.
pub fn integrate_phi(p: usize) -> (RationalPolynomial, RationalPolynomial) {
    let lhs = phi_rational(p).integral();
    let rhs: RationalPolynomial = (1..=p + 1)
        .map(|k| phi_rational(k).scale(&(int(binomial(p + 1, k)) * bernoulli(p + 1 - k))))
        .sum();
    let rhs = rhs.scale(&BigRational::new(BigInt::one(), BigInt::from(p + 1)));
    (lhs, rhs)
}

/// Table `t[n][k] = n! [z^n x^k] exp(x (e^z - 1))`, computed by expanding
/// `sum_k x^k (e^z - 1)^k / k!` with exact truncated series in `z`.
///
/// For the exponential generating function of `phi_n` this must reproduce the
/// coefficients of `phi_n`.
pub fn generating_function_coefficients(order: usize) -> Vec<Vec<BigRational>> {
    let mut e_minus_one = FormalPowerSeries::exp_monomial(&BigRational::one(), 1, order)
        .coeffs()
        .to_vec();
    e_minus_one[0] = BigRational::zero();
    let e_minus_one = FormalPowerSeries::new(e_minus_one);
    let mut table = vec![vec![BigRational::zero(); order + 1]; order + 1];
    let mut power = FormalPowerSeries::from_polynomial(&Polynomial::one(), order);
    let mut k_fact = BigInt::one();
    for k in 0..=order {
        if k > 0 {
            power = &power * &e_minus_one;
            k_fact *= BigInt::from(k);
        }
        let mut n_fact = BigInt::one();
        for (n, row) in table.iter_mut().enumerate() {
            if n > 0 {
                n_fact *= BigInt::from(n);
            }
            row[k] = power.coeff(n) * int(n_fact.clone()) / int(k_fact.clone());
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rats(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|&v| q(v, 1)).collect()
    }

    #[test]
    fn first_exponential_polynomials() {
        assert_eq!(phi(0).coeffs(), ints(&[1]).as_slice());
        assert_eq!(phi(1).coeffs(), ints(&[0, 1]).as_slice());
        assert_eq!(phi(2).coeffs(), ints(&[0, 1, 1]).as_slice());
        assert_eq!(phi(3).coeffs(), ints(&[0, 1, 3, 1]).as_slice());
        assert_eq!(phi(4).coeffs(), ints(&[0, 1, 7, 6, 1]).as_slice());
        assert_eq!(phi(5).coeffs(), ints(&[0, 1, 15, 25, 10, 1]).as_slice());
    }

    #[test]
    fn display_highest_power_first() {
        assert_eq!(phi(4).to_string(), "1·x⁴ + 6·x³ + 7·x² + 1·x");
        assert_eq!(phi(0).to_string(), "1");
        assert_eq!(superscript(12), "¹²");
    }

    #[test]
    fn coefficients_are_stirling_numbers() {
        for n in 0..=40 {
            let p = phi(n);
            assert_eq!(p.coeffs().len(), n + 1);
            for k in 0..=n {
                assert_eq!(p.coeffs()[k], stirling2(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(phi_eval(6, &q(1, 1)), q(203, 1));
        for n in 1..10 {
            assert!(phi_eval(n, &q(0, 1)).is_zero());
        }
        assert!(phi_eval(2, &q(-1, 1)).is_zero());
        assert_eq!(phi_eval(3, &q(-1, 1)), q(1, 1));
        assert_eq!(phi_eval(0, &q(7, 3)), q(1, 1));
        assert_eq!(phi(3).eval(&q(2, 1)), q(22, 1));
    }

    #[test]
    fn recurrence_and_derivative_identities() {
        for n in 0..=30 {
            assert!(verify_recurrence_sum(n), "n={n}");
        }
        assert!(verify_derivative_identity(0).is_err());
        for n in 1..=30 {
            assert!(verify_derivative_identity(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn binomial_convolution_values() {
        assert_eq!(binomial_convolution(3, &q(1, 1), &q(1, 1)), q(22, 1));
        assert_eq!(binomial_convolution(0, &q(5, 7), &q(-2, 3)), q(1, 1));
        for n in 1..12 {
            let x = q(n as i64 - 4, 3);
            assert!(binomial_convolution(n, &x, &-x.clone()).is_zero());
            let y = q(2, 5);
            assert_eq!(binomial_convolution(n, &x, &y), phi_eval(n, &(&x + &y)));
        }
    }

    #[test]
    fn spivey_values() {
        assert_eq!(spivey(0, 0), BigInt::one());
        assert_eq!(spivey(1, 1), BigInt::from(2));
        assert_eq!(spivey(3, 5), BigInt::from(4140));
    }

    #[test]
    fn phi_addition_values() {
        for n in 0..8 {
            assert_eq!(phi_addition(n, 0), phi_poly(n));
        }
        assert_eq!(phi_addition(2, 2).coeffs(), ints(&[0, 1, 7, 6, 1]).as_slice());
        assert_eq!(phi_addition(5, 5), phi_poly(10));
    }

    #[test]
    fn mellin_of_phi_values() {
        for m in 0..6 {
            assert_eq!(mellin_of_phi(0, m), phi_rational(m));
        }
        assert_eq!(mellin_of_phi(1, 2).coeffs(), rats(&[0, 1, 2]).as_slice());
        let [a, b, c] = mellin_of_phi_forms(3, 4);
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn basis_conversion_examples() {
        let x2 = Polynomial::monomial(q(1, 1), 2);
        assert_eq!(to_phi_basis(&x2), rats(&[0, -1, 1]));
        let x3 = Polynomial::monomial(q(1, 1), 3);
        assert_eq!(to_phi_basis(&x3), rats(&[0, 2, -3, 1]));
        let x4 = Polynomial::monomial(q(1, 1), 4);
        assert_eq!(to_phi_basis(&x4), rats(&[0, -6, 11, -6, 1]));
        assert_eq!(to_phi_basis(&phi_rational(3)), rats(&[0, 0, 0, 1]));
        assert_eq!(from_phi_basis(&rats(&[0, -1, 1])), x2);
        assert_eq!(from_phi_basis(&rats(&[1])), Polynomial::one());
        assert!(to_phi_basis(&Polynomial::zero()).is_empty());
    }

    #[test]
    fn integration_formula() {
        let (l0, r0) = integrate_phi(0);
        assert_eq!(l0, Polynomial::x());
        assert_eq!(r0, l0);
        let (l1, r1) = integrate_phi(1);
        assert_eq!(l1, Polynomial::monomial(q(1, 2), 2));
        assert_eq!(r1, l1);
        for p in 2..=20 {
            let (l, r) = integrate_phi(p);
            assert_eq!(l, r, "p={p}");
        }
    }

    #[test]
    fn generating_function_reproduces_phi() {
        let table = generating_function_coefficients(12);
        for (n, row) in table.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(v, &int(stirling2(n, k)), "n={n} k={k}");
            }
        }
    }
}
