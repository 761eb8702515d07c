//! Mellin-derivative operator calculus on truncated power series.
//!
//! `(xD)` multiplies the coefficient of `x^k` by `k`, so `(xD)^n`, `(Dx)^n`
//! and any polynomial `f(xD)` act diagonally on the coefficients. These maps
//! are exact and preserve the truncation order. The Stirling expansions
//! `(xD)^n = sum_k S(n, k) x^k D^k` and `(Dx)^n = sum_k S(n+1, k+1) x^k D^k`
//! are provided as independent routes: `D^k` loses `k` orders and `x^k` gives
//! them back, so those routes are valid to the full input order as well.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, stirling2};
use crate::exp_poly::phi_rational;
use crate::poly::{Coefficient, Polynomial};
use crate::scalar::{rational_from_float, rational_to_float, CompensatedSum};
use crate::series::FormalPowerSeries;
use crate::{RationalPolynomial, RationalSeries};

fn index<T: Coefficient>(k: usize) -> T {
    T::from_usize(k).expect("index representable")
}

fn power<T: Coefficient>(base: T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * base.clone())
}

/// `(xD)^n g`: `c_k -> k^n c_k` (with `0^0 = 1`).
pub fn xd_pow<T: Coefficient>(g: &FormalPowerSeries<T>, n: usize) -> FormalPowerSeries<T> {
    g.map_indexed(|k, c| c.clone() * power(index::<T>(k), n))
}

/// `(xD)^n p` for a polynomial.
pub fn xd_pow_poly<T: Coefficient>(p: &Polynomial<T>, n: usize) -> Polynomial<T> {
    p.map_indexed(|k, c| c.clone() * power(index::<T>(k), n))
}

/// `(Dx)^n g`: `c_k -> (k+1)^n c_k`.
pub fn dx_pow<T: Coefficient>(g: &FormalPowerSeries<T>, n: usize) -> FormalPowerSeries<T> {
    g.map_indexed(|k, c| c.clone() * power(index::<T>(k + 1), n))
}

/// `f(xD) g`: `c_k -> f(k) c_k`.
pub fn apply_poly_of_xd<T: Coefficient>(
    f: &Polynomial<T>,
    g: &FormalPowerSeries<T>,
) -> FormalPowerSeries<T> {
    g.map_indexed(|k, c| c.clone() * f.eval(&index::<T>(k)))
}

/// `sum_k weight(k) x^k D^k g`, truncated to the order of `g`.
fn stirling_expansion(
    g: &RationalSeries,
    terms: usize,
    weight: impl Fn(usize) -> BigInt,
) -> RationalSeries {
    let order = g.order();
    let mut out = RationalSeries::zero(order);
    let mut deriv = g.clone();
    for k in 0..=terms.min(order) {
        if k > 0 {
            deriv = deriv.derivative();
        }
        let w = weight(k);
        if w.is_zero() {
            continue;
        }
        let term = deriv.shift(k).scale(&BigRational::from_integer(w));
        out = &out + &term.truncate(order);
    }
    out
}

/// `(xD)^n g` through `sum_k S(n, k) x^k D^k g`.
pub fn xd_pow_via_stirling(g: &RationalSeries, n: usize) -> RationalSeries {
    stirling_expansion(g, n, |k| stirling2(n, k))
}

/// `(Dx)^n g` through `sum_k S(n+1, k+1) x^k D^k g`.
pub fn dx_pow_via_stirling(g: &RationalSeries, n: usize) -> RationalSeries {
    stirling_expansion(g, n, |k| stirling2(n + 1, k + 1))
}

/// Leibniz rule `(xD)^n (fg) = sum_k C(n, k) [(xD)^(n-k) f] [(xD)^k g]`,
/// checked as an exact polynomial identity.
pub fn leibniz_xd(f: &RationalPolynomial, g: &RationalPolynomial, n: usize) -> bool {
    let lhs = xd_pow_poly(&(f * g), n);
    let rhs: RationalPolynomial = (0..=n)
        .map(|k| {
            let prod = &xd_pow_poly(f, n - k) * &xd_pow_poly(g, k);
            prod.scale(&BigRational::from_integer(binomial(n, k)))
        })
        .sum();
    lhs == rhs
}

/// Checks `(xD)^n exp(a x^p) = p^n phi_n(a x^p) exp(a x^p)` as truncated
/// series of the given order.
pub fn xd_exp_power_check(a: &BigRational, p: usize, n: usize, order: usize) -> Result<bool> {
    if p == 0 {
        return Err(Error::OutOfRange("exponent p must be positive".into()));
    }
    if order < n * p {
        return Err(Error::OutOfRange(format!(
            "order {order} must be at least n * p = {}",
            n * p
        )));
    }
    let e = RationalSeries::exp_monomial(a, p, order);
    let lhs = xd_pow(&e, n);
    let inner = RationalSeries::from_polynomial(&Polynomial::monomial(a.clone(), p), order);
    let phi_of_inner = inner.compose_polynomial(&phi_rational(n));
    let p_pow = BigRational::from_integer(Pow::pow(BigInt::from(p), n));
    let rhs = (&phi_of_inner * &e).scale(&p_pow);
    Ok(lhs == rhs)
}

pub const TRANSFORM_MAX_DEGREE: usize = 20;
pub const TRANSFORM_MAX_ABS_X: f64 = 50.0;
pub const SERIES_TERM_CAP: usize = 10_000;

/// Both sides of `sum_k f(k) x^k / k! = e^x sum_n a_n phi_n(x)` for
/// `f(t) = sum_n a_n t^n`.
///
/// The left side is summed numerically until a term drops below `1e-16` of
/// the partial sum (after the factorial has taken over); the right side is
/// evaluated exactly and rounded once before the multiplication by `e^x`.
pub fn series_transform(f: &RationalPolynomial, x: f64) -> Result<(f64, f64)> {
    if f.degree().unwrap_or(0) > TRANSFORM_MAX_DEGREE {
        return Err(Error::OutOfRange(format!(
            "transform supports degree <= {TRANSFORM_MAX_DEGREE}"
        )));
    }
    if !x.is_finite() || x.abs() > TRANSFORM_MAX_ABS_X {
        return Err(Error::OutOfRange(format!("transform needs |x| <= {TRANSFORM_MAX_ABS_X}")));
    }
    let xq = rational_from_float(x).expect("finite");
    let exact: BigRational = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(n, a)| a * phi_rational(n).eval(&xq))
        .fold(BigRational::zero(), |s, t| s + t);
    let rhs = x.exp() * rational_to_float::<f64>(&exact);

    let degree = f.degree().unwrap_or(0) as f64;
    let mut sum = CompensatedSum::<f64>::new();
    let mut power_over_fact = 1.0f64;
    for k in 0..SERIES_TERM_CAP {
        if k > 0 {
            power_over_fact *= x / k as f64;
        }
        let fk = f.eval(&BigRational::from_integer(BigInt::from(k)));
        let term = fk.to_f64().unwrap_or(f64::NAN) * power_over_fact;
        sum.add(term);
        let kf = k as f64;
        if kf > x.abs() + degree + 1.0 && term.abs() < 1e-16 * sum.value().abs() {
            return Ok((sum.value(), rhs));
        }
        if kf > x.abs() + degree + 1.0 && sum.value() == 0.0 && term == 0.0 {
            return Ok((0.0, rhs));
        }
    }
    Err(Error::NoConvergence {
        terms: SERIES_TERM_CAP,
    })
}

/// Convenience for `x^k` as a rational polynomial.
pub fn monomial(k: usize) -> RationalPolynomial {
    Polynomial::monomial(BigRational::one(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn exp_series(order: usize) -> RationalSeries {
        RationalSeries::exp_monomial(&BigRational::one(), 1, order)
    }

    fn random_series(rng: &mut ChaCha8Rng, order: usize) -> RationalSeries {
        RationalSeries::new(
            (0..=order)
                .map(|_| q(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
                .collect(),
        )
    }

    #[test]
    fn xd_zero_is_identity() {
        let g = RationalSeries::new(vec![q(1, 1), q(2, 3), q(-5, 7)]);
        assert_eq!(xd_pow(&g, 0), g);
        assert_eq!(dx_pow(&g, 0), g);
    }

    #[test]
    fn xd_on_exp_gives_phi_times_exp() {
        let e = exp_series(6);
        let lhs = xd_pow(&e, 2);
        let rhs = &RationalSeries::from_polynomial(&phi_rational(2), 6) * &e;
        assert_eq!(lhs, rhs);
        for k in 0..=6 {
            let expect = q((k * k) as i64, 1) / BigRational::from_integer(factorial(k));
            assert_eq!(lhs.coeff(k), expect);
        }
    }

    #[test]
    fn xd_on_monomial() {
        let g = RationalSeries::from_polynomial(&monomial(3), 6);
        assert_eq!(xd_pow(&g, 5).coeff(3), q(243, 1));
    }

    #[test]
    fn stirling_route_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let g = random_series(&mut rng, 10);
            let n = rng.gen_range(0..=8);
            assert_eq!(xd_pow(&g, n), xd_pow_via_stirling(&g, n));
        }
        let g = random_series(&mut rng, 5);
        let first = xd_pow_via_stirling(&g, 1);
        assert_eq!(first, g.derivative().shift(1).truncate(5));
        let e = exp_series(9);
        let expect = &RationalSeries::from_polynomial(&phi_rational(3), 9) * &e;
        assert_eq!(xd_pow_via_stirling(&e, 3), expect);
    }

    #[test]
    fn poly_of_xd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_series(&mut rng, 8);
        assert_eq!(apply_poly_of_xd(&Polynomial::one(), &g), g);
        let f = Polynomial::new(vec![q(0, 1), q(-1, 1), q(1, 1)]);
        let out = apply_poly_of_xd(&f, &g);
        for k in 0..=8 {
            assert_eq!(out.coeff(k), g.coeff(k) * q((k * k) as i64 - k as i64, 1));
        }
        let e = exp_series(8);
        assert_eq!(apply_poly_of_xd(&monomial(2), &e), xd_pow(&e, 2));
    }

    #[test]
    fn dx_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..6 {
            let g = random_series(&mut rng, 9);
            assert_eq!(dx_pow(&g, n), dx_pow_via_stirling(&g, n));
        }
        // (Dx)^n e^x = phi_(n+1)(x) / x e^x
        for n in 0..5 {
            let e = exp_series(10);
            let phi_over_x = Polynomial::new(phi_rational(n + 1).coeffs()[1..].to_vec());
            let rhs = &RationalSeries::from_polynomial(&phi_over_x, 10) * &e;
            assert_eq!(dx_pow(&e, n), rhs);
        }
    }

    #[test]
    fn leibniz_rule() {
        assert!(leibniz_xd(&monomial(1), &monomial(2), 0));
        assert!(leibniz_xd(&monomial(1), &monomial(2), 3));
        assert_eq!(xd_pow_poly(&monomial(3), 3), Polynomial::monomial(q(27, 1), 3));
    }

    #[test]
    fn exp_power_identity() {
        assert!(xd_exp_power_check(&q(1, 1), 1, 4, 10).unwrap());
        assert!(xd_exp_power_check(&q(2, 1), 3, 2, 12).unwrap());
        assert!(xd_exp_power_check(&q(-1, 1), 2, 4, 16).unwrap());
        assert!(xd_exp_power_check(&q(1, 1), 0, 1, 4).is_err());
        assert!(xd_exp_power_check(&q(1, 1), 3, 3, 4).is_err());
    }

    #[test]
    fn transform_examples() {
        let (l, r) = series_transform(&monomial(8), 1.0).unwrap();
        let expect = 4140.0 * std::f64::consts::E;
        assert!((l - expect).abs() <= 1e-12 * expect);
        assert!((r - expect).abs() <= 1e-12 * expect);

        let (l, r) = series_transform(&Polynomial::one(), 2.0).unwrap();
        assert!((l - 2f64.exp()).abs() < 1e-14 * 2f64.exp());
        assert!((r - 2f64.exp()).abs() < 1e-14 * 2f64.exp());

        let f = Polynomial::new(vec![q(0, 1), q(-1, 1), q(0, 1), q(1, 1)]);
        let (l, r) = series_transform(&f, 2.0).unwrap();
        assert!((l - r).abs() <= 1e-10 * r.abs().max(1.0));
    }

    #[test]
    fn transform_rejects_bad_input() {
        assert!(series_transform(&monomial(21), 1.0).is_err());
        assert!(series_transform(&monomial(2), 51.0).is_err());
        assert!(series_transform(&monomial(2), f64::NAN).is_err());
    }
}
