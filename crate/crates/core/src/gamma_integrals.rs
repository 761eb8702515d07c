//! Fourier integrals of the Gamma function and the Bernoulli-valued weighted
//! integrals of exponential polynomials.
//!
//! Every integral is available twice: by adaptive quadrature of the integrand
//! and in closed form. Closed forms keep all Stirling/binomial sums in exact
//! rational arithmetic, evaluated at the exact binary values of the float
//! parameters; only the transcendental prefactor and the final product are
//! rounded.
//!
//! Truncation of the infinite `t` range uses
//! `|Gamma(a + it)| ~ sqrt(2 pi) |t|^(a - 1/2) exp(-pi |t| / 2)`: the window
//! `[-T, T]` is widened until the integrand bound at `T` is below `1e-17` of
//! its peak.

use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, factorial, stirling2};
use crate::exp_poly::{phi, phi_eval};
use crate::gamma::{gamma_complex, gamma_real};
use crate::quadrature::{integrate, integrate_real, integrate_real_dd, QuadratureOptions};
use crate::double_double;
use crate::scalar::{rational_from_float, rational_to_float};
use crate::{ComplexValue, RationalPolynomial};

pub const MAX_MOMENT_ORDER: usize = 20;
pub const MAX_PAIR_ABS_MU: f64 = 5.0;
pub const MAX_SEMI_ORTHOGONALITY_SUM: usize = 20;
pub const MAX_SINH_POWER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: ComplexValue,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// Upper end of the truncated integration range.
    pub truncation_t: f64,
}

/// `i^phase * scale * exact_part`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentClosedForm {
    /// Exponent of `i`, reduced mod 4.
    pub phase: u8,
    /// Exact rational double sum.
    pub exact_part: BigRational,
    /// Transcendental prefactor.
    pub scale: f64,
    pub float_value: ComplexValue,
}

impl MomentClosedForm {
    fn new(n: usize, exact_part: BigRational, scale: f64) -> Self {
        let phase = (n % 4) as u8;
        let float_value = i_pow(phase as usize) * (scale * rational_to_float::<f64>(&exact_part));
        Self {
            phase,
            exact_part,
            scale,
            float_value,
        }
    }
}

fn i_pow(n: usize) -> ComplexValue {
    match n % 4 {
        0 => Complex::new(1.0, 0.0),
        1 => Complex::new(0.0, 1.0),
        2 => Complex::new(-1.0, 0.0),
        _ => Complex::new(0.0, -1.0),
    }
}

fn exact(x: f64, what: &str) -> Result<BigRational> {
    rational_from_float(x).ok_or_else(|| Error::OutOfRange(format!("{what} must be finite")))
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{what} must be positive and finite, got {x}")))
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_MOMENT_ORDER {
        return Err(Error::OutOfRange(format!("moment order must be <= {MAX_MOMENT_ORDER}")));
    }
    Ok(())
}

/// `c_m = sum_k C(n, k) S(k, m) a^(n-k)` for `m = 0..=n`.
fn stirling_weights(n: usize, a: &BigRational) -> Vec<BigRational> {
    let mut a_pow = vec![BigRational::one()];
    for _ in 0..n {
        let next = a_pow.last().unwrap() * a;
        a_pow.push(next);
    }
    (0..=n)
        .map(|m| {
            (m..=n)
                .map(|k| BigRational::from_integer(binomial(n, k) * stirling2(k, m)) * &a_pow[n - k])
                .fold(BigRational::zero(), |s, t| s + t)
        })
        .collect()
}

/// `sum_m c_m (-1)^m w_m`
fn alternating(weights: &[BigRational], factor: impl Fn(usize) -> BigRational) -> BigRational {
    weights
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let t = c * factor(m);
            if m % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .fold(BigRational::zero(), |s, t| s + t)
}

/// Closed form of `int e^(-i lambda t) t^n Gamma(a + it) dt`:
/// `i^n 2 pi e^(a lambda) e^(-e^lambda) sum_k C(n,k) a^(n-k) sum_m S(k,m) (-1)^m e^(lambda m)`.
pub fn moment_single_closed(n: usize, a: f64, lambda: f64) -> Result<MomentClosedForm> {
    check_order(n)?;
    check_positive(a, "a")?;
    let el = lambda.exp();
    if !el.is_finite() {
        return Err(Error::Overflow("e^lambda".into()));
    }
    let weights = stirling_weights(n, &exact(a, "a")?);
    let el_q = exact(el, "e^lambda")?;
    let sum = alternating(&weights, |m| num_traits::pow(el_q.clone(), m));
    let scale = 2.0 * PI * (a * lambda - el).exp();
    Ok(MomentClosedForm::new(n, sum, scale))
}

/// Closed form of `int e^(-i mu t) t^n Gamma(a + it) Gamma(b - it) dt`:
/// `i^n 2 pi e^(-b mu) sum_k sum_m C(n,k) S(k,m) (-1)^m a^(n-k) Gamma(a+b+m) / (1 + e^(-mu))^(a+b+m)`.
///
/// `Gamma(a+b+m) = Gamma(a+b) (a+b)_m` keeps the `m`-dependence rational.
pub fn moment_pair_closed(n: usize, a: f64, b: f64, mu: f64) -> Result<MomentClosedForm> {
    check_order(n)?;
    check_positive(a, "a")?;
    check_positive(b, "b")?;
    if !mu.is_finite() {
        return Err(Error::OutOfRange("mu must be finite".into()));
    }
    let s = a + b;
    let base = 1.0 + (-mu).exp();
    let q = 1.0 / base;
    let weights = stirling_weights(n, &exact(a, "a")?);
    let s_q = exact(s, "a + b")?;
    let q_q = exact(q, "1 / (1 + e^-mu)")?;
    let sum = alternating(&weights, |m| {
        let mut rising = BigRational::one();
        for j in 0..m {
            rising *= &s_q + BigRational::from_integer(BigInt::from(j));
        }
        rising * num_traits::pow(q_q.clone(), m)
    });
    let scale = 2.0 * PI * gamma_real(s)? * (-b * mu - s * base.ln()).exp();
    Ok(MomentClosedForm::new(n, sum, scale))
}

/// Smallest `T >= 1` (integer steps) with `T^p e^(-decay T)` below `1e-17`
/// of the maximum of `t^p e^(-decay t)`.
fn truncation(p: f64, decay: f64) -> f64 {
    let log_bound = |t: f64| p * t.ln() - decay * t;
    let peak = if p > 0.0 { log_bound(p / decay) } else { 0.0 };
    let target = peak + (1e-17f64).ln();
    let mut t = (p / decay).max(1.0).ceil();
    while log_bound(t) > target {
        t += 1.0;
    }
    t
}

fn gamma_options() -> QuadratureOptions<f64> {
    QuadratureOptions {
        rel_tol: 1e-13,
        l1_tol: 1e-15,
        abs_tol: 0.0,
        max_subdivisions: 50_000,
        initial_panels: 16,
    }
}

fn windowed(
    f: impl FnMut(f64) -> ComplexValue,
    lo: f64,
    hi: f64,
    panel_width: f64,
) -> Result<QuadratureResult> {
    let panels = ((hi - lo) / panel_width).ceil().max(1.0) as usize;
    let opts = QuadratureOptions {
        initial_panels: panels,
        ..gamma_options()
    };
    let est = integrate(f, lo, hi, &opts).map_err(|e| match e {
        Error::Quadrature {
            estimate,
            tolerance,
            evaluations,
            ..
        } => Error::Quadrature {
            estimate,
            tolerance,
            evaluations,
            truncation: hi,
        },
        other => other,
    })?;
    Ok(QuadratureResult {
        value: est.value,
        abs_error_estimate: est.abs_error,
        evaluations: est.evaluations,
        truncation_t: hi,
    })
}

fn gamma_or_zero(z: ComplexValue) -> ComplexValue {
    // arguments here always have positive real part
    gamma_complex(z).unwrap_or(Complex::new(0.0, 0.0))
}

/// Quadrature of `int e^(-i lambda t) t^n Gamma(a + it) dt`.
pub fn moment_single_quad(n: usize, a: f64, lambda: f64) -> Result<QuadratureResult> {
    check_order(n)?;
    check_positive(a, "a")?;
    if !lambda.is_finite() {
        return Err(Error::OutOfRange("lambda must be finite".into()));
    }
    let t_max = truncation(n as f64 + a - 0.5, PI / 2.0);
    windowed(
        |t| {
            let phase = Complex::new(0.0, -lambda * t).exp();
            phase * t.powi(n as i32) * gamma_or_zero(Complex::new(a, t))
        },
        -t_max,
        t_max,
        1.0,
    )
}

/// Quadrature of `int e^(-i mu t) t^n Gamma(a + it) Gamma(b - it) dt`.
pub fn moment_pair_quad(n: usize, a: f64, b: f64, mu: f64) -> Result<QuadratureResult> {
    check_order(n)?;
    check_positive(a, "a")?;
    check_positive(b, "b")?;
    if !mu.is_finite() || mu.abs() > MAX_PAIR_ABS_MU {
        return Err(Error::OutOfRange(format!("|mu| must be <= {MAX_PAIR_ABS_MU}")));
    }
    let t_max = truncation(n as f64 + a + b - 1.0, PI);
    windowed(
        |t| {
            let phase = Complex::new(0.0, -mu * t).exp();
            phase
                * t.powi(n as i32)
                * gamma_or_zero(Complex::new(a, t))
                * gamma_or_zero(Complex::new(b, -t))
        },
        -t_max,
        t_max,
        0.5,
    )
}

/// `int p(t) Gamma(a + it) dt = sum_n p_n G_n(a)` with
/// `G_n(a) = (2 pi i^n / e) sum_k sum_m C(n,k) S(k,m) (-1)^m a^(n-k)`.
///
/// The real and imaginary parts are summed exactly before rounding.
pub fn polynomial_moment(p: &RationalPolynomial, a: f64) -> Result<ComplexValue> {
    check_positive(a, "a")?;
    if p.degree().unwrap_or(0) > MAX_MOMENT_ORDER {
        return Err(Error::OutOfRange(format!("degree must be <= {MAX_MOMENT_ORDER}")));
    }
    let a_q = exact(a, "a")?;
    let mut parts = [BigRational::zero(), BigRational::zero()];
    for (n, pn) in p.coeffs().iter().enumerate() {
        if pn.is_zero() {
            continue;
        }
        let g = alternating(&stirling_weights(n, &a_q), |_| BigRational::one()) * pn;
        // i^n = (-1)^(n/2) for even n, (-1)^((n-1)/2) i for odd n
        let slot = &mut parts[n % 2];
        if (n / 2) % 2 == 0 {
            *slot += g;
        } else {
            *slot -= g;
        }
    }
    let scale = 2.0 * PI / E;
    Ok(Complex::new(
        scale * rational_to_float::<f64>(&parts[0]),
        scale * rational_to_float::<f64>(&parts[1]),
    ))
}

/// `G_n(1) = int t^n Gamma(1 + it) dt` through exponential polynomials:
/// `G_n(1) = -2 pi i^n e^(-1) phi_(n+1)(-1)`.
///
/// The minus sign follows from `sum_k C(n,k) phi_k(x) = phi_(n+1)(x) / x` at
/// `x = -1`.
pub fn unit_moment_via_phi(n: usize) -> ComplexValue {
    let v: f64 = rational_to_float(&phi_eval(n + 1, &-BigRational::one()));
    i_pow(n) * (-2.0 * PI / E * v)
}

/// `int p(t) Gamma(1 + it) dt = -(2 pi / e) sum_n p_n i^n phi_(n+1)(-1)`.
pub fn polynomial_moment_unit(p: &RationalPolynomial) -> ComplexValue {
    let minus_one = -BigRational::one();
    let mut parts = [BigRational::zero(), BigRational::zero()];
    for (n, pn) in p.coeffs().iter().enumerate() {
        let g = phi_eval(n + 1, &minus_one) * pn;
        let slot = &mut parts[n % 2];
        if (n / 2) % 2 == 0 {
            *slot += g;
        } else {
            *slot -= g;
        }
    }
    let scale = -2.0 * PI / E;
    Complex::new(
        scale * rational_to_float::<f64>(&parts[0]),
        scale * rational_to_float::<f64>(&parts[1]),
    )
}

fn check_semi_orth(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::OutOfRange("n and m must be >= 1".into()));
    }
    Ok(())
}

/// `(-1)^(n-1) (2^(n+m) - 1) / (n+m) * B_(n+m)`
pub fn semi_orthogonality_rhs(n: usize, m: usize) -> Result<BigRational> {
    check_semi_orth(n, m)?;
    let s = n + m;
    let v = BigRational::new((BigInt::one() << s) - 1, BigInt::from(s)) * bernoulli(s);
    Ok(if (n - 1).is_multiple_of(2) { v } else { -v })
}

/// Exact termwise form of the weighted integral,
/// `sum_k sum_j (-1)^(k+j) S(n,k) S(m,j) (k+j-1)! / 2^(k+j)`, and the
/// Bernoulli right-hand side.
pub fn semi_orthogonality_exact(n: usize, m: usize) -> Result<(BigRational, BigRational)> {
    check_semi_orth(n, m)?;
    let mut lhs = BigRational::zero();
    for k in 1..=n {
        let snk = stirling2(n, k);
        for j in 1..=m {
            let t = BigRational::new(
                &snk * stirling2(m, j) * factorial(k + j - 1),
                BigInt::one() << (k + j),
            );
            if (k + j) % 2 == 0 {
                lhs += t;
            } else {
                lhs -= t;
            }
        }
    }
    Ok((lhs, semi_orthogonality_rhs(n, m)?))
}

/// Quadrature of `int_0^inf phi_n(-x) phi_m(-x) e^(-2x) dx / x`.
///
/// `phi_n(-x) phi_m(-x) / x` is an integer polynomial (both factors vanish at
/// zero), so the integrand is smooth up to the endpoint. The range is cut at
/// `X = 60 + 2(n+m)`; the neglected tail is bounded termwise and added to the
/// error estimate.
///
/// For odd `n + m` the integral vanishes while `int |integrand|` reaches
/// `~5e5`, so the integrand and all sums are carried in double-double.
pub fn semi_orthogonality_quad(n: usize, m: usize) -> Result<QuadratureResult> {
    check_semi_orth(n, m)?;
    if n + m > MAX_SEMI_ORTHOGONALITY_SUM {
        return Err(Error::OutOfRange(format!("n + m must be <= {MAX_SEMI_ORTHOGONALITY_SUM}")));
    }
    let product = phi(n).as_polynomial().reflect() * phi(m).as_polynomial().reflect();
    // integer coefficients below 2^53 convert exactly
    let coeffs: Vec<f64> = product.coeffs()[1..]
        .iter()
        .map(|c| c.to_f64().filter(|v| v.abs() < 2f64.powi(53)).expect("coefficient exact in f64"))
        .collect();
    let x_max = 60.0 + 2.0 * (n + m) as f64;
    let tail: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * (k as f64 * x_max.ln() - 2.0 * x_max).exp() / (2.0 - k as f64 / x_max))
        .sum();
    let opts = QuadratureOptions {
        rel_tol: 1e-16,
        l1_tol: 1e-20,
        initial_panels: (x_max / 2.0).ceil() as usize,
        ..gamma_options()
    };
    let est = integrate_real_dd(
        |x| double_double::horner(&coeffs, x) * (x * -2.0).exp(),
        0.0,
        x_max,
        &opts,
    )?;
    Ok(QuadratureResult {
        value: est.value,
        abs_error_estimate: est.abs_error + tail,
        evaluations: est.evaluations,
        truncation_t: x_max,
    })
}

/// The same weighted integral through the Fourier side:
/// `(1 / 2 pi) int (-it)^(n-1) (it)^(m-1) |Gamma(1 + it)|^2 dt`.
pub fn semi_orthogonality_parseval(n: usize, m: usize) -> Result<QuadratureResult> {
    check_semi_orth(n, m)?;
    if n + m > MAX_SEMI_ORTHOGONALITY_SUM {
        return Err(Error::OutOfRange(format!("n + m must be <= {MAX_SEMI_ORTHOGONALITY_SUM}")));
    }
    let power = (n + m - 2) as i32;
    let t_max = truncation(power as f64 + 1.0, PI);
    let r = windowed(
        |t| {
            let g = gamma_or_zero(Complex::new(1.0, t));
            Complex::new(t.powi(power) * g.norm_sqr(), 0.0)
        },
        -t_max,
        t_max,
        0.5,
    )?;
    // (-i)^(n-1) i^(m-1) = (-1)^(n-1) i^(n+m-2)
    let sign = if (n - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let phase = i_pow(n + m - 2) * (sign / (2.0 * PI));
    Ok(QuadratureResult {
        value: r.value * phase,
        abs_error_estimate: r.abs_error_estimate / (2.0 * PI),
        ..r
    })
}

/// `((2^(2p) - 1) / 2p) (-1)^(p-1) B_(2p)`, the value of
/// `int_0^inf t^(2p-1) / sinh(pi t) dt`.
pub fn sinh_integral_closed(p: usize) -> Result<BigRational> {
    if p == 0 {
        return Err(Error::OutOfRange("p must be >= 1".into()));
    }
    let v = BigRational::new((BigInt::one() << (2 * p)) - 1, BigInt::from(2 * p)) * bernoulli(2 * p);
    let v = if (p - 1).is_multiple_of(2) { v } else { -v };
    debug_assert!(v.is_positive());
    Ok(v)
}

/// `t^(2p-1) / sinh(pi t)`, continuous at 0.
pub fn sinh_integrand(p: usize, t: f64) -> f64 {
    if t.abs() < 1e-8 {
        return t.powi(2 * p as i32 - 2) / PI;
    }
    t.powi(2 * p as i32 - 1) / (PI * t).sinh()
}

/// Quadrature of `int_0^inf t^(2p-1) / sinh(pi t) dt`, `1 <= p <= 8`.
pub fn sinh_integral_check(p: usize) -> Result<QuadratureResult> {
    if p == 0 || p > MAX_SINH_POWER {
        return Err(Error::OutOfRange(format!("p must be in 1..={MAX_SINH_POWER}")));
    }
    let t_max = truncation(2.0 * p as f64 - 1.0, PI);
    let opts = QuadratureOptions {
        initial_panels: (2.0 * t_max).ceil() as usize,
        ..gamma_options()
    };
    let est = integrate_real(|t| sinh_integrand(p, t), 0.0, t_max, &opts)?;
    Ok(QuadratureResult {
        value: est.value,
        abs_error_estimate: est.abs_error,
        evaluations: est.evaluations,
        truncation_t: t_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn close(a: ComplexValue, b: ComplexValue, rel: f64, abs: f64) -> bool {
        (a - b).norm() <= abs.max(rel * b.norm())
    }

    #[test]
    fn single_closed_examples() {
        for a in [0.5, 1.0, 2.0, 3.7] {
            let c = moment_single_closed(0, a, 0.0).unwrap();
            assert!(close(c.float_value, Complex::new(2.0 * PI / E, 0.0), 1e-15, 0.0));
        }
        for lambda in [-1.0, 0.3, 1.0] {
            let c = moment_single_closed(0, 1.0, lambda).unwrap();
            let expect = 2.0 * PI * (lambda - lambda.exp()).exp();
            assert!(close(c.float_value, Complex::new(expect, 0.0), 1e-14, 0.0));
        }
        let c = moment_single_closed(1, 1.0, 0.0).unwrap();
        assert!(c.exact_part.is_zero());
        assert_eq!(c.float_value, Complex::new(0.0, 0.0));
        assert!(moment_single_closed(21, 1.0, 0.0).is_err());
        assert!(moment_single_closed(1, 0.0, 0.0).is_err());
    }

    #[test]
    fn single_quad_examples() {
        let r = moment_single_quad(0, 1.0, 0.0).unwrap();
        assert!(close(r.value, Complex::new(2.0 * PI / E, 0.0), 1e-10, 0.0));
        let r = moment_single_quad(1, 1.0, 0.0).unwrap();
        assert!(r.value.norm() < 1e-10);
        // G_4(1) = 4 pi / e
        let r = moment_single_quad(4, 1.0, 0.0).unwrap();
        assert!(close(r.value, Complex::new(4.0 * PI / E, 0.0), 1e-9, 0.0), "{:?}", r.value);
        assert!(r.truncation_t > 0.0 && r.evaluations > 0);
    }

    #[test]
    fn pair_closed_examples() {
        let c = moment_pair_closed(0, 0.5, 0.5, 0.0).unwrap();
        assert!(close(c.float_value, Complex::new(PI, 0.0), 1e-15, 0.0));
        let c = moment_pair_closed(0, 1.0, 1.0, 0.0).unwrap();
        assert!(close(c.float_value, Complex::new(PI / 2.0, 0.0), 1e-15, 0.0));
        for mu in [-1.0, 0.5, 2.0] {
            let (a, b) = (0.7, 1.9);
            let c = moment_pair_closed(0, a, b, mu).unwrap();
            let expect = 2.0 * PI * gamma_real(a + b).unwrap() * (-b * mu).exp() * (1.0 + (-mu).exp()).powf(-a - b);
            assert!(close(c.float_value, Complex::new(expect, 0.0), 1e-14, 0.0));
        }
    }

    #[test]
    fn pair_quad_examples() {
        let r = moment_pair_quad(0, 0.5, 0.5, 0.0).unwrap();
        assert!(close(r.value, Complex::new(PI, 0.0), 1e-12, 0.0));
        for n in [1, 3, 5] {
            let r = moment_pair_quad(n, 1.5, 1.5, 0.0).unwrap();
            assert!(r.value.norm() < 1e-10, "n={n}: {:?}", r.value);
        }
        let r = moment_pair_quad(2, 1.0, 1.0, 0.0).unwrap();
        let c = moment_pair_closed(2, 1.0, 1.0, 0.0).unwrap();
        assert!(close(r.value, c.float_value, 1e-10, 0.0));
        assert!(moment_pair_quad(0, 1.0, 1.0, 6.0).is_err());
    }

    #[test]
    fn closed_form_float_value_consistent() {
        let c = moment_pair_closed(7, 2.0, 0.5, -1.0).unwrap();
        let expect = i_pow(7) * (c.scale * rational_to_float::<f64>(&c.exact_part));
        assert!(close(c.float_value, expect, 1e-13, 0.0));
        assert_eq!(c.phase, 3);
    }

    #[test]
    fn polynomial_moment_examples() {
        let one = RationalPolynomial::one();
        let t = RationalPolynomial::x();
        let t2 = RationalPolynomial::monomial(q(1, 1), 2);
        let g = polynomial_moment(&one, 1.0).unwrap();
        assert!(close(g, Complex::new(2.0 * PI / E, 0.0), 1e-15, 0.0));
        assert_eq!(polynomial_moment(&t, 1.0).unwrap(), Complex::new(0.0, 0.0));
        let g2 = polynomial_moment(&t2, 1.0).unwrap();
        assert!(close(g2, Complex::new(2.0 * PI / E, 0.0), 1e-15, 0.0));
        let p = RationalPolynomial::new(vec![q(1, 2), q(-3, 1), q(0, 1), q(5, 7), q(2, 1)]);
        assert!(close(polynomial_moment(&p, 1.0).unwrap(), polynomial_moment_unit(&p), 1e-14, 1e-14));
    }

    #[test]
    fn semi_orthogonality_examples() {
        assert_eq!(semi_orthogonality_rhs(1, 1).unwrap(), q(1, 4));
        assert_eq!(semi_orthogonality_rhs(1, 2).unwrap(), q(0, 1));
        assert_eq!(semi_orthogonality_rhs(2, 2).unwrap(), q(1, 8));
        let (l, r) = semi_orthogonality_exact(1, 1).unwrap();
        assert_eq!((l, r), (q(1, 4), q(1, 4)));
        let (l, r) = semi_orthogonality_exact(3, 5).unwrap();
        assert_eq!(l, r);
        assert!(semi_orthogonality_exact(0, 2).is_err());
        let v = semi_orthogonality_quad(1, 1).unwrap();
        assert!((v.value.re - 0.25).abs() < 1e-14);
        let v = semi_orthogonality_quad(2, 2).unwrap();
        assert!((v.value.re - 0.125).abs() < 1e-14);
        let v = semi_orthogonality_quad(1, 2).unwrap();
        assert!(v.value.norm() < 1e-12);
    }

    #[test]
    fn parseval_route() {
        for (n, m) in [(1, 1), (2, 2), (1, 3), (3, 5), (2, 3)] {
            let p = semi_orthogonality_parseval(n, m).unwrap();
            let expect: f64 = rational_to_float(&semi_orthogonality_rhs(n, m).unwrap());
            assert!(close(p.value, Complex::new(expect, 0.0), 1e-10, 1e-12), "({n},{m}) {:?}", p.value);
        }
    }

    #[test]
    fn sinh_integrals() {
        assert_eq!(sinh_integral_closed(1).unwrap(), q(1, 4));
        assert_eq!(sinh_integral_closed(2).unwrap(), q(1, 8));
        assert!((sinh_integrand(1, 0.0) - 1.0 / PI).abs() < 1e-16);
        assert_eq!(sinh_integrand(2, 0.0), 0.0);
        for p in 1..=3 {
            let r = sinh_integral_check(p).unwrap();
            let expect: f64 = rational_to_float(&sinh_integral_closed(p).unwrap());
            assert!((r.value.re - expect).abs() < 1e-12 * expect);
        }
        assert!(sinh_integral_check(0).is_err());
        assert!(sinh_integral_check(9).is_err());
    }

    #[test]
    fn conjugate_symmetry_and_realness() {
        // conj(I) = (-1)^n I, so the value lies on the i^n axis
        for n in 0..6 {
            for lambda in [-1.0, 0.7] {
                let r = moment_single_quad(n, 1.5, lambda).unwrap().value;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((r.conj() - r * sign).norm() <= 1e-10 * r.norm().max(1.0), "n={n} {r:?}");
            }
        }
        for n in [0, 2, 4] {
            let r = moment_pair_quad(n, 2.0, 0.5, 0.0).unwrap().value;
            assert!(r.im.abs() < 1e-10, "n={n} {r:?}");
        }
    }

    #[test]
    fn truncation_grows_with_power() {
        assert!(truncation(20.5, PI / 2.0) > truncation(0.0, PI / 2.0));
        let t = truncation(10.0, PI);
        assert!(10.0 * t.ln() - PI * t < (10.0 * (10.0 / PI).ln() - 10.0) + (1e-17f64).ln());
    }
}
