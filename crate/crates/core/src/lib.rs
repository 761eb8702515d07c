//! Exact and numeric computation with exponential (single-variable Bell)
//! polynomials.
//!
//! * [`exact`]: binomials, Stirling numbers of both kinds, Bernoulli and Bell
//!   numbers as arbitrary-precision integers/rationals.
//! * [`exp_poly`]: the polynomials `phi_n`, their identities, basis
//!   conversion, integration and real roots.
//! * [`mellin`]: the operators `(xD)^n`, `(Dx)^n` and `f(xD)` on truncated
//!   power series.
//! * [`numeric_series`]: Dobinski sums, `phi_z` for complex `z`, the
//!   polyexponential and the `2 k pi i` linear-dependence series.
//! * [`gamma_integrals`]: Fourier moments of `Gamma(a + it)` and
//!   `Gamma(a + it) Gamma(b - it)`, the weighted `phi_n` integrals and the
//!   `t^(2p-1) / sinh(pi t)` integrals, each by quadrature and in closed form.
//!
//! Floating point code is generic over [`Real`] (`f32`/`f64`); polynomials and
//! series are generic over their coefficient ring. The aliases below fix the
//! concrete types most callers want.

pub mod double_double;
pub mod error;
pub mod exact;
pub mod exp_poly;
pub mod gamma;
pub mod gamma_integrals;
pub mod mellin;
pub mod numeric_series;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Polynomial with exact rational coefficients.
pub type RationalPolynomial = poly::Polynomial<BigRational>;
/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPolynomial = poly::Polynomial<BigInt>;
/// Truncated power series with exact rational coefficients.
pub type RationalSeries = series::FormalPowerSeries<BigRational>;
/// Double precision complex number.
pub type ComplexValue = num_complex::Complex<f64>;
/// Series evaluation result in double precision.
pub type SeriesResult = numeric_series::SeriesResult<f64>;
/// Quadrature result in double precision.
pub type QuadratureResult = gamma_integrals::QuadratureResult;
