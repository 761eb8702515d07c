//! Identity batteries behind `exppoly verify`.
//!
//! Exact identities are compared as rendered exact values; floating point
//! checks carry their default tolerance unless `--tolerance` overrides it.

use std::f64::consts::PI;

use exppoly::exact::{
    alternating_stirling_sum, bell, bernoulli_by_recurrence, stirling1_unsigned, stirling2_row,
};
use exppoly::exp_poly::{
    binomial_convolution, from_phi_basis, integrate_phi, mellin_of_phi_forms, phi, phi_addition, phi_eval,
    spivey, to_phi_basis, verify_derivative_identity, verify_recurrence_sum,
};
use exppoly::gamma::{gamma_complex, gamma_real};
use exppoly::gamma_integrals::{
    moment_pair_closed, moment_pair_quad, moment_single_closed, moment_single_quad, polynomial_moment,
    polynomial_moment_unit, semi_orthogonality_exact, semi_orthogonality_parseval, semi_orthogonality_quad,
    sinh_integral_check, sinh_integral_closed, unit_moment_via_phi, MAX_SINH_POWER,
};
use exppoly::mellin::{
    apply_poly_of_xd, dx_pow, dx_pow_via_stirling, leibniz_xd, series_transform, xd_exp_power_check, xd_pow,
    xd_pow_via_stirling,
};
use exppoly::poly::Polynomial;
use exppoly::scalar::rational_to_float;
use exppoly::series::FormalPowerSeries;
use exppoly::{BigInt, BigRational, ComplexValue, RationalPolynomial, RationalSeries};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::{CliError, CliResult};
use crate::report::{fmt_list, Row, Tolerance};

pub const DEFAULT_MAX: usize = 12;
pub const DEFAULT_MAX_SUM: usize = 16;
pub const DEFAULT_MOMENT_N: usize = 6;
pub const MAX_INDEX: usize = 24;
pub const MAX_SUM: usize = 20;
pub const MAX_MOMENT_N: usize = 20;

const SEMI_ORTH_TOL: Tolerance = Tolerance::new(1e-9, 1e-12);
const PARSEVAL_TOL: Tolerance = Tolerance::new(1e-8, 1e-10);
const SINH_TOL: Tolerance = Tolerance::new(1e-9, 0.0);
const MOMENT_TOL: Tolerance = Tolerance::new(1e-8, 1e-10);
const UNIT_MOMENT_TOL: Tolerance = Tolerance::new(1e-12, 1e-12);
const TRANSFORM_TOL: Tolerance = Tolerance::new(1e-10, 1e-12);
const GAMMA_TOL: Tolerance = Tolerance::new(1e-12, 0.0);

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub max: usize,
    pub max_sum: usize,
    pub n: usize,
}

impl Bounds {
    pub fn new(max: Option<usize>, max_sum: Option<usize>, n: Option<usize>) -> CliResult<Self> {
        let b = Self {
            max: max.unwrap_or(DEFAULT_MAX),
            max_sum: max_sum.unwrap_or(DEFAULT_MAX_SUM),
            n: n.unwrap_or(DEFAULT_MOMENT_N),
        };
        if b.max > MAX_INDEX {
            return Err(CliError::Range(format!("--max must be <= {MAX_INDEX}")));
        }
        if b.max_sum > MAX_SUM {
            return Err(CliError::Range(format!("--max-sum must be <= {MAX_SUM}")));
        }
        if b.n > MAX_MOMENT_N {
            return Err(CliError::Range(format!("--n must be <= {MAX_MOMENT_N}")));
        }
        Ok(b)
    }
}

pub struct Context {
    pub seed: u64,
    pub tolerance: Option<f64>,
}

impl Context {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn tol(&self, default: Tolerance) -> Tolerance {
        default.or_override(self.tolerance)
    }
}

fn holds(name: String, eq: &str, ok: bool) -> Row {
    let v = |b: bool| if b { "holds" } else { "fails" }.to_string();
    Row::exact(name, eq, v(ok), v(true))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.gen_range(-20..=20), rng.gen_range(1..=7))
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> RationalPolynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=d).map(|_| random_rational(rng)).collect())
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> RationalSeries {
    FormalPowerSeries::new((0..=order).map(|_| random_rational(rng)).collect())
}

fn poly_string(p: &RationalPolynomial) -> String {
    fmt_list(p.coeffs())
}

fn series_string(s: &RationalSeries) -> String {
    fmt_list(s.coeffs())
}

pub fn poly(max: usize, ctx: &Context) -> Vec<Row> {
    let mut rng = ctx.rng(1);
    let mut rows = Vec::new();
    for n in 0..=max {
        rows.push(Row::exact(
            format!("phi_{n} coefficients = S({n},k)"),
            "(3.3)",
            fmt_list(phi(n).coeffs()),
            fmt_list(&stirling2_row(n)),
        ));
        rows.push(holds(format!("phi_{} = x sum_k C({n},k) phi_k", n + 1), "(2.4)", verify_recurrence_sum(n)));
        if n >= 1 {
            let ok = verify_derivative_identity(n).unwrap_or(false);
            rows.push(holds(format!("phi_{n}' = sum_(k<{n}) C({n},k) phi_k"), "(2.5)", ok));
        }
        let (x, y) = (random_rational(&mut rng), random_rational(&mut rng));
        rows.push(Row::exact(
            format!("phi_{n}({x} + {y})"),
            "(2.8)",
            binomial_convolution(n, &x, &y).to_string(),
            phi_eval(n, &(&x + &y)).to_string(),
        ));
        if n >= 1 {
            rows.push(Row::exact(
                format!("sum_k C({n},k) phi_k({x}) phi_({n}-k)(-{x})"),
                "(2.9)",
                binomial_convolution(n, &x, &-x.clone()).to_string(),
                "0".into(),
            ));
            let (lhs, rhs) = integrate_phi(n - 1);
            rows.push(Row::exact(
                format!("int_0^x phi_{}", n - 1),
                "(2.10)",
                poly_string(&lhs),
                poly_string(&rhs),
            ));
        }
        let xn = RationalPolynomial::monomial(BigRational::one(), n);
        let c = to_phi_basis(&xn);
        let signed: Vec<BigRational> = (0..=n)
            .map(|k| {
                let v = BigRational::from_integer(stirling1_unsigned(n, k));
                if (n - k) % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        rows.push(Row::exact(format!("x^{n} in the phi basis"), "(3.21)", fmt_list(&c), fmt_list(&signed)));
        rows.push(Row::exact(
            format!("x^{n} basis round trip"),
            "(3.21)",
            poly_string(&from_phi_basis(&c)),
            poly_string(&xn),
        ));
    }
    for s in 0..=max {
        for n in 0..=s {
            let m = s - n;
            rows.push(Row::exact(
                format!("phi_({n}+{m}) via Stirling sum"),
                "(3.15)",
                fmt_list(phi_addition(n, m).coeffs()),
                fmt_list(phi(s).coeffs()),
            ));
            rows.push(Row::exact(format!("b_({n}+{m})"), "(3.16)", spivey(n, m).to_string(), bell(s).to_string()));
            let [op, coeff, product] = mellin_of_phi_forms(n, m);
            rows.push(Row::exact(
                format!("(xD)^{n} phi_{m} by coefficients"),
                "(3.17)",
                poly_string(&coeff),
                poly_string(&op),
            ));
            rows.push(Row::exact(
                format!("(xD)^{n} phi_{m} by products"),
                "(3.17)",
                poly_string(&product),
                poly_string(&op),
            ));
        }
    }
    rows
}

pub fn mellin(max: usize, ctx: &Context) -> Vec<Row> {
    let mut rng = ctx.rng(2);
    let mut rows = Vec::new();
    let order = 10;
    for n in 0..=max {
        let g = random_series(&mut rng, order);
        rows.push(Row::exact(
            format!("(xD)^{n} g via Stirling numbers"),
            "(3.5)",
            series_string(&xd_pow_via_stirling(&g, n)),
            series_string(&xd_pow(&g, n)),
        ));
        rows.push(Row::exact(
            format!("(Dx)^{n} g via Stirling numbers"),
            "(3.19)",
            series_string(&dx_pow_via_stirling(&g, n)),
            series_string(&dx_pow(&g, n)),
        ));
        let (f, h) = (random_poly(&mut rng, 6), random_poly(&mut rng, 6));
        rows.push(holds(format!("Leibniz rule for (xD)^{n}"), "(3.14)", leibniz_xd(&f, &h, n)));

        let a = random_rational(&mut rng);
        let p = rng.gen_range(1..=3);
        let ok = xd_exp_power_check(&a, p, n, n * p + 4).unwrap_or(false);
        rows.push(holds(format!("(xD)^{n} e^(a x^{p}), a = {a}"), "(3.4)", ok));

        // f(xD) g = sum_k c_k f(k) x^k
        let fp = random_poly(&mut rng, 4);
        let direct = g.map_indexed(|k, c| c * fp.eval(&BigRational::from_integer(BigInt::from(k))));
        rows.push(Row::exact(
            format!("f(xD) g, deg f = {}", fp.degree().unwrap_or(0)),
            "(3.12)",
            series_string(&apply_poly_of_xd(&fp, &g)),
            series_string(&direct),
        ));

        // (Dx)^n e^(ax) = phi_(n+1)(ax) / (ax) e^(ax)
        let e_ax = FormalPowerSeries::exp_monomial(&a, 1, order);
        let ratio = Polynomial::new(
            phi(n + 1).coeffs()[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| BigRational::from_integer(c.clone()) * num_traits::pow(a.clone(), k))
                .collect(),
        );
        let rhs = &FormalPowerSeries::from_polynomial(&ratio, order) * &e_ax;
        rows.push(Row::exact(
            format!("(Dx)^{n} e^(ax), a = {a}"),
            "(3.18)",
            series_string(&dx_pow(&e_ax, n)),
            series_string(&rhs),
        ));

        let f = Polynomial::new((0..=rng.gen_range(0..=6)).map(|_| q(rng.gen_range(0..=5), 1)).collect());
        let x = rng.gen_range(-3.0..5.0);
        rows.push(match series_transform(&f, x) {
            Ok((lhs, rhs)) => Row::float(
                format!("sum f(k) x^k/k!, f = {}, x = {x:.6}", poly_string(&f)),
                "(3.13)",
                lhs,
                rhs,
                ctx.tol(TRANSFORM_TOL),
            ),
            Err(e) => Row::error("series transformation", "(3.13)", e.to_string()),
        });
    }
    rows
}

pub fn semi_orth(max_sum: usize, ctx: &Context) -> Vec<Row> {
    let mut rows = Vec::new();
    for s in 2..=max_sum {
        for n in 1..s {
            let m = s - n;
            let (lhs, rhs) = semi_orthogonality_exact(n, m).expect("n, m >= 1");
            rows.push(Row::exact(format!("double sum ({n},{m})"), "(4.2)", lhs.to_string(), rhs.to_string()));
            let expected: f64 = rational_to_float(&rhs);
            rows.push(match semi_orthogonality_quad(n, m) {
                Ok(r) => Row::float(format!("weighted integral ({n},{m})"), "(4.1)", r.value.re, expected, ctx.tol(SEMI_ORTH_TOL)),
                Err(e) => Row::error(format!("weighted integral ({n},{m})"), "(4.1)", e.to_string()),
            });
            rows.push(match semi_orthogonality_parseval(n, m) {
                Ok(r) => Row::complex(
                    format!("Fourier side ({n},{m})"),
                    "(4.9)",
                    r.value,
                    ComplexValue::new(expected, 0.0),
                    ctx.tol(PARSEVAL_TOL),
                ),
                Err(e) => Row::error(format!("Fourier side ({n},{m})"), "(4.9)", e.to_string()),
            });
        }
    }
    let oracle = bernoulli_by_recurrence(max_sum.max(1));
    for m in 0..max_sum {
        let rhs = BigRational::new((BigInt::one() << (m + 1)) - 1, BigInt::from(m + 1)) * &oracle[m + 1];
        rows.push(Row::exact(
            format!("alternating Stirling sum m={m}"),
            "(4.3)",
            alternating_stirling_sum(m).to_string(),
            rhs.to_string(),
        ));
    }
    for p in 1..=MAX_SINH_POWER {
        let closed: f64 = rational_to_float(&sinh_integral_closed(p).expect("p >= 1"));
        rows.push(match sinh_integral_check(p) {
            Ok(r) => Row::float(format!("int t^{}/sinh(pi t)", 2 * p - 1), "(4.10)", r.value.re, closed, ctx.tol(SINH_TOL)),
            Err(e) => Row::error(format!("int t^{}/sinh(pi t)", 2 * p - 1), "(4.10)", e.to_string()),
        });
    }
    rows
}

const PARAMS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
const SHIFTS: [f64; 3] = [0.0, 1.0, -1.0];

fn moment_row(name: String, eq: &str, quad: exppoly::Result<ComplexValue>, closed: exppoly::Result<(ComplexValue, bool)>, tol: Tolerance) -> Row {
    match (quad, closed) {
        (Ok(v), Ok((c, exact_zero))) => {
            let tol = if exact_zero { tol } else { Tolerance::new(tol.rel, 0.0) };
            Row::complex(name, eq, v, c, tol)
        }
        (Err(e), _) | (_, Err(e)) => Row::error(name, eq, e.to_string()),
    }
}

pub fn gamma(n_max: usize, ctx: &Context) -> Vec<Row> {
    let mut rows = Vec::new();
    for t in [0.0, 1.0, 2.0, 10.0] {
        let g = gamma_complex(ComplexValue::new(0.5, t)).map(|g| g.norm_sqr());
        rows.push(match g {
            Ok(v) => Row::float(format!("|Gamma(1/2 + {t}i)|^2 = pi / cosh(pi t)"), "(4.4)", v, PI / (PI * t).cosh(), ctx.tol(GAMMA_TOL)),
            Err(e) => Row::error("Gamma reflection", "(4.4)", e.to_string()),
        });
    }
    let tol = ctx.tol(MOMENT_TOL);
    for n in 0..=n_max {
        for a in PARAMS {
            for lambda in SHIFTS {
                let closed = moment_single_closed(n, a, lambda).map(|c| (c.float_value, c.exact_part.is_zero()));
                let quad = moment_single_quad(n, a, lambda).map(|r| r.value);
                rows.push(moment_row(format!("G n={n} a={a} lambda={lambda}"), "(5.2)", quad, closed, tol));
            }
            for b in PARAMS {
                for mu in SHIFTS {
                    let closed = moment_pair_closed(n, a, b, mu).map(|c| (c.float_value, c.exact_part.is_zero()));
                    let quad = moment_pair_quad(n, a, b, mu).map(|r| r.value);
                    rows.push(moment_row(format!("GG n={n} a={a} b={b} mu={mu}"), "(5.1)", quad, closed, tol));
                }
            }
        }
    }
    for a in PARAMS {
        for b in PARAMS {
            for mu in SHIFTS {
                let known = gamma_real(a + b).map(|g| 2.0 * PI * g * (-b * mu).exp() * (1.0 + (-mu).exp()).powf(-a - b));
                let closed = moment_pair_closed(0, a, b, mu).map(|c| c.float_value);
                rows.push(match (closed, known) {
                    (Ok(c), Ok(k)) => Row::complex(format!("known integral a={a} b={b} mu={mu}"), "(5.5)", c, ComplexValue::new(k, 0.0), ctx.tol(GAMMA_TOL)),
                    (Err(e), _) | (_, Err(e)) => Row::error("known integral", "(5.5)", e.to_string()),
                });
            }
        }
    }
    for n in 0..=n_max {
        let closed = moment_single_closed(n, 1.0, 0.0).map(|c| c.float_value);
        rows.push(match closed {
            Ok(c) => Row::complex(
                format!("G_{n}(1) = -2 pi i^n e^-1 phi_{}(-1)", n + 1),
                "(5.13)",
                unit_moment_via_phi(n),
                c,
                ctx.tol(UNIT_MOMENT_TOL),
            ),
            Err(e) => Row::error(format!("G_{n}(1)"), "(5.13)", e.to_string()),
        });
    }
    let mut rng = ctx.rng(4);
    for _ in 0..4 {
        let p = Polynomial::new((0..=n_max).map(|_| random_rational(&mut rng)).collect::<Vec<_>>());
        let a = PARAMS[rng.gen_range(0..PARAMS.len())];
        let by_quad: exppoly::Result<ComplexValue> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| moment_single_quad(k, a, 0.0).map(|r| r.value * rational_to_float::<f64>(c)))
            .sum();
        let closed = polynomial_moment(&p, a);
        rows.push(match (by_quad, closed) {
            (Ok(v), Ok(c)) => Row::complex(format!("int p(t) Gamma({a}+it) dt, p = {}", poly_string(&p)), "(5.12)", v, c, ctx.tol(MOMENT_TOL)),
            (Err(e), _) | (_, Err(e)) => Row::error("polynomial moment", "(5.12)", e.to_string()),
        });
        if let Ok(c) = polynomial_moment(&p, 1.0) {
            rows.push(Row::complex(
                format!("int p(t) Gamma(1+it) dt via phi, p = {}", poly_string(&p)),
                "(5.14)",
                polynomial_moment_unit(&p),
                c,
                ctx.tol(UNIT_MOMENT_TOL),
            ));
        }
    }
    rows
}
