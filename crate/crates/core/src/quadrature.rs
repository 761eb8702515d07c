//! Adaptive Gauss-Kronrod (7/15) quadrature for complex-valued integrands on
//! finite intervals.
//!
//! The interval is split into `initial_panels` equal pieces and the piece
//! with the largest `|K15 - G7|` is bisected until the summed estimate meets
//! the tolerance. Subdivision order and the final reduction (ascending left
//! endpoint, compensated) are fixed, so results are bit-for-bit reproducible.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::double_double::DoubleDouble;
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

const XGK: [&str; 8] = [
    "0.991455371120812639206854697526329",
    "0.949107912342758524526189684047851",
    "0.864864423359769072789712788640926",
    "0.741531185599394439863864773280788",
    "0.586087235467691130294144845693013",
    "0.405845151377397166906606412076961",
    "0.207784955007898467600689403773245",
    "0.0",
];

const WGK: [&str; 8] = [
    "0.022935322010529224963732008058970",
    "0.063092092629978553290700663189204",
    "0.104790010322250183839876322541518",
    "0.140653259715525918745189590510238",
    "0.169004726639267902826583426598550",
    "0.190350578064785409913256402421014",
    "0.204432940075298892414161999234649",
    "0.209482141084727828012999174891714",
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [&str; 4] = [
    "0.129484966168869693270611432679082",
    "0.279705391489276667901467771423780",
    "0.381830050505118944950369775488975",
    "0.417959183673469387755102040816327",
];

/// Nodes and weights split into double-double pairs, parsed once.
struct Rule {
    xgk: [DoubleDouble; 8],
    wgk: [DoubleDouble; 8],
    wg: [DoubleDouble; 4],
}

fn split<const N: usize>(digits: [&str; N]) -> [DoubleDouble; N] {
    digits.map(|d| {
        let (int, frac) = d.split_once('.').expect("decimal literal");
        let num: BigInt = format!("{int}{frac}").parse().expect("digits");
        let q = BigRational::new(num, BigInt::from(10).pow(frac.len() as u32));
        let hi = q.to_f64().expect("finite");
        let lo = (q - BigRational::from_float(hi).expect("finite")).to_f64().expect("finite");
        DoubleDouble::new(hi, lo)
    })
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| Rule {
        xgk: split(XGK),
        wgk: split(WGK),
        wg: split(WG),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions<T> {
    /// Relative tolerance on the integral value.
    pub rel_tol: T,
    /// Tolerance relative to `int |f|`, used for integrals that cancel to
    /// (nearly) zero.
    pub l1_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    pub initial_panels: usize,
}

impl<T: Real> Default for QuadratureOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-13),
            l1_tol: T::lit(1e-15),
            abs_tol: T::zero(),
            max_subdivisions: 5000,
            initial_panels: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: Complex<T>,
    pub abs_error: T,
    /// `int |f|` over the interval.
    pub l1_norm: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T, V> {
    a: T,
    b: T,
    value: V,
    error: T,
    l1: T,
}

/// Panel values and their ordered reduction.
trait PanelValue<T>: Copy {
    fn total(values: impl Iterator<Item = Self>) -> Self;
    fn magnitude(&self) -> T;
}

impl<T: Real> PanelValue<T> for Complex<T> {
    fn total(values: impl Iterator<Item = Self>) -> Self {
        values.collect::<CompensatedSum<_>>().value()
    }

    fn magnitude(&self) -> T {
        self.norm()
    }
}

impl PanelValue<f64> for DoubleDouble {
    fn total(values: impl Iterator<Item = Self>) -> Self {
        values.fold(DoubleDouble::ZERO, |s, v| s + v)
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

fn kronrod<T: Real>(f: &mut impl FnMut(T) -> Complex<T>, a: T, b: T) -> Panel<T, Complex<T>> {
    let r = rule();
    let w = |d: DoubleDouble| T::lit(d.hi);
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = f(center);
    let mut kron = f_center * w(r.wgk[7]);
    let mut gauss = f_center * w(r.wg[3]);
    let mut l1 = f_center.norm() * w(r.wgk[7]);
    for j in 0..7 {
        let dx = half_len * w(r.xgk[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kron = kron + pair * w(r.wgk[j]);
        l1 = l1 + (f1.norm() + f2.norm()) * w(r.wgk[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * w(r.wg[j / 2]);
        }
    }
    let scale = half_len.abs();
    Panel {
        a,
        b,
        value: kron * half_len,
        error: ((kron - gauss) * half_len).norm(),
        l1: l1 * scale,
    }
}

fn kronrod_dd(
    f: &mut impl FnMut(DoubleDouble) -> DoubleDouble,
    a: f64,
    b: f64,
) -> Panel<f64, DoubleDouble> {
    let r = rule();
    let center = DoubleDouble::new(a, b) * 0.5;
    let half_len = DoubleDouble::new(b, -a) * 0.5;
    let f_center = f(center);
    let mut kron = f_center * r.wgk[7];
    let mut gauss = f_center * r.wg[3];
    let mut l1 = f_center.abs() * r.wgk[7];
    for j in 0..7 {
        let dx = half_len * r.xgk[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kron = kron + pair * r.wgk[j];
        l1 = l1 + (f1.abs() + f2.abs()) * r.wgk[j];
        if j % 2 == 1 {
            gauss = gauss + pair * r.wg[j / 2];
        }
    }
    Panel {
        a,
        b,
        value: kron * half_len,
        error: ((kron - gauss) * half_len).to_f64().abs(),
        l1: (l1 * half_len).to_f64(),
    }
}

fn total<T: Real, V: PanelValue<T>>(panels: &[Panel<T, V>]) -> (V, T, T) {
    let value = V::total(panels.iter().map(|p| p.value));
    let err: CompensatedSum<T> = panels.iter().map(|p| p.error).collect();
    let l1: CompensatedSum<T> = panels.iter().map(|p| p.l1).collect();
    (value, err.value(), l1.value())
}

fn adaptive<T: Real, V: PanelValue<T>>(
    mut rule: impl FnMut(T, T) -> Panel<T, V>,
    a: T,
    b: T,
    opts: &QuadratureOptions<T>,
) -> Result<(V, T, T, usize)> {
    let panels_n = opts.initial_panels.max(1);
    let width = (b - a) / T::from_usize_lossy(panels_n);
    let mut panels: Vec<Panel<T, V>> = (0..panels_n)
        .map(|i| {
            let lo = a + width * T::from_usize_lossy(i);
            let hi = if i + 1 == panels_n { b } else { lo + width };
            rule(lo, hi)
        })
        .collect();
    let mut evaluations = 15 * panels_n;

    loop {
        let (value, error, l1) = total(&panels);
        let tol = opts
            .abs_tol
            .max(opts.rel_tol * value.magnitude())
            .max(opts.l1_tol * l1);
        if error <= tol {
            panels.sort_by(|p, q| p.a.partial_cmp(&q.a).expect("finite endpoints"));
            let (value, error, l1) = total(&panels);
            return Ok((value, error, l1, evaluations));
        }
        if !error.is_finite() || panels.len() >= opts.max_subdivisions {
            return Err(Error::Quadrature {
                estimate: error.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
                evaluations,
                truncation: b.to_f64().unwrap_or(f64::NAN),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.error > panels[best].error { i } else { best });
        let p = panels.swap_remove(worst);
        let mid = T::lit(0.5) * (p.a + p.b);
        panels.push(rule(p.a, mid));
        panels.push(rule(mid, p.b));
        evaluations += 30;
    }
}

/// Integrates `f` over `[a, b]`.
///
/// Fails with [`Error::Quadrature`] when the subdivision budget runs out
/// before the error estimate falls under
/// `max(abs_tol, rel_tol |I|, l1_tol int |f|)`.
pub fn integrate<T: Real>(
    mut f: impl FnMut(T) -> Complex<T>,
    a: T,
    b: T,
    opts: &QuadratureOptions<T>,
) -> Result<Estimate<T>> {
    let (value, abs_error, l1_norm, evaluations) = adaptive(|lo, hi| kronrod(&mut f, lo, hi), a, b, opts)?;
    Ok(Estimate {
        value,
        abs_error,
        l1_norm,
        evaluations,
    })
}

/// [`integrate`] for real integrands evaluated in double-double precision.
///
/// Nodes, weights, integrand values and all sums carry about 32 digits; only
/// the panel endpoints are `f64`. This pays off when the integral is tiny
/// compared with `int |f|`.
pub fn integrate_real_dd(
    mut f: impl FnMut(DoubleDouble) -> DoubleDouble,
    a: f64,
    b: f64,
    opts: &QuadratureOptions<f64>,
) -> Result<Estimate<f64>> {
    let (value, abs_error, l1_norm, evaluations) = adaptive(|lo, hi| kronrod_dd(&mut f, lo, hi), a, b, opts)?;
    Ok(Estimate {
        value: Complex::new(value.to_f64(), 0.0),
        abs_error,
        l1_norm,
        evaluations,
    })
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<T: Real>(
    mut f: impl FnMut(T) -> T,
    a: T,
    b: T,
    opts: &QuadratureOptions<T>,
) -> Result<Estimate<T>> {
    integrate(|x| Complex::new(f(x), T::zero()), a, b, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exactness() {
        let est = integrate_real(|x: f64| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &Default::default()).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((est.value.re - exact).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_complex() {
        // int_0^{2 pi} e^{i 3 x} dx = 0 and int_0^1 e^{i x} dx = (e^i - 1)/i
        let z = integrate(|x: f64| Complex::new(0.0, 3.0 * x).exp(), 0.0, 2.0 * PI, &Default::default()).unwrap();
        assert!(z.value.norm() < 1e-13);
        let w = integrate(|x: f64| Complex::new(0.0, x).exp(), 0.0, 1.0, &Default::default()).unwrap();
        let i = Complex::new(0.0, 1.0);
        let exact = (i.exp() - 1.0) / i;
        assert!((w.value - exact).norm() < 1e-15);
    }

    #[test]
    fn gaussian() {
        let est = integrate_real(|x: f64| (-x * x).exp(), -10.0, 10.0, &Default::default()).unwrap();
        assert!((est.value.re - PI.sqrt()).abs() < 1e-14);
        assert!(est.abs_error >= 0.0);
    }

    #[test]
    fn reproducible() {
        let f = |x: f64| Complex::new((5.0 * x).sin() * (-x).exp(), x.cos());
        let a = integrate(f, 0.0, 30.0, &Default::default()).unwrap();
        let b = integrate(f, 0.0, 30.0, &Default::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn double_double_path_cancels() {
        // int_0^inf (x - 1) e^-x dx = 0
        let opts = QuadratureOptions {
            l1_tol: 1e-20,
            rel_tol: 0.0,
            ..Default::default()
        };
        let f = |x: DoubleDouble| (x - DoubleDouble::ONE) * (-x).exp();
        let est = integrate_real_dd(f, 0.0, 80.0, &opts).unwrap();
        // tail: int_80^inf (x - 1) e^-x dx = 80 e^-80
        let tail = 80.0 * (-80.0f64).exp();
        assert!((est.value.re + tail).abs() < 1e-24, "{:e}", est.value.re);
        assert!(est.l1_norm > 0.7);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = QuadratureOptions {
            max_subdivisions: 4,
            initial_panels: 1,
            rel_tol: 1e-15,
            l1_tol: 0.0,
            abs_tol: 0.0,
        };
        let r = integrate_real(|x: f64| x.abs().sqrt(), -1.0, 1.0, &opts);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
