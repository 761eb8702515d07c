//! Complex Gamma function.
//!
//! Lanczos approximation with `g = 671/128` and 14 terms for `Re z >= 1/2`,
//! reflection `Gamma(z) Gamma(1 - z) = pi / sin(pi z)` below that. The
//! logarithm is formed first so that `|Im z|` in the hundreds neither
//! overflows nor underflows before the final exponential.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

// published digits, kept verbatim
#[allow(clippy::excessive_precision)]
const LANCZOS_SHIFT: f64 = 5.242_187_5;
#[allow(clippy::excessive_precision)]
const LANCZOS_SERIES_0: f64 = 0.999_999_999_999_997_1;
#[allow(clippy::excessive_precision)]
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

fn is_pole<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

fn ln_gamma_right<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let shifted = z + T::lit(LANCZOS_SHIFT);
    let head = (z + half) * shifted.ln() - shifted;
    let mut series = Complex::new(T::lit(LANCZOS_SERIES_0), T::zero());
    for (j, &c) in LANCZOS_COEFFS.iter().enumerate() {
        series = series + Complex::new(T::lit(c), T::zero()) / (z + T::from_usize_lossy(j + 1));
    }
    head + (series * T::lit(SQRT_TWO_PI) / z).ln()
}

/// `ln Gamma(z)` (not necessarily the principal branch of the log-gamma
/// function; only `exp` of it is meaningful). Requires `Re z >= 1/2`.
pub fn ln_gamma_lanczos<T: Real>(z: Complex<T>) -> Complex<T> {
    ln_gamma_right(z)
}

/// `Gamma(z)` for complex `z`; errors at the poles `0, -1, -2, ...`.
pub fn gamma_complex<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::OutOfRange("Gamma argument must be finite".into()));
    }
    if is_pole(z) {
        return Err(Error::GammaPole(z.re.to_f64().unwrap_or(f64::NAN)));
    }
    if z.re >= T::lit(0.5) {
        return Ok(ln_gamma_right(z).exp());
    }
    let pi = T::PI();
    let one = Complex::new(T::one(), T::zero());
    let reflected = ln_gamma_right(one - z).exp();
    Ok(Complex::new(pi, T::zero()) / ((z * pi).sin() * reflected))
}

/// Real Gamma for `x` not a nonpositive integer.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    gamma_complex(Complex::new(x, T::zero())).map(|g| g.re)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel(a: Complex<f64>, b: Complex<f64>) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// Reference values computed with 30-digit arithmetic.
    const REFERENCE: [((f64, f64), (f64, f64)); 11] = [
        ((0.5, 0.0), (1.772_453_850_905_516, 0.0)),
        ((0.5, 1.0), (0.300_694_617_260_655_8, -0.424_967_879_433_123_8)),
        ((0.5, 2.0), (0.089_855_176_706_431_64, -0.060_493_760_292_887_57)),
        ((3.0, -7.5), (0.000_427_006_830_205_749_6, 0.003_054_016_909_168_404)),
        ((0.25, 40.0), (4.831_823_620_335_545e-28, 1.756_032_672_945_792e-28)),
        ((2.5, 100.0), (1.070_710_992_125_393_1e-64, -1.071_397_677_231_959_4e-64)),
        ((1.0, 0.1), (0.990_206_629_588_384_4, -0.056_823_808_753_712_1)),
        ((10.0, 3.0), (197_624.138_949_765_47, 113_252.918_959_471_61)),
        ((-2.5, 0.5), (-0.333_875_203_522_432_3, -0.206_457_307_963_608_4)),
        ((-0.5, 0.0), (-3.544_907_701_811_032, 0.0)),
        ((0.1, -60.0), (-5.414_874_526_535_888e-42, -1.807_965_155_859_713_5e-42)),
    ];

    #[test]
    fn matches_reference_values() {
        for &((x, y), (re, im)) in &REFERENCE {
            let g = gamma_complex(Complex::new(x, y)).unwrap();
            let err = rel(g, Complex::new(re, im));
            assert!(err < 1e-13, "Gamma({x}+{y}i): rel err {err:e}");
        }
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0;
        for n in 1..=20 {
            let g = gamma_real(n as f64).unwrap();
            assert!((g - fact).abs() <= 1e-14 * fact, "Gamma({n})");
            fact *= n as f64;
        }
        assert_eq!(gamma_real(1.0).unwrap(), 1.0);
    }

    #[test]
    fn critical_line_modulus() {
        for t in [0.0, 1.0, 2.0, 10.0, 50.0, 100.0] {
            let g = gamma_complex(Complex::new(0.5, t)).unwrap();
            let expect = std::f64::consts::PI / (std::f64::consts::PI * t).cosh();
            let got = g.norm_sqr();
            assert!((got - expect).abs() <= 1e-12 * expect, "t={t}");
        }
    }

    #[test]
    fn poles_are_errors() {
        for n in 0..5 {
            assert!(matches!(
                gamma_complex(Complex::new(-(n as f64), 0.0)),
                Err(Error::GammaPole(_))
            ));
        }
        assert!(gamma_complex(Complex::new(-1.0, 1e-3)).is_ok());
        assert!(gamma_complex(Complex::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn single_precision() {
        let g = gamma_complex(Complex::new(0.5f32, 0.0)).unwrap();
        assert!((g.re - std::f32::consts::PI.sqrt()).abs() < 1e-6);
    }
}
