use std::str::FromStr;

use exppoly::{BigInt, BigRational};
use num_traits::{One, Pow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(String);

/// Parses `7`, `-3/4`, `0.125` or `1.5e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q == BigInt::from(0) {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let num = BigInt::from_str(&format!("0{int}{frac}")).map_err(|_| err())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(num * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(num, Pow::pow(&ten, scale.unsigned_abs()))
    };
    if negative {
        q = -q;
    }
    debug_assert!(q.denom() >= &BigInt::one());
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("-1").unwrap(), q(-1, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), q(3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("1.5e-3").unwrap(), q(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
    }

    #[test]
    fn rejected_forms() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "e5", "1e", "0x10"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }
}
