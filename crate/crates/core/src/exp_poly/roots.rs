//! Real roots of `phi_n`.
//!
//! The nonzero roots of `phi_(n+1)` strictly interlace with the roots of
//! `phi_n`, with one extra root to the left of all of them. Starting from
//! `phi_1 = x` this gives a sign-changing bracket for every root, which is
//! then bisected down to adjacent floats. Signs are evaluated exactly from the
//! integer coefficients, so cancellation in the large Stirling coefficients
//! cannot flip a bracket.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use super::phi_poly;
use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::IntPolynomial;

pub const MAX_ROOT_DEGREE: usize = 25;

/// Exact sign of `p(x)` at a finite float.
fn sign_at(p: &IntPolynomial, x: f64) -> Sign {
    let (mantissa, exponent, sign) = num_traits::float::FloatCore::integer_decode(x);
    let mut m = BigInt::from(mantissa);
    if sign < 0 {
        m = -m;
    }
    let (m, s) = if exponent >= 0 {
        (m << exponent as usize, 0usize)
    } else {
        (m, (-exponent) as usize)
    };
    // sum_k c_k m^k 2^(s (d - k)), which has the sign of p(m / 2^s)
    let c = p.coeffs();
    let Some(d) = c.len().checked_sub(1) else {
        return Sign::NoSign;
    };
    let mut acc = c[d].clone();
    for k in (0..d).rev() {
        acc = acc * &m + (&c[k] << (s * (d - k)));
    }
    acc.sign()
}

fn bisect(p: &IntPolynomial, mut lo: f64, mut hi: f64, degree: usize) -> Result<f64> {
    let s_lo = sign_at(p, lo);
    let s_hi = sign_at(p, hi);
    if s_lo == Sign::NoSign {
        return Ok(lo);
    }
    if s_hi == Sign::NoSign {
        return Ok(hi);
    }
    if s_lo == s_hi {
        return Err(Error::RootFinding {
            degree,
            reason: format!("no sign change on [{lo}, {hi}]"),
        });
    }
    for _ in 0..2200 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            // lo and hi are adjacent floats
            return Ok(mid);
        }
        match sign_at(p, mid) {
            Sign::NoSign => return Ok(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Err(Error::RootFinding {
        degree,
        reason: "bisection did not terminate".into(),
    })
}

/// All `n` roots of `phi_n`, ascending. The largest is exactly `0`.
pub fn phi_roots(n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_ROOT_DEGREE {
        return Err(Error::OutOfRange(format!(
            "phi_roots needs 1 <= n <= {MAX_ROOT_DEGREE}, got {n}"
        )));
    }
    let mut roots = vec![0.0];
    for j in 2..=n {
        // phi_j / x has the nonzero roots of phi_j
        let deflated = IntPolynomial::new(phi_poly(j).coeffs()[1..].to_vec());
        debug_assert!(!deflated.coeff(0).is_zero());
        // all roots are nonpositive and sum to -C(j, 2)
        let bound = -(binomial(j, 2).to_f64().unwrap_or(f64::MAX) + 1.0);
        let mut next = Vec::with_capacity(j);
        let mut left = bound;
        for &r in &roots {
            next.push(bisect(&deflated, left, r, j)?);
            left = r;
        }
        next.push(0.0);
        roots = next;
    }
    Ok(roots)
}
