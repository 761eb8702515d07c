//! Exact combinatorial numbers: binomials, factorials, Stirling numbers of
//! both kinds, Bernoulli numbers and Bell numbers.
//!
//! Stirling and Bernoulli values are memoized in process-wide caches. The
//! caches only ever grow; a row becomes visible to readers after it has been
//! fully computed, so concurrent readers never see a partial row.
//!
//! The signed Stirling numbers of the first kind are not exposed separately:
//! `s(n, k) = (-1)^(n-k) * stirling1_unsigned(n, k)`.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn int_pow(base: i64, exp: usize) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    /// Unsigned numbers of the first kind: permutations of n with k cycles.
    FirstUnsigned,
    /// Numbers of the second kind: partitions of an n-set into k blocks.
    Second,
}

/// Lazily extended triangular table of Stirling numbers.
///
/// Row `n` holds `n + 1` entries `(n, 0) ..= (n, n)`.
#[derive(Debug)]
pub struct StirlingCache {
    kind: StirlingKind,
    rows: RwLock<Vec<Vec<BigInt>>>,
}

impl StirlingCache {
    pub const fn new(kind: StirlingKind) -> Self {
        Self {
            kind,
            rows: RwLock::new(Vec::new()),
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// Largest row index currently stored, `None` when empty.
    pub fn max_n(&self) -> Option<usize> {
        let rows = self.rows.read().expect("stirling cache poisoned");
        rows.len().checked_sub(1)
    }

    fn ensure(&self, n: usize) {
        if self.rows.read().expect("stirling cache poisoned").len() > n {
            return;
        }
        let mut rows = self.rows.write().expect("stirling cache poisoned");
        while rows.len() <= n {
            let next = match rows.last() {
                None => vec![BigInt::one()],
                Some(prev) => self.next_row(prev),
            };
            rows.push(next);
        }
    }

    fn next_row(&self, prev: &[BigInt]) -> Vec<BigInt> {
        // prev is row m, the new row is m + 1
        let m = prev.len() - 1;
        let mut row = Vec::with_capacity(m + 2);
        row.push(BigInt::zero());
        for k in 1..=m + 1 {
            let left = &prev[k - 1];
            let above = if k <= m { &prev[k] } else { &BigInt::ZERO };
            let weight = match self.kind {
                StirlingKind::Second => k,
                StirlingKind::FirstUnsigned => m,
            };
            row.push(left + above * BigInt::from(weight));
        }
        row
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.ensure(n);
        self.rows.read().expect("stirling cache poisoned")[n][k].clone()
    }

    /// A copy of row `n`.
    pub fn row(&self, n: usize) -> Vec<BigInt> {
        self.ensure(n);
        self.rows.read().expect("stirling cache poisoned")[n].clone()
    }
}

static STIRLING_SECOND: StirlingCache = StirlingCache::new(StirlingKind::Second);
static STIRLING_FIRST: StirlingCache = StirlingCache::new(StirlingKind::FirstUnsigned);

pub fn stirling2_cache() -> &'static StirlingCache {
    &STIRLING_SECOND
}

pub fn stirling1_cache() -> &'static StirlingCache {
    &STIRLING_FIRST
}

/// Stirling number of the second kind from the triangular recurrence
/// `S(n+1, k) = k S(n, k) + S(n, k-1)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    STIRLING_SECOND.get(n, k)
}

pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    STIRLING_SECOND.row(n)
}

/// Stirling number of the second kind from the alternating sum
/// `(1/k!) sum_j (-1)^(k-j) C(k, j) j^n`.
///
/// The sum includes `j = 0` with `0^0 = 1`, so `(0, 0)` gives 1.
pub fn stirling2_explicit(n: usize, k: usize) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k, j) * int_pow(j as i64, n);
        if (k - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&factorial(k));
    if !r.is_zero() {
        return Err(Error::NotDivisible { n, k });
    }
    Ok(q)
}

/// Unsigned Stirling number of the first kind,
/// `c(n, k) = (n-1) c(n-1, k) + c(n-1, k-1)`.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigInt {
    STIRLING_FIRST.get(n, k)
}

pub fn stirling1_unsigned_row(n: usize) -> Vec<BigInt> {
    STIRLING_FIRST.row(n)
}

/// Bell number: sum of row `n` of the second-kind triangle.
pub fn bell(n: usize) -> BigInt {
    stirling2_row(n).into_iter().sum()
}

/// Memoized Bernoulli numbers, convention `B_1 = -1/2`.
#[derive(Debug)]
pub struct BernoulliCache {
    values: RwLock<Vec<BigRational>>,
}

impl BernoulliCache {
    pub const fn new() -> Self {
        Self {
            values: RwLock::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.values.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: usize) -> BigRational {
        {
            let values = self.values.read().expect("bernoulli cache poisoned");
            if let Some(b) = values.get(n) {
                return b.clone();
            }
        }
        let mut values = self.values.write().expect("bernoulli cache poisoned");
        while values.len() <= n {
            let next = bernoulli_from_stirling(values.len());
            values.push(next);
        }
        values[n].clone()
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

static BERNOULLI: BernoulliCache = BernoulliCache::new();

pub fn bernoulli_cache() -> &'static BernoulliCache {
    &BERNOULLI
}

/// Exact Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    BERNOULLI.get(n)
}

/// The alternating Stirling sum `sum_j (-1)^(j+1) S(m, j) j! / 2^(j+1)`,
/// which equals `(2^(m+1) - 1) / (m+1) * B_(m+1)`.
pub fn alternating_stirling_sum(m: usize) -> BigRational {
    let row = stirling2_row(m);
    let mut sum = BigRational::zero();
    for (j, s) in row.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let term = BigRational::new(s * factorial(j), BigInt::one() << (j + 1));
        if j % 2 == 0 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    sum
}

/// `B_0..=B_max` from `sum_(k<=m) C(m+1, k) B_k = 0`, independent of the
/// Stirling route used by [`bernoulli`].
pub fn bernoulli_by_recurrence(max: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=max {
        let s = (0..m)
            .map(|k| BigRational::from_integer(binomial(m + 1, k)) * &b[k])
            .fold(BigRational::zero(), |acc, t| acc + t);
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Computes `B_n` directly from a single row of second-kind Stirling numbers.
fn bernoulli_from_stirling(n: usize) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let m = n - 1;
    let scale = BigRational::new(BigInt::from(n), (BigInt::one() << n) - 1);
    let b = alternating_stirling_sum(m) * scale;
    debug_assert!(n < 3 || n.is_multiple_of(2) || b.is_zero());
    debug_assert!(!b.denom().is_negative());
    b
}
