//! Overflow-checked helpers for `i64`.
//!
//! Every intersection number in the engine goes through these; an overflow
//! is reported as [`Error::Overflow`] instead of wrapping.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Product of all factors, failing on the first overflow.
pub(crate) fn prod(factors: &[i64]) -> Result<i64> {
    factors.iter().try_fold(1i64, |acc, &f| mul(acc, f))
}

/// Sum of products: `sum_i prod(terms[i])`.
pub(crate) fn sum_of_products(terms: &[&[i64]]) -> Result<i64> {
    terms.iter().try_fold(0i64, |acc, t| add(acc, prod(t)?))
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Floor of the square root of a non-negative integer.
pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x > 0 && x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}
