//! Checked integer helpers. All formula evaluation goes through `i128`
//! intermediates and is narrowed back with an explicit overflow error.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Sum of a slice of terms, checked.
pub(crate) fn sum(terms: &[i128]) -> Result<i128> {
    terms.iter().try_fold(0i128, |acc, &t| add(acc, t))
}

#[inline]
pub(crate) fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

#[inline]
pub(crate) fn to_u64(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow)
}

/// `floor(sqrt(n))`.
pub fn isqrt(n: u128) -> u128 {
    let r = n.isqrt();
    debug_assert!(r * r <= n && (r + 1).checked_mul(r + 1).is_none_or(|s| s > n));
    r
}

/// Returns `Some(r)` when `n = r^2`.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_near_squares() {
        for r in 0u128..2000 {
            let sq = r * r;
            assert_eq!(isqrt(sq), r);
            if sq > 0 {
                assert_eq!(isqrt(sq - 1), r - 1);
            }
            assert_eq!(isqrt(sq + 2 * r), r);
        }
        assert_eq!(isqrt(u128::MAX), u64::MAX as u128);
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(25), Some(5));
        assert_eq!(exact_sqrt(24), None);
        assert_eq!(exact_sqrt(0), Some(0));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(mul(i128::MAX, 2), Err(Error::Overflow));
        assert_eq!(to_i64(i128::from(i64::MAX) + 1), Err(Error::Overflow));
        assert_eq!(to_u64(-1), Err(Error::Overflow));
    }
}
