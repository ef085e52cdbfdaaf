//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number; always kept in lowest terms with a
/// positive denominator by `num-rational`.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `p/q`. Panics on a zero denominator.
pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` with optional sign and surrounding whitespace.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::InvalidForm(format!("malformed fraction `{text}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidForm(format!("zero denominator in `{text}`")));
    }
    Ok(Scalar::new(num, den))
}

/// Sign of a permutation given as the number of inversions.
pub(crate) fn parity_sign(inversions: usize) -> Scalar {
    if inversions % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}
