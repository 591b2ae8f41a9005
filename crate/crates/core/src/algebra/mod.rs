//! Exact scalars, dense univariate polynomials, truncated power series and
//! the differential polynomials that carry `(cD)^n f`.

mod diffpoly;
mod poly;
mod series;

pub use diffpoly::{DiffMonomial, DiffPolynomial, MonomialKey};
pub use poly::UniPoly;
pub use series::{TruncSeries, DEFAULT_ORDER};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision signed integer.
pub type ExactScalar = BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

pub fn int(v: i64) -> ExactScalar {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(v.into())
}

pub fn factorial(n: u64) -> ExactScalar {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(2n-1)!! = 1 * 3 * ... * (2n-1)`, with `(-1)!! = 1` for `n = 0`.
pub fn double_factorial_odd(n: u64) -> ExactScalar {
    (1..=n).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

pub fn binomial(n: u64, k: u64) -> ExactScalar {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Renders an integer-valued rational without the `/1`.
pub(crate) fn fmt_rational(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
