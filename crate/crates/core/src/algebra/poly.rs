use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, rat_int};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are never stored,
/// so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(rat_int).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^power`
    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `a + b x`
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Integer coefficients, or `None` when some coefficient is fractional.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `x^n p(1/x)`. Requires `deg p <= n`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(
            self.degree().is_none_or(|d| d <= n),
            "reversal degree {n} below polynomial degree"
        );
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// True when the coefficient list reads the same backwards between the
    /// lowest and highest nonzero powers.
    pub fn is_palindromic(&self) -> bool {
        let Some(lo) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return true;
        };
        let body = &self.coeffs[lo..];
        body.iter().eq(body.iter().rev())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for UniPoly {
    fn sum<I: Iterator<Item = UniPoly>>(iter: I) -> Self {
        iter.fold(UniPoly::zero(), |acc, p| &acc + &p)
    }
}

/// Ascending powers, e.g. `x + 4x^2` or `1 - 3/2x`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let body = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mag.is_one() && i > 0 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{}{body}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn display_matches_family_style() {
        assert_eq!(UniPoly::from_ints([0, 1, 4]).to_string(), "x + 4x^2");
        assert_eq!(UniPoly::from_ints([1, -1]).to_string(), "1 - x");
        assert_eq!(UniPoly::from_ints([0, -2]).to_string(), "-2x");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(
            UniPoly::new(vec![rat(1, 1), rat(3, 8)]).to_string(),
            "1 + 3/8x"
        );
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        let p = UniPoly::from_ints([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn reversal_and_derivative() {
        let m2 = UniPoly::from_ints([1, 2]);
        assert_eq!(m2.reversed(2), UniPoly::from_ints([0, 2, 1]));
        assert_eq!(
            UniPoly::from_ints([0, 1, 11, 11, 1]).derivative(),
            UniPoly::from_ints([1, 22, 33, 4])
        );
        assert!(UniPoly::from_ints([0, 1, 11, 11, 1]).is_palindromic());
        assert!(!UniPoly::from_ints([0, 1, 2]).is_palindromic());
    }

    #[test]
    fn eval_and_pow() {
        let one_plus_x = UniPoly::from_ints([1, 1]);
        assert_eq!(one_plus_x.pow(3), UniPoly::from_ints([1, 3, 3, 1]));
        assert_eq!(UniPoly::from_ints([0, 1, 4]).eval(&rat(1, 1)), rat(5, 1));
    }
}
