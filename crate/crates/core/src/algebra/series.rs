use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{fmt_rational, UniPoly};
use crate::{Error, Result};

/// Truncation order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 24;

/// Power series known exactly through `x^(order-1)`.
///
/// Binary operations require both operands to carry the same order and panic
/// otherwise; use [`TruncSeries::truncate`] to align them first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    /// Pads with zeros or drops terms so exactly `order` coefficients remain.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        assert!(order > 0, "series order must be positive");
        coeffs.resize(order, BigRational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `1 - x`
    pub fn one_minus_x(order: usize) -> Self {
        Self::new(vec![BigRational::one(), -BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The polynomial made of the known coefficients.
    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..order].to_vec(), order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x`; the top coefficient falls off.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order());
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs[..self.order() - 1].iter().cloned());
        TruncSeries { coeffs }
    }

    /// d/dx. The result is only known through one fewer power, so its order
    /// drops by one.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 2, "derivative needs order >= 2");
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect::<Vec<_>>();
        TruncSeries { coeffs }
    }

    /// `x d/dx`, which loses no precision.
    pub fn x_derivative(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self^exponent` for a series with constant term 1.
    ///
    /// Uses the recurrence obtained from `b * A' = exponent * b' * A`, i.e.
    /// `m a_m = sum_{i=1..m} ((exponent + 1) i - m) b_i a_{m-i}` with `a_0 = 1`.
    pub fn pow_rational(&self, exponent: &BigRational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidInput(format!(
                "rational power needs constant term 1, found {}",
                fmt_rational(&self.coeffs[0])
            )));
        }
        let n = self.order();
        let e1 = exponent + BigRational::one();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(BigRational::one());
        for m in 1..n {
            let mm = BigRational::from_integer(BigInt::from(m));
            let mut acc = BigRational::zero();
            for i in 1..=m {
                let b = &self.coeffs[i];
                if b.is_zero() {
                    continue;
                }
                let w = &e1 * BigRational::from_integer(BigInt::from(i)) - &mm;
                acc += w * b * &out[m - i];
            }
            out.push(acc / mm);
        }
        Ok(TruncSeries { coeffs: out })
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), rhs.order()))
        }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_add(rhs).expect("series order mismatch")
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_sub(rhs).expect("series order mismatch")
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_mul(rhs).expect("series order mismatch")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.to_poly(), self.order())
    }
}
