//! Eulerian-type polynomial families, each available from a recurrence and
//! from at least one independent construction (tableau sums, grammars,
//! brute-force oracles), plus the power series identities that tie them to
//! the operators `x (1-x)^-k D` and `k x D`.
//!
//! Descents count the final index, so [`eulerian`] is `x` times
//! [`eulerian_classic`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, rat, rat_int, TruncSeries, UniPoly};
use crate::combinat::{arithmetic_s, s_eulerian, Partition, TypeKMu};
use crate::grammars::{andre_grammars, dumont_eulerian};
use crate::oracles;
use crate::tableaux::{g_index, syt_all, syt_two_columns, Tableau};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `A_n(x)`, final index counted as a descent.
    Eulerian,
    /// `A_n(x) / x`.
    EulerianClassic,
    /// `C_n(x; k)`, descents of k-Stirling permutations.
    SecondOrder(u32),
    /// `A_n^(k)(x)`.
    OneOverK(u32),
    /// `N_n(x)`.
    LeftAscentPlateau,
    /// `B_n(x)`.
    TypeB,
    /// `S_n(x)`.
    Andre,
    /// `sum_i a(n, i) x^i`, the gamma vector of `A_n`.
    GammaEulerian,
    /// `sum_i 2^(i-1) S(n, i) x^i`, the gamma vector of `A_(n+1)`.
    GammaAndre,
}

impl FamilyId {
    /// Parses a CLI name; `k` is used by the two parametrized families.
    pub fn from_name(name: &str, k: u32) -> Result<FamilyId> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        Ok(match name {
            "eulerian" => FamilyId::Eulerian,
            "eulerian-classic" => FamilyId::EulerianClassic,
            "second-order" => FamilyId::SecondOrder(k),
            "one-over-k" => FamilyId::OneOverK(k),
            "left-ascent-plateau" => FamilyId::LeftAscentPlateau,
            "type-b" => FamilyId::TypeB,
            "andre" => FamilyId::Andre,
            "gamma-eulerian" => FamilyId::GammaEulerian,
            "gamma-andre" => FamilyId::GammaAndre,
            other => return Err(Error::InvalidInput(format!("unknown family `{other}`"))),
        })
    }

    pub const NAMES: [&'static str; 9] = [
        "eulerian",
        "eulerian-classic",
        "second-order",
        "one-over-k",
        "left-ascent-plateau",
        "type-b",
        "andre",
        "gamma-eulerian",
        "gamma-andre",
    ];

    /// Smallest `n` for which the family is defined.
    pub fn first_n(self) -> u32 {
        match self {
            FamilyId::SecondOrder(_)
            | FamilyId::OneOverK(_)
            | FamilyId::LeftAscentPlateau
            | FamilyId::TypeB => 0,
            _ => 1,
        }
    }

    pub fn poly(self, n: u32) -> Result<UniPoly> {
        if n < self.first_n() {
            return Err(Error::InvalidInput(format!(
                "{self} starts at n = {}",
                self.first_n()
            )));
        }
        Ok(match self {
            FamilyId::Eulerian => eulerian(n),
            FamilyId::EulerianClassic => eulerian_classic(n),
            FamilyId::SecondOrder(k) => second_order(n, k),
            FamilyId::OneOverK(k) => one_over_k(n, k),
            FamilyId::LeftAscentPlateau => left_ascent_plateau(n),
            FamilyId::TypeB => type_b(n),
            FamilyId::Andre => andre(n),
            FamilyId::GammaEulerian => gamma_coefficients(&eulerian(n), n as usize + 1)
                .expect("Eulerian polynomials are gamma-positive"),
            FamilyId::GammaAndre => gamma_andre(n),
        })
    }

    /// Coefficients of row `n` as listed in a b-file: from the lowest nonzero
    /// power up to the degree (a single 0 for the zero polynomial).
    pub fn bfile_row(self, n: u32) -> Result<Vec<BigInt>> {
        let p = self.poly(n)?;
        let ints = p.int_coeffs().expect("families have integer coefficients");
        let lo = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if ints.is_empty() {
            return Ok(vec![BigInt::zero()]);
        }
        Ok(ints[lo..].to_vec())
    }

    /// `index value` lines for rows `first_n..=nmax`, read by rows; the index
    /// starts at [`FamilyId::first_n`].
    pub fn bfile(self, nmax: u32) -> Result<String> {
        let mut out = String::new();
        let mut index = self.first_n() as u64;
        for n in self.first_n()..=nmax {
            for v in self.bfile_row(n)? {
                out.push_str(&format!("{index} {v}\n"));
                index += 1;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Eulerian => write!(f, "eulerian"),
            FamilyId::EulerianClassic => write!(f, "eulerian-classic"),
            FamilyId::SecondOrder(k) => write!(f, "second-order(k={k})"),
            FamilyId::OneOverK(k) => write!(f, "one-over-k(k={k})"),
            FamilyId::LeftAscentPlateau => write!(f, "left-ascent-plateau"),
            FamilyId::TypeB => write!(f, "type-b"),
            FamilyId::Andre => write!(f, "andre"),
            FamilyId::GammaEulerian => write!(f, "gamma-eulerian"),
            FamilyId::GammaAndre => write!(f, "gamma-andre"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    /// Names as in [`FamilyId::from_name`], with `k = 2` for the parametrized ones.
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::from_name(s, 2)
    }
}

fn x_poly() -> UniPoly {
    UniPoly::x()
}

fn one_minus_x() -> UniPoly {
    UniPoly::from_ints([1, -1])
}

fn one_plus_x() -> UniPoly {
    UniPoly::from_ints([1, 1])
}

fn r(v: u64) -> BigRational {
    rat_int(v)
}

/// `A_n`: `A_(m+1) = (m+1) x A_m + x (1-x) A_m'`, `A_0 = 1`.
pub fn eulerian(n: u32) -> UniPoly {
    let x1mx = &x_poly() * &one_minus_x();
    (0..n).fold(UniPoly::one(), |a, m| {
        &a.shift(1).scale(&r(m as u64 + 1)) + &(&x1mx * &a.derivative())
    })
}

/// The usual Eulerian polynomial, `A_n / x` for `n >= 1`.
pub fn eulerian_classic(n: u32) -> UniPoly {
    let a = eulerian(n);
    UniPoly::new(a.coeffs().iter().skip(1).cloned().collect())
}

/// `sum_T G_T x^(n+1-l(lambda(T)))` over `SYT(n)`.
pub fn eulerian_syt(n: u32) -> UniPoly {
    syt_sum(&syt_all(n), n, false)
}

/// `(x D_G)^n (y)` at `y = 1` for `G = {x -> y, y -> y}`.
pub fn eulerian_dumont(n: u32) -> UniPoly {
    dumont_eulerian(n)
        .set_to_one("y")
        .to_unipoly("x")
        .expect("only x remains")
}

fn syt_sum(tableaux: &[Tableau], n: u32, factorial_weight: bool) -> UniPoly {
    tableaux
        .iter()
        .map(|t| {
            let mut w = g_index(t).product();
            if factorial_weight {
                w *= t.shape().factorial_product();
            }
            UniPoly::monomial(rat_int(w), (n + 1) as usize - t.shape().len())
        })
        .sum()
}

/// `C_n(x; k)`: `C_(m+1) = (km+1) x C_m + x (1-x) C_m'`, `C_0 = 1`.
pub fn second_order(n: u32, k: u32) -> UniPoly {
    let x1mx = &x_poly() * &one_minus_x();
    (0..n).fold(UniPoly::one(), |c, m| {
        &c.shift(1).scale(&r(k as u64 * m as u64 + 1)) + &(&x1mx * &c.derivative())
    })
}

/// `sum_T G_T lambda(T)! x^(n+1-l(lambda(T)))` over `SYT(n)`; equals `C_n(x; 2)`.
pub fn second_order_syt(n: u32) -> UniPoly {
    syt_sum(&syt_all(n), n, true)
}

/// `A_n^(k)`: `A_(m+1) = (1 + kmx) A_m + kx (1-x) A_m'`, `A_0 = A_1 = 1`.
pub fn one_over_k(n: u32, k: u32) -> UniPoly {
    let kx1mx = (&x_poly() * &one_minus_x()).scale(&r(k as u64));
    let mut a = UniPoly::one();
    for m in 1..n {
        let lead = UniPoly::linear(BigRational::one(), r(k as u64 * m as u64));
        a = &(&lead * &a) + &(&kx1mx * &a.derivative());
    }
    a
}

/// `A_n^(k)` as the ascent polynomial of s-inversion sequences with
/// `s = (1, k+1, 2k+1, ...)`.
pub fn one_over_k_s_inversions(n: u32, k: u32) -> Result<UniPoly> {
    s_eulerian(&arithmetic_s(n, k))
}

/// `N_n(x) = x^n M_n(1/x)` with `M_n = A_n^(2)`.
pub fn left_ascent_plateau(n: u32) -> UniPoly {
    one_over_k(n, 2).reversed(n as usize)
}

/// `B_n = sum_i binom(n, i) N_i M_(n-i)`.
pub fn type_b(n: u32) -> UniPoly {
    (0..=n)
        .map(|i| {
            (&left_ascent_plateau(i) * &one_over_k(n - i, 2))
                .scale(&rat_int(binomial(n as u64, i as u64)))
        })
        .sum()
}

/// `sum_i binom(n, i) N_i N_(n-i)`, which should be `2^n A_n`.
pub fn lap_self_convolution(n: u32) -> UniPoly {
    (0..=n)
        .map(|i| {
            (&left_ascent_plateau(i) * &left_ascent_plateau(n - i))
                .scale(&rat_int(binomial(n as u64, i as u64)))
        })
        .sum()
}

/// `S_n`: `S_m = (m+1) x S_(m-1) + x (1-2x) S_(m-1)'`, `S_1 = x`.
pub fn andre(n: u32) -> UniPoly {
    assert!(n >= 1, "Andre polynomials start at n = 1");
    let x12x = &x_poly() * &UniPoly::from_ints([1, -2]);
    (2..=n).fold(x_poly(), |s, m| {
        &s.shift(1).scale(&r(m as u64 + 1)) + &(&x12x * &s.derivative())
    })
}

/// `sum_T G_T x^(n+1-l(lambda(T)))` over two-column tableaux of `SYT(n)`.
pub fn andre_syt(n: u32) -> UniPoly {
    syt_sum(&syt_two_columns(n), n, false)
}

/// `(D_G1^n(x), (x D_G2)^n(x))` at `y = 1`.
pub fn andre_grammar_slices(n: u32) -> (UniPoly, UniPoly) {
    let (a, b) = andre_grammars(n);
    let slice = |p: crate::grammars::MPoly| p.set_to_one("y").to_unipoly("x").expect("only x remains");
    (slice(a), slice(b))
}

/// `sum_i 2^(i-1) S(n, i) x^i`.
pub fn gamma_andre(n: u32) -> UniPoly {
    let s = andre(n);
    UniPoly::new(
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 {
                    c.clone()
                } else {
                    c * rat_int(BigInt::from(2).pow(i as u32 - 1))
                }
            })
            .collect(),
    )
}

/// Two-column `sum_T G_T lambda(T)! x^(n+1-l(lambda(T)))`.
pub fn gamma_andre_syt(n: u32) -> UniPoly {
    syt_sum(&syt_two_columns(n), n, true)
}

/// `sum_i gamma_i x^i (1+x)^(d-2i)`.
pub fn gamma_expand(gamma: &UniPoly, d: usize) -> UniPoly {
    gamma
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            assert!(2 * i <= d, "gamma index {i} too large for degree {d}");
            &UniPoly::monomial(c.clone(), i) * &one_plus_x().pow((d - 2 * i) as u32)
        })
        .sum()
}

/// The `gamma` with `p = sum_i gamma_i x^i (1+x)^(d-2i)`, or `None` if no
/// such expansion exists.
pub fn gamma_coefficients(p: &UniPoly, d: usize) -> Option<UniPoly> {
    let mut rest = p.clone();
    let mut gamma = Vec::new();
    for i in 0..=d / 2 {
        let g = rest.coeff(i);
        if !g.is_zero() {
            let term = &UniPoly::monomial(g.clone(), i) * &one_plus_x().pow((d - 2 * i) as u32);
            rest = &rest - &term;
        }
        gamma.push(g);
    }
    rest.is_zero().then(|| UniPoly::new(gamma))
}

/// Outcome of the three gamma-expansion checks at one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    /// `A_n = sum a(n, i) x^i (1+x)^(n+1-2i)` with `a` from the peak oracle.
    pub peaks: bool,
    /// `A_(n+1) = sum 2^(i-1) S(n, i) x^i (1+x)^(n+2-2i)`.
    pub andre: bool,
    /// `sum 2^(i-1) S(n, i) x^i` equals the weighted two-column tableau sum.
    pub two_column: bool,
}

impl GammaReport {
    pub fn all(&self) -> bool {
        self.peaks && self.andre && self.two_column
    }
}

pub fn gamma_checks(n: u32) -> Result<GammaReport> {
    let a_n = eulerian(n);
    let peak = oracles::peak_gamma(n as usize)?;
    let peak_gamma = UniPoly::new(peak.into_iter().map(rat_int).collect());
    let ga = gamma_andre(n);
    Ok(GammaReport {
        peaks: gamma_expand(&peak_gamma, n as usize + 1) == a_n,
        andre: gamma_expand(&ga, n as usize + 2) == eulerian(n + 1),
        two_column: ga == gamma_andre_syt(n),
    })
}

fn check_truncation(order: usize, n: u32) -> Result<()> {
    let needed = n as usize + 5;
    if order < needed {
        Err(Error::Truncation { order, needed })
    } else {
        Ok(())
    }
}

/// `(1-x)^e` as a series.
fn one_minus_x_pow(e: &BigRational, order: usize) -> Result<TruncSeries> {
    TruncSeries::one_minus_x(order).pow_rational(e)
}

/// `(x (1-x)^-k D)^n (1-x)^-1 * (1-x)^(n+kn+1)` to `order` terms.
pub fn c_series_lhs(n: u32, k: u32, order: usize) -> Result<TruncSeries> {
    check_truncation(order, n)?;
    let start = order + n as usize;
    let mut s = one_minus_x_pow(&rat(-1, 1), start)?;
    for _ in 0..n {
        let d = s.derivative();
        let w = one_minus_x_pow(&rat(-(k as i64), 1), d.order())?;
        s = (&w * &d).mul_x();
    }
    let tail = one_minus_x_pow(&rat_int((n + k * n + 1) as i64), order)?;
    Ok(&s * &tail)
}

/// `(k x D)^n (1-x)^(-1/k) * (1-x)^(n+1/k)` to `order` terms.
pub fn a_k_series_lhs(n: u32, k: u32, order: usize) -> Result<TruncSeries> {
    check_truncation(order, n)?;
    let inv_k = rat(1, k as i64);
    let mut s = one_minus_x_pow(&-inv_k.clone(), order)?;
    for _ in 0..n {
        s = s.x_derivative().scale(&rat_int(k));
    }
    let tail = one_minus_x_pow(&(rat_int(n) + inv_k), order)?;
    Ok(&s * &tail)
}

/// Both series identities for one `(n, k)`: the first against
/// `C_n(x; k+1)`, the second against `x^n A_n^(k)(1/x)`.
pub fn verify_series_identities(n: u32, k: u32, order: usize) -> Result<(bool, bool)> {
    let first = c_series_lhs(n, k, order)?
        == TruncSeries::from_poly(&second_order(n, k + 1), order);
    let second = a_k_series_lhs(n, k, order)?
        == TruncSeries::from_poly(&one_over_k(n, k).reversed(n as usize), order);
    Ok((first, second))
}

/// `sum_m m^n x^m * (1-x)^(n+1)` to `order` terms.
pub fn power_sum_series(n: u32, order: usize) -> Result<TruncSeries> {
    check_truncation(order, n)?;
    let s = TruncSeries::new(
        (0..order as u64)
            .map(|m| rat_int(BigInt::from(m).pow(n)))
            .collect(),
        order,
    );
    Ok(&s * &one_minus_x_pow(&rat_int(n + 1), order)?)
}

/// `sum_m S(m+n, m) x^m * (1-x)^(2n+1)` to `order` terms.
pub fn stirling_series(n: u32, order: usize) -> Result<TruncSeries> {
    check_truncation(order, n)?;
    let tri = oracles::stirling2_triangle(order + n as usize);
    let s = TruncSeries::new(
        (0..order).map(|m| rat_int(tri[m + n as usize][m].clone())).collect(),
        order,
    );
    Ok(&s * &one_minus_x_pow(&rat_int(2 * n + 1), order)?)
}

/// `(A_n identity, C_n identity)`.
pub fn verify_classical_series(n: u32, order: usize) -> Result<(bool, bool)> {
    let a = power_sum_series(n, order)? == TruncSeries::from_poly(&eulerian(n), order);
    let c = stirling_series(n, order)? == TruncSeries::from_poly(&second_order(n, 2), order);
    Ok((a, c))
}

/// `sum_k w_k k! x^k (1-x)^(n-k)`.
fn frobenius_sum(n: u32, weight: impl Fn(u32) -> Result<BigInt>) -> Result<UniPoly> {
    let mut total = UniPoly::zero();
    for k in 1..=n {
        let w = weight(k)? * factorial(k as u64);
        let term = UniPoly::monomial(rat_int(w), k as usize);
        total = &total + &(&term * &one_minus_x().pow(n - k));
    }
    Ok(total)
}

/// Frobenius' formula with `S(n, k)` from the triangle and from k-Young
/// tableaux of shape `(k, (1^(n-k)))`; returns `(triangle form, tableau form)`.
pub fn frobenius_forms(n: u32) -> Result<(UniPoly, UniPoly)> {
    let triangle = frobenius_sum(n, |k| Ok(oracles::stirling2(n as usize, k as usize)))?;
    let tableau = frobenius_sum(n, |k| {
        let t = TypeKMu::new(n, k, Partition::new(vec![1; (n - k) as usize]))?;
        crate::operator::p_value(&t, crate::operator::PMethod::Tableau)
    })?;
    Ok((triangle, tableau))
}

pub fn frobenius_check(n: u32) -> Result<bool> {
    let (a, b) = frobenius_forms(n)?;
    let target = eulerian(n);
    Ok(a == target && b == target)
}
