use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::TruncSeries;
use crate::{Error, Result};

/// Exponent data of one monomial `c_0^{a_0} c_1^{a_1} ... (f_k)`.
///
/// `c` lists `(derivative order, multiplicity)` pairs with strictly
/// increasing orders and positive multiplicities. `f` is the derivative order
/// of the single `f` factor, if any.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonomialKey {
    c: Vec<(u32, u32)>,
    f: Option<u32>,
}

impl MonomialKey {
    pub fn new(c_exponents: impl IntoIterator<Item = (u32, u32)>, f: Option<u32>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (order, mult) in c_exponents {
            *map.entry(order).or_default() += mult;
        }
        MonomialKey {
            c: map.into_iter().filter(|&(_, m)| m > 0).collect(),
            f,
        }
    }

    pub fn c_exponents(&self) -> &[(u32, u32)] {
        &self.c
    }

    pub fn c_exponent(&self, order: u32) -> u32 {
        self.c
            .iter()
            .find(|&&(o, _)| o == order)
            .map_or(0, |&(_, m)| m)
    }

    pub fn f_index(&self) -> Option<u32> {
        self.f
    }

    /// Total number of `c` factors, `sum a_i`.
    pub fn c_degree(&self) -> u32 {
        self.c.iter().map(|&(_, m)| m).sum()
    }

    /// Total derivative weight of the `c` factors, `sum i * a_i`.
    pub fn c_weight(&self) -> u32 {
        self.c.iter().map(|&(o, m)| o * m).sum()
    }

    /// The partition formed by the derivative orders of `c_1, c_2, ...`
    /// (so `c^3 c1 c2^2` gives `(2, 2, 1)`).
    pub fn derivative_partition(&self) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .c
            .iter()
            .filter(|&&(o, _)| o > 0)
            .flat_map(|&(o, m)| std::iter::repeat_n(o, m as usize))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        let f = match (self.f, other.f) {
            (Some(_), Some(_)) => return None,
            (a, b) => a.or(b),
        };
        Some(MonomialKey::new(
            self.c.iter().chain(&other.c).copied(),
            f,
        ))
    }

    /// Order used when printing: grouped by `f`, then by derivative
    /// partition in increasing lexicographic order, then by power of `c`.
    fn display_cmp(&self, other: &Self) -> Ordering {
        self.f
            .cmp(&other.f)
            .then_with(|| self.derivative_partition().cmp(&other.derivative_partition()))
            .then_with(|| self.c_exponent(0).cmp(&other.c_exponent(0)))
            .then_with(|| self.cmp(other))
    }

    fn render_factors(&self, latex: bool) -> Vec<String> {
        self.c
            .iter()
            .map(|&(o, m)| {
                let base = match (o, latex) {
                    (0, _) => "c".to_string(),
                    (o, false) => format!("c{o}"),
                    (o, true) => format!("c_{}", brace(o)),
                };
                match (m, latex) {
                    (1, _) => base,
                    (m, false) => format!("{base}^{m}"),
                    (m, true) => format!("{base}^{}", brace(m)),
                }
            })
            .collect()
    }
}

fn brace(v: u32) -> String {
    if v < 10 {
        v.to_string()
    } else {
        format!("{{{v}}}")
    }
}

/// One term of a [`DiffPolynomial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    pub coeff: BigInt,
    pub key: MonomialKey,
}

/// Integer combination of monomials `c^{a_0} c_1^{a_1} ... c_m^{a_m} f_k`.
///
/// Here `c_i = D^i c` and `f_k = D^k f`. A monomial may also lack the `f`
/// factor, which is how the coefficient slices `A_{n,k}` are represented.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffPolynomial {
    terms: BTreeMap<MonomialKey, BigInt>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), MonomialKey::default())
    }

    pub fn term(coeff: BigInt, key: MonomialKey) -> Self {
        let mut p = Self::zero();
        p.add_term(key, coeff);
        p
    }

    /// `f_k`
    pub fn f(k: u32) -> Self {
        Self::term(BigInt::one(), MonomialKey::new([], Some(k)))
    }

    /// `c_i`
    pub fn c(i: u32) -> Self {
        Self::term(BigInt::one(), MonomialKey::new([(i, 1)], None))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &MonomialKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = (&MonomialKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = DiffMonomial> + '_ {
        self.terms.iter().map(|(k, c)| DiffMonomial {
            coeff: c.clone(),
            key: k.clone(),
        })
    }

    pub fn add_term(&mut self, key: MonomialKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product; `None` if some pair of terms would carry two `f` factors.
    pub fn try_mul(&self, rhs: &Self) -> Option<Self> {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.mul(kb)?, ca * cb);
            }
        }
        Some(out)
    }

    /// Multiplies by `c_i`.
    pub fn mul_c(&self, i: u32) -> Self {
        DiffPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    (
                        MonomialKey::new(k.c.iter().copied().chain([(i, 1)]), k.f),
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    /// `D` acting by Leibniz: `D c_i = c_{i+1}`, `D f_k = f_{k+1}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (key, coeff) in &self.terms {
            for (idx, &(order, mult)) in key.c.iter().enumerate() {
                let mut c = key.c.clone();
                c[idx].1 -= 1;
                c.push((order + 1, 1));
                out.add_term(MonomialKey::new(c, key.f), coeff * mult);
            }
            if let Some(k) = key.f {
                out.add_term(MonomialKey::new(key.c.iter().copied(), Some(k + 1)), coeff.clone());
            }
        }
        out
    }

    /// `c * D(self)`.
    pub fn apply_cd(&self) -> Self {
        self.derivative().mul_c(0)
    }

    /// The coefficient of `f_k`, as a polynomial in the `c_i` alone.
    pub fn slice(&self, k: u32) -> Self {
        DiffPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.f == Some(k))
                .map(|(key, v)| (MonomialKey::new(key.c.iter().copied(), None), v.clone()))
                .collect(),
        }
    }

    /// Attaches `f_k` to every term. Terms that already carry an `f` factor
    /// are rejected.
    pub fn with_f(&self, k: u32) -> Self {
        self.try_mul(&Self::f(k))
            .expect("with_f applied to a polynomial that already has f factors")
    }

    /// Distinct `f` indices present, ascending.
    pub fn f_indices(&self) -> Vec<Option<u32>> {
        let mut v: Vec<Option<u32>> = self.terms.keys().map(|k| k.f).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }

    /// Sum of the integer coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates under `c_i -> c_family(i)` and `f_k -> f_family(k)`; terms
    /// without an `f` factor are taken as is.
    pub fn substitute<C, F>(&self, order: usize, c_family: C, f_family: F) -> Result<TruncSeries>
    where
        C: Fn(u32) -> Option<TruncSeries>,
        F: Fn(u32) -> Option<TruncSeries>,
    {
        let fetch = |s: Option<TruncSeries>, what: &str, i: u32| -> Result<TruncSeries> {
            let s = s.ok_or_else(|| Error::InvalidInput(format!("no substitution for {what}{i}")))?;
            if s.order() < order {
                return Err(Error::OrderMismatch(s.order(), order));
            }
            Ok(s.truncate(order))
        };
        let mut c_cache: BTreeMap<u32, TruncSeries> = BTreeMap::new();
        let mut total = TruncSeries::zero(order);
        for (key, coeff) in &self.terms {
            let mut acc = TruncSeries::one(order);
            for &(i, mult) in &key.c {
                if let std::collections::btree_map::Entry::Vacant(e) = c_cache.entry(i) {
                    e.insert(fetch(c_family(i), "c", i)?);
                }
                let ci = &c_cache[&i];
                for _ in 0..mult {
                    acc = &acc * ci;
                }
            }
            if let Some(k) = key.f {
                acc = &acc * &fetch(f_family(k), "f", k)?;
            }
            total = &total + &acc.scale(&BigRational::from_integer(coeff.clone()));
        }
        Ok(total)
    }

    fn grouped(&self) -> Vec<(Option<u32>, Vec<(&MonomialKey, &BigInt)>)> {
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| a.0.display_cmp(b.0));
        let mut groups: Vec<(Option<u32>, Vec<(&MonomialKey, &BigInt)>)> = Vec::new();
        for (k, v) in sorted {
            match groups.last_mut() {
                Some((f, items)) if *f == k.f => items.push((k, v)),
                _ => groups.push((k.f, vec![(k, v)])),
            }
        }
        groups
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let groups = self.grouped();
        let mut out = String::new();
        for (gi, (f, items)) in groups.iter().enumerate() {
            let mut body = String::new();
            for (ti, (key, coeff)) in items.iter().enumerate() {
                let neg = coeff.is_negative();
                if ti == 0 {
                    if neg {
                        body.push('-');
                    }
                } else {
                    body.push_str(if neg { " - " } else { " + " });
                }
                let mag = coeff.abs();
                let factors = key.render_factors(latex);
                let sep = if latex { "" } else { " " };
                if factors.is_empty() {
                    body.push_str(&mag.to_string());
                } else {
                    if !mag.is_one() {
                        body.push_str(&mag.to_string());
                        body.push_str(sep);
                    }
                    body.push_str(&factors.join(" "));
                }
            }
            if gi > 0 {
                out.push_str(" + ");
            }
            match f {
                Some(k) if latex => out.push_str(&format!("({body}) \\mathbf{{f}}_{}", brace(*k))),
                Some(k) => out.push_str(&format!("({body}) f{k}")),
                None if groups.len() == 1 => out.push_str(&body),
                None => out.push_str(&format!("({body})")),
            }
        }
        out
    }

    /// LaTeX in the layout of the classical table of `(cD)^n f`, e.g.
    /// `(c c_1 + ...) \mathbf{f}_1 + (c^2) \mathbf{f}_2`.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl Add for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v);
        }
        out
    }
}

impl std::iter::Sum for DiffPolynomial {
    fn sum<I: Iterator<Item = DiffPolynomial>>(iter: I) -> Self {
        iter.fold(DiffPolynomial::zero(), |acc, p| &acc + &p)
    }
}

/// Grouped by `f`, e.g. `(c c1 + ...) f1 + (c^2) f2`.
impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Parses the text rendering back, and more generally any sum of products of
/// integers, `c`, `cN`, `f`, `fN`, parentheses and `^` powers. Juxtaposition
/// and `*` both multiply.
impl FromStr for DiffPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TextParser { src: s.as_bytes(), pos: 0 };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected a number"))
    }

    fn sum(&mut self) -> Result<DiffPolynomial> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.scale(&BigInt::from(-1));
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<DiffPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b'(' | b'c' | b'f' | b'0'..=b'9') => {}
                _ => return Ok(acc),
            }
            let rhs = self.power()?;
            acc = acc
                .try_mul(&rhs)
                .ok_or_else(|| self.error("a monomial may carry at most one f factor"))?;
        }
    }

    fn power(&mut self) -> Result<DiffPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let mut acc = DiffPolynomial::one();
            for _ in 0..e {
                acc = acc
                    .try_mul(&base)
                    .ok_or_else(|| self.error("f factors cannot be raised to a power"))?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffPolynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let v = self.number()?;
                Ok(DiffPolynomial::one().scale(&BigInt::from(v)))
            }
            Some(ch @ (b'c' | b'f')) => {
                self.pos += 1;
                let idx = if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    u32::try_from(self.number()?).map_err(|_| self.error("index too large"))?
                } else {
                    0
                };
                Ok(if ch == b'c' {
                    DiffPolynomial::c(idx)
                } else {
                    DiffPolynomial::f(idx)
                })
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
