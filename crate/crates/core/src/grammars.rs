//! Context-free grammars in the sense of Chen: a rule `a -> f(a, b, ...)` for
//! every letter, extended to the unique derivation `D_G` of the polynomial
//! ring over the alphabet.
//!
//! Grammars and polynomials are read from a small text syntax, documented in
//! `docs/grammar.md`:
//!
//! ```text
//! x -> x*y; y -> y
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::{rat_int, UniPoly};
use crate::combinat::types_of;
use crate::tableaux::{g_index_k, ktableaux_of};
use crate::{Error, Result};

/// An interned letter name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        static POOL: OnceLock<Mutex<BTreeSet<Arc<str>>>> = OnceLock::new();
        let mut pool = POOL.get_or_init(Default::default).lock().unwrap();
        if let Some(s) = pool.get(name) {
            return Symbol(s.clone());
        }
        let s: Arc<str> = Arc::from(name);
        pool.insert(s.clone());
        Symbol(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Exponent map of a monomial; absent letters have exponent 0.
pub type Monomial = BTreeMap<Symbol, u32>;

/// Polynomial in finitely many letters with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut m = Monomial::new();
        m.insert(Symbol::new(name), 1);
        let mut p = Self::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn letters(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let m: Monomial = m.into_iter().filter(|&(_, e)| e > 0).collect();
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces `letter` by 1.
    pub fn set_to_one(&self, letter: &str) -> Self {
        let sym = Symbol::new(letter);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.remove(&sym);
            out.add_term(m, c.clone());
        }
        out
    }

    /// The polynomial as a univariate one in `letter`; `None` if any other
    /// letter occurs.
    pub fn to_unipoly(&self, letter: &str) -> Option<UniPoly> {
        let sym = Symbol::new(letter);
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            if m.keys().any(|s| *s != sym) {
                return None;
            }
            let e = m.get(&sym).copied().unwrap_or(0) as usize;
            out = &out + &UniPoly::monomial(rat_int(c.clone()), e);
        }
        Some(out)
    }

    fn display_order(&self) -> Vec<(&Monomial, &BigInt)> {
        let letters: Vec<Symbol> = self.letters().into_iter().collect();
        let exps = |m: &Monomial| -> Vec<u32> {
            letters.iter().map(|s| m.get(s).copied().unwrap_or(0)).collect()
        };
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| exps(b.0).cmp(&exps(a.0)));
        v
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (s, e) in mb {
                    *m.entry(s.clone()).or_default() += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> Self {
        iter.fold(MPoly::zero(), |acc, p| &acc + &p)
    }
}

/// E.g. `x^3*y + 4*x^2*y^2 + x*y^3`; exponent vectors in decreasing
/// lexicographic order over the sorted letters.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || m.is_empty() {
                factors.push(mag.to_string());
            }
            for (s, e) in m {
                factors.push(if *e == 1 { s.to_string() } else { format!("{s}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = p.expr()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

/// A rule for every letter of the alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    rules: BTreeMap<Symbol, MPoly>,
}

impl Grammar {
    /// Every letter used on a right-hand side must have a rule.
    pub fn new(rules: BTreeMap<Symbol, MPoly>) -> Result<Self> {
        for rhs in rules.values() {
            if let Some(s) = rhs.letters().into_iter().find(|s| !rules.contains_key(s)) {
                return Err(Error::UnknownLetter(s.to_string()));
            }
        }
        Ok(Grammar { rules })
    }

    pub fn alphabet(&self) -> impl Iterator<Item = &Symbol> {
        self.rules.keys()
    }

    pub fn rule(&self, letter: &str) -> Option<&MPoly> {
        self.rules.get(&Symbol::new(letter))
    }

    /// `x -> y, y -> y`
    pub fn dumont() -> Grammar {
        "x -> y; y -> y".parse().expect("built-in grammar")
    }

    /// `x -> xy, y -> x`
    pub fn andre_g1() -> Grammar {
        "x -> x*y; y -> x".parse().expect("built-in grammar")
    }

    /// `x -> y, y -> 1`
    pub fn andre_g2() -> Grammar {
        "x -> y; y -> 1".parse().expect("built-in grammar")
    }

    /// `D_G(p)`.
    pub fn derive(&self, p: &MPoly) -> Result<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &p.terms {
            for (s, &e) in m {
                let rhs = self
                    .rules
                    .get(s)
                    .ok_or_else(|| Error::UnknownLetter(s.to_string()))?;
                let mut rest = m.clone();
                *rest.get_mut(s).unwrap() -= 1;
                let mut lowered = MPoly::zero();
                lowered.add_term(rest, c * e);
                out = &out + &(&lowered * rhs);
            }
        }
        Ok(out)
    }

    /// `D_G^n(p)`.
    pub fn derive_n(&self, p: &MPoly, n: u32) -> Result<MPoly> {
        (0..n).try_fold(p.clone(), |acc, _| self.derive(&acc))
    }

    /// `(u D_G)^n(p)` by direct iteration.
    pub fn u_power(&self, u: &MPoly, p: &MPoly, n: u32) -> Result<MPoly> {
        (0..n).try_fold(p.clone(), |acc, _| Ok(u * &self.derive(&acc)?))
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = self.rules.iter().map(|(s, p)| format!("{s} -> {p}")).collect();
        f.write_str(&rules.join("; "))
    }
}

impl FromStr for Grammar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let mut rules = BTreeMap::new();
        loop {
            p.skip_ws();
            if p.at_end() {
                break;
            }
            let at = p.pos;
            let name = p.ident().ok_or_else(|| p.error("expected a letter"))?;
            p.expect("->")?;
            let rhs = p.expr()?;
            if rules.insert(Symbol::new(&name), rhs).is_some() {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("duplicate rule for `{name}`"),
                });
            }
            p.skip_ws();
            if !p.eat(';') && !p.at_end() {
                return Err(p.error("expected `;` between rules"));
            }
        }
        if rules.is_empty() {
            return Err(p.error("a grammar needs at least one rule"));
        }
        Grammar::new(rules)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let first = self.peek()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let name = self.rest()[..len].to_string();
        self.pos += len;
        Some(name)
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        let v = self.rest()[..len].parse().ok()?;
        self.pos += len;
        Some(v)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.rest_starts_minus() {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// A `-` that is not the start of `->`.
    fn rest_starts_minus(&mut self) -> bool {
        self.skip_ws();
        self.rest().starts_with('-') && !self.rest().starts_with("->")
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
                continue;
            }
            self.skip_ws();
            let starts_factor = self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '(');
            if starts_factor {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self
                .integer()
                .ok_or_else(|| self.error("expected an exponent"))?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.rest_starts_minus() {
            self.pos += 1;
            return Ok(self.unary()?.scale(&BigInt::from(-1)));
        }
        self.power()
    }

    fn atom(&mut self) -> Result<MPoly> {
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        if let Some(v) = self.integer() {
            return Ok(MPoly::constant(v));
        }
        if let Some(name) = self.ident() {
            return Ok(MPoly::var(&name));
        }
        Err(self.error("expected a letter, an integer or `(`"))
    }
}

/// `(x D_G)^n (y)` for the grammar `x -> y, y -> y`.
pub fn dumont_eulerian(n: u32) -> MPoly {
    Grammar::dumont()
        .u_power(&MPoly::var("x"), &MPoly::var("y"), n)
        .expect("closed grammar")
}

/// `(D_{G1}^n(x), (x D_{G2})^n(x))` for `G1 = {x -> xy, y -> x}` and
/// `G2 = {x -> y, y -> 1}`.
pub fn andre_grammars(n: u32) -> (MPoly, MPoly) {
    let x = MPoly::var("x");
    let g1 = Grammar::andre_g1().derive_n(&x, n).expect("closed grammar");
    let g2 = Grammar::andre_g2().u_power(&x, &x, n).expect("closed grammar");
    (g1, g2)
}

/// `sum over types (k, mu) of (sum_Z G_Z) u u_{mu_1} ... u_{mu_{n-1}} D_G^k(target)`
/// with `u_i = D_G^i(u)`.
pub fn u_dg_expansion(g: &Grammar, u: &MPoly, target: &MPoly, n: u32) -> Result<MPoly> {
    let mut u_derivs = vec![u.clone()];
    let mut t_derivs = vec![target.clone()];
    for _ in 0..n {
        u_derivs.push(g.derive(u_derivs.last().unwrap())?);
        t_derivs.push(g.derive(t_derivs.last().unwrap())?);
    }
    let mut out = MPoly::zero();
    for t in types_of(n) {
        let weight: BigInt = ktableaux_of(&t).iter().map(|z| g_index_k(z).product()).sum();
        let mut term = (u * &t_derivs[t.k() as usize]).scale(&weight);
        for m in t.padded_mu() {
            term = &term * &u_derivs[m as usize];
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Compares [`u_dg_expansion`] with `n` direct applications of `u D_G`.
pub fn u_dg_expansion_check(g: &Grammar, u: &MPoly, target: &MPoly, n: u32) -> Result<bool> {
    Ok(u_dg_expansion(g, u, target, n)? == g.u_power(u, target, n)?)
}

/// A grammar on 1 to 3 of the letters `x, y, z` whose rules have at most
/// three terms of degree at most 2 and coefficients in `-2..=3`.
pub fn random_grammar<R: Rng + ?Sized>(rng: &mut R) -> Grammar {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    let size = rng.random_range(1..=3);
    let letters = &NAMES[..size];
    let mut rules = BTreeMap::new();
    for name in letters {
        let mut rhs = MPoly::zero();
        for _ in 0..rng.random_range(1..=3) {
            let mut m = Monomial::new();
            for _ in 0..rng.random_range(0..=2) {
                let l = letters[rng.random_range(0..size)];
                *m.entry(Symbol::new(l)).or_default() += 1;
            }
            let c = rng.random_range(-2..=3);
            rhs.add_term(m, BigInt::from(c));
        }
        rules.insert(Symbol::new(name), rhs);
    }
    Grammar::new(rules).expect("letters drawn from the alphabet")
}

/// A random polynomial over the grammar's alphabet with small coefficients.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, g: &Grammar) -> MPoly {
    let letters: Vec<Symbol> = g.alphabet().cloned().collect();
    let mut p = MPoly::zero();
    for _ in 0..rng.random_range(1..=3) {
        let mut m = Monomial::new();
        for _ in 0..rng.random_range(0..=2) {
            let l = &letters[rng.random_range(0..letters.len())];
            *m.entry(l.clone()).or_default() += 1;
        }
        p.add_term(m, BigInt::from(rng.random_range(-3..=3)));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn worked_derivative() {
        let g: Grammar = "x -> x*y; y -> y".parse().unwrap();
        let d1 = g.derive(&p("x")).unwrap();
        assert_eq!(d1, p("x*y"));
        assert_eq!(g.derive(&d1).unwrap(), p("x*y^2 + x*y"));
        assert!(g.derive(&p("7")).unwrap().is_zero());
    }

    #[test]
    fn parser_forms() {
        assert_eq!(p("2x y - (x + 1)^2"), p("2*x*y - x^2 - 2*x - 1"));
        assert_eq!(p("-x"), MPoly::var("x").scale(&BigInt::from(-1)));
        assert_eq!(p("-x^2"), p("0 - x*x"));
        assert_eq!(p("3 - -x"), p("3 + x"));
        assert!(matches!("x +".parse::<MPoly>(), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!("x ^ y".parse::<MPoly>(), Err(Error::Parse { .. })));
        assert!(matches!("x -> y; y".parse::<Grammar>(), Err(Error::Parse { .. })));
        assert!(matches!("x -> y".parse::<Grammar>(), Err(Error::UnknownLetter(s)) if s == "y"));
        assert!(matches!("x -> x; x -> 1".parse::<Grammar>(), Err(Error::Parse { offset: 8, .. })));
    }

    #[test]
    fn display_round_trip() {
        let d = dumont_eulerian(3);
        assert_eq!(d.to_string(), "x^3*y + 4*x^2*y^2 + x*y^3");
        assert_eq!(p(&d.to_string()), d);
        let g = Grammar::andre_g1();
        assert_eq!(g.to_string(), "x -> x*y; y -> x");
        assert_eq!(g.to_string().parse::<Grammar>().unwrap(), g);
        assert_eq!(p("-2*x + 1").to_string(), "-2*x + 1");
    }

    #[test]
    fn unknown_letter() {
        let g = Grammar::dumont();
        assert_eq!(g.derive(&p("z")), Err(Error::UnknownLetter("z".into())));
    }

    #[test]
    fn small_grammar_values() {
        assert_eq!(dumont_eulerian(1), p("x*y"));
        let (g1, g2) = andre_grammars(3);
        assert_eq!(g1, p("x*y^3 + 4*x^2*y"));
        assert_eq!(g2, g1);
        assert_eq!(andre_grammars(1).0, p("x*y"));
    }

    #[test]
    fn structural_expansion() {
        for n in 1..=6 {
            assert!(u_dg_expansion_check(&Grammar::dumont(), &p("x"), &p("y"), n).unwrap());
            assert!(u_dg_expansion_check(&Grammar::andre_g2(), &p("x"), &p("x"), n).unwrap());
        }
    }

    #[test]
    fn random_grammars_satisfy_leibniz() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let g = random_grammar(&mut rng);
            let a = random_poly(&mut rng, &g);
            let b = random_poly(&mut rng, &g);
            let lhs = g.derive(&(&a * &b)).unwrap();
            let rhs = &(&g.derive(&a).unwrap() * &b) + &(&a * &g.derive(&b).unwrap());
            assert_eq!(lhs, rhs, "{g}");
            assert_eq!(g.to_string().parse::<Grammar>().unwrap(), g);
        }
    }
}
