//! The expansion `(cD)^n f = sum_k A_{n,k} f_k`, built four independent ways:
//!
//! * [`expand_recurrence`]: `A_{n+1,k} = c A_{n,k-1} + c D A_{n,k}`.
//! * [`expand_inversion`]: one monomial `c c_{|e|_1} ... c_{|e|_{n-1}} f_{|e|_0}`
//!   per inversion sequence `e`.
//! * [`comtet_ank`]: Comtet's closed sum over admissible `(k_1, ..., k_{n-1})`.
//! * [`expand_types`]: `sum p_{k,mu} c c_{mu_1} ... c_{mu_{n-1}} f_k` over types.
//!
//! `p_{k,mu}` itself comes three ways ([`PMethod`]): a recurrence on types
//! (memoized in a [`PTable`]), a sum of g-indexes over k-Young tableaux, and
//! direct enumeration of inversion sequences.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{factorial, rat_int, DiffPolynomial, MonomialKey, UniPoly};
use crate::combinat::{inv_seqs, type_of_seq, types_of, Partition, TypeKMu};
use crate::error::check_cap;
use crate::tableaux::{g_index_k, ktableaux_of};
use crate::{Error, Result};

/// Largest `n` for which `p_{k,mu}` may be found by enumerating `I_n`.
pub const ENUMERATION_CAP: usize = 10;

/// `(cD)^n f` as a differential polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    n: u32,
    body: DiffPolynomial,
}

impl Expansion {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn body(&self) -> &DiffPolynomial {
        &self.body
    }

    /// `A_{n,k}`.
    pub fn slice(&self, k: u32) -> DiffPolynomial {
        self.body.slice(k)
    }

    /// Every monomial has `sum a_i = n` and `sum i a_i + k = n`.
    pub fn is_homogeneous(&self) -> bool {
        self.body.terms().all(|(key, _)| {
            key.c_degree() == self.n
                && key.f_index().is_some_and(|k| key.c_weight() + k == self.n)
        })
    }

    pub fn to_latex(&self) -> String {
        self.body.to_latex()
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("expansion order must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn assemble(n: u32, slices: &[DiffPolynomial]) -> Expansion {
    let body = slices
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(k, s)| s.with_f(k as u32))
        .sum();
    Expansion { n, body }
}

pub fn expand_recurrence(n: u32) -> Result<Expansion> {
    check_order(n)?;
    // slices[k] = A_{m,k}, k = 0..=m (index 0 stays empty)
    let mut slices = vec![DiffPolynomial::zero(), DiffPolynomial::c(0)];
    for m in 1..n {
        let mut next = vec![DiffPolynomial::zero(); m as usize + 2];
        for k in 1..=m as usize + 1 {
            let mut a = slices[k - 1].mul_c(0);
            if let Some(s) = slices.get(k) {
                a = &a + &s.apply_cd();
            }
            next[k] = a;
        }
        slices = next;
    }
    Ok(assemble(n, &slices))
}

/// `(cD)^n f` by applying `cD` to `f` directly, `n` times.
pub fn expand_direct(n: u32) -> Result<Expansion> {
    check_order(n)?;
    let mut body = DiffPolynomial::f(0);
    for _ in 0..n {
        body = body.apply_cd();
    }
    Ok(Expansion { n, body })
}

/// `phi(e) = c c_{|e|_1} ... c_{|e|_{n-1}} f_{|e|_0}` as a monomial key.
pub fn phi(e: &crate::combinat::InvSeq) -> MonomialKey {
    let counts = e.occurrence_vector();
    MonomialKey::new(
        std::iter::once((0, 1)).chain(counts[1..].iter().map(|&m| (m, 1))),
        Some(counts[0]),
    )
}

pub fn expand_inversion(n: u32) -> Result<Expansion> {
    check_order(n)?;
    let mut body = DiffPolynomial::zero();
    for e in inv_seqs(n as usize) {
        body.add_term(phi(&e), BigInt::one());
    }
    Ok(Expansion { n, body })
}

/// `A_{n,k}` by Comtet's sum. Each term
/// `(2-K_1)(3-K_2)...(n-K_{n-1}) / (k! k_1! ... k_{n-1}!)` is a product of
/// binomials, so it is computed as an exact integer quotient.
pub fn comtet_ank(n: u32, k: u32) -> Result<DiffPolynomial> {
    check_order(n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let mut out = DiffPolynomial::zero();
    let mut seq = Vec::with_capacity(n as usize);
    comtet_walk(n, k, 1, 0, &mut seq, &mut out);
    Ok(out)
}

fn comtet_walk(n: u32, k: u32, j: u32, prefix: u32, seq: &mut Vec<u32>, out: &mut DiffPolynomial) {
    let target = n - k;
    if j == n {
        if prefix != target {
            return;
        }
        let mut numer = BigInt::one();
        let mut running = 0;
        for (i, &kj) in seq.iter().enumerate() {
            running += kj;
            numer *= i as u32 + 2 - running;
        }
        let denom = seq
            .iter()
            .fold(factorial(k as u64), |acc, &kj| acc * factorial(kj as u64));
        let (q, r) = numer.div_rem(&denom);
        assert!(r.is_zero(), "Comtet term is not integral");
        let key = MonomialKey::new(
            std::iter::once((0, 1)).chain(seq.iter().map(|&kj| (kj, 1))),
            None,
        );
        out.add_term(key, q);
        return;
    }
    let hi = (j - prefix).min(target - prefix);
    for kj in 0..=hi {
        seq.push(kj);
        comtet_walk(n, k, j + 1, prefix + kj, seq, out);
        seq.pop();
    }
}

pub fn expand_comtet(n: u32) -> Result<Expansion> {
    check_order(n)?;
    let mut slices = vec![DiffPolynomial::zero()];
    for k in 1..=n {
        slices.push(comtet_ank(n, k)?);
    }
    Ok(assemble(n, &slices))
}

/// The monomial `c c_{mu_1} ... c_{mu_{n-1}} f_k` of a type (zero slots give `c`).
pub fn type_monomial(t: &TypeKMu) -> MonomialKey {
    MonomialKey::new(
        std::iter::once((0, 1)).chain(t.padded_mu().into_iter().map(|m| (m, 1))),
        Some(t.k()),
    )
}

pub fn expand_types(n: u32, table: &PTable) -> Result<Expansion> {
    check_order(n)?;
    let mut body = DiffPolynomial::zero();
    for t in types_of(n) {
        body.add_term(type_monomial(&t), table.p(&t));
    }
    Ok(Expansion { n, body })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PMethod {
    /// Recurrence on types, memoized.
    Recurrence,
    /// `sum_Z G_Z` over k-Young tableaux of the type.
    Tableau,
    /// Count of inversion sequences of the type.
    Enumeration,
}

/// Memo of `p_{k,mu}` keyed by `(k, mu)` with `mu` unpadded; `n = k + |mu|`.
///
/// Lookups and inserts take a short lock each and the recursion runs
/// unlocked, so concurrent callers may compute the same entry twice; the
/// first insert wins and every value is the same anyway.
#[derive(Debug, Default)]
pub struct PTable {
    memo: Mutex<HashMap<(u32, Vec<u32>), BigInt>>,
}

impl PTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table used by [`p_value`].
    pub fn global() -> &'static PTable {
        static TABLE: OnceLock<PTable> = OnceLock::new();
        TABLE.get_or_init(PTable::new)
    }

    pub fn len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of all entries, sorted by `(k, mu)`.
    pub fn entries(&self) -> Vec<(u32, Vec<u32>, BigInt)> {
        let mut v: Vec<_> = self
            .memo
            .lock()
            .unwrap()
            .iter()
            .map(|((k, mu), p)| (*k, mu.clone(), p.clone()))
            .collect();
        v.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        v
    }

    /// Seeds an entry, e.g. from a cache file. Existing entries are kept.
    pub fn insert(&self, k: u32, mu: Vec<u32>, value: BigInt) {
        let mu = Partition::new(mu).parts().to_vec();
        self.memo.lock().unwrap().entry((k, mu)).or_insert(value);
    }

    pub fn p(&self, t: &TypeKMu) -> BigInt {
        self.p_padded(t.k(), &t.padded_mu())
    }

    /// `p_{k,mu}` with `mu` padded to `n - 1` slots, weakly decreasing.
    fn p_padded(&self, k: u32, mu: &[u32]) -> BigInt {
        if k == 0 {
            return BigInt::zero();
        }
        if mu.is_empty() {
            // n = 1: only (1, empty)
            return if k == 1 { BigInt::one() } else { BigInt::zero() };
        }
        let key = (k, mu.iter().copied().filter(|&m| m > 0).collect::<Vec<_>>());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut distinct: Vec<u32> = mu.iter().copied().filter(|&m| m > 0).collect();
        distinct.dedup();
        for j in distinct {
            let weight = mu.iter().filter(|&&m| m == j - 1).count() as u32 + 1;
            let mut next = mu.to_vec();
            let last = next.iter().rposition(|&m| m == j).unwrap();
            next[last] = j - 1;
            next.sort_unstable_by(|a, b| b.cmp(a));
            next.pop();
            total += self.p_padded(k, &next) * weight;
        }
        if mu.last() == Some(&0) {
            total += self.p_padded(k - 1, &mu[..mu.len() - 1]);
        }
        self.memo
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(total)
            .clone()
    }
}

pub fn p_value(t: &TypeKMu, method: PMethod) -> Result<BigInt> {
    match method {
        PMethod::Recurrence => Ok(PTable::global().p(t)),
        PMethod::Tableau => Ok(ktableaux_of(t).iter().map(|z| g_index_k(z).product()).sum()),
        PMethod::Enumeration => {
            let n = t.n() as usize;
            check_cap("inversion sequence enumeration", n, ENUMERATION_CAP)?;
            Ok(BigInt::from(
                inv_seqs(n).filter(|e| type_of_seq(e) == *t).count(),
            ))
        }
    }
}

/// `a(n, lambda)`: the coefficient of `c^{n-l} c_lambda f_{n-|lambda|}` in `(cD)^n f`.
pub fn a_coefficient(n: u32, lambda: &Partition) -> Result<BigInt> {
    check_order(n)?;
    if lambda.weight() >= n {
        return Err(Error::InvalidInput(format!(
            "need |lambda| <= n - 1, got |lambda| = {} for n = {n}",
            lambda.weight()
        )));
    }
    Ok(expand_recurrence(n)?.body().coeff(&a_key(n, lambda)))
}

fn a_key(n: u32, lambda: &Partition) -> MonomialKey {
    MonomialKey::new(
        std::iter::once((0, n - lambda.len() as u32)).chain(lambda.parts().iter().map(|&p| (p, 1))),
        Some(n - lambda.weight()),
    )
}

/// Aggregates of `a(n, lambda)`, each indexed by `k` (entry 0 unused):
/// sums over `lambda |- n-k`, the single value at `lambda = 1^{n-k}`, and sums
/// over `l(lambda) = n-k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASums {
    pub by_weight: Vec<BigInt>,
    pub all_ones: Vec<BigInt>,
    pub by_length: Vec<BigInt>,
}

pub fn a_sums(n: u32) -> Result<ASums> {
    let e = expand_recurrence(n)?;
    let size = n as usize + 1;
    let mut out = ASums {
        by_weight: vec![BigInt::zero(); size],
        all_ones: vec![BigInt::zero(); size],
        by_length: vec![BigInt::zero(); size],
    };
    for (key, coeff) in e.body().terms() {
        let lambda = key.derivative_partition();
        let k = key.f_index().expect("expansion terms carry f") as usize;
        out.by_weight[k] += coeff;
        if lambda.iter().all(|&p| p == 1) {
            out.all_ones[k] += coeff;
        }
        out.by_length[size - 1 - lambda.len()] += coeff;
    }
    Ok(out)
}

/// `(sum over types and k-Young tableaux of G_Z x^k, x(x+1)...(x+n-1))`.
pub fn rising_factorial_check(n: u32) -> Result<(UniPoly, UniPoly)> {
    check_order(n)?;
    let mut tableau_side = UniPoly::zero();
    for t in types_of(n) {
        let total: BigInt = ktableaux_of(&t).iter().map(|z| g_index_k(z).product()).sum();
        tableau_side = &tableau_side + &UniPoly::monomial(rat_int(total), t.k() as usize);
    }
    let product = (0..n).fold(UniPoly::one(), |acc, i| {
        &acc * &UniPoly::linear(rat_int(i), BigRational::one())
    });
    Ok((tableau_side, product))
}

/// `sum_Z G_Z` over k-Young tableaux of type `(k, (1^{n-k}))`.
pub fn stirling2_via_tableaux(n: u32, k: u32) -> Result<BigInt> {
    let t = TypeKMu::new(n, k, Partition::new(vec![1; (n - k.min(n)) as usize]))?;
    p_value(&t, PMethod::Tableau)
}

/// Coefficients of `f_1, ..., f_n` in `(xD)^n f`, read off the expansion with
/// `c = x` (so `c_1 = 1` and `c_i = 0` beyond). Entry 0 is unused.
pub fn scherk_coefficients(n: u32) -> Result<Vec<UniPoly>> {
    let e = expand_recurrence(n)?;
    let mut out = vec![UniPoly::zero(); n as usize + 1];
    for (key, coeff) in e.body().terms() {
        if key.c_exponents().iter().any(|&(o, _)| o > 1) {
            continue;
        }
        let k = key.f_index().unwrap() as usize;
        out[k] = &out[k] + &UniPoly::monomial(rat_int(coeff.clone()), key.c_exponent(0) as usize);
    }
    Ok(out)
}

/// `F_{m+1} = (m + m alpha + beta) q F_m + q (1 - x) F_m'` with
/// `q = a + b x + c x^2` and `F_0 = 1`.
pub fn general_fn(
    n: u32,
    alpha: &BigRational,
    beta: &BigRational,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> UniPoly {
    let q = UniPoly::new(vec![a.clone(), b.clone(), c.clone()]);
    let one_minus_x = UniPoly::from_ints([1, -1]);
    let mut f = UniPoly::one();
    for m in 0..n {
        let m = rat_int(m);
        let lead = &m + &m * alpha + beta;
        f = &(&q * &f).scale(&lead) + &(&(&q * &one_minus_x) * &f.derivative());
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn table1_row(n: u32) -> String {
        expand_recurrence(n).unwrap().to_string()
    }

    #[test]
    fn small_rows() {
        assert_eq!(table1_row(1), "(c) f1");
        assert_eq!(table1_row(2), "(c c1) f1 + (c^2) f2");
        assert_eq!(
            table1_row(3),
            "(c c1^2 + c^2 c2) f1 + (3 c^2 c1) f2 + (c^3) f3"
        );
    }

    #[test]
    fn five_row_slice() {
        let s = expand_recurrence(5).unwrap().slice(2);
        assert_eq!(s.to_string(), "15 c^2 c1^3 + 30 c^3 c1 c2 + 5 c^4 c3");
    }

    #[test]
    fn constructions_agree() {
        let table = PTable::new();
        for n in 1..=6 {
            let r = expand_recurrence(n).unwrap();
            assert!(r.is_homogeneous());
            assert_eq!(r, expand_direct(n).unwrap());
            assert_eq!(r, expand_inversion(n).unwrap());
            assert_eq!(r, expand_comtet(n).unwrap());
            assert_eq!(r, expand_types(n, &table).unwrap());
        }
    }

    #[test]
    fn phi_example() {
        let e = crate::combinat::InvSeq::new(vec![0, 0, 1, 0, 4, 2, 4, 0, 1]).unwrap();
        let key = phi(&e);
        assert_eq!(key.f_index(), Some(4));
        assert_eq!(key.c_exponents(), &[(0, 6), (1, 1), (2, 2)]);
    }

    #[test]
    fn comtet_slices() {
        assert_eq!(comtet_ank(2, 1).unwrap().to_string(), "c c1");
        assert_eq!(comtet_ank(4, 4).unwrap().to_string(), "c^4");
        assert_eq!(comtet_ank(4, 2).unwrap().to_string(), "7 c^2 c1^2 + 4 c^3 c2");
        assert!(comtet_ank(3, 4).is_err());
    }

    fn ty(k: u32, mu: &[u32]) -> TypeKMu {
        TypeKMu::from_k_mu(k, Partition::new(mu.to_vec())).unwrap()
    }

    #[test]
    fn p_values_three_ways() {
        let cases: [(u32, &[u32], i64); 6] = [
            (2, &[1], 3),
            (3, &[2, 1], 120),
            (3, &[1, 1, 1], 90),
            (2, &[2, 1, 1], 146),
            (3, &[2, 1, 1], 896),
            (1, &[1, 1, 1, 1], 1),
        ];
        for (k, mu, want) in cases {
            let t = ty(k, mu);
            for m in [PMethod::Recurrence, PMethod::Tableau, PMethod::Enumeration] {
                assert_eq!(p_value(&t, m).unwrap(), BigInt::from(want), "{t} {m:?}");
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let t = ty(11, &[]);
        assert!(matches!(
            p_value(&t, PMethod::Enumeration),
            Err(Error::SizeCap { .. })
        ));
        assert_eq!(p_value(&t, PMethod::Recurrence).unwrap(), BigInt::one());
    }

    #[test]
    fn table_seeding_and_snapshot() {
        let table = PTable::new();
        table.insert(2, vec![0, 1], BigInt::from(3));
        assert_eq!(table.entries(), vec![(2, vec![1], BigInt::from(3))]);
        assert_eq!(table.p(&ty(2, &[1])), BigInt::from(3));
    }

    #[test]
    fn a_coefficients() {
        assert_eq!(a_coefficient(4, &Partition::new(vec![1, 1])).unwrap(), BigInt::from(7));
        assert_eq!(a_coefficient(4, &Partition::new(vec![2])).unwrap(), BigInt::from(4));
        assert!(a_coefficient(3, &Partition::new(vec![3])).is_err());
    }

    #[test]
    fn rising_factorial() {
        let (t, p) = rising_factorial_check(4).unwrap();
        assert_eq!(p, UniPoly::from_ints([0, 6, 11, 6, 1]));
        assert_eq!(t, p);
        let (t1, p1) = rising_factorial_check(1).unwrap();
        assert_eq!(t1, UniPoly::x());
        assert_eq!(p1, UniPoly::x());
    }

    #[test]
    fn second_kind_from_tableaux() {
        assert_eq!(stirling2_via_tableaux(4, 2).unwrap(), BigInt::from(7));
        for n in 1..=7 {
            for k in 1..=n {
                assert_eq!(
                    stirling2_via_tableaux(n, k).unwrap(),
                    crate::oracles::stirling2(n as usize, k as usize)
                );
            }
        }
    }

    #[test]
    fn scherk() {
        for n in 1..=7u32 {
            let coeffs = scherk_coefficients(n).unwrap();
            for k in 1..=n as usize {
                let want = UniPoly::monomial(rat_int(crate::oracles::stirling2(n as usize, k)), k);
                assert_eq!(coeffs[k], want);
            }
        }
    }

    #[test]
    fn general_family() {
        let (zero, one) = (rat(0, 1), rat(1, 1));
        assert_eq!(general_fn(0, &zero, &one, &zero, &one, &zero), UniPoly::one());
        assert_eq!(
            general_fn(4, &zero, &one, &zero, &one, &zero),
            UniPoly::from_ints([0, 1, 11, 11, 1])
        );
        assert_eq!(
            general_fn(4, &one, &one, &zero, &one, &zero),
            UniPoly::from_ints([0, 1, 22, 58, 24])
        );
    }
}
