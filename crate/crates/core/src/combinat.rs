//! Partitions, types `(k, mu)`, inversion sequences and s-inversion sequences.
//!
//! Enumeration orders are fixed so that every listing built on top of them is
//! reproducible byte for byte:
//!
//! * [`partitions_of`] yields reverse-lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`;
//! * [`types_of`] yields `k` descending, then `mu` in reverse-lexicographic order;
//! * [`inv_seqs`] and [`s_inv_seqs`] yield lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use crate::algebra::UniPoly;
use crate::{Error, Result};

/// Integer partition with strictly positive, weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Accepts any order and drops zero parts.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Rejects parts that are not weakly decreasing or not positive.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts equal to `i` (`m_i`); `i = 0` always gives 0.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// Column lengths of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// `lambda! = lambda_1! lambda_2! ...`
    pub fn factorial_product(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|&p| crate::algebra::factorial(p as u64))
            .product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every partition of `n` exactly once, in reverse-lexicographic order.
pub fn partitions_of(n: u32) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Iterator returned by [`partitions_of`].
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // successor: strip trailing 1s, decrement the last part > 1, refill
        // greedily with parts no larger than it
        let mut succ = current.clone();
        let mut ones = 0u32;
        while succ.last() == Some(&1) {
            succ.pop();
            ones += 1;
        }
        if let Some(last) = succ.last_mut() {
            *last -= 1;
            let cap = *last;
            let mut rest = ones + 1;
            while rest > 0 {
                let part = rest.min(cap);
                succ.push(part);
                rest -= part;
            }
            self.next = Some(succ);
        }
        Some(Partition(current))
    }
}

/// A type `(k, mu)` of `n`: `k` in `1..=n` and `mu` a partition of `n - k`,
/// thought of as padded with zeros to `n - 1` slots.
///
/// Only the nonzero parts of `mu` are stored; the zero padding is implied by `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeKMu {
    n: u32,
    k: u32,
    mu: Partition,
}

impl TypeKMu {
    pub fn new(n: u32, k: u32, mu: Partition) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!("k = {k} must lie in 1..={n}")));
        }
        if k + mu.weight() != n {
            return Err(Error::InvalidInput(format!(
                "k + |mu| = {} + {} differs from n = {n}",
                k,
                mu.weight()
            )));
        }
        if mu.len() as u32 > n - 1 {
            return Err(Error::InvalidInput(format!(
                "mu = {mu} has more than n - 1 = {} parts",
                n - 1
            )));
        }
        Ok(TypeKMu { n, k, mu })
    }

    /// Same as [`TypeKMu::new`] with `n` inferred as `k + |mu|`.
    pub fn from_k_mu(k: u32, mu: Partition) -> Result<Self> {
        let n = k + mu.weight();
        Self::new(n, k, mu)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Number of zero slots, `|mu|_0 = (n - 1) - l(mu)`.
    pub fn zero_slots(&self) -> u32 {
        self.n - 1 - self.mu.len() as u32
    }

    /// `|mu|_j` counted over the `n - 1` padded slots.
    pub fn slot_multiplicity(&self, j: u32) -> u32 {
        if j == 0 {
            self.zero_slots()
        } else {
            self.mu.multiplicity(j) as u32
        }
    }

    /// `mu` padded with zeros to `n - 1` slots.
    pub fn padded_mu(&self) -> Vec<u32> {
        let mut v = self.mu.parts().to_vec();
        v.resize((self.n - 1) as usize, 0);
        v
    }
}

impl fmt::Display for TypeKMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.padded_mu().iter().map(u32::to_string).collect();
        write!(f, "({}, ({}))", self.k, parts.join(","))
    }
}

/// All types of `n`: `k` descending, `mu` in reverse-lexicographic order.
pub fn types_of(n: u32) -> impl Iterator<Item = TypeKMu> {
    (1..=n).rev().flat_map(move |k| {
        partitions_of(n - k).map(move |mu| TypeKMu { n, k, mu })
    })
}

/// Inversion sequence `(e_1, ..., e_n)` with `0 <= e_i < i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvSeq(Vec<u32>);

impl InvSeq {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some(i) = entries.iter().enumerate().position(|(i, &e)| e as usize > i) {
            return Err(Error::InvalidInput(format!(
                "entry e_{} = {} is not below {}",
                i + 1,
                entries[i],
                i + 1
            )));
        }
        Ok(InvSeq(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|e|_j`, the number of entries equal to `j`.
    pub fn occurrences(&self, j: u32) -> u32 {
        self.0.iter().filter(|&&e| e == j).count() as u32
    }

    /// The occurrence counts `|e|_0, ..., |e|_{n-1}`.
    pub fn occurrence_vector(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.0.len()];
        for &e in &self.0 {
            counts[e as usize] += 1;
        }
        counts
    }
}

/// Every inversion sequence of length `n` in lexicographic order.
pub fn inv_seqs(n: usize) -> impl Iterator<Item = InvSeq> {
    s_inv_seqs_raw((1..=n as u32).collect()).map(InvSeq)
}

/// The type `(|e|_0, mu(e))`, `mu(e)` being `|e|_1, ..., |e|_{n-1}` sorted.
pub fn type_of_seq(e: &InvSeq) -> TypeKMu {
    let counts = e.occurrence_vector();
    TypeKMu {
        n: e.len() as u32,
        k: counts[0],
        mu: Partition::new(counts[1..].to_vec()),
    }
}

/// `psi(pi) = e` with `e_i = #{j < i : pi(j) > pi(i)}`. Takes a permutation of
/// `1..=n` in one-line notation.
pub fn psi(pi: &[u32]) -> Result<InvSeq> {
    check_permutation(pi)?;
    let entries = (0..pi.len())
        .map(|i| pi[..i].iter().filter(|&&p| p > pi[i]).count() as u32)
        .collect();
    Ok(InvSeq(entries))
}

/// Inverse of [`psi`].
pub fn psi_inverse(e: &InvSeq) -> Vec<u32> {
    // rebuild from the right: position i takes the (e_i + 1)-th largest unused value
    let n = e.len();
    let mut unused: Vec<u32> = (1..=n as u32).collect();
    let mut pi = vec![0u32; n];
    for i in (0..n).rev() {
        let idx = unused.len() - 1 - e.0[i] as usize;
        pi[i] = unused.remove(idx);
    }
    pi
}

pub(crate) fn check_permutation(pi: &[u32]) -> Result<()> {
    let mut seen = vec![false; pi.len()];
    for &p in pi {
        let ok = p >= 1 && (p as usize) <= pi.len() && !seen[p as usize - 1];
        if !ok {
            return Err(Error::InvalidInput(format!("{pi:?} is not a permutation")));
        }
        seen[p as usize - 1] = true;
    }
    Ok(())
}

/// s-inversion sequence: `0 <= e_i < s_i` for a sequence `s` of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SInvSeq {
    s: Vec<u32>,
    e: Vec<u32>,
}

impl SInvSeq {
    pub fn new(s: Vec<u32>, e: Vec<u32>) -> Result<Self> {
        if s.len() != e.len() {
            return Err(Error::InvalidInput("s and e lengths differ".into()));
        }
        if s.contains(&0) {
            return Err(Error::InvalidInput("s must be positive".into()));
        }
        if e.iter().zip(&s).any(|(e, s)| e >= s) {
            return Err(Error::InvalidInput("entry out of range".into()));
        }
        Ok(SInvSeq { s, e })
    }

    pub fn entries(&self) -> &[u32] {
        &self.e
    }

    /// Ascents `e_i / s_i < e_{i+1} / s_{i+1}` for `i` in `0..n`, with
    /// `e_0 = 0` and `s_0 = 1`; compared exactly by cross-multiplication.
    pub fn asc(&self) -> u32 {
        let mut prev = (0u64, 1u64);
        let mut count = 0;
        for (&e, &s) in self.e.iter().zip(&self.s) {
            let cur = (e as u64, s as u64);
            if (prev.0 * cur.1).cmp(&(cur.0 * prev.1)) == Ordering::Less {
                count += 1;
            }
            prev = cur;
        }
        count
    }
}

fn s_inv_seqs_raw(s: Vec<u32>) -> impl Iterator<Item = Vec<u32>> {
    let n = s.len();
    let mut next = Some(vec![0u32; n]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        for i in (0..n).rev() {
            if succ[i] + 1 < s[i] {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

/// Every s-inversion sequence for `s`, lexicographic.
pub fn s_inv_seqs(s: &[u32]) -> Result<impl Iterator<Item = SInvSeq>> {
    if s.contains(&0) {
        return Err(Error::InvalidInput("s must be positive".into()));
    }
    let owned = s.to_vec();
    Ok(s_inv_seqs_raw(owned.clone()).map(move |e| SInvSeq { s: owned.clone(), e }))
}

/// `sum_e x^{asc(e)}` over all s-inversion sequences.
pub fn s_eulerian(s: &[u32]) -> Result<UniPoly> {
    let mut counts: Vec<u64> = vec![0; s.len() + 1];
    for e in s_inv_seqs(s)? {
        counts[e.asc() as usize] += 1;
    }
    Ok(UniPoly::new(
        counts.into_iter().map(|c| BigRational::from_integer(c.into())).collect(),
    ))
}

/// `s = (1, k+1, 2k+1, ..., (n-1)k+1)`.
pub fn arithmetic_s(n: u32, k: u32) -> Vec<u32> {
    (0..n).map(|i| i * k + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    /// All weakly decreasing tuples of positive parts summing to n.
    fn brute_partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in brute_partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn partition_listing() {
        assert_eq!(partitions_of(0).collect::<Vec<_>>(), vec![Partition::empty()]);
        assert_eq!(partitions_of(1).collect::<Vec<_>>(), vec![p(&[1])]);
        let four: Vec<_> = partitions_of(4).collect();
        assert_eq!(four.len(), 5);
        for n in 0..12 {
            let got: Vec<Vec<u32>> = partitions_of(n).map(|q| q.parts().to_vec()).collect();
            assert_eq!(got, brute_partitions(n, n), "n = {n}");
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_parts(vec![1, 2]).is_err());
        assert!(Partition::from_parts(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 2]).conjugate(), p(&[2, 2, 1]));
        assert_eq!(p(&[3, 2]).factorial_product(), 12.into());
    }

    #[test]
    fn types_of_three() {
        let got: Vec<String> = types_of(3).map(|t| t.to_string()).collect();
        assert_eq!(got, ["(3, (0,0))", "(2, (1,0))", "(1, (2,0))", "(1, (1,1))"]);
        assert_eq!(types_of(1).count(), 1);
        assert_eq!(types_of(4).count(), 7);
    }

    #[test]
    fn type_validation() {
        assert!(TypeKMu::new(3, 0, p(&[3])).is_err());
        assert!(TypeKMu::new(3, 1, p(&[1])).is_err());
        assert!(TypeKMu::new(3, 1, p(&[1, 1])).is_ok());
        let t = TypeKMu::new(7, 3, p(&[2, 1, 1])).unwrap();
        assert_eq!(t.zero_slots(), 3);
        assert_eq!(t.slot_multiplicity(1), 2);
        assert_eq!(t.padded_mu(), vec![2, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn small_inversion_sequences() {
        let two: Vec<_> = inv_seqs(2).map(|e| e.entries().to_vec()).collect();
        assert_eq!(two, vec![vec![0, 0], vec![0, 1]]);
        let three: Vec<_> = inv_seqs(3).map(|e| e.entries().to_vec()).collect();
        assert_eq!(
            three,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 0, 2],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(inv_seqs(1).count(), 1);
        for n in 1..=8 {
            let expected: usize = (1..=n).product();
            assert_eq!(inv_seqs(n).count(), expected);
        }
    }

    #[test]
    fn type_of_worked_sequence() {
        let e = InvSeq::new(vec![0, 0, 1, 0, 4, 2, 4, 0, 1]).unwrap();
        let t = type_of_seq(&e);
        assert_eq!(t.k(), 4);
        assert_eq!(t.padded_mu(), vec![2, 2, 1, 0, 0, 0, 0, 0]);
        assert_eq!(type_of_seq(&InvSeq::new(vec![0; 5]).unwrap()).mu(), &Partition::empty());
        let t = type_of_seq(&InvSeq::new(vec![0, 1, 2]).unwrap());
        assert_eq!((t.k(), t.mu().clone()), (1, p(&[1, 1])));
        assert!(InvSeq::new(vec![0, 2]).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&[1, 2, 3, 4]).unwrap().entries(), &[0, 0, 0, 0]);
        assert_eq!(psi(&[3, 2, 1]).unwrap().entries(), &[0, 1, 2]);
        assert!(psi(&[1, 1]).is_err());
    }

    fn permutations(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for base in permutations(n - 1) {
            for pos in 0..=base.len() {
                let mut v = base.clone();
                v.insert(pos, n);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn psi_is_a_bijection() {
        for n in 1..=7 {
            let mut images: Vec<InvSeq> = permutations(n)
                .iter()
                .map(|pi| {
                    let e = psi(pi).unwrap();
                    assert_eq!(&psi_inverse(&e), pi);
                    e
                })
                .collect();
            images.sort();
            images.dedup();
            assert_eq!(images, inv_seqs(n as usize).collect::<Vec<_>>(), "n = {n}");
        }
    }

    #[test]
    fn s_ascents() {
        let zero = SInvSeq::new(vec![1, 3, 5], vec![0, 0, 0]).unwrap();
        assert_eq!(zero.asc(), 0);
        assert_eq!(s_eulerian(&[1, 2, 3]).unwrap(), UniPoly::from_ints([1, 4, 1]));
        // A_3^{(2)}(x) from the recurrence (1 + 2nx) A_n + 2x(1-x) A_n'
        assert_eq!(s_eulerian(&[1, 3, 5]).unwrap(), UniPoly::from_ints([1, 10, 4]));
        assert!(SInvSeq::new(vec![1, 2], vec![0, 2]).is_err());
    }

    #[test]
    fn type_fibers_cover_all_sequences() {
        use std::collections::HashMap;
        for n in 1..=8u32 {
            let mut hist: HashMap<TypeKMu, u64> = HashMap::new();
            for e in inv_seqs(n as usize) {
                *hist.entry(type_of_seq(&e)).or_default() += 1;
            }
            let listed: Vec<TypeKMu> = types_of(n).collect();
            assert!(hist.keys().all(|t| listed.contains(t)));
            let total: u64 = hist.values().sum();
            assert_eq!(total, (1..=n as u64).product::<u64>());
        }
    }
}
