//! Brute-force enumerations used as referees for every other module.
//!
//! Nothing here is clever on purpose. Each routine walks the whole object
//! set and counts, so the caps below are real limits, and exceeding one is an
//! [`Error::SizeCap`](crate::Error::SizeCap) rather than a silent truncation.
//!
//! Descents follow the convention that the final index always counts:
//! `des(pi) = #{i in [n] : pi(i) > pi(i+1) or i = n}`. `des_classic` is the
//! usual statistic, one less.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{rat_int, UniPoly};
use crate::error::check_cap;
use crate::Result;

/// Largest `n` for which all of `S_n` is enumerated.
pub const PERM_CAP: usize = 9;
/// Largest `n` for simsun and alternating enumeration.
pub const SIMSUN_CAP: usize = 9;
/// Largest `n` for 0-1-2 increasing trees.
pub const TREE_CAP: usize = 10;
/// Largest `k * n` for k-Stirling permutations.
pub const STIRLING_PERM_CAP: usize = 14;
/// Largest `n` for signed permutations.
pub const SIGNED_PERM_CAP: usize = 8;

/// Statistics of a single permutation of `[n]` (one-line notation, 1-based values).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermStats {
    pub des_final: u32,
    pub des_classic: u32,
    pub exc: u32,
    pub cyc: u32,
    /// Peaks with `pi(0) = pi(n+1) = 0`.
    pub peaks: u32,
    /// Double descents with `pi(0) = pi(n+1) = 0`.
    pub exterior_double_descents: u32,
    pub simsun: bool,
    pub alternating: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermStatistic {
    DesFinal,
    DesClassic,
    Exc,
    Cyc,
    Peaks,
}

pub fn perm_stats(pi: &[u32]) -> PermStats {
    let des_classic = des_classic(pi);
    PermStats {
        des_final: des_final(pi),
        des_classic,
        exc: exc(pi),
        cyc: cyc(pi),
        peaks: peaks(pi),
        exterior_double_descents: exterior_double_descents(pi),
        simsun: is_simsun(pi),
        alternating: is_alternating(pi),
    }
}

pub fn des_classic(pi: &[u32]) -> u32 {
    pi.windows(2).filter(|w| w[0] > w[1]).count() as u32
}

/// Descents with the final index `n` always counted, so `des_classic + 1` for `n >= 1`.
pub fn des_final(pi: &[u32]) -> u32 {
    if pi.is_empty() {
        0
    } else {
        des_classic(pi) + 1
    }
}

pub fn exc(pi: &[u32]) -> u32 {
    pi.iter()
        .enumerate()
        .filter(|&(i, &v)| v as usize > i + 1)
        .count() as u32
}

pub fn cyc(pi: &[u32]) -> u32 {
    let mut seen = vec![false; pi.len()];
    let mut count = 0;
    for start in 0..pi.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = pi[i] as usize - 1;
        }
    }
    count
}

fn padded(pi: &[u32]) -> Vec<u32> {
    let mut v = Vec::with_capacity(pi.len() + 2);
    v.push(0);
    v.extend_from_slice(pi);
    v.push(0);
    v
}

pub fn peaks(pi: &[u32]) -> u32 {
    padded(pi)
        .windows(3)
        .filter(|w| w[0] < w[1] && w[1] > w[2])
        .count() as u32
}

pub fn exterior_double_descents(pi: &[u32]) -> u32 {
    padded(pi)
        .windows(3)
        .filter(|w| w[0] > w[1] && w[1] > w[2])
        .count() as u32
}

fn has_double_descent(w: &[u32]) -> bool {
    w.windows(3).any(|t| t[0] > t[1] && t[1] > t[2])
}

/// Every restriction to the letters `1..=m` is free of double descents.
pub fn is_simsun(pi: &[u32]) -> bool {
    (1..=pi.len() as u32).all(|m| {
        let sub: Vec<u32> = pi.iter().copied().filter(|&v| v <= m).collect();
        !has_double_descent(&sub)
    })
}

/// `pi(1) > pi(2) < pi(3) > ...`
pub fn is_alternating(pi: &[u32]) -> bool {
    pi.windows(2)
        .enumerate()
        .all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] })
}

/// All permutations of `[n]` in lexicographic order.
pub fn permutations(n: usize) -> Result<Vec<Vec<u32>>> {
    check_cap("permutation enumeration", n, PERM_CAP)?;
    let mut current: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Accumulates integer counts into a polynomial.
fn poly_from_counts(counts: &[BigInt]) -> UniPoly {
    UniPoly::new(counts.iter().cloned().map(rat_int).collect())
}

fn bump(counts: &mut Vec<BigInt>, i: usize, by: BigInt) {
    if counts.len() <= i {
        counts.resize(i + 1, BigInt::zero());
    }
    counts[i] += by;
}

pub fn perm_poly(n: usize, stat: PermStatistic) -> Result<UniPoly> {
    let mut counts = Vec::new();
    for pi in permutations(n)? {
        let s = match stat {
            PermStatistic::DesFinal => des_final(&pi),
            PermStatistic::DesClassic => des_classic(&pi),
            PermStatistic::Exc => exc(&pi),
            PermStatistic::Cyc => cyc(&pi),
            PermStatistic::Peaks => peaks(&pi),
        };
        bump(&mut counts, s as usize, BigInt::one());
    }
    Ok(poly_from_counts(&counts))
}

/// `sum_pi x^exc(pi) k^(n - cyc(pi))`.
pub fn exc_cyc_poly(n: usize, k: u32) -> Result<UniPoly> {
    let mut counts = Vec::new();
    for pi in permutations(n)? {
        let w = BigInt::from(k).pow(n as u32 - cyc(&pi));
        bump(&mut counts, exc(&pi) as usize, w);
    }
    Ok(poly_from_counts(&counts))
}

/// Word over `{1^k, ..., n^k}` in which everything between two copies of `i`
/// is at least `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StirlingPerm {
    k: usize,
    word: Vec<u32>,
}

impl StirlingPerm {
    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Descents with the final index counted.
    pub fn des(&self) -> u32 {
        des_final(&self.word)
    }

    /// Longest ascent plateaus: 1-based `i` in `2..=nk-k+1` with
    /// `s[i-1] < s[i] = ... = s[i+k-1]`.
    pub fn ap(&self) -> u32 {
        let w = &self.word;
        let k = self.k;
        if w.len() < k {
            return 0;
        }
        (2..=w.len() - k + 1)
            .filter(|&i| {
                let i0 = i - 1;
                w[i0 - 1] < w[i0] && w[i0..i0 + k].iter().all(|&x| x == w[i0])
            })
            .count() as u32
    }

    /// Left ascent plateaus: 1-based `i` in `1..len` with
    /// `s[i-1] < s[i] = s[i+1]`, `s[0] = 0`.
    pub fn lap(&self) -> u32 {
        let mut v = vec![0];
        v.extend_from_slice(&self.word);
        v.windows(3).filter(|t| t[0] < t[1] && t[1] == t[2]).count() as u32
    }

    pub fn is_stirling(&self) -> bool {
        self.word.iter().enumerate().all(|(a, &x)| {
            let last = self.word.iter().rposition(|&y| y == x).unwrap();
            self.word[a..=last].iter().all(|&y| y >= x)
        })
    }
}

/// `Q_n(k)` built by inserting the block `(i+1)^k` into every gap of each
/// word of `Q_i(k)`.
pub fn stirling_perms(n: usize, k: usize) -> Result<Vec<StirlingPerm>> {
    check_cap("Stirling permutation enumeration (k*n)", n * k, STIRLING_PERM_CAP)?;
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    for i in 1..=n as u32 {
        let mut next = Vec::with_capacity(words.len() * (words[0].len() + 1));
        for w in &words {
            for gap in 0..=w.len() {
                let mut nw = Vec::with_capacity(w.len() + k);
                nw.extend_from_slice(&w[..gap]);
                nw.extend(std::iter::repeat_n(i, k));
                nw.extend_from_slice(&w[gap..]);
                next.push(nw);
            }
        }
        words = next;
    }
    Ok(words
        .into_iter()
        .map(|word| StirlingPerm { k, word })
        .collect())
}

fn stirling_poly(n: usize, k: usize, stat: impl Fn(&StirlingPerm) -> u32) -> Result<UniPoly> {
    let mut counts = Vec::new();
    for s in stirling_perms(n, k)? {
        bump(&mut counts, stat(&s) as usize, BigInt::one());
    }
    Ok(poly_from_counts(&counts))
}

pub fn stirling_des_poly(n: usize, k: usize) -> Result<UniPoly> {
    stirling_poly(n, k, StirlingPerm::des)
}

pub fn stirling_ap_poly(n: usize, k: usize) -> Result<UniPoly> {
    stirling_poly(n, k, StirlingPerm::ap)
}

/// Left ascent plateau polynomial over `Q_n(2)`.
pub fn stirling_lap_poly(n: usize) -> Result<UniPoly> {
    stirling_poly(n, 2, StirlingPerm::lap)
}

/// Descent polynomial (final index counted) of simsun permutations.
pub fn simsun_poly(n: usize) -> Result<UniPoly> {
    check_cap("simsun enumeration", n, SIMSUN_CAP)?;
    let mut counts = Vec::new();
    for pi in permutations(n)? {
        if is_simsun(&pi) {
            bump(&mut counts, des_final(&pi) as usize, BigInt::one());
        }
    }
    Ok(poly_from_counts(&counts))
}

pub fn simsun_count(n: usize) -> Result<BigInt> {
    check_cap("simsun enumeration", n, SIMSUN_CAP)?;
    Ok(BigInt::from(
        permutations(n)?.iter().filter(|p| is_simsun(p)).count(),
    ))
}

/// Euler number `E_n`: alternating permutations of `[n]`.
pub fn alternating_count(n: usize) -> Result<BigInt> {
    check_cap("alternating enumeration", n, SIMSUN_CAP)?;
    Ok(BigInt::from(
        permutations(n)?.iter().filter(|p| is_alternating(p)).count(),
    ))
}

/// Leaf polynomial of 0-1-2 increasing trees on `{0, 1, ..., n}` (children
/// unordered), built by attaching `1, 2, ..., n` in turn to every vertex that
/// still has fewer than two children.
pub fn trees012_leaf_poly(n: usize) -> Result<UniPoly> {
    check_cap("0-1-2 tree enumeration", n, TREE_CAP)?;
    let mut counts = Vec::new();
    let mut degrees = vec![0u8; n + 1];
    grow_tree(&mut degrees, 1, n, &mut counts);
    Ok(poly_from_counts(&counts))
}

fn grow_tree(degrees: &mut [u8], next: usize, n: usize, counts: &mut Vec<BigInt>) {
    if next > n {
        let leaves = degrees.iter().filter(|&&d| d == 0).count();
        bump(counts, leaves, BigInt::one());
        return;
    }
    for parent in 0..next {
        if degrees[parent] < 2 {
            degrees[parent] += 1;
            grow_tree(degrees, next + 1, n, counts);
            degrees[parent] -= 1;
        }
    }
}

/// `a(n, i)`: permutations with `i` peaks and no exterior double descents,
/// returned as the vector indexed by `i` (index 0 unused and zero).
pub fn peak_gamma(n: usize) -> Result<Vec<BigInt>> {
    let mut counts = Vec::new();
    for pi in permutations(n)? {
        if exterior_double_descents(&pi) == 0 {
            bump(&mut counts, peaks(&pi) as usize, BigInt::one());
        }
    }
    Ok(counts)
}

/// Type-B descent polynomial over signed permutations of `[n]`:
/// `des_B = #{i in 0..n : s(i) > s(i+1)}` with `s(0) = 0`.
pub fn signed_des_poly(n: usize) -> Result<UniPoly> {
    check_cap("signed permutation enumeration", n, SIGNED_PERM_CAP)?;
    let mut counts = Vec::new();
    for pi in permutations(n)? {
        for signs in 0u32..(1 << n) {
            let mut w = vec![0i64];
            w.extend(pi.iter().enumerate().map(|(i, &v)| {
                if signs >> i & 1 == 1 {
                    -(v as i64)
                } else {
                    v as i64
                }
            }));
            let d = w.windows(2).filter(|p| p[0] > p[1]).count();
            bump(&mut counts, d, BigInt::one());
        }
    }
    Ok(poly_from_counts(&counts))
}

/// Rows `0..=n` of a triangle `t[m][j]`, `0 <= j <= m`.
fn triangle(n: usize, step: impl Fn(usize, usize, &[BigInt]) -> BigInt) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m).map(|j| step(m, j, prev)).collect();
        rows.push(row);
    }
    rows
}

fn at(prev: &[BigInt], j: Option<usize>) -> BigInt {
    j.and_then(|j| prev.get(j)).cloned().unwrap_or_else(BigInt::zero)
}

/// Unsigned Stirling numbers of the first kind `c(m, j)` for `m <= n`.
pub fn stirling1_triangle(n: usize) -> Vec<Vec<BigInt>> {
    triangle(n, |m, j, prev| {
        at(prev, j.checked_sub(1)) + BigInt::from(m - 1) * at(prev, Some(j))
    })
}

/// Stirling numbers of the second kind `S(m, j)` for `m <= n`.
pub fn stirling2_triangle(n: usize) -> Vec<Vec<BigInt>> {
    triangle(n, |_, j, prev| {
        at(prev, j.checked_sub(1)) + BigInt::from(j) * at(prev, Some(j))
    })
}

pub fn stirling1(n: usize, k: usize) -> BigInt {
    at(&stirling1_triangle(n)[n], Some(k))
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    at(&stirling2_triangle(n)[n], Some(k))
}

/// Eulerian numbers with the final index counted: `t[m][j]` permutations of
/// `[m]` with `j` descents, `1 <= j <= m` (and `t[0][0] = 1`).
pub fn eulerian_triangle(n: usize) -> Vec<Vec<BigInt>> {
    triangle(n, |m, j, prev| {
        if m == 1 {
            return if j == 1 { BigInt::one() } else { BigInt::zero() };
        }
        if j == 0 {
            return BigInt::zero();
        }
        // classical E(m, j-1) = j E(m-1, j-1) + (m-j+1) E(m-1, j-2)
        BigInt::from(j) * at(prev, Some(j)) + BigInt::from(m + 1 - j) * at(prev, j.checked_sub(1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &UniPoly) -> Vec<i64> {
        p.int_coeffs()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).unwrap().len(), 1);
        assert_eq!(permutations(5).unwrap().len(), 120);
        assert!(permutations(PERM_CAP + 1).is_err());
    }

    #[test]
    fn stats_of_small_permutations() {
        let s = perm_stats(&[3, 1, 2]);
        assert_eq!(s.des_final, 2);
        assert_eq!(s.des_classic, 1);
        assert_eq!(s.exc, 1);
        assert_eq!(s.cyc, 1);
        assert_eq!(cyc(&[1, 2, 3]), 3);
        assert!(is_alternating(&[2, 1, 4, 3]));
        assert!(!is_alternating(&[1, 2, 4, 3]));
        assert!(!is_simsun(&[3, 2, 1]));
        assert!(!is_simsun(&[3, 4, 2, 1]));
        assert!(is_simsun(&[3, 1, 2]));
    }

    #[test]
    fn descent_conventions() {
        assert_eq!(ints(&perm_poly(1, PermStatistic::DesFinal).unwrap()), [0, 1]);
        assert_eq!(
            ints(&perm_poly(4, PermStatistic::DesFinal).unwrap()),
            [0, 1, 11, 11, 1]
        );
        for n in 1..=7 {
            let fin = perm_poly(n, PermStatistic::DesFinal).unwrap();
            let classic = perm_poly(n, PermStatistic::DesClassic).unwrap();
            assert_eq!(fin, classic.shift(1));
        }
    }

    #[test]
    fn excedance_accounting() {
        for pi in permutations(5).unwrap() {
            let fixed = pi.iter().enumerate().filter(|&(i, &v)| v as usize == i + 1).count();
            let anti = pi.iter().enumerate().filter(|&(i, &v)| (v as usize) < i + 1).count();
            assert_eq!(exc(&pi) as usize + fixed + anti, 5);
        }
    }

    #[test]
    fn exc_cyc_small() {
        assert_eq!(ints(&exc_cyc_poly(2, 2).unwrap()), [1, 2]);
        assert_eq!(exc_cyc_poly(3, 1).unwrap(), perm_poly(3, PermStatistic::DesClassic).unwrap());
    }

    #[test]
    fn stirling_permutations() {
        let q2: Vec<Vec<u32>> = stirling_perms(2, 2)
            .unwrap()
            .into_iter()
            .map(|s| s.word)
            .collect();
        let mut sorted = q2.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![1, 1, 2, 2], vec![1, 2, 2, 1], vec![2, 2, 1, 1]]);
        for n in 1..=7 {
            let all = stirling_perms(n, 2).unwrap();
            assert_eq!(BigInt::from(all.len()), crate::algebra::double_factorial_odd(n as u64));
            assert!(all.iter().all(StirlingPerm::is_stirling));
        }
        assert!(stirling_perms(8, 2).is_err());
    }

    #[test]
    fn stirling_statistics() {
        assert_eq!(ints(&stirling_des_poly(2, 2).unwrap()), [0, 1, 2]);
        assert_eq!(ints(&stirling_ap_poly(2, 2).unwrap()), [1, 2]);
        assert_eq!(ints(&stirling_lap_poly(2).unwrap()), [0, 2, 1]);
    }

    #[test]
    fn simsun_and_alternating() {
        assert_eq!(ints(&simsun_poly(3).unwrap()), [0, 1, 4]);
        assert_eq!(ints(&simsun_poly(2).unwrap()), [0, 1, 1]);
        assert_eq!(alternating_count(4).unwrap(), BigInt::from(5));
        for n in 1..=8 {
            assert_eq!(simsun_count(n).unwrap(), alternating_count(n + 1).unwrap());
        }
    }

    #[test]
    fn trees_match_simsun() {
        assert_eq!(ints(&trees012_leaf_poly(2).unwrap()), [0, 1, 1]);
        for n in 1..=7 {
            assert_eq!(trees012_leaf_poly(n).unwrap(), simsun_poly(n).unwrap());
        }
        assert!(trees012_leaf_poly(TREE_CAP + 1).is_err());
    }

    #[test]
    fn peak_gamma_small() {
        let g3: Vec<i64> = peak_gamma(3).unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(g3, [0, 1, 2]);
        let g4: Vec<i64> = peak_gamma(4).unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(g4, [0, 1, 8]);
    }

    #[test]
    fn signed_descents() {
        assert_eq!(ints(&signed_des_poly(1).unwrap()), [1, 1]);
        assert_eq!(ints(&signed_des_poly(2).unwrap()), [1, 6, 1]);
    }

    #[test]
    fn triangles() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling1(4, 2), BigInt::from(11));
        let e = eulerian_triangle(4);
        let row: Vec<i64> = e[4].iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(row, [0, 1, 11, 11, 1]);
        for n in 1..=7 {
            let oracle = perm_poly(n, PermStatistic::DesFinal).unwrap();
            assert_eq!(poly_from_counts(&eulerian_triangle(n)[n]), oracle);
            let total: BigInt = stirling1_triangle(n)[n].iter().sum();
            assert_eq!(total, crate::algebra::factorial(n as u64));
        }
    }
}
