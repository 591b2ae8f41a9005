//! Standard Young tableaux, k-Young tableaux, g-indexes and the column-sorting
//! projection `rho`.
//!
//! Rows are numbered from the bottom: `rows[0]` is the longest row, and
//! columns increase from bottom to top (French convention). Text rendering
//! prints the top row first so that the picture matches that convention.
//!
//! # g-index
//!
//! For a letter `v`, restrict the tableau to the letters `<= v`; `v` then sits
//! at a removable corner in some column `j` (1-based).
//!
//! * Standard tableau: with `lambda(v)` the restricted shape padded with zeros
//!   to `v` slots, `g(v) = 1 + #{slots of lambda(v) equal to j - 1}`.
//! * k-Young tableau: letters of the bottom row get `g(v) = 1`. Otherwise,
//!   with `mu(v)` the restricted top shape padded to `v - 1` slots,
//!   `g(v) = 1 + #{slots of mu(v) equal to j - 1}`.
//!
//! Equivalently, `g(v)` counts the boxes of column `j - 1` at or above the
//! row of `v` that hold a letter `<= v`, where column 0 is an auxiliary
//! column labelled `1, 2, ..., n` from the bottom.

use std::fmt;

use num_bigint::BigInt;

use crate::combinat::{partitions_of, Partition, TypeKMu};
use crate::{Error, Result};

/// Standard Young tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Validates shape, standardness and that the letters are exactly `1..=n`.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rows: Vec<Vec<u32>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidInput(
                "row lengths must weakly decrease upwards".into(),
            ));
        }
        check_standard(&rows)?;
        check_letters(rows.iter().flatten().copied(), "tableau")?;
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Letters of each column, bottom to top.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        columns_of(&self.rows)
    }

    /// `(row, column)`, both 0-based.
    pub fn position(&self, v: u32) -> Option<(usize, usize)> {
        position_in(&self.rows, v)
    }

    /// The tableau on the letters `<= v`.
    pub fn restrict(&self, v: u32) -> Tableau {
        Tableau {
            rows: restrict_rows(&self.rows, v),
        }
    }

    /// Shape of the restriction to letters `<= v`, as row lengths.
    fn restricted_shape(&self, v: u32) -> Vec<u32> {
        restricted_lengths(&self.rows, v)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows, self.size())
    }
}

/// k-Young tableau of shape `(k, mu)`: an increasing bottom row of `k`
/// letters starting with 1, and a standard filling of the Ferrers diagram of
/// `mu` on top. Nothing relates the bottom row to the top filling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTableau {
    bottom: Vec<u32>,
    top: Vec<Vec<u32>>,
}

impl KTableau {
    pub fn new(bottom: Vec<u32>, top: Vec<Vec<u32>>) -> Result<Self> {
        if bottom.first() != Some(&1) {
            return Err(Error::InvalidInput("bottom row must start with 1".into()));
        }
        if bottom.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("bottom row must increase".into()));
        }
        let top: Vec<Vec<u32>> = top.into_iter().filter(|r| !r.is_empty()).collect();
        if top.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidInput(
                "top row lengths must weakly decrease upwards".into(),
            ));
        }
        check_standard(&top)?;
        check_letters(
            bottom.iter().chain(top.iter().flatten()).copied(),
            "k-Young tableau",
        )?;
        Ok(KTableau { bottom, top })
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn top(&self) -> &[Vec<u32>] {
        &self.top
    }

    pub fn k(&self) -> u32 {
        self.bottom.len() as u32
    }

    pub fn size(&self) -> usize {
        self.bottom.len() + self.top.iter().map(Vec::len).sum::<usize>()
    }

    pub fn mu(&self) -> Partition {
        Partition::new(self.top.iter().map(|r| r.len() as u32).collect())
    }

    pub fn kind(&self) -> TypeKMu {
        TypeKMu::new(self.size() as u32, self.k(), self.mu()).expect("k-Young tableau has a valid type")
    }

    /// `(row, column)` inside the top tableau, 0-based.
    pub fn top_position(&self, v: u32) -> Option<(usize, usize)> {
        position_in(&self.top, v)
    }

    pub fn restrict(&self, v: u32) -> KTableau {
        KTableau {
            bottom: self.bottom.iter().copied().filter(|&b| b <= v).collect(),
            top: restrict_rows(&self.top, v),
        }
    }
}

impl fmt::Display for KTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.size().to_string().len();
        write_rows_width(f, &self.top, width)?;
        let bar = self.bottom.len().max(self.top.first().map_or(0, Vec::len));
        writeln!(f, "{}", "=".repeat(bar * (width + 1) - 1))?;
        write_row(f, &self.bottom, width)
    }
}

/// Per-letter g-values, `g[v - 1] = g(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GIndexVector {
    g: Vec<u32>,
}

impl GIndexVector {
    pub fn values(&self) -> &[u32] {
        &self.g
    }

    pub fn get(&self, v: u32) -> u32 {
        self.g[v as usize - 1]
    }

    /// `G = prod_v g(v)`.
    pub fn product(&self) -> BigInt {
        self.g.iter().map(|&x| BigInt::from(x)).product()
    }
}

impl fmt::Display for GIndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.g.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Debug record for one letter of a g-index computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GStep {
    pub letter: u32,
    /// 1-based column of the letter; `None` for the bottom row of a k-Young tableau.
    pub column: Option<u32>,
    /// Restricted shape (top shape for k-Young tableaux), nonzero parts only.
    pub restricted_shape: Vec<u32>,
    pub g: u32,
}

pub fn g_index_trace(t: &Tableau) -> Vec<GStep> {
    (1..=t.size() as u32)
        .map(|v| {
            let (_, col) = t.position(v).expect("letter present");
            let shape = t.restricted_shape(v);
            let g = corner_weight(&shape, col as u32 + 1, v);
            GStep {
                letter: v,
                column: Some(col as u32 + 1),
                restricted_shape: shape,
                g,
            }
        })
        .collect()
}

pub fn g_index(t: &Tableau) -> GIndexVector {
    GIndexVector {
        g: g_index_trace(t).into_iter().map(|s| s.g).collect(),
    }
}

pub fn g_index_k_trace(z: &KTableau) -> Vec<GStep> {
    (1..=z.size() as u32)
        .map(|v| match z.top_position(v) {
            None => GStep {
                letter: v,
                column: None,
                restricted_shape: restricted_lengths(&z.top, v),
                g: 1,
            },
            Some((_, col)) => {
                let shape = restricted_lengths(&z.top, v);
                let g = corner_weight(&shape, col as u32 + 1, v - 1);
                GStep {
                    letter: v,
                    column: Some(col as u32 + 1),
                    restricted_shape: shape,
                    g,
                }
            }
        })
        .collect()
}

pub fn g_index_k(z: &KTableau) -> GIndexVector {
    GIndexVector {
        g: g_index_k_trace(z).into_iter().map(|s| s.g).collect(),
    }
}

/// `1 + #{slots equal to column - 1}` for `shape` padded to `slots` entries.
fn corner_weight(shape: &[u32], column: u32, slots: u32) -> u32 {
    let target = column - 1;
    let hits = if target == 0 {
        slots - shape.len() as u32
    } else {
        shape.iter().filter(|&&r| r == target).count() as u32
    };
    1 + hits
}

/// All standard Young tableaux of shape `lambda`, in row-reading
/// lexicographic order (bottom row first).
pub fn syt_of_shape(lambda: &Partition) -> Vec<Tableau> {
    let target = lambda.parts().to_vec();
    let n = lambda.weight();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); target.len()];
    fill_syt(&target, &mut rows, 1, n, &mut out);
    out.sort_by(|a, b| flat(&a.rows).cmp(&flat(&b.rows)));
    out
}

fn flat(rows: &[Vec<u32>]) -> Vec<u32> {
    rows.iter().flatten().copied().collect()
}

fn fill_syt(target: &[u32], rows: &mut Vec<Vec<u32>>, next: u32, n: u32, out: &mut Vec<Tableau>) {
    if next > n {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    for r in 0..target.len() {
        let len = rows[r].len();
        let fits = (len as u32) < target[r] && (r == 0 || rows[r - 1].len() > len);
        if fits {
            rows[r].push(next);
            fill_syt(target, rows, next + 1, n, out);
            rows[r].pop();
        }
    }
}

/// `SYT(n)`: shapes in reverse-lexicographic order, then [`syt_of_shape`] order.
pub fn syt_all(n: u32) -> Vec<Tableau> {
    partitions_of(n).flat_map(|l| syt_of_shape(&l)).collect()
}

/// Tableaux of `SYT(n)` with at most two columns.
pub fn syt_two_columns(n: u32) -> Vec<Tableau> {
    partitions_of(n)
        .filter(|l| l.parts().first().is_none_or(|&p| p <= 2))
        .flat_map(|l| syt_of_shape(&l))
        .collect()
}

/// All k-Young tableaux of the given type: bottom rows in lexicographic
/// order, then top fillings in [`syt_of_shape`] order.
pub fn ktableaux_of(t: &TypeKMu) -> Vec<KTableau> {
    let n = t.n();
    let k = t.k() as usize;
    let top_shapes = syt_of_shape(t.mu());
    let mut out = Vec::new();
    let others: Vec<u32> = (2..=n).collect();
    for chosen in combinations(&others, k - 1) {
        let mut bottom = vec![1];
        bottom.extend(&chosen);
        let rest: Vec<u32> = others.iter().copied().filter(|x| !chosen.contains(x)).collect();
        for shape in &top_shapes {
            let top = shape
                .rows
                .iter()
                .map(|r| r.iter().map(|&i| rest[i as usize - 1]).collect())
                .collect();
            out.push(KTableau {
                bottom: bottom.clone(),
                top,
            });
        }
    }
    out
}

fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=items.len() - k {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, items[i]);
            out.push(rest);
        }
    }
    out
}

/// The standard tableau whose columns hold the same letter sets as the
/// columns of `z` (the bottom box of column `j` counting towards column `j`).
pub fn rho(z: &KTableau) -> Tableau {
    let mut cols = columns_of(&z.top);
    let width = cols.len().max(z.bottom.len());
    cols.resize(width, Vec::new());
    for (j, &b) in z.bottom.iter().enumerate() {
        cols[j].push(b);
    }
    for c in &mut cols {
        c.sort_unstable();
    }
    let height = cols.iter().map(Vec::len).max().unwrap_or(0);
    let rows = (0..height)
        .map(|r| cols.iter().filter_map(|c| c.get(r).copied()).collect())
        .collect();
    let t = Tableau { rows };
    debug_assert!(Tableau::new(t.rows.clone()).is_ok());
    t
}

/// Every k-Young tableau (over all types) mapped to `t` by [`rho`], found by
/// trying every way of moving one letter of each of the first `k` columns
/// into the bottom row. Ordered by `k`, then by the choice of letters.
pub fn rho_fiber(t: &Tableau) -> Vec<KTableau> {
    let cols = t.columns();
    let mut out = Vec::new();
    for k in 1..=cols.len() {
        let mut choice = vec![0usize; k];
        loop {
            if let Some(z) = split_columns(&cols, &choice) {
                out.push(z);
            }
            // odometer over the letter picked from each of the first k columns
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < cols[i].len() {
                    break;
                }
                choice[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    out
}

fn split_columns(cols: &[Vec<u32>], choice: &[usize]) -> Option<KTableau> {
    let bottom: Vec<u32> = choice.iter().enumerate().map(|(j, &c)| cols[j][c]).collect();
    if bottom[0] != 1 || bottom.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    let top_cols: Vec<Vec<u32>> = cols
        .iter()
        .enumerate()
        .map(|(j, col)| match choice.get(j) {
            Some(&c) => col.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, &x)| x).collect(),
            None => col.clone(),
        })
        .collect();
    if top_cols.windows(2).any(|w| w[0].len() < w[1].len()) {
        return None;
    }
    let height = top_cols.first().map_or(0, Vec::len);
    let top: Vec<Vec<u32>> = (0..height)
        .map(|r| top_cols.iter().filter_map(|c| c.get(r).copied()).collect())
        .collect();
    if top.iter().any(|row: &Vec<u32>| row.windows(2).any(|w| w[0] >= w[1])) {
        return None;
    }
    Some(KTableau { bottom, top })
}

/// The four-way split of a `rho`-fiber used to prove that its g-indexes sum
/// to `G_T`, keyed on where the largest letter `n` sits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaSplit {
    /// `n` in the top, in a row of length `k + 1`.
    pub gamma1: Vec<KTableau>,
    /// `n` in the bottom row and `k - 1` is a part of `mu`.
    pub gamma2: Vec<KTableau>,
    /// `n` in the top, in a row whose length is not `k + 1`.
    pub gamma3: Vec<KTableau>,
    /// `n` in the bottom row and `k - 1` is not a part of `mu`.
    pub gamma4: Vec<KTableau>,
}

pub fn gamma_decompose_fiber(t: &Tableau) -> GammaSplit {
    let n = t.size() as u32;
    let mut split = GammaSplit::default();
    for z in rho_fiber(t) {
        let k = z.k();
        match z.top_position(n) {
            Some((row, _)) => {
                let beta = z.top[row].len() as u32;
                if k + 1 == beta {
                    split.gamma1.push(z);
                } else {
                    split.gamma3.push(z);
                }
            }
            None => {
                if z.kind().slot_multiplicity(k - 1) > 0 {
                    split.gamma2.push(z);
                } else {
                    split.gamma4.push(z);
                }
            }
        }
    }
    split
}

fn check_standard(rows: &[Vec<u32>]) -> Result<()> {
    if rows.iter().any(|r| r.windows(2).any(|w| w[0] >= w[1])) {
        return Err(Error::InvalidInput("rows must increase left to right".into()));
    }
    for w in rows.windows(2) {
        if w[1].iter().zip(&w[0]).any(|(up, down)| up <= down) {
            return Err(Error::InvalidInput("columns must increase bottom to top".into()));
        }
    }
    Ok(())
}

fn check_letters(letters: impl Iterator<Item = u32>, what: &str) -> Result<()> {
    let mut v: Vec<u32> = letters.collect();
    v.sort_unstable();
    if v.iter().enumerate().any(|(i, &x)| x != i as u32 + 1) {
        return Err(Error::InvalidInput(format!(
            "{what} letters must be exactly 1..={}",
            v.len()
        )));
    }
    Ok(())
}

fn columns_of(rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    (0..width)
        .map(|j| rows.iter().filter_map(|r| r.get(j).copied()).collect())
        .collect()
}

fn position_in(rows: &[Vec<u32>], v: u32) -> Option<(usize, usize)> {
    rows.iter()
        .enumerate()
        .find_map(|(i, r)| r.iter().position(|&x| x == v).map(|j| (i, j)))
}

fn restrict_rows(rows: &[Vec<u32>], v: u32) -> Vec<Vec<u32>> {
    rows.iter()
        .map(|r| r.iter().copied().filter(|&x| x <= v).collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect()
}

fn restricted_lengths(rows: &[Vec<u32>], v: u32) -> Vec<u32> {
    rows.iter()
        .map(|r| r.iter().filter(|&&x| x <= v).count() as u32)
        .filter(|&l| l > 0)
        .collect()
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[u32], width: usize) -> fmt::Result {
    let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
    writeln!(f, "{}", cells.join(" "))
}

fn write_rows_width(f: &mut fmt::Formatter<'_>, rows: &[Vec<u32>], width: usize) -> fmt::Result {
    for row in rows.iter().rev() {
        write_row(f, row, width)?;
    }
    Ok(())
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<u32>], n: usize) -> fmt::Result {
    write_rows_width(f, rows, n.to_string().len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(rows: &[&[u32]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ktab(bottom: &[u32], top: &[&[u32]]) -> KTableau {
        KTableau::new(bottom.to_vec(), top.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn sample_z() -> KTableau {
        ktab(&[1, 5], &[&[2, 3, 7], &[4, 6]])
    }

    /// Fillings of a shape found by trying every permutation of the letters.
    fn brute_syt_count(shape: &[u32]) -> usize {
        let n: u32 = shape.iter().sum();
        let mut letters: Vec<u32> = (1..=n).collect();
        let mut count = 0;
        permute(&mut letters, 0, &mut |perm| {
            let mut rows = Vec::new();
            let mut at = 0;
            for &len in shape {
                rows.push(perm[at..at + len as usize].to_vec());
                at += len as usize;
            }
            if Tableau::new(rows).is_ok() {
                count += 1;
            }
        });
        count
    }

    fn permute(v: &mut Vec<u32>, i: usize, f: &mut dyn FnMut(&[u32])) {
        if i == v.len() {
            f(v);
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            permute(v, i + 1, f);
            v.swap(i, j);
        }
    }

    #[test]
    fn syt_counts() {
        assert_eq!(syt_all(4).len(), 10);
        assert_eq!(syt_of_shape(&Partition::new(vec![5])).len(), 1);
        assert_eq!(syt_of_shape(&Partition::new(vec![2, 1])).len(), 2);
        for shape in [vec![2, 1], vec![3, 2], vec![2, 2, 1], vec![3, 1, 1]] {
            assert_eq!(
                syt_of_shape(&Partition::new(shape.clone())).len(),
                brute_syt_count(&shape),
                "{shape:?}"
            );
        }
    }

    #[test]
    fn syt_order_is_row_reading() {
        let two_one = syt_of_shape(&Partition::new(vec![2, 1]));
        assert_eq!(two_one[0].rows(), &[vec![1, 2], vec![3]]);
        assert_eq!(two_one[1].rows(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn rejects_bad_tableaux() {
        assert!(Tableau::new(vec![vec![1, 3], vec![2, 4], vec![5]]).is_ok());
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1, 3], vec![2, 4, 5]]).is_err());
        assert!(Tableau::new(vec![vec![2, 3], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![1, 2], vec![4]]).is_err());
        assert!(KTableau::new(vec![2], vec![vec![1]]).is_err());
        assert!(KTableau::new(vec![1, 3], vec![vec![4, 2]]).is_err());
    }

    #[test]
    fn ktableaux_small_types() {
        let t = TypeKMu::from_k_mu(2, Partition::new(vec![1])).unwrap();
        let zs = ktableaux_of(&t);
        assert_eq!(zs, vec![ktab(&[1, 2], &[&[3]]), ktab(&[1, 3], &[&[2]])]);
        let full = TypeKMu::from_k_mu(5, Partition::empty()).unwrap();
        assert_eq!(ktableaux_of(&full), vec![ktab(&[1, 2, 3, 4, 5], &[])]);
        let fig = TypeKMu::from_k_mu(2, Partition::new(vec![3, 2])).unwrap();
        assert!(ktableaux_of(&fig).contains(&sample_z()));
    }

    #[test]
    fn sample_g_index() {
        let z = sample_z();
        assert_eq!(g_index_k(&z).values(), &[1, 1, 1, 2, 1, 1, 2]);
        assert_eq!(g_index_k(&z).product(), BigInt::from(4));
        assert_eq!(z.kind().to_string(), "(2, (3,2,0,0,0,0))");
    }

    #[test]
    fn single_row_g_index_is_trivial() {
        for n in 1..8u32 {
            let t = Tableau::new(vec![(1..=n).collect()]).unwrap();
            assert!(g_index(&t).values().iter().all(|&g| g == 1));
        }
    }

    #[test]
    fn two_one_g_index() {
        let t = tab(&[&[1, 2], &[3]]);
        assert_eq!(g_index(&t).values(), &[1, 1, 2]);
        assert_eq!(g_index(&t).product(), BigInt::from(2));
        let trace = g_index_trace(&t);
        assert_eq!(trace[2].restricted_shape, vec![2, 1]);
        assert_eq!(trace[2].column, Some(1));
    }

    #[test]
    fn restriction() {
        let z = sample_z();
        assert_eq!(z.restrict(7), z);
        assert_eq!(z.restrict(4), ktab(&[1], &[&[2, 3], &[4]]));
        let t = tab(&[&[1, 3, 7], &[2, 5], &[4, 6]]);
        assert_eq!(t.restrict(7), t);
        assert_eq!(t.restrict(4), tab(&[&[1, 3], &[2], &[4]]));
    }

    #[test]
    fn restrictions_stay_partition_shaped() {
        for n in 1..=6 {
            for ty in crate::combinat::types_of(n) {
                for z in ktableaux_of(&ty) {
                    for v in 1..=n {
                        let r = z.restrict(v);
                        assert!(KTableau::new(r.bottom.clone(), r.top.clone()).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn rho_of_sample() {
        assert_eq!(rho(&sample_z()), tab(&[&[1, 3, 7], &[2, 5], &[4, 6]]));
        assert_eq!(rho(&ktab(&[1, 2, 3], &[])), tab(&[&[1, 2, 3]]));
    }

    #[test]
    fn rho_shape_factorials() {
        for n in 1..=6 {
            for ty in crate::combinat::types_of(n) {
                for z in ktableaux_of(&ty) {
                    let t = rho(&z);
                    assert_eq!(
                        t.shape().factorial_product(),
                        crate::algebra::factorial(ty.k() as u64) * ty.mu().factorial_product()
                    );
                }
            }
        }
    }

    #[test]
    fn single_column_fiber() {
        let t = Tableau::new((1..=4).map(|i| vec![i]).collect()).unwrap();
        assert_eq!(rho_fiber(&t), vec![ktab(&[1], &[&[2], &[3], &[4]])]);
    }

    #[test]
    fn two_one_fiber() {
        let t = tab(&[&[1, 2], &[3]]);
        let fiber = rho_fiber(&t);
        assert_eq!(fiber, vec![ktab(&[1, 2], &[&[3]])]);
        let total: BigInt = fiber.iter().map(|z| g_index_k(z).product()).sum();
        assert_eq!(total, g_index(&t).product());
    }

    #[test]
    fn fibers_are_preimages() {
        for n in 1..=6 {
            for t in syt_all(n) {
                let fiber = rho_fiber(&t);
                assert!(!fiber.is_empty());
                for z in &fiber {
                    assert_eq!(rho(z), t);
                }
            }
        }
    }

    #[test]
    fn gamma_split_of_bottom_end() {
        for n in 2..=6 {
            for t in syt_all(n) {
                let split = gamma_decompose_fiber(&t);
                for z in split.gamma2.iter().chain(&split.gamma4) {
                    assert_eq!(z.bottom().last(), Some(&n));
                }
                for z in split.gamma1.iter().chain(&split.gamma3) {
                    assert!(z.top_position(n).is_some());
                }
            }
        }
    }

    #[test]
    fn gamma_one_and_two_pair_up() {
        for n in 2..=6 {
            for t in syt_all(n) {
                let split = gamma_decompose_fiber(&t);
                let mut a: Vec<KTableau> = split.gamma1.iter().map(|z| z.restrict(n - 1)).collect();
                let mut b: Vec<KTableau> = split.gamma2.iter().map(|z| z.restrict(n - 1)).collect();
                a.sort();
                b.sort();
                assert_eq!(a, b, "{t}");
                for z in &split.gamma2 {
                    assert_eq!(g_index_k(z).get(n), 1);
                }
            }
        }
    }

    #[test]
    fn rendering_is_bottom_up() {
        let t = tab(&[&[1, 3, 7], &[2, 5], &[4, 6]]);
        assert_eq!(t.to_string(), "4 6\n2 5\n1 3 7\n");
        assert_eq!(sample_z().to_string(), "4 6\n2 3 7\n=====\n1 5\n");
    }
}
