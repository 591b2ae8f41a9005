//! Identity suites behind `gindex verify`.
//!
//! Every check compares two independent constructions. Brute-force oracles
//! are used up to their enumeration caps; past a cap the comparison falls
//! back to the defining recurrence and the check name says so.

use std::collections::HashMap;
use std::fmt::Display;

use clap::ValueEnum;
use gindex::algebra::{double_factorial_odd, factorial, rat_int, DiffPolynomial, TruncSeries, UniPoly};
use gindex::combinat::{inv_seqs, type_of_seq, types_of};
use gindex::families::{self, FamilyId};
use gindex::grammars::{self, Grammar, MPoly};
use gindex::operator::{self, PTable};
use gindex::oracles::{self, PermStatistic, PERM_CAP, SIGNED_PERM_CAP, SIMSUN_CAP, STIRLING_PERM_CAP, TREE_CAP};
use gindex::tableaux::{self, g_index, g_index_k};
use gindex::{BigInt, Error, Result};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::output::first_difference;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Frozen rows of (cD)^n f for n <= 5, plus direct cD application.
    #[value(name = "table1")]
    Table,
    /// Recurrence, direct, inversion-sequence, Comtet and type-sum expansions.
    Expansion,
    /// p_{k,mu} by recurrence, k-Young tableaux and inversion sequences.
    Pkmu,
    /// A_n, C_n and S_n from g-indices of standard tableaux against oracles.
    SytFamilies,
    /// Sums of G_T, the two-column sum, rising factorial and Frobenius forms.
    Corollaries,
    /// Fibers of rho sum to G_T; the Gamma_1 / Gamma_2 pairing.
    Fibers,
    /// The two series identities for C_n(x; k+1) and A_n^(k), plus the classical ones.
    #[value(name = "thm1.1")]
    Series,
    /// Dumont and Andre grammars, and the (uD_G)^n expansion on random grammars.
    Grammar,
    /// Family recurrences against permutation, tree and Stirling-permutation oracles.
    Families,
    /// Aggregates of a(n, lambda): Stirling numbers of both kinds and Eulerian numbers.
    #[value(name = "prop2.2")]
    ASums,
    /// Every suite above.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Table => "table1",
            Suite::Expansion => "expansion",
            Suite::Pkmu => "pkmu",
            Suite::SytFamilies => "syt-families",
            Suite::Corollaries => "corollaries",
            Suite::Fibers => "fibers",
            Suite::Series => "thm1.1",
            Suite::Grammar => "grammar",
            Suite::Families => "families",
            Suite::ASums => "prop2.2",
            Suite::All => "all",
        }
    }

    const EACH: [Suite; 10] = [
        Suite::Table,
        Suite::Expansion,
        Suite::Pkmu,
        Suite::SytFamilies,
        Suite::Corollaries,
        Suite::Fibers,
        Suite::Series,
        Suite::Grammar,
        Suite::Families,
        Suite::ASums,
    ];

    /// `(default nmax, largest accepted nmax)`.
    fn n_range(self) -> (u32, u32) {
        match self {
            Suite::Table => (5, 10),
            Suite::Expansion => (8, 10),
            Suite::Pkmu => (8, 10),
            Suite::SytFamilies => (8, 10),
            Suite::Corollaries => (9, 10),
            Suite::Fibers => (7, 8),
            Suite::Series => (5, 12),
            Suite::Grammar => (8, 12),
            Suite::Families => (6, 8),
            Suite::ASums => (9, 10),
            Suite::All => (0, 8),
        }
    }
}

pub const KMAX_CAP: u32 = 4;

pub struct Params {
    pub nmax: Option<u32>,
    pub kmax: Option<u32>,
    pub order: usize,
    pub seed: u64,
}

pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub failure: Option<String>,
}

type Outcome = std::result::Result<(), String>;

#[derive(Default)]
pub struct Report {
    pub checks: Vec<Check>,
    suite: &'static str,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    fn push(&mut self, name: impl Into<String>, outcome: Outcome) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            failure: outcome.err(),
        });
    }
}

fn same<T: PartialEq + Display>(a: &T, b: &T) -> Outcome {
    if a == b {
        Ok(())
    } else {
        Err(format!("{a} vs {b}"))
    }
}

fn same_expansion(what: &str, a: &DiffPolynomial, b: &DiffPolynomial) -> Outcome {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {}", first_difference(a, b)))
    }
}

fn same_series(a: &TruncSeries, b: &TruncSeries) -> Outcome {
    match (0..a.order()).find(|&i| a.coeff(i) != b.coeff(i)) {
        None => Ok(()),
        Some(i) => Err(format!("coefficient of x^{i}: {} vs {}", a.coeff(i), b.coeff(i))),
    }
}

pub fn run(suite: Suite, p: &Params) -> Result<Report> {
    let mut report = Report::default();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    if let Some(n) = p.nmax {
        let cap = suite.n_range().1;
        if n > cap {
            return Err(Error::SizeCap { what: suite.name(), n: n as usize, cap: cap as usize });
        }
        if n == 0 {
            return Err(Error::InvalidInput("--nmax must be at least 1".into()));
        }
    }
    if let Some(k) = p.kmax {
        if k > KMAX_CAP {
            return Err(Error::SizeCap { what: "kmax", n: k as usize, cap: KMAX_CAP as usize });
        }
        if k == 0 {
            return Err(Error::InvalidInput("--kmax must be at least 1".into()));
        }
    }
    for s in suites {
        let (default, cap) = s.n_range();
        let nmax = p.nmax.map_or(default, |n| n.min(cap));
        report.suite = s.name();
        match s {
            Suite::Table => table1(nmax, &mut report)?,
            Suite::Expansion => expansion(nmax, &mut report)?,
            Suite::Pkmu => pkmu(nmax, &mut report)?,
            Suite::SytFamilies => syt_families(nmax, &mut report)?,
            Suite::Corollaries => corollaries(nmax, &mut report)?,
            Suite::Fibers => fibers(nmax, &mut report),
            Suite::Series => thm11(nmax, p.kmax.unwrap_or(3), p.order, &mut report)?,
            Suite::Grammar => grammar(nmax, p.seed, &mut report)?,
            Suite::Families => families_suite(nmax, p.kmax.unwrap_or(3), &mut report)?,
            Suite::ASums => prop22(nmax, &mut report)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(report)
}

/// Rows of (cD)^n f, n = 1..5, as published.
const TABLE_ROWS: [&str; 5] = [
    "(c) f1",
    "(c c1) f1 + (c^2) f2",
    "(c c1^2 + c^2 c2) f1 + (3 c^2 c1) f2 + (c^3) f3",
    "(c c1^3 + 4 c^2 c1 c2 + c^3 c3) f1 + (7 c^2 c1^2 + 4 c^3 c2) f2 + (6 c^3 c1) f3 + (c^4) f4",
    "(c c1^4 + 11 c^2 c1^2 c2 + 4 c^3 c2^2 + 7 c^3 c1 c3 + c^4 c4) f1 + (15 c^2 c1^3 + 30 c^3 c1 c2 + 5 c^4 c3) f2 + (25 c^3 c1^2 + 10 c^4 c2) f3 + (10 c^4 c1) f4 + (c^5) f5",
];

fn table1(nmax: u32, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        let e = operator::expand_recurrence(n)?;
        if let Some(row) = TABLE_ROWS.get(n as usize - 1) {
            let frozen: DiffPolynomial = row.parse()?;
            let outcome = same_expansion("recurrence vs table", e.body(), &frozen).and_then(|()| {
                let text = e.to_string();
                if text == *row {
                    Ok(())
                } else {
                    Err(format!("rendered `{text}`"))
                }
            });
            r.push(format!("table row n = {n}"), outcome);
        }
        let d = operator::expand_direct(n)?;
        r.push(format!("direct cD, n = {n}"), same_expansion("recurrence vs direct", e.body(), d.body()));
    }
    Ok(())
}

fn expansion(nmax: u32, r: &mut Report) -> Result<()> {
    let table = PTable::new();
    for n in 1..=nmax {
        let e = operator::expand_recurrence(n)?;
        let others = [
            ("direct", operator::expand_direct(n)?),
            ("inversion sequences", operator::expand_inversion(n)?),
            ("Comtet", operator::expand_comtet(n)?),
            ("type sum", operator::expand_types(n, &table)?),
        ];
        for (what, o) in others {
            r.push(format!("n = {n}: recurrence vs {what}"), same_expansion(what, e.body(), o.body()));
        }
        let homogeneous = if e.is_homogeneous() { Ok(()) } else { Err(format!("{e}")) };
        r.push(format!("n = {n}: homogeneity"), homogeneous);
    }
    Ok(())
}

fn pkmu(nmax: u32, r: &mut Report) -> Result<()> {
    let table = PTable::new();
    for n in 1..=nmax {
        let mut tally: HashMap<_, u64> = HashMap::new();
        for e in inv_seqs(n as usize) {
            *tally.entry(type_of_seq(&e)).or_default() += 1;
        }
        let mut count = 0;
        let mut outcome = Ok(());
        for t in types_of(n) {
            count += 1;
            let rec = table.p(&t);
            let tab: BigInt = tableaux::ktableaux_of(&t).iter().map(|z| g_index_k(z).product()).sum();
            let en = BigInt::from(tally.get(&t).copied().unwrap_or(0));
            if rec != tab || rec != en {
                outcome = Err(format!("p{t}: recurrence {rec}, tableaux {tab}, inversion sequences {en}"));
                break;
            }
        }
        r.push(format!("n = {n}: {count} types, three methods"), outcome);
    }
    Ok(())
}

fn syt_families(nmax: u32, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        let nu = n as usize;
        let a = families::eulerian_syt(n);
        if nu <= PERM_CAP {
            let o = oracles::perm_poly(nu, PermStatistic::DesFinal)?;
            r.push(format!("A_{n}: tableaux vs descents"), same(&a, &o));
        } else {
            r.push(format!("A_{n}: tableaux vs recurrence"), same(&a, &families::eulerian(n)));
        }
        let c = families::second_order_syt(n);
        if 2 * nu <= STIRLING_PERM_CAP {
            let o = oracles::stirling_des_poly(nu, 2)?;
            r.push(format!("C_{n}: tableaux vs Stirling permutations"), same(&c, &o));
        } else {
            r.push(format!("C_{n}: tableaux vs recurrence"), same(&c, &families::second_order(n, 2)));
        }
        let s = families::andre_syt(n);
        if nu <= SIMSUN_CAP {
            let o = oracles::simsun_poly(nu)?;
            r.push(format!("S_{n}: two-column tableaux vs simsun permutations"), same(&s, &o));
        } else {
            r.push(format!("S_{n}: two-column tableaux vs recurrence"), same(&s, &families::andre(n)));
        }
        let g = families::gamma_andre_syt(n);
        r.push(format!("gamma S_{n}: tableaux vs recurrence"), same(&g, &families::gamma_andre(n)));
    }
    Ok(())
}

fn corollaries(nmax: u32, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        let mut plain = BigInt::from(0);
        let mut weighted = BigInt::from(0);
        for t in tableaux::syt_all(n) {
            let g = g_index(&t).product();
            weighted += &g * t.shape().factorial_product();
            plain += g;
        }
        r.push(format!("n = {n}: sum of G_T = n!"), same(&plain, &factorial(n as u64)));
        r.push(
            format!("n = {n}: sum of G_T lambda! = (2n-1)!!"),
            same(&weighted, &double_factorial_odd(n as u64)),
        );
        let two: BigInt = tableaux::syt_two_columns(n).iter().map(|t| g_index(t).product()).sum();
        if (n as usize) < SIMSUN_CAP {
            let e = oracles::alternating_count(n as usize + 1)?;
            r.push(format!("n = {n}: two-column sum vs alternating permutations"), same(&two, &e));
        } else {
            let e = families::andre(n).eval(&rat_int(1));
            r.push(format!("n = {n}: two-column sum vs S_n(1)"), same(&rat_int(two), &e));
        }
        let (lhs, rhs) = operator::rising_factorial_check(n)?;
        r.push(format!("n = {n}: k-Young tableaux give x(x+1)...(x+n-1)"), same(&lhs, &rhs));
        let mut outcome = Ok(());
        for k in 1..=n {
            let via = operator::stirling2_via_tableaux(n, k)?;
            let s2 = oracles::stirling2(n as usize, k as usize);
            if via != s2 {
                outcome = Err(format!("k = {k}: {via} vs {s2}"));
                break;
            }
        }
        r.push(format!("n = {n}: S(n,k) from tableaux of type (k, 1^(n-k))"), outcome);
        let frob = if families::frobenius_check(n)? {
            Ok(())
        } else {
            let (a, b) = families::frobenius_forms(n)?;
            Err(format!("{a} / {b} vs {}", families::eulerian(n)))
        };
        r.push(format!("n = {n}: Frobenius formula"), frob);
    }
    Ok(())
}

fn fibers(nmax: u32, r: &mut Report) {
    for n in 1..=nmax {
        let mut sums = Ok(());
        let mut pairing = Ok(());
        for t in tableaux::syt_all(n) {
            let fiber = tableaux::rho_fiber(&t);
            let total: BigInt = fiber.iter().map(|z| g_index_k(z).product()).sum();
            let g = g_index(&t).product();
            if sums.is_ok() && total != g {
                sums = Err(format!("fiber sums to {total}, G_T = {g}, T =\n{t}"));
            }
            if pairing.is_ok() {
                let split = tableaux::gamma_decompose_fiber(&t);
                if split.gamma1.len() != split.gamma2.len() {
                    pairing = Err(format!(
                        "|Gamma_1| = {}, |Gamma_2| = {}, T =\n{t}",
                        split.gamma1.len(),
                        split.gamma2.len()
                    ));
                } else if let Some(z) = split.gamma2.iter().find(|z| g_index_k(z).get(n) != 1) {
                    pairing = Err(format!("g(n) != 1 on Gamma_2 element\n{z}"));
                }
            }
        }
        r.push(format!("n = {n}: fibers of rho sum to G_T"), sums);
        r.push(format!("n = {n}: Gamma_1 and Gamma_2 pair up"), pairing);
    }
}

fn thm11(nmax: u32, kmax: u32, order: usize, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        for k in 1..=kmax {
            let lhs = families::c_series_lhs(n, k, order)?;
            let rhs = TruncSeries::from_poly(&families::second_order(n, k + 1), order);
            r.push(format!("n = {n}, k = {k}: C_n(x; k+1) identity"), same_series(&lhs, &rhs));
            let lhs = families::a_k_series_lhs(n, k, order)?;
            let rhs = TruncSeries::from_poly(&families::one_over_k(n, k).reversed(n as usize), order);
            r.push(format!("n = {n}, k = {k}: A_n^(k) identity"), same_series(&lhs, &rhs));
        }
        let rhs = TruncSeries::from_poly(&families::eulerian(n), order);
        r.push(format!("n = {n}: power sums give A_n"), same_series(&families::power_sum_series(n, order)?, &rhs));
        let rhs = TruncSeries::from_poly(&families::second_order(n, 2), order);
        r.push(format!("n = {n}: Stirling series gives C_n"), same_series(&families::stirling_series(n, order)?, &rhs));
    }
    Ok(())
}

fn grammar(nmax: u32, seed: u64, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        r.push(format!("n = {n}: Dumont grammar gives A_n"), same(&families::eulerian_dumont(n), &families::eulerian(n)));
        let (g1, g2) = families::andre_grammar_slices(n);
        let s = families::andre(n);
        r.push(format!("n = {n}: G_1 gives S_n"), same(&g1, &s));
        r.push(format!("n = {n}: G_2 gives S_n"), same(&g2, &s));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let top = nmax.min(5);
    for i in 0..20 {
        let g = grammars::random_grammar(&mut rng);
        let u = MPoly::var(g.alphabet().next().expect("nonempty alphabet").as_str());
        let target = grammars::random_poly(&mut rng, &g);
        let mut outcome = Ok(());
        for n in 1..=top {
            if !grammars::u_dg_expansion_check(&g, &u, &target, n)? {
                outcome = Err(format!("grammar `{g}`, u = {u}, target = {target}, n = {n}"));
                break;
            }
        }
        r.push(format!("random grammar {i}: (uD_G)^n expansion, n <= {top}"), outcome);
    }
    let g2 = Grammar::andre_g2();
    let x = MPoly::var("x");
    let top = nmax.min(6);
    let ok = (1..=top).try_fold(true, |ok, n| Ok::<_, Error>(ok && grammars::u_dg_expansion_check(&g2, &x, &x, n)?))?;
    r.push(format!("G_2 with u = x: (uD_G)^n x, n <= {top}"), if ok { Ok(()) } else { Err("mismatch".into()) });
    Ok(())
}

fn families_suite(nmax: u32, kmax: u32, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        let nu = n as usize;
        for k in 1..=kmax {
            let rec = families::one_over_k(n, k);
            if nu <= PERM_CAP {
                r.push(format!("A_{n}^({k}): recurrence vs exc/cyc"), same(&rec, &oracles::exc_cyc_poly(nu, k)?));
            }
            let si = families::one_over_k_s_inversions(n, k)?;
            r.push(format!("A_{n}^({k}): recurrence vs s-inversion ascents"), same(&rec, &si));
            if k == 2 && 2 * nu <= STIRLING_PERM_CAP {
                let ap = oracles::stirling_ap_poly(nu, 2)?;
                r.push(format!("A_{n}^(2): recurrence vs ascent plateaus"), same(&rec, &ap));
            }
        }
        let s = families::andre(n);
        if nu <= SIMSUN_CAP {
            r.push(format!("S_{n}: recurrence vs simsun permutations"), same(&s, &oracles::simsun_poly(nu)?));
        }
        if nu <= TREE_CAP {
            r.push(format!("S_{n}: recurrence vs 0-1-2 trees"), same(&s, &oracles::trees012_leaf_poly(nu)?));
        }
        if 2 * nu <= STIRLING_PERM_CAP {
            let lap = oracles::stirling_lap_poly(nu)?;
            r.push(format!("N_{n}: reversal vs left ascent plateaus"), same(&families::left_ascent_plateau(n), &lap));
        }
        if nu <= SIGNED_PERM_CAP {
            let b = oracles::signed_des_poly(nu)?;
            r.push(format!("B_{n}: convolution vs signed permutations"), same(&families::type_b(n), &b));
        }
        let two_n = rat_int(BigInt::from(2).pow(n));
        r.push(
            format!("n = {n}: binomial convolution of N_i is 2^n A_n"),
            same(&families::lap_self_convolution(n), &families::eulerian(n).scale(&two_n)),
        );
        let g = families::gamma_checks(n)?;
        let gamma = if g.all() { Ok(()) } else { Err(format!("{g:?}")) };
        r.push(format!("n = {n}: gamma expansions of A_n and A_(n+1)"), gamma);
    }
    let s3 = FamilyId::Andre.poly(3)?;
    r.push("S_3 = x + 4x^2", same(&s3, &UniPoly::from_ints([0, 1, 4])));
    Ok(())
}

fn prop22(nmax: u32, r: &mut Report) -> Result<()> {
    for n in 1..=nmax {
        let s = operator::a_sums(n)?;
        let eul = &oracles::eulerian_triangle(n as usize)[n as usize];
        let mut first = Ok(());
        let mut second = Ok(());
        let mut eulerian = Ok(());
        for k in 1..=n as usize {
            let c1 = oracles::stirling1(n as usize, k);
            let s2 = oracles::stirling2(n as usize, k);
            if first.is_ok() && s.by_weight[k] != c1 {
                first = Err(format!("k = {k}: {} vs {c1}", s.by_weight[k]));
            }
            if second.is_ok() && s.all_ones[k] != s2 {
                second = Err(format!("k = {k}: {} vs {s2}", s.all_ones[k]));
            }
            if eulerian.is_ok() && s.by_length[k] != eul[k] {
                eulerian = Err(format!("k = {k}: {} vs {}", s.by_length[k], eul[k]));
            }
        }
        r.push(format!("n = {n}: sums over lambda |- n-k are c(n,k)"), first);
        r.push(format!("n = {n}: a(n, 1^(n-k)) = S(n,k)"), second);
        r.push(format!("n = {n}: sums over l(lambda) = n-k are Eulerian numbers"), eulerian);
    }
    Ok(())
}
