//! `gindex`: expansions of (cD)^n, g-indices of Young tableaux, Eulerian-type
//! families and the identity suites that cross-check them.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage error, 3 size cap
//! or truncation error.

mod cache;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gindex::algebra::UniPoly;
use gindex::combinat::{types_of, Partition, TypeKMu};
use gindex::families::FamilyId;
use gindex::grammars::{self, Grammar, MPoly};
use gindex::operator::{self, PMethod, PTable, ENUMERATION_CAP};
use gindex::oracles::{self, PermStatistic};
use gindex::tableaux::{self, g_index, g_index_k, KTableau, Tableau};
use gindex::BigInt;
use serde_json::{json, Value};

use crate::output::{g_line, parse_list, render};
use crate::suites::{Params, Suite};

const EXPAND_CAP: u32 = 10;
const TABLEAU_GROUPING_CAP: u32 = 8;
const SYT_CAP: u32 = 10;
const KTABLEAU_CAP: u32 = 9;
const FAMILY_CAP: u32 = 200;
const GRAMMAR_CAP: u32 = 12;

#[derive(Parser)]
#[command(name = "gindex", version, about = "Exact expansions of (cD)^n, g-indices of k-Young tableaux and Eulerian-type polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand (cD)^n f.
    Expand(ExpandArgs),
    /// Run an identity suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// One row of a polynomial family, or its b-file.
    Family(FamilyArgs),
    /// List standard Young tableaux or k-Young tableaux.
    Tableaux(TableauxArgs),
    /// p_{k,mu}, the coefficient of c c_mu1 ... c_mu(n-1) f_k.
    Pkmu(PkmuArgs),
    /// Brute-force enumeration oracles.
    Oracle(OracleArgs),
    /// Apply a context-free grammar, e.g. `x -> x*y; y -> x`.
    Grammar(GrammarArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
    Bfile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Grouping {
    /// By f_k, then monomial.
    Raw,
    /// One record per type (k, mu) with p_{k,mu}.
    Type,
    /// Each type with its k-Young tableaux and their G_Z.
    Tableau,
}

#[derive(Args)]
struct ExpandArgs {
    /// Order n, 1..=10.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Grouping::Raw)]
    grouping: Grouping,
    /// text, json or latex (latex only for raw grouping).
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest n checked; each suite has its own default and cap.
    #[arg(long)]
    nmax: Option<u32>,
    /// Largest k for the series and 1/k-Eulerian checks (default 3).
    #[arg(long)]
    kmax: Option<u32>,
    /// Truncation order for series identities.
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Seed for the random grammars.
    #[arg(long, default_value_t = 20)]
    seed: u64,
    /// text or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FamilyArgs {
    /// eulerian, eulerian-classic, second-order, one-over-k, left-ascent-plateau,
    /// type-b, andre, gamma-eulerian or gamma-andre.
    #[arg(long)]
    id: String,
    #[arg(long)]
    n: u32,
    /// Parameter of second-order and one-over-k.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// text (row n), json (rows up to n) or bfile (rows up to n).
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TableauxArgs {
    #[arg(long)]
    n: u32,
    /// Only standard tableaux of this shape, e.g. 3,2.
    #[arg(long, conflicts_with_all = ["shape_k", "shape_mu"])]
    shape: Option<String>,
    /// List k-Young tableaux of type (k, mu) instead.
    #[arg(long, requires = "shape_mu")]
    shape_k: Option<u32>,
    /// Parts of mu, e.g. 3,2 (zeros may be omitted).
    #[arg(long, requires = "shape_k", allow_hyphen_values = true)]
    shape_mu: Option<String>,
    /// Print each g-vector and G.
    #[arg(long)]
    g_index: bool,
    /// For standard tableaux, also print the fiber of rho with each G_Z.
    #[arg(long)]
    fibers: bool,
    /// text or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Tableau,
    Enumeration,
    /// All three, failing if they disagree.
    All,
}

#[derive(Args)]
struct PkmuArgs {
    #[arg(long)]
    k: u32,
    /// Parts of mu, e.g. 2,1,1; zeros may be omitted.
    #[arg(long, default_value = "")]
    mu: String,
    /// Defaults to k + |mu|.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    method: Method,
    /// JSON cache of recurrence values, read before and written after.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// text or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleName {
    /// Descents of permutations, final index included.
    Des,
    /// Classical descents of permutations.
    DesClassic,
    Exc,
    Cyc,
    Peaks,
    /// x^exc k^cyc over permutations; uses --k.
    ExcCyc,
    /// Descents of Stirling permutations of order --k.
    StirlingDes,
    /// Ascent plateaus of Stirling permutations of order --k.
    StirlingAp,
    /// Left ascent plateaus of Stirling permutations of order 2.
    StirlingLap,
    /// Descents of simsun permutations.
    Simsun,
    /// Leaves of 0-1-2 increasing trees.
    Trees012,
    /// Type-B descents of signed permutations.
    SignedDes,
    /// Permutations by peaks with no exterior double descents.
    PeakGamma,
    /// Number of simsun permutations.
    SimsunCount,
    /// Number of alternating permutations.
    Alternating,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    name: OracleName,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// text, json or bfile.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GrammarArgs {
    /// Rules such as `x -> x*y; y -> x`; see docs/grammar.md.
    #[arg(long)]
    rules: String,
    /// Polynomial to differentiate.
    #[arg(long)]
    target: String,
    /// Apply (uD_G)^n instead of D_G^n.
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    n: u32,
    /// Letters set to 1 in the result.
    #[arg(long, value_delimiter = ',')]
    set_one: Vec<String>,
    /// With --u, also compare against the k-Young tableau expansion.
    #[arg(long, requires = "u")]
    check: bool,
    /// text or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] gindex::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(gindex::Error::SizeCap { .. } | gindex::Error::Truncation { .. }) => 3,
            CliError::Usage(_) | CliError::Lib(_) | CliError::Io { .. } => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn cap(what: &'static str, n: u32, cap: u32) -> Result<(), CliError> {
    if n > cap {
        Err(gindex::Error::SizeCap { what, n: n as usize, cap: cap as usize }.into())
    } else {
        Ok(())
    }
}

fn formats(f: Format, allowed: &[Format], cmd: &str) -> Result<(), CliError> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        let names: Vec<_> = allowed
            .iter()
            .map(|a| a.to_possible_value().expect("no skipped variants").get_name().to_string())
            .collect();
        Err(usage(format!("{cmd} supports --format {}", names.join(", "))))
    }
}

/// Output text and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand(a) => expand(a).map(Outcome::from),
        Command::Verify(a) => verify(a),
        Command::Family(a) => family(a).map(Outcome::from),
        Command::Tableaux(a) => list_tableaux(a).map(Outcome::from),
        Command::Pkmu(a) => pkmu(a),
        Command::Oracle(a) => oracle(a).map(Outcome::from),
        Command::Grammar(a) => grammar(a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("gindex: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn expand(a: ExpandArgs) -> Result<String, CliError> {
    if a.n == 0 || a.n > EXPAND_CAP {
        return Err(usage(format!("--n must lie in 1..={EXPAND_CAP}")));
    }
    let n = a.n;
    match a.grouping {
        Grouping::Raw => {
            let e = operator::expand_recurrence(n)?;
            Ok(match a.format {
                Format::Text => format!("{e}\n"),
                Format::Json => render(&output::expansion(&e)),
                Format::Latex => {
                    let head = if n == 1 { "(cD)f".to_string() } else { format!("(cD)^{n}f") };
                    format!("{head}&={},\\\\\n", e.to_latex())
                }
                Format::Bfile => return Err(usage("expand supports --format text, json, latex")),
            })
        }
        Grouping::Type => {
            formats(a.format, &[Format::Text, Format::Json], "expand --grouping type")?;
            let table = PTable::global();
            let records: Vec<(TypeKMu, BigInt)> = types_of(n).map(|t| {
                let p = table.p(&t);
                (t, p)
            }).collect();
            if a.format == Format::Json {
                let types: Vec<Value> = records
                    .iter()
                    .map(|(t, p)| {
                        let mut v = output::kind(t);
                        v["p"] = output::int(p);
                        v
                    })
                    .collect();
                return Ok(render(&json!({ "n": n, "types": types })));
            }
            let mut out = String::new();
            for (t, p) in &records {
                let mono = output::type_monomial_text(operator::type_monomial(t));
                out.push_str(&format!("{t}  p = {p}  {mono}\n"));
            }
            Ok(out)
        }
        Grouping::Tableau => {
            formats(a.format, &[Format::Text, Format::Json], "expand --grouping tableau")?;
            cap("tableau grouping", n, TABLEAU_GROUPING_CAP)?;
            let mut text = String::new();
            let mut types = Vec::new();
            for t in types_of(n) {
                let zs = tableaux::ktableaux_of(&t);
                let gs: Vec<_> = zs.iter().map(g_index_k).collect();
                let p: BigInt = gs.iter().map(|g| g.product()).sum();
                text.push_str(&format!("type {t}  p = {p}\n"));
                for (z, g) in zs.iter().zip(&gs) {
                    text.push_str(&format!("{z}{}\n", g_line(g)));
                }
                text.push('\n');
                let records: Vec<Value> = zs.iter().zip(&gs).map(|(z, g)| output::with_g(output::ktableau(z), g)).collect();
                let mut v = output::kind(&t);
                v["p"] = output::int(&p);
                v["tableaux"] = Value::Array(records);
                types.push(v);
            }
            Ok(match a.format {
                Format::Json => render(&json!({ "n": n, "types": types })),
                _ => text,
            })
        }
    }
}

fn verify(a: VerifyArgs) -> Result<Outcome, CliError> {
    formats(a.format, &[Format::Text, Format::Json], "verify")?;
    let params = Params { nmax: a.nmax, kmax: a.kmax, order: a.order, seed: a.seed };
    let report = suites::run(a.suite, &params)?;
    let ok = report.passed();
    let failed = report.checks.iter().filter(|c| c.failure.is_some()).count();
    let text = if a.format == Format::Json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({ "suite": c.suite, "name": c.name, "pass": c.failure.is_none(), "detail": c.failure }))
            .collect();
        render(&json!({ "suite": a.suite.name(), "pass": ok, "failed": failed, "checks": checks }))
    } else {
        let mut out = String::new();
        for c in &report.checks {
            match &c.failure {
                None => out.push_str(&format!("PASS {}: {}\n", c.suite, c.name)),
                Some(why) => out.push_str(&format!("FAIL {}: {}\n  {}\n", c.suite, c.name, why.replace('\n', "\n  "))),
            }
        }
        let verdict = if ok { "pass" } else { "FAIL" };
        out.push_str(&format!("{} {}: {} checks, {failed} failed\n", a.suite.name(), verdict, report.checks.len()));
        out
    };
    Ok(Outcome { text, ok })
}

fn family(a: FamilyArgs) -> Result<String, CliError> {
    let id = FamilyId::from_name(&a.id, a.k)?;
    cap("family row", a.n, FAMILY_CAP)?;
    if a.n < id.first_n() {
        return Err(usage(format!("{id} starts at n = {}", id.first_n())));
    }
    Ok(match a.format {
        Format::Text => format!("{}\n", id.poly(a.n)?),
        Format::Json => {
            let rows = (id.first_n()..=a.n)
                .map(|n| id.poly(n).map(|p| output::poly_coeffs(&p)))
                .collect::<Result<Vec<_>, _>>()?;
            render(&json!({ "family": id.to_string(), "offset": id.first_n(), "rows": rows }))
        }
        Format::Bfile => id.bfile(a.n)?,
        Format::Latex => return Err(usage("family supports --format text, json, bfile")),
    })
}

enum Listed {
    Standard(Tableau),
    K(KTableau),
}

fn list_tableaux(a: TableauxArgs) -> Result<String, CliError> {
    formats(a.format, &[Format::Text, Format::Json], "tableaux")?;
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let listed: Vec<Listed> = if let (Some(k), Some(mu)) = (a.shape_k, &a.shape_mu) {
        cap("k-Young tableau listing", a.n, KTABLEAU_CAP)?;
        let mu = Partition::new(parse_list(mu).map_err(usage)?);
        let t = TypeKMu::new(a.n, k, mu)?;
        tableaux::ktableaux_of(&t).into_iter().map(Listed::K).collect()
    } else {
        cap("tableau listing", a.n, SYT_CAP)?;
        match &a.shape {
            Some(s) => {
                let lambda = Partition::from_parts(parse_list(s).map_err(usage)?)?;
                if lambda.weight() != a.n {
                    return Err(usage(format!("shape {lambda} is not a partition of {}", a.n)));
                }
                tableaux::syt_of_shape(&lambda).into_iter().map(Listed::Standard).collect()
            }
            None => tableaux::syt_all(a.n).into_iter().map(Listed::Standard).collect(),
        }
    };
    let mut text = String::new();
    let mut records = Vec::new();
    let mut total = BigInt::from(0);
    for item in &listed {
        let (shown, mut record, g) = match item {
            Listed::Standard(t) => (t.to_string(), output::tableau(t), g_index(t)),
            Listed::K(z) => (z.to_string(), output::ktableau(z), g_index_k(z)),
        };
        total += g.product();
        text.push_str(&shown);
        if a.g_index {
            text.push_str(&g_line(&g));
            text.push('\n');
            record = output::with_g(record, &g);
        }
        if let (true, Listed::Standard(t)) = (a.fibers, item) {
            let fiber = tableaux::rho_fiber(t);
            let mut fibers = Vec::new();
            let mut sum = BigInt::from(0);
            for z in &fiber {
                let gz = g_index_k(z);
                sum += gz.product();
                text.push_str(&format!("  fiber element:\n  {}  {}\n", z.to_string().trim_end().replace('\n', "\n  "), g_line(&gz)));
                fibers.push(output::with_g(output::ktableau(z), &gz));
            }
            text.push_str(&format!("  fiber sum = {sum}\n"));
            record["fiber"] = Value::Array(fibers);
        }
        text.push('\n');
        records.push(record);
    }
    if a.g_index {
        text.push_str(&format!("{} tableaux, sum of G = {total}\n", listed.len()));
    } else {
        text.push_str(&format!("{} tableaux\n", listed.len()));
    }
    Ok(match a.format {
        Format::Json => {
            let mut doc = json!({ "n": a.n, "count": listed.len(), "tableaux": records });
            if a.g_index {
                doc["sum_G"] = output::int(&total);
            }
            render(&doc)
        }
        _ => text,
    })
}

fn pkmu(a: PkmuArgs) -> Result<Outcome, CliError> {
    formats(a.format, &[Format::Text, Format::Json], "pkmu")?;
    let mu = Partition::new(parse_list(&a.mu).map_err(usage)?);
    let n = a.n.unwrap_or(a.k + mu.weight());
    let t = TypeKMu::new(n, a.k, mu)?;
    let table = PTable::new();
    if let Some(path) = &a.cache {
        cache::load(path, &table);
    }
    let methods: &[(Method, &str)] = match a.method {
        Method::All => &[(Method::Recurrence, "recurrence"), (Method::Tableau, "tableau"), (Method::Enumeration, "enumeration")],
        Method::Recurrence => &[(Method::Recurrence, "recurrence")],
        Method::Tableau => &[(Method::Tableau, "tableau")],
        Method::Enumeration => &[(Method::Enumeration, "enumeration")],
    };
    let mut values = Vec::new();
    for &(m, name) in methods {
        let v = match m {
            Method::Recurrence => table.p(&t),
            Method::Tableau => {
                cap("k-Young tableau enumeration", n, KTABLEAU_CAP + 1)?;
                operator::p_value(&t, PMethod::Tableau)?
            }
            _ => {
                cap("inversion sequence enumeration", n, ENUMERATION_CAP as u32)?;
                operator::p_value(&t, PMethod::Enumeration)?
            }
        };
        values.push((name, v));
    }
    if let Some(path) = &a.cache {
        cache::save(path, &table).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    let ok = values.windows(2).all(|w| w[0].1 == w[1].1);
    let text = if a.format == Format::Json {
        let mut v = output::kind(&t);
        v["n"] = json!(n);
        if values.len() == 1 {
            v["p"] = output::int(&values[0].1);
        } else {
            let by: serde_json::Map<String, Value> = values.iter().map(|(k, p)| (k.to_string(), output::int(p))).collect();
            v["p"] = Value::Object(by);
            v["agree"] = json!(ok);
        }
        render(&v)
    } else if values.len() == 1 {
        format!("{}\n", values[0].1)
    } else {
        values.iter().map(|(k, p)| format!("{k} {p}\n")).collect()
    };
    Ok(Outcome { text, ok })
}

enum OracleValue {
    Poly(Vec<BigInt>),
    Count(BigInt),
}

fn oracle(a: OracleArgs) -> Result<String, CliError> {
    formats(a.format, &[Format::Text, Format::Json, Format::Bfile], "oracle")?;
    let n = a.n;
    let k = a.k as usize;
    let poly = |p: UniPoly| OracleValue::Poly(p.int_coeffs().expect("integer counts"));
    let value = match a.name {
        OracleName::Des => poly(oracles::perm_poly(n, PermStatistic::DesFinal)?),
        OracleName::DesClassic => poly(oracles::perm_poly(n, PermStatistic::DesClassic)?),
        OracleName::Exc => poly(oracles::perm_poly(n, PermStatistic::Exc)?),
        OracleName::Cyc => poly(oracles::perm_poly(n, PermStatistic::Cyc)?),
        OracleName::Peaks => poly(oracles::perm_poly(n, PermStatistic::Peaks)?),
        OracleName::ExcCyc => poly(oracles::exc_cyc_poly(n, a.k)?),
        OracleName::StirlingDes => poly(oracles::stirling_des_poly(n, k)?),
        OracleName::StirlingAp => poly(oracles::stirling_ap_poly(n, k)?),
        OracleName::StirlingLap => poly(oracles::stirling_lap_poly(n)?),
        OracleName::Simsun => poly(oracles::simsun_poly(n)?),
        OracleName::Trees012 => poly(oracles::trees012_leaf_poly(n)?),
        OracleName::SignedDes => poly(oracles::signed_des_poly(n)?),
        OracleName::PeakGamma => OracleValue::Poly(oracles::peak_gamma(n)?),
        OracleName::SimsunCount => OracleValue::Count(oracles::simsun_count(n)?),
        OracleName::Alternating => OracleValue::Count(oracles::alternating_count(n)?),
    };
    let name = a.name.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(match (value, a.format) {
        (OracleValue::Poly(c), Format::Json) => render(&json!({ "oracle": name, "n": n, "coeffs": output::ints(&c) })),
        (OracleValue::Poly(c), Format::Bfile) => c.iter().enumerate().map(|(i, v)| format!("{i} {v}\n")).collect(),
        (OracleValue::Poly(c), _) => {
            let p = UniPoly::from_ints(c);
            format!("{p}\n")
        }
        (OracleValue::Count(v), Format::Json) => render(&json!({ "oracle": name, "n": n, "value": output::int(&v) })),
        (OracleValue::Count(v), Format::Bfile) => format!("{n} {v}\n"),
        (OracleValue::Count(v), _) => format!("{v}\n"),
    })
}

fn grammar(a: GrammarArgs) -> Result<Outcome, CliError> {
    formats(a.format, &[Format::Text, Format::Json], "grammar")?;
    cap("grammar iteration", a.n, GRAMMAR_CAP)?;
    let g: Grammar = a.rules.parse()?;
    let target: MPoly = a.target.parse()?;
    let u: Option<MPoly> = a.u.as_deref().map(str::parse).transpose()?;
    for p in std::iter::once(&target).chain(u.as_ref()) {
        if let Some(s) = p.letters().into_iter().find(|s| g.rule(s.as_str()).is_none()) {
            return Err(gindex::Error::UnknownLetter(s.to_string()).into());
        }
    }
    let mut result = match &u {
        Some(u) => g.u_power(u, &target, a.n)?,
        None => g.derive_n(&target, a.n)?,
    };
    let mut ok = true;
    if a.check {
        let u = u.as_ref().expect("clap enforces --u");
        cap("k-Young tableau expansion", a.n, KTABLEAU_CAP)?;
        ok = grammars::u_dg_expansion(&g, u, &target, a.n)? == result;
    }
    for letter in &a.set_one {
        result = result.set_to_one(letter);
    }
    let text = if a.format == Format::Json {
        let mut v = json!({ "grammar": g.to_string(), "n": a.n, "result": output::mpoly(&result) });
        if a.check {
            v["expansion_agrees"] = json!(ok);
        }
        render(&v)
    } else {
        let mut s = format!("{result}\n");
        if a.check {
            s.push_str(if ok { "expansion agrees\n" } else { "expansion DIFFERS\n" });
        }
        s
    };
    Ok(Outcome { text, ok })
}
