//! JSON shapes and text helpers shared by the subcommands.

use gindex::algebra::{DiffPolynomial, MonomialKey, UniPoly};
use gindex::combinat::TypeKMu;
use gindex::grammars::MPoly;
use gindex::operator::Expansion;
use gindex::tableaux::{GIndexVector, KTableau, Tableau};
use gindex::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

pub fn ints<'a>(vs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(vs.into_iter().map(int).collect())
}

/// Pretty JSON with a trailing newline; the exact bytes any round trip must reproduce.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn poly_coeffs(p: &UniPoly) -> Value {
    ints(&p.int_coeffs().expect("integer polynomial"))
}

/// `{i: a_i}` over the nonzero exponents of `c_i`.
fn c_exponents(key: &MonomialKey) -> Value {
    let mut m = Map::new();
    for &(i, a) in key.c_exponents() {
        m.insert(i.to_string(), Value::from(a));
    }
    Value::Object(m)
}

/// `{n, slices: {k: [[coeff, {i: a_i}], ...]}}`.
pub fn expansion(e: &Expansion) -> Value {
    let mut slices = Map::new();
    for k in 1..=e.n() {
        let s = e.slice(k);
        if s.is_zero() {
            continue;
        }
        let terms: Vec<Value> = s.terms().map(|(key, c)| json!([int(c), c_exponents(key)])).collect();
        slices.insert(k.to_string(), Value::Array(terms));
    }
    json!({ "n": e.n(), "slices": slices })
}

pub fn kind(t: &TypeKMu) -> Value {
    json!({ "k": t.k(), "mu": t.padded_mu() })
}

/// `c c_mu1 ... f_k` without a coefficient, in the text rendering.
pub fn type_monomial_text(key: MonomialKey) -> String {
    DiffPolynomial::term(BigInt::from(1), key).to_string()
}

pub fn tableau(t: &Tableau) -> Value {
    json!({ "shape": t.shape().parts(), "rows": t.rows() })
}

pub fn ktableau(z: &KTableau) -> Value {
    json!({ "k": z.k(), "bottom": z.bottom(), "shape": z.mu().parts(), "rows": z.top() })
}

/// Adds `g` and `G` to a tableau record.
pub fn with_g(mut v: Value, g: &GIndexVector) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("g".into(), json!(g.values()));
        m.insert("G".into(), int(&g.product()));
    }
    v
}

/// `g = (1,1,2)  G = 1*1*2 = 2`.
pub fn g_line(g: &GIndexVector) -> String {
    let factors: Vec<String> = g.values().iter().map(u32::to_string).collect();
    format!("g = {g}  G = {} = {}", factors.join("*"), g.product())
}

/// `[[coeff, {"x": e, ...}], ...]`.
pub fn mpoly(p: &MPoly) -> Value {
    let terms = p
        .terms()
        .map(|(m, c)| {
            let mut e = Map::new();
            for (s, &k) in m {
                e.insert(s.as_str().to_string(), Value::from(k));
            }
            json!([int(c), e])
        })
        .collect();
    Value::Array(terms)
}

/// The first monomial whose coefficients differ, as `what: a vs b`.
pub fn first_difference(a: &DiffPolynomial, b: &DiffPolynomial) -> String {
    let keys = a.terms().chain(b.terms()).map(|(k, _)| k.clone());
    for key in keys {
        let (x, y) = (a.coeff(&key), b.coeff(&key));
        if x != y {
            return format!("coefficient of {}: {x} vs {y}", type_monomial_text(key));
        }
    }
    "no difference".into()
}

pub fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<u32>().map_err(|e| format!("bad list entry `{p}`: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_values_become_strings() {
        assert_eq!(int(&BigInt::from(7)), json!(7));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int(&big), json!("123456789012345678901234567890"));
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("2,1,1").unwrap(), vec![2, 1, 1]);
        assert_eq!(parse_list("").unwrap(), Vec::<u32>::new());
        assert!(parse_list("2,x").is_err());
    }
}
