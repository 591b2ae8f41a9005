//! On-disk p-value cache: `{"schema": ..., "entries": {"k|mu": "p"}}`.
//!
//! Files with another schema tag, or that fail to parse, are ignored and
//! overwritten on save.

use std::fs;
use std::path::Path;

use gindex::operator::PTable;
use gindex::BigInt;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "gindex-pkmu-cache/1";

pub fn key(k: u32, mu: &[u32]) -> String {
    let parts: Vec<String> = mu.iter().filter(|&&m| m > 0).map(u32::to_string).collect();
    format!("{k}|{}", parts.join(","))
}

fn parse_key(s: &str) -> Option<(u32, Vec<u32>)> {
    let (k, mu) = s.split_once('|')?;
    let k = k.parse().ok()?;
    let mu = mu
        .split(',')
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().ok())
        .collect::<Option<Vec<u32>>>()?;
    Some((k, mu))
}

/// Seeds `table` from `path`; returns how many entries were read.
pub fn load(path: &Path, table: &PTable) -> usize {
    let Ok(text) = fs::read_to_string(path) else {
        return 0;
    };
    let Ok(doc) = serde_json::from_str::<Value>(&text) else {
        return 0;
    };
    if doc.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return 0;
    }
    let Some(entries) = doc.get("entries").and_then(Value::as_object) else {
        return 0;
    };
    let mut read = 0;
    for (k, v) in entries {
        let value = v.as_str().and_then(|s| s.parse::<BigInt>().ok());
        if let (Some((k, mu)), Some(value)) = (parse_key(k), value) {
            table.insert(k, mu, value);
            read += 1;
        }
    }
    read
}

pub fn save(path: &Path, table: &PTable) -> std::io::Result<()> {
    let mut entries = Map::new();
    for (k, mu, p) in table.entries() {
        entries.insert(key(k, &mu), Value::String(p.to_string()));
    }
    let doc = json!({ "schema": SCHEMA, "entries": entries });
    fs::write(path, crate::output::render(&doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        assert_eq!(key(3, &[2, 1, 1, 0, 0, 0]), "3|2,1,1");
        assert_eq!(key(4, &[]), "4|");
        assert_eq!(parse_key("3|2,1,1"), Some((3, vec![2, 1, 1])));
        assert_eq!(parse_key("4|"), Some((4, vec![])));
        assert_eq!(parse_key("x|1"), None);
    }
}
