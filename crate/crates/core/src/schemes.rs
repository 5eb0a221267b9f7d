//! Named example schemes, shipped as data alongside the witness catalog.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::SchemeParseError;
use crate::table::Scheme;

const BUILTIN: &str = include_str!("../data/schemes.jsonl");

#[derive(Clone, Debug, Deserialize)]
pub struct NamedScheme {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub description: String,
    pub scheme: Scheme,
}

pub fn all() -> &'static [NamedScheme] {
    static CELL: OnceLock<Vec<NamedScheme>> = OnceLock::new();
    CELL.get_or_init(|| {
        BUILTIN
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).expect("built-in scheme list parses"))
            .collect()
    })
}

/// Looks up a scheme by name or alias, case-insensitively.
pub fn named(name: &str) -> Result<Scheme, SchemeParseError> {
    let wanted = name.trim().to_ascii_lowercase();
    all()
        .iter()
        .find(|n| n.name == wanted || n.aliases.contains(&wanted))
        .map(|n| n.scheme)
        .ok_or_else(|| SchemeParseError::UnknownName(name.to_string()))
}

/// A name, the text encoding, or the JSON object form.
pub fn resolve(text: &str) -> Result<Scheme, SchemeParseError> {
    let t = text.trim();
    if t.starts_with('{') || t.contains(':') {
        t.parse()
    } else {
        named(t)
    }
}
