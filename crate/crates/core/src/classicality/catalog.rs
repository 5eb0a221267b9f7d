//! Witness catalog: guarded refuting sequents, one JSON object per line.
//!
//! ```text
//! {"relation": "st", "guard": [{"table": "and", "in": "nn", "out": "1"}],
//!  "sequent": "p & ~p |- q", "direction": "classical-but-not-X-valid",
//!  "valuation": {"p": "n", "q": "0"}}
//! ```
//!
//! A guard is a conjunction of cell conditions. A condition holds when some
//! input matching `in` yields an output in `out`; `in` has one character per
//! argument from `1`, `n`, `0`, or `*` for any value. The built-in catalog
//! can be replaced by pointing `TRIVALENT_CATALOG` at another file.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::CatalogError;
use crate::semantics::{self, NamedRelation, Valuation};
use crate::syntax::{parse_sequent, Sequent};
use crate::table::{Connective, Scheme};
use crate::value::{TruthValue, ValueSet};

use super::{search, Direction, Witness};

/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "TRIVALENT_CATALOG";

const BUILTIN: &str = include_str!("../../data/catalog.jsonl");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCondition {
    pub table: Connective,
    /// `None` matches any value.
    pub pattern: Vec<Option<TruthValue>>,
    pub out: ValueSet,
}

impl CellCondition {
    pub fn holds(&self, scheme: &Scheme) -> bool {
        let choices = |p: Option<TruthValue>| match p {
            Some(v) => vec![v],
            None => TruthValue::ALL.to_vec(),
        };
        match self.pattern.as_slice() {
            [x] => choices(*x).into_iter().any(|x| self.out.contains(scheme.neg.apply(x))),
            [x, y] => {
                let table = if self.table == Connective::And { &scheme.and } else { &scheme.or };
                choices(*x)
                    .into_iter()
                    .any(|x| choices(*y).into_iter().any(|y| self.out.contains(table.apply(x, y))))
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub line: usize,
    pub relation: NamedRelation,
    pub guard: Vec<CellCondition>,
    pub sequent: Sequent,
    pub direction: Direction,
    pub valuation: Option<Valuation>,
}

impl CatalogEntry {
    pub fn guard_holds(&self, scheme: &Scheme) -> bool {
        self.guard.iter().all(|c| c.holds(scheme))
    }

    /// The entry as a witness for `scheme`, if the sequent really separates
    /// the two logics in the recorded direction. The recorded valuation is
    /// kept when it refutes; otherwise one is computed.
    pub fn witness(&self, scheme: &Scheme) -> Option<Witness> {
        let rel = self.relation.relation();
        let recorded = self.valuation.clone().filter(|v| match self.direction {
            Direction::ClassicalButNotValid => semantics::refutes(v, &self.sequent, scheme, &rel).unwrap_or(false),
            Direction::ValidButNotClassical => semantics::classically_refutes(v, &self.sequent).unwrap_or(false),
        });
        let valid = semantics::sequent_valid(&self.sequent, scheme, &rel).ok()?;
        let classical = semantics::classically_valid(&self.sequent).ok()?;
        let separates = match self.direction {
            Direction::ClassicalButNotValid => classical && !valid,
            Direction::ValidButNotClassical => valid && !classical,
        };
        if !separates {
            return None;
        }
        let valuation = recorded
            .unwrap_or_else(|| search::counter_valuation(&self.sequent, scheme, &rel, self.direction));
        Some(Witness { sequent: self.sequent.clone(), valuation, direction: self.direction })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCondition {
    table: String,
    #[serde(rename = "in")]
    input: String,
    out: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    relation: String,
    #[serde(default)]
    guard: Vec<RawCondition>,
    sequent: String,
    direction: String,
    #[serde(default)]
    valuation: Option<Valuation>,
    #[serde(default)]
    #[allow(dead_code)]
    note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut entries = Vec::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw_line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |message: String| CatalogError::Entry { line, message };
            let raw: RawEntry = serde_json::from_str(trimmed).map_err(|e| err(e.to_string()))?;
            let relation: NamedRelation = raw.relation.parse().map_err(err)?;
            let sequent = parse_sequent(&raw.sequent).map_err(|e| err(e.to_string()))?;
            let direction =
                Direction::parse(&raw.direction).ok_or_else(|| err(format!("unknown direction {:?}", raw.direction)))?;
            let mut guard = Vec::new();
            for c in raw.guard {
                let table: Connective = c.table.parse().map_err(err)?;
                let pattern = c
                    .input
                    .chars()
                    .map(|ch| match ch {
                        '*' => Ok(None),
                        other => TruthValue::from_char(other)
                            .map(Some)
                            .ok_or_else(|| err(format!("bad input character {other:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if pattern.len() != table.arity() {
                    return Err(err(format!("{table} takes {} inputs, got {:?}", table.arity(), c.input)));
                }
                let out = ValueSet::parse(&c.out)
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| err(format!("bad output set {:?}", c.out)))?;
                guard.push(CellCondition { table, pattern, out });
            }
            entries.push(CatalogEntry { line, relation, guard, sequent, direction, valuation: raw.valuation });
        }
        Ok(Catalog { entries })
    }

    pub fn from_path(path: &Path) -> Result<Catalog, CatalogError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| CatalogError::Io { path: path.to_path_buf(), source })?;
        Catalog::parse(&text)
    }

    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN).expect("built-in catalog parses")
    }

    /// The catalog named by `TRIVALENT_CATALOG`, or the built-in one.
    pub fn load() -> Result<Catalog, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) if !path.is_empty() => Catalog::from_path(&PathBuf::from(path)),
            _ => Ok(Catalog::builtin()),
        }
    }

    /// Process-wide catalog, loaded on first use. Falls back to the built-in
    /// catalog if the override cannot be read; callers that need the error
    /// use [`Catalog::load`].
    pub fn default_catalog() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::load().unwrap_or_else(|_| Catalog::builtin()))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First entry for `relation` whose guard holds and whose sequent
    /// re-checks for `scheme`.
    pub fn witness_for(&self, scheme: &Scheme, relation: NamedRelation) -> Option<Witness> {
        self.entries
            .iter()
            .filter(|e| e.relation == relation && e.guard_holds(scheme))
            .find_map(|e| e.witness(scheme))
    }
}
