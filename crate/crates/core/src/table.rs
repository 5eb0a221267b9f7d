//! Unary and binary truth tables, schemes, and the scheme text encoding.
//!
//! Rows and columns of every table follow the order `T, N, F`. A binary
//! table is stored row-major, so cell `3 * row + col` holds the output for
//! `(row value, column value)`. The text encoding writes each cell with the
//! alphabet `1`, `n`, `0`:
//!
//! ```text
//! NEG:0n1;AND:1n0nn0000;OR:1111nn1n0
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SchemeParseError;
use crate::value::TruthValue;

/// The three connectives of the language, used to name a scheme slot and its
/// classical counterpart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    Neg,
    And,
    Or,
}

impl Connective {
    pub const ALL: [Connective; 3] = [Connective::Neg, Connective::And, Connective::Or];

    pub fn arity(self) -> usize {
        match self {
            Connective::Neg => 1,
            Connective::And | Connective::Or => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Connective::Neg => "neg",
            Connective::And => "and",
            Connective::Or => "or",
        }
    }

    /// The two-valued operation (`1 - x`, `min`, `max`), applied to whatever
    /// values it is given. Callers pass Boolean inputs.
    pub fn classical(self, args: &[TruthValue]) -> TruthValue {
        match self {
            Connective::Neg => args[0].complement(),
            Connective::And => args[0].min(args[1]),
            Connective::Or => args[0].max(args[1]),
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Connective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "neg" | "not" | "~" | "¬" => Ok(Connective::Neg),
            "and" | "&" | "∧" => Ok(Connective::And),
            "or" | "|" | "∨" => Ok(Connective::Or),
            other => Err(format!("unknown connective {other:?}; expected neg, and or or")),
        }
    }
}

/// Common interface of unary and binary tables.
pub trait Operation {
    const ARITY: usize;

    /// Output for `args`, which must have length `ARITY`.
    fn output(&self, args: &[TruthValue]) -> TruthValue;

    /// Every input tuple in table order.
    fn inputs() -> Vec<Vec<TruthValue>> {
        let mut out = vec![Vec::new()];
        for _ in 0..Self::ARITY {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    TruthValue::TABLE_ORDER.into_iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        out
    }
}

macro_rules! table_type {
    ($name:ident, $len:expr) => {
        impl $name {
            pub const CELLS: usize = $len;

            pub const fn from_cells(cells: [TruthValue; $len]) -> Self {
                $name(cells)
            }

            pub const fn cells(&self) -> &[TruthValue; $len] {
                &self.0
            }

            /// Parses exactly `CELLS` characters from `{1, n, 0}`.
            pub fn parse(field: &'static str, text: &str) -> Result<Self, SchemeParseError> {
                let count = text.chars().count();
                if count != $len {
                    return Err(SchemeParseError::WrongLength { field, expected: $len, found: count });
                }
                let mut cells = [TruthValue::F; $len];
                for (i, c) in text.chars().enumerate() {
                    cells[i] = TruthValue::from_char(c).ok_or(SchemeParseError::InvalidChar {
                        field,
                        position: i + 1,
                        found: c,
                    })?;
                }
                Ok($name(cells))
            }

            /// Base-3 index of the table, first cell most significant, each
            /// digit the truth rank of the cell.
            pub fn index(&self) -> u32 {
                self.0.iter().fold(0, |acc, v| acc * 3 + v.rank() as u32)
            }

            /// Inverse of [`Self::index`]; `None` past the last table.
            pub fn from_index(mut index: u32) -> Option<Self> {
                if index >= Self::COUNT {
                    return None;
                }
                let mut cells = [TruthValue::F; $len];
                for cell in cells.iter_mut().rev() {
                    *cell = TruthValue::from_rank((index % 3) as u8).unwrap();
                    index /= 3;
                }
                Some($name(cells))
            }

            /// Number of distinct tables of this shape.
            pub const COUNT: u32 = 3u32.pow($len);

            pub fn all() -> impl Iterator<Item = Self> {
                (0..Self::COUNT).map(|i| Self::from_index(i).unwrap())
            }

            pub fn constant(v: TruthValue) -> Self {
                $name([v; $len])
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for v in &self.0 {
                    write!(f, "{}", v.to_char())?;
                }
                Ok(())
            }
        }
    };
}

/// Truth table of a unary operation; entries for inputs `T, N, F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryTable([TruthValue; 3]);

/// Truth table of a binary operation; 9 entries, row-major over `T, N, F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTable([TruthValue; 9]);

table_type!(UnaryTable, 3);
table_type!(BinaryTable, 9);

impl UnaryTable {
    #[inline]
    pub fn apply(&self, x: TruthValue) -> TruthValue {
        self.0[x.table_index()]
    }

    pub fn set(&mut self, x: TruthValue, out: TruthValue) {
        self.0[x.table_index()] = out;
    }
}

impl BinaryTable {
    #[inline]
    pub fn apply(&self, x: TruthValue, y: TruthValue) -> TruthValue {
        self.0[3 * x.table_index() + y.table_index()]
    }

    pub fn set(&mut self, x: TruthValue, y: TruthValue, out: TruthValue) {
        self.0[3 * x.table_index() + y.table_index()] = out;
    }
}

impl Operation for UnaryTable {
    const ARITY: usize = 1;

    fn output(&self, args: &[TruthValue]) -> TruthValue {
        self.apply(args[0])
    }
}

impl Operation for BinaryTable {
    const ARITY: usize = 2;

    fn output(&self, args: &[TruthValue]) -> TruthValue {
        self.apply(args[0], args[1])
    }
}

/// A triple of tables interpreting negation, conjunction and disjunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scheme {
    pub neg: UnaryTable,
    pub and: BinaryTable,
    pub or: BinaryTable,
}

/// JSON object form of a scheme: `{"neg": "0n1", "and": "...", "or": "..."}`.
#[derive(Debug, Serialize, Deserialize)]
struct SchemeObject {
    neg: String,
    and: String,
    or: String,
}

impl Scheme {
    pub const fn new(neg: UnaryTable, and: BinaryTable, or: BinaryTable) -> Scheme {
        Scheme { neg, and, or }
    }

    /// Min, max and `1 - x`.
    pub fn strong_kleene() -> Scheme {
        "NEG:0n1;AND:1n0nn0000;OR:1111nn1n0".parse().unwrap()
    }

    /// Canonical text encoding.
    pub fn encode(&self) -> String {
        format!("NEG:{};AND:{};OR:{}", self.neg, self.and, self.or)
    }

    /// Parses the canonical text encoding.
    pub fn decode(text: &str) -> Result<Scheme, SchemeParseError> {
        let text = text.trim();
        let mut rest = text;
        let mut offset = 0usize;
        let mut take = |label: &'static str, last: bool| -> Result<&str, SchemeParseError> {
            let body = rest.strip_prefix(label).ok_or(SchemeParseError::Malformed {
                offset,
                expected: label,
            })?;
            offset += label.len();
            let end = if last { body.len() } else { body.find(';').unwrap_or(body.len()) };
            let (field, tail) = body.split_at(end);
            if !last {
                if tail.is_empty() {
                    return Err(SchemeParseError::Malformed { offset: offset + field.len(), expected: ";" });
                }
                rest = &tail[1..];
                offset += field.len() + 1;
            }
            Ok(field)
        };
        let neg = take("NEG:", false)?;
        let and = take("AND:", false)?;
        let or = take("OR:", true)?;
        Ok(Scheme {
            neg: UnaryTable::parse("NEG", neg)?,
            and: BinaryTable::parse("AND", and)?,
            or: BinaryTable::parse("OR", or)?,
        })
    }

    /// Parses the JSON object form.
    pub fn from_json(text: &str) -> Result<Scheme, SchemeParseError> {
        let obj: SchemeObject =
            serde_json::from_str(text).map_err(|e| SchemeParseError::Json(e.to_string()))?;
        Ok(Scheme {
            neg: UnaryTable::parse("NEG", &obj.neg)?,
            and: BinaryTable::parse("AND", &obj.and)?,
            or: BinaryTable::parse("OR", &obj.or)?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "neg": self.neg.to_string(),
            "and": self.and.to_string(),
            "or": self.or.to_string(),
        })
    }

    /// Applies the table for `conn` to `args`.
    #[inline]
    pub fn apply(&self, conn: Connective, args: &[TruthValue]) -> TruthValue {
        match conn {
            Connective::Neg => self.neg.apply(args[0]),
            Connective::And => self.and.apply(args[0], args[1]),
            Connective::Or => self.or.apply(args[0], args[1]),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for Scheme {
    type Err = SchemeParseError;

    /// Accepts either the text encoding or the JSON object form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim_start().starts_with('{') {
            Scheme::from_json(s)
        } else {
            Scheme::decode(s)
        }
    }
}

impl Serialize for Scheme {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for Scheme {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let parsed = match &value {
            serde_json::Value::String(s) => Scheme::decode(s),
            serde_json::Value::Object(_) => Scheme::from_json(&value.to_string()),
            _ => return Err(serde::de::Error::custom("expected a scheme string or object")),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}
