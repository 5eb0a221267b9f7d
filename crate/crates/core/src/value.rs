//! Truth values, sets of truth values, and the two collapsers.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three truth values.
///
/// The derived `Ord` is the truth order `F < N < T`. The information order
/// is available through [`TruthValue::info_le`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum TruthValue {
    F = 0,
    N = 1,
    T = 2,
}

impl TruthValue {
    /// All values in table order: rows and columns of every truth table are
    /// laid out as `T, N, F`.
    pub const TABLE_ORDER: [TruthValue; 3] = [TruthValue::T, TruthValue::N, TruthValue::F];

    /// All values in truth order.
    pub const ALL: [TruthValue; 3] = [TruthValue::F, TruthValue::N, TruthValue::T];

    pub const BOOLEAN: [TruthValue; 2] = [TruthValue::T, TruthValue::F];

    /// Rank in the truth order: 0 for `F`, 1 for `N`, 2 for `T`.
    #[inline]
    pub const fn rank(self) -> u8 {
        self as u8
    }

    #[inline]
    pub const fn from_rank(rank: u8) -> Option<TruthValue> {
        match rank {
            0 => Some(TruthValue::F),
            1 => Some(TruthValue::N),
            2 => Some(TruthValue::T),
            _ => None,
        }
    }

    /// Position of this value as a row or column index of a truth table.
    #[inline]
    pub const fn table_index(self) -> usize {
        2 - self as usize
    }

    #[inline]
    pub const fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::T
        } else {
            TruthValue::F
        }
    }

    #[inline]
    pub const fn is_boolean(self) -> bool {
        !matches!(self, TruthValue::N)
    }

    /// Character used by the scheme encoding: `'1'`, `'n'` or `'0'`.
    pub const fn to_char(self) -> char {
        match self {
            TruthValue::T => '1',
            TruthValue::N => 'n',
            TruthValue::F => '0',
        }
    }

    pub const fn from_char(c: char) -> Option<TruthValue> {
        match c {
            '1' => Some(TruthValue::T),
            'n' => Some(TruthValue::N),
            '0' => Some(TruthValue::F),
            _ => None,
        }
    }

    /// `self ≤_I other` in the information order, where `N` sits below both
    /// Boolean values and `T`, `F` are incomparable.
    #[inline]
    pub fn info_le(self, other: TruthValue) -> bool {
        self == TruthValue::N || self == other
    }

    /// Classical negation `1 - x`, extended to `N ↦ N`.
    #[inline]
    pub const fn complement(self) -> TruthValue {
        match self {
            TruthValue::T => TruthValue::F,
            TruthValue::N => TruthValue::N,
            TruthValue::F => TruthValue::T,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        serializer.serialize_str(self.to_char().encode_utf8(&mut buf))
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let mut chars = s.chars();
        match (chars.next().and_then(TruthValue::from_char), chars.next()) {
            (Some(v), None) => Ok(v),
            _ => Err(serde::de::Error::custom(format!(
                "expected one of \"1\", \"n\", \"0\", found {s:?}"
            ))),
        }
    }
}

/// A subset of the three truth values, stored as a 3-bit mask indexed by rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ValueSet(u8);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);
    pub const STRICT: ValueSet = ValueSet(1 << TruthValue::T as u8);
    pub const TOLERANT: ValueSet = ValueSet((1 << TruthValue::T as u8) | (1 << TruthValue::N as u8));
    pub const ALL: ValueSet = ValueSet(0b111);

    pub fn from_values(values: impl IntoIterator<Item = TruthValue>) -> ValueSet {
        ValueSet(values.into_iter().fold(0, |m, v| m | (1 << v.rank())))
    }

    #[inline]
    pub const fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn contains(self, v: TruthValue) -> bool {
        self.0 & (1 << v as u8) != 0
    }

    #[inline]
    pub const fn complement(self) -> ValueSet {
        ValueSet(!self.0 & 0b111)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = TruthValue> {
        TruthValue::TABLE_ORDER.into_iter().filter(move |v| self.contains(*v))
    }

    /// Parses a string of value characters such as `"1n"`.
    pub fn parse(text: &str) -> Option<ValueSet> {
        let mut set = ValueSet::EMPTY;
        for c in text.chars() {
            set.0 |= 1 << TruthValue::from_char(c)?.rank();
        }
        Some(set)
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.iter() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The map fixing `T` and `F` and sending `N` to `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Collapser {
    target: TruthValue,
}

impl Collapser {
    pub const TRUTH: Collapser = Collapser { target: TruthValue::T };
    pub const FALSITY: Collapser = Collapser { target: TruthValue::F };

    /// Returns `None` unless `target` is Boolean.
    pub fn new(target: TruthValue) -> Option<Collapser> {
        target.is_boolean().then_some(Collapser { target })
    }

    pub fn target(self) -> TruthValue {
        self.target
    }

    #[inline]
    pub fn apply(self, x: TruthValue) -> TruthValue {
        match x {
            TruthValue::N => self.target,
            other => other,
        }
    }
}
