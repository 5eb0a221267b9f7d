//! Exact counts of the schemes that are classical under each relation.
//!
//! Every classicality condition is a per-connective template, so a scheme
//! belongs to a family exactly when each of its three tables does. Counts
//! are therefore products of per-table counts over the 27 unary and 19,683
//! binary tables; the 10-billion-triple space is never walked.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;

use crate::classicality::cross::boolean_normal_schemes;
use crate::classicality::theorem_verdict;
use crate::error::Error;
use crate::properties::{classify, Classification, Family};
use crate::semantics::NamedRelation;
use crate::table::{BinaryTable, Connective, Scheme, UnaryTable};

/// The per-table families, in bit order of the membership masks.
pub const FAMILIES: [Family; 5] = [
    Family::BooleanNormalMonotonic,
    Family::TruthCollapsible,
    Family::FalsityCollapsible,
    Family::BooleanNormalTruthCollapsible,
    Family::BooleanNormalFalsityCollapsible,
];

const BN_MONO: u8 = 1 << 0;
const TC: u8 = 1 << 1;
const FC: u8 = 1 << 2;
const BN_TC: u8 = 1 << 3;
const BN_FC: u8 = 1 << 4;
/// Boolean normal on its own; not one of [`FAMILIES`].
const BN: u8 = 1 << 5;

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::BooleanNormalMonotonic => "boolean-normal-monotonic",
        Family::TruthCollapsible => "truth-collapsible",
        Family::FalsityCollapsible => "falsity-collapsible",
        Family::BooleanNormalTruthCollapsible => "boolean-normal-truth-collapsible",
        Family::BooleanNormalFalsityCollapsible => "boolean-normal-falsity-collapsible",
    }
}

/// Membership bits for every table, indexed by table index.
struct Memberships {
    neg: Vec<u8>,
    and: Vec<u8>,
    or: Vec<u8>,
}

fn memberships() -> &'static Memberships {
    static CELL: OnceLock<Memberships> = OnceLock::new();
    CELL.get_or_init(|| {
        use crate::properties::is_boolean_normal_op;
        let bits = |member: &dyn Fn(Family) -> bool, bn: bool| {
            let mut m = FAMILIES.iter().enumerate().fold(0u8, |m, (i, f)| m | ((member(*f) as u8) << i));
            if bn {
                m |= BN;
            }
            m
        };
        let binary = |conn: Connective| {
            BinaryTable::all()
                .map(|t| bits(&|f| f.binary_member(&t, conn), is_boolean_normal_op(&t, conn)))
                .collect()
        };
        Memberships {
            neg: UnaryTable::all()
                .map(|t| bits(&|f| f.unary_member(&t), is_boolean_normal_op(&t, Connective::Neg)))
                .collect(),
            and: binary(Connective::And),
            or: binary(Connective::Or),
        }
    })
}

impl Memberships {
    fn slot(&self, conn: Connective) -> &[u8] {
        match conn {
            Connective::Neg => &self.neg,
            Connective::And => &self.and,
            Connective::Or => &self.or,
        }
    }

    /// Tables of `conn` carrying every bit of `mask`.
    fn count(&self, conn: Connective, mask: u8) -> u64 {
        self.slot(conn).iter().filter(|&&m| m & mask == mask).count() as u64
    }

    fn schemes(&self, mask: u8) -> u64 {
        Connective::ALL.iter().map(|&c| self.count(c, mask)).product()
    }

    fn members(&self, conn: Connective, mask: u8) -> impl Iterator<Item = u32> + '_ {
        self.slot(conn).iter().enumerate().filter(move |(_, &m)| m & mask == mask).map(|(i, _)| i as u32)
    }
}

/// Masks whose union is the classical set for `relation`; each mask is one
/// family required of all three tables.
fn branches(relation: NamedRelation) -> &'static [u8] {
    match relation {
        NamedRelation::Ss => &[FC],
        NamedRelation::Tt => &[TC],
        NamedRelation::St => &[BN_MONO, BN_TC, BN_FC],
        NamedRelation::Ts | NamedRelation::SsTt => &[],
    }
}

/// Size of a union of families by inclusion-exclusion.
fn union_size(m: &Memberships, masks: &[u8], extra: u8) -> u64 {
    let mut total: i64 = 0;
    for subset in 1u32..(1 << masks.len()) {
        let mask = masks.iter().enumerate().filter(|(i, _)| subset >> i & 1 == 1).fold(extra, |a, (_, &b)| a | b);
        let sign = if subset.count_ones() % 2 == 1 { 1 } else { -1 };
        total += sign * m.schemes(mask) as i64;
    }
    total as u64
}

/// Number of schemes classical under `relation`.
pub fn count_classical(relation: NamedRelation) -> u64 {
    union_size(memberships(), branches(relation), 0)
}

/// As [`count_classical`], restricted to Boolean-normal schemes.
pub fn count_classical_boolean_normal(relation: NamedRelation) -> u64 {
    union_size(memberships(), branches(relation), BN)
}

/// The same restricted count by walking all 177,147 Boolean-normal triples
/// and applying the characterization to each.
pub fn count_classical_boolean_normal_direct(relation: NamedRelation) -> u64 {
    boolean_normal_schemes().iter().filter(|s| theorem_verdict(&classify(s), relation).0).count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StDecomposition {
    pub monotonic: u64,
    pub truth_collapsible: u64,
    pub falsity_collapsible: u64,
    /// `monotonic + truth_collapsible + falsity_collapsible - total`.
    pub overlaps: u64,
    pub total: u64,
}

pub fn decompose_st() -> StDecomposition {
    let m = memberships();
    let (monotonic, truth_collapsible, falsity_collapsible) = (m.schemes(BN_MONO), m.schemes(BN_TC), m.schemes(BN_FC));
    let total = count_classical(NamedRelation::St);
    StDecomposition {
        monotonic,
        truth_collapsible,
        falsity_collapsible,
        overlaps: monotonic + truth_collapsible + falsity_collapsible - total,
        total,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCount {
    pub family: &'static str,
    pub neg: u64,
    pub and: u64,
    pub or: u64,
    pub schemes: u64,
}

pub fn family_counts() -> Vec<FamilyCount> {
    let m = memberships();
    FAMILIES
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let mask = 1u8 << i;
            FamilyCount {
                family: family_name(f),
                neg: m.count(Connective::Neg, mask),
                and: m.count(Connective::And, mask),
                or: m.count(Connective::Or, mask),
                schemes: m.schemes(mask),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCount {
    pub relation: NamedRelation,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub counts: Vec<RelationCount>,
    pub st: StDecomposition,
    pub families: Vec<FamilyCount>,
    pub elapsed_ms: u64,
}

pub fn census() -> CensusReport {
    let start = Instant::now();
    let counts =
        NamedRelation::ALL.iter().map(|&relation| RelationCount { relation, count: count_classical(relation) }).collect();
    let st = decompose_st();
    let families = family_counts();
    CensusReport { counts, st, families, elapsed_ms: start.elapsed().as_millis() as u64 }
}

/// Every classical scheme for `relation`, sorted by encoding.
pub fn classical_schemes(relation: NamedRelation) -> Vec<Scheme> {
    let m = memberships();
    let mut out = Vec::new();
    for &mask in branches(relation) {
        for n in m.members(Connective::Neg, mask) {
            for a in m.members(Connective::And, mask) {
                for o in m.members(Connective::Or, mask) {
                    out.push(Scheme::new(
                        UnaryTable::from_index(n).expect("index in range"),
                        BinaryTable::from_index(a).expect("index in range"),
                        BinaryTable::from_index(o).expect("index in range"),
                    ));
                }
            }
        }
    }
    let mut keyed: Vec<(String, Scheme)> = out.into_iter().map(|s| (s.encode(), s)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, s)| s).collect()
}

#[derive(Serialize)]
struct ExportLine {
    scheme: String,
    classification: Classification,
}

/// Writes the classical schemes for `relation` as JSONL. Returns the number
/// of lines written.
pub fn export_census(relation: NamedRelation, path: &Path) -> Result<usize, Error> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    let schemes = classical_schemes(relation);
    for s in &schemes {
        let line = ExportLine { scheme: s.encode(), classification: classify(s) };
        serde_json::to_writer(&mut w, &line).map_err(|e| io(e.into()))?;
        w.write_all(b"\n").map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(schemes.len())
}
