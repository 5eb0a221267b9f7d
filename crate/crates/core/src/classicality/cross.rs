//! Theorem route against search route, over a set of schemes.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::SearchError;
use crate::properties::classify;
use crate::semantics::NamedRelation;
use crate::table::{BinaryTable, Scheme, UnaryTable};
use crate::value::TruthValue;

use super::{theorem_verdict, SearchBounds, SearchSession};

/// Which schemes a sweep covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeSpace {
    /// All 177,147 schemes that are classical on Boolean inputs.
    BooleanNormal,
    /// `count` schemes drawn uniformly from all `27 * 19683^2`.
    Random { count: usize, seed: u64 },
}

pub const DEFAULT_SEED: u64 = 0x5eed;

impl SchemeSpace {
    pub fn schemes(&self) -> Vec<Scheme> {
        match *self {
            SchemeSpace::BooleanNormal => boolean_normal_schemes(),
            SchemeSpace::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count).map(|_| random_scheme(&mut rng)).collect()
            }
        }
    }
}

impl fmt::Display for SchemeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpace::BooleanNormal => f.write_str("bn"),
            SchemeSpace::Random { count, seed } => write!(f, "random:{count}@{seed}"),
        }
    }
}

impl FromStr for SchemeSpace {
    type Err = String;

    /// `bn`, `random:N` or `random:N@SEED`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("bn") {
            return Ok(SchemeSpace::BooleanNormal);
        }
        let rest = s.strip_prefix("random:").ok_or_else(|| format!("unknown space {s:?}; expected bn or random:N"))?;
        let (count, seed) = match rest.split_once('@') {
            Some((c, seed)) => (c, seed.parse::<u64>().map_err(|e| format!("bad seed {seed:?}: {e}"))?),
            None => (rest, DEFAULT_SEED),
        };
        let count = count.parse::<usize>().map_err(|e| format!("bad sample size {count:?}: {e}"))?;
        Ok(SchemeSpace::Random { count, seed })
    }
}

/// Every scheme whose tables agree with `1 - x`, `min`, `max` on Boolean
/// inputs, ordered by (negation, conjunction, disjunction) free cells.
pub fn boolean_normal_schemes() -> Vec<Scheme> {
    let negs = boolean_normal_unary();
    let ands = boolean_normal_binary(true);
    let ors = boolean_normal_binary(false);
    let mut out = Vec::with_capacity(negs.len() * ands.len() * ors.len());
    for n in &negs {
        for a in &ands {
            for o in &ors {
                out.push(Scheme::new(*n, *a, *o));
            }
        }
    }
    out
}

pub(crate) fn boolean_normal_unary() -> Vec<UnaryTable> {
    TruthValue::ALL
        .iter()
        .map(|&mid| UnaryTable::from_cells([TruthValue::F, mid, TruthValue::T]))
        .collect()
}

pub(crate) fn boolean_normal_binary(conjunction: bool) -> Vec<BinaryTable> {
    use TruthValue::*;
    let mut out = Vec::with_capacity(243);
    for code in 0..243u32 {
        let mut free = [F; 5];
        let mut c = code;
        for slot in free.iter_mut().rev() {
            *slot = TruthValue::from_rank((c % 3) as u8).unwrap();
            c /= 3;
        }
        // cells in T, N, F layout; corners fixed
        let (tt, tf, ft, ff) = if conjunction { (T, F, F, F) } else { (T, T, T, F) };
        let [tn, nt, nn, nf, fnn] = free;
        out.push(BinaryTable::from_cells([tt, tn, tf, nt, nn, nf, ft, fnn, ff]));
    }
    out
}

/// Uniform draw from the whole scheme space.
pub fn random_scheme<R: Rng + ?Sized>(rng: &mut R) -> Scheme {
    Scheme::new(
        UnaryTable::from_index(rng.gen_range(0..UnaryTable::COUNT)).unwrap(),
        BinaryTable::from_index(rng.gen_range(0..BinaryTable::COUNT)).unwrap(),
        BinaryTable::from_index(rng.gen_range(0..BinaryTable::COUNT)).unwrap(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub scheme: Scheme,
    pub relation: NamedRelation,
    pub decide_classical: bool,
    /// Sequent found by the search, if any.
    pub search_witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: Option<NamedRelation>,
    pub schemes: usize,
    pub classical: usize,
    pub witnessed: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub space: String,
    pub bounds: SearchBounds,
    pub schemes: usize,
    pub relations: Vec<RelationReport>,
    pub disagreements: Vec<Disagreement>,
}

impl CrossReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

struct Outcome {
    classical: bool,
    witness: Option<String>,
}

fn check_one(
    scheme: &Scheme,
    relations: &[NamedRelation],
    bounds: SearchBounds,
) -> Result<Vec<Outcome>, SearchError> {
    let class = classify(scheme);
    let mut session = SearchSession::new(scheme, bounds)?;
    relations
        .iter()
        .map(|&r| {
            let (classical, _) = theorem_verdict(&class, r);
            let witness = session.find_any(&r.relation())?.map(|w| w.sequent.to_string());
            Ok(Outcome { classical, witness })
        })
        .collect()
}

/// Runs both routes on every scheme and relation. `jobs` caps the worker
/// count; `None` uses all cores. The report is independent of `jobs`.
pub fn cross_validate(
    space_label: &str,
    schemes: &[Scheme],
    relations: &[NamedRelation],
    bounds: SearchBounds,
    jobs: Option<usize>,
) -> Result<CrossReport, SearchError> {
    let run = || -> Result<Vec<Vec<Outcome>>, SearchError> {
        schemes.par_iter().map(|s| check_one(s, relations, bounds)).collect()
    };
    let outcomes = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SearchError::FragmentTooLarge(format!("cannot start workers: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let mut reports: Vec<RelationReport> = relations
        .iter()
        .map(|&r| RelationReport { relation: Some(r), schemes: schemes.len(), ..Default::default() })
        .collect();
    let mut disagreements = Vec::new();
    for (scheme, per_relation) in schemes.iter().zip(outcomes) {
        for ((report, &relation), outcome) in reports.iter_mut().zip(relations).zip(per_relation) {
            report.classical += outcome.classical as usize;
            report.witnessed += outcome.witness.is_some() as usize;
            if outcome.classical == outcome.witness.is_some() {
                report.disagreements += 1;
                disagreements.push(Disagreement {
                    scheme: *scheme,
                    relation,
                    decide_classical: outcome.classical,
                    search_witness: outcome.witness,
                });
            }
        }
    }
    Ok(CrossReport { space: space_label.to_string(), bounds, schemes: schemes.len(), relations: reports, disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::is_boolean_normal;

    #[test]
    fn boolean_normal_space() {
        let all = boolean_normal_schemes();
        assert_eq!(all.len(), 177_147);
        assert!(all.iter().step_by(997).all(is_boolean_normal));
        assert!(all.contains(&Scheme::strong_kleene()));
    }

    #[test]
    fn space_parsing() {
        assert_eq!("bn".parse::<SchemeSpace>().unwrap(), SchemeSpace::BooleanNormal);
        assert_eq!(
            "random:10@3".parse::<SchemeSpace>().unwrap(),
            SchemeSpace::Random { count: 10, seed: 3 }
        );
        assert!("random:x".parse::<SchemeSpace>().is_err());
        assert!("all".parse::<SchemeSpace>().is_err());
    }

    #[test]
    fn random_space_is_deterministic() {
        let a = SchemeSpace::Random { count: 5, seed: 7 }.schemes();
        let b = SchemeSpace::Random { count: 5, seed: 7 }.schemes();
        assert_eq!(a, b);
    }

    #[test]
    fn small_sweep_agrees() {
        let schemes = SchemeSpace::Random { count: 20, seed: 1 }.schemes();
        let mut with_named = schemes.clone();
        with_named.push(Scheme::strong_kleene());
        let report =
            cross_validate("sample", &with_named, &NamedRelation::ALL, SearchBounds::default(), Some(2)).unwrap();
        assert!(report.agrees(), "{:?}", report.disagreements);
    }
}
