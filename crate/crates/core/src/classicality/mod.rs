//! When is a scheme paired with a relation exactly classical logic?
//!
//! [`decide`] answers from the property flags and attaches a refuting
//! sequent from the witness catalog when the answer is no. The bounded
//! [`search_counterexample`] answers the same question empirically, and
//! [`cross_validate`] compares the two.

pub mod catalog;
pub mod cross;
pub mod search;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::properties::{classify, Classification};
use crate::semantics::{self, NamedRelation, Valuation};
use crate::syntax::Sequent;
use crate::table::Scheme;

pub use catalog::{Catalog, CatalogEntry, CellCondition};
pub use cross::{cross_validate, CrossReport, Disagreement, RelationReport, SchemeSpace};
pub use search::{search_counterexample, SearchBounds, SearchSession};

/// Which way a sequent separates the scheme's logic from classical logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Classically valid, invalid under the scheme and relation.
    ClassicalButNotValid,
    /// Valid under the scheme and relation, classically invalid.
    ValidButNotClassical,
}

impl Direction {
    /// Label with the relation name filled in, e.g.
    /// `classical-but-not-ss-valid`.
    pub fn label(self, relation: NamedRelation) -> String {
        self.template().replace('X', relation.name())
    }

    /// Relation-agnostic label used in the catalog file.
    pub fn template(self) -> &'static str {
        match self {
            Direction::ClassicalButNotValid => "classical-but-not-X-valid",
            Direction::ValidButNotClassical => "X-valid-but-not-classical",
        }
    }

    /// Accepts either template, the short alias `X-not-classical` for the
    /// first, or a template with a relation name in place of `X`.
    pub fn parse(text: &str) -> Option<Direction> {
        let t = text.trim();
        if t == "X-not-classical" || (t.starts_with("classical-but-not-") && t.ends_with("-valid")) {
            Some(Direction::ClassicalButNotValid)
        } else if t.ends_with("-valid-but-not-classical") {
            Some(Direction::ValidButNotClassical)
        } else {
            None
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.template())
    }
}

/// A sequent on which the scheme's logic and classical logic disagree,
/// together with a counter-valuation for whichever side rejects it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sequent: Sequent,
    pub valuation: Valuation,
    pub direction: Direction,
}

impl Witness {
    /// Re-checks the witness by brute force: the stated direction holds and
    /// the valuation refutes the side that rejects the sequent.
    pub fn recheck(&self, scheme: &Scheme, relation: NamedRelation) -> bool {
        let rel = relation.relation();
        let (Ok(valid), Ok(classical)) =
            (semantics::sequent_valid(&self.sequent, scheme, &rel), semantics::classically_valid(&self.sequent))
        else {
            return false;
        };
        match self.direction {
            Direction::ClassicalButNotValid => {
                classical
                    && !valid
                    && semantics::refutes(&self.valuation, &self.sequent, scheme, &rel).unwrap_or(false)
            }
            Direction::ValidButNotClassical => {
                valid && !classical && semantics::classically_refutes(&self.valuation, &self.sequent).unwrap_or(false)
            }
        }
    }
}

/// Where a verdict's witness came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSource {
    Catalog,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub scheme: Scheme,
    pub relation: NamedRelation,
    pub classical: bool,
    pub rationale: String,
    pub witness: Option<Witness>,
    pub source: Option<WitnessSource>,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct WitnessView<'a> {
            sequent: String,
            valuation: &'a Valuation,
            direction: String,
            source: Option<WitnessSource>,
        }
        #[derive(Serialize)]
        struct View<'a> {
            scheme: &'a Scheme,
            relation: NamedRelation,
            classical: bool,
            rationale: &'a str,
            witness: Option<WitnessView<'a>>,
        }
        View {
            scheme: &self.scheme,
            relation: self.relation,
            classical: self.classical,
            rationale: &self.rationale,
            witness: self.witness.as_ref().map(|w| WitnessView {
                sequent: w.sequent.to_string(),
                valuation: &w.valuation,
                direction: w.direction.label(self.relation),
                source: self.source,
            }),
        }
        .serialize(serializer)
    }
}

/// The characterization alone: whether `(scheme, relation)` is classical and
/// which clause decided it.
pub fn theorem_verdict(c: &Classification, relation: NamedRelation) -> (bool, String) {
    let name = relation.name();
    let (classical, why) = match relation {
        NamedRelation::Ts => (false, "never classical: reflexivity fails".to_string()),
        NamedRelation::SsTt => (false, "never classical: no scheme validates both explosion and excluded middle".into()),
        NamedRelation::Ss if c.falsity_collapsible => (true, "falsity-collapsible".into()),
        NamedRelation::Ss => (false, "not falsity-collapsible".into()),
        NamedRelation::Tt if c.truth_collapsible => (true, "truth-collapsible".into()),
        NamedRelation::Tt => (false, "not truth-collapsible".into()),
        NamedRelation::St if !c.boolean_normal => (false, "not Boolean normal".into()),
        NamedRelation::St if c.monotonic => (true, "Boolean normal + monotonic".into()),
        NamedRelation::St if c.truth_collapsible => (true, "Boolean normal + truth-collapsible".into()),
        NamedRelation::St if c.falsity_collapsible => (true, "Boolean normal + falsity-collapsible".into()),
        NamedRelation::St => (false, "Boolean normal but neither monotonic nor collapsible".into()),
    };
    (classical, format!("{name}: {why}"))
}

/// Decides classicality using the default catalog for witnesses.
pub fn decide(scheme: &Scheme, relation: NamedRelation) -> Verdict {
    decide_with(scheme, relation, Catalog::default_catalog())
}

/// As [`decide`], with an explicit catalog. A negative verdict carries the
/// first catalog witness whose guard holds and which re-checks; if none
/// does, the bounded search at default bounds supplies one.
pub fn decide_with(scheme: &Scheme, relation: NamedRelation, catalog: &Catalog) -> Verdict {
    let (classical, rationale) = theorem_verdict(&classify(scheme), relation);
    let mut verdict = Verdict { scheme: *scheme, relation, classical, rationale, witness: None, source: None };
    if classical {
        return verdict;
    }
    if let Some(w) = catalog.witness_for(scheme, relation) {
        verdict.witness = Some(w);
        verdict.source = Some(WitnessSource::Catalog);
    } else if let Ok(Some(w)) = search_counterexample(scheme, &relation.relation(), SearchBounds::default()) {
        verdict.witness = Some(w);
        verdict.source = Some(WitnessSource::Search);
    }
    verdict
}
