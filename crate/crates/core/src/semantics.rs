//! Valuations, evaluation under a scheme, and sequent validity for the five
//! mixed consequence relations and for two-valued classical logic.
//!
//! Validity is decided by brute force over every valuation of the sequent's
//! atoms, `3^k` for the three-valued relations and `2^k` classically.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SemanticsError;
use crate::syntax::{Formula, Sequent};
use crate::table::Scheme;
use crate::value::{TruthValue, ValueSet};

/// Default bound on the number of distinct atoms in a brute-force check.
pub const DEFAULT_ATOM_LIMIT: usize = 12;

/// Assignment of truth values to atom names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(BTreeMap<String, TruthValue>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn get(&self, atom: &str) -> Option<TruthValue> {
        self.0.get(atom).copied()
    }

    pub fn insert(&mut self, atom: impl Into<String>, value: TruthValue) {
        self.0.insert(atom.into(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, TruthValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_boolean(&self) -> bool {
        self.0.values().all(|v| v.is_boolean())
    }
}

impl<S: Into<String>> FromIterator<(S, TruthValue)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (S, TruthValue)>>(iter: I) -> Self {
        Valuation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (atom, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{atom}->{v}")?;
        }
        f.write_str("}")
    }
}

/// Premise-designated and conclusion-designated value sets.
///
/// `Γ ⊢ Δ` holds when no valuation sends every premise into `premise` and
/// every conclusion outside `conclusion`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MixedRelation {
    pub premise: ValueSet,
    pub conclusion: ValueSet,
}

impl MixedRelation {
    pub const SS: MixedRelation = MixedRelation { premise: ValueSet::STRICT, conclusion: ValueSet::STRICT };
    pub const TT: MixedRelation = MixedRelation { premise: ValueSet::TOLERANT, conclusion: ValueSet::TOLERANT };
    pub const ST: MixedRelation = MixedRelation { premise: ValueSet::STRICT, conclusion: ValueSet::TOLERANT };
    pub const TS: MixedRelation = MixedRelation { premise: ValueSet::TOLERANT, conclusion: ValueSet::STRICT };

    /// `None` unless both sets are nonempty proper subsets of the values.
    pub fn new(premise: ValueSet, conclusion: ValueSet) -> Option<MixedRelation> {
        let proper = |s: ValueSet| !s.is_empty() && s != ValueSet::ALL;
        (proper(premise) && proper(conclusion)).then_some(MixedRelation { premise, conclusion })
    }

    /// True when this valuation's values refute the sequent.
    #[inline]
    pub fn refuted_by(&self, premises: &[TruthValue], conclusions: &[TruthValue]) -> bool {
        premises.iter().all(|v| self.premise.contains(*v))
            && conclusions.iter().all(|v| !self.conclusion.contains(*v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConsequenceRelation {
    Mixed(MixedRelation),
    /// Valid iff valid under every member.
    Intersection(Vec<MixedRelation>),
}

impl ConsequenceRelation {
    pub fn members(&self) -> &[MixedRelation] {
        match self {
            ConsequenceRelation::Mixed(m) => std::slice::from_ref(m),
            ConsequenceRelation::Intersection(ms) => ms,
        }
    }
}

impl From<NamedRelation> for ConsequenceRelation {
    fn from(r: NamedRelation) -> Self {
        r.relation()
    }
}

/// The five intersective mixed consequence relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedRelation {
    Ss,
    Tt,
    St,
    Ts,
    SsTt,
}

impl NamedRelation {
    pub const ALL: [NamedRelation; 5] =
        [NamedRelation::Ss, NamedRelation::Tt, NamedRelation::St, NamedRelation::Ts, NamedRelation::SsTt];

    pub fn name(self) -> &'static str {
        match self {
            NamedRelation::Ss => "ss",
            NamedRelation::Tt => "tt",
            NamedRelation::St => "st",
            NamedRelation::Ts => "ts",
            NamedRelation::SsTt => "ss∩tt",
        }
    }

    pub fn relation(self) -> ConsequenceRelation {
        match self {
            NamedRelation::Ss => ConsequenceRelation::Mixed(MixedRelation::SS),
            NamedRelation::Tt => ConsequenceRelation::Mixed(MixedRelation::TT),
            NamedRelation::St => ConsequenceRelation::Mixed(MixedRelation::ST),
            NamedRelation::Ts => ConsequenceRelation::Mixed(MixedRelation::TS),
            NamedRelation::SsTt => ConsequenceRelation::Intersection(vec![MixedRelation::SS, MixedRelation::TT]),
        }
    }
}

impl fmt::Display for NamedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ss" => Ok(NamedRelation::Ss),
            "tt" => Ok(NamedRelation::Tt),
            "st" => Ok(NamedRelation::St),
            "ts" => Ok(NamedRelation::Ts),
            "ss∩tt" | "sstt" | "ss&tt" | "ss^tt" | "ss_tt" | "ss-tt" | "sscaptt" => Ok(NamedRelation::SsTt),
            other => Err(format!("unknown relation {other:?}; expected ss, tt, st, ts or ss∩tt")),
        }
    }
}

impl Serialize for NamedRelation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for NamedRelation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A formula flattened to postfix with atoms replaced by indices.
#[derive(Clone, Debug)]
struct Compiled(Vec<Op>);

#[derive(Clone, Copy, Debug)]
enum Op {
    Atom(usize),
    Not,
    And,
    Or,
}

impl Compiled {
    fn new(f: &Formula, atoms: &[&str]) -> Compiled {
        fn walk(f: &Formula, atoms: &[&str], out: &mut Vec<Op>) {
            match f {
                Formula::Atom(name) => {
                    let idx = atoms.iter().position(|a| a == name).expect("atom collected beforehand");
                    out.push(Op::Atom(idx));
                }
                Formula::Not(a) => {
                    walk(a, atoms, out);
                    out.push(Op::Not);
                }
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, atoms, out);
                    walk(b, atoms, out);
                    out.push(if matches!(f, Formula::And(..)) { Op::And } else { Op::Or });
                }
            }
        }
        let mut ops = Vec::new();
        walk(f, atoms, &mut ops);
        Compiled(ops)
    }

    fn eval(&self, values: &[TruthValue], scheme: &Scheme, stack: &mut Vec<TruthValue>) -> TruthValue {
        stack.clear();
        for op in &self.0 {
            match *op {
                Op::Atom(i) => stack.push(values[i]),
                Op::Not => {
                    let a = stack.pop().unwrap();
                    stack.push(scheme.neg.apply(a));
                }
                Op::And | Op::Or => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    let table = if matches!(op, Op::And) { &scheme.and } else { &scheme.or };
                    stack.push(table.apply(a, b));
                }
            }
        }
        stack.pop().unwrap()
    }
}

/// Two-valued tables `1 - x`, `min`, `max` embedded as a scheme. Only ever
/// applied to Boolean inputs.
fn classical_scheme() -> Scheme {
    Scheme::strong_kleene()
}

/// Evaluates `f` compositionally through the tables of `scheme`.
pub fn eval(f: &Formula, v: &Valuation, scheme: &Scheme) -> Result<TruthValue, SemanticsError> {
    Ok(match f {
        Formula::Atom(name) => v.get(name).ok_or_else(|| SemanticsError::UnboundAtom(name.clone()))?,
        Formula::Not(a) => scheme.neg.apply(eval(a, v, scheme)?),
        Formula::And(a, b) => scheme.and.apply(eval(a, v, scheme)?, eval(b, v, scheme)?),
        Formula::Or(a, b) => scheme.or.apply(eval(a, v, scheme)?, eval(b, v, scheme)?),
    })
}

/// Brute-force validity checker with a configurable atom limit.
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub max_atoms: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker { max_atoms: DEFAULT_ATOM_LIMIT }
    }
}

struct Prepared<'a> {
    atoms: Vec<&'a str>,
    premises: Vec<Compiled>,
    conclusions: Vec<Compiled>,
}

impl<'a> Prepared<'a> {
    fn valuation(&self, values: &[TruthValue]) -> Valuation {
        self.atoms.iter().zip(values).map(|(a, v)| (*a, *v)).collect()
    }
}

/// Calls `visit` on every assignment of `domain` values to `k` atoms until it
/// returns `true`; returns the assignment it stopped on.
fn first_assignment(
    k: usize,
    domain: &[TruthValue],
    mut visit: impl FnMut(&[TruthValue]) -> bool,
) -> Option<Vec<TruthValue>> {
    let mut digits = vec![0usize; k];
    let mut values = vec![domain[0]; k];
    loop {
        if visit(&values) {
            return Some(values);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < domain.len() {
                values[i] = domain[digits[i]];
                break;
            }
            digits[i] = 0;
            values[i] = domain[0];
        }
    }
}

impl Checker {
    pub fn new(max_atoms: usize) -> Checker {
        Checker { max_atoms }
    }

    fn prepare<'a>(&self, sq: &'a Sequent) -> Result<Prepared<'a>, SemanticsError> {
        let atoms: Vec<&str> = sq.atoms().into_iter().collect();
        if atoms.len() > self.max_atoms {
            return Err(SemanticsError::TooManyAtoms { found: atoms.len(), limit: self.max_atoms });
        }
        let premises = sq.premises.iter().map(|f| Compiled::new(f, &atoms)).collect();
        let conclusions = sq.conclusions.iter().map(|f| Compiled::new(f, &atoms)).collect();
        Ok(Prepared { atoms, premises, conclusions })
    }

    /// First valuation (atoms in name order, values `F, N, T`) that refutes
    /// `sq` under some member of `c`.
    pub fn find_witness(
        &self,
        sq: &Sequent,
        scheme: &Scheme,
        c: &ConsequenceRelation,
    ) -> Result<Option<Valuation>, SemanticsError> {
        let prep = self.prepare(sq)?;
        let mut stack = Vec::new();
        let mut pv = vec![TruthValue::F; prep.premises.len()];
        let mut cv = vec![TruthValue::F; prep.conclusions.len()];
        let found = first_assignment(prep.atoms.len(), &TruthValue::ALL, |values| {
            for (slot, f) in pv.iter_mut().zip(&prep.premises) {
                *slot = f.eval(values, scheme, &mut stack);
            }
            for (slot, f) in cv.iter_mut().zip(&prep.conclusions) {
                *slot = f.eval(values, scheme, &mut stack);
            }
            c.members().iter().any(|m| m.refuted_by(&pv, &cv))
        });
        Ok(found.map(|values| prep.valuation(&values)))
    }

    pub fn sequent_valid(
        &self,
        sq: &Sequent,
        scheme: &Scheme,
        c: &ConsequenceRelation,
    ) -> Result<bool, SemanticsError> {
        Ok(self.find_witness(sq, scheme, c)?.is_none())
    }

    /// First two-valued valuation making every premise true and every
    /// conclusion false.
    pub fn find_classical_witness(&self, sq: &Sequent) -> Result<Option<Valuation>, SemanticsError> {
        let prep = self.prepare(sq)?;
        let scheme = classical_scheme();
        let mut stack = Vec::new();
        let found = first_assignment(prep.atoms.len(), &[TruthValue::F, TruthValue::T], |values| {
            prep.premises.iter().all(|f| f.eval(values, &scheme, &mut stack) == TruthValue::T)
                && prep.conclusions.iter().all(|f| f.eval(values, &scheme, &mut stack) == TruthValue::F)
        });
        Ok(found.map(|values| prep.valuation(&values)))
    }

    pub fn classically_valid(&self, sq: &Sequent) -> Result<bool, SemanticsError> {
        Ok(self.find_classical_witness(sq)?.is_none())
    }

    /// Order-theoretic form of `ss∩tt`: for every valuation the least premise
    /// value is at most the greatest conclusion value, with `inf ∅ = T` and
    /// `sup ∅ = F`.
    pub fn order_valid(&self, sq: &Sequent, scheme: &Scheme) -> Result<bool, SemanticsError> {
        let prep = self.prepare(sq)?;
        let mut stack = Vec::new();
        let refuted = first_assignment(prep.atoms.len(), &TruthValue::ALL, |values| {
            let inf = prep.premises.iter().map(|f| f.eval(values, scheme, &mut stack)).min().unwrap_or(TruthValue::T);
            let sup =
                prep.conclusions.iter().map(|f| f.eval(values, scheme, &mut stack)).max().unwrap_or(TruthValue::F);
            inf > sup
        });
        Ok(refuted.is_none())
    }
}

pub fn sequent_valid(sq: &Sequent, scheme: &Scheme, c: &ConsequenceRelation) -> Result<bool, SemanticsError> {
    Checker::default().sequent_valid(sq, scheme, c)
}

pub fn find_witness(
    sq: &Sequent,
    scheme: &Scheme,
    c: &ConsequenceRelation,
) -> Result<Option<Valuation>, SemanticsError> {
    Checker::default().find_witness(sq, scheme, c)
}

pub fn classically_valid(sq: &Sequent) -> Result<bool, SemanticsError> {
    Checker::default().classically_valid(sq)
}

pub fn find_classical_witness(sq: &Sequent) -> Result<Option<Valuation>, SemanticsError> {
    Checker::default().find_classical_witness(sq)
}

/// Whether `v` refutes `sq` under `c`: all premises designated and no
/// conclusion designated, for some member relation.
pub fn refutes(
    v: &Valuation,
    sq: &Sequent,
    scheme: &Scheme,
    c: &ConsequenceRelation,
) -> Result<bool, SemanticsError> {
    let pv = sq.premises.iter().map(|f| eval(f, v, scheme)).collect::<Result<Vec<_>, _>>()?;
    let cv = sq.conclusions.iter().map(|f| eval(f, v, scheme)).collect::<Result<Vec<_>, _>>()?;
    Ok(c.members().iter().any(|m| m.refuted_by(&pv, &cv)))
}

/// Whether the two-valued valuation `v` makes every premise true and every
/// conclusion false.
pub fn classically_refutes(v: &Valuation, sq: &Sequent) -> Result<bool, SemanticsError> {
    if !v.is_boolean() {
        return Ok(false);
    }
    refutes(v, sq, &classical_scheme(), &ConsequenceRelation::Mixed(MixedRelation::SS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;
    use TruthValue::*;

    fn sk() -> Scheme {
        Scheme::strong_kleene()
    }

    fn cantwell() -> Scheme {
        "NEG:001;AND:1n0nn0000;OR:1111nn1n0".parse().unwrap()
    }

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        let not_p: Formula = "~p".parse().unwrap();
        let v: Valuation = [("p", N)].into_iter().collect();
        assert_eq!(eval(&not_p, &v, &sk()).unwrap(), N);
        assert_eq!(eval(&not_p, &v, &cantwell()).unwrap(), F);
        let v: Valuation = [("p", T)].into_iter().collect();
        assert_eq!(eval(&Formula::atom("p"), &v, &cantwell()).unwrap(), T);
    }

    #[test]
    fn eval_reports_missing_atom() {
        let f: Formula = "p & q".parse().unwrap();
        let v: Valuation = [("p", T)].into_iter().collect();
        assert_eq!(eval(&f, &v, &sk()), Err(SemanticsError::UnboundAtom("q".into())));
    }

    #[test]
    fn validity_examples() {
        let ts = NamedRelation::Ts.relation();
        let st = NamedRelation::St.relation();
        let ss = NamedRelation::Ss.relation();
        assert!(!sequent_valid(&seq("p |- p"), &sk(), &ts).unwrap());
        assert!(sequent_valid(&seq("p |- p"), &sk(), &st).unwrap());
        assert!(!sequent_valid(&seq("|- p | ~p"), &sk(), &ss).unwrap());
        assert!(sequent_valid(&seq("p & ~p |- q"), &sk(), &st).unwrap());
    }

    /// Direct enumeration of the nine valuations of `p & ~p |- q` under SK:
    /// the premise is `min(p, 1 - p)`, which never reaches `T`.
    #[test]
    fn explosion_under_st_by_enumeration() {
        for p in TruthValue::ALL {
            let premise = p.min(p.complement());
            assert_ne!(premise, T);
        }
    }

    #[test]
    fn witness_examples() {
        let p_n: Valuation = [("p", N)].into_iter().collect();
        assert_eq!(find_witness(&seq("p |- p"), &sk(), &NamedRelation::Ts.relation()).unwrap(), Some(p_n.clone()));
        assert_eq!(find_witness(&seq("|- p | ~p"), &sk(), &NamedRelation::Ss.relation()).unwrap(), Some(p_n));
        assert_eq!(find_witness(&seq("p |- p"), &sk(), &NamedRelation::St.relation()).unwrap(), None);
    }

    #[test]
    fn classical_examples() {
        assert!(classically_valid(&seq("p, ~p |- q")).unwrap());
        assert!(classically_valid(&seq("|- p, ~p")).unwrap());
        assert!(!classically_valid(&seq("p |- q")).unwrap());
        let w = find_classical_witness(&seq("p |- q")).unwrap().unwrap();
        assert_eq!(w, [("p", T), ("q", F)].into_iter().collect());
        assert!(classically_refutes(&w, &seq("p |- q")).unwrap());
    }

    #[test]
    fn empty_sides() {
        let st = NamedRelation::St.relation();
        assert!(!sequent_valid(&seq("|-"), &sk(), &st).unwrap());
        assert!(!classically_valid(&seq("|-")).unwrap());
        assert!(!sequent_valid(&seq("p |-"), &sk(), &st).unwrap());
    }

    #[test]
    fn atom_limit_guard() {
        let sq = seq("a, b, c |- d");
        let err = Checker::new(3).sequent_valid(&sq, &sk(), &NamedRelation::St.relation()).unwrap_err();
        assert_eq!(err, SemanticsError::TooManyAtoms { found: 4, limit: 3 });
        let many = (0..13).map(|i| format!("a{i}")).collect::<Vec<_>>().join(", ");
        assert!(sequent_valid(&seq(&format!("{many} |-")), &sk(), &NamedRelation::St.relation()).is_err());
    }

    #[test]
    fn relation_names() {
        for r in NamedRelation::ALL {
            assert_eq!(r.name().parse::<NamedRelation>().unwrap(), r);
        }
        assert_eq!("sstt".parse::<NamedRelation>().unwrap(), NamedRelation::SsTt);
        assert!("xx".parse::<NamedRelation>().is_err());
    }

    #[test]
    fn mixed_relation_requires_proper_sets() {
        assert!(MixedRelation::new(ValueSet::EMPTY, ValueSet::STRICT).is_none());
        assert!(MixedRelation::new(ValueSet::STRICT, ValueSet::ALL).is_none());
        assert_eq!(MixedRelation::new(ValueSet::STRICT, ValueSet::TOLERANT), Some(MixedRelation::ST));
    }

    #[test]
    fn intersection_matches_order_form_on_samples() {
        let sstt = NamedRelation::SsTt.relation();
        for text in ["p |- p", "p, ~p |- q", "|- p, ~p", "p & q |- q | r", "~~p |- p", "p | q |- p, q"] {
            let sq = seq(text);
            for scheme in [sk(), cantwell()] {
                assert_eq!(
                    sequent_valid(&sq, &scheme, &sstt).unwrap(),
                    Checker::default().order_valid(&sq, &scheme).unwrap(),
                    "{text}"
                );
            }
        }
    }
}
