//! Bounded counterexample search.
//!
//! The fragment is every formula over the first `max_atoms` of `p, q, r`
//! with connective depth at most `max_depth`; sequents take at most
//! `max_side` distinct formulas per side. Sequents are ordered by total node
//! count, then by the premise list, then by the conclusion list, where each
//! side is sorted and compared formula by formula on (node count, printed
//! form). The first sequent in that order on which classical validity and
//! validity under the relation disagree is returned.
//!
//! Each formula is evaluated once per scheme into bit masks over all
//! valuations of the fragment's atoms. A side of a sequent is then just the
//! bitwise AND of its formulas' masks, so any formula may be swapped for the
//! earliest formula with the same masks without changing either verdict.
//! That makes the search run over a handful of representatives instead of
//! the whole fragment.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::SearchError;
use crate::semantics::{self, ConsequenceRelation, MixedRelation, Valuation};
use crate::syntax::{Formula, Sequent};
use crate::table::Scheme;
use crate::value::TruthValue;

use super::{Direction, Witness};

/// Atom names used by the search, in order.
pub const SEARCH_ATOMS: [&str; 3] = ["p", "q", "r"];

/// Largest fragment the search will build.
pub const MAX_FRAGMENT_FORMULAS: u64 = 4_000_000;

/// Largest number of side candidates (sets of representatives) per side.
const MAX_SIDE_CANDIDATES: u64 = 20_000_000;

/// Total-size cutoffs tried before evaluating the whole fragment.
const PREFIX_LEVELS: [usize; 3] = [3, 5, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SearchBounds {
    pub max_atoms: usize,
    pub max_depth: usize,
    pub max_side: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_atoms: 2, max_depth: 3, max_side: 2 }
    }
}

impl SearchBounds {
    fn validate(&self) -> Result<(), SearchError> {
        if self.max_atoms == 0 || self.max_side == 0 {
            return Err(SearchError::InvalidBounds);
        }
        if self.max_atoms > SEARCH_ATOMS.len() {
            return Err(SearchError::FragmentTooLarge(format!(
                "{} atoms requested, at most {} supported",
                self.max_atoms,
                SEARCH_ATOMS.len()
            )));
        }
        let count = fragment_size(self.max_atoms, self.max_depth);
        if count > MAX_FRAGMENT_FORMULAS {
            return Err(SearchError::FragmentTooLarge(format!(
                "{count} formulas at depth {} over {} atoms exceeds {MAX_FRAGMENT_FORMULAS}",
                self.max_depth, self.max_atoms
            )));
        }
        Ok(())
    }
}

/// Number of formulas of depth at most `depth` over `atoms` atoms,
/// saturating.
pub fn fragment_size(atoms: usize, depth: usize) -> u64 {
    let a = atoms as u64;
    let mut count = a;
    for _ in 0..depth {
        count = a.saturating_add(count).saturating_add(count.saturating_mul(count).saturating_mul(2));
    }
    count
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Atom(u8),
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
}

impl Node {
    fn precedence(self) -> u8 {
        match self {
            Node::Or(..) => 1,
            Node::And(..) => 2,
            Node::Not(_) => 3,
            Node::Atom(_) => 4,
        }
    }
}

/// All formulas of a bounded fragment, sorted by (node count, printed form).
/// Children always precede parents.
pub struct Fragment {
    atoms: usize,
    nodes: Vec<Node>,
    sizes: Vec<u8>,
    /// Truth mask of each formula over the `2^k` Boolean valuations.
    classical: Vec<u32>,
    /// `size_end[s]` is the number of formulas with node count `<= s`.
    size_end: Vec<usize>,
    three_mask: u32,
    two_mask: u32,
}

impl Fragment {
    fn build(atoms: usize, depth: usize) -> Fragment {
        // Generate by depth, printing as we go.
        let mut nodes: Vec<Node> = Vec::new();
        let mut sizes: Vec<u8> = Vec::new();
        let mut prints: Vec<String> = Vec::new();
        let paren = |s: &str, wrap: bool| if wrap { format!("({s})") } else { s.to_string() };
        for (i, name) in SEARCH_ATOMS.iter().enumerate().take(atoms) {
            nodes.push(Node::Atom(i as u8));
            sizes.push(1);
            prints.push(name.to_string());
        }
        let mut prev_start = 0usize;
        for _ in 0..depth {
            let prev_end = nodes.len();
            for a in prev_start..prev_end {
                let s = format!("~{}", paren(&prints[a], nodes[a].precedence() < 3));
                nodes.push(Node::Not(a as u32));
                sizes.push(sizes[a] + 1);
                prints.push(s);
            }
            for a in 0..prev_end {
                for b in 0..prev_end {
                    if a < prev_start && b < prev_start {
                        continue;
                    }
                    let size = sizes[a] + sizes[b] + 1;
                    let (pa, pb) = (nodes[a].precedence(), nodes[b].precedence());
                    let and = format!("{} & {}", paren(&prints[a], pa < 2), paren(&prints[b], pb <= 2));
                    nodes.push(Node::And(a as u32, b as u32));
                    sizes.push(size);
                    prints.push(and);
                    let or = format!("{} | {}", paren(&prints[a], pa < 1), paren(&prints[b], pb <= 1));
                    nodes.push(Node::Or(a as u32, b as u32));
                    sizes.push(size);
                    prints.push(or);
                }
            }
            prev_start = prev_end;
        }

        let mut order: Vec<u32> = (0..nodes.len() as u32).collect();
        order.sort_unstable_by(|&x, &y| {
            (sizes[x as usize], &prints[x as usize]).cmp(&(sizes[y as usize], &prints[y as usize]))
        });
        drop(prints);
        let mut rank = vec![0u32; nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let remap = |n: Node| match n {
            Node::Atom(i) => Node::Atom(i),
            Node::Not(a) => Node::Not(rank[a as usize]),
            Node::And(a, b) => Node::And(rank[a as usize], rank[b as usize]),
            Node::Or(a, b) => Node::Or(rank[a as usize], rank[b as usize]),
        };
        let sorted_nodes: Vec<Node> = order.iter().map(|&o| remap(nodes[o as usize])).collect();
        let sorted_sizes: Vec<u8> = order.iter().map(|&o| sizes[o as usize]).collect();

        // at most 3 atoms, so both masks fit in 27 bits
        let two_width = 1u32 << atoms;
        let two_mask = (1u32 << two_width) - 1;
        let three_mask = (1u32 << 3u32.pow(atoms as u32)) - 1;

        let mut classical: Vec<u32> = Vec::with_capacity(sorted_nodes.len());
        for node in &sorted_nodes {
            let c = match *node {
                Node::Atom(i) => {
                    let shift = atoms - 1 - i as usize;
                    (0..two_width).filter(|w| (w >> shift) & 1 == 1).fold(0u32, |m, w| m | (1 << w))
                }
                Node::Not(a) => !classical[a as usize] & two_mask,
                Node::And(a, b) => classical[a as usize] & classical[b as usize],
                Node::Or(a, b) => classical[a as usize] | classical[b as usize],
            };
            classical.push(c);
        }

        let max_size = sorted_sizes.last().copied().unwrap_or(0) as usize;
        let size_end: Vec<usize> =
            (0..=max_size).map(|s| sorted_sizes.partition_point(|&x| (x as usize) <= s)).collect();

        Fragment {
            atoms,
            nodes: sorted_nodes,
            sizes: sorted_sizes,
            classical,
            size_end,
            three_mask,
            two_mask,
        }
    }

    /// Shared fragment for the given bounds, built on first use.
    pub fn get(atoms: usize, depth: usize) -> Arc<Fragment> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<Fragment>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry((atoms, depth)).or_insert_with(|| Arc::new(Fragment::build(atoms, depth))).clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn prefix_for_size(&self, size: usize) -> usize {
        match self.size_end.get(size) {
            Some(&end) => end,
            None => self.nodes.len(),
        }
    }

    /// Rebuilds formula `i` as a syntax tree.
    pub fn formula(&self, i: usize) -> Formula {
        match self.nodes[i] {
            Node::Atom(a) => Formula::atom(SEARCH_ATOMS[a as usize]),
            Node::Not(a) => self.formula(a as usize).not(),
            Node::And(a, b) => self.formula(a as usize).and(self.formula(b as usize)),
            Node::Or(a, b) => self.formula(a as usize).or(self.formula(b as usize)),
        }
    }

    /// Value masks of each atom over the `3^k` valuations, indexed by rank.
    fn atom_profile(&self, i: usize) -> [u32; 3] {
        let mut out = [0u32; 3];
        let shift = 3u32.pow((self.atoms - 1 - i) as u32);
        for v in 0..3u32.pow(self.atoms as u32) {
            out[((v / shift) % 3) as usize] |= 1 << v;
        }
        out
    }
}

/// Per-scheme evaluation of a fragment, filled lazily in index order.
pub struct SearchSession {
    fragment: Arc<Fragment>,
    bounds: SearchBounds,
    scheme: Scheme,
    neg: [usize; 3],
    and: [[usize; 3]; 3],
    or: [[usize; 3]; 3],
    profiles: Vec<[u32; 3]>,
}

impl SearchSession {
    pub fn new(scheme: &Scheme, bounds: SearchBounds) -> Result<SearchSession, SearchError> {
        bounds.validate()?;
        let fragment = Fragment::get(bounds.max_atoms, bounds.max_depth);
        let r = |v: TruthValue| v.rank() as usize;
        let mut neg = [0; 3];
        let mut and = [[0; 3]; 3];
        let mut or = [[0; 3]; 3];
        for x in TruthValue::ALL {
            neg[r(x)] = r(scheme.neg.apply(x));
            for y in TruthValue::ALL {
                and[r(x)][r(y)] = r(scheme.and.apply(x, y));
                or[r(x)][r(y)] = r(scheme.or.apply(x, y));
            }
        }
        Ok(SearchSession {
            fragment,
            bounds,
            scheme: *scheme,
            neg,
            and,
            or,
            profiles: Vec::new(),
        })
    }

    pub fn fragment(&self) -> &Fragment {
        &self.fragment
    }

    fn ensure(&mut self, upto: usize) {
        let frag = Arc::clone(&self.fragment);
        self.profiles.reserve(upto.saturating_sub(self.profiles.len()));
        for i in self.profiles.len()..upto {
            let p = match frag.nodes[i] {
                Node::Atom(a) => frag.atom_profile(a as usize),
                Node::Not(a) => {
                    let a = self.profiles[a as usize];
                    let mut out = [0u32; 3];
                    for x in 0..3 {
                        out[self.neg[x]] |= a[x];
                    }
                    out
                }
                Node::And(a, b) | Node::Or(a, b) => {
                    let table = if matches!(frag.nodes[i], Node::And(..)) { &self.and } else { &self.or };
                    let (a, b) = (self.profiles[a as usize], self.profiles[b as usize]);
                    let mut out = [0u32; 3];
                    for x in 0..3 {
                        for y in 0..3 {
                            out[table[x][y]] |= a[x] & b[y];
                        }
                    }
                    out
                }
            };
            self.profiles.push(p);
        }
    }

    /// First disagreeing sequent in the search order, or `None` if the
    /// fragment has none.
    pub fn search(&mut self, relation: &ConsequenceRelation) -> Result<Option<Witness>, SearchError> {
        self.run(relation, false)
    }

    /// Some disagreeing sequent if one exists. Cheaper than [`Self::search`]
    /// because an early, possibly non-minimal hit is accepted.
    pub fn find_any(&mut self, relation: &ConsequenceRelation) -> Result<Option<Witness>, SearchError> {
        self.run(relation, true)
    }

    fn run(&mut self, relation: &ConsequenceRelation, any: bool) -> Result<Option<Witness>, SearchError> {
        let members = relation.members();
        if members.is_empty() || members.len() > MAX_MEMBERS {
            return Err(SearchError::FragmentTooLarge(format!(
                "relations with 1 to {MAX_MEMBERS} members are supported"
            )));
        }
        let full = self.fragment.len();
        let mut levels: Vec<(usize, usize)> = PREFIX_LEVELS
            .iter()
            .map(|&s| (s, self.fragment.prefix_for_size(s)))
            .filter(|&(_, end)| end < full)
            .collect();
        levels.dedup_by_key(|l| l.1);
        levels.push((usize::MAX, full));
        for (cap, end) in levels {
            self.ensure(end);
            if let Some(hit) = self.best(members, end, any)? {
                if any || hit.total <= cap {
                    return Ok(Some(self.to_witness(relation, hit)));
                }
            }
        }
        Ok(None)
    }

    fn keys(&self, members: &[MixedRelation], i: usize) -> (Key, Key) {
        let frag = &self.fragment;
        let prof = &self.profiles[i];
        let c = frag.classical[i];
        let mut premise = [0u32; MAX_MEMBERS + 1];
        let mut conclusion = [0u32; MAX_MEMBERS + 1];
        premise[0] = c;
        conclusion[0] = !c & frag.two_mask;
        for (j, m) in members.iter().enumerate() {
            let (mut g, mut b) = (0u32, 0u32);
            for v in TruthValue::ALL {
                let r = v.rank() as usize;
                if m.premise.contains(v) {
                    g |= prof[r];
                }
                if !m.conclusion.contains(v) {
                    b |= prof[r];
                }
            }
            premise[j + 1] = g;
            conclusion[j + 1] = b;
        }
        (premise, conclusion)
    }

    fn best(&self, members: &[MixedRelation], end: usize, any: bool) -> Result<Option<Hit>, SearchError> {
        let mut premise_reps: Vec<(Key, usize)> = Vec::new();
        let mut conclusion_reps: Vec<(Key, usize)> = Vec::new();
        let mut seen_p: HashMap<Key, ()> = HashMap::new();
        let mut seen_c: HashMap<Key, ()> = HashMap::new();
        for i in 0..end {
            let (kp, kc) = self.keys(members, i);
            if seen_p.insert(kp, ()).is_none() {
                premise_reps.push((kp, i));
            }
            if seen_c.insert(kc, ()).is_none() {
                conclusion_reps.push((kc, i));
            }
        }
        let mut full = [self.fragment.three_mask; MAX_MEMBERS + 1];
        full[0] = self.fragment.two_mask;
        let sizes = &self.fragment.sizes;
        let gammas = side_classes(&premise_reps, full, self.bounds.max_side, sizes)?;
        let deltas = side_classes(&conclusion_reps, full, self.bounds.max_side, sizes)?;
        let m = members.len();

        let mut best: Option<Hit> = None;
        for g in &gammas {
            for d in &deltas {
                let total = g.size + d.size;
                if let Some(b) = &best {
                    if total > b.total {
                        break;
                    }
                }
                let classical_invalid = g.key[0] & d.key[0] != 0;
                let invalid = (1..=m).any(|j| g.key[j] & d.key[j] != 0);
                if classical_invalid == invalid {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some(b) => (total, &g.items, &d.items) < (b.total, &b.premises, &b.conclusions),
                };
                if better {
                    best = Some(Hit {
                        total,
                        premises: g.items.clone(),
                        conclusions: d.items.clone(),
                        direction: if classical_invalid {
                            Direction::ValidButNotClassical
                        } else {
                            Direction::ClassicalButNotValid
                        },
                    });
                    if any {
                        return Ok(best);
                    }
                }
            }
        }
        Ok(best)
    }

    fn to_witness(&self, relation: &ConsequenceRelation, hit: Hit) -> Witness {
        let frag = &self.fragment;
        let sequent = Sequent::new(
            hit.premises.iter().map(|&i| frag.formula(i)),
            hit.conclusions.iter().map(|&i| frag.formula(i)),
        );
        let valuation = counter_valuation(&sequent, &self.scheme, relation, hit.direction);
        Witness { sequent, valuation, direction: hit.direction }
    }
}

/// Counter-valuation for a disagreement, over the sequent's own atoms: a
/// three-valued refutation when classical validity holds, a Boolean one
/// otherwise.
pub(crate) fn counter_valuation(
    sequent: &Sequent,
    scheme: &Scheme,
    relation: &ConsequenceRelation,
    direction: Direction,
) -> Valuation {
    let found = match direction {
        Direction::ClassicalButNotValid => semantics::find_witness(sequent, scheme, relation),
        Direction::ValidButNotClassical => semantics::find_classical_witness(sequent),
    };
    found
        .ok()
        .flatten()
        .unwrap_or_else(|| panic!("search produced {sequent} but semantics finds no counter-valuation"))
}

const MAX_MEMBERS: usize = 3;

/// Classical mask followed by one mask per member relation.
type Key = [u32; MAX_MEMBERS + 1];

struct Hit {
    total: usize,
    premises: Vec<usize>,
    conclusions: Vec<usize>,
    direction: Direction,
}

struct SideClass {
    key: Key,
    size: usize,
    items: Vec<usize>,
}

/// Every set of at most `max_side` representatives, grouped by combined key
/// and reduced to the least member of each group under (size, item list).
/// Sorted by (size, item list).
fn side_classes(
    reps: &[(Key, usize)],
    empty: Key,
    max_side: usize,
    sizes: &[u8],
) -> Result<Vec<SideClass>, SearchError> {
    let mut estimate: u64 = 1;
    let mut term: u64 = 1;
    for k in 0..max_side.min(reps.len()) {
        term = term.saturating_mul((reps.len() - k) as u64) / (k as u64 + 1);
        estimate = estimate.saturating_add(term);
    }
    if estimate > MAX_SIDE_CANDIDATES {
        return Err(SearchError::FragmentTooLarge(format!(
            "{estimate} candidate sides from {} representatives",
            reps.len()
        )));
    }

    let mut classes: HashMap<Key, (usize, Vec<usize>)> = HashMap::new();
    let mut stack: Vec<usize> = Vec::with_capacity(max_side);
    #[allow(clippy::too_many_arguments)]
    fn visit(
        reps: &[(Key, usize)],
        start: usize,
        key: Key,
        size: usize,
        max_side: usize,
        sizes: &[u8],
        stack: &mut Vec<usize>,
        classes: &mut HashMap<Key, (usize, Vec<usize>)>,
    ) {
        match classes.get_mut(&key) {
            Some(entry) => {
                if (size, stack.as_slice()) < (entry.0, entry.1.as_slice()) {
                    *entry = (size, stack.clone());
                }
            }
            None => {
                classes.insert(key, (size, stack.clone()));
            }
        }
        if stack.len() == max_side {
            return;
        }
        for r in start..reps.len() {
            let (k, idx) = reps[r];
            let mut next = key;
            for (n, x) in next.iter_mut().zip(k) {
                *n &= x;
            }
            stack.push(idx);
            visit(reps, r + 1, next, size + sizes[idx] as usize, max_side, sizes, stack, classes);
            stack.pop();
        }
    }
    visit(reps, 0, empty, 0, max_side, sizes, &mut stack, &mut classes);

    let mut out: Vec<SideClass> =
        classes.into_iter().map(|(key, (size, items))| SideClass { key, size, items }).collect();
    out.sort_by(|a, b| (a.size, &a.items).cmp(&(b.size, &b.items)));
    Ok(out)
}

/// Convenience wrapper: a fresh session for one scheme and relation.
pub fn search_counterexample(
    scheme: &Scheme,
    relation: &ConsequenceRelation,
    bounds: SearchBounds,
) -> Result<Option<Witness>, SearchError> {
    SearchSession::new(scheme, bounds)?.search(relation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::NamedRelation;
    use crate::syntax::parse_sequent;

    fn sk() -> Scheme {
        Scheme::strong_kleene()
    }

    #[test]
    fn fragment_counts() {
        assert_eq!(fragment_size(2, 3), 182_712);
        assert_eq!(fragment_size(1, 0), 1);
        let frag = Fragment::get(2, 2);
        assert_eq!(frag.len(), 302);
        // sorted by size then print; children first
        for i in 1..frag.len() {
            assert!(frag.sizes[i - 1] <= frag.sizes[i]);
        }
        for (i, n) in frag.nodes.iter().enumerate() {
            match *n {
                Node::Not(a) => assert!((a as usize) < i),
                Node::And(a, b) | Node::Or(a, b) => assert!((a as usize) < i && (b as usize) < i),
                Node::Atom(_) => {}
            }
        }
        assert_eq!(frag.formula(0).to_string(), "p");
        assert_eq!(frag.formula(2).to_string(), "~p");
    }

    #[test]
    fn fragment_prints_are_ordered() {
        let frag = Fragment::get(2, 2);
        let keys: Vec<(usize, String)> =
            (0..frag.len()).map(|i| (frag.formula(i).node_count(), frag.formula(i).to_string())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(keys.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn ts_identity_found() {
        let bounds = SearchBounds { max_atoms: 1, max_depth: 0, max_side: 2 };
        let w = search_counterexample(&sk(), &NamedRelation::Ts.relation(), bounds).unwrap().unwrap();
        assert_eq!(w.sequent, parse_sequent("p |- p").unwrap());
        assert_eq!(w.direction, Direction::ClassicalButNotValid);
        assert_eq!(w.valuation.get("p"), Some(TruthValue::N));
    }

    #[test]
    fn sk_st_has_none() {
        let got = search_counterexample(&sk(), &NamedRelation::St.relation(), SearchBounds::default()).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn sk_ss_excluded_middle() {
        let w = search_counterexample(&sk(), &NamedRelation::Ss.relation(), SearchBounds::default()).unwrap().unwrap();
        // smallest disagreement under ss
        assert!(w.sequent.node_count() <= 4, "{}", w.sequent);
        assert_eq!(w.direction, Direction::ClassicalButNotValid);
    }

    #[test]
    fn bounds_are_validated() {
        let bad = SearchBounds { max_atoms: 0, max_depth: 1, max_side: 1 };
        assert_eq!(search_counterexample(&sk(), &NamedRelation::St.relation(), bad), Err(SearchError::InvalidBounds));
        let huge = SearchBounds { max_atoms: 3, max_depth: 4, max_side: 2 };
        assert!(matches!(
            search_counterexample(&sk(), &NamedRelation::St.relation(), huge),
            Err(SearchError::FragmentTooLarge(_))
        ));
    }
}
