//! Gentzen-regular rule schemas for a single connective.
//!
//! A schema for an `n`-ary connective `C` lists premise rules and conclusion
//! rules, each a pair `(B_p, B_c)` of index sets. It holds for `C` under a
//! relation when for every context `Γ, Δ`
//!
//! ```text
//! Γ, C(F1..Fn) ⊢ Δ   iff  for every premise rule:    Γ, {F_i : i ∈ B_p} ⊢ {F_j : j ∈ B_c}, Δ
//! Γ ⊢ C(F1..Fn), Δ   iff  for every conclusion rule: Γ, {F_i : i ∈ B_p} ⊢ {F_j : j ∈ B_c}, Δ
//! ```
//!
//! An empty rule set makes its right-hand side vacuously true.
//!
//! Contexts are reduced to a finite family: the `F_i` are distinct atoms,
//! and each side is any subset of them, optionally with `C(F)` and with a
//! fresh atom (`x` on the left, `y` on the right). [`audit_rule`] re-runs a
//! verdict on random compound contexts as a guard on that reduction.
//!
//! Text form, e.g. the usual conjunction rules:
//!
//! ```text
//! P:{(12|-)};C:{(|-1),(|-2)}
//! ```
//!
//! Indices are single digits from 1 to the arity; `⊢` may replace `|-`, and
//! whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::GentzenError;
use crate::semantics::ConsequenceRelation;
use crate::table::{BinaryTable, Connective, Scheme, UnaryTable};
use crate::value::TruthValue;

/// Largest arity the text form and the checker accept.
pub const MAX_SCHEMA_ARITY: usize = 9;

/// One pattern `(B_p, B_c)`; bit `i` stands for index `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub premises: u16,
    pub conclusions: u16,
}

impl Rule {
    pub fn new(premises: &[usize], conclusions: &[usize]) -> Rule {
        let mask = |xs: &[usize]| xs.iter().fold(0u16, |m, &i| m | (1 << (i - 1)));
        Rule { premises: mask(premises), conclusions: mask(conclusions) }
    }

    fn key(&self) -> (u32, Vec<usize>, Vec<usize>) {
        (self.premises.count_ones() + self.conclusions.count_ones(), indices(self.premises), indices(self.conclusions))
    }
}

impl PartialOrd for Rule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: fewer indices first, then index lists lexicographically.
impl Ord for Rule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

fn indices(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |m: u16| indices(m).iter().map(|i| i.to_string()).collect::<String>();
        write!(f, "({}|-{})", digits(self.premises), digits(self.conclusions))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleSchema {
    arity: usize,
    premise_rules: Vec<Rule>,
    conclusion_rules: Vec<Rule>,
}

impl RuleSchema {
    /// Sorts and deduplicates both rule sets.
    pub fn new(arity: usize, premise_rules: Vec<Rule>, conclusion_rules: Vec<Rule>) -> Result<RuleSchema, GentzenError> {
        if arity == 0 || arity > MAX_SCHEMA_ARITY {
            return Err(GentzenError::UnsupportedArity(arity));
        }
        let limit = 1u16 << arity;
        for r in premise_rules.iter().chain(&conclusion_rules) {
            for m in [r.premises, r.conclusions] {
                if m >= limit {
                    let index = 16 - m.leading_zeros() as usize;
                    return Err(GentzenError::IndexOutOfRange { index, arity });
                }
            }
        }
        let canon = |mut v: Vec<Rule>| {
            v.sort();
            v.dedup();
            v
        };
        Ok(RuleSchema { arity, premise_rules: canon(premise_rules), conclusion_rules: canon(conclusion_rules) })
    }

    /// The classical sequent-calculus rules for `conn`.
    pub fn lk(conn: Connective) -> RuleSchema {
        let (p, c) = match conn {
            Connective::Neg => (vec![Rule::new(&[], &[1])], vec![Rule::new(&[1], &[])]),
            Connective::And => (vec![Rule::new(&[1, 2], &[])], vec![Rule::new(&[], &[1]), Rule::new(&[], &[2])]),
            Connective::Or => (vec![Rule::new(&[1], &[]), Rule::new(&[2], &[])], vec![Rule::new(&[], &[1, 2])]),
        };
        RuleSchema::new(conn.arity(), p, c).expect("LK rules are well formed")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn premise_rules(&self) -> &[Rule] {
        &self.premise_rules
    }

    pub fn conclusion_rules(&self) -> &[Rule] {
        &self.conclusion_rules
    }

    fn rules(&self, side: Side) -> &[Rule] {
        match side {
            Side::Premise => &self.premise_rules,
            Side::Conclusion => &self.conclusion_rules,
        }
    }

    /// Parses the text form for a connective of the given arity.
    pub fn parse(text: &str, arity: usize) -> Result<RuleSchema, GentzenError> {
        let (p, c) = SchemaParser::new(text).schema()?;
        for r in p.iter().chain(&c) {
            for m in [r.premises, r.conclusions] {
                if let Some(&i) = indices(m).iter().find(|&&i| i > arity) {
                    return Err(GentzenError::IndexOutOfRange { index: i, arity });
                }
            }
        }
        RuleSchema::new(arity, p, c)
    }
}

/// Infers the arity from the largest index mentioned, at least 1.
impl FromStr for RuleSchema {
    type Err = GentzenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, c) = SchemaParser::new(s).schema()?;
        let arity = p
            .iter()
            .chain(&c)
            .map(|r| 16 - (r.premises | r.conclusions).leading_zeros() as usize)
            .max()
            .unwrap_or(1)
            .max(1);
        RuleSchema::new(arity, p, c)
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |rs: &[Rule]| rs.iter().map(Rule::to_string).collect::<Vec<_>>().join(",");
        write!(f, "P:{{{}}};C:{{{}}}", set(&self.premise_rules), set(&self.conclusion_rules))
    }
}

impl Serialize for RuleSchema {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct SchemaParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> SchemaParser<'a> {
    fn new(text: &'a str) -> Self {
        SchemaParser { text, pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> GentzenError {
        GentzenError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), GentzenError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected {token:?}")))
        }
    }

    fn schema(mut self) -> Result<(Vec<Rule>, Vec<Rule>), GentzenError> {
        self.expect("P")?;
        self.expect(":")?;
        let p = self.set()?;
        self.expect(";")?;
        self.expect("C")?;
        self.expect(":")?;
        let c = self.set()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok((p, c))
    }

    fn set(&mut self) -> Result<Vec<Rule>, GentzenError> {
        self.expect("{")?;
        let mut out = Vec::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            out.push(self.rule()?);
            if self.eat("}") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn rule(&mut self) -> Result<Rule, GentzenError> {
        self.expect("(")?;
        let premises = self.digits()?;
        if !self.eat("|-") && !self.eat("⊢") {
            return Err(self.err("expected \"|-\""));
        }
        let conclusions = self.digits()?;
        self.expect(")")?;
        Ok(Rule { premises, conclusions })
    }

    fn digits(&mut self) -> Result<u16, GentzenError> {
        let mut mask = 0u16;
        loop {
            self.skip_ws();
            match self.text[self.pos..].chars().next() {
                Some(c @ '1'..='9') => {
                    mask |= 1 << (c as u8 - b'1');
                    self.pos += 1;
                }
                Some('0') => return Err(self.err("indices start at 1")),
                _ => return Ok(mask),
            }
        }
    }
}

/// The table of the connective under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectiveTable {
    Unary(UnaryTable),
    Binary(BinaryTable),
}

impl ConnectiveTable {
    pub fn of(scheme: &Scheme, conn: Connective) -> ConnectiveTable {
        match conn {
            Connective::Neg => ConnectiveTable::Unary(scheme.neg),
            Connective::And => ConnectiveTable::Binary(scheme.and),
            Connective::Or => ConnectiveTable::Binary(scheme.or),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            ConnectiveTable::Unary(_) => 1,
            ConnectiveTable::Binary(_) => 2,
        }
    }

    fn apply(&self, args: &[TruthValue]) -> TruthValue {
        match self {
            ConnectiveTable::Unary(t) => t.apply(args[0]),
            ConnectiveTable::Binary(t) => t.apply(args[0], args[1]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Premise,
    Conclusion,
}

/// Context formula over atom indices; indices below the arity are the
/// arguments `F_i`, the rest are context atoms. `Compound` is `C(F)`.
#[derive(Clone, Debug)]
enum Ctx {
    Atom(usize),
    Compound,
    Not(Box<Ctx>),
    And(Box<Ctx>, Box<Ctx>),
    Or(Box<Ctx>, Box<Ctx>),
}

impl Ctx {
    fn eval(&self, v: &[TruthValue], compound: TruthValue, s: &Scheme) -> TruthValue {
        match self {
            Ctx::Atom(i) => v[*i],
            Ctx::Compound => compound,
            Ctx::Not(a) => s.neg.apply(a.eval(v, compound, s)),
            Ctx::And(a, b) => s.and.apply(a.eval(v, compound, s), b.eval(v, compound, s)),
            Ctx::Or(a, b) => s.or.apply(a.eval(v, compound, s), b.eval(v, compound, s)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Ctx::Or(..) => 1,
            Ctx::And(..) => 2,
            Ctx::Not(_) => 3,
            Ctx::Atom(_) | Ctx::Compound => 4,
        }
    }

    /// Printed like formulas, with the compound shown as `C(p, q)`.
    fn render(&self, n: usize, names: &[String]) -> String {
        let wrap = |c: &Ctx, paren: bool| {
            let t = c.render(n, names);
            if paren {
                format!("({t})")
            } else {
                t
            }
        };
        match self {
            Ctx::Atom(i) => names[*i].clone(),
            Ctx::Compound => format!("C({})", names[..n].join(", ")),
            Ctx::Not(a) => format!("~{}", wrap(a, a.precedence() < 3)),
            Ctx::And(a, b) => format!("{} & {}", wrap(a, a.precedence() < 2), wrap(b, b.precedence() <= 2)),
            Ctx::Or(a, b) => format!("{} | {}", wrap(a, a.precedence() < 1), wrap(b, b.precedence() <= 1)),
        }
    }
}

/// A context `Γ, Δ`: argument masks plus context formulas per side.
#[derive(Clone, Debug)]
struct Context {
    gamma_args: u16,
    gamma: Vec<Ctx>,
    delta_args: u16,
    delta: Vec<Ctx>,
    /// Context atoms beyond the arguments.
    extra_atoms: usize,
    /// Arguments instantiated by a constant instead of an atom.
    pins: Vec<Option<TruthValue>>,
}

/// One sequent to test in a context: extra argument masks on each side and
/// whether `C(F)` is added to either side.
#[derive(Clone, Copy, Debug)]
struct Probe {
    premises: u16,
    conclusions: u16,
    compound: Option<Side>,
}

impl Probe {
    fn target(side: Side) -> Probe {
        Probe { premises: 0, conclusions: 0, compound: Some(side) }
    }

    fn rule(r: Rule) -> Probe {
        Probe { premises: r.premises, conclusions: r.conclusions, compound: None }
    }
}

/// Validity of each probe in the context, by brute force over all
/// valuations of the arguments and context atoms.
fn probe_validity(
    conn: &ConnectiveTable,
    ctx: &Context,
    scheme: &Scheme,
    relation: &ConsequenceRelation,
    probes: &[Probe],
) -> Vec<bool> {
    let n = conn.arity();
    let atoms = n + ctx.extra_atoms;
    let members = relation.members();
    let mut valid = vec![true; probes.len()];
    let mut v = vec![TruthValue::F; atoms];
    let mut gamma_vals = Vec::with_capacity(ctx.gamma.len() + n);
    let mut delta_vals = Vec::with_capacity(ctx.delta.len() + n);
    let total = 3usize.pow(atoms as u32);
    for code in 0..total {
        let mut c = code;
        for slot in v.iter_mut() {
            *slot = TruthValue::ALL[c % 3];
            c /= 3;
        }
        if ctx.pins.iter().zip(&v).any(|(pin, x)| pin.is_some_and(|p| p != *x)) {
            continue;
        }
        let compound = conn.apply(&v[..n]);
        gamma_vals.clear();
        delta_vals.clear();
        gamma_vals.extend(ctx.gamma.iter().map(|f| f.eval(&v, compound, scheme)));
        gamma_vals.extend((0..n).filter(|i| ctx.gamma_args >> i & 1 == 1).map(|i| v[i]));
        delta_vals.extend(ctx.delta.iter().map(|f| f.eval(&v, compound, scheme)));
        delta_vals.extend((0..n).filter(|i| ctx.delta_args >> i & 1 == 1).map(|i| v[i]));
        for m in members {
            if !m.refuted_by(&gamma_vals, &delta_vals) {
                continue;
            }
            for (p, ok) in probes.iter().zip(valid.iter_mut()) {
                if !*ok {
                    continue;
                }
                let prem = (0..n).filter(|i| p.premises >> i & 1 == 1).all(|i| m.premise.contains(v[i]))
                    && (p.compound != Some(Side::Premise) || m.premise.contains(compound));
                let concl = (0..n).filter(|i| p.conclusions >> i & 1 == 1).all(|i| !m.conclusion.contains(v[i]))
                    && (p.compound != Some(Side::Conclusion) || !m.conclusion.contains(compound));
                if prem && concl {
                    *ok = false;
                }
            }
        }
    }
    valid
}

fn argument_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["p", "q", "r"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("p{i}")).collect()
    }
}

/// The finite context family, in a fixed order: `Γ` mask major, `Δ` mask
/// minor. Bits below `n` pick arguments, bit `n` adds `C(F)` and bit
/// `n + 1` the side's fresh atom.
fn finite_contexts(n: usize) -> impl Iterator<Item = Context> {
    let width = 1u16 << (n + 2);
    let arg_mask = (1u16 << n) - 1;
    let forms = move |bits: u16, fresh: usize| {
        let mut out = Vec::new();
        if bits >> n & 1 == 1 {
            out.push(Ctx::Compound);
        }
        if bits >> (n + 1) & 1 == 1 {
            out.push(Ctx::Atom(fresh));
        }
        out
    };
    (0..width).flat_map(move |g| {
        (0..width).map(move |d| Context {
            gamma_args: g & arg_mask,
            gamma: forms(g, n),
            delta_args: d & arg_mask,
            delta: forms(d, n + 1),
            extra_atoms: 2,
            pins: Vec::new(),
        })
    })
}

/// A context where one side's biconditional fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingContext {
    pub side: Side,
    /// What each argument `F_i` was instantiated to.
    pub arguments: Vec<String>,
    pub gamma: Vec<String>,
    pub delta: Vec<String>,
    /// Validity of the sequent with `C(F)` on `side`.
    pub compound_valid: bool,
    /// Validity of the conjunction of that side's rules.
    pub rules_valid: bool,
}

impl FailingContext {
    fn new(side: Side, ctx: &Context, n: usize, names: &[String], compound_valid: bool, rules_valid: bool) -> Self {
        let list = |args: u16, forms: &[Ctx]| {
            let mut out: Vec<String> = (0..n).filter(|i| args >> i & 1 == 1).map(|i| names[i].clone()).collect();
            out.extend(forms.iter().map(|f| f.render(n, names)));
            out
        };
        FailingContext {
            side,
            arguments: names[..n].to_vec(),
            gamma: list(ctx.gamma_args, &ctx.gamma),
            delta: list(ctx.delta_args, &ctx.delta),
            compound_valid,
            rules_valid,
        }
    }
}

impl fmt::Display for FailingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let valid = |b: bool| if b { "valid" } else { "invalid" };
        write!(
            f,
            "{} side, C({}), Γ = {{{}}}, Δ = {{{}}}: sequent with the connective is {}, rules give {}",
            match self.side {
                Side::Premise => "premise",
                Side::Conclusion => "conclusion",
            },
            self.arguments.join(", "),
            self.gamma.join(", "),
            self.delta.join(", "),
            valid(self.compound_valid),
            valid(self.rules_valid)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleCheck {
    pub holds: bool,
    pub failure: Option<FailingContext>,
}

/// Checks one context; returns the first side that fails.
fn check_context(
    conn: &ConnectiveTable,
    schema: &RuleSchema,
    ctx: &Context,
    scheme: &Scheme,
    relation: &ConsequenceRelation,
    names: &[String],
) -> Option<FailingContext> {
    for side in [Side::Premise, Side::Conclusion] {
        let mut probes = vec![Probe::target(side)];
        probes.extend(schema.rules(side).iter().map(|&r| Probe::rule(r)));
        let valid = probe_validity(conn, ctx, scheme, relation, &probes);
        let rules = valid[1..].iter().all(|&b| b);
        if valid[0] != rules {
            return Some(FailingContext::new(side, ctx, conn.arity(), names, valid[0], rules));
        }
    }
    None
}

fn finite_names(n: usize) -> Vec<String> {
    let mut names = argument_names(n);
    names.extend(["x".to_string(), "y".to_string()]);
    names
}

/// Which formulas the arguments `F_i` range over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Language {
    /// Formulas over atoms only.
    #[default]
    ConstantFree,
    /// Also the constants `1`, `n`, `0`. An argument equal to `n` can be
    /// middle-valued under every valuation, which no atom can.
    WithConstants,
}

/// Whether `schema` describes `conn` under `relation` on the finite
/// context family, with the first failing context if not.
pub fn check_rule_detailed(
    conn: &ConnectiveTable,
    schema: &RuleSchema,
    relation: &ConsequenceRelation,
) -> Result<RuleCheck, GentzenError> {
    check_rule_in(conn, schema, relation, Language::ConstantFree)
}

/// As [`check_rule_detailed`], for the chosen argument language.
pub fn check_rule_in(
    conn: &ConnectiveTable,
    schema: &RuleSchema,
    relation: &ConsequenceRelation,
    language: Language,
) -> Result<RuleCheck, GentzenError> {
    let n = conn.arity();
    if schema.arity() != n {
        return Err(GentzenError::ArityMismatch { connective: n, schema: schema.arity() });
    }
    let choices: &[Option<TruthValue>] = match language {
        Language::ConstantFree => &[None],
        Language::WithConstants => &[None, Some(TruthValue::T), Some(TruthValue::N), Some(TruthValue::F)],
    };
    // context formulas here are atoms, so any scheme will do
    let scheme = Scheme::strong_kleene();
    for code in 0..choices.len().pow(n as u32) {
        let pins: Vec<Option<TruthValue>> =
            (0..n).map(|i| choices[code / choices.len().pow(i as u32) % choices.len()]).collect();
        let mut names = finite_names(n);
        for (name, pin) in names.iter_mut().zip(&pins) {
            if let Some(v) = pin {
                *name = format!("const({v})");
            }
        }
        for mut ctx in finite_contexts(n) {
            ctx.pins = pins.clone();
            if let Some(failure) = check_context(conn, schema, &ctx, &scheme, relation, &names) {
                return Ok(RuleCheck { holds: false, failure: Some(failure) });
            }
        }
    }
    Ok(RuleCheck { holds: true, failure: None })
}

pub fn check_rule(
    conn: &ConnectiveTable,
    schema: &RuleSchema,
    relation: &ConsequenceRelation,
) -> Result<bool, GentzenError> {
    check_rule_detailed(conn, schema, relation).map(|c| c.holds)
}

/// One bit per context of the finite family; 256 contexts at arity 2.
type Bits = [u64; 4];

fn and(a: Bits, b: Bits) -> Bits {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]]
}

/// Validity of each probe across the finite family.
fn profiles(conn: &ConnectiveTable, relation: &ConsequenceRelation, probes: &[Probe]) -> Vec<Bits> {
    let scheme = Scheme::strong_kleene();
    let mut out = vec![[0u64; 4]; probes.len()];
    for (i, ctx) in finite_contexts(conn.arity()).enumerate() {
        for (bits, valid) in out.iter_mut().zip(probe_validity(conn, &ctx, &scheme, relation, probes)) {
            if valid {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
    }
    out
}

/// The least rule set, by size and then rule order, whose conjunction has
/// exactly the profile `target`.
fn least_rule_set(candidates: &[(Rule, Bits)], target: Bits, full: Bits) -> Option<Vec<Rule>> {
    // a rule that is invalid somewhere the target is valid can never appear
    let usable: Vec<(Rule, Bits)> = candidates.iter().copied().filter(|&(_, p)| and(p, target) == target).collect();
    let floor = usable.iter().fold(full, |m, &(_, p)| and(m, p));
    if floor != target {
        return None;
    }
    fn combos(usable: &[(Rule, Bits)], k: usize, start: usize, acc: Bits, pick: &mut Vec<Rule>, target: Bits) -> bool {
        if pick.len() == k {
            return acc == target;
        }
        for i in start..usable.len() {
            pick.push(usable[i].0);
            if combos(usable, k, i + 1, and(acc, usable[i].1), pick, target) {
                return true;
            }
            pick.pop();
        }
        false
    }
    (0..=usable.len()).find_map(|k| {
        let mut pick = Vec::with_capacity(k);
        combos(&usable, k, 0, full, &mut pick, target).then_some(pick)
    })
}

/// The least schema for `conn` under `relation` on the finite family, or
/// `None` when no choice of rule sets works.
pub fn find_regular_schema(
    conn: &ConnectiveTable,
    relation: &ConsequenceRelation,
) -> Result<Option<RuleSchema>, GentzenError> {
    let n = conn.arity();
    if n > 2 {
        return Err(GentzenError::UnsupportedArity(n));
    }
    let contexts = 1usize << (2 * (n + 2));
    let mut full = [0u64; 4];
    for i in 0..contexts {
        full[i / 64] |= 1 << (i % 64);
    }
    let mut patterns: Vec<Rule> = (0..1u16 << n)
        .flat_map(|p| (0..1u16 << n).map(move |c| Rule { premises: p, conclusions: c }))
        .collect();
    patterns.sort();
    let mut probes: Vec<Probe> = patterns.iter().map(|&r| Probe::rule(r)).collect();
    probes.extend([Probe::target(Side::Premise), Probe::target(Side::Conclusion)]);
    let bits = profiles(conn, relation, &probes);
    let candidates: Vec<(Rule, Bits)> = patterns.iter().copied().zip(bits.iter().copied()).collect();
    let mut sides = Vec::with_capacity(2);
    for target in [bits[patterns.len()], bits[patterns.len() + 1]] {
        match least_rule_set(&candidates, target, full) {
            Some(rules) => sides.push(rules),
            None => return Ok(None),
        }
    }
    let c = sides.pop().unwrap_or_default();
    let p = sides.pop().unwrap_or_default();
    RuleSchema::new(n, p, c).map(Some)
}

/// Whether, for atoms only, `Γ ⊢ Δ` is valid exactly when `Γ` and `Δ`
/// share an atom. Ranges over all `Γ, Δ` drawn from `atom_budget` atoms.
pub fn atomic_structural_check(relation: &ConsequenceRelation, atom_budget: usize) -> bool {
    let k = atom_budget.min(8);
    let members = relation.members();
    let valuations = 3usize.pow(k as u32);
    let mut v = vec![TruthValue::F; k];
    for g in 0u32..1 << k {
        for d in 0u32..1 << k {
            let mut valid = true;
            'search: for code in 0..valuations {
                let mut c = code;
                for slot in v.iter_mut() {
                    *slot = TruthValue::ALL[c % 3];
                    c /= 3;
                }
                let prem: Vec<TruthValue> = (0..k).filter(|i| g >> i & 1 == 1).map(|i| v[i]).collect();
                let concl: Vec<TruthValue> = (0..k).filter(|i| d >> i & 1 == 1).map(|i| v[i]).collect();
                for m in members {
                    if m.refuted_by(&prem, &concl) {
                        valid = false;
                        break 'search;
                    }
                }
            }
            if valid != (g & d != 0) {
                return false;
            }
        }
    }
    true
}

/// Context atoms available to the audit.
pub const AUDIT_ATOMS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub contexts: usize,
    /// Verdict on the finite family.
    pub finite_verdict: bool,
    /// Random contexts on which a biconditional failed.
    pub failures: usize,
    pub first_failure: Option<FailingContext>,
}

impl AuditReport {
    /// A passing finite verdict must survive every random context.
    pub fn stable(&self) -> bool {
        !self.finite_verdict || self.failures == 0
    }
}

/// Random formula over atoms `0..atoms` and the compound.
fn random_ctx<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> Ctx {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..=atoms) {
            i if i == atoms => Ctx::Compound,
            i => Ctx::Atom(i),
        };
    }
    let op = rng.gen_range(0..3);
    let mut sub = || Box::new(random_ctx(rng, atoms, depth - 1));
    match op {
        0 => Ctx::Not(sub()),
        1 => Ctx::And(sub(), sub()),
        _ => Ctx::Or(sub(), sub()),
    }
}

/// Re-runs `schema` on `contexts` random contexts. Each side gets a random
/// subset of the arguments and up to three formulas of depth at most 2 over
/// the arguments, the compound and [`AUDIT_ATOMS`] context atoms shared by
/// both sides. Context connectives are read from `context_scheme`.
pub fn audit_rule(
    conn: &ConnectiveTable,
    schema: &RuleSchema,
    context_scheme: &Scheme,
    relation: &ConsequenceRelation,
    contexts: usize,
    seed: u64,
) -> Result<AuditReport, GentzenError> {
    let finite_verdict = check_rule(conn, schema, relation)?;
    let n = conn.arity();
    let mut names = argument_names(n);
    names.extend((1..=AUDIT_ATOMS).map(|i| format!("z{i}")));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..contexts {
        let arg_mask = (1u16 << n) - 1;
        let side = |rng: &mut ChaCha8Rng| {
            let args = rng.gen_range(0..=arg_mask);
            let count = rng.gen_range(0..=3);
            let forms = (0..count).map(|_| random_ctx(rng, n + AUDIT_ATOMS, 2)).collect::<Vec<_>>();
            (args, forms)
        };
        let (gamma_args, gamma) = side(&mut rng);
        let (delta_args, delta) = side(&mut rng);
        let ctx = Context { gamma_args, gamma, delta_args, delta, extra_atoms: AUDIT_ATOMS, pins: Vec::new() };
        if let Some(f) = check_context(conn, schema, &ctx, context_scheme, relation, &names) {
            failures += 1;
            first_failure.get_or_insert(f);
        }
    }
    Ok(AuditReport { contexts, finite_verdict, failures, first_failure })
}
