//! Command-line front end. Data goes to `out` as JSON (or a plain table
//! under `--pretty`), diagnostics to `err`.
//!
//! Exit codes: 0 on success, 1 when `--strict` is set and the answer is
//! negative (invalid, not classical, none found, disagreement), 2 on usage
//! or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::census;
use crate::classicality::{self, cross_validate, SchemeSpace, SearchBounds, SearchSession};
use crate::error::Error;
use crate::gentzen::{self, ConnectiveTable, Language, RuleSchema};
use crate::properties::classify;
use crate::schemes;
use crate::semantics::{self, NamedRelation, Valuation};
use crate::syntax::parse_sequent;
use crate::table::{Connective, Scheme};

#[derive(Parser, Debug)]
#[command(name = "trivalent", version, about = "Three-valued schemes and mixed consequence relations")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Exit with status 1 when the answer is negative.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SchemeArg {
    /// Scheme name (sk, wk, cantwell), encoding `NEG:..;AND:..;OR:..` or JSON.
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Scheme,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoundsArgs {
    /// Atoms available to the search (at most 3).
    #[arg(long, default_value_t = SearchBounds::default().max_atoms)]
    pub atoms: usize,
    /// Largest connective depth of a formula.
    #[arg(long, default_value_t = SearchBounds::default().max_depth)]
    pub depth: usize,
    /// Largest number of formulas on each side of a sequent.
    #[arg(long, default_value_t = SearchBounds::default().max_side)]
    pub side: usize,
}

impl BoundsArgs {
    fn bounds(self) -> SearchBounds {
        SearchBounds { max_atoms: self.atoms, max_depth: self.depth, max_side: self.side }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Property flags of a scheme.
    Classify {
        #[command(flatten)]
        scheme: SchemeArg,
    },
    /// Validity of one sequent, with a counter-valuation if invalid.
    Check {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        relation: NamedRelation,
        #[arg(long)]
        sequent: String,
    },
    /// Whether the scheme and relation give classical logic.
    Decide {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        relation: NamedRelation,
    },
    /// Least sequent separating the scheme's logic from classical logic.
    Search {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        relation: NamedRelation,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Number of classical schemes.
    Count {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        relation: Option<NamedRelation>,
        /// All five relations.
        #[arg(long)]
        all: bool,
    },
    /// Classical schemes as JSON lines, sorted by encoding.
    Export {
        #[arg(long)]
        relation: NamedRelation,
        #[arg(long)]
        out: PathBuf,
    },
    /// Whether a rule schema describes one connective of the scheme.
    GentzenCheck {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        relation: NamedRelation,
        #[arg(long)]
        connective: Connective,
        /// Rule schema, e.g. `P:{(12|-)};C:{(|-1),(|-2)}`.
        #[arg(long)]
        schema: String,
        /// Let arguments also be the constants 1, n and 0.
        #[arg(long)]
        constants: bool,
    },
    /// Least rule schema for one connective of the scheme.
    GentzenSearch {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        relation: NamedRelation,
        #[arg(long)]
        connective: Connective,
    },
    /// Compare the characterization with the bounded search over a space.
    CrossValidate {
        /// `bn` or `random:N`, optionally `random:N@SEED`.
        #[arg(long, default_value = "bn")]
        space: SchemeSpace,
        /// Relation name or `all`.
        #[arg(long, default_value = "all")]
        relation: String,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Seed for `random:N` when the space does not give one.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    schemes::resolve(s).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(positive) => {
            if cli.strict && !positive {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string(value).map_err(|e| Error::Usage(e.to_string()))?;
    line(out, &text)
}

fn line(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    writeln!(out, "{text}").map_err(|source| Error::Io { path: PathBuf::from("<stdout>"), source })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the command; `Ok(false)` marks a negative answer.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, Error> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Classify { scheme } => {
            let c = classify(&scheme.scheme);
            if pretty {
                line(out, &format!("scheme               {}", scheme.scheme))?;
                line(out, &format!("boolean normal       {}", yes(c.boolean_normal)))?;
                line(out, &format!("monotonic            {}", yes(c.monotonic)))?;
                line(out, &format!("truth-collapsible    {}", yes(c.truth_collapsible)))?;
                line(out, &format!("falsity-collapsible  {}", yes(c.falsity_collapsible)))?;
            } else {
                emit(out, &c)?;
            }
            Ok(true)
        }
        Command::Check { scheme, relation, sequent } => {
            let sq = parse_sequent(sequent)?;
            let witness = semantics::find_witness(&sq, &scheme.scheme, &relation.relation())?;
            #[derive(Serialize)]
            struct CheckOut<'a> {
                relation: NamedRelation,
                sequent: String,
                valid: bool,
                witness: Option<&'a Valuation>,
            }
            if pretty {
                match &witness {
                    None => line(out, &format!("{sq} is {relation}-valid"))?,
                    Some(v) => line(out, &format!("{sq} is {relation}-invalid, witness {v}"))?,
                }
            } else {
                emit(
                    out,
                    &CheckOut { relation: *relation, sequent: sq.to_string(), valid: witness.is_none(), witness: witness.as_ref() },
                )?;
            }
            Ok(witness.is_none())
        }
        Command::Decide { scheme, relation } => {
            let v = classicality::decide(&scheme.scheme, *relation);
            if pretty {
                line(out, &format!("{} under {}: {}", v.scheme, relation, if v.classical { "classical" } else { "not classical" }))?;
                line(out, &format!("rationale: {}", v.rationale))?;
                if let Some(w) = &v.witness {
                    line(out, &format!("witness: {} ({}), valuation {}", w.sequent, w.direction.label(*relation), w.valuation))?;
                }
            } else {
                emit(out, &v)?;
            }
            Ok(v.classical)
        }
        Command::Search { scheme, relation, bounds } => {
            let mut session = SearchSession::new(&scheme.scheme, bounds.bounds())?;
            let found = session.search(&relation.relation())?;
            match &found {
                None => line(out, "none")?,
                Some(w) if pretty => {
                    line(out, &format!("{} ({}), valuation {}", w.sequent, w.direction.label(*relation), w.valuation))?
                }
                Some(w) => {
                    #[derive(Serialize)]
                    struct SearchOut<'a> {
                        sequent: String,
                        valuation: &'a Valuation,
                        direction: String,
                    }
                    emit(
                        out,
                        &SearchOut { sequent: w.sequent.to_string(), valuation: &w.valuation, direction: w.direction.label(*relation) },
                    )?
                }
            }
            Ok(found.is_some())
        }
        Command::Count { relation, all } => {
            if *all {
                let rows: Vec<census::RelationCount> = NamedRelation::ALL
                    .iter()
                    .map(|&r| census::RelationCount { relation: r, count: census::count_classical(r) })
                    .collect();
                if pretty {
                    line(out, "relation  classical schemes")?;
                    for r in &rows {
                        line(out, &format!("{:<8}  {}", r.relation.name(), r.count))?;
                    }
                } else {
                    emit(out, &rows)?;
                }
            } else if let Some(r) = relation {
                line(out, &census::count_classical(*r).to_string())?;
            }
            Ok(true)
        }
        Command::Export { relation, out: path } => {
            let lines = census::export_census(*relation, path)?;
            #[derive(Serialize)]
            struct ExportOut {
                relation: NamedRelation,
                path: String,
                lines: usize,
            }
            if pretty {
                line(out, &format!("wrote {lines} lines to {}", path.display()))?;
            } else {
                emit(out, &ExportOut { relation: *relation, path: path.display().to_string(), lines })?;
            }
            Ok(true)
        }
        Command::GentzenCheck { scheme, relation, connective, schema, constants } => {
            let table = ConnectiveTable::of(&scheme.scheme, *connective);
            let schema = RuleSchema::parse(schema, connective.arity())?;
            let language = if *constants { Language::WithConstants } else { Language::ConstantFree };
            let check = gentzen::check_rule_in(&table, &schema, &relation.relation(), language)?;
            if pretty {
                match &check.failure {
                    None => line(out, &format!("{schema} holds for {connective} under {relation}"))?,
                    Some(f) => line(out, &format!("{schema} fails for {connective} under {relation}: {f}"))?,
                }
            } else {
                emit(out, &check)?;
            }
            Ok(check.holds)
        }
        Command::GentzenSearch { scheme, relation, connective } => {
            let table = ConnectiveTable::of(&scheme.scheme, *connective);
            let found = gentzen::find_regular_schema(&table, &relation.relation())?;
            match &found {
                Some(s) => line(out, &s.to_string())?,
                None => line(out, "none")?,
            }
            Ok(found.is_some())
        }
        Command::CrossValidate { space, relation, jobs, seed, bounds } => {
            let space = match (space, seed) {
                (SchemeSpace::Random { count, .. }, Some(seed)) => SchemeSpace::Random { count: *count, seed: *seed },
                (other, _) => other.clone(),
            };
            let relations: Vec<NamedRelation> = if relation.trim().eq_ignore_ascii_case("all") {
                NamedRelation::ALL.to_vec()
            } else {
                vec![relation.parse().map_err(Error::Usage)?]
            };
            let report = cross_validate(&space.to_string(), &space.schemes(), &relations, bounds.bounds(), *jobs)?;
            if pretty {
                let b = report.bounds;
                line(
                    out,
                    &format!(
                        "space {} ({} schemes), atoms {}, depth {}, side {}",
                        report.space, report.schemes, b.max_atoms, b.max_depth, b.max_side
                    ),
                )?;
                line(out, "relation  classical  witnessed  disagreements")?;
                for r in &report.relations {
                    let name = r.relation.map(|r| r.name()).unwrap_or("?");
                    line(out, &format!("{name:<8}  {:>9}  {:>9}  {:>13}", r.classical, r.witnessed, r.disagreements))?;
                }
                for d in &report.disagreements {
                    line(out, &format!("disagreement: {} under {}", d.scheme, d.relation))?;
                }
            } else {
                emit(out, &report)?;
            }
            Ok(report.agrees())
        }
    }
}
