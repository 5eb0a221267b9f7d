//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Built with `harness = false`, so `cargo test --test acceptance` runs
//! `main` directly and its output is never captured.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trivalent::classicality::cross::{cross_validate, SchemeSpace};
use trivalent::classicality::{self, SearchBounds};
use trivalent::gentzen::{self, ConnectiveTable, RuleSchema};
use trivalent::properties::{self, AdjacencyMode};
use trivalent::semantics::Checker;
use trivalent::syntax::{parse_formula, parse_sequent};
use trivalent::{census, classify, schemes, BinaryTable, Connective, NamedRelation, Scheme};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn counts() -> Outcome {
    let want = [
        (NamedRelation::Ss, 8192),
        (NamedRelation::Tt, 8192),
        (NamedRelation::St, 528),
        (NamedRelation::Ts, 0),
        (NamedRelation::SsTt, 0),
    ];
    let mut got = Vec::new();
    for (r, expected) in want {
        let n = census::count_classical(r);
        ensure(n == expected, || format!("{r}: {n}, expected {expected}"))?;
        got.push(format!("{r}={n}"));
    }
    Ok(got.join(" "))
}

fn st_decomposition() -> Outcome {
    let d = census::decompose_st();
    ensure(
        (d.monotonic, d.truth_collapsible, d.falsity_collapsible, d.overlaps, d.total) == (16, 256, 256, 0, 528),
        || format!("{d:?}"),
    )?;
    Ok(format!("{} + {} + {} = {}, overlaps {}", d.monotonic, d.truth_collapsible, d.falsity_collapsible, d.total, d.overlaps))
}

fn named_schemes() -> Outcome {
    let sk = schemes::named("sk").map_err(|e| e.to_string())?;
    let wk = schemes::named("wk").map_err(|e| e.to_string())?;
    let cantwell = schemes::named("cantwell").map_err(|e| e.to_string())?;
    for (name, s, r) in [("SK", &sk, NamedRelation::St), ("WK", &wk, NamedRelation::St), ("Cantwell", &cantwell, NamedRelation::Tt)] {
        let v = classicality::decide(s, r);
        ensure(v.classical && v.witness.is_none(), || format!("{name} under {r}: {v:?}"))?;
    }
    let expect_witness = |s: &Scheme, r: NamedRelation, sequent: &str| -> Result<(), String> {
        let v = classicality::decide(s, r);
        let w = v.witness.as_ref().ok_or_else(|| format!("{} under {r}: no witness", s.encode()))?;
        let want = parse_sequent(sequent).unwrap();
        ensure(!v.classical && w.sequent == want, || format!("{} under {r}: got {}", s.encode(), w.sequent))?;
        ensure(w.recheck(s, r), || format!("{} under {r}: witness does not re-check", s.encode()))
    };
    expect_witness(&sk, NamedRelation::Ss, "|- p | ~p")?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut all = vec![sk, wk, cantwell];
    all.extend((0..200).map(|_| common::mixed_scheme(&mut rng)));
    for s in &all {
        expect_witness(s, NamedRelation::Ts, "p |- p")?;
    }
    Ok(format!("verdicts exact, ts witness re-checked on {} schemes", all.len()))
}

fn sweep(space: SchemeSpace) -> Outcome {
    let schemes = space.schemes();
    let report = cross_validate(&space.to_string(), &schemes, &NamedRelation::ALL, SearchBounds::default(), None)
        .map_err(|e| e.to_string())?;
    let checks: usize = report.relations.iter().map(|r| r.schemes).sum();
    ensure(report.agrees(), || {
        format!("{} disagreements, first {:?}", report.disagreements.len(), report.disagreements.first())
    })?;
    Ok(format!("{} schemes x {} relations = {checks} checks, 0 disagreements", schemes.len(), NamedRelation::ALL.len()))
}

fn boolean_normal_sweep() -> Outcome {
    sweep(SchemeSpace::BooleanNormal)
}

fn random_sweep() -> Outcome {
    sweep(SchemeSpace::Random { count: 1000, seed: 2024 })
}

fn inclusion_properties() -> Outcome {
    const PAIRS: usize = 20_000;
    let checker = Checker::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut exercised = [0usize; 5];
    for _ in 0..PAIRS {
        let s = common::mixed_scheme(&mut rng);
        let sq = common::sequent(&mut rng, 3, 4);
        let c = classify(&s);
        let valid = |r: NamedRelation| checker.sequent_valid(&sq, &s, &r.relation()).unwrap();
        let classical = checker.classically_valid(&sq).unwrap();
        let fail = |what: &str| format!("{what}: {} on {sq}", s.encode());
        if c.boolean_normal {
            exercised[0] += 1;
            for r in [NamedRelation::Ss, NamedRelation::Tt, NamedRelation::St] {
                ensure(!valid(r) || classical, || fail(&format!("Boolean normal, {r}-valid but not classical")))?;
            }
        }
        if c.monotonic {
            exercised[1] += 1;
            ensure(!classical || valid(NamedRelation::St), || fail("monotonic, classical but not st-valid"))?;
        }
        if c.falsity_collapsible {
            exercised[2] += 1;
            for r in [NamedRelation::St, NamedRelation::Ss] {
                ensure(!classical || valid(r), || fail(&format!("falsity-collapsible, classical but not {r}-valid")))?;
            }
            exercised[4] += 1;
            ensure(!valid(NamedRelation::Ss) || classical, || fail("falsity-collapsible, ss-valid but not classical"))?;
        }
        if c.truth_collapsible {
            exercised[3] += 1;
            for r in [NamedRelation::Tt, NamedRelation::St] {
                ensure(!classical || valid(r), || fail(&format!("truth-collapsible, classical but not {r}-valid")))?;
            }
            exercised[4] += 1;
            ensure(!valid(NamedRelation::Tt) || classical, || fail("truth-collapsible, tt-valid but not classical"))?;
        }
    }
    ensure(exercised.iter().all(|&n| n >= 1000), || format!("too few pairs exercised: {exercised:?}"))?;
    Ok(format!("{PAIRS} pairs, premises held on {exercised:?}"))
}

fn lattice() -> Outcome {
    const PAIRS: usize = 12_000;
    let checker = Checker::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..PAIRS {
        let s = common::mixed_scheme(&mut rng);
        let sq = common::sequent(&mut rng, 3, 4);
        let v = |r: NamedRelation| checker.sequent_valid(&sq, &s, &r.relation()).unwrap();
        let (ss, tt, st, ts, sstt) =
            (v(NamedRelation::Ss), v(NamedRelation::Tt), v(NamedRelation::St), v(NamedRelation::Ts), v(NamedRelation::SsTt));
        let fail = |what: &str| format!("{what}: {} on {sq}", s.encode());
        ensure(!ts || sstt, || fail("ts-valid but not ss∩tt-valid"))?;
        ensure(!sstt || (ss && tt), || fail("ss∩tt-valid but not ss- and tt-valid"))?;
        ensure(!(ss || tt) || st, || fail("ss- or tt-valid but not st-valid"))?;
        let order = checker.order_valid(&sq, &s).unwrap();
        ensure(order == sstt, || fail("intersection and order forms differ"))?;
    }
    Ok(format!("{PAIRS} pairs, inclusions and order form hold"))
}

fn adjacency() -> Outcome {
    let mut tables = 0;
    let mut monotonic = 0;
    for t in BinaryTable::all().filter(properties::has_boolean_corners) {
        tables += 1;
        let by_definition = properties::is_monotonic_op(&t);
        let by_adjacency = properties::is_monotonic_adjacency(&t, AdjacencyMode::Full).map_err(|e| e.to_string())?;
        ensure(by_definition == by_adjacency, || format!("{t}: definition {by_definition}, adjacency {by_adjacency}"))?;
        monotonic += by_definition as usize;
    }
    ensure(tables == 3888, || format!("{tables} Boolean-cornered tables, expected 3888"))?;
    Ok(format!("{tables} tables agree ({monotonic} monotonic)"))
}

fn gentzen_suite() -> Outcome {
    let sk = Scheme::strong_kleene();
    let conns = [Connective::Neg, Connective::And, Connective::Or];
    let mut audited = 0;
    for r in [NamedRelation::St, NamedRelation::Ts] {
        let rel = r.relation();
        for conn in conns {
            let table = ConnectiveTable::of(&sk, conn);
            let schema = RuleSchema::lk(conn);
            ensure(gentzen::check_rule(&table, &schema, &rel).map_err(|e| e.to_string())?, || {
                format!("LK {conn} fails under {r}")
            })?;
            let audit = gentzen::audit_rule(&table, &schema, &sk, &rel, 10_000, 9).map_err(|e| e.to_string())?;
            ensure(audit.finite_verdict && audit.stable(), || format!("LK {conn} under {r} unstable: {audit:?}"))?;
            audited += audit.contexts;
        }
    }
    for r in NamedRelation::ALL {
        let holds = gentzen::atomic_structural_check(&r.relation(), 4);
        ensure(holds == (r != NamedRelation::Ts), || format!("atomic structural check under {r}: {holds}"))?;
    }
    let neg = ConnectiveTable::of(&sk, Connective::Neg);
    let found = gentzen::find_regular_schema(&neg, &NamedRelation::SsTt.relation()).map_err(|e| e.to_string())?;
    ensure(found.is_none(), || format!("SK negation under ss∩tt got schema {}", found.unwrap()))?;
    Ok(format!("LK holds under st and ts, atomic check as expected, {audited} audit contexts stable"))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10_000 {
        let f = common::formula(&mut rng, 3, 6);
        let text = f.to_string();
        let back = parse_formula(&text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == f, || format!("{text} parsed as {back:?}"))?;
    }
    Ok("10000 formulas".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact classical counts", counts),
        ("st decomposition", st_decomposition),
        ("named schemes and witnesses", named_schemes),
        ("Boolean-normal cross-validation", boolean_normal_sweep),
        ("random full-space audit", random_sweep),
        ("soundness inclusion properties", inclusion_properties),
        ("relation lattice and order form", lattice),
        ("adjacency monotonicity, full mode", adjacency),
        ("Gentzen suite", gentzen_suite),
        ("parser round-trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
