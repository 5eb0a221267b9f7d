//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use trivalent::classicality::cross::{boolean_normal_schemes, random_scheme};
use trivalent::properties::Family;
use trivalent::{BinaryTable, Connective, Formula, Scheme, Sequent, UnaryTable};

pub const ATOMS: [&str; 3] = ["p", "q", "r"];

/// Random formula of depth at most `depth` over the first `atoms` of [`ATOMS`].
pub fn formula<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::atom(ATOMS[rng.gen_range(0..atoms)]);
    }
    match rng.gen_range(0..3) {
        0 => formula(rng, atoms, depth - 1).not(),
        1 => formula(rng, atoms, depth - 1).and(formula(rng, atoms, depth - 1)),
        _ => formula(rng, atoms, depth - 1).or(formula(rng, atoms, depth - 1)),
    }
}

/// Random sequent with up to three formulas a side. Sometimes a premise is
/// repeated as a conclusion so classically valid sequents are common.
pub fn sequent<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> Sequent {
    let side = |rng: &mut R| (0..rng.gen_range(0..=3)).map(|_| formula(rng, atoms, depth)).collect::<Vec<_>>();
    let premises = side(rng);
    let mut conclusions = side(rng);
    if !premises.is_empty() && rng.gen_bool(0.3) {
        conclusions.push(premises.choose(rng).unwrap().clone());
    }
    Sequent::new(premises, conclusions)
}

struct Pools {
    neg: Vec<UnaryTable>,
    and: Vec<BinaryTable>,
    or: Vec<BinaryTable>,
}

fn pools(family: Family) -> &'static Pools {
    static CELLS: [OnceLock<Pools>; 5] = [const { OnceLock::new() }; 5];
    let slot = trivalent::census::FAMILIES.iter().position(|f| *f == family).unwrap();
    CELLS[slot].get_or_init(|| Pools {
        neg: UnaryTable::all().filter(|t| family.unary_member(t)).collect(),
        and: BinaryTable::all().filter(|t| family.binary_member(t, Connective::And)).collect(),
        or: BinaryTable::all().filter(|t| family.binary_member(t, Connective::Or)).collect(),
    })
}

/// Uniform member of one of the classicality families.
pub fn family_scheme<R: Rng>(rng: &mut R, family: Family) -> Scheme {
    let p = pools(family);
    Scheme::new(*p.neg.choose(rng).unwrap(), *p.and.choose(rng).unwrap(), *p.or.choose(rng).unwrap())
}

fn boolean_normal() -> &'static [Scheme] {
    static CELL: OnceLock<Vec<Scheme>> = OnceLock::new();
    CELL.get_or_init(boolean_normal_schemes)
}

/// Uniform draws, Boolean-normal draws and family members in equal parts,
/// so that every property's premise is exercised.
pub fn mixed_scheme<R: Rng>(rng: &mut R) -> Scheme {
    match rng.gen_range(0..3) {
        0 => random_scheme(rng),
        1 => *boolean_normal().choose(rng).unwrap(),
        _ => {
            let family = *trivalent::census::FAMILIES.choose(rng).unwrap();
            family_scheme(rng, family)
        }
    }
}
