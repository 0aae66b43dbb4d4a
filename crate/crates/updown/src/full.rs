//! Full algebras over a named universe, componentwise products, and word
//! evaluation.
//!
//! The full action on a universe takes every subset as a state and every
//! pair `(down, up)` with `up ⊆ down` as an operation; the prime variant
//! admits all pairs. The full biaction keeps every subset in all three
//! sorts, acting by intersection and union, and the full set band
//! multiplies the operation pairs among themselves. Each constructor
//! returns the table together with the defining set representation.
//!
//! States are labeled by the decimal value of their bitmask (atom `i` is
//! bit `i`), operations by `"(down,up)"` in the same encoding. Operations
//! are listed with up-sets ascending and down-sets descending, so the
//! identity `(X,∅)` always comes first and the one-atom orders are
//! `(1,0) (0,0) (1,1)` and, primed, `(1,0) (0,0) (1,1) (0,1)`.

use std::collections::HashMap;

use crate::algebra::{FiniteAction, FiniteAlgebra, FiniteBiaction, FiniteSetBand, Kind};
use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::rep::{ActionRep, BandRep, BiactionRep, SetRepresentation};
use crate::word::{Letter, LetterSort};
use crate::Limits;

fn guard(universe: &[String], limits: &Limits) -> Result<()> {
    if universe.len() > limits.max_universe {
        return Err(Error::LimitExceeded {
            what: "full-algebra universe",
            size: universe.len() as u64,
            cap: limits.max_universe as u64,
        });
    }
    Ok(())
}

fn mask_set(n: usize, mask: u64) -> AtomSet {
    AtomSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

fn pair_label(down: u64, up: u64) -> String {
    format!("({down},{up})")
}

/// All operation pairs in presentation order: up-sets ascending, down-sets
/// descending, restricted to `up ⊆ down` unless `all_pairs`.
fn operation_pairs(n: usize, all_pairs: bool) -> Vec<(u64, u64)> {
    let full = (1u64 << n) - 1;
    let mut pairs = Vec::new();
    for up in 0..=full {
        for down in (0..=full).rev() {
            if all_pairs || up & down == up {
                pairs.push((down, up));
            }
        }
    }
    pairs
}

fn build_action(universe: &[String], limits: &Limits, prime: bool) -> Result<(FiniteAction, ActionRep)> {
    guard(universe, limits)?;
    let n = universe.len();
    let count = 1u64 << n;
    let pairs = operation_pairs(n, prime);
    let c_labels: Vec<String> = (0..count).map(|m| m.to_string()).collect();
    let s_labels: Vec<String> = pairs.iter().map(|&(d, u)| pair_label(d, u)).collect();
    let table = (0..count)
        .map(|c| pairs.iter().map(|&(d, u)| ((c & d) | u) as usize).collect())
        .collect();
    let action = FiniteAction::new(c_labels.clone(), s_labels.clone(), table)?;
    let rep = ActionRep::from_sets(
        universe.to_vec(),
        c_labels,
        (0..count).map(|m| mask_set(n, m)).collect(),
        s_labels,
        pairs.iter().map(|&(d, u)| (mask_set(n, d), mask_set(n, u))).collect(),
        prime,
    )?;
    Ok((action, rep))
}

/// The full action on the given atoms: `2^n` states, `3^n` operations.
pub fn full_action(universe: &[String], limits: &Limits) -> Result<(FiniteAction, ActionRep)> {
    build_action(universe, limits, false)
}

/// The primed full action: all `4^n` pairs, including those whose up-set
/// spills outside the down-set. The update formula is unchanged.
pub fn full_prime_action(universe: &[String], limits: &Limits) -> Result<(FiniteAction, ActionRep)> {
    build_action(universe, limits, true)
}

/// The full biaction on the given atoms: every subset in every sort,
/// intersect-sort elements acting by `∩`, union-sort elements by `∪`.
pub fn full_biaction(universe: &[String], limits: &Limits) -> Result<(FiniteBiaction, BiactionRep)> {
    guard(universe, limits)?;
    let n = universe.len();
    let count = 1u64 << n;
    let labels: Vec<String> = (0..count).map(|m| m.to_string()).collect();
    let table_down =
        (0..count).map(|c| (0..count).map(|s| (c & s) as usize).collect()).collect();
    let table_up = (0..count).map(|c| (0..count).map(|t| (c | t) as usize).collect()).collect();
    let biaction =
        FiniteBiaction::new(labels.clone(), labels.clone(), labels.clone(), table_down, table_up)?;
    let sets: Vec<AtomSet> = (0..count).map(|m| mask_set(n, m)).collect();
    let rep = BiactionRep::from_sets(
        universe.to_vec(),
        labels.clone(),
        sets.clone(),
        labels.clone(),
        sets.clone(),
        labels,
        sets,
    )?;
    Ok((biaction, rep))
}

/// The full set band on the given atoms: the `3^n` operation pairs under
/// `(x,y) ↦ ((x_down ∩ y_down) ∪ y_up, (x_up ∩ y_down) ∪ y_up)`.
pub fn full_setband(universe: &[String], limits: &Limits) -> Result<(FiniteSetBand, BandRep)> {
    guard(universe, limits)?;
    let n = universe.len();
    let pairs = operation_pairs(n, false);
    let index: HashMap<(u64, u64), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let s_labels: Vec<String> = pairs.iter().map(|&(d, u)| pair_label(d, u)).collect();
    let mul = pairs
        .iter()
        .map(|&(xd, xu)| {
            pairs
                .iter()
                .map(|&(yd, yu)| index[&((xd & yd) | yu, (xu & yd) | yu)])
                .collect()
        })
        .collect();
    let band = FiniteSetBand::new(s_labels.clone(), mul)?;
    let rep = BandRep::from_sets(
        universe.to_vec(),
        s_labels,
        pairs.iter().map(|&(d, u)| (mask_set(n, d), mask_set(n, u))).collect(),
    )?;
    Ok((band, rep))
}

/// The full algebra of the requested kind, with its representation.
pub fn full_algebra(
    kind: Kind,
    universe: &[String],
    limits: &Limits,
) -> Result<(FiniteAlgebra, SetRepresentation)> {
    Ok(match kind {
        Kind::Action => {
            let (a, r) = full_action(universe, limits)?;
            (a.into(), r.into())
        }
        Kind::Biaction => {
            let (b, r) = full_biaction(universe, limits)?;
            (b.into(), r.into())
        }
        Kind::SetBand => {
            let (b, r) = full_setband(universe, limits)?;
            (b.into(), r.into())
        }
    })
}

fn pair_labels(xs: &[String], ys: &[String]) -> Vec<String> {
    xs.iter().flat_map(|x| ys.iter().map(move |y| format!("({x},{y})"))).collect()
}

/// Componentwise product of two actions; element `(i,j)` sits at index
/// `i·|B| + j`.
pub fn product_action(a: &FiniteAction, b: &FiniteAction) -> Result<FiniteAction> {
    let bc = b.c_len();
    let mut table = Vec::with_capacity(a.c_len() * bc);
    for ca in 0..a.c_len() {
        for cb in 0..bc {
            let mut row = Vec::with_capacity(a.s_len() * b.s_len());
            for sa in 0..a.s_len() {
                for sb in 0..b.s_len() {
                    row.push(a.act(ca, sa) * bc + b.act(cb, sb));
                }
            }
            table.push(row);
        }
    }
    FiniteAction::new(
        pair_labels(a.c_labels(), b.c_labels()),
        pair_labels(a.s_labels(), b.s_labels()),
        table,
    )
}

/// Componentwise product of two biactions.
pub fn product_biaction(a: &FiniteBiaction, b: &FiniteBiaction) -> Result<FiniteBiaction> {
    let bc = b.c_len();
    let mut table_down = Vec::with_capacity(a.c_len() * bc);
    let mut table_up = Vec::with_capacity(a.c_len() * bc);
    for ca in 0..a.c_len() {
        for cb in 0..bc {
            let mut down_row = Vec::with_capacity(a.sdown_len() * b.sdown_len());
            for sa in 0..a.sdown_len() {
                for sb in 0..b.sdown_len() {
                    down_row.push(a.act_down(ca, sa) * bc + b.act_down(cb, sb));
                }
            }
            let mut up_row = Vec::with_capacity(a.sup_len() * b.sup_len());
            for ta in 0..a.sup_len() {
                for tb in 0..b.sup_len() {
                    up_row.push(a.act_up(ca, ta) * bc + b.act_up(cb, tb));
                }
            }
            table_down.push(down_row);
            table_up.push(up_row);
        }
    }
    FiniteBiaction::new(
        pair_labels(a.c_labels(), b.c_labels()),
        pair_labels(a.sdown_labels(), b.sdown_labels()),
        pair_labels(a.sup_labels(), b.sup_labels()),
        table_down,
        table_up,
    )
}

/// Componentwise product of two set bands.
pub fn product_setband(a: &FiniteSetBand, b: &FiniteSetBand) -> Result<FiniteSetBand> {
    let bs = b.s_len();
    let mut mul = Vec::with_capacity(a.s_len() * bs);
    for xa in 0..a.s_len() {
        for xb in 0..bs {
            let mut row = Vec::with_capacity(a.s_len() * bs);
            for ya in 0..a.s_len() {
                for yb in 0..bs {
                    row.push(a.mul(xa, ya) * bs + b.mul(xb, yb));
                }
            }
            mul.push(row);
        }
    }
    FiniteSetBand::new(pair_labels(a.s_labels(), b.s_labels()), mul)
}

/// Componentwise product of two algebras of the same kind, with pair-tag
/// labels `"(x,y)"`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    match (a, b) {
        (FiniteAlgebra::Action(x), FiniteAlgebra::Action(y)) => Ok(product_action(x, y)?.into()),
        (FiniteAlgebra::Biaction(x), FiniteAlgebra::Biaction(y)) => {
            Ok(product_biaction(x, y)?.into())
        }
        (FiniteAlgebra::SetBand(x), FiniteAlgebra::SetBand(y)) => {
            Ok(product_setband(x, y)?.into())
        }
        _ => Err(Error::KindMismatch { expected: a.kind(), got: b.kind() }),
    }
}

fn expect_plain(letter: &Letter) -> Result<()> {
    if letter.sort != LetterSort::Plain {
        return Err(Error::Parse(format!(
            "letter `{}` carries a sort annotation, but this kind has a single operation sort",
            letter.annotated()
        )));
    }
    Ok(())
}

/// Applies a word to a start element, left to right, by label.
///
/// For the state-acting kinds `start` names a state and the letters name
/// operations; for a set band `start` names a band element and the word
/// multiplies further elements onto it. The empty word returns `start`.
pub fn evaluate(alg: &FiniteAlgebra, start: &str, word: &[Letter]) -> Result<String> {
    match alg {
        FiniteAlgebra::Action(a) => {
            let mut c = a.c_index(start)?;
            for letter in word {
                expect_plain(letter)?;
                c = a.act(c, a.s_index(&letter.name)?);
            }
            Ok(a.c_labels()[c].clone())
        }
        FiniteAlgebra::Biaction(b) => {
            let mut c = b.c_index(start)?;
            for letter in word {
                c = match letter.sort {
                    LetterSort::Down => b.act_down(c, b.sdown_index(&letter.name)?),
                    LetterSort::Up => b.act_up(c, b.sup_index(&letter.name)?),
                    LetterSort::Plain => {
                        return Err(Error::Parse(format!(
                            "letter `{}` needs a `:down` or `:up` sort in a biaction word",
                            letter.name
                        )))
                    }
                };
            }
            Ok(b.c_labels()[c].clone())
        }
        FiniteAlgebra::SetBand(band) => {
            let mut x = band.s_index(start)?;
            for letter in word {
                expect_plain(letter)?;
                x = band.mul(x, band.s_index(&letter.name)?);
            }
            Ok(band.s_labels()[x].clone())
        }
    }
}
