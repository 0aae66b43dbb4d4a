//! Transformation monoids: the finite closure that stands in for words.
//!
//! Every word acts on states through its induced map `C → C`, and only
//! finitely many maps arise, so any schema quantifying over words can
//! quantify over this closure instead. Maps are discovered breadth-first
//! over the generator order, which hands every map a shortest generating
//! word — the word axiom witnesses print.

use std::collections::HashMap;

use crate::algebra::{FiniteAction, FiniteBiaction, FiniteSetBand};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};
use crate::Limits;

/// One map of a closure together with a shortest word generating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidMap {
    map: Vec<usize>,
    word: Word,
}

impl MonoidMap {
    /// Image of every state index under the map.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// A shortest word evaluating to this map (empty for the identity).
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn apply(&self, c: usize) -> usize {
        self.map[c]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Generator maps of an action: one per operation, in declaration order.
pub fn action_generators(a: &FiniteAction) -> Vec<(Letter, Vec<usize>)> {
    a.s_labels()
        .iter()
        .enumerate()
        .map(|(s, label)| {
            (Letter::plain(label.clone()), (0..a.c_len()).map(|c| a.act(c, s)).collect())
        })
        .collect()
}

/// Generator maps of a biaction: the intersect sort first, then the union
/// sort, each in declaration order.
pub fn biaction_generators(b: &FiniteBiaction) -> Vec<(Letter, Vec<usize>)> {
    let down = b.sdown_labels().iter().enumerate().map(|(s, label)| {
        (Letter::down(label.clone()), (0..b.c_len()).map(|c| b.act_down(c, s)).collect())
    });
    let up = b.sup_labels().iter().enumerate().map(|(t, label)| {
        (Letter::up(label.clone()), (0..b.c_len()).map(|c| b.act_up(c, t)).collect())
    });
    down.chain(up).collect()
}

/// Right-multiplication maps of a band acting on itself.
pub fn band_right_generators(b: &FiniteSetBand) -> Vec<(Letter, Vec<usize>)> {
    b.s_labels()
        .iter()
        .enumerate()
        .map(|(y, label)| {
            (Letter::plain(label.clone()), (0..b.s_len()).map(|x| b.mul(x, y)).collect())
        })
        .collect()
}

/// The closure of the generator maps under composition, seeded with the
/// identity; `maps()[0]` is always the identity with the empty word.
#[derive(Debug, Clone)]
pub struct TransformationMonoid {
    maps: Vec<MonoidMap>,
}

impl TransformationMonoid {
    /// All maps in breadth-first discovery order.
    pub fn maps(&self) -> &[MonoidMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The identity map (always present, always first).
    pub fn identity(&self) -> &MonoidMap {
        &self.maps[0]
    }
}

fn close(
    seeds: Vec<MonoidMap>,
    gens: &[(Letter, Vec<usize>)],
    limits: &Limits,
) -> Result<Vec<MonoidMap>> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut maps: Vec<MonoidMap> = Vec::new();
    for seed in seeds {
        if !seen.contains_key(&seed.map) {
            seen.insert(seed.map.clone(), maps.len());
            maps.push(seed);
        }
    }
    let mut next = 0;
    while next < maps.len() {
        for g in 0..gens.len() {
            let (letter, gen) = &gens[g];
            let map: Vec<usize> = maps[next].map.iter().map(|&c| gen[c]).collect();
            if !seen.contains_key(&map) {
                if maps.len() >= limits.max_monoid {
                    return Err(Error::LimitExceeded {
                        what: "transformation monoid",
                        size: maps.len() as u64 + 1,
                        cap: limits.max_monoid as u64,
                    });
                }
                let mut word = maps[next].word.clone();
                word.push(letter.clone());
                seen.insert(map.clone(), maps.len());
                maps.push(MonoidMap { map, word });
            }
        }
        next += 1;
    }
    Ok(maps)
}

/// Monoid closure of generator maps over `n` states.
pub fn monoid_closure(
    n: usize,
    gens: &[(Letter, Vec<usize>)],
    limits: &Limits,
) -> Result<TransformationMonoid> {
    let identity = MonoidMap { map: (0..n).collect(), word: Vec::new() };
    Ok(TransformationMonoid { maps: close(vec![identity], gens, limits)? })
}

/// Semigroup closure of generator maps: the identity participates only if
/// it is generated.
pub fn semigroup_closure(
    gens: &[(Letter, Vec<usize>)],
    limits: &Limits,
) -> Result<Vec<MonoidMap>> {
    let seeds = gens
        .iter()
        .map(|(letter, map)| MonoidMap { map: map.clone(), word: vec![letter.clone()] })
        .collect();
    close(seeds, gens, limits)
}

/// The word-action monoid of an action.
pub fn action_monoid(a: &FiniteAction, limits: &Limits) -> Result<TransformationMonoid> {
    monoid_closure(a.c_len(), &action_generators(a), limits)
}

/// The word-action monoid of a biaction over both operation sorts.
pub fn biaction_monoid(b: &FiniteBiaction, limits: &Limits) -> Result<TransformationMonoid> {
    monoid_closure(b.c_len(), &biaction_generators(b), limits)
}
