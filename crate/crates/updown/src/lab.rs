//! Exhaustive table enumeration, seeded random tables, the census that
//! cross-checks the axiom systems against the membership decision, and
//! the named fixture catalog.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{FiniteAction, FiniteAlgebra, FiniteBiaction, FiniteSetBand, Kind};
use crate::atomset::AtomSet;
use crate::axioms::{check_algebra, CheckMode};
use crate::error::{Error, Result};
use crate::homs::is_member;
use crate::rep::{ActionRep, SetRepresentation};
use crate::Limits;

/// Table dimensions for one kind of algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sizes {
    Action { c: usize, s: usize },
    Biaction { c: usize, sdown: usize, sup: usize },
    SetBand { s: usize },
}

impl Sizes {
    pub fn kind(&self) -> Kind {
        match self {
            Sizes::Action { .. } => Kind::Action,
            Sizes::Biaction { .. } => Kind::Biaction,
            Sizes::SetBand { .. } => Kind::SetBand,
        }
    }

    /// Cell count of the flattened table and the radix of each cell.
    fn shape(&self) -> (usize, usize) {
        match *self {
            Sizes::Action { c, s } => (c * s, c),
            Sizes::Biaction { c, sdown, sup } => (c * (sdown + sup), c),
            Sizes::SetBand { s } => (s * s, s),
        }
    }

    fn validate(&self) -> Result<()> {
        let carrier_ok = match *self {
            Sizes::Action { c, .. } | Sizes::Biaction { c, .. } => c >= 1,
            Sizes::SetBand { s } => s >= 1,
        };
        if !carrier_ok {
            return Err(Error::Precondition("the carrier sort must be nonempty".into()));
        }
        Ok(())
    }

    /// Number of labeled tables of this shape, checked against the cap.
    pub fn total_tables(&self, limits: &Limits) -> Result<u64> {
        self.validate()?;
        let (cells, radix) = self.shape();
        let total = u32::try_from(cells)
            .ok()
            .and_then(|cells| (radix as u64).checked_pow(cells))
            .filter(|&total| total <= limits.max_tables);
        total.ok_or(Error::LimitExceeded {
            what: "labeled tables to enumerate",
            size: (radix as u64).saturating_pow(cells.min(u32::MAX as usize) as u32),
            cap: limits.max_tables,
        })
    }
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn build(sizes: &Sizes, mut cell: impl FnMut() -> usize) -> FiniteAlgebra {
    match *sizes {
        Sizes::Action { c, s } => {
            let table = (0..c).map(|_| (0..s).map(|_| cell()).collect()).collect();
            FiniteAction::new(numbered("c", c), numbered("s", s), table)
                .expect("generated tables are in range")
                .into()
        }
        Sizes::Biaction { c, sdown, sup } => {
            let mut down = Vec::with_capacity(c);
            let mut up = Vec::with_capacity(c);
            for _ in 0..c {
                down.push((0..sdown).map(|_| cell()).collect());
                up.push((0..sup).map(|_| cell()).collect());
            }
            FiniteBiaction::new(numbered("c", c), numbered("s", sdown), numbered("t", sup), down, up)
                .expect("generated tables are in range")
                .into()
        }
        Sizes::SetBand { s } => {
            let mul = (0..s).map(|_| (0..s).map(|_| cell()).collect()).collect();
            FiniteSetBand::new(numbered("x", s), mul)
                .expect("generated tables are in range")
                .into()
        }
    }
}

/// The algebra at one position of the lexicographic table order: the
/// flattened table read as base-|carrier| digits, first cell most
/// significant.
pub fn algebra_at(sizes: &Sizes, index: u64) -> FiniteAlgebra {
    let (cells, radix) = sizes.shape();
    let mut digits = vec![0usize; cells];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % radix as u64) as usize;
        rest /= radix as u64;
    }
    let mut next = digits.into_iter();
    build(sizes, move || next.next().expect("cell count matches table shape"))
}

/// All labeled tables of one shape, in lexicographic order.
pub struct AlgebraEnumeration {
    sizes: Sizes,
    next: u64,
    total: u64,
}

impl Iterator for AlgebraEnumeration {
    type Item = FiniteAlgebra;

    fn next(&mut self) -> Option<FiniteAlgebra> {
        if self.next >= self.total {
            return None;
        }
        let alg = algebra_at(&self.sizes, self.next);
        self.next += 1;
        Some(alg)
    }
}

pub fn enumerate_algebras(sizes: &Sizes, limits: &Limits) -> Result<AlgebraEnumeration> {
    Ok(AlgebraEnumeration { sizes: *sizes, next: 0, total: sizes.total_tables(limits)? })
}

/// A uniformly random labeled table; the same seed always yields the
/// same algebra.
pub fn random_algebra(sizes: &Sizes, seed: u64) -> Result<FiniteAlgebra> {
    sizes.validate()?;
    let (_, radix) = sizes.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(build(sizes, move || rng.gen_range(0..radix)))
}

/// Counters of one census run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    /// Algebras inspected.
    pub total: u64,
    /// Passing the finitely many equations (everything but the schemas).
    pub eq_pass: u64,
    /// Passing the whole axiom system, schemas included.
    pub full_pass: u64,
    /// Members by homomorphism separation.
    pub member: u64,
    /// Algebras where the axiom system and the decision differ. The
    /// structure theorems say this stays zero.
    pub disagreements: u64,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    fn absorb(&mut self, other: CensusReport) {
        self.total += other.total;
        self.eq_pass += other.eq_pass;
        self.full_pass += other.full_pass;
        self.member += other.member;
        self.disagreements += other.disagreements;
    }

    fn count(&mut self, alg: &FiniteAlgebra, limits: &Limits) -> Result<()> {
        let schemas: &[&str] = match alg.kind() {
            Kind::Action | Kind::SetBand => &["SL"],
            Kind::Biaction => &["basic-S", "extra-S"],
        };
        let report = check_algebra(alg, CheckMode::Standard, limits)?;
        let eq = report
            .checks
            .iter()
            .filter(|check| !schemas.contains(&check.axiom))
            .all(|check| check.verdict.is_pass());
        let full = report.all_pass();
        let member = is_member(alg, limits)?;
        self.total += 1;
        self.eq_pass += u64::from(eq);
        self.full_pass += u64::from(full);
        self.member += u64::from(member);
        self.disagreements += u64::from(full != member);
        Ok(())
    }
}

/// Runs axioms and membership over every labeled table of one shape and
/// tallies the counters; shards split the index space and run on their
/// own threads.
pub fn census(sizes: &Sizes, shards: usize, limits: &Limits) -> Result<CensusReport> {
    let total = sizes.total_tables(limits)?;
    let shards = (shards.max(1) as u64).min(total.max(1));
    let ranges: Vec<(u64, u64)> = (0..shards)
        .map(|i| (total * i / shards, total * (i + 1) / shards))
        .collect();
    let partials = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|(lo, hi)| {
                scope.spawn(move || -> Result<CensusReport> {
                    let mut partial = CensusReport::default();
                    for index in lo..hi {
                        partial.count(&algebra_at(sizes, index), limits)?;
                    }
                    Ok(partial)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("census shard panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut report = CensusReport::default();
    for partial in partials {
        report.absorb(partial);
    }
    Ok(report)
}

/// The sampling variant: `samples` random tables from one seeded
/// stream instead of the exhaustive range.
pub fn census_sample(
    sizes: &Sizes,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<CensusReport> {
    sizes.validate()?;
    let (_, radix) = sizes.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CensusReport::default();
    for _ in 0..samples {
        let alg = build(sizes, || rng.gen_range(0..radix));
        report.count(&alg, limits)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------

/// The built-in example catalog, in catalog order.
pub fn fixture_names() -> &'static [&'static str] {
    &[
        "example-4.7",
        "separating-sorts",
        "biaction-2pt-fail",
        "words-are-needed",
        "cylindrify-worlds",
        "facts-updown",
    ]
}

/// Looks up a named example, with its set representation when one is
/// part of the example.
pub fn fixture(name: &str) -> Result<(FiniteAlgebra, Option<SetRepresentation>)> {
    match name {
        "example-4.7" => Ok((example_4_7()?.into(), None)),
        "separating-sorts" => {
            let (a, rep) = separating_sorts()?;
            Ok((a.into(), Some(rep.into())))
        }
        "biaction-2pt-fail" => Ok((biaction_2pt_fail()?.into(), None)),
        "words-are-needed" => Ok((words_are_needed()?.into(), None)),
        "cylindrify-worlds" => Ok((cylindrify_worlds()?.0.into(), None)),
        "facts-updown" => {
            let (a, rep) = facts_updown()?;
            Ok((a.into(), Some(rep.into())))
        }
        other => Err(Error::Parse(format!(
            "unknown fixture {other:?}; known fixtures: {}",
            fixture_names().join(", ")
        ))),
    }
}

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

/// Two operations that merge two of three states: passes the equations
/// but fails the strong-link schema.
fn example_4_7() -> Result<FiniteAction> {
    FiniteAction::new(
        strings(&["c", "d", "e"]),
        strings(&["s", "t"]),
        vec![vec![0, 1], vec![0, 1], vec![2, 2]],
    )
}

/// Three constant operations with a three-atom representation where each
/// operation cuts down to and unions back its value's atom.
fn separating_sorts() -> Result<(FiniteAction, ActionRep)> {
    let a = FiniteAction::new(
        strings(&["c", "d", "e"]),
        strings(&["s_c", "s_d", "s_e"]),
        vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]],
    )?;
    let atom = |i: usize| AtomSet::from_indices(3, [i]);
    let rep = ActionRep::from_sets(
        strings(&["1", "2", "3"]),
        a.c_labels().to_vec(),
        vec![atom(0), atom(1), atom(2)],
        a.s_labels().to_vec(),
        vec![(atom(0), atom(0)), (atom(1), atom(1)), (atom(2), atom(2))],
        false,
    )?;
    Ok((a, rep))
}

/// Both operations of both sorts send both states to `d`: fails the
/// basic subset axiom on two points.
fn biaction_2pt_fail() -> Result<FiniteBiaction> {
    FiniteBiaction::new(
        strings(&["c", "d"]),
        strings(&["s"]),
        strings(&["t"]),
        vec![vec![1], vec![1]],
        vec![vec![1], vec![1]],
    )
}

/// States and operations of one component given as concrete sets over a
/// private atom universe; operations are an intersect set per down
/// label and a union set per up label.
struct SetComponent {
    state_labels: Vec<String>,
    states: Vec<u16>,
    down_sets: Vec<u16>,
    up_sets: Vec<u16>,
}

impl SetComponent {
    fn index_of(&self, mask: u16) -> usize {
        self.states
            .iter()
            .position(|&m| m == mask)
            .expect("component states are closed under their operations")
    }
}

/// The disjoint union of set components on states, sharing operation
/// labels: each state keeps its own component's operation sets.
fn union_of_components(
    components: &[SetComponent],
    sdown_labels: Vec<String>,
    sup_labels: Vec<String>,
) -> Result<FiniteBiaction> {
    let mut c_labels = Vec::new();
    let mut down = Vec::new();
    let mut up = Vec::new();
    let mut offset = 0;
    for component in components {
        c_labels.extend(component.state_labels.iter().cloned());
        for &state in &component.states {
            down.push(
                component
                    .down_sets
                    .iter()
                    .map(|&set| offset + component.index_of(state & set))
                    .collect(),
            );
            up.push(
                component
                    .up_sets
                    .iter()
                    .map(|&set| offset + component.index_of(state | set))
                    .collect(),
            );
        }
        offset += component.states.len();
    }
    FiniteBiaction::new(c_labels, sdown_labels, sup_labels, down, up)
}

/// Two components, each realized by sets, whose disjoint union fails
/// the word-subset schema although the basic subset axiom holds.
fn words_are_needed() -> Result<FiniteBiaction> {
    // Component atoms: # = bit 0, $ = bit 1; then % = bit 0.
    let first = SetComponent {
        state_labels: strings(&["c", "d", "e", "f"]),
        states: vec![0b01, 0b10, 0b00, 0b11],
        down_sets: vec![0b00],
        up_sets: vec![0b10, 0b01],
    };
    let second = SetComponent {
        state_labels: strings(&["1", "2"]),
        states: vec![0b1, 0b0],
        down_sets: vec![0b0],
        up_sets: vec![0b1, 0b1],
    };
    union_of_components(&[first, second], strings(&["s"]), strings(&["t", "u"]))
}

/// Builds the action of mask operations on the states reachable from
/// `start`, in breadth-first discovery order; states are labeled
/// `{a,b}` by their atoms. Returns the state masks alongside.
fn reachable_action(
    atoms: &[&str],
    ops: &[(&str, &dyn Fn(u16) -> u16)],
    start: u16,
) -> Result<(FiniteAction, Vec<u16>)> {
    let label = |mask: u16| {
        let named: Vec<&str> = atoms
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, name)| *name)
            .collect();
        format!("{{{}}}", named.join(","))
    };
    let mut states = vec![start];
    let mut position = HashMap::from([(start, 0usize)]);
    let mut head = 0;
    while head < states.len() {
        let mask = states[head];
        head += 1;
        for (_, op) in ops {
            let next = op(mask);
            if !position.contains_key(&next) {
                position.insert(next, states.len());
                states.push(next);
            }
        }
    }
    let table = states
        .iter()
        .map(|&mask| ops.iter().map(|(_, op)| position[&op(mask)]).collect())
        .collect();
    let action = FiniteAction::new(
        states.iter().map(|&m| label(m)).collect(),
        strings(&ops.iter().map(|&(name, _)| name).collect::<Vec<_>>()),
        table,
    )?;
    Ok((action, states))
}

/// Sets of two-coordinate worlds under four intersections and two
/// cylindrifications (closing a set under changes of one coordinate).
/// Cylindrification is not an intersect-or-union map, and this action
/// fails previous redundance.
fn cylindrify_worlds() -> Result<(FiniteAction, Vec<u16>)> {
    // Worlds 00,01,10,11 at bits 0..3; flipping coordinate 1 swaps
    // 00<->10 and 01<->11, flipping coordinate 2 swaps 00<->01, 10<->11.
    fn flip1(m: u16) -> u16 {
        (m & 0b0011) << 2 | (m & 0b1100) >> 2
    }
    fn flip2(m: u16) -> u16 {
        (m & 0b0101) << 1 | (m & 0b1010) >> 1
    }
    let ops: Vec<(&str, &dyn Fn(u16) -> u16)> = vec![
        ("s1", &|m| m | flip1(m)),
        ("s2", &|m| m | flip2(m)),
        ("t1", &|m| m & 0b1100),
        ("u1", &|m| m & 0b0011),
        ("t2", &|m| m & 0b1010),
        ("u2", &|m| m & 0b0101),
    ];
    reachable_action(&["00", "01", "10", "11"], &ops, 0b1111)
}

/// Possible combinations of four basic facts under operations that add
/// or remove facts; every operation is an intersection or union over
/// the fact universe, so the action carries its representation.
fn facts_updown() -> Result<(FiniteAction, ActionRep)> {
    let atoms = ["R", "¬R", "H", "¬H"];
    let ops: Vec<(&str, &dyn Fn(u16) -> u16)> = vec![
        ("s1", &|m| m | 0b0011),
        ("s2", &|m| m | 0b1100),
        ("t1", &|m| m & !0b0010),
        ("u1", &|m| m & !0b0001),
        ("t2", &|m| m & !0b1000),
        ("u2", &|m| m & !0b0100),
    ];
    let (action, masks) = reachable_action(&atoms, &ops, 0b1111)?;
    let set = |mask: u16| AtomSet::from_indices(4, (0..4).filter(|&i| mask >> i & 1 == 1));
    let pair = |down: u16, up: u16| (set(down), set(up));
    let rep = ActionRep::from_sets(
        atoms.iter().map(|a| a.to_string()).collect(),
        action.c_labels().to_vec(),
        masks.iter().map(|&m| set(m)).collect(),
        action.s_labels().to_vec(),
        vec![
            pair(0b1111, 0b0011),
            pair(0b1111, 0b1100),
            pair(!0b0010 & 0b1111, 0),
            pair(!0b0001 & 0b1111, 0),
            pair(!0b1000 & 0b1111, 0),
            pair(!0b0100 & 0b1111, 0),
        ],
        false,
    )?;
    Ok((action, rep))
}
