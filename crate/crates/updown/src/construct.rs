//! The explicit constructions behind the structure theory: representation
//! verification, the intersection-only representation, the fixed-point
//! congruence and its quotient embedding, biaction restriction and the
//! biaction quotient embedding, the primed-pair normalization, sort
//! surgery between biactions and actions, and the operation set band.
//!
//! Each operation that a structure lemma guards carries that lemma's
//! hypothesis as a checked precondition and reports the violated axiom's
//! witness when refusing.

use std::collections::HashMap;

use crate::algebra::{FiniteAction, FiniteAlgebra, FiniteBiaction, FiniteSetBand, SortName};
use crate::atomset::AtomSet;
use crate::axioms::{
    check_biaction_axioms, check_fully_pr, check_intersection_axioms, AxiomReport, Verdict,
};
use crate::error::{Error, Result};
use crate::monoid::{action_monoid, semigroup_closure};
use crate::rep::{ActionRep, BiactionRep, SetRepresentation};
use crate::word::{Letter, LetterSort};
use crate::Limits;

/// Why a representation fails to represent an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepMismatch {
    /// Two same-sort elements carry identical set data.
    NonInjective { sort: SortName, a: String, b: String },
    /// Applying `op` to `element` set-theoretically does not land on the
    /// set of the table result `expected`.
    Entry { element: String, op: String, expected: String },
}

/// Maps each algebra label to its index on the representation side.
/// Label order may differ (file maps do not preserve it); the label sets
/// may not.
fn match_labels(sort: SortName, algebra: &[String], rep: &[String]) -> Result<Vec<usize>> {
    let position: HashMap<&str, usize> =
        rep.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if algebra.len() != rep.len() {
        return Err(Error::LabelMismatch(format!(
            "{sort} labels of the representation do not match the algebra's"
        )));
    }
    algebra
        .iter()
        .map(|l| {
            position.get(l.as_str()).copied().ok_or_else(|| {
                Error::LabelMismatch(format!("the representation has no {sort} element {l:?}"))
            })
        })
        .collect()
}

fn scan_injective<T: PartialEq>(
    sort: SortName,
    labels: &[String],
    data: &[T],
) -> Option<RepMismatch> {
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            if data[i] == data[j] {
                return Some(RepMismatch::NonInjective {
                    sort,
                    a: labels[i].clone(),
                    b: labels[j].clone(),
                });
            }
        }
    }
    None
}

/// Checks that a representation realizes an algebra: labels line up,
/// set data is injective per sort, and every table entry agrees with the
/// set-level operation. `None` means the representation is faithful.
pub fn verify_representation(
    alg: &FiniteAlgebra,
    rep: &SetRepresentation,
) -> Result<Option<RepMismatch>> {
    match (alg, rep) {
        (FiniteAlgebra::Action(a), SetRepresentation::Action(r)) => {
            let cr = match_labels(SortName::C, a.c_labels(), r.c_labels())?;
            let sr = match_labels(SortName::S, a.s_labels(), r.s_labels())?;
            let c_sets: Vec<_> = (0..a.c_len()).map(|c| r.c_set(c).clone()).collect();
            let s_pairs: Vec<_> = (0..a.s_len()).map(|s| r.s_pair(s).clone()).collect();
            if let Some(m) = scan_injective(SortName::C, r.c_labels(), &c_sets) {
                return Ok(Some(m));
            }
            if let Some(m) = scan_injective(SortName::S, r.s_labels(), &s_pairs) {
                return Ok(Some(m));
            }
            for c in 0..a.c_len() {
                for s in 0..a.s_len() {
                    let landed = a.act(c, s);
                    if r.apply(r.c_set(cr[c]), sr[s]) != *r.c_set(cr[landed]) {
                        return Ok(Some(RepMismatch::Entry {
                            element: a.c_labels()[c].clone(),
                            op: a.s_labels()[s].clone(),
                            expected: a.c_labels()[landed].clone(),
                        }));
                    }
                }
            }
            Ok(None)
        }
        (FiniteAlgebra::Biaction(b), SetRepresentation::Biaction(r)) => {
            let cr = match_labels(SortName::C, b.c_labels(), r.c_labels())?;
            let dr = match_labels(SortName::SDown, b.sdown_labels(), r.sdown_labels())?;
            let ur = match_labels(SortName::SUp, b.sup_labels(), r.sup_labels())?;
            let c_sets: Vec<_> = (0..b.c_len()).map(|c| r.c_set(c).clone()).collect();
            let down: Vec<_> = (0..b.sdown_len()).map(|s| r.sdown_set(s).clone()).collect();
            let up: Vec<_> = (0..b.sup_len()).map(|t| r.sup_set(t).clone()).collect();
            for (sort, rep_labels, data) in [
                (SortName::C, r.c_labels(), &c_sets),
                (SortName::SDown, r.sdown_labels(), &down),
                (SortName::SUp, r.sup_labels(), &up),
            ] {
                if let Some(m) = scan_injective(sort, rep_labels, data) {
                    return Ok(Some(m));
                }
            }
            for c in 0..b.c_len() {
                for s in 0..b.sdown_len() {
                    if r.c_set(cr[c]).inter(r.sdown_set(dr[s])) != *r.c_set(cr[b.act_down(c, s)])
                    {
                        return Ok(Some(RepMismatch::Entry {
                            element: b.c_labels()[c].clone(),
                            op: b.sdown_labels()[s].clone(),
                            expected: b.c_labels()[b.act_down(c, s)].clone(),
                        }));
                    }
                }
                for t in 0..b.sup_len() {
                    if r.c_set(cr[c]).union(r.sup_set(ur[t])) != *r.c_set(cr[b.act_up(c, t)]) {
                        return Ok(Some(RepMismatch::Entry {
                            element: b.c_labels()[c].clone(),
                            op: b.sup_labels()[t].clone(),
                            expected: b.c_labels()[b.act_up(c, t)].clone(),
                        }));
                    }
                }
            }
            Ok(None)
        }
        (FiniteAlgebra::SetBand(band), SetRepresentation::SetBand(r)) => {
            let xr = match_labels(SortName::S, band.s_labels(), r.s_labels())?;
            let pairs: Vec<_> = (0..band.s_len()).map(|x| r.s_pair(x).clone()).collect();
            if let Some(m) = scan_injective(SortName::S, r.s_labels(), &pairs) {
                return Ok(Some(m));
            }
            for x in 0..band.s_len() {
                for y in 0..band.s_len() {
                    let landed = band.mul(x, y);
                    if r.multiply(xr[x], xr[y]) != *r.s_pair(xr[landed]) {
                        return Ok(Some(RepMismatch::Entry {
                            element: band.s_labels()[x].clone(),
                            op: band.s_labels()[y].clone(),
                            expected: band.s_labels()[landed].clone(),
                        }));
                    }
                }
            }
            Ok(None)
        }
        (alg, rep) => Err(Error::KindMismatch { expected: alg.kind(), got: rep.kind() }),
    }
}

fn failed_axiom(report: &AxiomReport) -> Option<String> {
    report.checks.iter().find_map(|c| match &c.verdict {
        Verdict::Fail(w) => Some(format!("axiom {} fails: {w}", c.axiom)),
        Verdict::Pass => None,
    })
}

/// Builds the intersection-only representation of an action satisfying
/// idempotence and commutativity: each state maps to its orbit under the
/// operation monoid, each operation to the pure-intersection pair of its
/// fixed-point set plus a private tag atom.
pub fn intersection_representation(a: &FiniteAction, limits: &Limits) -> Result<SetRepresentation> {
    let report = check_intersection_axioms(a);
    if let Some(failure) = failed_axiom(&report) {
        return Err(Error::Precondition(format!(
            "intersection representation needs idempotence and commutativity; {failure}"
        )));
    }
    let monoid = action_monoid(a, limits)?;
    let n = a.c_len();
    let mut universe: Vec<String> = a.c_labels().to_vec();
    universe.extend(a.s_labels().iter().map(|s| format!("tag:{s}")));
    let nbits = universe.len();
    let c_sets: Vec<AtomSet> = (0..n)
        .map(|c| AtomSet::from_indices(nbits, monoid.maps().iter().map(|m| m.apply(c))))
        .collect();
    let s_pairs: Vec<(AtomSet, AtomSet)> = (0..a.s_len())
        .map(|s| {
            let fixed = (0..n).filter(|&c| a.act(c, s) == c);
            let down = AtomSet::from_indices(nbits, fixed.chain(std::iter::once(n + s)));
            (down, AtomSet::empty(nbits))
        })
        .collect();
    Ok(ActionRep::from_sets(
        universe,
        a.c_labels().to_vec(),
        c_sets,
        a.s_labels().to_vec(),
        s_pairs,
        false,
    )?
    .into())
}

/// The fixed-point congruence: its classes, the induced quotient action,
/// and the projection onto class indices.
#[derive(Debug, Clone)]
pub struct CongruenceResult {
    /// Classes as sorted original indices, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Least member of each class, the class's representative.
    pub representatives: Vec<usize>,
    /// Original state index to class index.
    pub projection: Vec<usize>,
    /// The induced action on classes, labeled by representatives.
    pub quotient: FiniteAction,
}

/// Quotients an action by the transitive closure of "some non-identity
/// operation fixes both states". The fully-previous-redundant schema is
/// the hypothesis under which this relation is a congruence, so it is
/// checked first.
pub fn quotient_by_approx(a: &FiniteAction, limits: &Limits) -> Result<CongruenceResult> {
    let check = check_fully_pr(a, limits)?;
    if let Verdict::Fail(w) = &check.verdict {
        return Err(Error::Precondition(format!(
            "the quotient needs the full previous-redundance schema; axiom fully-PR fails: {w}"
        )));
    }
    let n = a.c_len();
    let mut related = vec![vec![false; n]; n];
    for s in 0..a.s_len() {
        if (0..n).all(|c| a.act(c, s) == c) {
            continue;
        }
        let fixed: Vec<usize> = (0..n).filter(|&c| a.act(c, s) == c).collect();
        for &c in &fixed {
            for &d in &fixed {
                related[c][d] = true;
            }
        }
    }
    let mut projection = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if projection[start] != usize::MAX {
            continue;
        }
        let class_index = classes.len();
        let mut class = vec![start];
        projection[start] = class_index;
        let mut queue = vec![start];
        while let Some(c) = queue.pop() {
            for d in 0..n {
                if related[c][d] && projection[d] == usize::MAX {
                    projection[d] = class_index;
                    class.push(d);
                    queue.push(d);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    let representatives: Vec<usize> = classes.iter().map(|class| class[0]).collect();
    let mut table = Vec::with_capacity(classes.len());
    for class in &classes {
        let mut row = Vec::with_capacity(a.s_len());
        for s in 0..a.s_len() {
            let targets: Vec<usize> = class.iter().map(|&c| projection[a.act(c, s)]).collect();
            if targets.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::Internal(format!(
                    "the fixed-point relation is not a congruence at operation {}",
                    a.s_labels()[s]
                )));
            }
            row.push(targets[0]);
        }
        table.push(row);
    }
    let labels: Vec<String> =
        representatives.iter().map(|&c| a.c_labels()[c].clone()).collect();
    let quotient = FiniteAction::new(labels, a.s_labels().to_vec(), table)?;
    Ok(CongruenceResult { classes, representatives, projection, quotient })
}

/// How one operation acts on a state set.
enum OpShape {
    Constant(usize),
    Identity,
}

fn classify(column: impl Fn(usize) -> usize, n: usize) -> Option<OpShape> {
    // Constants take priority: on a one-point carrier every operation is
    // both, and the constructions below want the constant branch then.
    let first = column(0);
    if (0..n).all(|c| column(c) == first) {
        return Some(OpShape::Constant(first));
    }
    if (0..n).all(|c| column(c) == c) {
        return Some(OpShape::Identity);
    }
    None
}

/// Embeds the quotient of an action into sets: each class maps to its
/// own atom, an identity operation keeps everything and adds its tag,
/// and a constant operation cuts down to its value and unions it back.
pub fn quotient_embedding_psi(a: &FiniteAction, limits: &Limits) -> Result<SetRepresentation> {
    let quotient = quotient_by_approx(a, limits)?.quotient;
    let n = quotient.c_len();
    let mut universe: Vec<String> = quotient.c_labels().to_vec();
    universe.extend(quotient.s_labels().iter().map(|s| format!("tag:{s}")));
    let nbits = universe.len();
    let c_sets: Vec<AtomSet> =
        (0..n).map(|c| AtomSet::from_indices(nbits, [c])).collect();
    let mut s_pairs = Vec::with_capacity(quotient.s_len());
    for s in 0..quotient.s_len() {
        let pair = match classify(|c| quotient.act(c, s), n) {
            Some(OpShape::Constant(d)) => (
                AtomSet::from_indices(nbits, [d, n + s]),
                AtomSet::from_indices(nbits, [d]),
            ),
            Some(OpShape::Identity) => (
                AtomSet::from_indices(nbits, (0..n).chain(std::iter::once(n + s))),
                AtomSet::empty(nbits),
            ),
            None => {
                return Err(Error::Internal(format!(
                    "operation {} is neither an identity nor a constant on the quotient",
                    quotient.s_labels()[s]
                )))
            }
        };
        s_pairs.push(pair);
    }
    Ok(ActionRep::from_sets(
        universe,
        quotient.c_labels().to_vec(),
        c_sets,
        quotient.s_labels().to_vec(),
        s_pairs,
        false,
    )?
    .into())
}

fn word_codes(b: &FiniteBiaction, word: &[Letter]) -> Result<Vec<(bool, usize)>> {
    word.iter()
        .map(|letter| match letter.sort {
            LetterSort::Down => Ok((false, b.sdown_index(&letter.name)?)),
            LetterSort::Up => Ok((true, b.sup_index(&letter.name)?)),
            LetterSort::Plain => Err(Error::Parse(format!(
                "restriction letter {:?} needs a :down or :up sort",
                letter.name
            ))),
        })
        .collect()
}

/// The unguarded restriction by a word `w`: states become the image of
/// `w`'s induced map, and each operation `x` now acts by `c x w`.
///
/// No axioms are required; the cross-checks use this to relate schema
/// failures at `w` to basic-axiom failures of the restriction.
pub fn restrict_biaction_raw(b: &FiniteBiaction, word: &[Letter]) -> Result<FiniteBiaction> {
    let codes = word_codes(b, word)?;
    let after: Vec<usize> = (0..b.c_len()).map(|c| b.run(c, &codes)).collect();
    let mut states: Vec<usize> = after.clone();
    states.sort_unstable();
    states.dedup();
    let position: HashMap<usize, usize> =
        states.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let labels: Vec<String> = states.iter().map(|&c| b.c_labels()[c].clone()).collect();
    let table_down: Vec<Vec<usize>> = states
        .iter()
        .map(|&c| (0..b.sdown_len()).map(|s| position[&after[b.act_down(c, s)]]).collect())
        .collect();
    let table_up: Vec<Vec<usize>> = states
        .iter()
        .map(|&c| (0..b.sup_len()).map(|t| position[&after[b.act_up(c, t)]]).collect())
        .collect();
    FiniteBiaction::new(
        labels,
        b.sdown_labels().to_vec(),
        b.sup_labels().to_vec(),
        table_down,
        table_up,
    )
}

/// The restriction lemma's operation: requires the source to satisfy the
/// biaction axioms, under which the restriction satisfies them too.
pub fn restrict_biaction(
    b: &FiniteBiaction,
    word: &[Letter],
    limits: &Limits,
) -> Result<FiniteBiaction> {
    let report = check_biaction_axioms(b, limits)?;
    if let Some(failure) = failed_axiom(&report) {
        return Err(Error::Precondition(format!(
            "restriction preserves the axioms only when they hold; {failure}"
        )));
    }
    restrict_biaction_raw(b, word)
}

/// Embeds a biaction whose operations all act as identities or constants:
/// states get private atoms plus every union-sort tag, intersect-sort
/// operations keep or cut the state atoms, union-sort operations add
/// their tag or everything.
///
/// The hypotheses mirror the structure available after quotienting: one
/// shared constant value per sort, and distinct values when both sorts
/// have constants.
pub fn biaction_quotient_embedding_phi(b: &FiniteBiaction) -> Result<SetRepresentation> {
    let n = b.c_len();
    let mut shapes_down = Vec::with_capacity(b.sdown_len());
    for s in 0..b.sdown_len() {
        shapes_down.push(classify(|c| b.act_down(c, s), n).ok_or_else(|| {
            Error::Precondition(format!(
                "operation {} acts neither as an identity nor as a constant",
                b.sdown_labels()[s]
            ))
        })?);
    }
    let mut shapes_up = Vec::with_capacity(b.sup_len());
    for t in 0..b.sup_len() {
        shapes_up.push(classify(|c| b.act_up(c, t), n).ok_or_else(|| {
            Error::Precondition(format!(
                "operation {} acts neither as an identity nor as a constant",
                b.sup_labels()[t]
            ))
        })?);
    }
    let shared_value = |shapes: &[OpShape]| -> Result<Option<usize>> {
        let mut value = None;
        for shape in shapes {
            if let OpShape::Constant(v) = shape {
                match value {
                    None => value = Some(*v),
                    Some(prev) if prev == *v => {}
                    Some(prev) => {
                        return Err(Error::Precondition(format!(
                            "two constants in one sort with different values {} and {}",
                            b.c_labels()[prev],
                            b.c_labels()[*v]
                        )))
                    }
                }
            }
        }
        Ok(value)
    };
    let a_down = shared_value(&shapes_down)?;
    let a_up = shared_value(&shapes_up)?;
    if let (Some(down), Some(up)) = (a_down, a_up) {
        if down == up {
            return Err(Error::Precondition(format!(
                "both sorts force the same constant value {}",
                b.c_labels()[down]
            )));
        }
    }
    let mut universe: Vec<String> =
        b.c_labels().iter().map(|c| format!("elem:{c}")).collect();
    universe.extend(b.sdown_labels().iter().map(|s| format!("tag:down:{s}")));
    universe.extend(b.sup_labels().iter().map(|t| format!("tag:up:{t}")));
    let nbits = universe.len();
    let elems = AtomSet::from_indices(nbits, 0..n);
    let up_tags = AtomSet::from_indices(nbits, n + b.sdown_len()..nbits);
    let c_sets: Vec<AtomSet> = (0..n)
        .map(|c| {
            if a_down == Some(c) {
                up_tags.clone()
            } else if a_up == Some(c) {
                elems.union(&up_tags)
            } else {
                AtomSet::from_indices(nbits, [c]).union(&up_tags)
            }
        })
        .collect();
    let down_sets: Vec<AtomSet> = shapes_down
        .iter()
        .enumerate()
        .map(|(s, shape)| {
            let tagged = AtomSet::from_indices(nbits, [n + s]).union(&up_tags);
            match shape {
                OpShape::Identity => elems.union(&tagged),
                OpShape::Constant(_) => tagged,
            }
        })
        .collect();
    let up_sets: Vec<AtomSet> = shapes_up
        .iter()
        .enumerate()
        .map(|(t, shape)| {
            let tag = AtomSet::from_indices(nbits, [n + b.sdown_len() + t]);
            match shape {
                OpShape::Identity => tag,
                OpShape::Constant(_) => elems.union(&tag),
            }
        })
        .collect();
    Ok(BiactionRep::from_sets(
        universe,
        b.c_labels().to_vec(),
        c_sets,
        b.sdown_labels().to_vec(),
        down_sets,
        b.sup_labels().to_vec(),
        up_sets,
    )?
    .into())
}

/// Folds a primed representation's spill into ordinary pairs: each pair
/// becomes (down ∪ up, up), and any pair that thereby collides with an
/// earlier one gets a fresh `dummy:<label>` atom in its down-set. The
/// represented action is unchanged because states never contain dummy
/// atoms.
pub fn prime_normalize(rep: &ActionRep) -> Result<ActionRep> {
    let old_nbits = rep.universe().len();
    let normalized: Vec<(AtomSet, AtomSet)> = (0..rep.s_labels().len())
        .map(|s| {
            let (down, up) = rep.s_pair(s);
            (down.union(up), up.clone())
        })
        .collect();
    let mut seen: Vec<&(AtomSet, AtomSet)> = Vec::new();
    let mut needs_dummy = Vec::new();
    for (s, pair) in normalized.iter().enumerate() {
        if seen.contains(&pair) {
            needs_dummy.push(s);
        } else {
            seen.push(pair);
        }
    }
    let mut universe = rep.universe().to_vec();
    universe.extend(needs_dummy.iter().map(|&s| format!("dummy:{}", rep.s_labels()[s])));
    let nbits = universe.len();
    let c_sets: Vec<AtomSet> =
        (0..rep.c_labels().len()).map(|c| rep.c_set(c).grown(nbits)).collect();
    let s_pairs: Vec<(AtomSet, AtomSet)> = normalized
        .into_iter()
        .enumerate()
        .map(|(s, (down, up))| {
            let mut down = down.grown(nbits);
            if let Some(k) = needs_dummy.iter().position(|&i| i == s) {
                down.insert(old_nbits + k);
            }
            (down, up.grown(nbits))
        })
        .collect();
    ActionRep::from_sets(
        universe,
        rep.c_labels().to_vec(),
        c_sets,
        rep.s_labels().to_vec(),
        s_pairs,
        false,
    )
}

/// Merges the two operation sorts of a biaction into one action sort,
/// prefixing labels with their sort.
pub fn biaction_to_action(b: &FiniteBiaction) -> Result<FiniteAction> {
    let mut s_labels: Vec<String> =
        b.sdown_labels().iter().map(|s| format!("down:{s}")).collect();
    s_labels.extend(b.sup_labels().iter().map(|t| format!("up:{t}")));
    let table: Vec<Vec<usize>> = (0..b.c_len())
        .map(|c| {
            (0..b.sdown_len())
                .map(|s| b.act_down(c, s))
                .chain((0..b.sup_len()).map(|t| b.act_up(c, t)))
                .collect()
        })
        .collect();
    FiniteAction::new(b.c_labels().to_vec(), s_labels, table)
}

/// Translates a biaction representation along the sort merge: intersect
/// operations pair their set with an empty up-set, union operations pair
/// the full universe with their set.
pub fn biaction_rep_to_action_rep(rep: &BiactionRep) -> Result<ActionRep> {
    let nbits = rep.universe().len();
    let full = AtomSet::full(nbits);
    let mut s_labels: Vec<String> =
        rep.sdown_labels().iter().map(|s| format!("down:{s}")).collect();
    s_labels.extend(rep.sup_labels().iter().map(|t| format!("up:{t}")));
    let mut s_pairs: Vec<(AtomSet, AtomSet)> = (0..rep.sdown_labels().len())
        .map(|s| (rep.sdown_set(s).clone(), AtomSet::empty(nbits)))
        .collect();
    s_pairs.extend((0..rep.sup_labels().len()).map(|t| (full.clone(), rep.sup_set(t).clone())));
    let c_sets: Vec<AtomSet> =
        (0..rep.c_labels().len()).map(|c| rep.c_set(c).clone()).collect();
    ActionRep::from_sets(
        rep.universe().to_vec(),
        rep.c_labels().to_vec(),
        c_sets,
        s_labels,
        s_pairs,
        false,
    )
}

/// Searches the 2^|S| sort assignments for one that makes the action a
/// member biaction. Assignments are tried in lexicographic order with the
/// first operation as the highest bit and "intersect" before "union", so
/// the reported split is deterministic.
pub fn split_into_biaction(
    a: &FiniteAction,
    limits: &Limits,
) -> Result<Option<(Vec<String>, Vec<String>)>> {
    let m = a.s_len();
    if m > limits.max_split {
        return Err(Error::LimitExceeded {
            what: "operations to split into sorts",
            size: m as u64,
            cap: limits.max_split as u64,
        });
    }
    for assignment in 0u64..(1 << m) {
        let is_up = |s: usize| assignment >> (m - 1 - s) & 1 == 1;
        let down: Vec<usize> = (0..m).filter(|&s| !is_up(s)).collect();
        let up: Vec<usize> = (0..m).filter(|&s| is_up(s)).collect();
        let pick = |indices: &[usize]| -> Vec<String> {
            indices.iter().map(|&s| a.s_labels()[s].clone()).collect()
        };
        let column = |c: usize, indices: &[usize]| -> Vec<usize> {
            indices.iter().map(|&s| a.act(c, s)).collect()
        };
        let candidate = FiniteBiaction::new(
            a.c_labels().to_vec(),
            pick(&down),
            pick(&up),
            (0..a.c_len()).map(|c| column(c, &down)).collect(),
            (0..a.c_len()).map(|c| column(c, &up)).collect(),
        )?;
        if crate::homs::is_member(&candidate.into(), limits)? {
            return Ok(Some((pick(&down), pick(&up))));
        }
    }
    Ok(None)
}

/// Closes the action's operation maps under composition: the operation
/// semigroup, with each element labeled by its shortest generating word
/// (letters joined by spaces) and the product taken in application order.
pub fn operation_setband(a: &FiniteAction, limits: &Limits) -> Result<FiniteSetBand> {
    if a.s_len() == 0 {
        return Err(Error::EmptySort { sort: SortName::S });
    }
    let gens: Vec<(Letter, Vec<usize>)> = crate::monoid::action_generators(a);
    let elements = semigroup_closure(&gens, limits)?;
    let index: HashMap<&[usize], usize> =
        elements.iter().enumerate().map(|(i, m)| (m.map(), i)).collect();
    let labels: Vec<String> = elements
        .iter()
        .map(|m| m.word().iter().map(|l| l.name.clone()).collect::<Vec<_>>().join(" "))
        .collect();
    let mul: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| {
                    let composed: Vec<usize> =
                        x.map().iter().map(|&c| y.apply(c)).collect();
                    index[composed.as_slice()]
                })
                .collect()
        })
        .collect();
    FiniteSetBand::new(labels, mul)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{labels, Kind};
    use crate::full::{full_action, full_biaction, full_prime_action, full_setband};
    use crate::homs::is_member;
    use crate::word::parse_word;

    fn ex47() -> FiniteAction {
        FiniteAction::new(
            labels(&["c", "d", "e"]),
            labels(&["s", "t"]),
            vec![vec![0, 1], vec![0, 1], vec![2, 2]],
        )
        .unwrap()
    }

    fn atoms(rep_universe: &[String], set: &AtomSet) -> Vec<String> {
        set.iter().map(|i| rep_universe[i].clone()).collect()
    }

    #[test]
    fn defining_representations_verify() {
        let limits = Limits::default();
        let universe = vec!["x".to_string(), "y".to_string()];
        let (a, rep) = full_action(&universe, &limits).unwrap();
        assert_eq!(verify_representation(&a.into(), &rep.into()).unwrap(), None);
        let (b, rep) = full_biaction(&universe, &limits).unwrap();
        assert_eq!(verify_representation(&b.into(), &rep.into()).unwrap(), None);
        let (band, rep) = full_setband(&["x".to_string()], &limits).unwrap();
        assert_eq!(verify_representation(&band.into(), &rep.into()).unwrap(), None);
    }

    #[test]
    fn tampered_representations_report_the_entry() {
        let limits = Limits::default();
        let (a, rep) = full_action(&["x".to_string()], &limits).unwrap();
        // Swap the two state sets: tables no longer match.
        let broken = ActionRep::from_sets(
            rep.universe().to_vec(),
            rep.c_labels().to_vec(),
            vec![rep.c_set(1).clone(), rep.c_set(0).clone()],
            rep.s_labels().to_vec(),
            (0..3).map(|s| rep.s_pair(s).clone()).collect(),
            false,
        )
        .unwrap();
        let mismatch = verify_representation(&a.clone().into(), &broken.into()).unwrap();
        assert!(matches!(mismatch, Some(RepMismatch::Entry { .. })), "{mismatch:?}");
        // Foreign labels are a structural error, not a mismatch.
        let (_, foreign) = full_action(&["y".to_string()], &limits).unwrap();
        let foreign = ActionRep::from_sets(
            vec!["z".to_string()],
            labels(&["p", "q"]),
            vec![foreign.c_set(0).clone(), foreign.c_set(1).clone()],
            foreign.s_labels().to_vec(),
            (0..3).map(|s| foreign.s_pair(s).clone()).collect(),
            false,
        )
        .unwrap();
        assert!(matches!(
            verify_representation(&a.into(), &foreign.into()),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn intersection_representation_uses_orbits_and_fixed_sets() {
        let limits = Limits::default();
        let meet =
            FiniteAction::new(labels(&["0", "1"]), labels(&["s"]), vec![vec![0], vec![0]])
                .unwrap();
        let rep = match intersection_representation(&meet, &limits).unwrap() {
            SetRepresentation::Action(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(rep.universe(), ["0", "1", "tag:s"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["0"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(1)), ["0", "1"]);
        let (down, up) = rep.s_pair(0);
        assert_eq!(atoms(rep.universe(), down), ["0", "tag:s"]);
        assert!(up.is_empty());
        assert_eq!(
            verify_representation(&meet.into(), &rep.into()).unwrap(),
            None,
            "the orbit representation realizes the table"
        );
    }

    #[test]
    fn verification_matches_labels_by_name_not_position() {
        let limits = Limits::default();
        let meet =
            FiniteAction::new(labels(&["0", "1"]), labels(&["s"]), vec![vec![0], vec![0]])
                .unwrap();
        let rep = match intersection_representation(&meet, &limits).unwrap() {
            SetRepresentation::Action(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        let reordered = ActionRep::from_sets(
            rep.universe().to_vec(),
            labels(&["1", "0"]),
            vec![rep.c_set(1).clone(), rep.c_set(0).clone()],
            rep.s_labels().to_vec(),
            vec![rep.s_pair(0).clone()],
            false,
        )
        .unwrap();
        assert_eq!(verify_representation(&meet.into(), &reordered.into()).unwrap(), None);
    }

    #[test]
    fn identity_only_actions_keep_full_fixed_sets() {
        let a = FiniteAction::new(
            labels(&["c", "d"]),
            labels(&["s"]),
            vec![vec![0], vec![1]],
        )
        .unwrap();
        let rep = match intersection_representation(&a, &Limits::default()).unwrap() {
            SetRepresentation::Action(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["c"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(1)), ["d"]);
        assert_eq!(atoms(rep.universe(), &rep.s_pair(0).0), ["c", "d", "tag:s"]);
    }

    #[test]
    fn non_commuting_constants_are_refused() {
        let a = FiniteAction::new(
            labels(&["c", "d", "e"]),
            labels(&["s_c", "s_d", "s_e"]),
            vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(
            intersection_representation(&a, &Limits::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn three_state_action_collapses_to_a_point() {
        let result = quotient_by_approx(&ex47(), &Limits::default()).unwrap();
        assert_eq!(result.classes, [vec![0, 1, 2]]);
        assert_eq!(result.representatives, [0]);
        assert_eq!(result.projection, [0, 0, 0]);
        assert_eq!(result.quotient.c_labels(), ["c"]);
        assert_eq!(result.quotient.act(0, 0), 0);
        assert_eq!(result.quotient.act(0, 1), 0);
    }

    #[test]
    fn separated_states_stay_separate() {
        let (f1, _) = full_action(&["x".to_string()], &Limits::default()).unwrap();
        let result = quotient_by_approx(&f1, &Limits::default()).unwrap();
        assert_eq!(result.classes, [vec![0], vec![1]]);
        // No operations at all: the relation is empty.
        let lone =
            FiniteAction::new(labels(&["c", "d"]), Vec::new(), vec![vec![], vec![]]).unwrap();
        let result = quotient_by_approx(&lone, &Limits::default()).unwrap();
        assert_eq!(result.classes.len(), 2);
    }

    #[test]
    fn quotient_refuses_without_the_schema() {
        let swap =
            FiniteAction::new(labels(&["0", "1"]), labels(&["s"]), vec![vec![1], vec![0]])
                .unwrap();
        assert!(matches!(
            quotient_by_approx(&swap, &Limits::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn projections_are_homomorphisms() {
        for a in [ex47(), full_action(&["x".to_string()], &Limits::default()).unwrap().0] {
            let result = quotient_by_approx(&a, &Limits::default()).unwrap();
            for c in 0..a.c_len() {
                for s in 0..a.s_len() {
                    assert_eq!(
                        result.projection[a.act(c, s)],
                        result.quotient.act(result.projection[c], s)
                    );
                }
            }
        }
    }

    #[test]
    fn psi_tags_identities_and_constants() {
        let limits = Limits::default();
        let rep = match quotient_embedding_psi(&ex47(), &limits).unwrap() {
            SetRepresentation::Action(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(rep.universe(), ["c", "tag:s", "tag:t"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["c"]);
        // On the one-point quotient both operations are constants.
        assert_eq!(atoms(rep.universe(), &rep.s_pair(0).0), ["c", "tag:s"]);
        assert_eq!(atoms(rep.universe(), &rep.s_pair(0).1), ["c"]);
        assert_eq!(atoms(rep.universe(), &rep.s_pair(1).0), ["c", "tag:t"]);
        let quotient = quotient_by_approx(&ex47(), &limits).unwrap().quotient;
        assert_eq!(verify_representation(&quotient.into(), &rep.into()).unwrap(), None);
    }

    #[test]
    fn psi_on_the_generator_matches_the_hand_computation() {
        let limits = Limits::default();
        let (f1, _) = full_action(&["x".to_string()], &limits).unwrap();
        let rep = match quotient_embedding_psi(&f1, &limits).unwrap() {
            SetRepresentation::Action(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["0"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(1)), ["1"]);
        let (identity_down, identity_up) = rep.s_pair(0);
        assert_eq!(atoms(rep.universe(), identity_down), ["0", "1", "tag:(1,0)"]);
        assert!(identity_up.is_empty());
        let (bottom_down, bottom_up) = rep.s_pair(1);
        assert_eq!(atoms(rep.universe(), bottom_down), ["0", "tag:(0,0)"]);
        assert_eq!(atoms(rep.universe(), bottom_up), ["0"]);
        let quotient = quotient_by_approx(&f1, &limits).unwrap().quotient;
        assert_eq!(verify_representation(&quotient.into(), &rep.into()).unwrap(), None);
    }

    #[test]
    fn psi_without_operations_keeps_the_atoms() {
        let a =
            FiniteAction::new(labels(&["c", "d"]), Vec::new(), vec![vec![], vec![]]).unwrap();
        let rep = match quotient_embedding_psi(&a, &Limits::default()).unwrap() {
            SetRepresentation::Action(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(rep.universe(), ["c", "d"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["c"]);
    }

    #[test]
    fn restriction_by_a_constant_shrinks_to_its_image() {
        let limits = Limits::default();
        let (b, _) = full_biaction(&["x".to_string()], &limits).unwrap();
        // The intersect-sort element "0" sends everything to 0.
        let word = parse_word(Kind::Biaction, "0:down").unwrap();
        let restricted = restrict_biaction(&b, &word, &limits).unwrap();
        assert_eq!(restricted.c_labels(), ["0"]);
        assert!(check_biaction_axioms(&restricted, &limits).unwrap().all_pass());
        // Restriction by an identity changes nothing.
        let word = parse_word(Kind::Biaction, "1:down").unwrap();
        let same = restrict_biaction(&b, &word, &limits).unwrap();
        assert_eq!(same, b);
        // The empty word also restricts trivially.
        assert_eq!(restrict_biaction(&b, &[], &limits).unwrap(), b);
    }

    fn words_needed() -> FiniteBiaction {
        FiniteBiaction::new(
            labels(&["c", "d", "e", "f", "1", "2"]),
            labels(&["s"]),
            labels(&["t", "u"]),
            vec![vec![2], vec![2], vec![2], vec![2], vec![5], vec![5]],
            vec![vec![3, 0], vec![1, 3], vec![1, 0], vec![3, 3], vec![4, 4], vec![4, 4]],
        )
        .unwrap()
    }

    #[test]
    fn restriction_requires_the_axioms_but_the_raw_form_does_not() {
        let limits = Limits::default();
        let b = words_needed();
        let word = parse_word(Kind::Biaction, "u:up").unwrap();
        assert!(matches!(
            restrict_biaction(&b, &word, &limits),
            Err(Error::Precondition(_))
        ));
        // The raw restriction by the schema-failure word fails the basic
        // subset axiom: the schema failure at w shows up at the empty
        // word after restricting.
        let restricted = restrict_biaction_raw(&b, &word).unwrap();
        assert_eq!(restricted.c_labels(), ["c", "f", "1"]);
        let report = check_biaction_axioms(&restricted, &limits).unwrap();
        assert!(!report.check("basic-S").unwrap().verdict.is_pass());
    }

    #[test]
    fn phi_follows_the_case_table() {
        // One identity intersect-operation, one union-constant with value
        // y: only a-up exists.
        let b = FiniteBiaction::new(
            labels(&["x", "y"]),
            labels(&["s"]),
            labels(&["t"]),
            vec![vec![0], vec![1]],
            vec![vec![1], vec![1]],
        )
        .unwrap();
        let rep = match biaction_quotient_embedding_phi(&b).unwrap() {
            SetRepresentation::Biaction(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(rep.universe(), ["elem:x", "elem:y", "tag:down:s", "tag:up:t"]);
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["elem:x", "tag:up:t"]);
        assert_eq!(
            atoms(rep.universe(), rep.c_set(1)),
            ["elem:x", "elem:y", "tag:up:t"],
            "the union-constant value holds every state atom"
        );
        assert_eq!(
            atoms(rep.universe(), rep.sdown_set(0)),
            ["elem:x", "elem:y", "tag:down:s", "tag:up:t"]
        );
        assert_eq!(
            atoms(rep.universe(), rep.sup_set(0)),
            ["elem:x", "elem:y", "tag:up:t"]
        );
        assert_eq!(verify_representation(&b.into(), &rep.into()).unwrap(), None);
    }

    #[test]
    fn phi_handles_empty_sorts_and_refuses_shared_constants() {
        let bare = FiniteBiaction::new(
            labels(&["c", "d"]),
            Vec::new(),
            Vec::new(),
            vec![vec![], vec![]],
            vec![vec![], vec![]],
        )
        .unwrap();
        let rep = match biaction_quotient_embedding_phi(&bare).unwrap() {
            SetRepresentation::Biaction(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        assert_eq!(atoms(rep.universe(), rep.c_set(0)), ["elem:c"]);
        // On a one-point carrier with operations in both sorts, both
        // shared constant values are the point: the embedding refuses.
        let point = FiniteBiaction::new(
            labels(&["c"]),
            labels(&["s"]),
            labels(&["t"]),
            vec![vec![0]],
            vec![vec![0]],
        )
        .unwrap();
        assert!(matches!(
            biaction_quotient_embedding_phi(&point),
            Err(Error::Precondition(_))
        ));
        // An operation that is neither identity nor constant refuses too.
        let mixed = FiniteBiaction::new(
            labels(&["a", "b", "c"]),
            labels(&["s"]),
            Vec::new(),
            vec![vec![0], vec![0], vec![2]],
            vec![vec![], vec![], vec![]],
        )
        .unwrap();
        assert!(matches!(
            biaction_quotient_embedding_phi(&mixed),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn prime_pairs_fold_with_one_dummy_per_collision() {
        let limits = Limits::default();
        let (prime_action, prime_rep) = full_prime_action(&["x".to_string()], &limits).unwrap();
        let rep = prime_normalize(&prime_rep).unwrap();
        assert_eq!(rep.universe(), ["x", "dummy:(0,1)"]);
        assert!(!rep.prime());
        // The spilling pair becomes (everything, top): top plus dummy.
        let (down, up) = rep.s_pair(3);
        assert_eq!(atoms(rep.universe(), down), ["x", "dummy:(0,1)"]);
        assert_eq!(atoms(rep.universe(), up), ["x"]);
        // Same tables: applying any operation to any state set lands on
        // the same state as before.
        for c in 0..prime_action.c_len() {
            for s in 0..prime_action.s_len() {
                let landed = prime_action.act(c, s);
                assert_eq!(
                    rep.apply(rep.c_set(c), s),
                    *rep.c_set(landed),
                    "entry ({c},{s})"
                );
            }
        }
    }

    #[test]
    fn already_clean_prime_pairs_stay_put() {
        let limits = Limits::default();
        let (_, rep) = full_action(&["x".to_string()], &limits).unwrap();
        let reprime = ActionRep::from_sets(
            rep.universe().to_vec(),
            rep.c_labels().to_vec(),
            (0..2).map(|c| rep.c_set(c).clone()).collect(),
            rep.s_labels().to_vec(),
            (0..3).map(|s| rep.s_pair(s).clone()).collect(),
            true,
        )
        .unwrap();
        let folded = prime_normalize(&reprime).unwrap();
        assert_eq!(folded.universe(), rep.universe());
        for s in 0..3 {
            assert_eq!(folded.s_pair(s), rep.s_pair(s));
        }
    }

    #[test]
    fn merged_sorts_keep_their_columns() {
        let limits = Limits::default();
        let (b, _) = full_biaction(&["x".to_string()], &limits).unwrap();
        let a = biaction_to_action(&b).unwrap();
        assert_eq!(a.s_labels(), ["down:0", "down:1", "up:0", "up:1"]);
        for c in 0..2 {
            assert_eq!(a.act(c, 0), b.act_down(c, 0));
            assert_eq!(a.act(c, 3), b.act_up(c, 1));
        }
        assert!(is_member(&a.into(), &limits).unwrap());
    }

    #[test]
    fn translated_representations_verify_against_the_merged_action() {
        let b = FiniteBiaction::new(
            labels(&["x", "y"]),
            labels(&["s"]),
            labels(&["t"]),
            vec![vec![0], vec![1]],
            vec![vec![1], vec![1]],
        )
        .unwrap();
        let brep = match biaction_quotient_embedding_phi(&b).unwrap() {
            SetRepresentation::Biaction(r) => r,
            other => panic!("wrong kind {other:?}"),
        };
        let a = biaction_to_action(&b).unwrap();
        let arep = biaction_rep_to_action_rep(&brep).unwrap();
        assert_eq!(verify_representation(&a.into(), &arep.into()).unwrap(), None);
    }

    #[test]
    fn merging_twin_identities_cannot_be_represented() {
        // An intersect-identity and a union-identity become the same
        // pair (X, ∅)… after translation the up-identity pair is (X, set)
        // with an empty set, colliding with the down-identity.
        let universe = vec!["x".to_string()];
        let rep = BiactionRep::from_sets(
            universe.clone(),
            labels(&["c"]),
            vec![AtomSet::from_indices(1, [0])],
            labels(&["s"]),
            vec![AtomSet::full(1)],
            labels(&["t"]),
            vec![AtomSet::empty(1)],
        )
        .unwrap();
        assert!(matches!(
            biaction_rep_to_action_rep(&rep),
            Err(Error::NonInjective { .. })
        ));
    }

    #[test]
    fn word_dependent_biaction_links_as_an_action() {
        // Merging sorts exposes the schema failure as a strong-link
        // failure of the merged action.
        let limits = Limits::default();
        let a = biaction_to_action(&words_needed()).unwrap();
        let report = crate::axioms::check_action_axioms(&a, &limits).unwrap();
        match &report.check("SL").unwrap().verdict {
            Verdict::Fail(crate::axioms::Witness::Chain { chain, words }) => {
                assert_eq!(chain, &["c", "1", "d"]);
                let words: Vec<String> = words
                    .iter()
                    .map(|w| w.iter().map(|l| l.name.as_str()).collect::<Vec<_>>().join(" "))
                    .collect();
                assert_eq!(words, ["down:s up:u", "down:s up:t"]);
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn splitting_recovers_the_sorts_of_the_generator() {
        let limits = Limits::default();
        let (f1, _) = full_action(&["x".to_string()], &limits).unwrap();
        let split = split_into_biaction(&f1, &limits).unwrap();
        assert_eq!(
            split,
            Some((
                vec!["(1,0)".to_string(), "(0,0)".to_string()],
                vec!["(1,1)".to_string()]
            ))
        );
    }

    #[test]
    fn three_ordered_constants_split_no_way() {
        let a = FiniteAction::new(
            labels(&["c", "d", "e"]),
            labels(&["s_c", "s_d", "s_e"]),
            vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(split_into_biaction(&a, &Limits::default()).unwrap(), None);
    }

    #[test]
    fn empty_operation_sort_splits_trivially() {
        let a = FiniteAction::new(labels(&["c"]), Vec::new(), vec![vec![]]).unwrap();
        assert_eq!(
            split_into_biaction(&a, &Limits::default()).unwrap(),
            Some((Vec::new(), Vec::new()))
        );
        let wide = FiniteAction::new(
            labels(&["c"]),
            (0..17).map(|i| format!("s{i}")).collect(),
            vec![vec![0; 17]],
        )
        .unwrap();
        assert!(matches!(
            split_into_biaction(&wide, &Limits::default()),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn operation_band_of_the_generator_is_the_generator_band() {
        let limits = Limits::default();
        let (f1, _) = full_action(&["x".to_string()], &limits).unwrap();
        let band = operation_setband(&f1, &limits).unwrap();
        let (expected, _) = full_setband(&["x".to_string()], &limits).unwrap();
        assert_eq!(band.s_labels(), expected.s_labels());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(band.mul(x, y), expected.mul(x, y));
            }
        }
    }

    #[test]
    fn operation_band_of_the_three_state_action_is_right_zero() {
        let band = operation_setband(&ex47(), &Limits::default()).unwrap();
        assert_eq!(band.s_labels(), ["s", "t"]);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(band.mul(x, y), y, "right-zero product");
            }
        }
    }

    #[test]
    fn operation_band_needs_operations() {
        let lone = FiniteAction::new(labels(&["c"]), Vec::new(), vec![vec![]]).unwrap();
        assert!(matches!(
            operation_setband(&lone, &Limits::default()),
            Err(Error::EmptySort { sort: SortName::S })
        ));
        let identity =
            FiniteAction::new(labels(&["c", "d"]), labels(&["e"]), vec![vec![0], vec![1]])
                .unwrap();
        let band = operation_setband(&identity, &Limits::default()).unwrap();
        assert_eq!(band.s_labels(), ["e"]);
    }
}
