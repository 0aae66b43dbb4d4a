//! Axiom checkers with concrete first-found counterexample witnesses.
//!
//! Equational axioms are scanned exhaustively in declaration order, states
//! outermost and later schema variables innermost, so a failing check
//! always reports the lexicographically first violating instance. Schemas
//! that quantify over arbitrary words quantify over the transformation
//! monoid instead: a word enters every premise only through its induced
//! map, so the finite closure decides the infinite schema, and witnesses
//! print the map's shortest generating word.

use std::collections::VecDeque;

use crate::algebra::{FiniteAction, FiniteAlgebra, FiniteBiaction, FiniteSetBand, Kind};
use crate::error::Result;
use crate::full::evaluate;
use crate::monoid::{action_monoid, band_right_generators, biaction_monoid};
use crate::word::{Letter, Word};
use crate::Limits;

/// One side of an evaluated equation: where it starts, what it applies,
/// where it lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalSide {
    pub start: String,
    pub word: Word,
    pub value: String,
}

/// A concrete violating instance of an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two evaluated terms that should coincide but do not.
    Equation { lhs: EvalSide, rhs: EvalSide },
    /// An associativity failure: `(x·y)·z = lhs` but `x·(y·z) = rhs`.
    Assoc { x: String, y: String, z: String, lhs: String, rhs: String },
    /// A nontrivial strong link: states `chain[0] .. chain[n]` where
    /// consecutive states are both fixed by the step word, every step word
    /// merges the endpoints, and the endpoints differ.
    Chain { chain: Vec<String>, words: Vec<Word> },
    /// A subset-axiom failure: the premises `c s w = d s w`,
    /// `c t w = d t w`, `e s w = e t w` all hold, yet `c w = lhs` differs
    /// from `d w = rhs`.
    Subset {
        c: String,
        d: String,
        e: String,
        s: String,
        t: String,
        w: Word,
        lhs: String,
        rhs: String,
    },
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

fn term_text(start: &str, word: &Word) -> String {
    let mut out = start.to_string();
    for letter in word {
        out.push(' ');
        out.push_str(&letter.annotated());
    }
    out
}

fn word_brackets(word: &Word) -> String {
    let inner = word.iter().map(|l| l.annotated()).collect::<Vec<_>>().join(" ");
    format!("[{inner}]")
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Equation { lhs, rhs } => write!(
                f,
                "{} = {} != {} = {}",
                term_text(&lhs.start, &lhs.word),
                lhs.value,
                rhs.value,
                term_text(&rhs.start, &rhs.word),
            ),
            Witness::Assoc { x, y, z, lhs, rhs } => {
                write!(f, "({x} {y}) {z} = {lhs} != {rhs} = {x} ({y} {z})")
            }
            Witness::Chain { chain, words } => write!(
                f,
                "chain {} via {}",
                chain.join(" -> "),
                words.iter().map(word_brackets).collect::<Vec<_>>().join(", "),
            ),
            Witness::Subset { c, d, e, s, t, w, lhs, rhs } => write!(
                f,
                "premises hold at c={c}, d={d}, e={e}, s={s}, t={t}, w={} yet {lhs} != {rhs}",
                word_brackets(w),
            ),
        }
    }
}

/// One named axiom with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub verdict: Verdict,
}

/// The verdicts for one axiom system, in its fixed presentation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub kind: Kind,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.is_pass())
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Which axiom system `check_algebra` applies to an action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// The defining system of each kind.
    Standard,
    /// Idempotence and commutativity (intersection-only actions).
    Intersection,
    /// The single fully-previous-redundant schema.
    FullyPr,
}

fn action_side(a: &FiniteAction, c: usize, ops: &[usize]) -> EvalSide {
    EvalSide {
        start: a.c_labels()[c].clone(),
        word: ops.iter().map(|&s| Letter::plain(a.s_labels()[s].clone())).collect(),
        value: a.c_labels()[a.run(c, ops)].clone(),
    }
}

fn action_equation(a: &FiniteAction, c: usize, lhs: &[usize], rhs: &[usize]) -> Witness {
    Witness::Equation { lhs: action_side(a, c, lhs), rhs: action_side(a, c, rhs) }
}

fn action_idempotence(a: &FiniteAction) -> Verdict {
    for c in 0..a.c_len() {
        for s in 0..a.s_len() {
            if a.run(c, &[s, s]) != a.act(c, s) {
                return Verdict::Fail(action_equation(a, c, &[s, s], &[s]));
            }
        }
    }
    Verdict::Pass
}

fn action_previous_redundance(a: &FiniteAction) -> Verdict {
    for c in 0..a.c_len() {
        for s in 0..a.s_len() {
            for t in 0..a.s_len() {
                if a.run(c, &[s, t, s]) != a.run(c, &[t, s]) {
                    return Verdict::Fail(action_equation(a, c, &[s, t, s], &[t, s]));
                }
            }
        }
    }
    Verdict::Pass
}

fn action_commutativity(a: &FiniteAction) -> Verdict {
    for c in 0..a.c_len() {
        for s1 in 0..a.s_len() {
            for s2 in 0..a.s_len() {
                if a.run(c, &[s1, s2]) != a.run(c, &[s2, s1]) {
                    return Verdict::Fail(action_equation(a, c, &[s1, s2], &[s2, s1]));
                }
            }
        }
    }
    Verdict::Pass
}

/// Searches for a nontrivial strong link among the given maps.
///
/// `maps` pairs each available map with the word a witness should print;
/// for a monoid this is the shortest generating word, for a band acting on
/// itself the single element. For every ordered pair of distinct states
/// `(c,d)` the search builds the graph whose edges join states fixed by a
/// common map that merges `c` and `d`, then walks it breadth-first; `d`
/// reachable from `c` is exactly a nontrivial strong link.
pub fn strong_link_search(labels: &[String], maps: &[(Vec<usize>, Word)]) -> Verdict {
    let n = labels.len();
    for c in 0..n {
        for d in 0..n {
            if c == d {
                continue;
            }
            // First map to witness each edge, if any.
            let mut edge = vec![vec![None; n]; n];
            for (mi, (map, _)) in maps.iter().enumerate() {
                if map[c] != map[d] {
                    continue;
                }
                let fixed: Vec<usize> = (0..n).filter(|&a| map[a] == a).collect();
                for (i, &a) in fixed.iter().enumerate() {
                    for &b in &fixed[i + 1..] {
                        if edge[a][b].is_none() {
                            edge[a][b] = Some(mi);
                            edge[b][a] = Some(mi);
                        }
                    }
                }
            }
            let mut parent = vec![usize::MAX; n];
            parent[c] = c;
            let mut queue = VecDeque::from([c]);
            while let Some(a) = queue.pop_front() {
                if a == d {
                    break;
                }
                for b in 0..n {
                    if parent[b] == usize::MAX && edge[a][b].is_some() {
                        parent[b] = a;
                        queue.push_back(b);
                    }
                }
            }
            if parent[d] != usize::MAX {
                let mut path = vec![d];
                while *path.last().unwrap() != c {
                    path.push(parent[*path.last().unwrap()]);
                }
                path.reverse();
                let words = path
                    .windows(2)
                    .map(|step| maps[edge[step[0]][step[1]].unwrap()].1.clone())
                    .collect();
                return Verdict::Fail(Witness::Chain {
                    chain: path.into_iter().map(|a| labels[a].clone()).collect(),
                    words,
                });
            }
        }
    }
    Verdict::Pass
}

/// Checks the defining action system: idempotence (I), previous
/// redundance (PR), and triviality of all strong links (SL).
pub fn check_action_axioms(a: &FiniteAction, limits: &Limits) -> Result<AxiomReport> {
    let monoid = action_monoid(a, limits)?;
    let maps: Vec<(Vec<usize>, Word)> =
        monoid.maps().iter().map(|m| (m.map().to_vec(), m.word().clone())).collect();
    Ok(AxiomReport {
        kind: Kind::Action,
        checks: vec![
            AxiomCheck { axiom: "I", verdict: action_idempotence(a) },
            AxiomCheck { axiom: "PR", verdict: action_previous_redundance(a) },
            AxiomCheck { axiom: "SL", verdict: strong_link_search(a.c_labels(), &maps) },
        ],
    })
}

/// Checks idempotence (I) and commutativity (C), the system of
/// intersection-only actions.
pub fn check_intersection_axioms(a: &FiniteAction) -> AxiomReport {
    AxiomReport {
        kind: Kind::Action,
        checks: vec![
            AxiomCheck { axiom: "I", verdict: action_idempotence(a) },
            AxiomCheck { axiom: "C", verdict: action_commutativity(a) },
        ],
    }
}

/// Checks `c s w s = c w s` for every state, operation, and monoid map.
///
/// The empty word instance is idempotence and the one-letter instances are
/// previous redundance, so a pass here subsumes both equations.
pub fn check_fully_pr(a: &FiniteAction, limits: &Limits) -> Result<AxiomCheck> {
    let monoid = action_monoid(a, limits)?;
    for c in 0..a.c_len() {
        for s in 0..a.s_len() {
            for m in monoid.maps() {
                let lhs = a.act(m.apply(a.act(c, s)), s);
                let rhs = a.act(m.apply(c), s);
                if lhs != rhs {
                    let letter = Letter::plain(a.s_labels()[s].clone());
                    let mut lw = vec![letter.clone()];
                    lw.extend(m.word().iter().cloned());
                    lw.push(letter.clone());
                    let mut rw = m.word().clone();
                    rw.push(letter);
                    let start = a.c_labels()[c].clone();
                    return Ok(AxiomCheck {
                        axiom: "fully-PR",
                        verdict: Verdict::Fail(Witness::Equation {
                            lhs: EvalSide {
                                start: start.clone(),
                                word: lw,
                                value: a.c_labels()[lhs].clone(),
                            },
                            rhs: EvalSide { start, word: rw, value: a.c_labels()[rhs].clone() },
                        }),
                    });
                }
            }
        }
    }
    Ok(AxiomCheck { axiom: "fully-PR", verdict: Verdict::Pass })
}

fn biaction_ops(b: &FiniteBiaction) -> Vec<(Letter, (bool, usize))> {
    let down = b
        .sdown_labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (Letter::down(l.clone()), (false, i)));
    let up = b.sup_labels().iter().enumerate().map(|(i, l)| (Letter::up(l.clone()), (true, i)));
    down.chain(up).collect()
}

fn biaction_side(b: &FiniteBiaction, c: usize, ops: &[(Letter, (bool, usize))]) -> EvalSide {
    let codes: Vec<(bool, usize)> = ops.iter().map(|(_, code)| *code).collect();
    EvalSide {
        start: b.c_labels()[c].clone(),
        word: ops.iter().map(|(letter, _)| letter.clone()).collect(),
        value: b.c_labels()[b.run(c, &codes)].clone(),
    }
}

fn biaction_idempotence(b: &FiniteBiaction, ops: &[(Letter, (bool, usize))]) -> Verdict {
    for c in 0..b.c_len() {
        for op in ops {
            if b.run(c, &[op.1, op.1]) != b.act(c, op.1) {
                return Verdict::Fail(Witness::Equation {
                    lhs: biaction_side(b, c, &[op.clone(), op.clone()]),
                    rhs: biaction_side(b, c, std::slice::from_ref(op)),
                });
            }
        }
    }
    Verdict::Pass
}

fn biaction_previous_redundance(b: &FiniteBiaction, ops: &[(Letter, (bool, usize))]) -> Verdict {
    // Only the cross-sort instances are axioms; the same-sort ones follow
    // from commutativity and idempotence.
    for c in 0..b.c_len() {
        for x in ops {
            for y in ops.iter().filter(|y| y.1 .0 != x.1 .0) {
                if b.run(c, &[x.1, y.1, x.1]) != b.run(c, &[y.1, x.1]) {
                    return Verdict::Fail(Witness::Equation {
                        lhs: biaction_side(b, c, &[x.clone(), y.clone(), x.clone()]),
                        rhs: biaction_side(b, c, &[y.clone(), x.clone()]),
                    });
                }
            }
        }
    }
    Verdict::Pass
}

fn biaction_commutativity(b: &FiniteBiaction, up: bool) -> Verdict {
    let len = if up { b.sup_len() } else { b.sdown_len() };
    let ops = biaction_ops(b);
    let offset = if up { b.sdown_len() } else { 0 };
    for c in 0..b.c_len() {
        for i in 0..len {
            for j in 0..len {
                let (x, y) = (&ops[offset + i], &ops[offset + j]);
                if b.run(c, &[x.1, y.1]) != b.run(c, &[y.1, x.1]) {
                    return Verdict::Fail(Witness::Equation {
                        lhs: biaction_side(b, c, &[x.clone(), y.clone()]),
                        rhs: biaction_side(b, c, &[y.clone(), x.clone()]),
                    });
                }
            }
        }
    }
    Verdict::Pass
}

/// Shared scan for the subset schema at a fixed collection of maps.
///
/// Premises at map `w`: `cs w = ds w`, `ct w = dt w`, `es w = et w`;
/// violated when they hold yet `c w ≠ d w`.
fn biaction_subset_scan<'m>(
    b: &FiniteBiaction,
    maps: impl Iterator<Item = (&'m [usize], &'m Word)> + Clone,
) -> Verdict {
    for c in 0..b.c_len() {
        for d in 0..b.c_len() {
            if c == d {
                continue;
            }
            for e in 0..b.c_len() {
                for s in 0..b.sdown_len() {
                    for t in 0..b.sup_len() {
                        for (map, word) in maps.clone() {
                            if map[b.act_down(c, s)] != map[b.act_down(d, s)] {
                                continue;
                            }
                            if map[b.act_up(c, t)] != map[b.act_up(d, t)] {
                                continue;
                            }
                            if map[b.act_down(e, s)] != map[b.act_up(e, t)] {
                                continue;
                            }
                            if map[c] != map[d] {
                                return Verdict::Fail(Witness::Subset {
                                    c: b.c_labels()[c].clone(),
                                    d: b.c_labels()[d].clone(),
                                    e: b.c_labels()[e].clone(),
                                    s: b.sdown_labels()[s].clone(),
                                    t: b.sup_labels()[t].clone(),
                                    w: word.clone(),
                                    lhs: b.c_labels()[map[c]].clone(),
                                    rhs: b.c_labels()[map[d]].clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::Pass
}

/// Checks the biaction system: idempotence (I), cross-sort previous
/// redundance (PR), per-sort commutativity (Cdown, Cup), the subset axiom
/// at the empty word (basic-S), and the subset schema over the whole
/// transformation monoid (extra-S).
pub fn check_biaction_axioms(b: &FiniteBiaction, limits: &Limits) -> Result<AxiomReport> {
    let ops = biaction_ops(b);
    let monoid = biaction_monoid(b, limits)?;
    let identity: Vec<usize> = (0..b.c_len()).collect();
    let empty: Word = Vec::new();
    let basic = biaction_subset_scan(b, std::iter::once((identity.as_slice(), &empty)));
    let extra =
        biaction_subset_scan(b, monoid.maps().iter().map(|m| (m.map(), m.word())));
    Ok(AxiomReport {
        kind: Kind::Biaction,
        checks: vec![
            AxiomCheck { axiom: "I", verdict: biaction_idempotence(b, &ops) },
            AxiomCheck { axiom: "PR", verdict: biaction_previous_redundance(b, &ops) },
            AxiomCheck { axiom: "Cdown", verdict: biaction_commutativity(b, false) },
            AxiomCheck { axiom: "Cup", verdict: biaction_commutativity(b, true) },
            AxiomCheck { axiom: "basic-S", verdict: basic },
            AxiomCheck { axiom: "extra-S", verdict: extra },
        ],
    })
}

fn band_side(band: &FiniteSetBand, x: usize, rest: &[usize]) -> EvalSide {
    let mut word_indices = vec![x];
    word_indices.extend_from_slice(rest);
    EvalSide {
        start: band.s_labels()[x].clone(),
        word: rest.iter().map(|&y| Letter::plain(band.s_labels()[y].clone())).collect(),
        value: band.s_labels()[band.run(&word_indices)].clone(),
    }
}

/// Checks the set-band system: associativity, idempotence, right
/// regularity (`x y x = y x`), and triviality of strong links with single
/// band elements as the step words.
pub fn check_setband_axioms(band: &FiniteSetBand) -> AxiomReport {
    let n = band.s_len();
    let mut assoc = Verdict::Pass;
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = band.mul(band.mul(x, y), z);
                let rhs = band.mul(x, band.mul(y, z));
                if lhs != rhs {
                    assoc = Verdict::Fail(Witness::Assoc {
                        x: band.s_labels()[x].clone(),
                        y: band.s_labels()[y].clone(),
                        z: band.s_labels()[z].clone(),
                        lhs: band.s_labels()[lhs].clone(),
                        rhs: band.s_labels()[rhs].clone(),
                    });
                    break 'assoc;
                }
            }
        }
    }
    let mut idem = Verdict::Pass;
    for x in 0..n {
        if band.mul(x, x) != x {
            idem = Verdict::Fail(Witness::Equation {
                lhs: band_side(band, x, &[x]),
                rhs: band_side(band, x, &[]),
            });
            break;
        }
    }
    let mut right_regular = Verdict::Pass;
    'rr: for x in 0..n {
        for y in 0..n {
            if band.run(&[x, y, x]) != band.mul(y, x) {
                right_regular = Verdict::Fail(Witness::Equation {
                    lhs: band_side(band, x, &[y, x]),
                    rhs: band_side(band, y, &[x]),
                });
                break 'rr;
            }
        }
    }
    let maps: Vec<(Vec<usize>, Word)> = band_right_generators(band)
        .into_iter()
        .map(|(letter, map)| (map, vec![letter]))
        .collect();
    AxiomReport {
        kind: Kind::SetBand,
        checks: vec![
            AxiomCheck { axiom: "assoc", verdict: assoc },
            AxiomCheck { axiom: "idem", verdict: idem },
            AxiomCheck { axiom: "right-regular", verdict: right_regular },
            AxiomCheck { axiom: "SL", verdict: strong_link_search(band.s_labels(), &maps) },
        ],
    }
}

/// Runs the requested axiom system on any algebra.
///
/// `Intersection` and `FullyPr` apply to actions only.
pub fn check_algebra(alg: &FiniteAlgebra, mode: CheckMode, limits: &Limits) -> Result<AxiomReport> {
    match mode {
        CheckMode::Standard => match alg {
            FiniteAlgebra::Action(a) => check_action_axioms(a, limits),
            FiniteAlgebra::Biaction(b) => check_biaction_axioms(b, limits),
            FiniteAlgebra::SetBand(band) => Ok(check_setband_axioms(band)),
        },
        CheckMode::Intersection => Ok(check_intersection_axioms(alg.as_action()?)),
        CheckMode::FullyPr => Ok(AxiomReport {
            kind: Kind::Action,
            checks: vec![check_fully_pr(alg.as_action()?, limits)?],
        }),
    }
}

/// Re-evaluates a failure witness on the algebra it came from.
///
/// Returns true only if every claimed premise holds and the claimed
/// inequality is genuine, so a true result certifies the violation
/// independently of the checker that produced it.
pub fn confirm_witness(alg: &FiniteAlgebra, witness: &Witness) -> Result<bool> {
    match witness {
        Witness::Equation { lhs, rhs } => {
            let l = evaluate(alg, &lhs.start, &lhs.word)?;
            let r = evaluate(alg, &rhs.start, &rhs.word)?;
            Ok(l == lhs.value && r == rhs.value && l != r)
        }
        Witness::Assoc { x, y, z, lhs, rhs } => {
            let band = alg.as_setband()?;
            let (xi, yi, zi) = (band.s_index(x)?, band.s_index(y)?, band.s_index(z)?);
            let l = band.mul(band.mul(xi, yi), zi);
            let r = band.mul(xi, band.mul(yi, zi));
            Ok(band.s_labels()[l] == *lhs && band.s_labels()[r] == *rhs && l != r)
        }
        Witness::Chain { chain, words } => {
            if chain.len() != words.len() + 1 || chain.len() < 2 {
                return Ok(false);
            }
            let c = &chain[0];
            let d = chain.last().unwrap();
            if c == d {
                return Ok(false);
            }
            for (i, w) in words.iter().enumerate() {
                let (a, b) = (&chain[i], &chain[i + 1]);
                if evaluate(alg, a, w)? != *a || evaluate(alg, b, w)? != *b {
                    return Ok(false);
                }
                if evaluate(alg, c, w)? != evaluate(alg, d, w)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Witness::Subset { c, d, e, s, t, w, lhs, rhs } => {
            alg.as_biaction()?;
            let with = |start: &str, head: Option<Letter>| -> Result<String> {
                let mut word: Word = head.into_iter().collect();
                word.extend(w.iter().cloned());
                evaluate(alg, start, &word)
            };
            let premises = with(c, Some(Letter::down(s.clone())))?
                == with(d, Some(Letter::down(s.clone())))?
                && with(c, Some(Letter::up(t.clone())))? == with(d, Some(Letter::up(t.clone())))?
                && with(e, Some(Letter::down(s.clone())))?
                    == with(e, Some(Letter::up(t.clone())))?;
            let cw = with(c, None)?;
            let dw = with(d, None)?;
            Ok(premises && cw == *lhs && dw == *rhs && cw != dw)
        }
    }
}
