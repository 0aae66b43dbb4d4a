//! The one-atom generator algebras and Horn-clause validity.
//!
//! Each class is generated as a quasivariety by its one-atom full algebra,
//! so a Horn clause holds in every member exactly when it holds there.
//! `horn_valid` therefore decides validity across the whole class by
//! exhaustive evaluation over the tiny carriers of `f1(kind)`.

use crate::algebra::{FiniteAlgebra, Kind};
use crate::error::{Error, Result};
use crate::full::full_algebra;
use crate::word::{CTerm, Equation, HornClause, Letter, LetterSort, Word};
use crate::Limits;

/// The one-atom full algebra of the given kind, with its canonical labels
/// ("0"/"1" for states, "(1,0)"/"(0,0)"/"(1,1)" for operation pairs).
pub fn f1(kind: Kind) -> FiniteAlgebra {
    let universe = vec!["x".to_string()];
    let (algebra, _) =
        full_algebra(kind, &universe, &Limits::default()).expect("one atom is within any limit");
    algebra
}

/// A falsifying assignment: each variable's value in the generator
/// algebra, plus the two conclusion values that came apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub c_values: Vec<(String, String)>,
    pub s_values: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HornVerdict {
    Valid,
    Counterexample(Counterexample),
}

impl HornVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, HornVerdict::Valid)
    }
}

struct Assignment<'c> {
    clause: &'c HornClause,
    c_values: Vec<usize>,
    s_values: Vec<usize>,
}

impl Assignment<'_> {
    fn s_value(&self, name: &str) -> usize {
        let i = self
            .clause
            .s_vars
            .iter()
            .position(|l| l.name == name)
            .expect("letter was declared");
        self.s_values[i]
    }

    fn c_value(&self, name: &str) -> usize {
        let i = self.clause.c_vars.iter().position(|v| v == name).expect("variable was declared");
        self.c_values[i]
    }

    fn side(&self, algebra: &FiniteAlgebra, c: Option<&str>, word: &Word) -> usize {
        match algebra {
            FiniteAlgebra::Action(a) => {
                let mut cur = self.c_value(c.expect("state term"));
                for letter in word {
                    cur = a.act(cur, self.s_value(&letter.name));
                }
                cur
            }
            FiniteAlgebra::Biaction(b) => {
                let mut cur = self.c_value(c.expect("state term"));
                for letter in word {
                    let up = letter.sort == LetterSort::Up;
                    cur = b.act(cur, (up, self.s_value(&letter.name)));
                }
                cur
            }
            FiniteAlgebra::SetBand(band) => {
                let values: Vec<usize> =
                    word.iter().map(|letter| self.s_value(&letter.name)).collect();
                band.run(&values)
            }
        }
    }

    /// Evaluates both sides of an equation, returning the value pair.
    fn equation(&self, algebra: &FiniteAlgebra, eq: &Equation) -> (usize, usize) {
        match eq {
            Equation::CTerm { lhs, rhs } => (
                self.side(algebra, Some(&lhs.c), &lhs.word),
                self.side(algebra, Some(&rhs.c), &rhs.word),
            ),
            Equation::Band { lhs, rhs } => {
                (self.side(algebra, None, lhs), self.side(algebra, None, rhs))
            }
        }
    }
}

fn value_labels(algebra: &FiniteAlgebra) -> (Vec<String>, impl Fn(&Letter, usize) -> String + '_) {
    let c_labels = match algebra {
        FiniteAlgebra::Action(a) => a.c_labels().to_vec(),
        FiniteAlgebra::Biaction(b) => b.c_labels().to_vec(),
        FiniteAlgebra::SetBand(_) => Vec::new(),
    };
    let s_label = move |letter: &Letter, value: usize| -> String {
        match algebra {
            FiniteAlgebra::Action(a) => a.s_labels()[value].clone(),
            FiniteAlgebra::Biaction(b) => match letter.sort {
                LetterSort::Up => b.sup_labels()[value].clone(),
                _ => b.sdown_labels()[value].clone(),
            },
            FiniteAlgebra::SetBand(band) => band.s_labels()[value].clone(),
        }
    };
    (c_labels, s_label)
}

/// Decides whether a Horn clause holds in every algebra of its kind's
/// class, by evaluating it under every assignment into the generator.
///
/// Assignments are enumerated in mixed-radix order with the operation
/// variables as the high digits (declaration order, most significant
/// first) and the state variables as the low digits, so the reported
/// counterexample is deterministic.
pub fn horn_valid(clause: &HornClause, limits: &Limits) -> Result<HornVerdict> {
    for (what, count) in [
        ("horn-clause operation variables", clause.s_vars.len()),
        ("horn-clause state variables", clause.c_vars.len()),
    ] {
        if count > limits.max_horn_vars {
            return Err(Error::LimitExceeded {
                what,
                size: count as u64,
                cap: limits.max_horn_vars as u64,
            });
        }
    }
    let algebra = f1(clause.kind);
    let (s_radix, c_radix) = match clause.kind {
        Kind::Action | Kind::SetBand => (3u64, 2u64),
        Kind::Biaction => (2, 2),
    };
    let digits = clause.s_vars.len() + clause.c_vars.len();
    let total: u64 = std::iter::repeat(s_radix)
        .take(clause.s_vars.len())
        .chain(std::iter::repeat(c_radix).take(clause.c_vars.len()))
        .product();
    let mut assignment =
        Assignment { clause, c_values: vec![0; clause.c_vars.len()], s_values: vec![0; clause.s_vars.len()] };
    for index in 0..total {
        let mut rem = index;
        for digit in (0..digits).rev() {
            if digit < clause.s_vars.len() {
                assignment.s_values[digit] = (rem % s_radix) as usize;
                rem /= s_radix;
            } else {
                let c = digit - clause.s_vars.len();
                assignment.c_values[c] = (rem % c_radix) as usize;
                rem /= c_radix;
            }
        }
        if clause
            .premises
            .iter()
            .all(|p| matches!(assignment.equation(&algebra, p), (l, r) if l == r))
        {
            let (lhs, rhs) = assignment.equation(&algebra, &clause.conclusion);
            if lhs != rhs {
                let (c_labels, s_label) = value_labels(&algebra);
                let value_of = |value: usize| match &algebra {
                    FiniteAlgebra::SetBand(band) => band.s_labels()[value].clone(),
                    _ => c_labels[value].clone(),
                };
                return Ok(HornVerdict::Counterexample(Counterexample {
                    c_values: clause
                        .c_vars
                        .iter()
                        .zip(&assignment.c_values)
                        .map(|(v, &i)| (v.clone(), c_labels[i].clone()))
                        .collect(),
                    s_values: clause
                        .s_vars
                        .iter()
                        .zip(&assignment.s_values)
                        .map(|(l, &i)| (l.annotated(), s_label(l, i)))
                        .collect(),
                    lhs: value_of(lhs),
                    rhs: value_of(rhs),
                }));
            }
        }
    }
    Ok(HornVerdict::Valid)
}

fn cterm(c: &str, word: &[Letter]) -> CTerm {
    CTerm { c: c.to_string(), word: word.to_vec() }
}

fn ceq(lc: &str, lw: &[Letter], rc: &str, rw: &[Letter]) -> Equation {
    Equation::CTerm { lhs: cterm(lc, lw), rhs: cterm(rc, rw) }
}

/// Builds the strong-link schema instance with the given step-word
/// lengths: premises `c = a0`, `d = an`, and for each step `i` the
/// equations `c w_i = d w_i`, `a_{i-1} w_i = a_{i-1}`, `a_i w_i = a_i`;
/// conclusion `c = d`. Step `i`'s word uses fresh letters `si_1, si_2, …`.
///
/// For the set-band kind every variable is a band element and the
/// equations relate products.
pub fn sl_instance(kind: Kind, word_lens: &[usize]) -> Result<HornClause> {
    if word_lens.is_empty() || word_lens.contains(&0) {
        return Err(Error::Parse("strong-link instance needs nonempty step words".into()));
    }
    let n = word_lens.len();
    let letter = |name: String| match kind {
        Kind::Biaction => Letter::down(name),
        _ => Letter::plain(name),
    };
    let words: Vec<Word> = word_lens
        .iter()
        .enumerate()
        .map(|(i, &len)| (1..=len).map(|j| letter(format!("s{}_{}", i + 1, j))).collect())
        .collect();
    let anchor = |i: usize| format!("a{i}");
    let mut premises = Vec::new();
    let equation: Box<dyn Fn(&str, &[Letter], &str, &[Letter]) -> Equation> = match kind {
        Kind::SetBand => Box::new(|lc: &str, lw: &[Letter], rc: &str, rw: &[Letter]| {
            let side = |c: &str, w: &[Letter]| {
                let mut out = vec![Letter::plain(c)];
                out.extend(w.iter().cloned());
                out
            };
            Equation::Band { lhs: side(lc, lw), rhs: side(rc, rw) }
        }),
        _ => Box::new(ceq),
    };
    premises.push(equation("c", &[], &anchor(0), &[]));
    premises.push(equation("d", &[], &anchor(n), &[]));
    for (i, w) in words.iter().enumerate() {
        premises.push(equation("c", w, "d", w));
        premises.push(equation(&anchor(i), w, &anchor(i), &[]));
        premises.push(equation(&anchor(i + 1), w, &anchor(i + 1), &[]));
    }
    let conclusion = equation("c", &[], "d", &[]);
    HornClause::new(kind, premises, conclusion)
}

/// Builds the biaction subset-schema instance whose trailing word has the
/// given sorts: premises `c s w = d s w`, `c t w = d t w`, `e s w = e t w`;
/// conclusion `c w = d w`. The empty list gives the basic subset axiom.
pub fn subset_instance(word_sorts: &[LetterSort]) -> Result<HornClause> {
    let w: Word = word_sorts
        .iter()
        .enumerate()
        .map(|(i, sort)| match sort {
            LetterSort::Down => Ok(Letter::down(format!("w{}", i + 1))),
            LetterSort::Up => Ok(Letter::up(format!("w{}", i + 1))),
            LetterSort::Plain => {
                Err(Error::Parse("subset-instance word letters need a biaction sort".into()))
            }
        })
        .collect::<Result<_>>()?;
    let s = Letter::down("s");
    let t = Letter::up("t");
    let with = |head: &Letter| -> Word {
        let mut word = vec![head.clone()];
        word.extend(w.iter().cloned());
        word
    };
    let premises = vec![
        ceq("c", &with(&s), "d", &with(&s)),
        ceq("c", &with(&t), "d", &with(&t)),
        ceq("e", &with(&s), "e", &with(&t)),
    ];
    let conclusion = ceq("c", &w, "d", &w);
    HornClause::new(Kind::Biaction, premises, conclusion)
}
