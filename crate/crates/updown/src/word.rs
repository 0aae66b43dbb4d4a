//! Words, equations, and Horn clauses over operation letters.
//!
//! The textual grammar is whitespace-tokenized. An equation is two sides
//! joined by `=`; for state-acting kinds the first token of a side is a
//! state variable and the remaining tokens are operation letters, while for
//! bands every token is an operation letter. A Horn clause is
//! `premise & premise & ... => conclusion`, or a bare equation. Biaction
//! letters name their sort with a `:down` or `:up` suffix on at least one
//! occurrence; the suffix is part of the notation, not the name.

use std::fmt;

use crate::algebra::Kind;
use crate::error::{Error, Result};

/// Sort tag for one operation letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterSort {
    /// Single-sorted letter (actions and set bands).
    Plain,
    /// Intersect-sort letter of a biaction.
    Down,
    /// Union-sort letter of a biaction.
    Up,
}

/// One operation letter of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub name: String,
    pub sort: LetterSort,
}

impl Letter {
    pub fn plain(name: impl Into<String>) -> Letter {
        Letter { name: name.into(), sort: LetterSort::Plain }
    }

    pub fn down(name: impl Into<String>) -> Letter {
        Letter { name: name.into(), sort: LetterSort::Down }
    }

    pub fn up(name: impl Into<String>) -> Letter {
        Letter { name: name.into(), sort: LetterSort::Up }
    }

    /// The token form that round-trips through the parser.
    pub fn annotated(&self) -> String {
        match self.sort {
            LetterSort::Plain => self.name.clone(),
            LetterSort::Down => format!("{}:down", self.name),
            LetterSort::Up => format!("{}:up", self.name),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A (possibly empty) sequence of operation letters.
pub type Word = Vec<Letter>;

/// Renders a word as space-joined letter names.
pub fn word_text(word: &[Letter]) -> String {
    word.iter().map(|l| l.name.as_str()).collect::<Vec<_>>().join(" ")
}

/// A state variable followed by a word: the term `c w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTerm {
    pub c: String,
    pub word: Word,
}

/// One equation between terms of the appropriate shape for a kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equation {
    /// `c w1 = d w2` over an action or biaction.
    CTerm { lhs: CTerm, rhs: CTerm },
    /// `w1 = w2` over a set band (both sides nonempty).
    Band { lhs: Word, rhs: Word },
}

impl Equation {
    /// Parses a single equation; `=>` is rejected here.
    pub fn parse(kind: Kind, text: &str) -> Result<Equation> {
        if text.contains("=>") {
            return Err(Error::Parse("expected an equation, found a clause with `=>`".into()));
        }
        let mut scan = VarScan::default();
        let raw = RawEquation::parse(kind, text, &mut scan)?;
        let letters = scan.finish(kind)?;
        Ok(raw.resolve(kind, &letters))
    }
}

/// A conditional equation: premises imply the conclusion.
///
/// `c_vars` and `s_vars` list each variable once, in order of first
/// occurrence reading the premises left to right and then the conclusion.
/// That order is the declaration order every evaluator in the crate uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornClause {
    pub kind: Kind,
    pub c_vars: Vec<String>,
    pub s_vars: Vec<Letter>,
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl HornClause {
    /// Parses `premise & ... & premise => conclusion` or a bare equation.
    pub fn parse(kind: Kind, text: &str) -> Result<HornClause> {
        let mut parts = text.split("=>");
        let first = parts.next().expect("split yields at least one part");
        let (premise_text, conclusion_text) = match parts.next() {
            None => (None, first),
            Some(second) => {
                if parts.next().is_some() {
                    return Err(Error::Parse("more than one `=>` in clause".into()));
                }
                (Some(first), second)
            }
        };
        let mut scan = VarScan::default();
        let mut raw_premises = Vec::new();
        if let Some(premise_text) = premise_text {
            for part in premise_text.split('&') {
                raw_premises.push(RawEquation::parse(kind, part, &mut scan)?);
            }
        }
        let raw_conclusion = RawEquation::parse(kind, conclusion_text, &mut scan)?;
        let s_vars = scan.finish(kind)?;
        let premises = raw_premises.into_iter().map(|r| r.resolve(kind, &s_vars)).collect();
        let conclusion = raw_conclusion.resolve(kind, &s_vars);
        Ok(HornClause { kind, c_vars: scan.c_vars, s_vars, premises, conclusion })
    }

    /// Wraps an already-built equation as a premise-free clause.
    pub fn from_equation(kind: Kind, equation: Equation) -> Result<HornClause> {
        let mut scan = VarScan::default();
        let sides: Vec<&dyn SideVars> = match &equation {
            Equation::CTerm { lhs, rhs } => vec![lhs, rhs],
            Equation::Band { lhs, rhs } => vec![lhs, rhs],
        };
        for side in sides {
            side.note(kind, &mut scan)?;
        }
        let s_vars = scan.finish(kind)?;
        Ok(HornClause { kind, c_vars: scan.c_vars, s_vars, premises: Vec::new(), conclusion: equation })
    }

    /// Builds a premise-free clause from structured parts (used by the
    /// axiom-schema constructors, which already know every sort).
    pub fn new(
        kind: Kind,
        premises: Vec<Equation>,
        conclusion: Equation,
    ) -> Result<HornClause> {
        let mut scan = VarScan::default();
        for eq in premises.iter().chain(std::iter::once(&conclusion)) {
            let sides: Vec<&dyn SideVars> = match eq {
                Equation::CTerm { lhs, rhs } => vec![lhs, rhs],
                Equation::Band { lhs, rhs } => vec![lhs, rhs],
            };
            for side in sides {
                side.note(kind, &mut scan)?;
            }
        }
        let s_vars = scan.finish(kind)?;
        Ok(HornClause { kind, c_vars: scan.c_vars, s_vars, premises, conclusion })
    }
}

/// Parses a bare word of operation letters (no state variable, no `=`).
pub fn parse_word(kind: Kind, text: &str) -> Result<Word> {
    let mut scan = VarScan::default();
    let mut raw = Vec::new();
    for token in text.split_whitespace() {
        let (name, ann) = split_annotation(kind, token)?;
        scan.note_s(&name, ann)?;
        raw.push(name);
    }
    let letters = scan.finish(kind)?;
    Ok(raw.iter().map(|name| resolve_letter(name, &letters)).collect())
}

// ---------------------------------------------------------------------------
// Parser internals: a first pass records tokens and annotations, a second
// pass stamps each occurrence with its variable's resolved sort.

fn split_annotation(kind: Kind, token: &str) -> Result<(String, Option<LetterSort>)> {
    let (base, ann) = if let Some(base) = token.strip_suffix(":down") {
        (base, Some(LetterSort::Down))
    } else if let Some(base) = token.strip_suffix(":up") {
        (base, Some(LetterSort::Up))
    } else {
        (token, None)
    };
    if ann.is_some() && kind != Kind::Biaction {
        return Err(Error::Parse(format!(
            "sort annotation in {token:?} only applies to biaction letters"
        )));
    }
    if base.is_empty() {
        return Err(Error::Parse(format!("missing variable name in token {token:?}")));
    }
    Ok((base.to_string(), ann))
}

#[derive(Default)]
struct VarScan {
    c_vars: Vec<String>,
    s_names: Vec<String>,
    s_sorts: Vec<Option<LetterSort>>,
}

impl VarScan {
    fn note_c(&mut self, name: &str) -> Result<()> {
        if self.s_names.iter().any(|n| n == name) {
            return Err(Error::Parse(format!(
                "{name:?} is used both as a state variable and as an operation letter"
            )));
        }
        if !self.c_vars.iter().any(|n| n == name) {
            self.c_vars.push(name.to_string());
        }
        Ok(())
    }

    fn note_s(&mut self, name: &str, ann: Option<LetterSort>) -> Result<()> {
        if self.c_vars.iter().any(|n| n == name) {
            return Err(Error::Parse(format!(
                "{name:?} is used both as a state variable and as an operation letter"
            )));
        }
        let slot = match self.s_names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.s_names.push(name.to_string());
                self.s_sorts.push(None);
                self.s_sorts.len() - 1
            }
        };
        if let Some(ann) = ann {
            match self.s_sorts[slot] {
                None => self.s_sorts[slot] = Some(ann),
                Some(prev) if prev == ann => {}
                Some(_) => {
                    return Err(Error::Parse(format!(
                        "conflicting sort annotations for letter {name:?}"
                    )))
                }
            }
        }
        Ok(())
    }

    fn finish(&self, kind: Kind) -> Result<Vec<Letter>> {
        self.s_names
            .iter()
            .zip(&self.s_sorts)
            .map(|(name, sort)| match (kind, sort) {
                (Kind::Biaction, Some(sort)) => Ok(Letter { name: name.clone(), sort: *sort }),
                (Kind::Biaction, None) => Err(Error::Parse(format!(
                    "letter {name:?} needs a :down or :up annotation on some occurrence"
                ))),
                (_, _) => Ok(Letter { name: name.clone(), sort: LetterSort::Plain }),
            })
            .collect()
    }
}

fn resolve_letter(name: &str, letters: &[Letter]) -> Letter {
    letters
        .iter()
        .find(|l| l.name == name)
        .expect("every scanned name was recorded")
        .clone()
}

trait SideVars {
    fn note(&self, kind: Kind, scan: &mut VarScan) -> Result<()>;
}

impl SideVars for CTerm {
    fn note(&self, _kind: Kind, scan: &mut VarScan) -> Result<()> {
        scan.note_c(&self.c)?;
        for letter in &self.word {
            let ann = match letter.sort {
                LetterSort::Plain => None,
                other => Some(other),
            };
            scan.note_s(&letter.name, ann)?;
        }
        Ok(())
    }
}

impl SideVars for Word {
    fn note(&self, _kind: Kind, scan: &mut VarScan) -> Result<()> {
        for letter in self {
            let ann = match letter.sort {
                LetterSort::Plain => None,
                other => Some(other),
            };
            scan.note_s(&letter.name, ann)?;
        }
        Ok(())
    }
}

enum RawSide {
    CTerm { c: String, word: Vec<String> },
    Band { word: Vec<String> },
}

struct RawEquation {
    lhs: RawSide,
    rhs: RawSide,
}

impl RawEquation {
    fn parse(kind: Kind, text: &str, scan: &mut VarScan) -> Result<RawEquation> {
        let mut sides = text.split('=');
        let (lhs, rhs) = match (sides.next(), sides.next(), sides.next()) {
            (Some(l), Some(r), None) => (l, r),
            _ => return Err(Error::Parse(format!("expected exactly one `=` in {:?}", text.trim()))),
        };
        Ok(RawEquation {
            lhs: RawSide::parse(kind, lhs, scan)?,
            rhs: RawSide::parse(kind, rhs, scan)?,
        })
    }

    fn resolve(self, kind: Kind, letters: &[Letter]) -> Equation {
        let resolve_side = |side: RawSide| match side {
            RawSide::CTerm { c, word } => {
                (Some(c), word.iter().map(|n| resolve_letter(n, letters)).collect::<Word>())
            }
            RawSide::Band { word } => {
                (None, word.iter().map(|n| resolve_letter(n, letters)).collect::<Word>())
            }
        };
        match kind {
            Kind::SetBand => {
                let (_, lhs) = resolve_side(self.lhs);
                let (_, rhs) = resolve_side(self.rhs);
                Equation::Band { lhs, rhs }
            }
            _ => {
                let (lc, lhs) = resolve_side(self.lhs);
                let (rc, rhs) = resolve_side(self.rhs);
                Equation::CTerm {
                    lhs: CTerm { c: lc.expect("state-acting side"), word: lhs },
                    rhs: CTerm { c: rc.expect("state-acting side"), word: rhs },
                }
            }
        }
    }
}

impl RawSide {
    fn parse(kind: Kind, text: &str, scan: &mut VarScan) -> Result<RawSide> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty side of an equation".into()));
        }
        match kind {
            Kind::SetBand => {
                let mut word = Vec::new();
                for token in &tokens {
                    let (name, ann) = split_annotation(kind, token)?;
                    scan.note_s(&name, ann)?;
                    word.push(name);
                }
                Ok(RawSide::Band { word })
            }
            _ => {
                let (c, ann) = split_annotation(kind, tokens[0])?;
                if ann.is_some() {
                    return Err(Error::Parse(format!(
                        "state variable {c:?} cannot carry a sort annotation"
                    )));
                }
                scan.note_c(&c)?;
                let mut word = Vec::new();
                for token in &tokens[1..] {
                    let (name, ann) = split_annotation(kind, token)?;
                    scan.note_s(&name, ann)?;
                    word.push(name);
                }
                Ok(RawSide::CTerm { c, word })
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Display: text forms that re-parse to the same structures. Biaction letters
// carry their annotation on every occurrence so a printed clause stands alone.

impl fmt::Display for CTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.c)?;
        for letter in &self.word {
            write!(f, " {}", letter.annotated())?;
        }
        Ok(())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::CTerm { lhs, rhs } => write!(f, "{lhs} = {rhs}"),
            Equation::Band { lhs, rhs } => {
                let side = |w: &Word| {
                    w.iter().map(|l| l.annotated()).collect::<Vec<_>>().join(" ")
                };
                write!(f, "{} = {}", side(lhs), side(rhs))
            }
        }
    }
}

impl fmt::Display for HornClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.premises.is_empty() {
            let premises =
                self.premises.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" & ");
            write!(f, "{premises} => ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_action_equation() {
        let eq = Equation::parse(Kind::Action, "c s t s = c t s").unwrap();
        match &eq {
            Equation::CTerm { lhs, rhs } => {
                assert_eq!(lhs.c, "c");
                assert_eq!(word_text(&lhs.word), "s t s");
                assert_eq!(word_text(&rhs.word), "t s");
                assert!(lhs.word.iter().all(|l| l.sort == LetterSort::Plain));
            }
            _ => panic!("expected a state equation"),
        }
    }

    #[test]
    fn parses_clause_with_premises_in_declaration_order() {
        let clause =
            HornClause::parse(Kind::Action, "c s = d s & c t = d t => c = d").unwrap();
        assert_eq!(clause.c_vars, vec!["c", "d"]);
        assert_eq!(clause.s_vars.iter().map(|l| l.name.as_str()).collect::<Vec<_>>(), ["s", "t"]);
        assert_eq!(clause.premises.len(), 2);
        match &clause.conclusion {
            Equation::CTerm { lhs, rhs } => {
                assert!(lhs.word.is_empty() && rhs.word.is_empty());
            }
            _ => panic!("expected a state equation"),
        }
    }

    #[test]
    fn biaction_annotations_resolve_everywhere() {
        let clause =
            HornClause::parse(Kind::Biaction, "c s:down t = c t:up s").unwrap();
        let sorts: Vec<_> = clause.s_vars.iter().map(|l| (l.name.as_str(), l.sort)).collect();
        assert_eq!(sorts, vec![("s", LetterSort::Down), ("t", LetterSort::Up)]);
        match &clause.conclusion {
            Equation::CTerm { lhs, rhs } => {
                // The unannotated occurrences picked up the declared sorts.
                assert_eq!(lhs.word[1].sort, LetterSort::Up);
                assert_eq!(rhs.word[1].sort, LetterSort::Down);
            }
            _ => panic!("expected a state equation"),
        }
    }

    #[test]
    fn biaction_requires_annotations() {
        let err = Equation::parse(Kind::Biaction, "c s = c");
        assert!(matches!(err, Err(Error::Parse(_))), "unannotated letter must be rejected");
        let err = Equation::parse(Kind::Biaction, "c s:down s:up = c");
        assert!(matches!(err, Err(Error::Parse(_))), "conflicting annotations must be rejected");
    }

    #[test]
    fn annotation_outside_biaction_is_rejected() {
        assert!(Equation::parse(Kind::Action, "c s:down = c").is_err());
        assert!(Equation::parse(Kind::SetBand, "x:up = x").is_err());
    }

    #[test]
    fn band_sides_have_no_state_variable() {
        let eq = Equation::parse(Kind::SetBand, "x y x = y x").unwrap();
        match &eq {
            Equation::Band { lhs, rhs } => {
                assert_eq!(word_text(lhs), "x y x");
                assert_eq!(word_text(rhs), "y x");
            }
            _ => panic!("expected a band equation"),
        }
        assert!(Equation::parse(Kind::SetBand, " = x").is_err(), "empty band side");
    }

    #[test]
    fn malformed_shapes_are_rejected() {
        assert!(Equation::parse(Kind::Action, "c s").is_err(), "no =");
        assert!(Equation::parse(Kind::Action, "c = d = e").is_err(), "two =");
        assert!(HornClause::parse(Kind::Action, "c = d => c = d => c = d").is_err(), "two =>");
        assert!(Equation::parse(Kind::Action, "c s = ").is_err(), "empty side");
        assert!(
            Equation::parse(Kind::Action, "c s = s c").is_err(),
            "name reused across state/operation namespaces"
        );
    }

    #[test]
    fn display_round_trips() {
        for (kind, text) in [
            (Kind::Action, "c s = d s & c t = d t => c = d"),
            (Kind::Biaction, "c s:down t:up = c t:up s:down"),
            (Kind::SetBand, "x y x = y x"),
        ] {
            let clause = HornClause::parse(kind, text).unwrap();
            let reparsed = HornClause::parse(kind, &clause.to_string()).unwrap();
            assert_eq!(clause, reparsed);
        }
    }

    #[test]
    fn parse_word_handles_annotations() {
        let word = parse_word(Kind::Biaction, "s:down t:up s").unwrap();
        assert_eq!(word.len(), 3);
        assert_eq!(word[2].sort, LetterSort::Down);
        assert!(parse_word(Kind::Biaction, "s t:up").is_err());
        let plain = parse_word(Kind::Action, "s t s").unwrap();
        assert!(plain.iter().all(|l| l.sort == LetterSort::Plain));
    }
}
