//! Word normal forms and equivalence under each class's equational theory.
//!
//! The normal form implements the each-letter-once reduction: later
//! occurrences of a letter make earlier ones redundant, so only the last
//! occurrence of each letter survives, in order. For biactions,
//! commutativity additionally lets same-sort neighbours swap, so each
//! maximal same-sort run is sorted into a fixed order. Equivalence is
//! decided independently by evaluation in the one-atom generator, which is
//! the authority whenever the two disagree.

use crate::algebra::Kind;
use crate::error::{Error, Result};
use crate::generator::horn_valid;
use crate::word::{Equation, HornClause, Letter, LetterSort, Word};
use crate::Limits;

fn validate_letters(kind: Kind, word: &[Letter]) -> Result<()> {
    for letter in word {
        match (kind, letter.sort) {
            (Kind::Biaction, LetterSort::Plain) => {
                return Err(Error::Parse(format!(
                    "biaction letter {:?} needs a :down or :up sort",
                    letter.name
                )))
            }
            (Kind::Action | Kind::SetBand, LetterSort::Down | LetterSort::Up) => {
                return Err(Error::Parse(format!(
                    "sorted letter {:?} outside a biaction word",
                    letter.name
                )))
            }
            _ => {}
        }
        if word.iter().any(|o| o.name == letter.name && o.sort != letter.sort) {
            return Err(Error::Parse(format!(
                "letter {:?} appears with two different sorts",
                letter.name
            )));
        }
    }
    Ok(())
}

/// Normalizes with the default declaration order: letters ordered by name.
///
/// A fixed word-independent order is what makes equal normal forms
/// coincide with equivalence; name order is the canonical choice when no
/// declaration context accompanies the word.
pub fn normalize_word(kind: Kind, word: &[Letter]) -> Result<Word> {
    validate_letters(kind, word)?;
    let mut declared: Vec<Letter> = Vec::new();
    for letter in word {
        if !declared.iter().any(|d| d.name == letter.name) {
            declared.push(letter.clone());
        }
    }
    declared.sort_by(|a, b| a.name.cmp(&b.name));
    normalize_word_with(kind, word, &declared)
}

/// Normalizes against an explicit declaration order (for callers that
/// have one, such as a clause's variable list or an algebra's operation
/// list). Every letter of the word must be declared.
pub fn normalize_word_with(kind: Kind, word: &[Letter], declared: &[Letter]) -> Result<Word> {
    validate_letters(kind, word)?;
    if kind == Kind::SetBand && word.is_empty() {
        return Err(Error::Parse("a set-band word must be nonempty".into()));
    }
    let rank = |letter: &Letter| -> Result<usize> {
        declared
            .iter()
            .position(|d| d.name == letter.name)
            .ok_or_else(|| Error::Parse(format!("letter {:?} is not declared", letter.name)))
    };
    let mut kept: Word = Vec::new();
    for (i, letter) in word.iter().enumerate() {
        rank(letter)?;
        if !word[i + 1..].iter().any(|later| later.name == letter.name) {
            kept.push(letter.clone());
        }
    }
    if kind == Kind::Biaction {
        let mut start = 0;
        while start < kept.len() {
            let mut end = start + 1;
            while end < kept.len() && kept[end].sort == kept[start].sort {
                end += 1;
            }
            let run = &mut kept[start..end];
            // Ranks all exist: checked above.
            run.sort_by_key(|l| rank(l).expect("declared"));
            start = end;
        }
    }
    Ok(kept)
}

/// Decides whether an equation holds throughout the class, by evaluation
/// in the one-atom generator.
///
/// State terms with different state variables are never equivalent: no
/// word can force two independent states together.
pub fn words_equivalent(kind: Kind, equation: &Equation, limits: &Limits) -> Result<bool> {
    if let Equation::CTerm { lhs, rhs } = equation {
        if lhs.c != rhs.c {
            return Ok(false);
        }
    }
    let clause = HornClause::from_equation(kind, equation.clone())?;
    Ok(horn_valid(&clause, limits)?.is_valid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{labels, FiniteAction};
    use crate::full::evaluate;
    use crate::word::{parse_word, word_text};

    fn norm(kind: Kind, text: &str) -> String {
        word_text(&normalize_word(kind, &parse_word(kind, text).unwrap()).unwrap())
    }

    fn equivalent(kind: Kind, text: &str) -> bool {
        let equation = Equation::parse(kind, text).unwrap();
        words_equivalent(kind, &equation, &Limits::default()).unwrap()
    }

    #[test]
    fn later_occurrences_win() {
        assert_eq!(norm(Kind::Action, "s t s"), "t s");
        assert_eq!(norm(Kind::Action, "s t t u s"), "t u s");
        assert_eq!(norm(Kind::Action, ""), "");
        assert_eq!(norm(Kind::SetBand, "s t s"), "t s");
    }

    #[test]
    fn set_band_words_must_be_nonempty() {
        assert!(normalize_word(Kind::SetBand, &[]).is_err());
    }

    #[test]
    fn biaction_runs_sort_by_name() {
        assert_eq!(norm(Kind::Biaction, "u:down s:down"), "s u");
        // Runs never sort across a sort boundary.
        assert_eq!(norm(Kind::Biaction, "t:up u:down s:down"), "t s u");
        assert_eq!(norm(Kind::Biaction, "u:down t:up s:down"), "u t s");
    }

    #[test]
    fn explicit_declaration_order_overrides_name_order() {
        let word = parse_word(Kind::Biaction, "u:down s:down").unwrap();
        let declared = parse_word(Kind::Biaction, "u:down s:down").unwrap();
        let out = normalize_word_with(Kind::Biaction, &word, &declared).unwrap();
        assert_eq!(word_text(&out), "u s");
        let undeclared = normalize_word_with(Kind::Biaction, &word, &declared[..1]);
        assert!(undeclared.is_err());
    }

    #[test]
    fn normalization_is_idempotent_on_samples() {
        for text in ["s t s", "s t t u s", "a b a b a"] {
            let once = normalize_word(Kind::Action, &parse_word(Kind::Action, text).unwrap())
                .unwrap();
            let twice = normalize_word(Kind::Action, &once).unwrap();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn mixed_sorts_for_one_name_are_rejected() {
        let word = vec![Letter::down("s"), Letter::up("s")];
        assert!(normalize_word(Kind::Biaction, &word).is_err());
        assert!(normalize_word(Kind::Action, &[Letter::down("s")]).is_err());
        assert!(normalize_word(Kind::Biaction, &[Letter::plain("s")]).is_err());
    }

    #[test]
    fn equivalence_follows_the_generator() {
        assert!(equivalent(Kind::Action, "c s t s = c t s"));
        assert!(!equivalent(Kind::Action, "c s t = c t s"));
        assert!(equivalent(Kind::SetBand, "s t s = t s"));
        assert!(equivalent(Kind::Biaction, "c u:down s:down = c s:down u:down"));
        assert!(!equivalent(Kind::Action, "c s = d s"), "distinct state variables");
    }

    #[test]
    fn normal_forms_evaluate_like_their_sources() {
        // Sound on an equational-axiom-passing action: reducing the word
        // never changes where it lands.
        let a = FiniteAction::new(
            labels(&["c", "d", "e"]),
            labels(&["s", "t"]),
            vec![vec![0, 1], vec![0, 1], vec![2, 2]],
        )
        .unwrap();
        let alg = crate::algebra::FiniteAlgebra::from(a);
        for text in ["s t s", "t s t", "s s t t", "t t s s s"] {
            let word = parse_word(Kind::Action, text).unwrap();
            let reduced = normalize_word(Kind::Action, &word).unwrap();
            for start in ["c", "d", "e"] {
                assert_eq!(
                    evaluate(&alg, start, &word).unwrap(),
                    evaluate(&alg, start, &reduced).unwrap(),
                    "{text} from {start}"
                );
            }
        }
    }
}
