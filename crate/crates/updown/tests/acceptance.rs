//! The acceptance suite: one test per criterion, each printing a
//! single `criterion N (<slug>): PASS|FAIL` line (visible under
//! `--nocapture`) and enforcing its runtime budget.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use updown::axioms::{
    check_algebra, check_biaction_axioms, check_fully_pr, check_intersection_axioms,
    check_setband_axioms, CheckMode, Verdict, Witness,
};
use updown::construct::{
    intersection_representation, operation_setband, prime_normalize, quotient_by_approx,
    quotient_embedding_psi, restrict_biaction_raw, verify_representation,
};
use updown::full::full_prime_action;
use updown::generator::f1;
use updown::homs::{canonical_representation, is_member, Decision};
use updown::lab::{census, enumerate_algebras, fixture, Sizes};
use updown::word::{word_text, Letter};
use updown::words::{normalize_word, words_equivalent};
use updown::{Equation, FiniteAlgebra, Kind, Limits, SortName, Word};

/// Runs one criterion body, prints its verdict line, and re-raises any
/// failure; a missed runtime budget is itself a failure.
fn criterion(number: usize, slug: &str, budget: Duration, body: impl FnOnce()) {
    let begin = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = begin.elapsed();
    let pass = outcome.is_ok() && elapsed <= budget;
    println!("criterion {number} ({slug}): {}", if pass { "PASS" } else { "FAIL" });
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(elapsed <= budget, "criterion {number} took {elapsed:?}, budget {budget:?}");
}

fn subset_fields(witness: &Witness) -> (&str, &str, &str, &str, &str, &Word, &str, &str) {
    match witness {
        Witness::Subset { c, d, e, s, t, w, lhs, rhs } => (c, d, e, s, t, w, lhs, rhs),
        other => panic!("expected a subset-axiom witness, got {other:?}"),
    }
}

#[test]
fn criterion_1_merging_example_reproduction() {
    criterion(1, "merging-example-reproduction", Duration::from_secs(1), || {
        let limits = Limits::default();
        let (alg, _) = fixture("example-4.7").unwrap();
        let report = check_algebra(&alg, CheckMode::Standard, &limits).unwrap();
        assert!(report.check("I").unwrap().verdict.is_pass());
        assert!(report.check("PR").unwrap().verdict.is_pass());
        match &report.check("SL").unwrap().verdict {
            Verdict::Fail(Witness::Chain { chain, words }) => {
                assert_eq!(chain, &["c", "e", "d"]);
                let words: Vec<String> = words.iter().map(|w| word_text(w)).collect();
                assert_eq!(words, ["s", "t"]);
            }
            other => panic!("expected a chain witness, got {other:?}"),
        }
        match canonical_representation(&alg, &limits).unwrap() {
            Decision::NotMember(unseparated) => {
                assert_eq!(unseparated.sort, SortName::C);
                assert_eq!((unseparated.a.as_str(), unseparated.b.as_str()), ("c", "d"));
            }
            Decision::Member(_) => panic!("the merging example must not be a member"),
        }
    });
}

#[test]
fn criterion_2_action_census_agreement() {
    criterion(2, "action-census-agreement", Duration::from_secs(60), || {
        let limits = Limits::default();
        for (sizes, expected) in
            [(Sizes::Action { c: 3, s: 2 }, 729), (Sizes::Action { c: 2, s: 3 }, 64)]
        {
            let report = census(&sizes, 1, &limits).unwrap();
            assert_eq!(report.total, expected);
            assert_eq!(report.disagreements, 0, "{sizes:?}");
            assert_eq!(report.member, report.full_pass, "{sizes:?}");
        }
    });
}

#[test]
fn criterion_3_biaction_census_and_witnesses() {
    criterion(3, "biaction-census-and-witnesses", Duration::from_secs(120), || {
        let limits = Limits::default();
        let report = census(&Sizes::Biaction { c: 3, sdown: 1, sup: 1 }, 1, &limits).unwrap();
        assert_eq!(report.total, 729);
        assert_eq!(report.disagreements, 0);

        let (two_point, _) = fixture("biaction-2pt-fail").unwrap();
        let report = check_algebra(&two_point, CheckMode::Standard, &limits).unwrap();
        match &report.check("basic-S").unwrap().verdict {
            Verdict::Fail(witness) => {
                let (c, d, e, s, t, w, lhs, rhs) = subset_fields(witness);
                assert_eq!((c, d, e, s, t), ("c", "d", "c", "s", "t"));
                assert!(w.is_empty());
                assert_eq!((lhs, rhs), ("c", "d"));
            }
            Verdict::Pass => panic!("the two-point fixture must fail the basic subset axiom"),
        }

        let (merging, _) = fixture("words-are-needed").unwrap();
        let report = check_algebra(&merging, CheckMode::Standard, &limits).unwrap();
        assert!(report.check("basic-S").unwrap().verdict.is_pass());
        match &report.check("extra-S").unwrap().verdict {
            Verdict::Fail(witness) => {
                // The sentence-word witness: csu=dsu, ctu=dtu, 1su=1tu,
                // yet cu=c differs from du=f.
                let (c, d, e, s, t, w, lhs, rhs) = subset_fields(witness);
                assert_eq!((c, d, e, s, t), ("c", "d", "1", "s", "t"));
                let w: Vec<String> = w.iter().map(Letter::annotated).collect();
                assert_eq!(w, ["u:up"]);
                assert_eq!((lhs, rhs), ("c", "f"));
            }
            Verdict::Pass => panic!("the merging fixture must fail the word subset schema"),
        }
    });
}

#[test]
fn criterion_4_setband_census_and_generator_band() {
    criterion(4, "setband-census-and-generator-band", Duration::from_secs(120), || {
        let limits = Limits::default();
        for (s, expected) in [(1, 1), (2, 16), (3, 19683)] {
            let report = census(&Sizes::SetBand { s }, 1, &limits).unwrap();
            assert_eq!(report.total, expected);
            assert_eq!(report.disagreements, 0, "setband size {s}");
        }

        let band = f1(Kind::SetBand);
        let band = band.as_setband().unwrap();
        assert_eq!(band.s_labels(), ["(1,0)", "(0,0)", "(1,1)"]);
        for x in 0..3 {
            // (1,0) is a two-sided identity; the other two are right zeros.
            assert_eq!(band.mul(x, 0), x);
            assert_eq!(band.mul(0, x), x);
            assert_eq!(band.mul(x, 1), 1);
            assert_eq!(band.mul(x, 2), 2);
        }
    });
}

#[test]
fn criterion_5_intersection_representation() {
    criterion(5, "intersection-representation", Duration::from_secs(60), || {
        let limits = Limits::default();
        let mut passing = 0u64;
        for sizes in [Sizes::Action { c: 3, s: 2 }, Sizes::Action { c: 2, s: 3 }] {
            for alg in enumerate_algebras(&sizes, &limits).unwrap() {
                let action = alg.as_action().unwrap();
                if !check_intersection_axioms(action).all_pass() {
                    continue;
                }
                passing += 1;
                let rep = intersection_representation(action, &limits).unwrap();
                assert_eq!(verify_representation(&alg, &rep).unwrap(), None);
                let rep = rep.as_action().unwrap();
                for s in 0..rep.s_labels().len() {
                    assert!(rep.s_pair(s).1.is_empty(), "up-set of a pure intersection");
                }
            }
        }
        assert!(passing > 0, "the census must contain intersection actions");
    });
}

/// Evaluation table of the one-atom action, operations in label order
/// (1,0), (0,0), (1,1): identity, bottom, top.
fn act1(c: usize, s: usize) -> usize {
    match s {
        0 => c,
        1 => 0,
        _ => 1,
    }
}

/// The action words over `letters` of length at most `max_len`, as
/// letter-index strings.
fn index_words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut last = words.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &last {
            for letter in 0..letters {
                let mut grown = word.clone();
                grown.push(letter);
                next.push(grown);
            }
        }
        words.extend(next.iter().cloned());
        last = next;
    }
    words
}

/// Evaluation of an action word in the one-atom full algebra under
/// every letter assignment and start value, flattened.
fn one_atom_profile(word: &[usize], letters: usize) -> Vec<usize> {
    let assignments = 3usize.pow(letters as u32);
    let mut profile = Vec::with_capacity(assignments * 2);
    for assignment in 0..assignments {
        let values: Vec<usize> =
            (0..letters).map(|i| assignment / 3usize.pow(i as u32) % 3).collect();
        for start in 0..2 {
            profile.push(word.iter().fold(start, |c, &i| act1(c, values[i])));
        }
    }
    profile
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Letter], max_len: usize, min_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect()
}

#[test]
fn criterion_6_equational_theory_agreement() {
    criterion(6, "equational-theory-agreement", Duration::from_secs(60), || {
        let limits = Limits::default();
        let names = ["s", "t", "u"];

        // Exhaustive at three letters, length five: the last-occurrence
        // normal form equals one-atom evaluation equivalence.
        let words = index_words(3, 5);
        assert_eq!(words.len(), 364);
        let mut profile_class: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut normal_class: HashMap<String, usize> = HashMap::new();
        let mut forward: HashMap<usize, usize> = HashMap::new();
        let mut backward: HashMap<usize, usize> = HashMap::new();
        for word in &words {
            let letters: Word = word.iter().map(|&i| Letter::plain(names[i])).collect();
            let normal = word_text(&normalize_word(Kind::Action, &letters).unwrap());
            let next = profile_class.len();
            let p = *profile_class.entry(one_atom_profile(word, 3)).or_insert(next);
            let next = normal_class.len();
            let n = *normal_class.entry(normal).or_insert(next);
            assert_eq!(*forward.entry(p).or_insert(n), n, "equivalent words, distinct normals");
            assert_eq!(*backward.entry(n).or_insert(p), p, "equal normals, inequivalent words");
        }

        // The library oracle agrees with the local profile on a seeded
        // sample of pairs, and on the two pinned facts.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..300 {
            let i = rng.gen_range(0..words.len());
            let j = rng.gen_range(0..words.len());
            let text = |w: &[usize]| {
                w.iter().map(|&i| names[i]).fold("c".to_string(), |acc, n| format!("{acc} {n}"))
            };
            let equation =
                Equation::parse(Kind::Action, &format!("{} = {}", text(&words[i]), text(&words[j])))
                    .unwrap();
            assert_eq!(
                words_equivalent(Kind::Action, &equation, &limits).unwrap(),
                one_atom_profile(&words[i], 3) == one_atom_profile(&words[j], 3)
            );
        }
        let pinned = [("c s t t u s = c t u s", true), ("c s t = c t s", false)];
        for (text, expected) in pinned {
            let equation = Equation::parse(Kind::Action, text).unwrap();
            assert_eq!(words_equivalent(Kind::Action, &equation, &limits).unwrap(), expected);
        }

        // Ten thousand seeded biaction pairs: normal-form equality and
        // the oracle must agree.
        let letters: Vec<Letter> = vec![
            Letter::down("a"),
            Letter::down("b"),
            Letter::up("p"),
            Letter::up("q"),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for _ in 0..10_000 {
            let lhs = random_word(&mut rng, &letters, 6, 0);
            let rhs = random_word(&mut rng, &letters, 6, 0);
            let side = |w: &Word| {
                w.iter().map(|l| l.annotated()).fold("c".to_string(), |acc, n| format!("{acc} {n}"))
            };
            let equation =
                Equation::parse(Kind::Biaction, &format!("{} = {}", side(&lhs), side(&rhs)))
                    .unwrap();
            let same_normal = normalize_word(Kind::Biaction, &lhs).unwrap()
                == normalize_word(Kind::Biaction, &rhs).unwrap();
            assert_eq!(
                words_equivalent(Kind::Biaction, &equation, &limits).unwrap(),
                same_normal,
                "biaction words {:?} and {:?}",
                word_text(&lhs),
                word_text(&rhs)
            );
        }

        // And ten thousand seeded set-band pairs.
        let letters: Vec<Letter> =
            ["x", "y", "z"].iter().map(|n| Letter::plain(*n)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(600);
        for _ in 0..10_000 {
            let lhs = random_word(&mut rng, &letters, 6, 1);
            let rhs = random_word(&mut rng, &letters, 6, 1);
            let equation = Equation::parse(
                Kind::SetBand,
                &format!("{} = {}", word_text(&lhs), word_text(&rhs)),
            )
            .unwrap();
            let same_normal = normalize_word(Kind::SetBand, &lhs).unwrap()
                == normalize_word(Kind::SetBand, &rhs).unwrap();
            assert_eq!(
                words_equivalent(Kind::SetBand, &equation, &limits).unwrap(),
                same_normal,
                "set-band words {:?} and {:?}",
                word_text(&lhs),
                word_text(&rhs)
            );
        }
    });
}

#[test]
fn criterion_7_world_and_fact_models() {
    criterion(7, "world-and-fact-models", Duration::from_secs(60), || {
        let limits = Limits::default();
        let (worlds, _) = fixture("cylindrify-worlds").unwrap();
        let worlds = worlds.as_action().unwrap();

        // The full world set W, cut to {10,11} by t1, then s1 u1 s1
        // recovers W while u1 s1 empties it.
        let report = check_algebra(&worlds.clone().into(), CheckMode::Standard, &limits).unwrap();
        match &report.check("PR").unwrap().verdict {
            Verdict::Fail(Witness::Equation { lhs, rhs }) => {
                let t1 = worlds.s_labels().iter().position(|s| s == "t1").unwrap();
                assert_eq!(worlds.c_labels()[worlds.act(0, t1)], lhs.start);
                assert_eq!(lhs.start, "{10,11}");
                assert_eq!(word_text(&lhs.word), "s1 u1 s1");
                assert_eq!(lhs.value, "{00,01,10,11}");
                assert_eq!(rhs.start, lhs.start);
                assert_eq!(word_text(&rhs.word), "u1 s1");
                assert_eq!(rhs.value, "{}");
            }
            other => panic!("expected an equation witness for PR, got {other:?}"),
        }

        let (facts, _) = fixture("facts-updown").unwrap();
        assert!(is_member(&facts, &limits).unwrap());
        let facts = facts.as_action().unwrap();

        // Bounded equivalence: over every word of length <= 4, the
        // non-contradictory ones (world state stays nonempty; the empty
        // state is absorbing, so the final state decides) induce the
        // same equality relation in both models.
        let empty = worlds.c_labels().iter().position(|c| c == "{}").unwrap();
        let words = index_words(6, 4);
        assert_eq!(words.len(), 1555);
        let mut world_to_fact: HashMap<usize, usize> = HashMap::new();
        let mut fact_to_world: HashMap<usize, usize> = HashMap::new();
        let mut kept = 0u64;
        for word in &words {
            let world_end = word.iter().fold(0, |c, &s| worlds.act(c, s));
            if world_end == empty {
                continue;
            }
            kept += 1;
            let fact_end = word.iter().fold(0, |c, &s| facts.act(c, s));
            assert_eq!(
                *world_to_fact.entry(world_end).or_insert(fact_end),
                fact_end,
                "world-equal words must be fact-equal"
            );
            assert_eq!(
                *fact_to_world.entry(fact_end).or_insert(world_end),
                world_end,
                "fact-equal words must be world-equal"
            );
        }
        assert!(kept > 0, "some words must stay non-contradictory");
    });
}

#[test]
fn criterion_8_construction_lemmas() {
    criterion(8, "construction-lemmas", Duration::from_secs(120), || {
        let limits = Limits::default();

        // Restriction by any single operation preserves the biaction
        // axioms on every axiom-passing census biaction.
        let sizes = Sizes::Biaction { c: 3, sdown: 1, sup: 1 };
        let mut passing = 0u64;
        for alg in enumerate_algebras(&sizes, &limits).unwrap() {
            let b = alg.as_biaction().unwrap();
            if !check_biaction_axioms(b, &limits).unwrap().all_pass() {
                continue;
            }
            passing += 1;
            let mut ops: Vec<Letter> =
                b.sdown_labels().iter().map(Letter::down).collect();
            ops.extend(b.sup_labels().iter().map(Letter::up));
            for op in ops {
                let restricted = restrict_biaction_raw(b, &[op.clone()]).unwrap();
                assert!(
                    check_biaction_axioms(&restricted, &limits).unwrap().all_pass(),
                    "restriction by {} must keep the axioms",
                    op.annotated()
                );
            }
        }
        assert!(passing > 0, "the census must contain axiom-passing biactions");

        // On every fully previous-redundant census action, approximation
        // is a congruence and the one-atom-per-class embedding verifies
        // on the quotient.
        let mut fully = 0u64;
        for sizes in [Sizes::Action { c: 3, s: 2 }, Sizes::Action { c: 2, s: 3 }] {
            for alg in enumerate_algebras(&sizes, &limits).unwrap() {
                let a = alg.as_action().unwrap();
                if !check_fully_pr(a, &limits).unwrap().verdict.is_pass() {
                    continue;
                }
                fully += 1;
                let congruence = quotient_by_approx(a, &limits).unwrap();
                let rep = quotient_embedding_psi(a, &limits).unwrap();
                assert_eq!(
                    verify_representation(&congruence.quotient.into(), &rep).unwrap(),
                    None
                );
            }
        }
        assert!(fully > 0, "the census must contain fully-PR actions");

        // The primed one-atom algebra folds into a two-atom
        // representation with the same tables and no spilling up-sets.
        let (prime_action, prime_rep) = full_prime_action(&["x".to_string()], &limits).unwrap();
        let folded = prime_normalize(&prime_rep).unwrap();
        assert_eq!(folded.universe().len(), 2);
        for s in 0..folded.s_labels().len() {
            let (down, up) = folded.s_pair(s);
            assert!(up.is_subset(down));
        }
        assert_eq!(
            verify_representation(&prime_action.into(), &folded.into()).unwrap(),
            None
        );
    });
}

#[test]
fn criterion_9_operation_band_membership() {
    criterion(9, "operation-band-membership", Duration::from_secs(120), || {
        let limits = Limits::default();
        let mut members = 0u64;
        for sizes in [Sizes::Action { c: 3, s: 2 }, Sizes::Action { c: 2, s: 3 }] {
            for alg in enumerate_algebras(&sizes, &limits).unwrap() {
                if !is_member(&alg, &limits).unwrap() {
                    continue;
                }
                members += 1;
                let band = operation_setband(alg.as_action().unwrap(), &limits).unwrap();
                assert!(check_setband_axioms(&band).all_pass());
                assert!(is_member(&FiniteAlgebra::from(band), &limits).unwrap());
            }
        }
        assert!(members > 0, "the census must contain members");
    });
}
