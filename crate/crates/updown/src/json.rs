//! The JSON document formats: algebra and representation files (parsed
//! and emitted), plus the emit-only report documents for checks,
//! decisions, Horn verdicts, and the remaining CLI outputs.
//!
//! Emission is byte-deterministic: struct fields serialize in a fixed
//! order and all maps are sorted by key. Input documents are strict —
//! unknown keys are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAction, FiniteAlgebra, FiniteBiaction, FiniteSetBand, Kind};
use crate::axioms::{AxiomReport, Verdict, Witness};
use crate::construct::CongruenceResult;
use crate::error::{Error, Result};
use crate::generator::HornVerdict;
use crate::homs::Decision;
use crate::monoid::MonoidMap;
use crate::rep::{ActionRep, BandRep, BiactionRep, SetRepresentation};
use crate::word::{Letter, Word};

fn malformed(err: serde_json::Error) -> Error {
    Error::Parse(format!("malformed JSON document: {err}"))
}

fn to_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("document serialization cannot fail")
}

/// Renders a word as letter texts, `:down`/`:up` annotated where sorted.
fn letter_texts(word: &Word) -> Vec<String> {
    word.iter().map(Letter::annotated).collect()
}

fn joined(word: &Word) -> String {
    letter_texts(word).join(" ")
}

// ---------------------------------------------------------------------
// Algebra documents
// ---------------------------------------------------------------------

type Table = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    kind: String,
    #[serde(rename = "C")]
    c: Vec<String>,
    #[serde(rename = "S")]
    s: Vec<String>,
    act: Table,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiactionDoc {
    kind: String,
    #[serde(rename = "C")]
    c: Vec<String>,
    #[serde(rename = "Sdown")]
    sdown: Vec<String>,
    #[serde(rename = "Sup")]
    sup: Vec<String>,
    act_down: Table,
    act_up: Table,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetBandDoc {
    kind: String,
    #[serde(rename = "S")]
    s: Vec<String>,
    mul: Table,
}

#[derive(Serialize)]
#[serde(untagged)]
enum AlgebraDoc {
    Action(ActionDoc),
    Biaction(BiactionDoc),
    SetBand(SetBandDoc),
}

/// Checks a document table for keys outside the declared labels, then
/// reads one entry per (row, column) label pair, in declared order.
fn read_table(name: &str, table: &Table, rows: &[String], cols: &[String]) -> Result<Vec<Vec<String>>> {
    for key in table.keys() {
        if !rows.contains(key) {
            return Err(Error::Parse(format!("unknown row label `{key}` in `{name}`")));
        }
    }
    rows.iter()
        .map(|row_label| {
            let row = table
                .get(row_label)
                .ok_or_else(|| Error::Parse(format!("missing `{name}` row for `{row_label}`")))?;
            for key in row.keys() {
                if !cols.contains(key) {
                    return Err(Error::Parse(format!(
                        "unknown column label `{key}` in `{name}[{row_label}]`"
                    )));
                }
            }
            cols.iter()
                .map(|col_label| {
                    row.get(col_label).cloned().ok_or_else(|| {
                        Error::Parse(format!("missing entry `{name}[{row_label}][{col_label}]`"))
                    })
                })
                .collect()
        })
        .collect()
}

fn write_table(rows: &[String], cols: &[String], entry: impl Fn(usize, usize) -> String) -> Table {
    rows.iter()
        .enumerate()
        .map(|(i, row_label)| {
            let row = cols
                .iter()
                .enumerate()
                .map(|(j, col_label)| (col_label.clone(), entry(i, j)))
                .collect();
            (row_label.clone(), row)
        })
        .collect()
}

fn indices(labels: &[String], entries: Vec<Vec<String>>) -> Result<Vec<Vec<usize>>> {
    let position: BTreeMap<&str, usize> =
        labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    entries
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|label| {
                    position.get(label.as_str()).copied().ok_or_else(|| {
                        Error::Parse(format!("table entry `{label}` is not a declared state"))
                    })
                })
                .collect()
        })
        .collect()
}

fn parse_kind(text: &str) -> Result<Kind> {
    #[derive(Deserialize)]
    struct Probe {
        kind: Option<String>,
    }
    let probe: Probe = serde_json::from_str(text).map_err(malformed)?;
    match probe.kind.as_deref() {
        Some("action") => Ok(Kind::Action),
        Some("biaction") => Ok(Kind::Biaction),
        Some("setband") => Ok(Kind::SetBand),
        Some(other) => Err(Error::Parse(format!(
            "unknown kind {other:?}; expected \"action\", \"biaction\", or \"setband\""
        ))),
        None => Err(Error::Parse("document has no \"kind\" field".into())),
    }
}

/// Parses one algebra document, dispatching on its `kind` field.
pub fn algebra_from_json(text: &str) -> Result<FiniteAlgebra> {
    match parse_kind(text)? {
        Kind::Action => {
            let doc: ActionDoc = serde_json::from_str(text).map_err(malformed)?;
            let table = indices(&doc.c, read_table("act", &doc.act, &doc.c, &doc.s)?)?;
            Ok(FiniteAction::new(doc.c, doc.s, table)?.into())
        }
        Kind::Biaction => {
            let doc: BiactionDoc = serde_json::from_str(text).map_err(malformed)?;
            let down = indices(&doc.c, read_table("act_down", &doc.act_down, &doc.c, &doc.sdown)?)?;
            let up = indices(&doc.c, read_table("act_up", &doc.act_up, &doc.c, &doc.sup)?)?;
            Ok(FiniteBiaction::new(doc.c, doc.sdown, doc.sup, down, up)?.into())
        }
        Kind::SetBand => {
            let doc: SetBandDoc = serde_json::from_str(text).map_err(malformed)?;
            let table = indices(&doc.s, read_table("mul", &doc.mul, &doc.s, &doc.s)?)?;
            Ok(FiniteSetBand::new(doc.s, table)?.into())
        }
    }
}

fn algebra_doc(alg: &FiniteAlgebra) -> AlgebraDoc {
    match alg {
        FiniteAlgebra::Action(a) => AlgebraDoc::Action(ActionDoc {
            kind: "action".into(),
            c: a.c_labels().to_vec(),
            s: a.s_labels().to_vec(),
            act: write_table(a.c_labels(), a.s_labels(), |c, s| {
                a.c_labels()[a.act(c, s)].clone()
            }),
        }),
        FiniteAlgebra::Biaction(b) => AlgebraDoc::Biaction(BiactionDoc {
            kind: "biaction".into(),
            c: b.c_labels().to_vec(),
            sdown: b.sdown_labels().to_vec(),
            sup: b.sup_labels().to_vec(),
            act_down: write_table(b.c_labels(), b.sdown_labels(), |c, s| {
                b.c_labels()[b.act_down(c, s)].clone()
            }),
            act_up: write_table(b.c_labels(), b.sup_labels(), |c, t| {
                b.c_labels()[b.act_up(c, t)].clone()
            }),
        }),
        FiniteAlgebra::SetBand(band) => AlgebraDoc::SetBand(SetBandDoc {
            kind: "setband".into(),
            s: band.s_labels().to_vec(),
            mul: write_table(band.s_labels(), band.s_labels(), |x, y| {
                band.s_labels()[band.mul(x, y)].clone()
            }),
        }),
    }
}

/// Emits one algebra document.
pub fn algebra_to_json(alg: &FiniteAlgebra) -> String {
    to_string(&algebra_doc(alg))
}

// ---------------------------------------------------------------------
// Representation documents
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    down: Vec<String>,
    up: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionRepDoc {
    kind: String,
    universe: Vec<String>,
    #[serde(rename = "Csets")]
    csets: BTreeMap<String, Vec<String>>,
    #[serde(rename = "Ssets")]
    ssets: BTreeMap<String, PairDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    prime: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiactionRepDoc {
    kind: String,
    universe: Vec<String>,
    #[serde(rename = "Csets")]
    csets: BTreeMap<String, Vec<String>>,
    #[serde(rename = "Sdownsets")]
    sdownsets: BTreeMap<String, Vec<String>>,
    #[serde(rename = "Supsets")]
    supsets: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BandRepDoc {
    kind: String,
    universe: Vec<String>,
    #[serde(rename = "Ssets")]
    ssets: BTreeMap<String, PairDoc>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RepDoc {
    Action(ActionRepDoc),
    Biaction(BiactionRepDoc),
    Band(BandRepDoc),
}

fn split_map<V>(map: BTreeMap<String, V>) -> (Vec<String>, Vec<V>) {
    map.into_iter().unzip()
}

/// Parses one representation document, dispatching on its `kind` field.
/// Label order follows sorted map keys; consumers match by name.
pub fn representation_from_json(text: &str) -> Result<SetRepresentation> {
    match parse_kind(text)? {
        Kind::Action => {
            let doc: ActionRepDoc = serde_json::from_str(text).map_err(malformed)?;
            let (c_labels, c_atoms) = split_map(doc.csets);
            let (s_labels, pairs) = split_map(doc.ssets);
            let s_pair_atoms: Vec<(Vec<String>, Vec<String>)> =
                pairs.into_iter().map(|p| (p.down, p.up)).collect();
            Ok(ActionRep::new(doc.universe, c_labels, &c_atoms, s_labels, &s_pair_atoms, doc.prime)?
                .into())
        }
        Kind::Biaction => {
            let doc: BiactionRepDoc = serde_json::from_str(text).map_err(malformed)?;
            let (c_labels, c_atoms) = split_map(doc.csets);
            let (sdown_labels, sdown_atoms) = split_map(doc.sdownsets);
            let (sup_labels, sup_atoms) = split_map(doc.supsets);
            Ok(BiactionRep::new(
                doc.universe,
                c_labels,
                &c_atoms,
                sdown_labels,
                &sdown_atoms,
                sup_labels,
                &sup_atoms,
            )?
            .into())
        }
        Kind::SetBand => {
            let doc: BandRepDoc = serde_json::from_str(text).map_err(malformed)?;
            let (s_labels, pairs) = split_map(doc.ssets);
            let s_pair_atoms: Vec<(Vec<String>, Vec<String>)> =
                pairs.into_iter().map(|p| (p.down, p.up)).collect();
            Ok(BandRep::new(doc.universe, s_labels, &s_pair_atoms)?.into())
        }
    }
}

fn atom_names(universe: &[String], set: &crate::atomset::AtomSet) -> Vec<String> {
    set.iter().map(|i| universe[i].clone()).collect()
}

fn rep_doc(rep: &SetRepresentation) -> RepDoc {
    match rep {
        SetRepresentation::Action(r) => RepDoc::Action(ActionRepDoc {
            kind: "action".into(),
            universe: r.universe().to_vec(),
            csets: r
                .c_labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), atom_names(r.universe(), r.c_set(i))))
                .collect(),
            ssets: r
                .s_labels()
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let (down, up) = r.s_pair(i);
                    (
                        l.clone(),
                        PairDoc {
                            down: atom_names(r.universe(), down),
                            up: atom_names(r.universe(), up),
                        },
                    )
                })
                .collect(),
            prime: r.prime(),
        }),
        SetRepresentation::Biaction(r) => RepDoc::Biaction(BiactionRepDoc {
            kind: "biaction".into(),
            universe: r.universe().to_vec(),
            csets: r
                .c_labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), atom_names(r.universe(), r.c_set(i))))
                .collect(),
            sdownsets: r
                .sdown_labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), atom_names(r.universe(), r.sdown_set(i))))
                .collect(),
            supsets: r
                .sup_labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), atom_names(r.universe(), r.sup_set(i))))
                .collect(),
        }),
        SetRepresentation::SetBand(r) => RepDoc::Band(BandRepDoc {
            kind: "setband".into(),
            universe: r.universe().to_vec(),
            ssets: r
                .s_labels()
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let (down, up) = r.s_pair(i);
                    (
                        l.clone(),
                        PairDoc {
                            down: atom_names(r.universe(), down),
                            up: atom_names(r.universe(), up),
                        },
                    )
                })
                .collect(),
        }),
    }
}

/// Emits one representation document.
pub fn representation_to_json(rep: &SetRepresentation) -> String {
    to_string(&rep_doc(rep))
}

// ---------------------------------------------------------------------
// Report documents (emit only)
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct SideDoc {
    start: String,
    word: Vec<String>,
    value: String,
}

impl SideDoc {
    fn new(side: &crate::axioms::EvalSide) -> SideDoc {
        SideDoc {
            start: side.start.clone(),
            word: letter_texts(&side.word),
            value: side.value.clone(),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum WitnessDoc {
    Equation {
        lhs: SideDoc,
        rhs: SideDoc,
    },
    Assoc {
        x: String,
        y: String,
        z: String,
        lhs: String,
        rhs: String,
    },
    Chain {
        chain: Vec<String>,
        words: Vec<Vec<String>>,
    },
    Subset {
        c: String,
        d: String,
        e: String,
        s: String,
        t: String,
        w: Vec<String>,
        lhs: String,
        rhs: String,
    },
}

fn witness_doc(witness: &Witness) -> WitnessDoc {
    match witness {
        Witness::Equation { lhs, rhs } => {
            WitnessDoc::Equation { lhs: SideDoc::new(lhs), rhs: SideDoc::new(rhs) }
        }
        Witness::Assoc { x, y, z, lhs, rhs } => WitnessDoc::Assoc {
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        },
        Witness::Chain { chain, words } => WitnessDoc::Chain {
            chain: chain.clone(),
            words: words.iter().map(|w| letter_texts(w)).collect(),
        },
        Witness::Subset { c, d, e, s, t, w, lhs, rhs } => WitnessDoc::Subset {
            c: c.clone(),
            d: d.clone(),
            e: e.clone(),
            s: s.clone(),
            t: t.clone(),
            w: letter_texts(w),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        },
    }
}

#[derive(Serialize)]
struct CheckDoc {
    axiom: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
struct ReportDoc {
    kind: String,
    all_pass: bool,
    checks: Vec<CheckDoc>,
}

/// Emits an axiom report with one entry per check, failures carrying
/// their witness.
pub fn report_to_json(report: &AxiomReport) -> String {
    let checks = report
        .checks
        .iter()
        .map(|check| match &check.verdict {
            Verdict::Pass => CheckDoc {
                axiom: check.axiom.to_string(),
                verdict: "pass".into(),
                witness: None,
            },
            Verdict::Fail(witness) => CheckDoc {
                axiom: check.axiom.to_string(),
                verdict: "fail".into(),
                witness: Some(witness_doc(witness)),
            },
        })
        .collect();
    to_string(&ReportDoc {
        kind: report.kind.name().to_string(),
        all_pass: report.all_pass(),
        checks,
    })
}

#[derive(Serialize)]
struct DecisionDoc {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<RepDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unseparated: Option<[String; 2]>,
}

/// Emits a membership decision: the canonical representation on
/// success, the first unseparated same-sort pair otherwise.
pub fn decision_to_json(decision: &Decision) -> String {
    let doc = match decision {
        Decision::Member(rep) => DecisionDoc {
            member: true,
            representation: Some(rep_doc(rep)),
            unseparated: None,
        },
        Decision::NotMember(pair) => DecisionDoc {
            member: false,
            representation: None,
            unseparated: Some([pair.a.clone(), pair.b.clone()]),
        },
    };
    to_string(&doc)
}

#[derive(Serialize)]
struct CounterexampleDoc {
    c_values: BTreeMap<String, String>,
    s_values: BTreeMap<String, String>,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct HornDoc {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<CounterexampleDoc>,
}

/// Emits a Horn-validity verdict.
pub fn horn_to_json(verdict: &HornVerdict) -> String {
    let doc = match verdict {
        HornVerdict::Valid => HornDoc { valid: true, counterexample: None },
        HornVerdict::Counterexample(cx) => HornDoc {
            valid: false,
            counterexample: Some(CounterexampleDoc {
                c_values: cx.c_values.iter().cloned().collect(),
                s_values: cx.s_values.iter().cloned().collect(),
                lhs: cx.lhs.clone(),
                rhs: cx.rhs.clone(),
            }),
        },
    };
    to_string(&doc)
}

// ---------------------------------------------------------------------
// Small CLI output documents (emit only)
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct EquivalentDoc {
    equivalent: bool,
}

/// Emits `{"equivalent":…}`.
pub fn equivalence_to_json(equivalent: bool) -> String {
    to_string(&EquivalentDoc { equivalent })
}

#[derive(Serialize)]
struct NormalDoc {
    normal: String,
}

/// Emits the normal form of a word as annotated letter text.
pub fn normal_to_json(word: &Word) -> String {
    to_string(&NormalDoc { normal: joined(word) })
}

#[derive(Serialize)]
struct QuotientDoc {
    classes: Vec<Vec<String>>,
    representatives: Vec<String>,
    quotient: AlgebraDoc,
}

/// Emits the congruence data of a quotient: classes and representatives
/// as original state labels, plus the quotient action document.
pub fn quotient_to_json(original: &crate::algebra::FiniteAction, result: &CongruenceResult) -> String {
    to_string(&QuotientDoc {
        classes: result
            .classes
            .iter()
            .map(|class| class.iter().map(|&c| original.c_labels()[c].clone()).collect())
            .collect(),
        representatives: result
            .representatives
            .iter()
            .map(|&c| original.c_labels()[c].clone())
            .collect(),
        quotient: algebra_doc(&result.quotient.clone().into()),
    })
}

#[derive(Serialize)]
struct SplitDoc {
    split: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    down: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    up: Option<Vec<String>>,
}

/// Emits a sort split (or its absence).
pub fn split_to_json(split: Option<&(Vec<String>, Vec<String>)>) -> String {
    let doc = match split {
        Some((down, up)) => {
            SplitDoc { split: true, down: Some(down.clone()), up: Some(up.clone()) }
        }
        None => SplitDoc { split: false, down: None, up: None },
    };
    to_string(&doc)
}

#[derive(Serialize)]
struct MonoidElementDoc {
    word: String,
    map: Vec<String>,
}

#[derive(Serialize)]
struct MonoidDoc {
    size: usize,
    elements: Vec<MonoidElementDoc>,
}

/// Emits transformation maps with their generating words; map entries
/// are target labels indexed in carrier order.
pub fn maps_to_json(maps: &[MonoidMap], carrier_labels: &[String]) -> String {
    to_string(&MonoidDoc {
        size: maps.len(),
        elements: maps
            .iter()
            .map(|m| MonoidElementDoc {
                word: joined(m.word()),
                map: m.map().iter().map(|&c| carrier_labels[c].clone()).collect(),
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct AlgebraWithRepDoc {
    algebra: AlgebraDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<RepDoc>,
}

/// Emits an algebra together with an optional representation, as used
/// by the full-algebra and fixture commands.
pub fn algebra_with_representation_to_json(
    alg: &FiniteAlgebra,
    rep: Option<&SetRepresentation>,
) -> String {
    to_string(&AlgebraWithRepDoc { algebra: algebra_doc(alg), representation: rep.map(rep_doc) })
}

#[derive(Serialize)]
struct FixturesDoc {
    fixtures: Vec<String>,
}

/// Emits the fixture name list.
pub fn fixtures_to_json(names: &[&str]) -> String {
    to_string(&FixturesDoc { fixtures: names.iter().map(|n| n.to_string()).collect() })
}
