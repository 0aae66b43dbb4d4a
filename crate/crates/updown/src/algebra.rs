//! Finite algebras given by labeled operation tables.
//!
//! Elements are referred to by index internally; the label vectors fix the
//! external names and the declaration order that every deterministic scan in
//! the crate follows.

use std::fmt;

use crate::error::{Error, Result};

/// The three table shapes the crate works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Action,
    Biaction,
    SetBand,
}

impl Kind {
    /// The identifier used in JSON documents and CLI arguments.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Action => "action",
            Kind::Biaction => "biaction",
            Kind::SetBand => "setband",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which sort a label or index belongs to, for error reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SortName {
    C,
    S,
    SDown,
    SUp,
}

impl fmt::Display for SortName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SortName::C => "C",
            SortName::S => "S",
            SortName::SDown => "S_down",
            SortName::SUp => "S_up",
        })
    }
}

fn check_labels(sort: SortName, labels: &[String]) -> Result<()> {
    if labels.is_empty() && sort == SortName::C {
        return Err(Error::EmptySort { sort });
    }
    for (i, a) in labels.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::EmptyLabel { sort });
        }
        if labels[..i].contains(a) {
            return Err(Error::DuplicateLabel { sort, label: a.clone() });
        }
    }
    Ok(())
}

fn check_table(table: &[Vec<usize>], rows: usize, cols: usize, range: usize) -> Result<()> {
    assert_eq!(table.len(), rows, "row count checked by constructors");
    for (r, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Precondition(format!(
                "table row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= range {
                return Err(Error::OutOfRange { row: r, col: c, value: v, len: range });
            }
        }
    }
    Ok(())
}

fn label_index(sort: SortName, labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::UnknownLabel { sort, label: label.to_string() })
}

/// A one-sorted-action table: `table[c][s]` is the state after applying `s`
/// to `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    c_labels: Vec<String>,
    s_labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteAction {
    /// Validates labels and table shape. `table` is indexed `[c][s]`.
    pub fn new(c_labels: Vec<String>, s_labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        check_labels(SortName::C, &c_labels)?;
        check_labels(SortName::S, &s_labels)?;
        if table.len() != c_labels.len() {
            return Err(Error::Precondition(format!(
                "table has {} rows, expected one per state ({})",
                table.len(),
                c_labels.len()
            )));
        }
        check_table(&table, c_labels.len(), s_labels.len(), c_labels.len())?;
        Ok(FiniteAction { c_labels, s_labels, table })
    }

    pub fn c_labels(&self) -> &[String] {
        &self.c_labels
    }

    pub fn s_labels(&self) -> &[String] {
        &self.s_labels
    }

    pub fn c_len(&self) -> usize {
        self.c_labels.len()
    }

    pub fn s_len(&self) -> usize {
        self.s_labels.len()
    }

    /// One application step on indices.
    pub fn act(&self, c: usize, s: usize) -> usize {
        self.table[c][s]
    }

    /// Runs a word of operation indices left to right.
    pub fn run(&self, c: usize, word: &[usize]) -> usize {
        word.iter().fold(c, |acc, &s| self.act(acc, s))
    }

    pub fn c_index(&self, label: &str) -> Result<usize> {
        label_index(SortName::C, &self.c_labels, label)
    }

    pub fn s_index(&self, label: &str) -> Result<usize> {
        label_index(SortName::S, &self.s_labels, label)
    }
}

/// A two-sorted-action table: `table_down[c][s]` applies the `s`-th
/// intersect-style operation, `table_up[c][t]` the `t`-th union-style one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBiaction {
    c_labels: Vec<String>,
    sdown_labels: Vec<String>,
    sup_labels: Vec<String>,
    table_down: Vec<Vec<usize>>,
    table_up: Vec<Vec<usize>>,
}

impl FiniteBiaction {
    pub fn new(
        c_labels: Vec<String>,
        sdown_labels: Vec<String>,
        sup_labels: Vec<String>,
        table_down: Vec<Vec<usize>>,
        table_up: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_labels(SortName::C, &c_labels)?;
        check_labels(SortName::SDown, &sdown_labels)?;
        check_labels(SortName::SUp, &sup_labels)?;
        // The two operation sorts may reuse names (the one-atom full
        // biaction has S_down = S_up = {"0","1"}); letters in words carry
        // their sort, so no lookup is ambiguous.
        let n = c_labels.len();
        if table_down.len() != n || table_up.len() != n {
            return Err(Error::Precondition(format!(
                "tables have {} and {} rows, expected one per state ({n})",
                table_down.len(),
                table_up.len()
            )));
        }
        check_table(&table_down, n, sdown_labels.len(), n)?;
        check_table(&table_up, n, sup_labels.len(), n)?;
        Ok(FiniteBiaction { c_labels, sdown_labels, sup_labels, table_down, table_up })
    }

    pub fn c_labels(&self) -> &[String] {
        &self.c_labels
    }

    pub fn sdown_labels(&self) -> &[String] {
        &self.sdown_labels
    }

    pub fn sup_labels(&self) -> &[String] {
        &self.sup_labels
    }

    pub fn c_len(&self) -> usize {
        self.c_labels.len()
    }

    pub fn sdown_len(&self) -> usize {
        self.sdown_labels.len()
    }

    pub fn sup_len(&self) -> usize {
        self.sup_labels.len()
    }

    pub fn act_down(&self, c: usize, s: usize) -> usize {
        self.table_down[c][s]
    }

    pub fn act_up(&self, c: usize, t: usize) -> usize {
        self.table_up[c][t]
    }

    /// One step by a sorted operation index: `(false, s)` is intersect-sort,
    /// `(true, t)` union-sort.
    pub fn act(&self, c: usize, op: (bool, usize)) -> usize {
        if op.0 {
            self.act_up(c, op.1)
        } else {
            self.act_down(c, op.1)
        }
    }

    /// Runs a word of sorted operation indices left to right.
    pub fn run(&self, c: usize, word: &[(bool, usize)]) -> usize {
        word.iter().fold(c, |acc, &op| self.act(acc, op))
    }

    pub fn c_index(&self, label: &str) -> Result<usize> {
        label_index(SortName::C, &self.c_labels, label)
    }

    pub fn sdown_index(&self, label: &str) -> Result<usize> {
        label_index(SortName::SDown, &self.sdown_labels, label)
    }

    pub fn sup_index(&self, label: &str) -> Result<usize> {
        label_index(SortName::SUp, &self.sup_labels, label)
    }
}

/// A magma table over one sort: `mul[x][y]` is the product `x · y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSetBand {
    s_labels: Vec<String>,
    mul: Vec<Vec<usize>>,
}

impl FiniteSetBand {
    pub fn new(s_labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        // The one-sorted band reuses the C slot of the label checks so that
        // an empty carrier is rejected the same way.
        if s_labels.is_empty() {
            return Err(Error::EmptySort { sort: SortName::S });
        }
        check_labels(SortName::S, &s_labels)?;
        let n = s_labels.len();
        if mul.len() != n {
            return Err(Error::Precondition(format!(
                "multiplication table has {} rows, expected {n}",
                mul.len()
            )));
        }
        check_table(&mul, n, n, n)?;
        Ok(FiniteSetBand { s_labels, mul })
    }

    pub fn s_labels(&self) -> &[String] {
        &self.s_labels
    }

    pub fn s_len(&self) -> usize {
        self.s_labels.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    /// Left-to-right product of a nonempty word of indices.
    pub fn run(&self, word: &[usize]) -> usize {
        let (&first, rest) = word.split_first().expect("band words are nonempty");
        rest.iter().fold(first, |acc, &y| self.mul(acc, y))
    }

    pub fn s_index(&self, label: &str) -> Result<usize> {
        label_index(SortName::S, &self.s_labels, label)
    }
}

/// Any of the three table shapes, for interfaces that are kind-generic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteAlgebra {
    Action(FiniteAction),
    Biaction(FiniteBiaction),
    SetBand(FiniteSetBand),
}

impl FiniteAlgebra {
    pub fn kind(&self) -> Kind {
        match self {
            FiniteAlgebra::Action(_) => Kind::Action,
            FiniteAlgebra::Biaction(_) => Kind::Biaction,
            FiniteAlgebra::SetBand(_) => Kind::SetBand,
        }
    }

    pub fn as_action(&self) -> Result<&FiniteAction> {
        match self {
            FiniteAlgebra::Action(a) => Ok(a),
            other => Err(Error::KindMismatch { expected: Kind::Action, got: other.kind() }),
        }
    }

    pub fn as_biaction(&self) -> Result<&FiniteBiaction> {
        match self {
            FiniteAlgebra::Biaction(b) => Ok(b),
            other => Err(Error::KindMismatch { expected: Kind::Biaction, got: other.kind() }),
        }
    }

    pub fn as_setband(&self) -> Result<&FiniteSetBand> {
        match self {
            FiniteAlgebra::SetBand(b) => Ok(b),
            other => Err(Error::KindMismatch { expected: Kind::SetBand, got: other.kind() }),
        }
    }
}

impl From<FiniteAction> for FiniteAlgebra {
    fn from(a: FiniteAction) -> Self {
        FiniteAlgebra::Action(a)
    }
}

impl From<FiniteBiaction> for FiniteAlgebra {
    fn from(b: FiniteBiaction) -> Self {
        FiniteAlgebra::Biaction(b)
    }
}

impl From<FiniteSetBand> for FiniteAlgebra {
    fn from(b: FiniteSetBand) -> Self {
        FiniteAlgebra::SetBand(b)
    }
}

#[cfg(test)]
pub(crate) fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
