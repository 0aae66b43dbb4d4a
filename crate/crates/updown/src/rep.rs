//! Set representations: concrete realizations of the abstract tables.
//!
//! A representation names a finite universe of atoms and assigns set data to
//! every element: states become subsets, action operations become pairs
//! `(down, up)` acting by `c ↦ (c ∩ down) ∪ up`, biaction operations become
//! single sets on their own sort, and band elements become pairs multiplied
//! among themselves. Distinct elements must receive distinct data, so a
//! representation is a certificate of membership, not just a model.

use crate::algebra::{Kind, SortName};
use crate::atomset::AtomSet;
use crate::error::{Error, Result};

fn check_universe(universe: &[String]) -> Result<()> {
    for (i, atom) in universe.iter().enumerate() {
        if atom.is_empty() {
            return Err(Error::DuplicateAtom("(empty name)".into()));
        }
        if universe[..i].contains(atom) {
            return Err(Error::DuplicateAtom(atom.clone()));
        }
    }
    Ok(())
}

fn atoms_to_set(universe: &[String], atoms: &[String]) -> Result<AtomSet> {
    let mut set = AtomSet::empty(universe.len());
    for atom in atoms {
        let i = universe
            .iter()
            .position(|a| a == atom)
            .ok_or_else(|| Error::UnknownAtom(atom.clone()))?;
        set.insert(i);
    }
    Ok(set)
}

fn check_lengths(sort: SortName, labels: usize, data: usize) -> Result<()> {
    if labels != data {
        return Err(Error::LabelMismatch(format!(
            "{sort} has {labels} labels but {data} set entries"
        )));
    }
    Ok(())
}

fn check_injective<T: PartialEq>(sort: SortName, labels: &[String], data: &[T]) -> Result<()> {
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            if data[i] == data[j] {
                return Err(Error::NonInjective {
                    sort,
                    a: labels[i].clone(),
                    b: labels[j].clone(),
                });
            }
        }
    }
    Ok(())
}

fn check_nbits(universe: &[String], sets: &[&AtomSet]) -> Result<()> {
    for set in sets {
        if set.nbits() != universe.len() {
            return Err(Error::Internal(format!(
                "set over {} atoms in a universe of {}",
                set.nbits(),
                universe.len()
            )));
        }
    }
    Ok(())
}

/// Set data for a one-sorted action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionRep {
    universe: Vec<String>,
    c_labels: Vec<String>,
    c_sets: Vec<AtomSet>,
    s_labels: Vec<String>,
    s_pairs: Vec<(AtomSet, AtomSet)>,
    prime: bool,
}

impl ActionRep {
    /// Builds from atom-name lists, as parsed from a document.
    ///
    /// `prime` lifts the `up ⊆ down` requirement on operation pairs; the
    /// action computed from a pair is unchanged, but pairs with spill become
    /// legal data.
    pub fn new(
        universe: Vec<String>,
        c_labels: Vec<String>,
        c_atoms: &[Vec<String>],
        s_labels: Vec<String>,
        s_pair_atoms: &[(Vec<String>, Vec<String>)],
        prime: bool,
    ) -> Result<Self> {
        check_universe(&universe)?;
        let c_sets = c_atoms.iter().map(|a| atoms_to_set(&universe, a)).collect::<Result<Vec<_>>>()?;
        let s_pairs = s_pair_atoms
            .iter()
            .map(|(d, u)| Ok((atoms_to_set(&universe, d)?, atoms_to_set(&universe, u)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sets(universe, c_labels, c_sets, s_labels, s_pairs, prime)
    }

    /// Builds from already-assembled sets over the given universe.
    pub fn from_sets(
        universe: Vec<String>,
        c_labels: Vec<String>,
        c_sets: Vec<AtomSet>,
        s_labels: Vec<String>,
        s_pairs: Vec<(AtomSet, AtomSet)>,
        prime: bool,
    ) -> Result<Self> {
        check_universe(&universe)?;
        check_lengths(SortName::C, c_labels.len(), c_sets.len())?;
        check_lengths(SortName::S, s_labels.len(), s_pairs.len())?;
        if c_labels.is_empty() {
            return Err(Error::EmptySort { sort: SortName::C });
        }
        check_nbits(&universe, &c_sets.iter().collect::<Vec<_>>())?;
        check_nbits(&universe, &s_pairs.iter().flat_map(|(d, u)| [d, u]).collect::<Vec<_>>())?;
        check_injective(SortName::C, &c_labels, &c_sets)?;
        check_injective(SortName::S, &s_labels, &s_pairs)?;
        if !prime {
            for (i, (down, up)) in s_pairs.iter().enumerate() {
                if !up.is_subset(down) {
                    return Err(Error::UpNotInDown(s_labels[i].clone()));
                }
            }
        }
        Ok(ActionRep { universe, c_labels, c_sets, s_labels, s_pairs, prime })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn c_labels(&self) -> &[String] {
        &self.c_labels
    }

    pub fn s_labels(&self) -> &[String] {
        &self.s_labels
    }

    pub fn c_set(&self, i: usize) -> &AtomSet {
        &self.c_sets[i]
    }

    pub fn s_pair(&self, i: usize) -> &(AtomSet, AtomSet) {
        &self.s_pairs[i]
    }

    pub fn prime(&self) -> bool {
        self.prime
    }

    /// The set an operation pair sends a state set to.
    pub fn apply(&self, c: &AtomSet, s: usize) -> AtomSet {
        let (down, up) = &self.s_pairs[s];
        c.inter(down).union(up)
    }
}

/// Set data for a two-sorted action: intersect-sort and union-sort elements
/// each carry one set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiactionRep {
    universe: Vec<String>,
    c_labels: Vec<String>,
    c_sets: Vec<AtomSet>,
    sdown_labels: Vec<String>,
    sdown_sets: Vec<AtomSet>,
    sup_labels: Vec<String>,
    sup_sets: Vec<AtomSet>,
}

impl BiactionRep {
    pub fn new(
        universe: Vec<String>,
        c_labels: Vec<String>,
        c_atoms: &[Vec<String>],
        sdown_labels: Vec<String>,
        sdown_atoms: &[Vec<String>],
        sup_labels: Vec<String>,
        sup_atoms: &[Vec<String>],
    ) -> Result<Self> {
        check_universe(&universe)?;
        let to_sets = |atoms: &[Vec<String>]| {
            atoms.iter().map(|a| atoms_to_set(&universe, a)).collect::<Result<Vec<_>>>()
        };
        let c_sets = to_sets(c_atoms)?;
        let sdown_sets = to_sets(sdown_atoms)?;
        let sup_sets = to_sets(sup_atoms)?;
        Self::from_sets(universe, c_labels, c_sets, sdown_labels, sdown_sets, sup_labels, sup_sets)
    }

    pub fn from_sets(
        universe: Vec<String>,
        c_labels: Vec<String>,
        c_sets: Vec<AtomSet>,
        sdown_labels: Vec<String>,
        sdown_sets: Vec<AtomSet>,
        sup_labels: Vec<String>,
        sup_sets: Vec<AtomSet>,
    ) -> Result<Self> {
        check_universe(&universe)?;
        check_lengths(SortName::C, c_labels.len(), c_sets.len())?;
        check_lengths(SortName::SDown, sdown_labels.len(), sdown_sets.len())?;
        check_lengths(SortName::SUp, sup_labels.len(), sup_sets.len())?;
        if c_labels.is_empty() {
            return Err(Error::EmptySort { sort: SortName::C });
        }
        let all: Vec<&AtomSet> = c_sets.iter().chain(&sdown_sets).chain(&sup_sets).collect();
        check_nbits(&universe, &all)?;
        check_injective(SortName::C, &c_labels, &c_sets)?;
        check_injective(SortName::SDown, &sdown_labels, &sdown_sets)?;
        check_injective(SortName::SUp, &sup_labels, &sup_sets)?;
        Ok(BiactionRep { universe, c_labels, c_sets, sdown_labels, sdown_sets, sup_labels, sup_sets })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
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

    pub fn c_set(&self, i: usize) -> &AtomSet {
        &self.c_sets[i]
    }

    pub fn sdown_set(&self, i: usize) -> &AtomSet {
        &self.sdown_sets[i]
    }

    pub fn sup_set(&self, i: usize) -> &AtomSet {
        &self.sup_sets[i]
    }
}

/// Set data for a band of operation pairs multiplied among themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandRep {
    universe: Vec<String>,
    s_labels: Vec<String>,
    s_pairs: Vec<(AtomSet, AtomSet)>,
}

impl BandRep {
    pub fn new(
        universe: Vec<String>,
        s_labels: Vec<String>,
        s_pair_atoms: &[(Vec<String>, Vec<String>)],
    ) -> Result<Self> {
        check_universe(&universe)?;
        let s_pairs = s_pair_atoms
            .iter()
            .map(|(d, u)| Ok((atoms_to_set(&universe, d)?, atoms_to_set(&universe, u)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sets(universe, s_labels, s_pairs)
    }

    pub fn from_sets(
        universe: Vec<String>,
        s_labels: Vec<String>,
        s_pairs: Vec<(AtomSet, AtomSet)>,
    ) -> Result<Self> {
        check_universe(&universe)?;
        check_lengths(SortName::S, s_labels.len(), s_pairs.len())?;
        if s_labels.is_empty() {
            return Err(Error::EmptySort { sort: SortName::S });
        }
        check_nbits(&universe, &s_pairs.iter().flat_map(|(d, u)| [d, u]).collect::<Vec<_>>())?;
        check_injective(SortName::S, &s_labels, &s_pairs)?;
        for (i, (down, up)) in s_pairs.iter().enumerate() {
            if !up.is_subset(down) {
                return Err(Error::UpNotInDown(s_labels[i].clone()));
            }
        }
        Ok(BandRep { universe, s_labels, s_pairs })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn s_labels(&self) -> &[String] {
        &self.s_labels
    }

    pub fn s_pair(&self, i: usize) -> &(AtomSet, AtomSet) {
        &self.s_pairs[i]
    }

    /// The pair product: apply the second pair's update to both components
    /// of the first.
    pub fn multiply(&self, x: usize, y: usize) -> (AtomSet, AtomSet) {
        let (xd, xu) = &self.s_pairs[x];
        let (yd, yu) = &self.s_pairs[y];
        (xd.inter(yd).union(yu), xu.inter(yd).union(yu))
    }
}

/// Any of the three representation shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetRepresentation {
    Action(ActionRep),
    Biaction(BiactionRep),
    SetBand(BandRep),
}

impl SetRepresentation {
    pub fn kind(&self) -> Kind {
        match self {
            SetRepresentation::Action(_) => Kind::Action,
            SetRepresentation::Biaction(_) => Kind::Biaction,
            SetRepresentation::SetBand(_) => Kind::SetBand,
        }
    }

    pub fn as_action(&self) -> Result<&ActionRep> {
        match self {
            SetRepresentation::Action(r) => Ok(r),
            other => Err(Error::KindMismatch { expected: Kind::Action, got: other.kind() }),
        }
    }

    pub fn as_biaction(&self) -> Result<&BiactionRep> {
        match self {
            SetRepresentation::Biaction(r) => Ok(r),
            other => Err(Error::KindMismatch { expected: Kind::Biaction, got: other.kind() }),
        }
    }

    pub fn as_setband(&self) -> Result<&BandRep> {
        match self {
            SetRepresentation::SetBand(r) => Ok(r),
            other => Err(Error::KindMismatch { expected: Kind::SetBand, got: other.kind() }),
        }
    }
}

impl From<ActionRep> for SetRepresentation {
    fn from(r: ActionRep) -> Self {
        SetRepresentation::Action(r)
    }
}

impl From<BiactionRep> for SetRepresentation {
    fn from(r: BiactionRep) -> Self {
        SetRepresentation::Biaction(r)
    }
}

impl From<BandRep> for SetRepresentation {
    fn from(r: BandRep) -> Self {
        SetRepresentation::SetBand(r)
    }
}
