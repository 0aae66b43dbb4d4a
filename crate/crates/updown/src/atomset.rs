//! Fixed-width bitsets over a universe of named atoms.
//!
//! Set representations identify every element of an algebra with a subset of
//! a finite universe; all the set algebra happens here. Blocks of 64 bits
//! keep intersection and union branch-free, and the derived lexicographic
//! `Ord` gives representations a canonical printing order for free.

use std::fmt;

/// A subset of `{0, .., nbits-1}` stored as packed 64-bit blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    nbits: usize,
    blocks: Vec<u64>,
}

fn block_count(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

impl AtomSet {
    /// The empty subset of a universe with `nbits` atoms.
    pub fn empty(nbits: usize) -> Self {
        AtomSet { nbits, blocks: vec![0; block_count(nbits)] }
    }

    /// The full universe on `nbits` atoms.
    pub fn full(nbits: usize) -> Self {
        let mut set = AtomSet::empty(nbits);
        for i in 0..nbits {
            set.insert(i);
        }
        set
    }

    /// Builds a set from an iterator of atom indices.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range; callers validate indices when
    /// parsing documents, so a violation here is a programming error.
    pub fn from_indices(nbits: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = AtomSet::empty(nbits);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Number of atoms in the ambient universe (not the cardinality).
    pub fn nbits(&self) -> usize {
        self.nbits
    }

    /// Adds one atom.
    pub fn insert(&mut self, index: usize) {
        assert!(index < self.nbits, "atom index {index} out of range for universe of {}", self.nbits);
        self.blocks[index / 64] |= 1u64 << (index % 64);
    }

    /// Membership test.
    pub fn contains(&self, index: usize) -> bool {
        index < self.nbits && self.blocks[index / 64] >> (index % 64) & 1 == 1
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// True when no atom is present.
    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// `self ∩ other`. Both sets must live in the same universe.
    pub fn inter(&self, other: &AtomSet) -> AtomSet {
        assert_eq!(self.nbits, other.nbits, "intersection across different universes");
        AtomSet {
            nbits: self.nbits,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(),
        }
    }

    /// `self ∪ other`. Both sets must live in the same universe.
    pub fn union(&self, other: &AtomSet) -> AtomSet {
        assert_eq!(self.nbits, other.nbits, "union across different universes");
        AtomSet {
            nbits: self.nbits,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a | b).collect(),
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &AtomSet) -> bool {
        assert_eq!(self.nbits, other.nbits, "subset test across different universes");
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Ascending iterator over the atom indices present.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nbits).filter(|&i| self.contains(i))
    }

    /// The same set inside a universe extended to `nbits` atoms.
    pub fn grown(&self, nbits: usize) -> AtomSet {
        assert!(nbits >= self.nbits, "cannot shrink a universe");
        let mut blocks = self.blocks.clone();
        blocks.resize(block_count(nbits), 0);
        AtomSet { nbits, blocks }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_full() {
        let e = AtomSet::empty(70);
        let f = AtomSet::full(70);
        assert!(e.is_empty());
        assert_eq!(e.len(), 0);
        assert_eq!(f.len(), 70);
        assert!(e.is_subset(&f));
        assert!(!f.is_subset(&e));
        assert!(f.contains(69));
        assert!(!f.contains(70));
    }

    #[test]
    fn boolean_algebra_on_block_boundary() {
        // 64 sits on the first block boundary; 65-bit sets exercise carry-over.
        let a = AtomSet::from_indices(65, [0, 63, 64]);
        let b = AtomSet::from_indices(65, [63, 64]);
        assert_eq!(a.inter(&b), b);
        assert_eq!(a.union(&b), a);
        assert!(b.is_subset(&a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 63, 64]);
    }

    #[test]
    fn ord_is_lexicographic_on_nbits_then_blocks() {
        // Equality requires the same universe; within one universe the derived
        // order is deterministic, which is all canonical printing needs.
        let a = AtomSet::from_indices(8, [1]);
        let b = AtomSet::from_indices(8, [2]);
        assert!(a < b);
        assert_ne!(a, b);
    }

    #[test]
    fn grown_preserves_membership() {
        let a = AtomSet::from_indices(3, [0, 2]);
        let g = a.grown(130);
        assert_eq!(g.nbits(), 130);
        assert!(g.contains(0) && g.contains(2) && !g.contains(1));
        assert!(!g.contains(129));
        assert_eq!(g.len(), 2);
    }
}
