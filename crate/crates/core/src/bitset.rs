//! Fixed-universe index sets used for object sets (granules) and attribute
//! sets (intents).
//!
//! Both share one representation: a [`FixedBitSet`] whose length is the size
//! of the universe it indexes into. A zero-sized marker type keeps object and
//! attribute sets from being mixed up at compile time.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use fixedbitset::FixedBitSet;

/// Marker for sets of object indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objects {}

/// Marker for sets of attribute indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attributes {}

/// A subset of `0..universe`.
pub struct IndexSet<K> {
    bits: FixedBitSet,
    _kind: PhantomData<K>,
}

/// A granule: a set of object indices of some context.
pub type ObjectSet = IndexSet<Objects>;
/// A set of attribute indices of some context (or block).
pub type AttributeSet = IndexSet<Attributes>;

impl<K> IndexSet<K> {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
            _kind: PhantomData,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self {
            bits,
            _kind: PhantomData,
        }
    }

    /// Builds a set from 0-based indices.
    ///
    /// Panics if an index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from 1-based indices, the numbering used for display.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        Self::from_indices(
            universe,
            indices.into_iter().map(|i| {
                assert!(i >= 1, "1-based index must be positive");
                i - 1
            }),
        )
    }

    /// Decodes the low `universe` bits of `mask` (bit `i` = member `i`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64);
        Self::from_indices(universe, (0..universe).filter(|i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        assert!(
            index < self.universe(),
            "index {index} outside universe of size {}",
            self.universe()
        );
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Encodes the set as a bit mask. Only valid for universes up to 64.
    pub fn to_mask(&self) -> u64 {
        assert!(self.universe() <= 64);
        self.iter().fold(0, |m, i| m | 1 << i)
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe(),
            other.universe(),
            "index sets over different universes"
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        self.bits.difference_with(&other.bits);
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Lexicographic comparison of the increasing member lists.
    pub fn cmp_members(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Compares membership vectors position by position, reading index 0
    /// first and ranking "absent" before "present".
    pub fn cmp_membership_vector(&self, other: &Self) -> Ordering {
        let n = self.universe().max(other.universe());
        for i in 0..n {
            match (self.contains(i), other.contains(i)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    /// Canonical order: larger sets first, then lexicographic by members.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.cmp_members(other))
    }

    /// Renders the set as `{1,2,7}` using 1-based indices.
    pub fn display_one_based(&self) -> String {
        let items: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl<K> Clone for IndexSet<K> {
    fn clone(&self) -> Self {
        Self {
            bits: self.bits.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for IndexSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.universe() == other.universe() && self.bits.ones().eq(other.bits.ones())
    }
}

impl<K> Eq for IndexSet<K> {}

impl<K> Hash for IndexSet<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe().hash(state);
        for i in self.iter() {
            i.hash(state);
        }
    }
}

impl<K> PartialOrd for IndexSet<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Ord for IndexSet<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_members(other)
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl<K> fmt::Debug for IndexSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_one_based())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_empty() {
        let full = ObjectSet::full(7);
        assert_eq!(full.len(), 7);
        assert!(full.is_full());
        assert!(ObjectSet::empty(7).is_empty());
        assert_eq!(full.complement(), ObjectSet::empty(7));
    }

    #[test]
    fn one_based_round_trip() {
        let s = ObjectSet::from_one_based(7, [2, 7]);
        assert_eq!(s.to_vec(), vec![1, 6]);
        assert_eq!(s.to_one_based(), vec![2, 7]);
        assert_eq!(s.display_one_based(), "{2,7}");
    }

    #[test]
    fn subset_relations() {
        let a = ObjectSet::from_indices(5, [0, 1]);
        let b = ObjectSet::from_indices(5, [0, 1, 3]);
        assert!(a.is_subset(&b));
        assert!(a.is_proper_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.intersects(&b));
        assert_eq!(b.difference(&a).to_vec(), vec![3]);
    }

    #[test]
    fn canonical_order_puts_larger_first() {
        let big = ObjectSet::from_indices(4, [0, 1, 2]);
        let small = ObjectSet::from_indices(4, [0]);
        assert_eq!(big.cmp_canonical(&small), Ordering::Less);
        let x = ObjectSet::from_indices(4, [0, 3]);
        let y = ObjectSet::from_indices(4, [1, 2]);
        assert_eq!(x.cmp_canonical(&y), Ordering::Less);
    }

    #[test]
    fn membership_vector_order() {
        // {2,3,4,5} reads 0111100 against {2,3,7} = 0110001
        let y1 = ObjectSet::from_one_based(7, [2, 3, 4, 5]);
        let y2 = ObjectSet::from_one_based(7, [2, 3, 7]);
        assert_eq!(y2.cmp_membership_vector(&y1), Ordering::Less);
    }

    #[test]
    fn mask_round_trip() {
        let s = AttributeSet::from_mask(6, 0b101001);
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.to_mask(), 0b101001);
    }

    #[test]
    #[should_panic]
    fn insert_outside_universe_panics() {
        ObjectSet::empty(3).insert(3);
    }
}
