use fixedbitset::FixedBitSet;

/// A subset of the points of a [`SampledSpace`](crate::space::SampledSpace),
/// stored as a bitset over point ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    bits: FixedBitSet,
}

impl Subset {
    pub fn empty(point_count: usize) -> Self {
        Subset {
            bits: FixedBitSet::with_capacity(point_count),
        }
    }

    pub fn full(point_count: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(point_count);
        bits.insert_range(..);
        Subset { bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(point_count: usize, iter: I) -> Self {
        let mut bits = FixedBitSet::with_capacity(point_count);
        for i in iter {
            bits.insert(i);
        }
        Subset { bits }
    }

    /// Number of points in the ambient space, not the subset cardinality.
    pub fn ambient_len(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.count_ones(..) == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits.count_ones(..) == self.bits.len()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn insert(&mut self, p: usize) {
        self.bits.insert(p);
    }

    pub fn remove(&mut self, p: usize) {
        self.bits.remove(p);
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset { bits }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset { bits }
    }

    pub fn complement(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset { bits }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Subset { bits }
    }

    /// Points in exactly one of the two subsets.
    pub fn symmetric_difference(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        Subset { bits }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_roundtrip() {
        let s = Subset::from_indices(7, [0, 2, 5]);
        assert_eq!(s.complement().complement(), s);
        assert_eq!(s.complement().to_indices(), vec![1, 3, 4, 6]);
    }

    #[test]
    fn subset_relation() {
        let a = Subset::from_indices(5, [1, 2]);
        let b = Subset::from_indices(5, [0, 1, 2]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(Subset::empty(5).is_subset(&a));
        assert!(a.is_subset(&Subset::full(5)));
    }
}
