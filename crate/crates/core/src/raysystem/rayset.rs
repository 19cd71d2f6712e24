use std::fmt;

/// A set of ray indices (at most 64 rays per system).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RaySet(pub u64);

impl RaySet {
    pub const EMPTY: RaySet = RaySet(0);

    pub fn single(i: usize) -> Self {
        RaySet(1 << i)
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn all(n: usize) -> Self {
        if n >= 64 {
            RaySet(u64::MAX)
        } else {
            RaySet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(items: impl IntoIterator<Item = usize>) -> Self {
        items.into_iter().fold(RaySet::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        RaySet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        RaySet(self.0 & !(1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        RaySet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        RaySet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        RaySet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets, the empty set first.
    pub fn subsets(self) -> impl Iterator<Item = RaySet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(RaySet(s))
        })
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_covers_powerset() {
        let s = RaySet::from_indices([1, 3, 4]);
        let subs: Vec<RaySet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], RaySet::EMPTY);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        let mut dedup = subs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        assert_eq!(RaySet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn set_operations() {
        let a = RaySet::from_indices([0, 2]);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(a.with(5).without(0), RaySet::from_indices([2, 5]));
        assert_eq!(RaySet::all(3), RaySet::from_indices([0, 1, 2]));
        assert_eq!(RaySet::all(64).len(), 64);
        assert_eq!(a.to_string(), "{0,2}");
    }
}
