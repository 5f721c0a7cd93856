use std::fmt;

use smallvec::SmallVec;

/// A set of state indices backed by a bit vector.
///
/// Sets of up to 128 states live inline; larger sets spill to the heap, so
/// there is no hard capacity limit. Trailing zero words are never stored,
/// which keeps `Eq`/`Hash` structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: SmallVec<[u64; 2]>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(q: usize) -> Self {
        let mut s = Self::new();
        s.insert(q);
        s
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self::new();
        if mask != 0 {
            s.words.push(mask);
        }
        s
    }

    pub fn insert(&mut self, q: usize) -> bool {
        let (w, b) = (q / 64, q % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, q: usize) -> bool {
        let (w, b) = (q / 64, q % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, q: usize) -> bool {
        let (w, b) = (q / 64, q % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = StateSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() };
        s.trim();
        s
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s.trim();
        s
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.iter().enumerate().all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> StateSet {
        StateSet::full(n).difference(self)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = StateSet::new();
        for q in iter {
            s.insert(q);
        }
        s
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spills_past_inline_capacity() {
        let s: StateSet = [3, 64, 129, 200].into_iter().collect();
        assert_eq!(s.to_vec(), vec![3, 64, 129, 200]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(129) && !s.contains(128));
    }

    #[test]
    fn equality_ignores_removed_high_bits() {
        let mut a = StateSet::singleton(1);
        a.insert(150);
        a.remove(150);
        assert_eq!(a, StateSet::singleton(1));
        let b = StateSet::singleton(300).difference(&StateSet::singleton(300));
        assert_eq!(b, StateSet::new());
    }

    #[test]
    fn set_algebra() {
        let a: StateSet = [0, 1, 2, 70].into_iter().collect();
        let b: StateSet = [2, 3, 70].into_iter().collect();
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 70]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3, 70]);
        assert!(a.intersects(&b));
        assert!(StateSet::singleton(70).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(StateSet::singleton(1).complement(4).to_vec(), vec![0, 2, 3]);
    }
}
