use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state_set::StateSet;

/// A total self-map of `{0, .., n-1}`, written `[0t, 1t, .., (n-1)t]`.
///
/// Composition follows the left-to-right convention: `q(s * t) = (qs)t`,
/// so `s.then(&t)` first applies `s`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Transformation {
    image: Vec<u32>,
}

impl Transformation {
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::InvalidTransformation("degree must be at least 1".into()));
        }
        if let Some(&bad) = image.iter().find(|&&q| q as usize >= n) {
            return Err(Error::InvalidTransformation(format!("image {bad} out of range for degree {n}")));
        }
        Ok(Self { image })
    }

    /// Builds from any integer slice; panics on invalid input. Meant for
    /// literals in tests and constructors.
    pub fn from_slice(image: &[usize]) -> Self {
        Self::new(image.iter().map(|&q| q as u32).collect()).expect("valid transformation")
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Self { image: (0..n as u32).collect() }
    }

    /// The constant map onto `q`.
    pub fn constant(n: usize, q: usize) -> Self {
        assert!(q < n);
        Self { image: vec![q as u32; n] }
    }

    /// Decodes the `index`-th transformation of degree `n` in lexicographic
    /// order of images (`0 <= index < n^n`).
    pub fn from_index(n: usize, mut index: u64) -> Self {
        let mut image = vec![0u32; n];
        for slot in image.iter_mut().rev() {
            *slot = (index % n as u64) as u32;
            index /= n as u64;
        }
        Self { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, q: usize) -> usize {
        self.image[q] as usize
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.image.iter().map(|&q| q as usize).collect()
    }

    /// `rng(t)`.
    pub fn range(&self) -> StateSet {
        self.image.iter().map(|&q| q as usize).collect()
    }

    pub fn apply_set(&self, set: &StateSet) -> StateSet {
        set.iter().map(|q| self.apply(q)).collect()
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for hot loops; degrees must agree.
    #[inline]
    pub fn then(&self, other: &Transformation) -> Transformation {
        debug_assert_eq!(self.degree(), other.degree());
        Transformation { image: self.image.iter().map(|&q| other.image[q as usize]).collect() }
    }

    pub fn power(&self, k: usize) -> Transformation {
        let mut t = Transformation::identity(self.degree());
        for _ in 0..k {
            t = t.then(self);
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &q)| i as u32 == q)
    }

    // Builders for the cycle notation. They overwrite the images of the
    // states they mention, so factors with disjoint domains can be chained
    // in any order.

    /// `(p -> q)`.
    pub fn with_map(mut self, p: usize, q: usize) -> Self {
        self.image[p] = q as u32;
        self
    }

    /// `(P -> q)`.
    pub fn with_merge<I: IntoIterator<Item = usize>>(mut self, states: I, q: usize) -> Self {
        for p in states {
            self.image[p] = q as u32;
        }
        self
    }

    /// `(q0, q1, .., q_{k-1})`; a one-element cycle is the identity.
    pub fn with_cycle(mut self, states: &[usize]) -> Self {
        let k = states.len();
        for i in 0..k {
            self.image[states[i]] = states[(i + 1) % k] as u32;
        }
        self
    }
}

impl TryFrom<Vec<u32>> for Transformation {
    type Error = Error;

    fn try_from(image: Vec<u32>) -> Result<Self> {
        Transformation::new(image)
    }
}

impl From<Transformation> for Vec<u32> {
    fn from(t: Transformation) -> Self {
        t.image
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, q) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The 0-path `0, 0t, 0t^2, ..` up to its first repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPath {
    /// Distinct states `0t^0 .. 0t^{j-1}`.
    pub states: Vec<usize>,
    /// Index `i` at which the path re-enters itself (`0t^j = 0t^i`).
    pub cycle_start: usize,
}

impl ZeroPath {
    pub fn period(&self) -> usize {
        self.states.len() - self.cycle_start
    }

    pub fn is_initially_aperiodic(&self) -> bool {
        self.period() == 1
    }

    pub fn last(&self) -> usize {
        *self.states.last().expect("path is never empty")
    }
}

pub fn zero_path(t: &Transformation) -> ZeroPath {
    let mut seen = vec![usize::MAX; t.degree()];
    let mut states = Vec::new();
    let mut q = 0;
    while seen[q] == usize::MAX {
        seen[q] = states.len();
        states.push(q);
        q = t.apply(q);
    }
    ZeroPath { states, cycle_start: seen[q] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let t = Transformation::from_slice(&[2, 0, 0, 1]);
        let id = Transformation::identity(4);
        assert_eq!(id.compose(&t).unwrap(), t);
        assert_eq!(t.compose(&id).unwrap(), t);
    }

    #[test]
    fn squaring_c1_gives_d() {
        let c1 = Transformation::from_slice(&[1, 4, 2, 3, 4]);
        assert_eq!(c1.compose(&c1).unwrap(), Transformation::from_slice(&[4, 4, 2, 3, 4]));
    }

    #[test]
    fn c1_c2_c3_compose_to_e() {
        // c_p = (p -> n-1)(0 -> p) at n = 5
        let c = |p: usize| Transformation::identity(5).with_map(p, 4).with_map(0, p);
        let e = c(1).compose(&c(2)).unwrap().compose(&c(3)).unwrap();
        assert_eq!(e, Transformation::from_slice(&[1, 4, 4, 4, 4]));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let s = Transformation::identity(3);
        let t = Transformation::identity(4);
        assert_eq!(s.compose(&t), Err(Error::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn rejects_out_of_range_images() {
        assert!(Transformation::new(vec![0, 2]).is_err());
        assert!(Transformation::new(vec![]).is_err());
    }

    #[test]
    fn cycle_notation_expands_simultaneously() {
        // (2 -> 5)(1 -> 2)(0 -> 1)(3,4) at n = 6
        let b = Transformation::identity(6).with_map(2, 5).with_map(1, 2).with_map(0, 1).with_cycle(&[3, 4]);
        assert_eq!(b.to_vec(), vec![1, 2, 5, 4, 3, 5]);
        assert!(Transformation::identity(3).with_cycle(&[1]).is_identity());
    }

    #[test]
    fn index_decoding_is_lexicographic() {
        assert_eq!(Transformation::from_index(3, 0).to_vec(), vec![0, 0, 0]);
        assert_eq!(Transformation::from_index(3, 5).to_vec(), vec![0, 1, 2]);
        assert_eq!(Transformation::from_index(3, 26).to_vec(), vec![2, 2, 2]);
    }

    #[test]
    fn zero_paths() {
        let p = zero_path(&Transformation::identity(4));
        assert_eq!(p.states, vec![0]);
        assert!(p.is_initially_aperiodic());

        let e = Transformation::from_slice(&[1, 4, 4, 4, 4]);
        let p = zero_path(&e);
        assert_eq!(p.states, vec![0, 1, 4]);
        assert!(p.is_initially_aperiodic());
        assert_eq!(p.last(), 4);

        let rot = Transformation::from_slice(&[1, 2, 0]);
        let p = zero_path(&rot);
        assert_eq!(p.period(), 3);
        assert!(!p.is_initially_aperiodic());
    }

    #[test]
    fn serde_uses_bracket_arrays() {
        let t = Transformation::from_slice(&[1, 4, 2, 3, 4]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[1,4,2,3,4]");
        let back: Transformation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Transformation>("[0,5]").is_err());
    }
}
