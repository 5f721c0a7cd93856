//! Transformation semigroups: closure generation, transition semigroups of
//! automata, and the colliding/focused pair analysis.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{NamedTransformation, SuffixFreeClass};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::minimize::{is_minimal, quotient_numbering};
use crate::transformation::Transformation;

/// Default closure budget. Admits `Wsf(8)` (117 655 elements) and rejects
/// `Wsf(9)`.
pub const DEFAULT_MAX_ELEMENTS: usize = 200_000;

#[derive(Debug, Clone)]
pub struct TransitionSemigroup {
    degree: usize,
    /// Breadth-first discovery order.
    elements: Vec<Transformation>,
    members: HashSet<Transformation>,
    generators: Vec<NamedTransformation>,
}

impl TransitionSemigroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in discovery order: generators first, then products by
    /// increasing word length, generators scanned in the given order.
    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    /// Elements sorted lexicographically by image; the order used in
    /// reports.
    pub fn sorted_elements(&self) -> Vec<Transformation> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.members.contains(t)
    }

    pub fn generators(&self) -> &[NamedTransformation] {
        &self.generators
    }

    pub fn same_elements(&self, other: &TransitionSemigroup) -> bool {
        self.degree == other.degree && self.len() == other.len() && self.elements.iter().all(|t| other.contains(t))
    }

    pub fn is_subsemigroup_of(&self, class: SuffixFreeClass) -> bool {
        self.elements.iter().all(|t| class.contains(t))
    }
}

/// Closure of `generators` under composition.
pub fn generate(degree: usize, generators: &[Transformation]) -> Result<TransitionSemigroup> {
    let named: Vec<_> =
        generators.iter().enumerate().map(|(i, t)| NamedTransformation::new(format!("g{i}"), t.clone())).collect();
    generate_named(degree, &named)
}

pub fn generate_named(degree: usize, generators: &[NamedTransformation]) -> Result<TransitionSemigroup> {
    generate_with(degree, generators, DEFAULT_MAX_ELEMENTS, Exec::default())
}

/// Breadth-first closure. Each level multiplies the previous frontier on
/// the right by every generator; candidates are produced in parallel and
/// merged in a fixed order, so the element sequence does not depend on
/// `exec`.
pub fn generate_with(
    degree: usize,
    generators: &[NamedTransformation],
    max_elements: usize,
    exec: Exec,
) -> Result<TransitionSemigroup> {
    if let Some(g) = generators.iter().find(|g| g.transformation.degree() != degree) {
        return Err(Error::DegreeMismatch { left: degree, right: g.transformation.degree() });
    }
    let gens: Vec<Transformation> = generators.iter().map(|g| g.transformation.clone()).collect();
    let mut members: HashSet<Transformation> = HashSet::new();
    let mut elements = Vec::new();
    for g in &gens {
        if members.insert(g.clone()) {
            elements.push(g.clone());
        }
    }
    let over = |len: usize| {
        (len > max_elements).then_some(Error::BudgetExceeded { what: "semigroup elements", limit: max_elements })
    };
    if let Some(e) = over(elements.len()) {
        return Err(e);
    }
    let mut start = 0;
    while start < elements.len() {
        let end = elements.len();
        let candidates = exec.flat_map(&elements[start..end], |s| {
            gens.iter().map(|g| s.then(g)).filter(|t| !members.contains(t)).collect()
        });
        for t in candidates {
            if !members.contains(&t) {
                members.insert(t.clone());
                elements.push(t);
            }
        }
        if let Some(e) = over(elements.len()) {
            return Err(e);
        }
        start = end;
    }
    Ok(TransitionSemigroup { degree, elements, members, generators: generators.to_vec() })
}

/// The transition semigroup of the minimal DFA of `d`.
///
/// A DFA that is already minimal, has initial state 0, and has its empty
/// state (if any) last is used with its own numbering. Anything else is
/// first minimized into that shape (see [`quotient_numbering`]).
pub fn transition_semigroup(d: &Dfa) -> Result<TransitionSemigroup> {
    transition_semigroup_with(d, DEFAULT_MAX_ELEMENTS, Exec::default())
}

pub fn transition_semigroup_with(d: &Dfa, max_elements: usize, exec: Exec) -> Result<TransitionSemigroup> {
    let d = in_quotient_form(d);
    let gens: Vec<NamedTransformation> = d
        .alphabet()
        .iter()
        .zip(d.transformations())
        .map(|(c, t)| NamedTransformation::new(c.to_string(), t.clone()))
        .collect();
    generate_with(d.states(), &gens, max_elements, exec)
}

/// `d` itself when it already has quotient numbering, otherwise its
/// minimized quotient-numbered form.
pub fn in_quotient_form(d: &Dfa) -> Dfa {
    let n = d.states();
    let empty = d.empty_states();
    let sink_ok = empty.is_empty() || (empty.len() == 1 && empty.contains(n - 1));
    if d.initial() == 0 && sink_ok && is_minimal(d) {
        d.clone()
    } else {
        quotient_numbering(d)
    }
}

/// Syntactic complexity: size of the transition semigroup of the minimal
/// DFA.
pub fn syntactic_complexity(d: &Dfa) -> Result<usize> {
    transition_semigroup(d).map(|s| s.len())
}

/// Unordered pair of distinct middle states, stored with `p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatePair {
    pub p: usize,
    pub q: usize,
}

impl StatePair {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a state pair needs distinct states");
        Self { p: a.min(b), q: a.max(b) }
    }
}

impl fmt::Display for StatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// All `C(n-2, 2)` pairs of middle states.
pub fn all_middle_pairs(n: usize) -> BTreeSet<StatePair> {
    let mut out = BTreeSet::new();
    for p in 1..n.saturating_sub(1) {
        for q in p + 1..n - 1 {
            out.insert(StatePair::new(p, q));
        }
    }
    out
}

/// Pairs `{p, q}` such that some element sends 0 to `p` and some middle
/// state to `q`.
pub fn colliding_pairs(s: &TransitionSemigroup) -> BTreeSet<StatePair> {
    colliding_pairs_of(s.degree(), s.elements())
}

pub fn colliding_pairs_of(n: usize, elements: &[Transformation]) -> BTreeSet<StatePair> {
    let mut out = BTreeSet::new();
    if n < 4 {
        return out;
    }
    let sink = n - 1;
    for t in elements {
        let p = t.apply(0);
        if p == 0 || p == sink {
            continue;
        }
        for r in 1..sink {
            let q = t.apply(r);
            if q != 0 && q != sink && q != p {
                out.insert(StatePair::new(p, q));
            }
        }
    }
    out
}

/// Pairs of middle states mapped by some element to one common middle
/// state.
pub fn focused_pairs(s: &TransitionSemigroup) -> BTreeSet<StatePair> {
    focused_pairs_of(s.degree(), s.elements())
}

pub fn focused_pairs_of(n: usize, elements: &[Transformation]) -> BTreeSet<StatePair> {
    let mut out = BTreeSet::new();
    if n < 4 {
        return out;
    }
    let sink = n - 1;
    for u in elements {
        for p in 1..sink {
            let r = u.apply(p);
            if r == 0 || r == sink {
                continue;
            }
            for q in p + 1..sink {
                if u.apply(q) == r {
                    out.insert(StatePair::new(p, q));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{enumerate_class, vsf_generators, wsf_generators};

    fn t(image: &[usize]) -> Transformation {
        Transformation::from_slice(image)
    }

    #[test]
    fn single_generator_closure() {
        let s = generate(2, &[t(&[1, 1])]).unwrap();
        assert_eq!(s.elements(), &[t(&[1, 1])]);
    }

    #[test]
    fn named_generators_give_published_sizes() {
        assert_eq!(generate_named(4, &vsf_generators(4).unwrap()).unwrap().len(), 13);
        assert_eq!(generate_named(5, &wsf_generators(5).unwrap()).unwrap().len(), 67);
    }

    #[test]
    fn identity_letter_semigroup() {
        let d = Dfa::from_rows(2, &[('a', &[0, 1])], 0, &[0]).unwrap();
        // minimizes to one state; the identity is its only element
        assert_eq!(syntactic_complexity(&d).unwrap(), 1);
        let empty = Dfa::from_rows(1, &[('a', &[0])], 0, &[]).unwrap();
        assert_eq!(syntactic_complexity(&empty).unwrap(), 1);
    }

    #[test]
    fn degree_mismatch_and_budget() {
        assert!(matches!(generate(3, &[t(&[0, 0])]), Err(Error::DegreeMismatch { left: 3, right: 2 })));
        let gens = wsf_generators(6).unwrap();
        let err = generate_with(6, &gens, 100, Exec::Sequential).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn element_order_is_independent_of_exec() {
        let gens = wsf_generators(6).unwrap();
        let a = generate_with(6, &gens, DEFAULT_MAX_ELEMENTS, Exec::Sequential).unwrap();
        let b = generate_with(6, &gens, DEFAULT_MAX_ELEMENTS, Exec::Parallel).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn pairs_in_full_classes() {
        let vsf = enumerate_class(5, SuffixFreeClass::Vsf).unwrap().elements;
        let wsf = enumerate_class(5, SuffixFreeClass::Wsf).unwrap().elements;
        assert_eq!(colliding_pairs_of(5, &vsf), all_middle_pairs(5));
        assert!(focused_pairs_of(5, &vsf).is_empty());
        assert!(colliding_pairs_of(5, &wsf).is_empty());
        assert_eq!(focused_pairs_of(5, &wsf), all_middle_pairs(5));
        assert_eq!(all_middle_pairs(5).len(), 3);
    }

    #[test]
    fn trivial_pair_cases() {
        let kill0 = t(&[4, 1, 2, 3, 4]);
        assert!(colliding_pairs_of(5, &[kill0]).is_empty());
        assert!(focused_pairs_of(4, &[]).is_empty());
        let s = generate(4, &[]).unwrap();
        assert!(s.is_empty());
        assert!(focused_pairs(&s).is_empty());
    }

    #[test]
    fn subsemigroup_checks() {
        let id = generate(4, &[Transformation::identity(4)]).unwrap();
        assert!(!id.is_subsemigroup_of(SuffixFreeClass::Bsf));
    }
}
