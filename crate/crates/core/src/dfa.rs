//! Complete deterministic automata and the JSON interchange format.
//!
//! The interchange document looks like
//!
//! ```text
//! {
//!   "states": 3,
//!   "alphabet": ["a", "b"],
//!   "transitions": {
//!     "a": [1, 2, 2],
//!     "b": [2, 1, 2]
//!   },
//!   "initial": 0,
//!   "finals": [1]
//! }
//! ```
//!
//! `transitions` maps every letter to the image array of its
//! transformation. Output is deterministic (transition keys follow the
//! alphabet order), so documents written by [`Dfa::to_json`] re-serialize
//! byte for byte.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::state_set::StateSet;
use crate::transformation::Transformation;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dfa {
    states: usize,
    alphabet: Vec<char>,
    delta: Vec<Transformation>,
    initial: usize,
    finals: StateSet,
}

impl Dfa {
    pub fn new(
        states: usize,
        alphabet: Vec<char>,
        delta: Vec<Transformation>,
        initial: usize,
        finals: StateSet,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::InvalidAutomaton("at least one state is required".into()));
        }
        if alphabet.len() != delta.len() {
            return Err(Error::InvalidAutomaton(format!(
                "{} letters but {} transformations",
                alphabet.len(),
                delta.len()
            )));
        }
        for (i, &c) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(&c) {
                return Err(Error::InvalidAutomaton(format!("letter {c:?} repeated")));
            }
        }
        if let Some(t) = delta.iter().find(|t| t.degree() != states) {
            return Err(Error::DegreeMismatch { left: states, right: t.degree() });
        }
        if initial >= states {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        if let Some(q) = finals.iter().find(|&q| q >= states) {
            return Err(Error::InvalidAutomaton(format!("final state {q} out of range")));
        }
        Ok(Self { states, alphabet, delta, initial, finals })
    }

    /// Builds a DFA from `(letter, image)` rows.
    pub fn from_rows(states: usize, rows: &[(char, &[usize])], initial: usize, finals: &[usize]) -> Result<Self> {
        let mut alphabet = Vec::with_capacity(rows.len());
        let mut delta = Vec::with_capacity(rows.len());
        for &(c, image) in rows {
            alphabet.push(c);
            delta.push(Transformation::new(image.iter().map(|&q| q as u32).collect())?);
        }
        Self::new(states, alphabet, delta, initial, finals.iter().copied().collect())
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&x| x == c)
    }

    /// Transformations in alphabet order.
    pub fn transformations(&self) -> &[Transformation] {
        &self.delta
    }

    pub fn transformation(&self, c: char) -> Option<&Transformation> {
        self.letter_index(c).map(|i| &self.delta[i])
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(q)
    }

    #[inline]
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[letter].apply(q)
    }

    /// `delta_w` for a non-empty word.
    pub fn word_transformation(&self, word: &str) -> Result<Transformation> {
        let mut letters = word.chars();
        let first = letters.next().ok_or(Error::EmptyWord)?;
        let mut t = self.transformation(first).ok_or(Error::UnknownLetter(first))?.clone();
        for c in letters {
            t = t.then(self.transformation(c).ok_or(Error::UnknownLetter(c))?);
        }
        Ok(t)
    }

    /// State reached from `q` on `word`, or `None` on an unknown letter.
    pub fn run_from(&self, q: usize, word: &str) -> Option<usize> {
        word.chars().try_fold(q, |q, c| self.letter_index(c).map(|i| self.step(q, i)))
    }

    pub fn accepts(&self, word: &str) -> bool {
        self.run_from(self.initial, word).is_some_and(|q| self.is_final(q))
    }

    pub fn with_initial(&self, q: usize) -> Result<Dfa> {
        Dfa::new(self.states, self.alphabet.clone(), self.delta.clone(), q, self.finals.clone())
    }

    pub fn with_finals(&self, finals: StateSet) -> Result<Dfa> {
        Dfa::new(self.states, self.alphabet.clone(), self.delta.clone(), self.initial, finals)
    }

    pub fn complement(&self) -> Dfa {
        Dfa { finals: self.finals.complement(self.states), ..self.clone() }
    }

    pub fn reachable(&self) -> StateSet {
        let mut seen = StateSet::singleton(self.initial);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for t in &self.delta {
                let p = t.apply(q);
                if seen.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// States whose language is empty.
    pub fn empty_states(&self) -> StateSet {
        let mut preds = vec![Vec::new(); self.states];
        for t in &self.delta {
            for q in 0..self.states {
                preds[t.apply(q)].push(q);
            }
        }
        let mut live = self.finals.clone();
        let mut queue: VecDeque<usize> = self.finals.iter().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if live.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        live.complement(self.states)
    }

    pub fn is_empty_language(&self) -> bool {
        self.empty_states().contains(self.initial)
    }

    /// Renumbers states: state `q` becomes `perm[q]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Dfa> {
        if perm.len() != self.states {
            return Err(Error::InvalidAutomaton("permutation has the wrong length".into()));
        }
        let mut inverse = vec![usize::MAX; self.states];
        for (q, &p) in perm.iter().enumerate() {
            if p >= self.states || inverse[p] != usize::MAX {
                return Err(Error::InvalidAutomaton("not a permutation of the states".into()));
            }
            inverse[p] = q;
        }
        let delta = self
            .delta
            .iter()
            .map(|t| {
                let image = (0..self.states).map(|p| perm[t.apply(inverse[p])] as u32).collect();
                Transformation::new(image)
            })
            .collect::<Result<Vec<_>>>()?;
        let finals = self.finals.iter().map(|q| perm[q]).collect();
        Dfa::new(self.states, self.alphabet.clone(), delta, perm[self.initial], finals)
    }

    /// Reorders the alphabet (same letter set).
    pub fn with_alphabet_order(&self, order: &[char]) -> Result<Dfa> {
        if !same_letters(&self.alphabet, order) {
            return Err(Error::AlphabetMismatch { left: self.alphabet.clone(), right: order.to_vec() });
        }
        let delta = order.iter().map(|&c| self.transformation(c).unwrap().clone()).collect();
        Dfa::new(self.states, order.to_vec(), delta, self.initial, self.finals.clone())
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let quoted = |c: char| serde_json::to_string(&c.to_string()).unwrap();
        let ints = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        writeln!(out, "{{").unwrap();
        writeln!(out, "  \"states\": {},", self.states).unwrap();
        let letters: Vec<String> = self.alphabet.iter().map(|&c| quoted(c)).collect();
        writeln!(out, "  \"alphabet\": [{}],", letters.join(", ")).unwrap();
        if self.alphabet.is_empty() {
            writeln!(out, "  \"transitions\": {{}},").unwrap();
        } else {
            writeln!(out, "  \"transitions\": {{").unwrap();
            for (i, (&c, t)) in self.alphabet.iter().zip(&self.delta).enumerate() {
                let sep = if i + 1 == self.alphabet.len() { "" } else { "," };
                let row = ints(&mut t.image().iter().map(|&q| q as usize));
                writeln!(out, "    {}: [{}]{}", quoted(c), row, sep).unwrap();
            }
            writeln!(out, "  }},").unwrap();
        }
        writeln!(out, "  \"initial\": {},", self.initial).unwrap();
        writeln!(out, "  \"finals\": [{}]", ints(&mut self.finals.iter())).unwrap();
        writeln!(out, "}}").unwrap();
        out
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        let doc: DfaDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut alphabet = Vec::with_capacity(doc.alphabet.len());
        for s in &doc.alphabet {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => return Err(Error::Parse(format!("letter {s:?} is not a single character"))),
            }
        }
        if doc.transitions.len() != alphabet.len() {
            return Err(Error::Parse("transitions must list exactly the alphabet".into()));
        }
        let mut delta = Vec::with_capacity(alphabet.len());
        for c in &alphabet {
            let row = doc
                .transitions
                .get(&c.to_string())
                .ok_or_else(|| Error::Parse(format!("missing transitions for {c:?}")))?;
            if row.len() != doc.states {
                return Err(Error::Parse(format!("row for {c:?} has {} entries", row.len())));
            }
            delta.push(Transformation::new(row.iter().map(|&q| q as u32).collect())?);
        }
        let mut finals = doc.finals.clone();
        finals.sort_unstable();
        finals.dedup();
        Dfa::new(doc.states, alphabet, delta, doc.initial, finals.into_iter().collect())
    }

    /// Plain Graphviz dump.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.states {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            writeln!(out, "  {q} [shape={shape}];").unwrap();
        }
        writeln!(out, "  start -> {};", self.initial).unwrap();
        for q in 0..self.states {
            let mut by_target: BTreeMap<usize, Vec<char>> = BTreeMap::new();
            for (&c, t) in self.alphabet.iter().zip(&self.delta) {
                by_target.entry(t.apply(q)).or_default().push(c);
            }
            for (p, letters) in by_target {
                let label: String = letters.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
                writeln!(out, "  {q} -> {p} [label=\"{label}\"];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn same_letters(a: &[char], b: &[char]) -> bool {
    a.len() == b.len() && a.iter().all(|c| b.contains(c))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaDocument {
    states: usize,
    alphabet: Vec<String>,
    transitions: BTreeMap<String, Vec<usize>>,
    initial: usize,
    finals: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Dfa {
        Dfa::from_rows(3, &[('a', &[1, 2, 2]), ('b', &[2, 1, 2])], 0, &[1]).unwrap()
    }

    #[test]
    fn validates_completeness() {
        assert!(Dfa::from_rows(2, &[('a', &[0, 1, 1])], 0, &[]).is_err());
        assert!(Dfa::from_rows(2, &[('a', &[0, 1]), ('a', &[1, 1])], 0, &[]).is_err());
        assert!(Dfa::from_rows(2, &[('a', &[0, 1])], 2, &[]).is_err());
        assert!(Dfa::from_rows(2, &[('a', &[0, 1])], 0, &[5]).is_err());
    }

    #[test]
    fn single_letter_word_is_the_letter() {
        let d = sample();
        assert_eq!(&d.word_transformation("a").unwrap(), d.transformation('a').unwrap());
        assert_eq!(d.word_transformation(""), Err(Error::EmptyWord));
        assert_eq!(d.word_transformation("ax"), Err(Error::UnknownLetter('x')));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let d = sample();
        let text = d.to_json();
        let back = Dfa::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_accepts_any_key_order() {
        let text = r#"{"finals":[1],"initial":0,"transitions":{"b":[2,1,2],"a":[1,2,2]},
                       "alphabet":["a","b"],"states":3}"#;
        assert_eq!(Dfa::from_json(text).unwrap(), sample());
        assert!(Dfa::from_json(r#"{"states":1,"alphabet":["ab"],"transitions":{"ab":[0]},"initial":0,"finals":[]}"#)
            .is_err());
    }

    #[test]
    fn empty_states_and_acceptance() {
        let d = sample();
        assert_eq!(d.empty_states().to_vec(), vec![2]);
        assert!(d.accepts("a"));
        assert!(!d.accepts("aa"));
        assert!(!d.accepts("bbbb"));
        assert!(!d.is_empty_language());
    }

    #[test]
    fn relabel_preserves_language() {
        let d = sample();
        let r = d.relabel(&[2, 0, 1]).unwrap();
        for w in ["", "a", "b", "ab", "ba", "aa"] {
            assert_eq!(d.accepts(w), r.accepts(w));
        }
        assert!(d.relabel(&[0, 0, 1]).is_err());
    }
}
