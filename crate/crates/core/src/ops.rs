//! Regular operations on DFAs: star, product, reversal, the boolean
//! operations, permutational dialects, and the suffix-freeness decision.
//!
//! Every operation builds an (epsilon-)NFA or a direct product, runs the
//! reachable construction, and returns the minimal canonical DFA together
//! with the raw reachable state count.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classes::in_bsf;
use crate::dfa::{same_letters, Dfa};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::minimize::{minimize, shortest_word_to};
use crate::nfa::{determinize_bounded, Nfa};
use crate::semigroup::transition_semigroup_with;
use crate::state_set::StateSet;
use crate::transformation::Transformation;

/// Result of an operation before and after minimization.
#[derive(Debug, Clone)]
pub struct Construction {
    /// Reachable states of the subset or product construction.
    pub raw_states: usize,
    /// Minimal canonical DFA of the result.
    pub dfa: Dfa,
}

impl Construction {
    fn from_raw(raw: Dfa) -> Self {
        Self { raw_states: raw.states(), dfa: minimize(&raw) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BooleanOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl BooleanOp {
    pub const ALL: [BooleanOp; 4] = [Self::Union, Self::Intersection, Self::Difference, Self::SymmetricDifference];

    pub fn eval(self, left: bool, right: bool) -> bool {
        match self {
            Self::Union => left || right,
            Self::Intersection => left && right,
            Self::Difference => left && !right,
            Self::SymmetricDifference => left != right,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Union => "union",
            Self::Intersection => "intersection",
            Self::Difference => "difference",
            Self::SymmetricDifference => "symmetric-difference",
        }
    }
}

impl fmt::Display for BooleanOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BooleanOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown boolean operation {s:?}")))
    }
}

/// Partial permutation of an ordered alphabet: role letter `a_i` is
/// replaced by `image(a_i)`, or dropped when the image is undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPermutation {
    source: Vec<char>,
    images: Vec<Option<char>>,
}

impl PartialPermutation {
    pub fn new(source: Vec<char>, images: Vec<Option<char>>) -> Result<Self> {
        if source.len() != images.len() {
            return Err(Error::InvalidDialect(format!(
                "{} images for an alphabet of {} letters",
                images.len(),
                source.len()
            )));
        }
        let defined: Vec<char> = images.iter().flatten().copied().collect();
        for (i, c) in defined.iter().enumerate() {
            if !source.contains(c) {
                return Err(Error::InvalidDialect(format!("image {c:?} is not in the alphabet")));
            }
            if defined[..i].contains(c) {
                return Err(Error::InvalidDialect(format!("letter {c:?} is used twice")));
            }
        }
        Ok(Self { source, images })
    }

    pub fn identity(source: &[char]) -> Self {
        Self { source: source.to_vec(), images: source.iter().map(|&c| Some(c)).collect() }
    }

    /// Parses the comma notation, e.g. `a,b,-,d,e`. Missing trailing
    /// entries are undefined.
    pub fn parse(source: &[char], text: &str) -> Result<Self> {
        let mut images = Vec::new();
        for item in text.split(',') {
            let item = item.trim();
            let mut cs = item.chars();
            match (cs.next(), cs.next()) {
                (Some('-'), None) => images.push(None),
                (Some(c), None) => images.push(Some(c)),
                _ => return Err(Error::InvalidDialect(format!("bad entry {item:?} in {text:?}"))),
            }
        }
        if images.len() > source.len() {
            return Err(Error::InvalidDialect(format!("{text:?} has more entries than the alphabet {source:?}")));
        }
        images.resize(source.len(), None);
        Self::new(source.to_vec(), images)
    }

    pub fn source(&self) -> &[char] {
        &self.source
    }

    pub fn images(&self) -> &[Option<char>] {
        &self.images
    }

    pub fn image(&self, c: char) -> Option<char> {
        self.source.iter().position(|&x| x == c).and_then(|i| self.images[i])
    }
}

impl fmt::Display for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|c| c.map_or("-".to_string(), |c| c.to_string())).collect();
        f.write_str(&parts.join(","))
    }
}

/// The dialect of `d` under `pi`. No minimization is applied.
pub fn apply_dialect(d: &Dfa, pi: &PartialPermutation) -> Result<Dfa> {
    if pi.source() != d.alphabet() {
        return Err(Error::InvalidDialect(format!(
            "dialect is over {:?} but the automaton is over {:?}",
            pi.source(),
            d.alphabet()
        )));
    }
    let mut alphabet = Vec::new();
    let mut delta = Vec::new();
    for (t, image) in d.transformations().iter().zip(pi.images()) {
        if let Some(c) = image {
            alphabet.push(*c);
            delta.push(t.clone());
        }
    }
    Dfa::new(d.states(), alphabet, delta, d.initial(), d.finals().clone())
}

fn has_incoming(d: &Dfa, q: usize) -> bool {
    d.transformations().iter().any(|t| t.image().iter().any(|&p| p as usize == q))
}

/// Epsilon-NFA for the star. For a DFA whose initial state has no incoming
/// transitions the initial state is made final and every final state gets
/// an empty-word transition back to it; otherwise a fresh final initial
/// state is added in front.
pub fn star_nfa(d: &Dfa) -> Nfa {
    let fresh = has_incoming(d, d.initial());
    let n = d.states() + usize::from(fresh);
    let mut nfa = Nfa::new(n, d.alphabet().to_vec());
    copy_transitions(&mut nfa, d, 0);
    for q in d.finals().iter() {
        nfa.add_final(q);
        nfa.add_transition(q, None, d.initial()).unwrap();
    }
    if fresh {
        let s = d.states();
        nfa.add_initial(s);
        nfa.add_final(s);
        nfa.add_transition(s, None, d.initial()).unwrap();
    } else {
        nfa.add_initial(d.initial());
        nfa.add_final(d.initial());
    }
    nfa
}

fn copy_transitions(nfa: &mut Nfa, d: &Dfa, offset: usize) {
    for (&c, t) in d.alphabet().iter().zip(d.transformations()) {
        for q in 0..d.states() {
            nfa.add_transition(q + offset, Some(c), t.apply(q) + offset).unwrap();
        }
    }
}

pub fn star(d: &Dfa) -> Dfa {
    star_with(d, &Limits::default()).expect("default limits").dfa
}

pub fn star_with(d: &Dfa, limits: &Limits) -> Result<Construction> {
    let raw = determinize_bounded(&star_nfa(d), limits.max_states)?;
    Ok(Construction::from_raw(raw))
}

fn check_alphabets(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    if !same_letters(d1.alphabet(), d2.alphabet()) {
        return Err(Error::AlphabetMismatch { left: d1.alphabet().to_vec(), right: d2.alphabet().to_vec() });
    }
    d2.with_alphabet_order(d1.alphabet())
}

/// Epsilon-NFA for `L(d1) L(d2)`: the final states of `d1` become
/// non-final and get an empty-word transition to the initial state of
/// `d2`. States of `d2` are shifted by `d1.states()`.
pub fn concat_nfa(d1: &Dfa, d2: &Dfa) -> Result<Nfa> {
    let d2 = check_alphabets(d1, d2)?;
    let offset = d1.states();
    let mut nfa = Nfa::new(offset + d2.states(), d1.alphabet().to_vec());
    copy_transitions(&mut nfa, d1, 0);
    copy_transitions(&mut nfa, &d2, offset);
    nfa.add_initial(d1.initial());
    for q in d1.finals().iter() {
        nfa.add_transition(q, None, d2.initial() + offset)?;
    }
    for q in d2.finals().iter() {
        nfa.add_final(q + offset);
    }
    Ok(nfa)
}

pub fn concat(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    concat_with(d1, d2, &Limits::default()).map(|c| c.dfa)
}

pub fn concat_with(d1: &Dfa, d2: &Dfa, limits: &Limits) -> Result<Construction> {
    let raw = determinize_bounded(&concat_nfa(d1, d2)?, limits.max_states)?;
    Ok(Construction::from_raw(raw))
}

/// NFA for the reversal: transitions reversed, initial and final states
/// exchanged.
pub fn reverse_nfa(d: &Dfa) -> Nfa {
    let mut nfa = Nfa::new(d.states(), d.alphabet().to_vec());
    for (&c, t) in d.alphabet().iter().zip(d.transformations()) {
        for q in 0..d.states() {
            nfa.add_transition(t.apply(q), Some(c), q).unwrap();
        }
    }
    for q in d.finals().iter() {
        nfa.add_initial(q);
    }
    nfa.add_final(d.initial());
    nfa
}

pub fn reverse(d: &Dfa) -> Dfa {
    reverse_with(d, &Limits::default()).expect("default limits").dfa
}

pub fn reverse_with(d: &Dfa, limits: &Limits) -> Result<Construction> {
    let raw = determinize_bounded(&reverse_nfa(d), limits.max_states)?;
    Ok(Construction::from_raw(raw))
}

/// Reachable direct product of `d1` and `d2`; a pair is final when
/// `accept(final1, final2)` holds. States are numbered breadth first.
pub fn product_raw<F>(d1: &Dfa, d2: &Dfa, max_states: usize, accept: F) -> Result<Dfa>
where
    F: Fn(bool, bool) -> bool,
{
    let d2 = check_alphabets(d1, d2)?;
    let k = d1.alphabet().len();
    let start = (d1.initial(), d2.initial());
    let mut index = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let (p, q) = pairs[s];
        for (letter, row) in rows.iter_mut().enumerate() {
            let next = (d1.step(p, letter), d2.step(q, letter));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = pairs.len();
                    if id >= max_states {
                        return Err(Error::BudgetExceeded { what: "product construction states", limit: max_states });
                    }
                    index.insert(next, id);
                    pairs.push(next);
                    queue.push_back(id);
                    id
                }
            };
            if row.len() <= s {
                row.resize(s + 1, 0);
            }
            row[s] = id as u32;
        }
    }
    let n = pairs.len();
    let delta = rows
        .into_iter()
        .map(|mut row| {
            row.resize(n, 0);
            Transformation::new(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: StateSet = (0..n).filter(|&s| accept(d1.is_final(pairs[s].0), d2.is_final(pairs[s].1))).collect();
    Dfa::new(n, d1.alphabet().to_vec(), delta, 0, finals)
}

pub fn boolean(d1: &Dfa, d2: &Dfa, op: BooleanOp) -> Result<Dfa> {
    boolean_with(d1, d2, op, &Limits::default()).map(|c| c.dfa)
}

pub fn boolean_with(d1: &Dfa, d2: &Dfa, op: BooleanOp, limits: &Limits) -> Result<Construction> {
    let raw = product_raw(d1, d2, limits.max_states, |a, b| op.eval(a, b))?;
    Ok(Construction::from_raw(raw))
}

/// NFA for `Sigma+ L(d)`: two fresh states read one or more letters, then
/// an empty-word transition enters `d`.
fn nonempty_prefix_nfa(d: &Dfa) -> Nfa {
    let n = d.states();
    let (u0, u1) = (n, n + 1);
    let mut nfa = Nfa::new(n + 2, d.alphabet().to_vec());
    copy_transitions(&mut nfa, d, 0);
    for &c in d.alphabet() {
        nfa.add_transition(u0, Some(c), u1).unwrap();
        nfa.add_transition(u1, Some(c), u1).unwrap();
    }
    nfa.add_transition(u1, None, d.initial()).unwrap();
    nfa.add_initial(u0);
    for q in d.finals().iter() {
        nfa.add_final(q);
    }
    nfa
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuffixFreeReport {
    /// No word of the language is a proper suffix of another word.
    pub suffix_free: bool,
    /// Whether the transition semigroup of the minimal DFA lies in
    /// `Bsf(n)`. Necessary for suffix-freeness; sufficient only for
    /// languages with a single final quotient and an empty quotient.
    pub semigroup_in_bsf: bool,
    /// Shortest word `w` of the language having a proper suffix in the
    /// language, with that suffix.
    pub violation: Option<(String, String)>,
}

pub fn is_suffix_free(d: &Dfa) -> bool {
    suffix_free_report(d).map(|r| r.suffix_free).unwrap_or(false)
}

/// Decides suffix-freeness by checking `L ∩ Sigma+ L = ∅` on the reachable
/// product of `d` with the determinized `Sigma+ L` automaton.
pub fn suffix_free_report(d: &Dfa) -> Result<SuffixFreeReport> {
    suffix_free_report_with(d, &Limits::default())
}

pub fn suffix_free_report_with(d: &Dfa, limits: &Limits) -> Result<SuffixFreeReport> {
    let shifted = determinize_bounded(&nonempty_prefix_nfa(d), limits.max_states)?;
    let both = product_raw(d, &shifted, limits.max_states, |a, b| a && b)?;
    let violation = shortest_word_to(&both, both.finals()).map(|w| {
        let chars: Vec<char> = w.chars().collect();
        let suffix = (1..=chars.len())
            .map(|k| chars[k..].iter().collect::<String>())
            .find(|s| d.accepts(s))
            .expect("a proper suffix is accepted");
        (w, suffix)
    });
    let semigroup = transition_semigroup_with(d, limits.max_elements, crate::exec::Exec::default())?;
    let semigroup_in_bsf = semigroup.degree() >= 2 && semigroup.elements().iter().all(in_bsf);
    Ok(SuffixFreeReport { suffix_free: violation.is_none(), semigroup_in_bsf, violation })
}
