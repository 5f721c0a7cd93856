use std::collections::{HashMap, VecDeque};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::state_set::StateSet;
use crate::transformation::Transformation;

/// Nondeterministic automaton with optional empty-word transitions.
#[derive(Clone, Debug)]
pub struct Nfa {
    states: usize,
    alphabet: Vec<char>,
    /// `succ[letter][state]`
    succ: Vec<Vec<StateSet>>,
    eps: Vec<StateSet>,
    initials: StateSet,
    finals: StateSet,
}

impl Nfa {
    pub fn new(states: usize, alphabet: Vec<char>) -> Self {
        let succ = vec![vec![StateSet::new(); states]; alphabet.len()];
        Self {
            states,
            alphabet,
            succ,
            eps: vec![StateSet::new(); states],
            initials: StateSet::new(),
            finals: StateSet::new(),
        }
    }

    /// Wraps a DFA as a one-initial-state NFA.
    pub fn from_dfa(d: &Dfa) -> Self {
        let mut n = Nfa::new(d.states(), d.alphabet().to_vec());
        for (i, t) in d.transformations().iter().enumerate() {
            for q in 0..d.states() {
                n.succ[i][q].insert(t.apply(q));
            }
        }
        n.initials.insert(d.initial());
        n.finals = d.finals().clone();
        n
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Adds `p --letter--> q`; `None` is the empty word.
    pub fn add_transition(&mut self, p: usize, letter: Option<char>, q: usize) -> Result<()> {
        if p >= self.states || q >= self.states {
            return Err(Error::InvalidAutomaton(format!("transition {p} -> {q} out of range")));
        }
        match letter {
            None => {
                self.eps[p].insert(q);
            }
            Some(c) => {
                let i = self.alphabet.iter().position(|&x| x == c).ok_or(Error::UnknownLetter(c))?;
                self.succ[i][p].insert(q);
            }
        }
        Ok(())
    }

    pub fn add_initial(&mut self, q: usize) {
        assert!(q < self.states);
        self.initials.insert(q);
    }

    pub fn add_final(&mut self, q: usize) {
        assert!(q < self.states);
        self.finals.insert(q);
    }

    pub fn set_final(&mut self, q: usize, value: bool) {
        if value {
            self.finals.insert(q);
        } else {
            self.finals.remove(q);
        }
    }

    pub fn initials(&self) -> &StateSet {
        &self.initials
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    /// All transitions as `(source, letter, target)`, letters before the
    /// empty word, in state order.
    pub fn transitions(&self) -> Vec<(usize, Option<char>, usize)> {
        let mut out = Vec::new();
        for (i, &c) in self.alphabet.iter().enumerate() {
            for p in 0..self.states {
                out.extend(self.succ[i][p].iter().map(|q| (p, Some(c), q)));
            }
        }
        for p in 0..self.states {
            out.extend(self.eps[p].iter().map(|q| (p, None, q)));
        }
        out
    }

    fn closures(&self) -> Vec<StateSet> {
        (0..self.states)
            .map(|q| {
                let mut seen = StateSet::singleton(q);
                let mut stack = vec![q];
                while let Some(p) = stack.pop() {
                    for r in self.eps[p].iter() {
                        if seen.insert(r) {
                            stack.push(r);
                        }
                    }
                }
                seen
            })
            .collect()
    }
}

fn close(set: &StateSet, closures: &[StateSet]) -> StateSet {
    let mut out = StateSet::new();
    for q in set.iter() {
        out.union_with(&closures[q]);
    }
    out
}

/// Subset construction over the reachable subsets.
pub fn determinize(nfa: &Nfa) -> Dfa {
    determinize_bounded(nfa, usize::MAX).expect("unbounded")
}

/// Subset construction that gives up once more than `max_states` subsets
/// have been discovered.
///
/// Result states are numbered in discovery order (breadth first, letters in
/// alphabet order). The empty subset, when reachable, stays as a non-final
/// sink.
pub fn determinize_bounded(nfa: &Nfa, max_states: usize) -> Result<Dfa> {
    determinize_with_subsets(nfa, max_states).map(|(d, _)| d)
}

/// Like [`determinize_bounded`], also returning the subset behind each
/// result state.
pub fn determinize_with_subsets(nfa: &Nfa, max_states: usize) -> Result<(Dfa, Vec<StateSet>)> {
    let closures = nfa.closures();
    let start = close(&nfa.initials, &closures);
    let mut index: HashMap<StateSet, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); nfa.alphabet.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for (i, row) in rows.iter_mut().enumerate() {
            let mut next = StateSet::new();
            for q in subsets[s].iter() {
                next.union_with(&nfa.succ[i][q]);
            }
            let next = close(&next, &closures);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    if id >= max_states {
                        return Err(Error::BudgetExceeded { what: "subset construction states", limit: max_states });
                    }
                    index.insert(next.clone(), id);
                    subsets.push(next);
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
    let n = subsets.len();
    let delta = rows
        .into_iter()
        .map(|mut row| {
            row.resize(n, 0);
            Transformation::new(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let finals = (0..n).filter(|&s| subsets[s].intersects(&nfa.finals)).collect();
    let dfa = Dfa::new(n, nfa.alphabet.clone(), delta, 0, finals)?;
    Ok((dfa, subsets))
}
