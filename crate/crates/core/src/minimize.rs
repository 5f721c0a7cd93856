//! Hopcroft partition refinement and canonical numbering.

use std::collections::VecDeque;

use crate::dfa::{same_letters, Dfa};
use crate::state_set::StateSet;
use crate::transformation::Transformation;

/// Renumbers the reachable part of `d` breadth first from the initial
/// state, scanning letters in alphabet order. Unreachable states are
/// dropped.
pub fn canonical(d: &Dfa) -> Dfa {
    let mut order = vec![usize::MAX; d.states()];
    let mut visit = vec![d.initial()];
    order[d.initial()] = 0;
    let mut head = 0;
    while head < visit.len() {
        let q = visit[head];
        head += 1;
        for t in d.transformations() {
            let p = t.apply(q);
            if order[p] == usize::MAX {
                order[p] = visit.len();
                visit.push(p);
            }
        }
    }
    let delta = d
        .transformations()
        .iter()
        .map(|t| {
            let image = visit.iter().map(|&q| order[t.apply(q)] as u32).collect();
            Transformation::new(image).expect("closed under transitions")
        })
        .collect();
    let finals = visit.iter().enumerate().filter(|&(_, &q)| d.is_final(q)).map(|(i, _)| i).collect();
    Dfa::new(visit.len(), d.alphabet().to_vec(), delta, 0, finals).expect("valid renumbering")
}

/// Coarsest partition of the states of `d` into language-equivalence
/// classes. Returns `class[q]` for every state.
pub fn equivalence_classes(d: &Dfa) -> Vec<usize> {
    let n = d.states();
    let k = d.alphabet().len();
    let mut inv: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for (c, t) in d.transformations().iter().enumerate() {
        for q in 0..n {
            inv[c][t.apply(q)].push(q);
        }
    }

    let (fin, non): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| d.is_final(q));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0usize; n];
    for part in [fin, non] {
        if !part.is_empty() {
            for &q in &part {
                block_of[q] = blocks.len();
            }
            blocks.push(part);
        }
    }

    let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
    let mut work: Vec<(usize, usize)> = Vec::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        for (c, p) in pending[smaller].iter_mut().enumerate() {
            work.push((smaller, c));
            *p = true;
        }
    }

    let mut marked = vec![false; n];
    let mut marked_count: Vec<usize> = vec![0; blocks.len()];
    while let Some((splitter, c)) = work.pop() {
        pending[splitter][c] = false;
        let mut touched = Vec::new();
        for &q in &blocks[splitter] {
            for &p in &inv[c][q] {
                if !marked[p] {
                    marked[p] = true;
                    let b = block_of[p];
                    if marked_count[b] == 0 {
                        touched.push(b);
                    }
                    marked_count[b] += 1;
                }
            }
        }
        for b in touched {
            let hit = marked_count[b];
            marked_count[b] = 0;
            if hit == blocks[b].len() {
                for &q in &blocks[b] {
                    marked[q] = false;
                }
                continue;
            }
            let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[b].iter().partition(|&&q| marked[q]);
            for &q in &inside {
                marked[q] = false;
            }
            let fresh = blocks.len();
            for &q in &inside {
                block_of[q] = fresh;
            }
            let (old_len, new_len) = (outside.len(), inside.len());
            blocks[b] = outside;
            blocks.push(inside);
            pending.push(vec![false; k]);
            marked_count.push(0);
            #[allow(clippy::needless_range_loop)]
            for letter in 0..k {
                if pending[b][letter] {
                    pending[fresh][letter] = true;
                    work.push((fresh, letter));
                } else {
                    let pick = if new_len <= old_len { fresh } else { b };
                    pending[pick][letter] = true;
                    work.push((pick, letter));
                }
            }
        }
    }
    block_of
}

/// Minimal complete DFA for the language of `d`, canonically numbered.
pub fn minimize(d: &Dfa) -> Dfa {
    let reach = canonical(d);
    let class = equivalence_classes(&reach);
    let blocks = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; blocks];
    for (q, &b) in class.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = q;
        }
    }
    let delta = reach
        .transformations()
        .iter()
        .map(|t| {
            let image = rep.iter().map(|&q| class[t.apply(q)] as u32).collect();
            Transformation::new(image).expect("quotient map")
        })
        .collect();
    let finals: StateSet = rep.iter().enumerate().filter(|&(_, &q)| reach.is_final(q)).map(|(b, _)| b).collect();
    let quotient =
        Dfa::new(blocks, reach.alphabet().to_vec(), delta, class[reach.initial()], finals).expect("valid quotient");
    canonical(&quotient)
}

/// Number of left quotients, i.e. states of the minimal complete DFA.
pub fn quotient_complexity(d: &Dfa) -> usize {
    let reach = canonical(d);
    let class = equivalence_classes(&reach);
    class.iter().copied().max().map_or(0, |m| m + 1)
}

pub fn is_minimal(d: &Dfa) -> bool {
    quotient_complexity(d) == d.states()
}

/// True iff both automata accept the same language. Alphabets must agree
/// as sets; otherwise the answer is `false`.
pub fn is_isomorphic(d1: &Dfa, d2: &Dfa) -> bool {
    if !same_letters(d1.alphabet(), d2.alphabet()) {
        return false;
    }
    let d2 = d2.with_alphabet_order(d1.alphabet()).expect("same letters");
    minimize(d1) == minimize(&d2)
}

/// Minimal DFA numbered the way quotient DFAs are written: the initial
/// state is 0, the empty state (if any) is last, and the remaining states
/// keep their canonical breadth-first order.
pub fn quotient_numbering(d: &Dfa) -> Dfa {
    let m = minimize(d);
    let empty = m.empty_states();
    let Some(sink) = empty.min() else { return m };
    let n = m.states();
    if sink == 0 || sink == n - 1 {
        return m;
    }
    let perm: Vec<usize> = (0..n)
        .map(|q| match q.cmp(&sink) {
            std::cmp::Ordering::Less => q,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => q - 1,
        })
        .collect();
    m.relabel(&perm).expect("permutation")
}

/// Breadth-first search for a shortest word leading from the initial state
/// into `targets`.
pub fn shortest_word_to(d: &Dfa, targets: &StateSet) -> Option<String> {
    let mut parent: Vec<Option<(usize, char)>> = vec![None; d.states()];
    let mut seen = StateSet::singleton(d.initial());
    let mut queue = VecDeque::from([d.initial()]);
    while let Some(q) = queue.pop_front() {
        if targets.contains(q) {
            let mut word = Vec::new();
            let mut cur = q;
            while let Some((p, c)) = parent[cur] {
                word.push(c);
                cur = p;
            }
            return Some(word.into_iter().rev().collect());
        }
        for (i, &c) in d.alphabet().iter().enumerate() {
            let p = d.step(q, i);
            if seen.insert(p) {
                parent[p] = Some((q, c));
                queue.push_back(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_final_rows_collapse() {
        let d = Dfa::from_rows(2, &[('a', &[1, 0])], 0, &[0, 1]).unwrap();
        assert_eq!(minimize(&d).states(), 1);
    }

    #[test]
    fn empty_language_has_complexity_one() {
        let d = Dfa::from_rows(1, &[('a', &[0])], 0, &[]).unwrap();
        assert_eq!(quotient_complexity(&d), 1);
    }

    #[test]
    fn renumbering_is_undone_by_canonicalization() {
        // a*b over {a,b} plus a sink, deliberately scrambled
        let d = Dfa::from_rows(3, &[('a', &[0, 0, 2]), ('b', &[0, 0, 1])], 2, &[1]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.states(), 3);
        assert_eq!(m.initial(), 0);
        let scrambled = m.relabel(&[1, 2, 0]).unwrap();
        assert!(is_isomorphic(&m, &scrambled));
        assert_eq!(minimize(&scrambled), m);
    }

    #[test]
    fn alphabet_mismatch_is_not_isomorphic() {
        let a = Dfa::from_rows(1, &[('a', &[0])], 0, &[0]).unwrap();
        let b = Dfa::from_rows(1, &[('b', &[0])], 0, &[0]).unwrap();
        assert!(!is_isomorphic(&a, &b));
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let d = Dfa::from_rows(3, &[('a', &[0, 2, 1])], 0, &[1]).unwrap();
        assert_eq!(minimize(&d).states(), 1);
        assert!(!is_minimal(&d));
    }

    #[test]
    fn quotient_numbering_moves_sink_last() {
        // words "ab": canonical order is 0, sink, 1, 2 because 'a' from 0
        // is scanned before... build so sink appears early
        let d = Dfa::from_rows(4, &[('a', &[1, 3, 3, 3]), ('b', &[3, 2, 3, 3])], 0, &[2]).unwrap();
        let q = quotient_numbering(&d);
        assert_eq!(q.empty_states().to_vec(), vec![3]);
        assert!(is_isomorphic(&q, &d));
        assert!(q.accepts("ab"));
    }

    #[test]
    fn shortest_word() {
        let d = Dfa::from_rows(4, &[('a', &[1, 3, 3, 3]), ('b', &[3, 2, 3, 3])], 0, &[2]).unwrap();
        assert_eq!(shortest_word_to(&d, d.finals()).as_deref(), Some("ab"));
        assert_eq!(shortest_word_to(&d, &StateSet::new()), None);
    }
}
