#![allow(dead_code)]

use rand::Rng;

use sufree::{Dfa, StateSet, Transformation};

pub const LETTERS: [char; 3] = ['a', 'b', 'c'];

/// All words over `alphabet` of length `0..=max_len`.
pub fn words(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}"))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Number of quotients: reachable states grouped by their acceptance
/// vector over all words shorter than `n`, which separates any two
/// inequivalent states of an `n`-state DFA.
pub fn brute_force_quotients(d: &Dfa) -> usize {
    let ws = words(d.alphabet(), d.states().saturating_sub(1));
    let mut signatures: Vec<Vec<bool>> =
        d.reachable().iter().map(|q| ws.iter().map(|w| d.is_final(d.run_from(q, w).unwrap())).collect()).collect();
    signatures.sort();
    signatures.dedup();
    signatures.len()
}

/// One-state DFA accepting nothing.
pub fn empty_over(alphabet: &[char]) -> Dfa {
    let delta = alphabet.iter().map(|_| Transformation::identity(1)).collect();
    Dfa::new(1, alphabet.to_vec(), delta, 0, StateSet::new()).unwrap()
}

/// Uniform DFA with `1..=max_states` states over `min_letters..=max_letters` letters.
pub fn random_dfa<R: Rng>(rng: &mut R, max_states: usize, min_letters: usize, max_letters: usize) -> Dfa {
    let n = rng.random_range(1..=max_states);
    let k = rng.random_range(min_letters..=max_letters);
    let delta = (0..k)
        .map(|_| Transformation::from_slice(&(0..n).map(|_| rng.random_range(0..n)).collect::<Vec<_>>()))
        .collect();
    let finals: StateSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    Dfa::new(n, LETTERS[..k].to_vec(), delta, rng.random_range(0..n), finals).unwrap()
}

pub fn random_transformation<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    Transformation::from_slice(&(0..n).map(|_| rng.random_range(0..n)).collect::<Vec<_>>())
}
