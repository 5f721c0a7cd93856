//! Atoms: atomic intersections of quotients, their DFAs, and the
//! suffix-free bound on their complexity.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::minimize::{is_minimal, minimize, quotient_complexity};
use crate::ops::is_suffix_free;
use crate::state_set::StateSet;
use crate::transformation::Transformation;

pub use crate::semigroup::syntactic_complexity;

/// Largest automaton whose atom bases are swept exhaustively.
pub const MAX_ATOM_SWEEP_STATES: usize = 20;

/// Set `S` of states naming the atomic intersection
/// `∩_{q in S} K_q ∩ ∩_{q not in S} complement(K_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AtomBasis(Vec<usize>);

impl AtomBasis {
    pub fn new<I: IntoIterator<Item = usize>>(states: I) -> Self {
        let mut v: Vec<usize> = states.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::new((0..64).filter(|i| mask >> i & 1 == 1))
    }

    pub fn states(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_set(&self) -> StateSet {
        self.0.iter().copied().collect()
    }
}

impl fmt::Display for AtomBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// State of the atom DFA: a disjoint pair `(X, Y)` or the sink.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AtomState {
    Pair(StateSet, StateSet),
    Bottom,
}

impl AtomState {
    fn step(&self, t: &Transformation) -> AtomState {
        match self {
            AtomState::Pair(x, y) => {
                let (xa, ya) = (t.apply_set(x), t.apply_set(y));
                if xa.intersects(&ya) {
                    AtomState::Bottom
                } else {
                    AtomState::Pair(xa, ya)
                }
            }
            AtomState::Bottom => AtomState::Bottom,
        }
    }

    fn is_final(&self, finals: &StateSet) -> bool {
        match self {
            AtomState::Pair(x, y) => x.is_subset(finals) && !y.intersects(finals),
            AtomState::Bottom => false,
        }
    }
}

fn check_basis(d: &Dfa, basis: &AtomBasis) -> Result<()> {
    match basis.states().last() {
        Some(&q) if q >= d.states() => {
            Err(Error::OutOfRange(format!("basis state {q} in a {}-state automaton", d.states())))
        }
        _ => Ok(()),
    }
}

/// Reachable part of the atom DFA for `basis`, with its states in
/// discovery order. Initial state `(S, complement S)`.
pub fn atom_dfa_raw(d: &Dfa, basis: &AtomBasis) -> Result<(Dfa, Vec<AtomState>)> {
    check_basis(d, basis)?;
    let s = basis.to_set();
    let start = AtomState::Pair(s.clone(), s.complement(d.states()));
    let mut index = HashMap::from([(start.clone(), 0usize)]);
    let mut states = vec![start];
    let k = d.alphabet().len();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (letter, row) in rows.iter_mut().enumerate() {
            let next = states[i].step(&d.transformations()[letter]);
            let id = *index.entry(next.clone()).or_insert_with(|| {
                states.push(next);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            if row.len() <= i {
                row.resize(i + 1, 0);
            }
            row[i] = id as u32;
        }
    }
    let n = states.len();
    let delta = rows
        .into_iter()
        .map(|mut r| {
            r.resize(n, 0);
            Transformation::new(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: StateSet = (0..n).filter(|&i| states[i].is_final(d.finals())).collect();
    let dfa = Dfa::new(n, d.alphabet().to_vec(), delta, 0, finals)?;
    Ok((dfa, states))
}

/// Minimal DFA of the atomic intersection `A_S`.
pub fn atom_dfa(d: &Dfa, basis: &AtomBasis) -> Result<Dfa> {
    Ok(minimize(&atom_dfa_raw(d, basis)?.0))
}

/// Whether `A_S` is non-empty, by searching for a reachable final atom
/// state.
pub fn is_atom(d: &Dfa, basis: &AtomBasis) -> Result<bool> {
    check_basis(d, basis)?;
    let s = basis.to_set();
    let start = AtomState::Pair(s.clone(), s.complement(d.states()));
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state.is_final(d.finals()) {
            return Ok(true);
        }
        for t in d.transformations() {
            let next = state.step(t);
            if next != AtomState::Bottom && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

fn require_minimal(d: &Dfa) -> Result<()> {
    if !is_minimal(d) {
        return Err(Error::NotMinimal { states: d.states(), minimal: quotient_complexity(d) });
    }
    Ok(())
}

/// Candidate bases after pruning. Bases containing an empty state are
/// never atoms; for suffix-free languages neither are bases containing the
/// initial state together with another state.
fn candidate_bases(d: &Dfa) -> Vec<AtomBasis> {
    let n = d.states();
    let empty = d.empty_states();
    let empty_mask: u64 = empty.iter().map(|q| 1u64 << q).sum();
    let init = 1u64 << d.initial();
    let suffix_free = is_suffix_free(d);
    (0..1u64 << n)
        .filter(|&m| m & empty_mask == 0)
        .filter(|&m| !(suffix_free && m & init != 0 && m != init))
        .map(AtomBasis::from_mask)
        .collect()
}

/// All atom bases of the minimal DFA `d`, sorted by size and then
/// lexicographically.
pub fn atoms(d: &Dfa) -> Result<Vec<AtomBasis>> {
    atoms_with(d, Exec::default())
}

pub fn atoms_with(d: &Dfa, exec: Exec) -> Result<Vec<AtomBasis>> {
    if d.states() > MAX_ATOM_SWEEP_STATES {
        return Err(Error::BudgetExceeded { what: "atom sweep states", limit: MAX_ATOM_SWEEP_STATES });
    }
    require_minimal(d)?;
    let candidates = candidate_bases(d);
    let flags = exec.map(&candidates, |b| is_atom(d, b).expect("basis in range"));
    let mut out: Vec<AtomBasis> = candidates.into_iter().zip(flags).filter(|(_, f)| *f).map(|(b, _)| b).collect();
    sort_bases(&mut out);
    Ok(out)
}

fn sort_bases(v: &mut [AtomBasis]) {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Quotient complexity of the atom `A_S`.
pub fn atom_complexity(d: &Dfa, basis: &AtomBasis) -> Result<usize> {
    if !is_atom(d, basis)? {
        return Err(Error::NotAnAtom(basis.states().to_vec()));
    }
    Ok(atom_dfa(d, basis)?.states())
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Upper bound on the complexity of atom `A_S` of a suffix-free language
/// with `n >= 4` quotients, where state `n-1` is empty and 0 is initial:
/// `2^(n-2)+1` for `S = ∅`, `n` for `S = {0}`, and otherwise
/// `1 + Σ_{x=1}^{|S|} Σ_{y=0}^{n-2-|S|} C(n-2,x) C(n-2-x,y)`.
pub fn suffix_free_atom_bound(n: usize, basis: &AtomBasis) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("atom bound needs n >= 2, got {n}")));
    }
    let s = basis.states();
    if s.is_empty() {
        return Ok((BigUint::from(1u32) << (n - 2)) + 1u32);
    }
    if s == [0] {
        return Ok(BigUint::from(n));
    }
    if s.iter().any(|&q| q == 0 || q >= n - 1) {
        return Err(Error::NotAtomBasis(s.to_vec()));
    }
    Ok(middle_bound(n as u64, s.len() as u64))
}

fn middle_bound(n: u64, k: u64) -> BigUint {
    let mut total = BigUint::from(1u32);
    for x in 1..=k {
        for y in 0..=n - 2 - k {
            total += binomial(n - 2, x) * binomial(n - 2 - x, y);
        }
    }
    total
}

/// Atom bound for left ideals with `n` quotients and `S ∉ {∅, Q}`:
/// `1 + Σ_{x=1}^{|S|} Σ_{y=1}^{n-|S|} C(n-1,x) C(n-1-x,y-1)`. Evaluated at
/// `n-1` it coincides with the suffix-free middle-basis bound at `n`.
pub fn left_ideal_atom_bound(n: usize, size: usize) -> Result<BigUint> {
    if size == 0 || size >= n {
        return Err(Error::OutOfRange(format!("left ideal bound needs 0 < |S| < {n}, got {size}")));
    }
    let (n, k) = (n as u64, size as u64);
    let mut total = BigUint::from(1u32);
    for x in 1..=k {
        for y in 1..=n - k {
            total += binomial(n - 1, x) * binomial(n - 1 - x, y - 1);
        }
    }
    Ok(total)
}

/// Per-size maxima of the suffix-free atom bounds at `n >= 4`, indexed by
/// `|S|` from 0 to `n-2`.
pub fn suffix_free_bound_maxima(n: usize) -> Vec<BigUint> {
    (0..=n - 2)
        .map(|k| match k {
            0 => (BigUint::from(1u32) << (n - 2)) + 1u32,
            1 => middle_bound(n as u64, 1).max(BigUint::from(n)),
            k => middle_bound(n as u64, k as u64),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomRow {
    pub basis: AtomBasis,
    pub complexity: usize,
    pub bound: u64,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomTable {
    pub n: usize,
    pub rows: Vec<AtomRow>,
    /// Largest complexity for each basis size `0..=n-2`.
    pub maxima: Vec<usize>,
}

impl AtomTable {
    pub fn all_met(&self) -> bool {
        self.rows.iter().all(|r| r.met)
    }

    pub fn max(&self) -> usize {
        self.maxima.iter().copied().max().unwrap_or(0)
    }

    /// Rows as CSV with header `basis,complexity,bound,met`; the basis is
    /// written as space-separated states.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["basis", "complexity", "bound", "met"]).expect("in-memory write");
        for r in &self.rows {
            let basis: Vec<String> = r.basis.states().iter().map(usize::to_string).collect();
            w.write_record([basis.join(" "), r.complexity.to_string(), r.bound.to_string(), r.met.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

/// Complexity of every atom of a minimal suffix-free DFA with the
/// quotient numbering (0 initial, `n-1` empty), compared with the bound.
pub fn atom_table(d: &Dfa) -> Result<AtomTable> {
    atom_table_with(d, Exec::default())
}

pub fn atom_table_with(d: &Dfa, exec: Exec) -> Result<AtomTable> {
    let n = d.states();
    if n < 4 || d.initial() != 0 || d.empty_states().to_vec() != vec![n - 1] {
        return Err(Error::InvalidAutomaton("atom table needs n >= 4, initial state 0 and empty state n-1".into()));
    }
    let bases = atoms_with(d, exec)?;
    let rows = exec.map(&bases, |b| -> Result<AtomRow> {
        let complexity = atom_dfa(d, b)?.states();
        let bound = suffix_free_atom_bound(n, b)?;
        let bound = u64::try_from(bound).map_err(|_| Error::OutOfRange("bound exceeds u64".into()))?;
        Ok(AtomRow { basis: b.clone(), complexity, bound, met: complexity as u64 == bound })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut maxima = vec![0usize; n - 1];
    for r in &rows {
        let m = &mut maxima[r.basis.len()];
        *m = (*m).max(r.complexity);
    }
    Ok(AtomTable { n, rows, maxima })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::reverse;
    use crate::witnesses::d6;

    fn basis(s: &[usize]) -> AtomBasis {
        AtomBasis::new(s.iter().copied())
    }

    #[test]
    fn sigma_star_has_one_atom() {
        let d = Dfa::from_rows(1, &[('a', &[0])], 0, &[0]).unwrap();
        assert_eq!(atoms(&d).unwrap(), vec![basis(&[0])]);
    }

    #[test]
    fn d6_atom_examples() {
        let d = d6(5).unwrap();
        assert_eq!(atom_complexity(&d, &basis(&[0])).unwrap(), 5);
        assert_eq!(atom_complexity(&d, &basis(&[1, 2])).unwrap(), 16);
        assert!(matches!(atom_complexity(&d, &basis(&[0, 1])), Err(Error::NotAnAtom(_))));
        let d = d6(6).unwrap();
        assert_eq!(atom_complexity(&d, &basis(&[])).unwrap(), 17);
        assert_eq!(atoms(&d).unwrap().len(), 17);
        assert_eq!(quotient_complexity(&reverse(&d)), 17);
    }

    #[test]
    fn non_minimal_input_is_rejected() {
        let d = Dfa::from_rows(2, &[('a', &[1, 0])], 0, &[0, 1]).unwrap();
        assert!(matches!(atoms(&d), Err(Error::NotMinimal { states: 2, minimal: 1 })));
    }

    #[test]
    fn bound_values() {
        let b = |n, s: &[usize]| suffix_free_atom_bound(n, &basis(s)).unwrap();
        assert_eq!(b(5, &[1, 2]), BigUint::from(16u32));
        assert_eq!(b(4, &[1]), BigUint::from(5u32));
        assert_eq!(b(9, &[1, 2, 3, 4]), BigUint::from(1646u32));
        assert_eq!(b(6, &[0]), BigUint::from(6u32));
        assert_eq!(b(6, &[]), BigUint::from(17u32));
        assert!(matches!(suffix_free_atom_bound(6, &basis(&[0, 1])), Err(Error::NotAtomBasis(_))));
        assert!(matches!(suffix_free_atom_bound(6, &basis(&[5])), Err(Error::NotAtomBasis(_))));
    }

    #[test]
    fn bound_maxima_rows() {
        let row = |n| suffix_free_bound_maxima(n).into_iter().map(|x| u64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(row(4), vec![5, 5, 4]);
        assert_eq!(row(5), vec![9, 13, 16, 8]);
        assert_eq!(row(8), vec![65, 193, 427, 542, 462, 249, 64]);
        assert_eq!(row(9), vec![129, 449, 1114, 1611, 1646, 1205, 568, 128]);
    }

    #[test]
    fn left_ideal_shift_matches() {
        for n in 4..=12 {
            for k in 1..=n - 2 {
                assert_eq!(left_ideal_atom_bound(n - 1, k).unwrap(), middle_bound(n as u64, k as u64));
            }
        }
        assert!(left_ideal_atom_bound(5, 0).is_err());
    }

    #[test]
    fn table_for_d6_four() {
        let t = atom_table(&d6(4).unwrap()).unwrap();
        assert_eq!(t.maxima, vec![5, 5, 4]);
        assert!(t.all_met());
        let csv = t.to_csv();
        assert!(csv.starts_with("basis,complexity,bound,met\n,5,5,true\n"));
    }
}
