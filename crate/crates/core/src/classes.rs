//! The suffix-free transformation classes `Bsf(n)`, `Vsf(n)` and `Wsf(n)`,
//! their exhaustive enumeration, and the named generating sets.
//!
//! States follow the quotient-DFA convention: 0 is initial and `n-1` is the
//! empty state. States `1..=n-2` are called middle states below.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::transformation::Transformation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuffixFreeClass {
    Bsf,
    Vsf,
    Wsf,
}

impl SuffixFreeClass {
    pub const ALL: [SuffixFreeClass; 3] = [Self::Bsf, Self::Vsf, Self::Wsf];

    pub fn contains(self, t: &Transformation) -> bool {
        match self {
            Self::Bsf => in_bsf(t),
            Self::Vsf => in_vsf(t),
            Self::Wsf => in_wsf(t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Bsf => "bsf",
            Self::Vsf => "vsf",
            Self::Wsf => "wsf",
        }
    }
}

impl fmt::Display for SuffixFreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuffixFreeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bsf" => Ok(Self::Bsf),
            "vsf" => Ok(Self::Vsf),
            "wsf" => Ok(Self::Wsf),
            other => Err(Error::Parse(format!("unknown class {other:?}"))),
        }
    }
}

/// Membership in `Bsf(n)`: `0` is not in the range, `n-1` is fixed, and for
/// every `j >= 1` either `0t^j = n-1` or no middle state `q` has
/// `qt^j = 0t^j`.
///
/// The quantifier over `j` is checked for `1 <= j <= n`. If the 0-path never
/// reaches `n-1` it enters a cycle of middle states by step `n-2`, and a
/// violation then shows up at `j = n` at the latest.
pub fn in_bsf(t: &Transformation) -> bool {
    in_bsf_up_to(t, t.degree())
}

/// `in_bsf` with an explicit bound on `j`.
pub fn in_bsf_up_to(t: &Transformation, max_power: usize) -> bool {
    let n = t.degree();
    if n < 2 {
        return false;
    }
    let sink = n - 1;
    if t.apply(sink) != sink || t.image().contains(&0) {
        return false;
    }
    let mut power = t.clone();
    for _ in 0..max_power {
        let z = power.apply(0);
        if z != sink && (1..sink).any(|q| power.apply(q) == z) {
            return false;
        }
        power = power.then(t);
    }
    true
}

/// `Vsf(n)`: the `Bsf(n)` elements that merge two states only into `n-1`.
pub fn in_vsf(t: &Transformation) -> bool {
    if !in_bsf(t) {
        return false;
    }
    let sink = (t.degree() - 1) as u32;
    let mut seen = vec![false; t.degree()];
    for &q in t.image() {
        if q != sink {
            if seen[q as usize] {
                return false;
            }
            seen[q as usize] = true;
        }
    }
    true
}

/// `Wsf(n)`: the `Bsf(n)` elements that send 0 to `n-1` or send every
/// middle state to `n-1`.
pub fn in_wsf(t: &Transformation) -> bool {
    if !in_bsf(t) {
        return false;
    }
    let sink = t.degree() - 1;
    t.apply(0) == sink || (1..sink).all(|q| t.apply(q) == sink)
}

/// Largest degree accepted by [`enumerate_class`] without an override.
pub const DEFAULT_MAX_ENUMERATION_DEGREE: usize = 8;

/// Pairwise closure checks are skipped above this many elements.
pub const CLOSURE_CHECK_LIMIT: usize = 20_000;

/// All transformations of one degree passing a class predicate.
#[derive(Debug, Clone)]
pub struct ClassEnumeration {
    pub class: SuffixFreeClass,
    pub degree: usize,
    /// Sorted lexicographically by image.
    pub elements: Vec<Transformation>,
    /// Result of the pairwise closure check; `None` when the class has more
    /// than [`CLOSURE_CHECK_LIMIT`] elements.
    pub closed: Option<bool>,
}

impl ClassEnumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn enumerate_class(n: usize, class: SuffixFreeClass) -> Result<ClassEnumeration> {
    enumerate_class_with(n, class, DEFAULT_MAX_ENUMERATION_DEGREE, Exec::default())
}

/// Filters all `n^n` transformations of degree `n`.
pub fn enumerate_class_with(
    n: usize,
    class: SuffixFreeClass,
    max_degree: usize,
    exec: Exec,
) -> Result<ClassEnumeration> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("class enumeration needs degree >= 2, got {n}")));
    }
    if n > max_degree {
        return Err(Error::OutOfRange(format!(
            "degree {n} needs {n}^{n} candidates; the enumeration budget allows degree <= {max_degree}"
        )));
    }
    let total = (n as u64).pow(n as u32);
    let elements = exec.filter_map_range(total, |i| {
        let t = Transformation::from_index(n, i);
        class.contains(&t).then_some(t)
    });
    let closed =
        (elements.len() <= CLOSURE_CHECK_LIMIT).then(|| closure_counterexample_with(&elements, exec).is_none());
    Ok(ClassEnumeration { class, degree: n, elements, closed })
}

fn image_index(image: &[u32]) -> usize {
    let n = image.len();
    image.iter().fold(0usize, |acc, &q| acc * n + q as usize)
}

/// First pair `(s, t)` (in element order) whose composition `s * t` falls
/// outside `elements`. All elements must share one degree of at most 8.
pub fn closure_counterexample(elements: &[Transformation]) -> Option<(Transformation, Transformation)> {
    closure_counterexample_with(elements, Exec::default())
}

pub fn closure_counterexample_with(
    elements: &[Transformation],
    exec: Exec,
) -> Option<(Transformation, Transformation)> {
    let n = elements.first()?.degree();
    assert!(n <= DEFAULT_MAX_ENUMERATION_DEGREE, "closure check uses an n^n bitmap");
    let mut member = vec![false; n.pow(n as u32)];
    for t in elements {
        member[image_index(t.image())] = true;
    }
    let firsts = exec.map(elements, |s| {
        let mut buf = vec![0u32; n];
        elements.iter().find_map(|t| {
            for (slot, &q) in buf.iter_mut().zip(s.image()) {
                *slot = t.image()[q as usize];
            }
            (!member[image_index(&buf)]).then(|| (s.clone(), t.clone()))
        })
    });
    firsts.into_iter().flatten().next()
}

/// A transformation with the name used for it in reports (its letter or
/// generator name).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NamedTransformation {
    pub name: String,
    pub transformation: Transformation,
}

impl NamedTransformation {
    pub fn new(name: impl Into<String>, transformation: Transformation) -> Self {
        Self { name: name.into(), transformation }
    }
}

/// `(0 -> n-1)(1, .., n-2)`
pub fn cycle_generator(n: usize) -> Transformation {
    let middle: Vec<usize> = (1..n - 1).collect();
    Transformation::identity(n).with_map(0, n - 1).with_cycle(&middle)
}

/// `(0 -> n-1)(1, 2)`
pub fn transposition_generator(n: usize) -> Transformation {
    Transformation::identity(n).with_map(0, n - 1).with_cycle(&[1, 2])
}

/// `(0 -> n-1)(n-2 -> 1)`
pub fn merge_generator(n: usize) -> Transformation {
    Transformation::identity(n).with_map(0, n - 1).with_map(n - 2, 1)
}

/// `({0, 1} -> n-1)`
pub fn kill_generator(n: usize) -> Transformation {
    Transformation::identity(n).with_merge([0, 1], n - 1)
}

/// `(Q \ {0} -> n-1)(0 -> 1)`
pub fn start_generator(n: usize) -> Transformation {
    Transformation::identity(n).with_merge(1..n, n - 1).with_map(0, 1)
}

/// `c_p = (p -> n-1)(0 -> p)`
pub fn insertion_generator(n: usize, p: usize) -> Transformation {
    Transformation::identity(n).with_map(p, n - 1).with_map(0, p)
}

/// Generators of `Vsf(n)`: `a`, `b`, and `c_1 .. c_{n-2}`, with the small
/// degenerations (`a = b` at `n = 4`, `{a, c_1}` at 3, `{c_1}` at 2).
pub fn vsf_generators(n: usize) -> Result<Vec<NamedTransformation>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("generators need degree >= 2, got {n}")));
    }
    if n == 2 {
        return Ok(vec![NamedTransformation::new("c1", Transformation::from_slice(&[1, 1]))]);
    }
    let mut gens = vec![NamedTransformation::new("a", cycle_generator(n))];
    if n >= 5 {
        gens.push(NamedTransformation::new("b", transposition_generator(n)));
    }
    for p in 1..=n - 2 {
        gens.push(NamedTransformation::new(format!("c{p}"), insertion_generator(n, p)));
    }
    Ok(gens)
}

/// Generators `a, b, c, d, e` of `Wsf(n)`, with the small degenerations
/// (`{a, c, d, e}` at `n = 4`, `{a, e}` at 3, `{e}` at 2).
pub fn wsf_generators(n: usize) -> Result<Vec<NamedTransformation>> {
    match n {
        0 | 1 => Err(Error::OutOfRange(format!("generators need degree >= 2, got {n}"))),
        2 => Ok(vec![NamedTransformation::new("e", start_generator(2))]),
        3 => Ok(vec![
            NamedTransformation::new("a", cycle_generator(3)),
            NamedTransformation::new("e", start_generator(3)),
        ]),
        _ => {
            let mut gens = vec![NamedTransformation::new("a", cycle_generator(n))];
            if n >= 5 {
                gens.push(NamedTransformation::new("b", transposition_generator(n)));
            }
            gens.push(NamedTransformation::new("c", merge_generator(n)));
            gens.push(NamedTransformation::new("d", kill_generator(n)));
            gens.push(NamedTransformation::new("e", start_generator(n)));
            Ok(gens)
        }
    }
}

/// `(n-1)^(n-2) + (n-2)`
pub fn wsf_size_formula(n: u32) -> u64 {
    assert!(n >= 2);
    (n as u64 - 1).pow(n - 2) + (n as u64 - 2)
}
