//! Witness DFA families, built with their published state numbering.
//!
//! Constructors never minimize or renumber. Transitions left implicit in
//! the definitions go to the empty state; the one exception is the right
//! binary product automaton, whose `b` fixes every state from 2 to `n-2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classes::{
    cycle_generator, insertion_generator, kill_generator, merge_generator, start_generator, transposition_generator,
};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::ops::{apply_dialect, PartialPermutation};
use crate::state_set::StateSet;
use crate::transformation::Transformation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    D5,
    D6,
    BinaryProductLeft,
    BinaryProductRight,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Self::D5 => "d5",
            Self::D6 => "d6",
            Self::BinaryProductLeft => "product-binary-left",
            Self::BinaryProductRight => "product-binary-right",
        }
    }

    pub fn min_degree(self) -> usize {
        match self {
            Self::D5 | Self::BinaryProductLeft => 6,
            Self::D6 => 4,
            Self::BinaryProductRight => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Self::D5, Self::D6, Self::BinaryProductLeft, Self::BinaryProductRight]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown witness family {s:?}")))
    }
}

/// A member of a witness family, optionally under a dialect written in
/// comma notation over the family's full role alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessId {
    pub family: Family,
    pub n: usize,
    pub dialect: Option<String>,
}

impl WitnessId {
    pub fn new(family: Family, n: usize, dialect: Option<&str>) -> Self {
        Self { family, n, dialect: dialect.map(str::to_string) }
    }

    pub fn build(&self) -> Result<Dfa> {
        let base = match self.family {
            Family::D5 => d5(self.n)?,
            Family::D6 => d6_roles(self.n)?,
            Family::BinaryProductLeft => binary_product_left(self.n)?,
            Family::BinaryProductRight => binary_product_right(self.n)?,
        };
        match &self.dialect {
            Some(text) => {
                let pi = PartialPermutation::parse(base.alphabet(), text)?;
                apply_dialect(&base, &pi)
            }
            None if self.family == Family::D6 => d6(self.n),
            None => Ok(base),
        }
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)?;
        if let Some(d) = &self.dialect {
            write!(f, "({d})")?;
        }
        Ok(())
    }
}

fn require(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::OutOfRange(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

fn build(n: usize, letters: Vec<(char, Transformation)>, finals: &[usize]) -> Dfa {
    let (alphabet, delta): (Vec<char>, Vec<Transformation>) = letters.into_iter().unzip();
    Dfa::new(n, alphabet, delta, 0, finals.iter().copied().collect::<StateSet>())
        .expect("witness construction is well formed")
}

/// Ternary witness for star, product and the boolean operations:
/// `a = (0 -> n-1)(1,2,3)(4,..,n-2)`, `b = (2 -> n-1)(1 -> 2)(0 -> 1)(3,4)`,
/// `c = (0 -> n-1)(1,..,n-2)`, final state 1.
pub fn d5(n: usize) -> Result<Dfa> {
    require(n, 6, "d5")?;
    let sink = n - 1;
    let id = Transformation::identity(n);
    let tail: Vec<usize> = (4..n - 1).collect();
    let a = id.clone().with_map(0, sink).with_cycle(&[1, 2, 3]).with_cycle(&tail);
    let b = id.with_map(2, sink).with_map(1, 2).with_map(0, 1).with_cycle(&[3, 4]);
    let c = cycle_generator(n);
    Ok(build(n, vec![('a', a), ('b', b), ('c', c)], &[1]))
}

/// `d5(n)` under a dialect such as `a,b,-`.
pub fn d5_dialect(n: usize, dialect: &str) -> Result<Dfa> {
    WitnessId::new(Family::D5, n, Some(dialect)).build()
}

/// Five-letter witness for the boolean operations, reversal, atoms and
/// syntactic complexity. Final states are the odd middle states. At
/// `n = 4` letters `a` and `b` coincide and only `b, c, d, e` are used.
pub fn d6(n: usize) -> Result<Dfa> {
    let full = d6_roles(n)?;
    if n == 4 {
        let pi = PartialPermutation::parse(full.alphabet(), "-,b,c,d,e")?;
        return apply_dialect(&full, &pi);
    }
    Ok(full)
}

/// `d6(n)` over all five role letters, including `n = 4`, where `a`
/// duplicates `b`. Dialect strings always refer to these five roles.
pub fn d6_roles(n: usize) -> Result<Dfa> {
    require(n, 4, "d6")?;
    let letters = vec![
        ('a', cycle_generator(n)),
        ('b', if n == 4 { cycle_generator(n) } else { transposition_generator(n) }),
        ('c', merge_generator(n)),
        ('d', kill_generator(n)),
        ('e', start_generator(n)),
    ];
    let finals: Vec<usize> = (1..n - 1).filter(|q| q % 2 == 1).collect();
    Ok(build(n, letters, &finals))
}

/// `d6(n)` under a dialect such as `a,-,c,-,e`.
pub fn d6_dialect(n: usize, dialect: &str) -> Result<Dfa> {
    WitnessId::new(Family::D6, n, Some(dialect)).build()
}

/// Left automaton of the binary product pair: `a` rotates the middle
/// states `1'..(m-2)'`, `b` sends `0'` to `1'`, fixes `2'` and kills the
/// rest; finals `{2', 4'}`.
pub fn binary_product_left(m: usize) -> Result<Dfa> {
    require(m, 6, "binary product left automaton")?;
    let sink = m - 1;
    let middle: Vec<usize> = (1..sink).collect();
    let a = Transformation::identity(m).with_map(0, sink).with_cycle(&middle);
    let b = Transformation::constant(m, sink).with_map(0, 1).with_map(2, 2);
    Ok(build(m, vec![('a', a), ('b', b)], &[2, 4]))
}

/// Right automaton of the binary product pair: `a` rotates `1..n-2`, `b`
/// sends 0 to 1, 1 to the empty state and fixes `2..n-2`; final state 1.
pub fn binary_product_right(n: usize) -> Result<Dfa> {
    require(n, 3, "binary product right automaton")?;
    let sink = n - 1;
    let middle: Vec<usize> = (1..sink).collect();
    let a = Transformation::identity(n).with_map(0, sink).with_cycle(&middle);
    let b = Transformation::identity(n).with_map(0, 1).with_map(1, sink);
    Ok(build(n, vec![('a', a), ('b', b)], &[1]))
}

pub fn binary_product_pair(m: usize, n: usize) -> Result<(Dfa, Dfa)> {
    Ok((binary_product_left(m)?, binary_product_right(n)?))
}

/// Star witness for `n >= 4`. For `n >= 6` this is `d5(n)` restricted to
/// `a, b`. Below that it is the automaton over the `Vsf(n)` generators `a`,
/// `b`, `c_1 .. c_{n-2}` (letters `a`, `b`, then `c`, `d`, ..) with final
/// state `n-2`.
pub fn star_witness(n: usize) -> Result<Dfa> {
    require(n, 4, "star witness")?;
    if n >= 6 {
        return d5_dialect(n, "a,b,-");
    }
    let mut letters = vec![('a', cycle_generator(n))];
    if n >= 5 {
        letters.push(('b', transposition_generator(n)));
    }
    for p in 1..=n - 2 {
        letters.push(((b'b' + p as u8) as char, insertion_generator(n, p)));
    }
    Ok(build(n, letters, &[n - 2]))
}

/// Reversal witness `d6(n)` under `a,-,c,-,e`.
pub fn reversal_witness(n: usize) -> Result<Dfa> {
    d6_dialect(n, "a,-,c,-,e")
}

/// Ternary product pair `d5(m)(a,b,c)` and `d5(n)(b,c,a)`.
pub fn ternary_product_pair(m: usize, n: usize) -> Result<(Dfa, Dfa)> {
    Ok((d5(m)?, d5_dialect(n, "b,c,a")?))
}

/// The word `w_q` over the product alphabet used to add state `q` to a
/// reachable product subset. Defined for the middle states `1..n-2`.
pub fn pred_word(q: usize, n: usize) -> Result<String> {
    require(n, 6, "pred_word")?;
    if q == 0 || q >= n - 1 {
        return Err(Error::OutOfRange(format!("pred_word is defined for middle states 1..={}, got {q}", n - 2)));
    }
    let b = |k: usize| "b".repeat(k);
    Ok(match q {
        1 => "cabb".to_string(),
        2 => "ca".to_string(),
        3 => "cabbbb".to_string(),
        q if q % 2 == 0 => format!("cabbaaa{}", b(q - 4)),
        q => format!("caaaa{}", b(q - 5)),
    })
}

/// Outcome of checking `w_q` against both automata of the ternary product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredWordCheck {
    pub q: usize,
    pub n: usize,
    pub word: String,
    /// Image of `1'` in the left automaton.
    pub left_image_of_1: usize,
    /// Image of 0 in the right automaton.
    pub right_image_of_0: usize,
    /// Every state of `Q \ {0, q, n-1}` has exactly one preimage among
    /// the middle states.
    pub unique_predecessors: bool,
}

impl PredWordCheck {
    pub fn holds(&self) -> bool {
        self.left_image_of_1 == 3 && self.right_image_of_0 == self.q && self.unique_predecessors
    }
}

/// Simulates `w_q` on `d5(m)` (any `m >= 6`; the left image of `1'` does
/// not depend on `m`) and on `d5(n)(b,c,a)`.
pub fn verify_pred_word(q: usize, n: usize) -> Result<PredWordCheck> {
    let word = pred_word(q, n)?;
    let (left, right) = ternary_product_pair(n, n)?;
    let left_image_of_1 = left.word_transformation(&word)?.apply(1);
    let t = right.word_transformation(&word)?;
    let right_image_of_0 = t.apply(0);
    let sink = n - 1;
    let mut preimages = vec![0usize; n];
    for p in 1..sink {
        preimages[t.apply(p)] += 1;
    }
    let unique_predecessors = (1..sink).filter(|&r| r != q).all(|r| preimages[r] == 1);
    Ok(PredWordCheck { q, n, word, left_image_of_1, right_image_of_0, unique_predecessors })
}
