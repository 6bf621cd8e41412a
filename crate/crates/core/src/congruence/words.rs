use crate::error::{Error, Result};
use crate::homology::{twist_matrix, Curve, Mat2, TwistPower};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One letter of a word over a list of twist-power generators:
/// generator `gen` raised to `sign` (±1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLetter")]
pub struct WordLetter {
    pub gen: usize,
    pub sign: i8,
}

#[derive(Deserialize)]
struct RawLetter {
    gen: usize,
    sign: i8,
}

impl TryFrom<RawLetter> for WordLetter {
    type Error = String;
    fn try_from(raw: RawLetter) -> std::result::Result<WordLetter, String> {
        match raw.sign {
            1 | -1 => Ok(WordLetter {
                gen: raw.gen,
                sign: raw.sign,
            }),
            s => Err(format!("letter sign must be 1 or -1, got {s}")),
        }
    }
}

impl WordLetter {
    pub fn pos(gen: usize) -> WordLetter {
        WordLetter { gen, sign: 1 }
    }

    pub fn neg(gen: usize) -> WordLetter {
        WordLetter { gen, sign: -1 }
    }

    pub fn inverse(self) -> WordLetter {
        WordLetter {
            gen: self.gen,
            sign: -self.sign,
        }
    }
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign > 0 {
            write!(f, "g{}", self.gen)
        } else {
            write!(f, "g{}^-1", self.gen)
        }
    }
}

pub type Word = Vec<WordLetter>;

/// `g^k` as letters.
pub fn power_word(gen: usize, k: i64) -> Word {
    let letter = if k >= 0 {
        WordLetter::pos(gen)
    } else {
        WordLetter::neg(gen)
    };
    vec![letter; k.unsigned_abs() as usize]
}

pub fn invert_word(w: &[WordLetter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancel adjacent inverse pairs until none remain.
pub fn free_reduce(w: &[WordLetter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn format_word(w: &[WordLetter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Evaluate `w` in SL(2, Z), letters multiplied left to right.
pub fn word_to_matrix(gens: &[TwistPower], w: &[WordLetter]) -> Result<Mat2> {
    let mats = letter_matrices(gens);
    evaluate(&mats, w)
}

/// `[T_0, T_0^-1, T_1, T_1^-1, ...]`
pub(crate) fn letter_matrices(gens: &[TwistPower]) -> Vec<Mat2> {
    gens.iter()
        .flat_map(|g| {
            let m = g.matrix();
            let inv = m.inverse();
            [m, inv]
        })
        .collect()
}

pub(crate) fn letter_slot(l: WordLetter) -> usize {
    2 * l.gen + usize::from(l.sign < 0)
}

pub(crate) fn evaluate(mats: &[Mat2], w: &[WordLetter]) -> Result<Mat2> {
    let mut acc = Mat2::identity();
    for &l in w {
        let m = mats.get(letter_slot(l)).ok_or(Error::BadIndex(l.gen))?;
        acc = &acc * m;
    }
    Ok(acc)
}

/// The identity `word = (iota if set) * T_curve^power` over `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRelation {
    pub generators: Vec<TwistPower>,
    pub word: Word,
    pub iota: bool,
    pub curve: Curve,
    pub power: i64,
}

impl TwistRelation {
    pub fn lhs(&self) -> Result<Mat2> {
        word_to_matrix(&self.generators, &self.word)
    }

    pub fn rhs(&self) -> Mat2 {
        let t = twist_matrix(&self.curve, self.power);
        if self.iota {
            -&t
        } else {
            t
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs().is_ok_and(|m| m == self.rhs())
    }
}
