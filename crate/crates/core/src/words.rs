//! Words over the alphabet `Y = {y_1, y_2, ...}`.
//!
//! A letter `y_s` is stored as its index `s ≥ 1`. The alphabet is ordered
//! `y_1 > y_2 > y_3 > ...`, so a *larger* index is a *smaller* letter. The
//! `Ord` impl on [`Word`] is the induced lexicographic order, with a proper
//! prefix smaller than its extensions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub type Letter = u32;

/// A word `y_{s_1} ... y_{s_r}`; the empty word is `1_{Y*}`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(s: Letter) -> Self {
        assert!(s >= 1, "letter indices start at 1");
        Word(vec![s])
    }

    /// Panics on a zero index; use `Word::try_from` for unchecked input.
    pub fn new(letters: Vec<Letter>) -> Self {
        Word::try_from(letters).expect("letter indices start at 1")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_letter(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// Sum of the letter indices.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&s| s as usize).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, s: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// The suffix obtained by dropping the first letter.
    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// All `(u, v)` with `u v = self`, including empty parts, by increasing `|u|`.
    pub fn splittings(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.len()).map(move |i| (self.prefix(i), self.suffix_from(i)))
    }
}

/// `y_a < y_b`, which holds exactly when `a > b`.
pub fn letter_less(a: Letter, b: Letter) -> bool {
    a > b
}

pub fn cmp_letters(a: Letter, b: Letter) -> Ordering {
    b.cmp(&a)
}

/// Strict lexicographic order on words; a proper prefix is smaller.
pub fn word_less(u: &Word, v: &Word) -> bool {
    u < v
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&a, &b) in self.0.iter().zip(&other.0) {
            match cmp_letters(a, b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self, Error> {
        if letters.contains(&0) {
            return Err(Error::Parse("letter indices must be positive".into()));
        }
        Ok(Word(letters))
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

/// Comma-separated indices; `e` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::empty());
        }
        let letters = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Letter>()
                    .map_err(|_| Error::Parse(format!("invalid word {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::try_from(letters)
    }
}

/// All compositions of `n`, ascending in word order. There are `2^(n-1)`.
pub fn words_of_weight(n: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(1 << n.saturating_sub(1));
    let mut current = Vec::new();
    compositions(n, &mut current, &mut out);
    out.sort();
    out
}

fn compositions(rest: usize, current: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if rest == 0 {
        if !current.is_empty() {
            out.push(Word(current.clone()));
        }
        return;
    }
    for first in 1..=rest {
        current.push(first as Letter);
        compositions(rest - first, current, out);
        current.pop();
    }
}

/// Every word of weight `0..=max_weight`, including the empty word, grouped by
/// ascending weight and ascending word order within a weight.
pub fn words_up_to_weight(max_weight: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for n in 1..=max_weight {
        out.extend(words_of_weight(n));
    }
    out
}
