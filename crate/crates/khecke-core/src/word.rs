//! Words over the positive-integer alphabet and their basic statistics.
//!
//! Letters are `u8` values in `1..=255`. Words serialize as plain JSON
//! arrays, e.g. `[1, 5, 1, 3, 3]`, and display as a digit string when
//! every letter is a single digit (`15133`), comma-separated otherwise.

use crate::shape::Composition;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A single letter of a word. Always nonzero.
pub type Letter = u8;

/// Errors raised while constructing or transforming words.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("letters must be in 1..=255 (found 0 at index {0})")]
    ZeroLetter(usize),
    #[error("shifting letter {letter} by {shift} leaves the alphabet 1..=255")]
    ShiftOverflow { letter: Letter, shift: u8 },
    #[error("cannot parse {0:?} as a word")]
    Parse(String),
}

/// A finite word over the alphabet `1..=255`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word, rejecting the letter 0.
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(i) = letters.iter().position(|&x| x == 0) {
            return Err(WordError::ZeroLetter(i));
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().copied()
    }

    /// Largest letter, or `None` for the empty word.
    pub fn max_letter(&self) -> Option<Letter> {
        self.letters.iter().copied().max()
    }

    /// The set of distinct letters.
    pub fn support(&self) -> BTreeSet<Letter> {
        self.letters.iter().copied().collect()
    }

    /// Whether the support is exactly `{1, …, k}` for some `k ≥ 0`.
    pub fn is_initial(&self) -> bool {
        let support = self.support();
        support.len() == self.max_letter().unwrap_or(0) as usize
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Length of the longest strictly increasing subsequence.
    pub fn lis(&self) -> usize {
        self.longest_subsequence(|prev, next| prev < next)
    }

    /// Length of the longest strictly decreasing subsequence.
    pub fn lds(&self) -> usize {
        self.longest_subsequence(|prev, next| prev > next)
    }

    fn longest_subsequence(&self, admits: impl Fn(Letter, Letter) -> bool) -> usize {
        let mut best = vec![0usize; self.letters.len()];
        let mut max = 0;
        for i in 0..self.letters.len() {
            let mut here = 1;
            for j in 0..i {
                if admits(self.letters[j], self.letters[i]) {
                    here = here.max(best[j] + 1);
                }
            }
            best[i] = here;
            max = max.max(here);
        }
        max
    }

    /// The subword of letters lying in the closed interval `[lo, hi]`.
    pub fn restrict_interval(&self, lo: Letter, hi: Letter) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .copied()
                .filter(|&x| lo <= x && x <= hi)
                .collect(),
        }
    }

    /// Renames the letters to `1..=k` (k = support size) preserving
    /// relative order: the i-th smallest letter in the support becomes `i`.
    pub fn flatten(&self) -> Word {
        let support: Vec<Letter> = self.support().into_iter().collect();
        Word {
            letters: self
                .letters
                .iter()
                .map(|x| {
                    let rank = support.binary_search(x).expect("letter is in support");
                    (rank + 1) as Letter
                })
                .collect(),
        }
    }

    /// Adds `shift` to every letter, failing if any leaves the alphabet.
    pub fn shift(&self, shift: u8) -> Result<Word, WordError> {
        let letters = self
            .letters
            .iter()
            .map(|&x| {
                x.checked_add(shift)
                    .ok_or(WordError::ShiftOverflow { letter: x, shift })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { letters })
    }

    /// Positions `i` (1-indexed) with `w_i > w_{i+1}`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        (1..self.letters.len())
            .filter(|&i| self.letters[i - 1] > self.letters[i])
            .collect()
    }

    /// The composition recording the lengths of the maximal weakly
    /// increasing runs of the word.
    pub fn descent_composition(&self) -> Composition {
        Composition::from_descent_set(&self.descent_set(), self.len())
            .expect("descent set lies in 1..len")
    }

    /// All words of the given length over the alphabet `1..=max`, in
    /// lexicographic order.
    pub fn all_of_length(len: usize, max: Letter) -> Vec<Word> {
        let mut out = Vec::new();
        let mut current = vec![1u8; len];
        loop {
            out.push(Word {
                letters: current.clone(),
            });
            // Advance like an odometer with digits 1..=max.
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                if current[i - 1] < max {
                    current[i - 1] += 1;
                    for x in &mut current[i..] {
                        *x = 1;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }
}

impl TryFrom<Vec<u8>> for Word {
    type Error = WordError;
    fn try_from(letters: Vec<u8>) -> Result<Self, Self::Error> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<u8> {
    fn from(w: Word) -> Vec<u8> {
        w.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        if self.letters.iter().all(|&x| x <= 9) {
            for x in &self.letters {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            for (i, x) in self.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts either a digit string (`15133`) or a comma-separated list
    /// (`1,5,1,3,3`). The empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = if s.contains(',') {
            s.split(',')
                .map(|part| part.trim().parse::<u8>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| WordError::Parse(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| WordError::Parse(s.to_string()))?
        };
        Word::new(letters).map_err(|_| WordError::Parse(s.to_string()))
    }
}
