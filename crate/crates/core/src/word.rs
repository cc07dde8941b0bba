//! Words in a free group on generators `x1, x2, ...`.
//!
//! Every [`Word`] is kept freely reduced; all constructors reduce eagerly.
//! The commutator convention is `[u, v] = u^-1 v^-1 u v` throughout the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator `x_k^{±1}`; `generator` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        assert!(generator >= 1, "generator indices are 1-based");
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: u32) -> Self {
        Word(vec![Letter::new(index, false)])
    }

    /// `x_index^exponent`.
    pub fn power_of(index: u32, exponent: i64) -> Self {
        let letter = Letter::new(index, exponent < 0);
        Word(vec![letter; exponent.unsigned_abs() as usize])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for letter in raw {
            push_reduced(&mut out, letter);
        }
        Word(out)
    }

    /// Builds a word from `(generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(u32, i8)]) -> Self {
        Self::reduce(pairs.iter().map(|&(g, e)| {
            assert!(e == 1 || e == -1, "exponents must be ±1");
            Letter::new(g, e < 0)
        }))
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

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.reserve(other.len());
        for &letter in &other.0 {
            push_reduced(&mut out, letter);
        }
        Word(out)
    }

    /// In-place right multiplication.
    pub fn append(&mut self, other: &Word) {
        for &letter in &other.0 {
            push_reduced(&mut self.0, letter);
        }
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        let mut out = u.invert();
        out.append(&v.invert());
        out.append(u);
        out.append(v);
        out
    }

    /// Left-normed commutator `[[..[w1, w2], w3], ..., wn]`.
    pub fn left_normed(words: &[Word]) -> Word {
        let mut iter = words.iter();
        let mut acc = iter.next().cloned().unwrap_or_default();
        for w in iter {
            acc = Word::commutator(&acc, w);
        }
        acc
    }

    /// Applies the endomorphism of the free group determined by `images`.
    pub fn substitute(&self, images: &BTreeMap<u32, Word>) -> Result<Word> {
        let mut out = Word::identity();
        for letter in &self.0 {
            let image = images
                .get(&letter.generator)
                .ok_or(Error::MissingImage(letter.generator))?;
            if letter.inverse {
                out.append(&image.invert());
            } else {
                out.append(image);
            }
        }
        Ok(out)
    }

    /// Renames generators letter by letter; `map` must be injective on the
    /// generators that occur for the result to stay reduced.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Word {
        Word::reduce(self.0.iter().map(|l| Letter::new(map(l.generator), l.inverse)))
    }

    /// Inverts the letters of the given generators without reordering.
    pub fn invert_generators(&self, flip: impl Fn(u32) -> bool) -> Word {
        Word::reduce(self.0.iter().map(|&l| if flip(l.generator) { l.inverted() } else { l }))
    }

    /// Reads the word from right to left, leaving each letter unchanged.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn exponent_sum(&self, generator: u32) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.exponent())
            .sum()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator).max().unwrap_or(0)
    }
}

fn push_reduced(out: &mut Vec<Letter>, letter: Letter) {
    match out.last() {
        Some(&last) if last.cancels(letter) => {
            out.pop();
        }
        _ => out.push(letter),
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.append(&rhs);
        self
    }
}

impl Mul<&Word> for Word {
    type Output = Word;

    fn mul(mut self, rhs: &Word) -> Word {
        self.append(rhs);
        self
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.generator)
        } else {
            write!(f, "x{}", self.generator)
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated `xK` / `xK^-1` tokens; `e` is the empty word.
    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "e" {
                continue;
            }
            letters.push(parse_letter(token)?);
        }
        Ok(Word::reduce(letters))
    }
}

fn parse_letter(token: &str) -> Result<Letter> {
    let bad = |reason: &str| Error::WordParse { token: token.to_string(), reason: reason.to_string() };
    let body = token.strip_prefix('x').ok_or_else(|| bad("expected `x` followed by an index"))?;
    let (index, inverse) = match body.split_once('^') {
        Some((index, "-1")) => (index, true),
        Some((index, "1")) => (index, false),
        Some(_) => return Err(bad("only the exponents 1 and -1 are allowed")),
        None => (body, false),
    };
    let generator: u32 = index.parse().map_err(|_| bad("index is not a positive integer"))?;
    if generator == 0 {
        return Err(bad("indices are 1-based"));
    }
    Ok(Letter::new(generator, inverse))
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
