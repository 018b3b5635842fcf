//! Elements of the free group F_N as freely reduced words.
//!
//! A [`Letter`] is stored as a single direction code `2 * (i - 1) + s`, where
//! `i` is the 1-based generator index and `s` is 0 for `a_i` and 1 for its
//! inverse. The natural order of the codes is therefore
//! `a_1 < a_1^-1 < a_2 < a_2^-1 < ...`, which is also the order used for
//! canonical graph encodings and for the outgoing directions at a vertex.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A free basis `{a_1, ..., a_N}` with `N >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall(rank));
        }
        Ok(Alphabet(rank))
    }

    pub fn rank(self) -> usize {
        self.0
    }

    /// Number of directed letters, `2N`.
    pub fn directions(self) -> usize {
        2 * self.0
    }

    /// All letters in direction order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.directions()).map(|c| Letter(c as u16))
    }

    /// The positive generators `a_1, ..., a_N`.
    pub fn generators(self) -> impl Iterator<Item = Letter> {
        (0..self.0).map(|i| Letter((2 * i) as u16))
    }

    pub fn parse(self, text: &str) -> Result<Word> {
        Word::parse(text, self)
    }

    fn check(self, other: Alphabet) -> Result<()> {
        if self != other {
            return Err(Error::AlphabetMismatch { left: self.0, right: other.0 });
        }
        Ok(())
    }
}

/// A generator or an inverse generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(u16);

impl Letter {
    /// `index` is 1-based; `inverse` selects `a_index^-1`.
    pub fn new(index: usize, inverse: bool) -> Letter {
        assert!(index >= 1, "generator indices are 1-based");
        Letter((2 * (index - 1) + inverse as usize) as u16)
    }

    pub fn from_code(code: usize) -> Letter {
        Letter(code as u16)
    }

    /// Direction code, `0..2N`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        (self.0 / 2) as usize + 1
    }

    /// 0-based generator index (the edge label in graphs).
    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// The positive letter with the same generator.
    pub fn positive(self) -> Letter {
        Letter(self.0 & !1)
    }

    fn write_compact(self, f: &mut impl fmt::Write) -> fmt::Result {
        let c = (b'a' + self.generator() as u8) as char;
        if self.is_inverse() {
            f.write_char(c.to_ascii_uppercase())
        } else {
            f.write_char(c)
        }
    }

    fn write_extended(self, f: &mut impl fmt::Write) -> fmt::Result {
        let c = if self.is_inverse() { 'X' } else { 'x' };
        write!(f, "{}{}", c, self.index())
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Word {
        Word { alphabet, letters: Vec::new() }
    }

    pub fn letter(alphabet: Alphabet, letter: Letter) -> Word {
        assert!(letter.generator() < alphabet.rank());
        Word { alphabet, letters: vec![letter] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(alphabet: Alphabet, letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l.generator() < alphabet.rank(), "letter outside alphabet");
            push_reduced(&mut out, l);
        }
        Word { alphabet, letters: out }
    }

    /// Parses either the compact format (`a`..`z`, uppercase for inverses) or
    /// the extended format (`x3`, `X3`). Whitespace is ignored.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Word> {
        let extended = text.bytes().any(|b| b.is_ascii_digit());
        let bytes = text.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            if b.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if extended {
                if b != b'x' && b != b'X' {
                    if b.is_ascii_alphabetic() {
                        return Err(Error::MixedFormats);
                    }
                    return Err(Error::UnknownToken { token: (b as char).to_string(), offset: i });
                }
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::MixedFormats);
                }
                let index: usize = text[digits_start..i].parse().map_err(|_| Error::UnknownToken {
                    token: text[start..i].to_string(),
                    offset: start,
                })?;
                if index == 0 || index > alphabet.rank() {
                    return Err(Error::IndexOutOfRange { index, rank: alphabet.rank() });
                }
                letters.push(Letter::new(index, b == b'X'));
            } else {
                if !b.is_ascii_alphabetic() {
                    return Err(Error::UnknownToken {
                        token: text[i..].chars().next().unwrap().to_string(),
                        offset: i,
                    });
                }
                if alphabet.rank() > 26 {
                    return Err(Error::CompactRankExceeded(alphabet.rank()));
                }
                let index = (b.to_ascii_lowercase() - b'a') as usize + 1;
                if index > alphabet.rank() {
                    return Err(Error::IndexOutOfRange { index, rank: alphabet.rank() });
                }
                letters.push(Letter::new(index, b.is_ascii_uppercase()));
                i += 1;
            }
        }
        Ok(Word::from_letters(alphabet, letters))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Free-group product. Fails when the alphabets differ.
    pub fn concat_reduce(&self, other: &Word) -> Result<Word> {
        self.alphabet.check(other.alphabet)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet: self.alphabet, letters })
    }

    /// Appends one letter with free reduction.
    pub fn push(&mut self, letter: Letter) {
        assert!(letter.generator() < self.alphabet.rank());
        push_reduced(&mut self.letters, letter);
    }

    pub fn invert(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^-1 * other * self`.
    pub fn conjugate(&self, other: &Word) -> Word {
        &(&self.invert() * other) * self
    }

    /// Splits `w = conjugator * core * conjugator^-1` with `core` cyclically
    /// reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let conjugator = Word { alphabet: self.alphabet, letters: self.letters[..k].to_vec() };
        let core = Word { alphabet: self.alphabet, letters: self.letters[k..n - k].to_vec() };
        (core, conjugator)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Renders in the extended format regardless of rank.
    pub fn to_extended_string(&self) -> String {
        let mut s = String::new();
        for l in &self.letters {
            l.write_extended(&mut s).unwrap();
        }
        s
    }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// Compact format when `N <= 26`, extended otherwise. The identity renders as
/// the empty string.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.alphabet.rank() <= 26;
        for l in &self.letters {
            if compact {
                l.write_compact(f)?;
            } else {
                l.write_extended(f)?;
            }
        }
        Ok(())
    }
}

/// Panics on alphabet mismatch; use [`Word::concat_reduce`] for a checked product.
impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat_reduce(rhs).expect("alphabet mismatch in word product")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
