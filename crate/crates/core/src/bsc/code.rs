use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Binary word of arbitrary length.
///
/// Character `i` of the textual form is bit `len - 1 - i` of the packed
/// integer, so for `len <= 64` [`Word::to_u64`] orders words the same way as
/// their strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: usize,
    limbs: Vec<u64>,
}

impl Word {
    pub fn zeros(len: usize) -> Self {
        Self { len, limbs: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self::zeros(len);
        for i in 0..len {
            w.set_bit(i, true);
        }
        w
    }

    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64 && (len == 64 || value >> len == 0), "value does not fit in {len} bits");
        let mut w = Self::zeros(len);
        if len > 0 {
            w.limbs[0] = value;
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed value; only defined for words of at most 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.limbs.first().copied().unwrap_or(0))
    }

    /// Character `i` of the textual form.
    pub fn bit(&self, i: usize) -> bool {
        let pos = self.len - 1 - i;
        self.limbs[pos / 64] >> (pos % 64) & 1 == 1
    }

    fn set_bit(&mut self, i: usize, value: bool) {
        let pos = self.len - 1 - i;
        let mask = 1u64 << (pos % 64);
        if value {
            self.limbs[pos / 64] |= mask;
        } else {
            self.limbs[pos / 64] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn distance(&self, other: &Word) -> usize {
        assert_eq!(self.len, other.len, "distance between words of different lengths");
        self.limbs.iter().zip(&other.limbs).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut w = Self::zeros(len);
        for (k, limb) in w.limbs.iter_mut().enumerate() {
            let bits = (len - 64 * k).min(64);
            let v: u64 = rng.gen();
            *limb = if bits == 64 { v } else { v & ((1u64 << bits) - 1) };
        }
        w
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut w = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set_bit(i, true),
                other => return Err(Error::InvalidBit(other)),
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `M >= 2` distinct binary words of one common length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCode {
    n: usize,
    words: Vec<Word>,
}

impl BlockCode {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        if words.len() < 2 {
            return Err(Error::TooFewCodewords(words.len()));
        }
        let n = words[0].len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: w.len() });
            }
            if !seen.insert(w) {
                return Err(Error::DuplicateCodeword(w.to_string()));
            }
        }
        Ok(Self { n, words })
    }

    /// Parses a code from strings such as `["00", "11"]`.
    pub fn from_strs<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        Self::new(words.iter().map(|w| w.as_ref().parse()).collect::<Result<_>>()?)
    }

    /// Reads the plain-text code format: one binary string per line, blank
    /// lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words: Vec<Word> = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let at = |e: Error| Error::CodeFile { line, message: e.to_string() };
            let word: Word = content.parse().map_err(at)?;
            if let Some(first) = words.first() {
                if first.len() != word.len() {
                    return Err(at(Error::LengthMismatch { expected: first.len(), found: word.len() }));
                }
            }
            if !seen.insert(word.clone()) {
                return Err(at(Error::DuplicateCodeword(word.to_string())));
            }
            words.push(word);
        }
        Self::new(words)
    }

    /// Draws `m` distinct uniform words, rejecting duplicates.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        if n < 128 && (m as u128) > (1u128 << n) {
            return Err(Error::TooManyCodewords { m, n });
        }
        let mut seen = HashSet::with_capacity(m);
        let mut words = Vec::with_capacity(m);
        while words.len() < m {
            let w = Word::random(n, rng);
            if seen.insert(w.clone()) {
                words.push(w);
            }
        }
        Self::new(words)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn to_text(&self) -> String {
        self.words.iter().map(|w| format!("{w}\n")).collect()
    }
}
