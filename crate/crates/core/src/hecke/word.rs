//! Coset words: the address space of K-double cosets.
//!
//! A word is empty (the class of K itself) or has odd length over {1..k}.
//! Odd positions carry coset classes, even positions the refinement
//! classes picked up between consecutive length-2 factors; the degree of a
//! word is the translation length of the elements it encodes, length + 1.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A K-double coset encoded as an odd-length word over {1..k}, or the
/// empty word for K itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetWord {
    letters: Vec<u8>,
}

impl CosetWord {
    /// The empty word: the class of K, the unit of the algebra.
    pub fn unit() -> Self {
        CosetWord {
            letters: Vec::new(),
        }
    }

    /// Validate and build a word: empty or odd length, letters in {1..k}.
    pub fn new(letters: Vec<u8>, k: usize) -> Result<Self> {
        if !letters.is_empty() && letters.len() % 2 == 0 {
            return Err(Error::InvalidWord(format!(
                "length {} is even and nonzero",
                letters.len()
            )));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize > k) {
            return Err(Error::InvalidWord(format!(
                "letter {bad} outside 1..={k}"
            )));
        }
        Ok(CosetWord { letters })
    }

    /// Build from letters known to satisfy the invariants.
    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(letters.is_empty() || letters.len() % 2 == 1);
        CosetWord { letters }
    }

    /// Parse a comma-separated word; the empty string is the unit.
    pub fn parse(input: &str, k: usize) -> Result<Self> {
        let s = input.trim();
        if s.is_empty() {
            return Ok(Self::unit());
        }
        let letters = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidWord(format!("bad letter {tok:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(letters, k)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    /// Translation length of the encoded elements: length + 1, or 0 for
    /// the unit. Always even.
    pub fn degree(&self) -> usize {
        if self.letters.is_empty() {
            0
        } else {
            self.letters.len() + 1
        }
    }

    /// Odd-position letters (the coset classes), preserved by products.
    pub fn skeleton(&self) -> Vec<u8> {
        self.letters.iter().copied().step_by(2).collect()
    }

    /// Even-position letters (the refinement classes).
    pub fn even_letters(&self) -> Vec<u8> {
        self.letters.iter().copied().skip(1).step_by(2).collect()
    }

    /// The word of the inverse class: letters reversed.
    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        CosetWord { letters }
    }

    /// The word u·b·v, the shape of every maximal term of a product.
    pub fn bridge(&self, b: u8, right: &CosetWord) -> CosetWord {
        debug_assert!(!self.is_unit() && !right.is_unit());
        let mut letters = Vec::with_capacity(self.letters.len() + 1 + right.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.push(b);
        letters.extend_from_slice(&right.letters);
        CosetWord { letters }
    }
}

impl fmt::Display for CosetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Words ordered by degree, then lexicographically.
impl Ord for CosetWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for CosetWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All valid words of the given even degree over {1..k}, in word order.
/// Degree 0 gives just the unit; degree 2r gives k^{2r-1} words.
pub fn enumerate_words(k: usize, degree: usize) -> Result<Vec<CosetWord>> {
    if degree % 2 != 0 {
        return Err(Error::InvalidWord(format!("degree {degree} is odd")));
    }
    if degree == 0 {
        return Ok(vec![CosetWord::unit()]);
    }
    let len = degree - 1;
    let mut out = Vec::new();
    let mut letters = vec![1u8; len];
    loop {
        out.push(CosetWord {
            letters: letters.clone(),
        });
        // Increment as a base-k counter, least significant letter last.
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if (letters[pos] as usize) < k {
                letters[pos] += 1;
                break;
            }
            letters[pos] = 1;
        }
    }
}
