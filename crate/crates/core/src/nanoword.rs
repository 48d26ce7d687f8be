//! Nanowords: Gauss words decorated with a crossing type per letter.
//!
//! Letters are stored as indices `0..n` into the alphabet `A, B, C, ...`; the
//! textual form `WORD:TYPES` lists types in alphabetical letter order and the
//! empty nanoword is written `0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet the textual layer can render.
pub const MAX_LETTERS: usize = 26;

/// Crossing type of a letter. `A < B` for ordering type words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CrossingType {
    A,
    B,
}

impl CrossingType {
    pub fn flipped(self) -> Self {
        match self {
            CrossingType::A => CrossingType::B,
            CrossingType::B => CrossingType::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            CrossingType::A => 'a',
            CrossingType::B => 'b',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(CrossingType::A),
            'b' => Some(CrossingType::B),
            _ => None,
        }
    }
}

pub fn letter_char(letter: u8) -> char {
    (b'A' + letter) as char
}

/// A Gauss word together with a type map. Immutable once built.
///
/// The word holds letter indices; every index in `0..types.len()` occurs
/// exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Nanoword {
    word: Vec<u8>,
    types: Vec<CrossingType>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transform {
    Mirror,
    Inverse,
    MirrorInverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    Gauss,
    IncreasingGauss,
    Nanowords,
}

impl Nanoword {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a nanoword from letter indices and types, checking that every
    /// letter `0..types.len()` occurs exactly twice.
    pub fn new(word: Vec<u8>, types: Vec<CrossingType>) -> Result<Self> {
        if word.len() != 2 * types.len() {
            return Err(Error::TypeArity {
                types: types.len(),
                letters: word.len() / 2,
            });
        }
        let mut counts = vec![0usize; types.len()];
        for &l in &word {
            let slot = counts.get_mut(l as usize).ok_or_else(|| Error::Parse {
                text: format!("{word:?}"),
                reason: format!("letter index {l} outside alphabet of size {}", types.len()),
            })?;
            *slot += 1;
        }
        if let Some((l, &c)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(Error::LetterCount {
                letter: letter_char(l as u8),
                count: c,
            });
        }
        Ok(Self { word, types })
    }

    /// Internal constructor for callers that maintain the Gauss invariant.
    pub(crate) fn from_parts_unchecked(word: Vec<u8>, types: Vec<CrossingType>) -> Self {
        debug_assert!(Self::new(word.clone(), types.clone()).is_ok());
        Self { word, types }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn types(&self) -> &[CrossingType] {
        &self.types
    }

    pub fn letter_count(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn type_of(&self, letter: u8) -> CrossingType {
        self.types[letter as usize]
    }

    /// Positions of the two occurrences of every letter, first occurrence first.
    pub fn occurrences(&self) -> Vec<[usize; 2]> {
        let mut occ = vec![[usize::MAX; 2]; self.types.len()];
        for (i, &l) in self.word.iter().enumerate() {
            let slot = &mut occ[l as usize];
            if slot[0] == usize::MAX {
                slot[0] = i;
            } else {
                slot[1] = i;
            }
        }
        occ
    }

    /// True when first occurrences appear in alphabetical order.
    pub fn is_increasing(&self) -> bool {
        let mut next = 0u8;
        for &l in &self.word {
            if l == next {
                next += 1;
            } else if l > next {
                return false;
            }
        }
        true
    }

    /// Relabels letters so the Gauss word is increasing. Returns the
    /// normalized nanoword and the bijection `old letter -> new letter`.
    pub fn normalize_increasing(&self) -> (Nanoword, Vec<u8>) {
        let (word, types, map) = normalize_parts(&self.word, &self.types);
        (Nanoword { word, types }, map)
    }

    pub fn normalized(&self) -> Nanoword {
        self.normalize_increasing().0
    }

    pub fn transform(&self, kind: Transform) -> Nanoword {
        let (word, types): (Vec<u8>, Vec<CrossingType>) = match kind {
            Transform::Mirror => (
                self.word.clone(),
                self.types.iter().map(|t| t.flipped()).collect(),
            ),
            Transform::Inverse => (
                self.word.iter().rev().copied().collect(),
                self.types.iter().map(|t| t.flipped()).collect(),
            ),
            Transform::MirrorInverse => (
                self.word.iter().rev().copied().collect(),
                self.types.clone(),
            ),
        };
        let (word, types, _) = normalize_parts(&word, &types);
        Nanoword { word, types }
    }

    /// Keeps only the letters selected by `keep`, preserving their types.
    /// The result is not normalized.
    pub fn restrict(&self, keep: impl Fn(u8) -> bool) -> Nanoword {
        let mut relabel = vec![u8::MAX; self.types.len()];
        let mut types = Vec::new();
        for l in 0..self.types.len() as u8 {
            if keep(l) {
                relabel[l as usize] = types.len() as u8;
                types.push(self.types[l as usize]);
            }
        }
        let word = self
            .word
            .iter()
            .filter(|&&l| relabel[l as usize] != u8::MAX)
            .map(|&l| relabel[l as usize])
            .collect();
        Nanoword { word, types }
    }

    /// Renders the letters selected by `keep` under their original names,
    /// e.g. `BCBECE:aab`.
    pub fn subword_text(&self, keep: impl Fn(u8) -> bool) -> String {
        let word: String = self
            .word
            .iter()
            .filter(|&&l| keep(l))
            .map(|&l| letter_char(l))
            .collect();
        if word.is_empty() {
            return "0".to_string();
        }
        let types: String = (0..self.types.len() as u8)
            .filter(|&l| keep(l))
            .map(|l| self.types[l as usize].as_char())
            .collect();
        format!("{word}:{types}")
    }

    /// Renders the word part only, e.g. `ABACBC`.
    pub fn gauss_text(&self) -> String {
        self.word.iter().map(|&l| letter_char(l)).collect()
    }

    pub fn type_text(&self) -> String {
        self.types.iter().map(|t| t.as_char()).collect()
    }

    /// Parses `WORD:TYPES` or `0`.
    ///
    /// Letters need not be increasing, but the distinct letters must be the
    /// first `n` uppercase letters.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::empty());
        }
        let bad = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (w, t) = text
            .split_once(':')
            .ok_or_else(|| bad("expected WORD:TYPES or 0"))?;
        if w.is_empty() || !w.bytes().all(|c| c.is_ascii_uppercase()) {
            return Err(bad("word must be a non-empty run of uppercase letters"));
        }
        let types = t
            .chars()
            .map(CrossingType::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("types must be letters a or b"))?;
        let word: Vec<u8> = w.bytes().map(|c| c - b'A').collect();
        let letters = word.iter().copied().max().map_or(0, |m| m as usize + 1);
        if letters > MAX_LETTERS {
            return Err(Error::AlphabetTooLarge(letters));
        }
        let mut counts = vec![0usize; letters];
        for &l in &word {
            counts[l as usize] += 1;
        }
        if let Some((l, &c)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(Error::LetterCount {
                letter: letter_char(l as u8),
                count: c,
            });
        }
        if types.len() != letters {
            return Err(Error::TypeArity {
                types: types.len(),
                letters,
            });
        }
        Ok(Self { word, types })
    }

    /// Accepts words over any set of letters, as produced by deleting
    /// letters (`BCBECE:aab`). Types are listed in alphabetical order of the
    /// letters present; letters are relabelled compactly in that order.
    pub fn parse_loose(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let Some((w, t)) = trimmed.split_once(':') else {
            return Self::parse(trimmed);
        };
        if w.is_empty() || !w.bytes().all(|c| c.is_ascii_uppercase()) {
            return Self::parse(trimmed);
        }
        let mut present: Vec<u8> = w.bytes().collect();
        present.sort_unstable();
        present.dedup();
        let relabel: String = w
            .bytes()
            .map(|c| (b'A' + present.binary_search(&c).expect("present") as u8) as char)
            .collect();
        Self::parse(&format!("{relabel}:{t}"))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn normalize_parts(
    word: &[u8],
    types: &[CrossingType],
) -> (Vec<u8>, Vec<CrossingType>, Vec<u8>) {
    let mut map = vec![u8::MAX; types.len()];
    let mut next = 0u8;
    let mut out = Vec::with_capacity(word.len());
    for &l in word {
        let m = &mut map[l as usize];
        if *m == u8::MAX {
            *m = next;
            next += 1;
        }
        out.push(*m);
    }
    let mut new_types = vec![CrossingType::A; types.len()];
    for (old, &new) in map.iter().enumerate() {
        new_types[new as usize] = types[old];
    }
    (out, new_types, map)
}

impl Ord for Nanoword {
    /// Word length first, then alphabetical order on Gauss words, then on
    /// type words.
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.types.cmp(&other.types))
    }
}

impl PartialOrd for Nanoword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Nanoword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        write!(f, "{}:{}", self.gauss_text(), self.type_text())
    }
}

impl FromStr for Nanoword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Nanoword::parse(s)
    }
}

impl Serialize for Nanoword {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Nanoword {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Nanoword::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Closed-form counts of Gauss words and nanowords on an `n` letter alphabet.
pub fn count(n: u32, kind: CountKind) -> BigUint {
    let fact = |k: u32| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i);
    let two_n = fact(2 * n);
    match kind {
        CountKind::Gauss => two_n >> n,
        CountKind::IncreasingGauss => (two_n / fact(n)) >> n,
        CountKind::Nanowords => two_n / fact(n),
    }
}
