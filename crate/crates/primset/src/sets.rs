//! Duplicate-free finite sets of nonempty words, kept in canonical order
//! (length, then lexicographic).

use std::fmt;

use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FiniteWordSet {
    words: Vec<Word>,
}

impl FiniteWordSet {
    /// Build a set from arbitrary words: duplicates collapse, the empty word
    /// is rejected.
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        if words.iter().any(Word::is_empty) {
            return Err(Error::EmptyWordInSet);
        }
        words.sort();
        words.dedup();
        Ok(FiniteWordSet { words })
    }

    /// Parse a comma-separated list such as `"aa,ba,baa"`.
    pub fn from_text(text: &str) -> Result<Self> {
        let words = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Word::from_text)
            .collect();
        Self::new(words)
    }

    pub fn singleton(w: Word) -> Result<Self> {
        Self::new(vec![w])
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Symbols occurring in the members, sorted.
    pub fn alphabet(&self) -> Vec<u8> {
        let mut letters: Vec<u8> = self
            .words
            .iter()
            .flat_map(|w| w.as_bytes().iter().copied())
            .collect();
        letters.sort_unstable();
        letters.dedup();
        letters
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    /// Distinct nonempty factors of the members, in canonical order.
    pub fn factor_closure(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.words.iter().flat_map(|w| w.factors()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Members of the generated monoid of length at most `max_len`, in
    /// canonical order. The empty word is not included.
    pub fn star_words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut seen: std::collections::BTreeSet<Word> = std::collections::BTreeSet::new();
        let mut frontier: Vec<Word> = vec![Word::empty()];
        while let Some(base) = frontier.pop() {
            for member in &self.words {
                if base.len() + member.len() > max_len {
                    continue;
                }
                let next = base.concat(member);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn without(&self, w: &Word) -> Self {
        FiniteWordSet {
            words: self.words.iter().filter(|m| *m != w).cloned().collect(),
        }
    }

    pub fn with(&self, w: Word) -> Result<Self> {
        let mut words = self.words.clone();
        words.push(w);
        Self::new(words)
    }
}

impl fmt::Display for FiniteWordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut sep = "";
        for w in &self.words {
            write!(f, "{sep}{w}")?;
            sep = ", ";
        }
        write!(f, "}}")
    }
}
