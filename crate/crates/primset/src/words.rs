//! Words over a finite alphabet and the elementary operations on them:
//! primitivity, roots, commutation, the overlap decomposition, and
//! factorization over a finite generating set.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::sets::FiniteWordSet;

/// A finite word, one byte per symbol. Text I/O maps one ASCII character per
/// symbol, so `Word::from_text("abc")` has the three symbols `a`, `b`, `c`.
///
/// The `Ord` implementation is the canonical order used throughout the crate:
/// shorter words first, equal lengths compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        Word(bytes.into())
    }

    pub fn from_text(text: &str) -> Self {
        Word(text.as_bytes().to_vec())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// The factor `self[start..end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// All nonempty proper prefixes, shortest first.
    pub fn proper_prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (1..self.len()).map(move |i| self.slice(0, i))
    }

    /// All nonempty prefixes, shortest first.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (1..=self.len()).map(move |i| self.slice(0, i))
    }

    /// Distinct nonempty factors in canonical order.
    pub fn factors(&self) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        for start in 0..self.len() {
            for end in start + 1..=self.len() {
                out.push(self.slice(start, end));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Offsets at which `pattern` occurs in `self`.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len())
            .filter(|&i| self.0[i..i + pattern.len()] == pattern.0[..])
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for &b in &self.0 {
            write!(f, "{}", b as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// An unordered pair of distinct words in canonical form: the first component
/// is the canonically smaller word (shorter, or lexicographically smaller on
/// equal length).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WordPair {
    first: Word,
    second: Word,
}

impl WordPair {
    pub fn new(x: Word, y: Word) -> Result<Self> {
        if x == y {
            return Err(Error::EqualWords);
        }
        let (first, second) = if x < y { (x, y) } else { (y, x) };
        Ok(WordPair { first, second })
    }

    pub fn first(&self) -> &Word {
        &self.first
    }

    pub fn second(&self) -> &Word {
        &self.second
    }

    /// Sum of the component lengths.
    pub fn size(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        &self.first == w || &self.second == w
    }

    pub fn as_set(&self) -> FiniteWordSet {
        FiniteWordSet::new(vec![self.first.clone(), self.second.clone()])
            .expect("pair components are nonempty")
    }
}

impl fmt::Display for WordPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.first, self.second)
    }
}

/// True iff `w` occurs in `w·w` only at offsets `0` and `|w|`.
pub fn is_primitive(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let square = w.concat(w);
    let n = w.len();
    Ok(!(1..n).any(|i| square.as_bytes()[i..i + n] == *w.as_bytes()))
}

/// The unique primitive word `r` and exponent `e` with `w = r^e`.
pub fn primitive_root(w: &Word) -> Result<(Word, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let root = w.slice(0, d);
        if root.repeat(n / d) == *w {
            return Ok((root, n / d));
        }
    }
    unreachable!("w is a first power of itself")
}

/// True iff `xy = yx`, i.e. `x` and `y` are powers of a common word.
pub fn commute(x: &Word, y: &Word) -> bool {
    x.concat(y) == y.concat(x)
}

/// The decomposition produced by [`ls_decompose`]: `pq` is primitive and the
/// triple reconstructs its defining equations `t = (pq)^m`, `v = (qp)^m`,
/// `u ∈ (pq)^*p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OverlapDecomposition {
    pub p: Word,
    pub q: Word,
    pub m: usize,
}

/// Solve the overlap equation `tu = uv` with `t ≠ v`: returns the unique
/// `(p, q, m)` with `t = (pq)^m`, `v = (qp)^m` and `u ∈ (pq)^*p`.
///
/// The pair is read off directly: `pq` is the primitive root of `t`, and `p`
/// is what remains of `u` after stripping its maximal `(pq)`-power prefix.
pub fn ls_decompose(t: &Word, u: &Word, v: &Word) -> Result<OverlapDecomposition> {
    if t.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    if t == v {
        return Err(Error::DegenerateOverlap);
    }
    if t.concat(u) != u.concat(v) {
        return Err(Error::NotAnOverlap);
    }
    let (root, m) = primitive_root(t)?;
    let mut offset = 0;
    while u.len() - offset >= root.len()
        && u.as_bytes()[offset..offset + root.len()] == *root.as_bytes()
    {
        offset += root.len();
    }
    let p = u.slice(offset, u.len());
    if p.is_empty() || p.len() >= root.len() || !root.starts_with(&p) {
        return Err(Error::invariant(format!(
            "overlap residue `{p}` is not a proper prefix of the root `{root}`"
        )));
    }
    let q = root.slice(p.len(), root.len());
    Ok(OverlapDecomposition { p, q, m })
}

/// A factorization of a word into blocks drawn from a generating set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Factorization {
    blocks: Vec<Word>,
}

impl Factorization {
    pub fn new(blocks: Vec<Word>) -> Self {
        Factorization { blocks }
    }

    pub fn blocks(&self) -> &[Word] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Concatenation of the blocks.
    pub fn concat(&self) -> Word {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend_from_slice(b.as_bytes());
        }
        Word::from_bytes(out)
    }

    pub fn uses(&self, block: &Word) -> bool {
        self.blocks.iter().any(|b| b == block)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "ε");
        }
        let mut sep = "";
        for b in &self.blocks {
            write!(f, "{sep}{b}")?;
            sep = "·";
        }
        Ok(())
    }
}

/// Positions `i` of `w` from which the suffix `w[i..]` factors over `z`.
fn suffix_reachability(w: &Word, z: &FiniteWordSet) -> Vec<bool> {
    let n = w.len();
    let bytes = w.as_bytes();
    let mut reach = vec![false; n + 1];
    reach[n] = true;
    for i in (0..n).rev() {
        reach[i] = z.iter().any(|b| {
            let l = b.len();
            i + l <= n && bytes[i..i + l] == *b.as_bytes() && reach[i + l]
        });
    }
    reach
}

/// Factor `w` over `z` if possible. The empty word factors as the empty block
/// sequence. When several factorizations exist, returns the one whose block
/// choices come first in canonical block order at the leftmost undecided cut.
pub fn parse_over(w: &Word, z: &FiniteWordSet) -> Option<Factorization> {
    let reach = suffix_reachability(w, z);
    if !reach[0] {
        return None;
    }
    let n = w.len();
    let bytes = w.as_bytes();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        // z iterates in canonical order, so the first viable block wins.
        let block = z
            .iter()
            .find(|b| {
                let l = b.len();
                i + l <= n && bytes[i..i + l] == *b.as_bytes() && reach[i + l]
            })
            .expect("reachable position has a viable block");
        i += block.len();
        blocks.push(block.clone());
    }
    Some(Factorization { blocks })
}

/// Number of distinct factorizations of `w` over `z` (saturating).
pub fn count_factorizations(w: &Word, z: &FiniteWordSet) -> u64 {
    let n = w.len();
    let bytes = w.as_bytes();
    let mut count = vec![0u64; n + 1];
    count[n] = 1;
    for i in (0..n).rev() {
        let mut total = 0u64;
        for b in z.iter() {
            let l = b.len();
            if i + l <= n && bytes[i..i + l] == *b.as_bytes() {
                total = total.saturating_add(count[i + l]);
            }
        }
        count[i] = total;
    }
    count[0]
}

/// The first `limit` factorizations of `w` over `z` in canonical block-choice
/// order.
pub fn factorizations_up_to(w: &Word, z: &FiniteWordSet, limit: usize) -> Vec<Factorization> {
    let reach = suffix_reachability(w, z);
    let mut out = Vec::new();
    if !reach[0] || limit == 0 {
        return out;
    }
    let n = w.len();
    let bytes = w.as_bytes();
    let mut stack: Vec<Word> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        n: usize,
        bytes: &[u8],
        z: &FiniteWordSet,
        reach: &[bool],
        stack: &mut Vec<Word>,
        out: &mut Vec<Factorization>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == n {
            out.push(Factorization {
                blocks: stack.clone(),
            });
            return;
        }
        for b in z.iter() {
            let l = b.len();
            if i + l <= n && bytes[i..i + l] == *b.as_bytes() && reach[i + l] {
                stack.push(b.clone());
                go(i + l, n, bytes, z, reach, stack, out, limit);
                stack.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
    go(0, n, bytes, z, &reach, &mut stack, &mut out, limit);
    out
}

/// First square factor `uu` of `w`, reported as `u`, preferring short squares
/// at early offsets.
pub fn first_square(w: &Word) -> Option<Word> {
    let n = w.len();
    let bytes = w.as_bytes();
    for len in 1..=n / 2 {
        for start in 0..=n - 2 * len {
            if bytes[start..start + len] == bytes[start + len..start + 2 * len] {
                return Some(w.slice(start, start + len));
            }
        }
    }
    None
}

pub fn is_square_free(w: &Word) -> bool {
    first_square(w).is_none()
}

/// All nonempty words over the first `alphabet_size` letters (`a`, `b`, …) of
/// length at most `max_len`, in canonical order.
pub fn enumerate_words(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    assert!((1..=26).contains(&alphabet_size));
    let letters: Vec<u8> = (0..alphabet_size).map(|i| b'a' + i as u8).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet_size);
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Word::from_bytes));
        layer = next;
    }
    out
}
