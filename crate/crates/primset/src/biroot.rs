//! Bi-roots of a single primitive word: enumeration under a size bound, the
//! square-root uniqueness threshold, the half-length conjecture scan, and a
//! repetitiveness score.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::maximality::is_primitive_pair;
use crate::words::{first_square, is_primitive, parse_over, Factorization, Word, WordPair};

/// A primitive pair `{x, y}` together with the factorization of the word
/// over it; the factorization uses both components at least once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiRoot {
    pub pair: WordPair,
    pub factorization: Factorization,
}

impl BiRoot {
    pub fn size(&self) -> usize {
        self.pair.size()
    }
}

impl fmt::Display for BiRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (size {})", self.pair, self.size())
    }
}

fn require_primitive(w: &Word) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_primitive(w)? {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    Ok(())
}

/// All bi-roots of `w` of size at most `max_size`, canonically ordered by
/// (size, pair).
///
/// The first block of any factorization is a prefix of `w`, so candidates
/// enumerate as: a nonempty proper prefix `x`, a repetition count `i ≥ 1`
/// with `x^i` still a prefix, and a nonempty prefix `y` of the remaining
/// suffix. A candidate pair survives if `w` parses over it using both
/// components and the pair is primitive.
pub fn biroots(w: &Word, max_size: usize) -> Result<Vec<BiRoot>> {
    require_primitive(w)?;
    if max_size < 2 {
        return Err(Error::MaxSizeTooSmall);
    }
    let mut found: BTreeSet<WordPair> = BTreeSet::new();
    let mut out: Vec<BiRoot> = Vec::new();
    for x in w.proper_prefixes() {
        if x.len() + 1 > max_size {
            break;
        }
        let mut i = 1;
        while x.len() * i < w.len() && w.starts_with(&x.repeat(i)) {
            let rest = w.slice(x.len() * i, w.len());
            for y in rest.prefixes() {
                if x.len() + y.len() > max_size {
                    break;
                }
                if x == y {
                    continue;
                }
                let pair = WordPair::new(x.clone(), y.clone())?;
                if found.contains(&pair) {
                    continue;
                }
                let set = pair.as_set();
                let factorization = match parse_over(w, &set) {
                    Some(f) => f,
                    None => continue,
                };
                if !factorization.uses(&x) || !factorization.uses(&y) {
                    continue;
                }
                if !is_primitive_pair(&x, &y)? {
                    continue;
                }
                found.insert(pair.clone());
                out.push(BiRoot {
                    pair,
                    factorization,
                });
            }
            i += 1;
        }
    }
    out.sort_by_key(|b| (b.size(), b.pair.clone()));
    Ok(out)
}

/// Largest size `s` with `s² < n`, if any size at least 2 qualifies.
pub(crate) fn small_size_bound(n: usize) -> Option<usize> {
    let mut s = 0usize;
    while (s + 1) * (s + 1) < n {
        s += 1;
    }
    (s >= 2).then_some(s)
}

/// The bi-root of size below `√|w|` if one exists. Finding two is a broken
/// uniqueness invariant and aborts loudly with both witnesses.
pub fn unique_small_biroot(w: &Word) -> Result<Option<BiRoot>> {
    require_primitive(w)?;
    let bound = match small_size_bound(w.len()) {
        Some(b) => b,
        None => return Ok(None),
    };
    let small = biroots(w, bound)?;
    if small.len() > 1 {
        return Err(Error::invariant(format!(
            "two bi-roots of {w} below the square-root threshold: {} and {}",
            small[0], small[1]
        )));
    }
    Ok(small.into_iter().next())
}

/// Report of the half-length scan. Counts are reported, never asserted; two
/// or more qualifying bi-roots flag the word for review.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfLengthScan {
    pub count_below_half: usize,
    pub witnesses: Vec<BiRoot>,
    pub flagged: bool,
}

/// Count bi-roots of size strictly below `|w|/2`.
pub fn conjecture2_scan(w: &Word) -> Result<HalfLengthScan> {
    require_primitive(w)?;
    // size s qualifies iff 2s < |w|; bound in exact integer arithmetic.
    let bound = (w.len().saturating_sub(1)) / 2;
    let witnesses = if bound < 2 {
        Vec::new()
    } else {
        biroots(w, bound)?
    };
    Ok(HalfLengthScan {
        count_below_half: witnesses.len(),
        flagged: witnesses.len() >= 2,
        witnesses,
    })
}

/// For square-free words, assert that no bi-root of size below `|w|/4`
/// exists (a shorter one would force a square). Violation is an invariant
/// failure, not a caller error.
pub fn squarefree_bound_check(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(square) = first_square(w) {
        return Err(Error::NotSquareFree {
            word: w.to_string(),
            square: square.to_string(),
        });
    }
    // size s qualifies iff 4s < |w|.
    let bound = (w.len().saturating_sub(1)) / 4;
    if bound < 2 {
        return Ok(true);
    }
    let offenders = biroots(w, bound)?;
    if let Some(b) = offenders.first() {
        return Err(Error::invariant(format!(
            "square-free word {w} has bi-root {b} below the quarter-length bound"
        )));
    }
    Ok(true)
}

/// An exact nonnegative rational, kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let g = gcd(num.max(1), den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Minimal bi-root size within `max_size`, divided by `|w|`: low scores mean
/// the word is built from a short pair, i.e. hides repetitive structure.
pub fn repetitiveness_score(w: &Word, max_size: usize) -> Result<Option<Ratio>> {
    require_primitive(w)?;
    let all = biroots(w, max_size)?;
    Ok(all
        .first()
        .map(|b| Ratio::new(b.size() as u64, w.len() as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::FiniteWordSet;

    fn w(s: &str) -> Word {
        Word::from_text(s)
    }

    fn pair(a: &str, b: &str) -> WordPair {
        WordPair::new(w(a), w(b)).unwrap()
    }

    /// Independent enumeration: every unordered pair of factors up to the
    /// size bound, tested for coverage with both blocks used and pair
    /// primitivity. No prefix shortcut.
    fn biroots_by_exhaustion(word: &Word, max_size: usize) -> Vec<WordPair> {
        let singleton = FiniteWordSet::singleton(word.clone()).unwrap();
        let factors = singleton.factor_closure();
        let mut out = Vec::new();
        for (i, x) in factors.iter().enumerate() {
            for y in factors.iter().skip(i + 1) {
                if x.len() + y.len() > max_size {
                    continue;
                }
                let p = WordPair::new(x.clone(), y.clone()).unwrap();
                let f = match parse_over(word, &p.as_set()) {
                    Some(f) => f,
                    None => continue,
                };
                if !f.uses(x) || !f.uses(y) {
                    continue;
                }
                if is_primitive_pair(x, y).unwrap() {
                    out.push(p);
                }
            }
        }
        out.sort_by_key(|p| (p.size(), p.clone()));
        out
    }

    #[test]
    fn biroots_of_short_primitive_word() {
        // Every two-piece split of this word happens to be a primitive pair;
        // frozen from the exhaustive oracle below.
        let word = w("abcbac");
        let expected = vec![
            pair("a", "bcbac"),
            pair("c", "abcba"),
            pair("ab", "cbac"),
            pair("ac", "abcb"),
            pair("abc", "bac"),
        ];
        let got = biroots(&word, 6).unwrap();
        let pairs: Vec<WordPair> = got.iter().map(|b| b.pair.clone()).collect();
        assert_eq!(pairs, expected);
        assert_eq!(biroots_by_exhaustion(&word, 6), expected);
        for b in &got {
            assert_eq!(b.factorization.concat(), word);
        }
    }

    #[test]
    fn unique_small_biroot_examples() {
        let b = unique_small_biroot(&w("abcaabcabc")).unwrap().unwrap();
        assert_eq!(b.pair, pair("a", "bc"));
        assert_eq!(b.size(), 3);
        assert!(unique_small_biroot(&w("abcbac")).unwrap().is_none());
        assert!(unique_small_biroot(&w("ab")).unwrap().is_none());
        assert_eq!(
            unique_small_biroot(&w("abab")),
            Err(Error::NotPrimitive("abab".into()))
        );
    }

    #[test]
    fn only_biroot_within_bound() {
        let roots = biroots(&w("abcaabcabc"), 3).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].pair, pair("a", "bc"));
        assert_eq!(roots[0].factorization.to_string(), "a·bc·a·a·bc·a·bc");
    }

    #[test]
    fn all_distinct_letters_gives_trivial_splits() {
        for text in ["abcd", "abcde"] {
            let word = w(text);
            let roots = biroots(&word, word.len()).unwrap();
            assert_eq!(roots.len(), word.len() - 1);
            for b in &roots {
                assert_eq!(b.size(), word.len());
                assert_eq!(b.factorization.len(), 2);
            }
        }
    }

    #[test]
    fn half_length_scan_examples() {
        let scan = conjecture2_scan(&w("abcaabcabc")).unwrap();
        assert_eq!(scan.count_below_half, 1);
        assert!(!scan.flagged);
        assert_eq!(conjecture2_scan(&w("ab")).unwrap().count_below_half, 0);
        assert_eq!(conjecture2_scan(&w("abcbac")).unwrap().count_below_half, 0);
    }

    #[test]
    fn squarefree_examples() {
        assert!(squarefree_bound_check(&w("abcacbabcb")).unwrap());
        assert!(squarefree_bound_check(&w("abc")).unwrap());
        assert!(matches!(
            squarefree_bound_check(&w("aa")),
            Err(Error::NotSquareFree { .. })
        ));
    }

    #[test]
    fn scores() {
        let s = repetitiveness_score(&w("abcaabcabc"), 5).unwrap().unwrap();
        assert_eq!((s.num(), s.den()), (3, 10));
        assert_eq!(s.to_string(), "3/10");
        let s = repetitiveness_score(&w("ab"), 2).unwrap().unwrap();
        assert_eq!((s.num(), s.den()), (1, 1));
        assert_eq!(s.to_string(), "1");
        assert!(repetitiveness_score(&w("abcbac"), 5).unwrap().is_none());
    }

    #[test]
    fn enumeration_matches_exhaustive_oracle() {
        for text in ["abcaabcabc", "aababb", "abcabcb", "aabab"] {
            let word = w(text);
            if !is_primitive(&word).unwrap() {
                continue;
            }
            let bound = word.len();
            let fast: Vec<WordPair> = biroots(&word, bound)
                .unwrap()
                .into_iter()
                .map(|b| b.pair)
                .collect();
            assert_eq!(fast, biroots_by_exhaustion(&word, bound), "on {word}");
        }
    }
}
