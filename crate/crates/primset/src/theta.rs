//! Involutive morphisms and antimorphisms on words: images, palindromes,
//! theta-powers and the theta-root, invariant sets, and the checks bridging
//! theta-primitivity to primitive pairs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::maximality::{internal_xy_occurrence, is_primitive_pair, pair_root, PairRoot};
use crate::sets::FiniteWordSet;
use crate::words::{commute, is_primitive, parse_over, Word, WordPair};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ThetaKind {
    Morphic,
    Antimorphic,
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaKind::Morphic => write!(f, "morphic"),
            ThetaKind::Antimorphic => write!(f, "antimorphic"),
        }
    }
}

/// An involutive letter map extended to words as a morphism or antimorphism.
/// The morphic identity is rejected at construction; the antimorphic identity
/// (plain reversal) is allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaMap {
    map: BTreeMap<u8, u8>,
    kind: ThetaKind,
}

impl ThetaMap {
    pub fn new(pairs: impl IntoIterator<Item = (u8, u8)>, kind: ThetaKind) -> Result<Self> {
        let map: BTreeMap<u8, u8> = pairs.into_iter().collect();
        for (&a, &b) in &map {
            if map.get(&b) != Some(&a) {
                return Err(Error::NotInvolutive);
            }
        }
        let theta = ThetaMap { map, kind };
        if kind == ThetaKind::Morphic && theta.is_identity() {
            return Err(Error::IdentityMorphism);
        }
        Ok(theta)
    }

    /// Parse a specification such as `"a:b,b:a,c:c"`.
    pub fn from_spec(spec: &str, kind: ThetaKind) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let mut halves = item.split(':');
            let (Some(from), Some(to), None) = (halves.next(), halves.next(), halves.next()) else {
                return Err(Error::NotInvolutive);
            };
            let (from, to) = (from.trim().as_bytes(), to.trim().as_bytes());
            if from.len() != 1 || to.len() != 1 {
                return Err(Error::NotInvolutive);
            }
            pairs.push((from[0], to[0]));
        }
        Self::new(pairs, kind)
    }

    pub fn kind(&self) -> ThetaKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn alphabet(&self) -> Vec<u8> {
        self.map.keys().copied().collect()
    }

    /// Render back to the `a:b,b:a` specification form.
    pub fn spec_string(&self) -> String {
        self.map
            .iter()
            .map(|(&a, &b)| format!("{}:{}", a as char, b as char))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Letterwise image, reversed for antimorphisms.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len());
        for &sym in w.as_bytes() {
            match self.map.get(&sym) {
                Some(&img) => out.push(img),
                None => return Err(Error::SymbolOutsideAlphabet(sym)),
            }
        }
        if self.kind == ThetaKind::Antimorphic {
            out.reverse();
        }
        Ok(Word::from_bytes(out))
    }

    pub fn apply_set(&self, x: &FiniteWordSet) -> Result<FiniteWordSet> {
        FiniteWordSet::new(
            x.iter()
                .map(|w| self.apply(w))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// Fixed points of an antimorphic involution.
pub fn is_theta_palindrome(theta: &ThetaMap, w: &Word) -> Result<bool> {
    if theta.kind() != ThetaKind::Antimorphic {
        return Err(Error::MorphicPalindrome);
    }
    Ok(theta.apply(w)? == *w)
}

/// Block tags of a theta-power factorization: each block is the root itself
/// or its image.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BlockTag {
    Direct,
    Mirror,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaRoot {
    pub root: Word,
    pub tags: Vec<BlockTag>,
}

/// The shortest prefix `t` of `w` with `|t|` dividing `|w|` such that every
/// `|t|`-block of `w` is `t` or `θ(t)`; the first block is `t` itself. A word
/// is a theta-power of `t` exactly when `w ∈ t{t, θ(t)}^*`, so this prefix is
/// the theta-root and is itself theta-primitive.
pub fn theta_root(theta: &ThetaMap, w: &Word) -> Result<ThetaRoot> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let root = w.slice(0, d);
        let image = theta.apply(&root)?;
        let mut tags = Vec::with_capacity(n / d);
        let mut ok = true;
        for block_index in 0..n / d {
            let block = w.slice(block_index * d, (block_index + 1) * d);
            if block == root {
                tags.push(BlockTag::Direct);
            } else if block == image {
                tags.push(BlockTag::Mirror);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(ThetaRoot { root, tags });
        }
    }
    unreachable!("w is a theta-power of itself")
}

pub fn is_theta_primitive(theta: &ThetaMap, w: &Word) -> Result<bool> {
    Ok(theta_root(theta, w)?.root == *w)
}

pub fn is_theta_invariant(theta: &ThetaMap, x: &FiniteWordSet) -> Result<bool> {
    Ok(theta.apply_set(x)? == *x)
}

/// Verify that the pair root of a theta-invariant non-commuting pair is
/// itself theta-invariant.
pub fn check_root_invariance(theta: &ThetaMap, x: &Word, y: &Word) -> Result<bool> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyWord);
    }
    if x == y {
        return Err(Error::EqualWords);
    }
    if commute(x, y) {
        return Err(Error::CommutingPair);
    }
    let input = FiniteWordSet::new(vec![x.clone(), y.clone()])?;
    if !is_theta_invariant(theta, &input)? {
        return Err(Error::NotThetaInvariant);
    }
    let root = pair_root(x, y)?.root_set();
    is_theta_invariant(theta, &root)
}

/// For a morphic involution, theta-primitivity of `w` and primitivity of the
/// pair `{w, θ(w)}` are equivalent; this computes both sides independently
/// and reports whether they agree. When `w = θ(w)` the pair collapses and the
/// equivalence degenerates to ordinary primitivity of `w`.
pub fn check_morphic_primitivity_equivalence(theta: &ThetaMap, w: &Word) -> Result<bool> {
    if theta.kind() != ThetaKind::Morphic {
        return Err(Error::MorphicPalindrome);
    }
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let image = theta.apply(w)?;
    let tp = is_theta_primitive(theta, w)?;
    if image == *w {
        return Ok(tp == is_primitive(w)?);
    }
    let pp = is_primitive_pair(w, &image)?;
    Ok(tp == pp)
}

/// Outcome of the antimorphic analysis of `w` against the pair `{w, θ(w)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntimorphicReport {
    pub theta_primitive: bool,
    pub pair_primitive: bool,
    /// When `w` is theta-primitive but the pair is not, its pair root, whose
    /// two components are theta-palindromes.
    pub palindromic_root: Option<WordPair>,
}

/// For an antimorphic involution: pair primitivity forces theta-primitivity,
/// and a theta-primitive word with an imprimitive pair factors over two
/// theta-palindromes. Failures of either implication are invariant
/// violations, reported loudly.
pub fn antimorphic_primitivity_report(theta: &ThetaMap, w: &Word) -> Result<AntimorphicReport> {
    if theta.kind() != ThetaKind::Antimorphic {
        return Err(Error::MorphicPalindrome);
    }
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let image = theta.apply(w)?;
    if image == *w {
        return Err(Error::EqualWords);
    }
    let theta_primitive = is_theta_primitive(theta, w)?;
    let pair_primitive = is_primitive_pair(w, &image)?;
    if pair_primitive && !theta_primitive {
        return Err(Error::invariant(format!(
            "{{{w}, {image}}} is a primitive pair but {w} is not theta-primitive"
        )));
    }
    let palindromic_root = if theta_primitive && !pair_primitive {
        let root = match pair_root(w, &image)? {
            PairRoot::Rank2 { pair, .. } => pair,
            PairRoot::Rank1 { .. } => {
                return Err(Error::invariant(format!(
                    "theta-primitive {w} commutes with its image {image}"
                )))
            }
        };
        for part in [root.first(), root.second()] {
            if !is_theta_palindrome(theta, part)? {
                return Err(Error::invariant(format!(
                    "root component {part} of {{{w}, {image}}} is not a theta-palindrome"
                )));
            }
        }
        if parse_over(w, &root.as_set()).is_none() {
            return Err(Error::invariant(format!(
                "{w} does not factor over its pair root {root}"
            )));
        }
        Some(root)
    } else {
        None
    };
    Ok(AntimorphicReport {
        theta_primitive,
        pair_primitive,
        palindromic_root,
    })
}

/// For theta-primitive `x`, neither `xθ(x)` nor `θ(x)x` occurs internally in
/// a product of three blocks from `{x, θ(x)}`.
pub fn check_no_internal_images(theta: &ThetaMap, x: &Word) -> Result<bool> {
    if !is_theta_primitive(theta, x)? {
        return Err(Error::NotThetaPrimitive(x.to_string()));
    }
    let image = theta.apply(x)?;
    if image == *x {
        // Both patterns collapse to x²; a theta-primitive word is primitive,
        // so the scan below (with y = x) still applies.
        return Ok(internal_xy_occurrence(x, x)?.is_none());
    }
    Ok(internal_xy_occurrence(x, &image)?.is_none())
}

/// Every involutive permutation of the first `alphabet_size` letters other
/// than the identity, as morphic maps, in a fixed order.
pub fn morphic_involutions(alphabet_size: usize) -> Vec<ThetaMap> {
    let letters: Vec<u8> = (0..alphabet_size).map(|i| b'a' + i as u8).collect();
    let mut out = Vec::new();
    // Enumerate involutive permutations by the sorted list of swapped pairs.
    fn build(
        letters: &[u8],
        used: &mut Vec<bool>,
        pairs: &mut Vec<(u8, u8)>,
        start: usize,
        out: &mut Vec<Vec<(u8, u8)>>,
    ) {
        if let Some(i) = (start..letters.len()).find(|&i| !used[i]) {
            // letter i stays fixed
            used[i] = true;
            build(letters, used, pairs, i + 1, out);
            used[i] = false;
            // or swaps with a later letter
            for j in i + 1..letters.len() {
                if !used[j] {
                    used[i] = true;
                    used[j] = true;
                    pairs.push((letters[i], letters[j]));
                    build(letters, used, pairs, i + 1, out);
                    pairs.pop();
                    used[i] = false;
                    used[j] = false;
                }
            }
        } else {
            out.push(pairs.clone());
        }
    }
    let mut swaps: Vec<Vec<(u8, u8)>> = Vec::new();
    build(
        &letters,
        &mut vec![false; letters.len()],
        &mut Vec::new(),
        0,
        &mut swaps,
    );
    swaps.sort();
    for swap in swaps {
        if swap.is_empty() {
            continue; // identity
        }
        let mut mapping: Vec<(u8, u8)> = letters.iter().map(|&l| (l, l)).collect();
        for (a, b) in swap {
            for entry in mapping.iter_mut() {
                if entry.0 == a {
                    entry.1 = b;
                }
                if entry.0 == b {
                    entry.1 = a;
                }
            }
        }
        out.push(ThetaMap::new(mapping, ThetaKind::Morphic).expect("involution by construction"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_text(s)
    }

    fn swap_ab() -> ThetaMap {
        ThetaMap::from_spec("a:b,b:a,c:c", ThetaKind::Morphic).unwrap()
    }

    fn mirror() -> ThetaMap {
        ThetaMap::from_spec("a:a,b:b,c:c", ThetaKind::Antimorphic).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(ThetaMap::from_spec("a:b,b:a", ThetaKind::Morphic).is_ok());
        assert_eq!(
            ThetaMap::from_spec("a:b,b:c,c:a", ThetaKind::Morphic),
            Err(Error::NotInvolutive)
        );
        assert_eq!(
            ThetaMap::from_spec("a:a,b:b", ThetaKind::Morphic),
            Err(Error::IdentityMorphism)
        );
        // The antimorphic identity is plain reversal and is allowed.
        assert!(ThetaMap::from_spec("a:a,b:b", ThetaKind::Antimorphic).is_ok());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(swap_ab().apply(&w("abc")).unwrap(), w("bac"));
        assert_eq!(mirror().apply(&w("abb")).unwrap(), w("bba"));
        assert_eq!(mirror().apply(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(
            swap_ab().apply(&w("xyz")),
            Err(Error::SymbolOutsideAlphabet(b'x'))
        );
    }

    #[test]
    fn involution_on_words() {
        for theta in [swap_ab(), mirror()] {
            for text in ["a", "ab", "abc", "cabba"] {
                let word = w(text);
                assert_eq!(theta.apply(&theta.apply(&word).unwrap()).unwrap(), word);
            }
        }
    }

    #[test]
    fn palindromes() {
        assert!(is_theta_palindrome(&mirror(), &w("bcb")).unwrap());
        assert!(!is_theta_palindrome(&mirror(), &w("ab")).unwrap());
        assert!(is_theta_palindrome(&mirror(), &w("a")).unwrap());
        assert_eq!(
            is_theta_palindrome(&swap_ab(), &w("ab")),
            Err(Error::MorphicPalindrome)
        );
    }

    #[test]
    fn theta_roots() {
        let r = theta_root(&swap_ab(), &w("abcabcabc")).unwrap();
        assert_eq!(r.root, w("abc"));
        assert_eq!(r.tags, vec![BlockTag::Direct; 3]);

        let r = theta_root(&mirror(), &w("abbaabba")).unwrap();
        assert_eq!(r.root, w("ab"));
        assert_eq!(
            r.tags,
            vec![
                BlockTag::Direct,
                BlockTag::Mirror,
                BlockTag::Direct,
                BlockTag::Mirror
            ]
        );

        assert_eq!(theta_root(&mirror(), &w("a")).unwrap().root, w("a"));
    }

    #[test]
    fn theta_root_is_shortest_valid_prefix() {
        // Exhaustive uniqueness check on a small grid: among divisor-length
        // prefixes satisfying the block condition, exactly one is
        // theta-primitive, and it is the shortest.
        for theta in [swap_ab(), mirror()] {
            for word in crate::words::enumerate_words(2, 8) {
                let mut valid = Vec::new();
                for d in 1..=word.len() {
                    if word.len() % d != 0 {
                        continue;
                    }
                    let t = word.slice(0, d);
                    let img = theta.apply(&t).unwrap();
                    let all_blocks = (0..word.len() / d).all(|i| {
                        let b = word.slice(i * d, (i + 1) * d);
                        b == t || b == img
                    });
                    if all_blocks {
                        valid.push(t);
                    }
                }
                let primitive: Vec<&Word> = valid
                    .iter()
                    .filter(|t| is_theta_primitive(&theta, t).unwrap())
                    .collect();
                assert_eq!(primitive.len(), 1, "{word}");
                assert_eq!(primitive[0], &valid[0]);
                assert_eq!(theta_root(&theta, &word).unwrap().root, valid[0]);
            }
        }
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_theta_primitive(&mirror(), &w("abbaabbacbc")).unwrap());
        assert!(!is_theta_primitive(&swap_ab(), &w("abcabcabc")).unwrap());
        // ab = a·θ(a) under the swap, hence not theta-primitive.
        assert!(!is_theta_primitive(&swap_ab(), &w("ab")).unwrap());
    }

    #[test]
    fn invariance() {
        let x = FiniteWordSet::from_text("abc,bac").unwrap();
        assert!(is_theta_invariant(&swap_ab(), &x).unwrap());
        let x = FiniteWordSet::from_text("abcba,bcbabcb").unwrap();
        assert!(is_theta_invariant(&mirror(), &x).unwrap());
        let x = FiniteWordSet::from_text("abc").unwrap();
        assert!(!is_theta_invariant(&swap_ab(), &x).unwrap());
    }

    #[test]
    fn root_invariance_check() {
        // Theta-invariant pair of mirror palindromes rooted at {a, bcb}.
        assert!(check_root_invariance(&mirror(), &w("abcba"), &w("bcbabcb")).unwrap());
        // Pair {t·θ(t), θ(t)·t} under the swap roots at the invariant {abc, bac}.
        assert!(check_root_invariance(&swap_ab(), &w("abcbac"), &w("bacabc")).unwrap());
        // Under the mirror map {ab, ba} IS invariant (each is the other's
        // image); a genuinely non-invariant pair:
        assert_eq!(
            check_root_invariance(&mirror(), &w("ab"), &w("ca")),
            Err(Error::NotThetaInvariant)
        );
    }

    #[test]
    fn morphic_equivalence_examples() {
        let theta = swap_ab();
        assert!(check_morphic_primitivity_equivalence(&theta, &w("abc")).unwrap());
        assert!(is_theta_primitive(&theta, &w("abc")).unwrap());
        assert!(is_primitive_pair(&w("abc"), &w("bac")).unwrap());

        // abcbac = abc·θ(abc): both sides false.
        assert!(check_morphic_primitivity_equivalence(&theta, &w("abcbac")).unwrap());
        assert!(!is_theta_primitive(&theta, &w("abcbac")).unwrap());
        assert!(!is_primitive_pair(&w("abcbac"), &w("bacabc")).unwrap());

        assert!(check_morphic_primitivity_equivalence(&theta, &w("a")).unwrap());
        assert!(is_primitive_pair(&w("a"), &w("b")).unwrap());

        // Degenerate fixed word: reduces to ordinary primitivity.
        assert!(check_morphic_primitivity_equivalence(&theta, &w("c")).unwrap());
        assert!(check_morphic_primitivity_equivalence(&theta, &w("cc")).unwrap());
    }

    #[test]
    fn antimorphic_report_examples() {
        let theta = mirror();
        let r = antimorphic_primitivity_report(&theta, &w("abbaabbacbc")).unwrap();
        assert!(r.theta_primitive);
        assert!(!r.pair_primitive);
        let root = r.palindromic_root.unwrap();
        assert_eq!(root, WordPair::new(w("abba"), w("cbc")).unwrap());

        // Verified by the covering-pair oracle: {ab, ba} roots at {a, b},
        // both palindromes.
        let r = antimorphic_primitivity_report(&theta, &w("ab")).unwrap();
        assert!(r.theta_primitive);
        assert!(!r.pair_primitive);
        assert_eq!(
            r.palindromic_root.unwrap(),
            WordPair::new(w("a"), w("b")).unwrap()
        );

        // abba is a theta-power of ab; palindromes: that's the degenerate
        // image case, rejected as input.
        assert_eq!(
            antimorphic_primitivity_report(&theta, &w("abba")),
            Err(Error::EqualWords)
        );
        // Non-palindromic theta-imprimitive word short-circuits.
        let r = antimorphic_primitivity_report(&theta, &w("abab")).unwrap();
        assert!(!r.theta_primitive);
        assert!(r.palindromic_root.is_none());
    }

    #[test]
    fn internal_image_checks() {
        assert!(check_no_internal_images(&mirror(), &w("abbaabbacbc")).unwrap());
        assert!(check_no_internal_images(&swap_ab(), &w("abc")).unwrap());
        assert!(matches!(
            check_no_internal_images(&swap_ab(), &w("abcbac")),
            Err(Error::NotThetaPrimitive(_))
        ));
    }

    #[test]
    fn root_invariance_over_small_grid() {
        // Every theta-invariant non-commuting pair {w, θ(w)} roots at a
        // theta-invariant pair, for all morphic involutions of three letters
        // and the mirror antimorphism.
        let mut thetas = morphic_involutions(3);
        thetas.push(mirror());
        for theta in &thetas {
            for word in crate::words::enumerate_words(3, 5) {
                let image = theta.apply(&word).unwrap();
                if image == word || crate::words::commute(&word, &image) {
                    continue;
                }
                assert!(
                    check_root_invariance(theta, &word, &image).unwrap(),
                    "root of {{{word}, {image}}} not invariant under {}",
                    theta.spec_string()
                );
            }
        }
    }

    #[test]
    fn antimorphic_implications_over_small_grid() {
        // Pair primitivity forces theta-primitivity, and theta-primitive
        // words with imprimitive pairs factor over two palindromes; both are
        // asserted inside the report builder, which must never return an
        // invariant violation on this grid.
        let theta = mirror();
        for word in crate::words::enumerate_words(2, 8) {
            if theta.apply(&word).unwrap() == word {
                continue;
            }
            let report = antimorphic_primitivity_report(&theta, &word).unwrap();
            if report.pair_primitive {
                assert!(report.theta_primitive, "implication fails on {word}");
            }
        }
    }

    #[test]
    fn involution_enumeration() {
        let thetas = morphic_involutions(3);
        assert_eq!(thetas.len(), 3);
        let specs: Vec<String> = thetas.iter().map(|t| t.spec_string()).collect();
        assert_eq!(specs, vec!["a:b,b:a,c:c", "a:c,b:b,c:a", "a:a,b:c,c:b"]);
        assert_eq!(morphic_involutions(2).len(), 1);
    }
}
