//! Primitive sets and maximal finitely generated submonoids: the unique
//! rank-2 root, bounded maximality certificates, primitive roots of sets, and
//! the structural predicates on primitive pairs (internal occurrences,
//! circularity and purity up to a bound).

use crate::error::{Error, Result};
use crate::sets::FiniteWordSet;
use crate::words::{commute, parse_over, primitive_root, Factorization, Word, WordPair};

/// Result of rooting a two-word set: either the words commute and share a
/// primitive root, or they span a rank-2 monoid with a unique primitive pair
/// covering both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PairRoot {
    Rank1 {
        root: Word,
        fact_x: Factorization,
        fact_y: Factorization,
    },
    Rank2 {
        pair: WordPair,
        fact_x: Factorization,
        fact_y: Factorization,
    },
}

impl PairRoot {
    pub fn is_rank2(&self) -> bool {
        matches!(self, PairRoot::Rank2 { .. })
    }

    pub fn root_set(&self) -> FiniteWordSet {
        match self {
            PairRoot::Rank1 { root, .. } => {
                FiniteWordSet::singleton(root.clone()).expect("root is nonempty")
            }
            PairRoot::Rank2 { pair, .. } => pair.as_set(),
        }
    }
}

/// Fast membership test for `{u, v}^*` on raw bytes.
fn parses_over_two(w: &[u8], u: &[u8], v: &[u8]) -> bool {
    let n = w.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for b in [u, v] {
            if i + b.len() <= n && &w[i..i + b.len()] == b {
                reach[i + b.len()] = true;
            }
        }
    }
    reach[n]
}

/// The unique primitive root of `{x, y}`.
///
/// Commuting inputs share a primitive word root. Otherwise the root is the
/// covering pair of minimal total length, drawn from the factor closure:
/// if `x, y ∈ {u, v}^*` with `xy ≠ yx`, neither word can use only one
/// component (they would commute), so both `u` and `v` occur among the blocks
/// and `|u| + |v| ≤ |x| + |y|`, with equality exactly when `{u, v} = {x, y}`.
/// Every covering pair is in turn covered by the unique primitive root, so
/// the minimal covering pair is that root.
pub fn pair_root(x: &Word, y: &Word) -> Result<PairRoot> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyWord);
    }
    if x == y {
        return Err(Error::EqualWords);
    }
    if commute(x, y) {
        let (root, _) = primitive_root(x)?;
        let set = FiniteWordSet::singleton(root.clone())?;
        let fact_x = parse_over(x, &set).expect("x is a power of its root");
        let fact_y = parse_over(y, &set).expect("y is a power of the shared root");
        return Ok(PairRoot::Rank1 {
            root,
            fact_x,
            fact_y,
        });
    }
    let both = FiniteWordSet::new(vec![x.clone(), y.clone()])?;
    let cands = both.factor_closure();
    let prefixes_x: Vec<bool> = cands.iter().map(|c| x.starts_with(c)).collect();
    let prefixes_y: Vec<bool> = cands.iter().map(|c| y.starts_with(c)).collect();
    // A covering pair must contain a prefix of x and a prefix of y (the first
    // blocks of the two factorizations).
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            if (prefixes_x[i] || prefixes_x[j]) && (prefixes_y[i] || prefixes_y[j]) {
                pairs.push((cands[i].len() + cands[j].len(), i, j));
            }
        }
    }
    pairs.sort();
    for (_, i, j) in pairs {
        let (u, v) = (&cands[i], &cands[j]);
        if parses_over_two(x.as_bytes(), u.as_bytes(), v.as_bytes())
            && parses_over_two(y.as_bytes(), u.as_bytes(), v.as_bytes())
        {
            let pair = WordPair::new(u.clone(), v.clone())?;
            let set = pair.as_set();
            let fact_x = parse_over(x, &set).expect("covering pair parses x");
            let fact_y = parse_over(y, &set).expect("covering pair parses y");
            return Ok(PairRoot::Rank2 {
                pair,
                fact_x,
                fact_y,
            });
        }
    }
    unreachable!("{{x, y}} itself always covers")
}

/// True iff `{x, y}` is its own pair root, i.e. the basis of a 2-maximal
/// submonoid.
pub fn is_primitive_pair(x: &Word, y: &Word) -> Result<bool> {
    match pair_root(x, y)? {
        PairRoot::Rank2 { pair, .. } => Ok(pair.contains(x) && pair.contains(y)),
        PairRoot::Rank1 { .. } => Ok(false),
    }
}

/// Outcome of the bounded maximality search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MaximalityCertificate {
    pub is_maximal: bool,
    /// A set `Z` with `|Z| ≤ |X|`, `X ⊆ Z^*` and `Z^* ≠ X^*`, present exactly
    /// when the monoid is not maximal.
    pub dominating_set: Option<FiniteWordSet>,
    pub search_bound_note: String,
}

/// Decide whether `X^*` is `|X|`-maximal.
///
/// The search ranges over subsets of the factor closure: any dominating set
/// shrinks to the subset actually used in factorizations of the members (all
/// factors of `X`), and if that used subset generates `X^*` exactly, it can
/// be re-extended by any factor outside `X^*`, which must exist unless `X^*`
/// is the whole free monoid over its alphabet and hence maximal anyway.
///
/// Note the predicate concerns the generated monoid: a redundant generating
/// set such as `{a, aa}` is reported maximal whenever its monoid is. For
/// minimal generating sets this coincides with the set being primitive.
pub fn is_primitive_set(x: &FiniteWordSet) -> Result<MaximalityCertificate> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let cands = x.factor_closure();
    let note = format!(
        "searched all subsets of size <= {} of the {}-element factor closure",
        x.len(),
        cands.len()
    );
    let mut chosen: Vec<usize> = Vec::new();
    for k in 1..=x.len() {
        if let Some(z) = dominator_search(x, &cands, k, 0, &mut chosen) {
            return Ok(MaximalityCertificate {
                is_maximal: false,
                dominating_set: Some(z),
                search_bound_note: note,
            });
        }
    }
    Ok(MaximalityCertificate {
        is_maximal: true,
        dominating_set: None,
        search_bound_note: note,
    })
}

fn dominator_search(
    x: &FiniteWordSet,
    cands: &[Word],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<FiniteWordSet> {
    if chosen.len() == k {
        let z = FiniteWordSet::new(chosen.iter().map(|&i| cands[i].clone()).collect()).ok()?;
        if z == *x {
            return None;
        }
        if !x.iter().all(|m| parse_over(m, &z).is_some()) {
            return None;
        }
        // X ⊆ Z^* holds; the monoids differ iff some member of Z escapes X^*.
        if z.iter().all(|m| parse_over(m, x).is_some()) {
            return None;
        }
        return Some(z);
    }
    if cands.len() - start < k - chosen.len() {
        return None;
    }
    for i in start..cands.len() {
        chosen.push(i);
        if let Some(z) = dominator_search(x, cands, k, i + 1, chosen) {
            return Some(z);
        }
        chosen.pop();
    }
    None
}

/// All primitive sets `Y` with `X ⊆ Y^*` and `|Y| = r(X)`, drawn from the
/// factor closure (complete: every member of such a root is used in some
/// factorization, hence is a factor). Rank 1 and 2 give a single root; rank 3
/// and above may give several.
pub fn primitive_roots_of_set(x: &FiniteWordSet) -> Result<Vec<FiniteWordSet>> {
    let rank = crate::codes::combinatorial_rank(x)?.rank;
    let cands = x.factor_closure();
    let mut covers: Vec<FiniteWordSet> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    collect_covers(x, &cands, rank, 0, &mut chosen, &mut covers);
    let mut roots: Vec<FiniteWordSet> = Vec::new();
    for y in covers {
        if is_primitive_set(&y)?.is_maximal {
            roots.push(y);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn collect_covers(
    x: &FiniteWordSet,
    cands: &[Word],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<FiniteWordSet>,
) {
    if chosen.len() == k {
        if let Ok(y) = FiniteWordSet::new(chosen.iter().map(|&i| cands[i].clone()).collect()) {
            if x.iter().all(|m| parse_over(m, &y).is_some()) {
                out.push(y);
            }
        }
        return;
    }
    if cands.len() - start < k - chosen.len() {
        return;
    }
    for i in start..cands.len() {
        chosen.push(i);
        collect_covers(x, cands, k, i + 1, chosen, out);
        chosen.pop();
    }
}

/// An internal occurrence of `xy` or `yx` inside a product of three blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InternalOccurrence {
    /// The offending product, as block labels (each `x` or `y`).
    pub triple: [Word; 3],
    /// The pattern (`xy` or `yx`) that occurs internally.
    pub pattern: Word,
    /// Offset of the internal occurrence inside the product.
    pub offset: usize,
}

/// Scan all eight products of three blocks from `{x, y}` for an internal
/// occurrence of `xy` or `yx` (material on both sides). Returns the first
/// violation in canonical scan order, or `None` when there is none.
pub fn internal_xy_occurrence(x: &Word, y: &Word) -> Result<Option<InternalOccurrence>> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyWord);
    }
    let patterns = [x.concat(y), y.concat(x)];
    for a in [x, y] {
        for b in [x, y] {
            for c in [x, y] {
                let product = a.concat(b).concat(c);
                for pattern in &patterns {
                    for offset in product.occurrences(pattern) {
                        if offset > 0 && offset + pattern.len() < product.len() {
                            return Ok(Some(InternalOccurrence {
                                triple: [a.clone(), b.clone(), c.clone()],
                                pattern: pattern.clone(),
                                offset,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn check_no_internal_xy(x: &Word, y: &Word) -> Result<bool> {
    Ok(internal_xy_occurrence(x, y)?.is_none())
}

/// Bounded circularity check: enumerate every `m ∈ X^*` with `|m| ≤ bound`
/// and every split `m = uv`; a split with `vu ∈ X^*` but `u ∉ X^*` refutes
/// circularity and is returned as the witness.
pub fn circularity_witness_up_to(x: &FiniteWordSet, bound: usize) -> Option<(Word, Word)> {
    for m in x.star_words_up_to(bound) {
        for cut in 1..m.len() {
            let u = m.slice(0, cut);
            let v = m.slice(cut, m.len());
            let vu = v.concat(&u);
            if parse_over(&vu, x).is_some() && parse_over(&u, x).is_none() {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn is_circular_up_to(x: &FiniteWordSet, bound: usize) -> bool {
    circularity_witness_up_to(x, bound).is_none()
}

/// Default falsification budget for circularity checks in property suites.
pub fn default_circularity_bound(x: &FiniteWordSet) -> usize {
    3 * x.total_len()
}

/// Bounded purity check: for every `m ∈ X^*` with `|m| ≤ bound` that is a
/// proper power, its primitive root must lie in `X^*`; the first failing root
/// is the witness.
pub fn purity_witness_up_to(x: &FiniteWordSet, bound: usize) -> Option<Word> {
    for m in x.star_words_up_to(bound) {
        let (root, exponent) = primitive_root(&m).expect("star words are nonempty");
        if exponent >= 2 && parse_over(&root, x).is_none() {
            return Some(root);
        }
    }
    None
}

pub fn is_pure_up_to(x: &FiniteWordSet, bound: usize) -> bool {
    purity_witness_up_to(x, bound).is_none()
}

/// Exhaustive reference for the rank-2 root: every covering pair from the
/// factor closure, no minimality shortcut. Used as the independent oracle in
/// sweeps and tests.
pub fn all_covering_pairs(x: &Word, y: &Word) -> Vec<WordPair> {
    let both = match FiniteWordSet::new(vec![x.clone(), y.clone()]) {
        Ok(s) => s,
        Err(_) => return Vec::new(),
    };
    let cands = both.factor_closure();
    let mut out = Vec::new();
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            let (u, v) = (&cands[i], &cands[j]);
            if parses_over_two(x.as_bytes(), u.as_bytes(), v.as_bytes())
                && parses_over_two(y.as_bytes(), u.as_bytes(), v.as_bytes())
            {
                out.push(WordPair::new(u.clone(), v.clone()).expect("distinct candidates"));
            }
        }
    }
    out
}
