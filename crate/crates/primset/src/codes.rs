//! Code-theoretic analysis of finite word sets: the code test with a shortest
//! double-factorization witness, prefix/suffix classification, the dependency
//! graph, free hulls, and both notions of rank.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::automaton::{build_monoid_automaton, languages_intersect, prepend_word};
use crate::error::{Error, Result};
use crate::sets::FiniteWordSet;
use crate::words::{factorizations_up_to, parse_over, Factorization, Word};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct FixClassification {
    pub is_prefix: bool,
    pub is_suffix: bool,
    pub is_bifix: bool,
}

/// Pairwise prefix/suffix comparison over distinct members.
pub fn classify_fix(x: &FiniteWordSet) -> FixClassification {
    let words = x.words();
    let mut is_prefix = true;
    let mut is_suffix = true;
    for (i, u) in words.iter().enumerate() {
        for v in words.iter().skip(i + 1) {
            // u < v canonically, so only u can be a strict prefix/suffix of v.
            if v.starts_with(u) {
                is_prefix = false;
            }
            if v.ends_with(u) {
                is_suffix = false;
            }
        }
    }
    FixClassification {
        is_prefix,
        is_suffix,
        is_bifix: is_prefix && is_suffix,
    }
}

/// Evidence that a set is not a code: one word with two distinct
/// factorizations over the set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeWitness {
    pub word: Word,
    pub factorization_a: Factorization,
    pub factorization_b: Factorization,
}

/// Residual overhangs of the two-stream factorization race. Every overhang is
/// a nonempty proper suffix of a member, so the state space is finite; a path
/// to the aligned state is exactly a doubly-factorizable word.
struct OverhangGraph {
    states: Vec<Word>,
    index: BTreeMap<Word, usize>,
    /// dist[s] = fewest letters still to append before the streams align.
    dist: Vec<usize>,
}

const UNREACHED: usize = usize::MAX;

impl OverhangGraph {
    fn build(x: &FiniteWordSet) -> Self {
        let mut state_set: BTreeSet<Word> = BTreeSet::new();
        for w in x.iter() {
            for i in 1..w.len() {
                state_set.insert(w.slice(i, w.len()));
            }
        }
        let states: Vec<Word> = state_set.into_iter().collect();
        let index: BTreeMap<Word, usize> = states
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let terminal = states.len();
        // Reverse adjacency for the Dijkstra run towards the aligned state.
        let mut redges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); terminal + 1];
        for (si, r) in states.iter().enumerate() {
            for b in x.iter() {
                if b == r {
                    redges[terminal].push((si, 0));
                } else if r.starts_with(b) {
                    let next = index[&r.slice(b.len(), r.len())];
                    redges[next].push((si, 0));
                } else if b.starts_with(r) {
                    let next = index[&b.slice(r.len(), b.len())];
                    redges[next].push((si, b.len() - r.len()));
                }
            }
        }
        let mut dist = vec![UNREACHED; terminal + 1];
        dist[terminal] = 0;
        let mut heap: BinaryHeap<(std::cmp::Reverse<usize>, usize)> = BinaryHeap::new();
        heap.push((std::cmp::Reverse(0), terminal));
        while let Some((std::cmp::Reverse(d), s)) = heap.pop() {
            if d > dist[s] {
                continue;
            }
            for &(source, weight) in &redges[s] {
                let nd = d + weight;
                if nd < dist[source] {
                    dist[source] = nd;
                    heap.push((std::cmp::Reverse(nd), source));
                }
            }
        }
        dist.pop();
        OverhangGraph {
            states,
            index,
            dist,
        }
    }

    fn dist_of(&self, r: &Word) -> usize {
        self.dist[self.index[r]]
    }

    /// Every word of optimal total length completing the race from `r`.
    fn collect_optimal(&self, x: &FiniteWordSet, word: &Word, r: &Word, out: &mut BTreeSet<Word>) {
        let d = self.dist_of(r);
        for b in x.iter() {
            if b == r {
                if d == 0 {
                    out.insert(word.clone());
                }
            } else if r.starts_with(b) {
                let next = r.slice(b.len(), r.len());
                if self.dist_of(&next) == d {
                    self.collect_optimal(x, word, &next, out);
                }
            } else if b.starts_with(r) {
                let ext = b.slice(r.len(), b.len());
                let rest = self.dist_of(&ext);
                if rest != UNREACHED && ext.len() + rest == d {
                    self.collect_optimal(x, &word.concat(&ext), &ext, out);
                }
            }
        }
    }
}

/// The canonical witness word: shortest word with two distinct factorizations
/// over `x`, ties broken lexicographically (greatest); `None` when `x` is a
/// code.
fn witness_word(x: &FiniteWordSet) -> Option<Word> {
    let graph = OverhangGraph::build(x);
    if graph.states.is_empty() {
        return None;
    }
    // A race starts where one member is a proper prefix of another; the two
    // first blocks already differ, so reaching alignment yields a witness.
    let mut initials: Vec<(Word, Word)> = Vec::new();
    for y in x.iter() {
        for w in x.iter() {
            if y != w && w.starts_with(y) {
                initials.push((w.clone(), w.slice(y.len(), w.len())));
            }
        }
    }
    let best = initials
        .iter()
        .filter(|(_, r)| graph.dist_of(r) != UNREACHED)
        .map(|(w, r)| w.len() + graph.dist_of(r))
        .min()?;
    let mut words: BTreeSet<Word> = BTreeSet::new();
    for (w, r) in &initials {
        if graph.dist_of(r) != UNREACHED && w.len() + graph.dist_of(r) == best {
            graph.collect_optimal(x, w, r, &mut words);
        }
    }
    // All candidates share the optimal length; canonical max = lexicographic max.
    words.into_iter().next_back()
}

/// The uniqueness test for factorizations: returns a witness when some word
/// of `x^*` factors in two ways, `None` when `x` is a code.
pub fn code_witness(x: &FiniteWordSet) -> Option<CodeWitness> {
    let word = witness_word(x)?;
    let mut facts = factorizations_up_to(&word, x, 2);
    assert_eq!(facts.len(), 2, "witness word must factor at least twice");
    let factorization_b = facts.pop().expect("two factorizations");
    let factorization_a = facts.pop().expect("two factorizations");
    Some(CodeWitness {
        word,
        factorization_a,
        factorization_b,
    })
}

pub fn is_code(x: &FiniteWordSet) -> bool {
    code_witness(x).is_none()
}

/// The graph on the members of `X` with an edge between distinct `u`, `v`
/// whenever `uX^*` and `vX^*` intersect.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DependencyGraph {
    vertices: Vec<Word>,
    edges: Vec<(Word, Word)>,
    pub component_count: usize,
}

impl DependencyGraph {
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    /// Edges as canonical pairs (smaller word first), sorted.
    pub fn edges(&self) -> &[(Word, Word)] {
        &self.edges
    }

    pub fn has_edges(&self) -> bool {
        !self.edges.is_empty()
    }
}

/// Edge decision by product-automaton nonemptiness; exact for arbitrary
/// finite sets, codes or not.
pub fn dependency_graph(x: &FiniteWordSet) -> DependencyGraph {
    let words: Vec<Word> = x.words().to_vec();
    let mut edges: Vec<(Word, Word)> = Vec::new();
    if !words.is_empty() {
        let m = build_monoid_automaton(x);
        let prepended: Vec<_> = words.iter().map(|w| prepend_word(w, m.dfa())).collect();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if languages_intersect(&prepended[i], &prepended[j]) {
                    edges.push((words[i].clone(), words[j].clone()));
                }
            }
        }
    }
    // Connected components over the vertex set.
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut component = (0..words.len()).collect::<Vec<_>>();
    fn find(component: &mut [usize], mut s: usize) -> usize {
        while component[s] != s {
            component[s] = component[component[s]];
            s = component[s];
        }
        s
    }
    for (u, v) in &edges {
        let (ru, rv) = (
            find(&mut component, index[u]),
            find(&mut component, index[v]),
        );
        if ru != rv {
            component[ru] = rv;
        }
    }
    let roots: BTreeSet<usize> = (0..words.len()).map(|i| find(&mut component, i)).collect();
    DependencyGraph {
        vertices: words,
        edges,
        component_count: roots.len(),
    }
}

/// One reduction step of the hull computation: `removed = prefix · quotient`
/// with both `prefix` and `removed` members of the current set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HullStep {
    pub prefix: Word,
    pub removed: Word,
    pub quotient: Word,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeHull {
    pub basis: FiniteWordSet,
    pub trace: Vec<HullStep>,
}

/// Basis of the smallest free submonoid containing `x`.
///
/// While the set is not a code, the canonical witness's two factorizations
/// start with distinct blocks `u`, `v`, one a proper prefix of the other;
/// replacing the longer by the quotient keeps the generated monoid inside the
/// free hull and strictly shrinks total length, so the loop terminates on the
/// hull's basis.
pub fn free_hull(x: &FiniteWordSet) -> Result<FreeHull> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut current = x.clone();
    let mut trace = Vec::new();
    while let Some(witness) = code_witness(&current) {
        let a = witness.factorization_a.blocks()[0].clone();
        let b = witness.factorization_b.blocks()[0].clone();
        assert_ne!(a, b, "shortest witness diverges at the first block");
        let (prefix, removed) = if a.len() < b.len() { (a, b) } else { (b, a) };
        let quotient = removed.slice(prefix.len(), removed.len());
        let before = current.total_len();
        current = current.without(&removed).with(quotient.clone())?;
        assert!(
            current.total_len() < before,
            "reduction shrinks total length"
        );
        trace.push(HullStep {
            prefix,
            removed,
            quotient,
        });
    }
    Ok(FreeHull {
        basis: current,
        trace,
    })
}

/// Cardinality of the free hull's basis.
pub fn free_rank(x: &FiniteWordSet) -> Result<usize> {
    Ok(free_hull(x)?.basis.len())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankResult {
    pub rank: usize,
    /// One minimum-cardinality set `Y` with `X ⊆ Y^*`, deterministic under
    /// the canonical candidate ordering.
    pub witness: FiniteWordSet,
}

/// Exact combinatorial rank by bounded search.
///
/// Candidates are the factors of `x`: every member of a minimal covering set
/// occurs as a block in some factorization, hence is a factor. Subsets are
/// tried in size order; a subset is viable only if it contains a prefix of
/// every member, which prunes most of the space cheaply.
pub fn combinatorial_rank(x: &FiniteWordSet) -> Result<RankResult> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let members = x.words();
    assert!(members.len() <= 64, "rank search supports up to 64 members");
    let full: u64 = if members.len() == 64 {
        u64::MAX
    } else {
        (1u64 << members.len()) - 1
    };
    let cands = x.factor_closure();
    let masks: Vec<u64> = cands
        .iter()
        .map(|c| {
            members
                .iter()
                .enumerate()
                .filter(|(_, m)| m.starts_with(c))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut suffix_or = vec![0u64; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        suffix_or[i] = suffix_or[i + 1] | masks[i];
    }
    let bound = members.len().min(x.alphabet().len());
    for k in 1..=bound {
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        if let Some(witness) =
            cover_search(x, &cands, &masks, &suffix_or, full, k, 0, 0, &mut chosen)
        {
            return Ok(RankResult { rank: k, witness });
        }
    }
    unreachable!("the alphabet letters always cover the set")
}

#[allow(clippy::too_many_arguments)]
fn cover_search(
    x: &FiniteWordSet,
    cands: &[Word],
    masks: &[u64],
    suffix_or: &[u64],
    full: u64,
    k: usize,
    start: usize,
    covered: u64,
    chosen: &mut Vec<usize>,
) -> Option<FiniteWordSet> {
    if chosen.len() == k {
        if covered != full {
            return None;
        }
        let candidate =
            FiniteWordSet::new(chosen.iter().map(|&i| cands[i].clone()).collect()).ok()?;
        if x.iter().all(|m| parse_over(m, &candidate).is_some()) {
            return Some(candidate);
        }
        return None;
    }
    if cands.len() - start < k - chosen.len() {
        return None;
    }
    if covered | suffix_or[start] != full {
        return None;
    }
    for i in start..cands.len() {
        chosen.push(i);
        if let Some(found) = cover_search(
            x,
            cands,
            masks,
            suffix_or,
            full,
            k,
            i + 1,
            covered | masks[i],
            chosen,
        ) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// True iff the combinatorial rank equals the cardinality.
pub fn is_elementary(x: &FiniteWordSet) -> Result<bool> {
    if x.is_empty() {
        return Ok(true);
    }
    Ok(combinatorial_rank(x)?.rank == x.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::count_factorizations;

    fn set(text: &str) -> FiniteWordSet {
        FiniteWordSet::from_text(text).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_text(s)
    }

    #[test]
    fn fix_classification() {
        let c = classify_fix(&set("a,bc"));
        assert!(c.is_prefix && c.is_suffix && c.is_bifix);
        let c = classify_fix(&set("a,ab"));
        assert!(!c.is_prefix && c.is_suffix && !c.is_bifix);
        let c = classify_fix(&set("aa,ba,baa"));
        assert!(!c.is_prefix && !c.is_suffix);
    }

    #[test]
    fn code_tests() {
        assert!(is_code(&set("aa,ba,baa")));
        assert!(is_code(&set("a")));
        let witness = code_witness(&set("a,ab,abc,bca,acb,cba")).unwrap();
        assert_eq!(witness.word, w("acba"));
        assert_eq!(witness.factorization_a.to_string(), "a·cba");
        assert_eq!(witness.factorization_b.to_string(), "acb·a");
        assert_eq!(witness.factorization_a.concat(), witness.word);
        assert_eq!(witness.factorization_b.concat(), witness.word);
    }

    #[test]
    fn witness_is_shortest_double() {
        let x = set("a,ab,abc,bca,acb,cba");
        let witness = code_witness(&x).unwrap();
        assert!(count_factorizations(&witness.word, &x) >= 2);
        // No shorter word factors twice: check every word of x^* below.
        for m in x.star_words_up_to(witness.word.len() - 1) {
            assert!(count_factorizations(&m, &x) < 2, "shorter witness {m}");
        }
    }

    #[test]
    fn dependency_graph_edges() {
        let g = dependency_graph(&set("a,ab,abc,bca,acb,cba"));
        assert_eq!(g.edges(), &[(w("a"), w("abc")), (w("a"), w("acb"))],);
        assert_eq!(g.component_count, 4);
        for (u, v) in g.edges() {
            assert!(v.starts_with(u) || u.starts_with(v));
        }

        let g = dependency_graph(&set("aa,ba,baa"));
        assert!(!g.has_edges());
        assert_eq!(g.component_count, 3);

        let g = dependency_graph(&set("a,aa"));
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.component_count, 1);
    }

    #[test]
    fn free_hull_examples() {
        let hull = free_hull(&set("a,ab,abc,bca,acb,cba")).unwrap();
        assert_eq!(hull.basis, set("a,ab,bc,cb"));
        assert!(is_code(&hull.basis));
        assert!(!hull.trace.is_empty());

        assert_eq!(free_hull(&set("aa,aaa")).unwrap().basis, set("a"));
        let already = free_hull(&set("aa,ba,baa")).unwrap();
        assert_eq!(already.basis, set("aa,ba,baa"));
        assert!(already.trace.is_empty());
    }

    #[test]
    fn hull_contains_input_and_is_idempotent() {
        for text in ["a,ab,abc,bca,acb,cba", "aa,aaa", "ab,ba,abba", "a,ab,ba"] {
            let x = set(text);
            let hull = free_hull(&x).unwrap();
            for m in x.iter() {
                assert!(
                    parse_over(m, &hull.basis).is_some(),
                    "{m} outside hull of {x}"
                );
            }
            assert_eq!(free_hull(&hull.basis).unwrap().basis, hull.basis);
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(free_rank(&set("aa,ba,baa")).unwrap(), 3);
        assert_eq!(free_rank(&set("a,ab,abc,bca,acb,cba")).unwrap(), 4);
        assert_eq!(free_rank(&set("aa,aaa")).unwrap(), 1);

        let r = combinatorial_rank(&set("aa,ba,baa")).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.witness, set("a,b"));
        assert_eq!(
            combinatorial_rank(&set("a,ab,abc,bca,acb,cba"))
                .unwrap()
                .rank,
            3
        );
        assert_eq!(combinatorial_rank(&set("aa,aaa")).unwrap().rank, 1);
        assert_eq!(
            combinatorial_rank(&set("abcbab,abcdcbab,abcdcdcbab"))
                .unwrap()
                .rank,
            3
        );
    }

    #[test]
    fn elementary_examples() {
        assert!(is_elementary(&set("aa,bca")).unwrap());
        assert!(!is_elementary(&set("abab,ababab")).unwrap());
        assert!(is_elementary(&set("a")).unwrap());
    }

    #[test]
    fn code_test_agrees_with_bounded_bruteforce() {
        // Exhaustive two- and three-element sets over {a, b} with member
        // lengths up to 3, cross-checked against direct enumeration of star
        // words with two or more factorizations.
        let words = crate::words::enumerate_words(2, 3);
        let mut sets: Vec<FiniteWordSet> = Vec::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                sets.push(FiniteWordSet::new(vec![words[i].clone(), words[j].clone()]).unwrap());
                for k in j + 1..words.len() {
                    sets.push(
                        FiniteWordSet::new(vec![
                            words[i].clone(),
                            words[j].clone(),
                            words[k].clone(),
                        ])
                        .unwrap(),
                    );
                }
            }
        }
        for x in sets {
            let witness = code_witness(&x);
            match witness {
                None => {
                    for m in x.star_words_up_to(10) {
                        assert!(
                            count_factorizations(&m, &x) < 2,
                            "code {x} double-factors {m}"
                        );
                    }
                }
                Some(wit) => {
                    assert!(count_factorizations(&wit.word, &x) >= 2);
                    assert_ne!(wit.factorization_a, wit.factorization_b);
                    // Shortest: no star word below the witness length factors
                    // twice; lex-greatest at that length.
                    for m in x.star_words_up_to(wit.word.len()) {
                        if count_factorizations(&m, &x) >= 2 {
                            assert!(m.len() == wit.word.len(), "shorter witness {m} for {x}");
                            assert!(
                                m <= wit.word,
                                "later witness {m} beats {} for {x}",
                                wit.word
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_witness_covers() {
        for text in ["aa,ba,baa", "abcbab,abcdcbab,abcdcdcbab", "abab,ababab"] {
            let x = set(text);
            let r = combinatorial_rank(&x).unwrap();
            for m in x.iter() {
                assert!(parse_over(m, &r.witness).is_some());
            }
        }
    }
}
