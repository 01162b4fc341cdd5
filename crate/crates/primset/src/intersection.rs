//! Intersection of finitely generated submonoids via product automata:
//! minimal generating sets, finiteness detection, and the specialized
//! single-generator case for primitive pairs with its length bounds.

use std::collections::BTreeMap;

pub use crate::automaton::{build_monoid_automaton, MonoidAutomaton};
use crate::automaton::{product, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::maximality::is_primitive_pair;
use crate::sets::FiniteWordSet;
use crate::words::{is_primitive, Word, WordPair};

/// Structure of `X^* ∩ U^*`.
#[derive(Clone, Debug)]
pub struct IntersectionResult {
    /// The intersection is `{ε}`.
    pub is_trivial: bool,
    pub finitely_generated: bool,
    /// Minimal generating set, present when finite and nontrivial.
    pub finite_basis: Option<FiniteWordSet>,
    /// Trimmed automaton whose accepted language is the minimal generating
    /// set of the intersection; absent only in the trivial case.
    pub basis_automaton: Option<Dfa>,
    /// `prefix(cycle)^*suffix` rendering when the infinite basis has a single
    /// simple cycle; `None` otherwise.
    pub expression: Option<String>,
}

/// Split the base state of a sole-accepting-base product automaton into a
/// source and a sink: accepted words become exactly the first returns to the
/// base, i.e. the minimal generating set.
fn first_return_automaton(p: &Dfa) -> Dfa {
    let base = p.initial;
    let sink = p.delta.len();
    let mut delta = p.delta.clone();
    delta.push(BTreeMap::new());
    for edges in delta.iter_mut().take(sink) {
        for target in edges.values_mut() {
            if *target == base {
                *target = sink;
            }
        }
    }
    Dfa {
        initial: base,
        accepting: [sink].into(),
        delta,
    }
}

/// Automaton for the non-generators `(M\ε)(M\ε)` of the monoid accepted by
/// `p`: two phases with a jump on completing a nonempty first factor. The
/// copy-2 entry state is duplicated so both factors must be nonempty.
fn double_factor_nfa(p: &Dfa) -> Nfa {
    let n = p.delta.len();
    let dup = 2 * n;
    let mut delta: Vec<BTreeMap<u8, std::collections::BTreeSet<usize>>> =
        vec![BTreeMap::new(); 2 * n + 1];
    for (s, edges) in p.delta.iter().enumerate() {
        for (&sym, &t) in edges {
            delta[s].entry(sym).or_default().insert(t);
            if p.accepting.contains(&t) {
                delta[s].entry(sym).or_default().insert(dup);
            }
            delta[n + s].entry(sym).or_default().insert(n + t);
        }
    }
    for (&sym, &t) in &p.delta[p.initial] {
        delta[dup].entry(sym).or_default().insert(n + t);
    }
    Nfa {
        initial: p.initial,
        accepting: p.accepting.iter().map(|&s| n + s).collect(),
        delta,
    }
}

/// Complete `d` over `alphabet` with a sink and flip acceptance.
fn complement(d: &Dfa, alphabet: &[u8]) -> Dfa {
    let sink = d.delta.len();
    let mut delta = d.delta.clone();
    delta.push(BTreeMap::new());
    for edges in delta.iter_mut() {
        for &sym in alphabet {
            edges.entry(sym).or_insert(sink);
        }
    }
    let accepting = (0..delta.len())
        .filter(|s| !d.accepting.contains(s))
        .collect();
    Dfa {
        initial: d.initial,
        accepting,
        delta,
    }
}

/// Automaton for the minimal generating set `(M\ε) \ (M\ε)²` of the monoid
/// accepted by `p`. Exact for arbitrary inputs; used when a source set is not
/// a prefix code and the first-return extraction does not apply.
fn generator_automaton(p: &Dfa) -> Dfa {
    let alphabet: Vec<u8> = {
        let mut syms: Vec<u8> = p
            .delta
            .iter()
            .flat_map(|edges| edges.keys().copied())
            .collect();
        syms.sort_unstable();
        syms.dedup();
        syms
    };
    let doubles = double_factor_nfa(p).determinize();
    let not_doubles = complement(&doubles, &alphabet);
    let g = product(p, &not_doubles);
    // Exclude ε by starting from a fresh non-accepting copy of the initial.
    let fresh = g.delta.len();
    let mut delta = g.delta.clone();
    delta.push(g.delta[g.initial].clone());
    Dfa {
        initial: fresh,
        accepting: g.accepting.clone(),
        delta,
    }
}

/// Try to render the accepted language as `prefix(cycle)^*suffix`. Succeeds
/// only when the trimmed automaton is a path into a single simple cycle with
/// a single exit path; anything richer stays automaton-only.
fn render_expression(d: &Dfa) -> Option<String> {
    let n = d.delta.len();
    if d.accepting.len() != 1 {
        return None;
    }
    let fin = *d.accepting.iter().next().expect("one accepting state");
    if !d.delta[fin].is_empty() || fin == d.initial {
        return None;
    }
    // States lying on directed cycles.
    let mut cyclic = vec![false; n];
    for (s, flag) in cyclic.iter_mut().enumerate() {
        let mut stack = vec![s];
        let mut seen = vec![false; n];
        let mut reaches_self = false;
        while let Some(cur) = stack.pop() {
            for &t in d.delta[cur].values() {
                if t == s {
                    reaches_self = true;
                }
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        *flag = reaches_self;
    }
    let cycle_states: Vec<usize> = (0..n).filter(|&s| cyclic[s]).collect();
    if cycle_states.is_empty() {
        return None;
    }
    // Structural requirements: single simple cycle, one exit, no branching
    // elsewhere.
    let mut exit_state = None;
    for &s in &cycle_states {
        let (mut inner, mut outer) = (0usize, 0usize);
        for &t in d.delta[s].values() {
            if cyclic[t] {
                inner += 1;
            } else {
                outer += 1;
            }
        }
        if inner != 1 || outer > 1 {
            return None;
        }
        if outer == 1 {
            if exit_state.is_some() {
                return None;
            }
            exit_state = Some(s);
        }
    }
    let exit_state = exit_state?;
    for (s, &on_cycle) in cyclic.iter().enumerate() {
        if !on_cycle && s != fin && d.delta[s].len() != 1 {
            return None;
        }
    }
    // The cycle edges must form one loop covering every cyclic state.
    let cycle_next = |s: usize| -> usize {
        *d.delta[s]
            .values()
            .find(|t| cyclic[**t])
            .expect("cycle state has an inner successor")
    };
    let mut visited = 1;
    let mut cur = cycle_next(cycle_states[0]);
    while cur != cycle_states[0] {
        visited += 1;
        if visited > cycle_states.len() {
            return None;
        }
        cur = cycle_next(cur);
    }
    if visited != cycle_states.len() {
        return None;
    }
    // Walk: initial → first cyclic state → around to the exit state.
    let mut prefix = Vec::new();
    let mut cur = d.initial;
    let mut steps = 0;
    while !cyclic[cur] {
        let (&sym, &t) = d.delta[cur].iter().next()?;
        prefix.push(sym);
        cur = t;
        steps += 1;
        if steps > n {
            return None;
        }
    }
    while cur != exit_state {
        let (&sym, &t) = d.delta[cur].iter().find(|(_, t)| cyclic[**t])?;
        prefix.push(sym);
        cur = t;
    }
    let mut cycle = Vec::new();
    loop {
        let (&sym, &t) = d.delta[cur].iter().find(|(_, t)| cyclic[**t])?;
        cycle.push(sym);
        cur = t;
        if cur == exit_state {
            break;
        }
    }
    let mut suffix = Vec::new();
    let (&sym, &t) = d.delta[exit_state].iter().find(|(_, t)| !cyclic[**t])?;
    suffix.push(sym);
    let mut cur = t;
    while cur != fin {
        let (&sym, &t) = d.delta[cur].iter().next()?;
        suffix.push(sym);
        cur = t;
    }
    Some(format!(
        "{}({})^*{}",
        Word::from_bytes(prefix),
        Word::from_bytes(cycle),
        Word::from_bytes(suffix)
    ))
}

/// Intersect the monoids `X^*` and `U^*`.
///
/// Both star automata are paired through the product construction. When both
/// sources are prefix codes the paired base is the sole accepting state and
/// the minimal generating set is the first-return language of the base; for
/// other sources the generating set is carved out exactly as
/// `(M\ε) \ (M\ε)²`. The basis automaton is trimmed and canonically numbered
/// in both cases.
pub fn intersect(x: &FiniteWordSet, u: &FiniteWordSet) -> IntersectionResult {
    let ax = build_monoid_automaton(x);
    let au = build_monoid_automaton(u);
    let p = product(ax.dfa(), au.dfa()).canonical();
    let gen_dfa = if ax.base_is_sole_accepting() && au.base_is_sole_accepting() {
        first_return_automaton(&p)
    } else {
        generator_automaton(&p)
    };
    match gen_dfa.trim() {
        None => IntersectionResult {
            is_trivial: true,
            finitely_generated: true,
            finite_basis: None,
            basis_automaton: None,
            expression: None,
        },
        Some(trimmed) => {
            if trimmed.has_cycle() {
                let expression = render_expression(&trimmed);
                IntersectionResult {
                    is_trivial: false,
                    finitely_generated: false,
                    finite_basis: None,
                    basis_automaton: Some(trimmed),
                    expression,
                }
            } else {
                let words = trimmed.enumerate_dag_words();
                let basis = FiniteWordSet::new(words).expect("generators are nonempty");
                IntersectionResult {
                    is_trivial: false,
                    finitely_generated: true,
                    finite_basis: Some(basis),
                    basis_automaton: Some(trimmed),
                    expression: None,
                }
            }
        }
    }
}

/// Intersection of the monoids of two distinct primitive pairs: `None` for
/// the trivial intersection, otherwise the single primitive generator.
///
/// A multi-word or infinite basis here is not a caller error but a broken
/// invariant (or a refutation) and aborts loudly.
pub fn intersect_2maximal(px: &WordPair, pu: &WordPair) -> Result<Option<Word>> {
    if !is_primitive_pair(px.first(), px.second())? {
        return Err(Error::NotPrimitivePair(
            px.first().to_string(),
            px.second().to_string(),
        ));
    }
    if !is_primitive_pair(pu.first(), pu.second())? {
        return Err(Error::NotPrimitivePair(
            pu.first().to_string(),
            pu.second().to_string(),
        ));
    }
    intersect_pair_monoids(px, pu)
}

/// Same as [`intersect_2maximal`] minus the primitivity precondition checks;
/// sweep grids pre-filter their pairs, so re-validating every combination
/// would dominate the runtime.
pub(crate) fn intersect_pair_monoids(px: &WordPair, pu: &WordPair) -> Result<Option<Word>> {
    let ax = build_monoid_automaton(&px.as_set());
    let au = build_monoid_automaton(&pu.as_set());
    intersect_pair_monoids_cached(px, pu, &ax, &au)
}

/// Hot path for sweeps: the per-pair automata are built once by the caller.
pub(crate) fn intersect_pair_monoids_cached(
    px: &WordPair,
    pu: &WordPair,
    ax: &MonoidAutomaton,
    au: &MonoidAutomaton,
) -> Result<Option<Word>> {
    if px == pu {
        return Err(Error::SamePair);
    }
    if ax.base_is_sole_accepting() && au.base_is_sole_accepting() {
        match first_return_outcome(ax.dfa(), au.dfa()) {
            FirstReturnOutcome::Trivial => return Ok(None),
            FirstReturnOutcome::Single(z) => {
                if !is_primitive(&z)? {
                    return Err(Error::invariant(format!(
                        "intersection generator {z} of {px} and {pu} is not primitive"
                    )));
                }
                return Ok(Some(z));
            }
            // Fall through to the full extraction for a precise message.
            FirstReturnOutcome::Other => {}
        }
    }
    let result = intersect(&px.as_set(), &pu.as_set());
    if result.is_trivial {
        return Ok(None);
    }
    if !result.finitely_generated {
        return Err(Error::invariant(format!(
            "intersection of primitive pairs {px} and {pu} is infinitely generated"
        )));
    }
    let basis = result.finite_basis.expect("nontrivial finite intersection");
    if basis.len() != 1 {
        return Err(Error::invariant(format!(
            "intersection of primitive pairs {px} and {pu} has basis {basis}"
        )));
    }
    let z = basis.words()[0].clone();
    if !is_primitive(&z)? {
        return Err(Error::invariant(format!(
            "intersection generator {z} of {px} and {pu} is not primitive"
        )));
    }
    Ok(Some(z))
}

enum FirstReturnOutcome {
    Trivial,
    Single(Word),
    /// Two or more generators, or infinitely many.
    Other,
}

/// Allocation-lean first-return analysis of the product of two
/// sole-accepting-base automata: classifies the minimal generating set of the
/// intersection as empty, a single word (returned), or anything larger,
/// without materializing trimmed automata.
fn first_return_outcome(dx: &Dfa, du: &Dfa) -> FirstReturnOutcome {
    const UNSEEN: usize = usize::MAX;
    let nb = du.num_states();
    let base_key = dx.initial() * nb + du.initial();
    let mut ids = vec![UNSEEN; dx.num_states() * nb];
    ids[base_key] = 0;
    let mut order: Vec<(usize, usize)> = vec![(dx.initial(), du.initial())];
    // Edge targets: Some(node) for inner states, None for a return to base.
    let mut edges: Vec<Vec<(u8, Option<usize>)>> = vec![Vec::new()];
    let mut i = 0;
    while i < order.len() {
        let (sa, sb) = order[i];
        for (&sym, &ta) in dx.transitions(sa) {
            let Some(&tb) = du.transitions(sb).get(&sym) else {
                continue;
            };
            let key = ta * nb + tb;
            if key == base_key {
                edges[i].push((sym, None));
                continue;
            }
            if ids[key] == UNSEEN {
                ids[key] = order.len();
                order.push((ta, tb));
                edges.push(Vec::new());
            }
            edges[i].push((sym, Some(ids[key])));
        }
        i += 1;
    }
    // States that can still reach a return edge.
    let n = order.len();
    let mut live = vec![false; n];
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stack: Vec<usize> = Vec::new();
    for (s, outs) in edges.iter().enumerate() {
        for &(_, target) in outs {
            match target {
                None => {
                    if !live[s] {
                        live[s] = true;
                        stack.push(s);
                    }
                }
                Some(t) => rev[t].push(s),
            }
        }
    }
    while let Some(s) = stack.pop() {
        for &p in &rev[s] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    if !live[0] {
        return FirstReturnOutcome::Trivial;
    }
    // A cycle through live states means an infinite generating set. State 0
    // acts as source only (re-entering base is a return edge), so the
    // three-color DFS needs no special casing for it.
    let mut color = vec![0u8; n];
    let mut dfs: Vec<(usize, usize)> = vec![(0, 0)];
    color[0] = 1;
    while let Some(&(s, next)) = dfs.last() {
        if next >= edges[s].len() {
            color[s] = 2;
            dfs.pop();
            continue;
        }
        dfs.last_mut().expect("nonempty stack").1 += 1;
        if let (_, Some(t)) = edges[s][next] {
            if live[t] {
                match color[t] {
                    1 => return FirstReturnOutcome::Other,
                    0 => {
                        color[t] = 1;
                        dfs.push((t, 0));
                    }
                    _ => {}
                }
            }
        }
    }
    // Acyclic: enumerate return words, giving up as soon as a second one
    // appears.
    let mut found: Option<Vec<u8>> = None;
    let mut path: Vec<u8> = Vec::new();
    let mut walk: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(&(s, next)) = walk.last() {
        if next >= edges[s].len() {
            walk.pop();
            if !walk.is_empty() {
                path.pop();
            }
            continue;
        }
        walk.last_mut().expect("nonempty stack").1 += 1;
        let (sym, target) = edges[s][next];
        match target {
            None => {
                if found.is_some() {
                    return FirstReturnOutcome::Other;
                }
                let mut word = path.clone();
                word.push(sym);
                found = Some(word);
            }
            Some(t) => {
                if live[t] {
                    path.push(sym);
                    walk.push((t, 0));
                }
            }
        }
    }
    match found {
        Some(word) => FirstReturnOutcome::Single(Word::from_bytes(word)),
        None => FirstReturnOutcome::Trivial,
    }
}

/// Length bounds on a single-generator intersection. The product bound
/// `|z| < (|x|+|y|)(|u|+|v|)` is asserted; the additive bound is recorded
/// only.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub z_len: usize,
    pub size_product_bound: usize,
    pub conjecture1_bound: usize,
    pub conjecture1_holds: bool,
}

pub fn bound_report(px: &WordPair, pu: &WordPair, z: &Word) -> Result<BoundReport> {
    let size_product_bound = px.size() * pu.size();
    let conjecture1_bound = px.size() + pu.size();
    if z.len() >= size_product_bound {
        return Err(Error::invariant(format!(
            "generator {z} of {px} and {pu} violates |z| < {size_product_bound}"
        )));
    }
    Ok(BoundReport {
        z_len: z.len(),
        size_product_bound,
        conjecture1_bound,
        conjecture1_holds: z.len() < conjecture1_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::is_code;
    use crate::words::parse_over;

    fn set(text: &str) -> FiniteWordSet {
        FiniteWordSet::from_text(text).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_text(s)
    }

    fn pair(a: &str, b: &str) -> WordPair {
        WordPair::new(w(a), w(b)).unwrap()
    }

    #[test]
    fn finite_intersection() {
        let r = intersect(&set("abca,bc"), &set("a,bcabc"));
        assert!(!r.is_trivial);
        assert!(r.finitely_generated);
        assert_eq!(r.finite_basis.unwrap(), set("abcabc,bcabca"));
    }

    #[test]
    fn infinite_intersection_with_expression() {
        let r = intersect(&set("aab,aba"), &set("a,baaba"));
        assert!(!r.is_trivial);
        assert!(!r.finitely_generated);
        assert_eq!(r.expression.as_deref(), Some("a(abaaba)^*baaba"));

        let r = intersect(&set("abc,dc,bab"), &set("ab,cb,cd"));
        assert!(!r.finitely_generated);
        assert_eq!(r.expression.as_deref(), Some("abc(dc)^*bab"));
    }

    #[test]
    fn four_generator_intersection() {
        let r = intersect(&set("a,b,cd,ce"), &set("ac,bc,da,ea"));
        assert!(r.finitely_generated);
        let basis = r.finite_basis.unwrap();
        assert_eq!(basis, set("acea,bcea,acda,bcda"));
        assert!(is_code(&basis));
        // Basis minimality: no element factors over the others.
        for b in basis.iter() {
            assert!(parse_over(b, &basis.without(b)).is_none());
        }
    }

    #[test]
    fn trivial_intersection() {
        let r = intersect(&set("ab"), &set("ba"));
        assert!(r.is_trivial);
        assert!(r.finite_basis.is_none());
        assert!(r.basis_automaton.is_none());
    }

    #[test]
    fn non_prefix_sources() {
        // {a, ab} is a suffix code: exercises the exact generator extraction.
        let r = intersect(&set("a,ab"), &set("a,ab"));
        assert!(r.finitely_generated);
        assert_eq!(r.finite_basis.unwrap(), set("a,ab"));
        // Not a code: the intersection monoid is a^* with basis {a}.
        let r = intersect(&set("a,aa"), &set("a,aa"));
        assert_eq!(r.finite_basis.unwrap(), set("a"));
        // Mixed: {a, ab}^* ∩ {a, ba}^* is infinitely generated by a and the
        // words (ab)^k a, every one of which is indecomposable inside the
        // intersection.
        let r = intersect(&set("a,ab"), &set("a,ba"));
        assert!(!r.is_trivial);
        assert!(!r.finitely_generated);
        let basis = r.basis_automaton.expect("basis automaton present");
        let words = basis.accepted_up_to(5);
        assert!(words.contains(&w("a")));
        assert!(words.contains(&w("aba")));
        assert!(words.contains(&w("ababa")));
        assert!(!words.contains(&w("ab")));
        assert!(!words.contains(&w("aa")));
        for b in &words {
            assert!(parse_over(b, &set("a,ab")).is_some());
            assert!(parse_over(b, &set("a,ba")).is_some());
        }
    }

    #[test]
    fn intersection_language_agrees_with_parsing() {
        let cases = [
            ("abca,bc", "a,bcabc"),
            ("aab,aba", "a,baaba"),
            ("a,ab", "a,ba"),
            ("a,aa", "aa,aaa"),
        ];
        for (xs, us) in cases {
            let x = set(xs);
            let u = set(us);
            let ax = build_monoid_automaton(&x);
            let au = build_monoid_automaton(&u);
            let p = product(ax.dfa(), au.dfa());
            for word in crate::words::enumerate_words(2, 6) {
                let both = parse_over(&word, &x).is_some() && parse_over(&word, &u).is_some();
                assert_eq!(p.accepts(&word), both, "{word} in {xs} ∩ {us}");
            }
        }
    }

    #[test]
    fn primitive_pair_intersections() {
        let z = intersect_2maximal(&pair("abcab", "cb"), &pair("abc", "bcb"))
            .unwrap()
            .expect("nontrivial");
        assert_eq!(z, w("abcabcbcb"));
        // The generator parses in both monoids.
        assert_eq!(
            parse_over(&z, &set("abcab,cb")).unwrap().to_string(),
            "abcab·cb·cb"
        );
        assert_eq!(
            parse_over(&z, &set("abc,bcb")).unwrap().to_string(),
            "abc·abc·bcb"
        );

        let z = intersect_2maximal(&pair("a", "bc"), &pair("a", "cb"))
            .unwrap()
            .expect("nontrivial");
        assert_eq!(z, w("a"));

        assert_eq!(
            intersect_2maximal(&pair("a", "bc"), &pair("a", "bc")),
            Err(Error::SamePair)
        );
        assert!(matches!(
            intersect_2maximal(&pair("abca", "bc"), &pair("a", "cb")),
            Err(Error::NotPrimitivePair(..))
        ));
    }

    #[test]
    fn fast_path_matches_full_extraction() {
        // The lean first-return classification must agree with the full
        // intersect() pipeline on every pair of primitive pairs in a small
        // exhaustive grid.
        let words = crate::words::enumerate_words(3, 2);
        let mut pairs: Vec<WordPair> = Vec::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if !crate::words::commute(&words[i], &words[j])
                    && crate::maximality::is_primitive_pair(&words[i], &words[j]).unwrap()
                {
                    pairs.push(WordPair::new(words[i].clone(), words[j].clone()).unwrap());
                }
            }
        }
        assert!(pairs.len() >= 4);
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let fast = intersect_pair_monoids(&pairs[i], &pairs[j]);
                let full = intersect(&pairs[i].as_set(), &pairs[j].as_set());
                match fast {
                    Ok(None) => assert!(full.is_trivial, "{} {}", pairs[i], pairs[j]),
                    Ok(Some(z)) => {
                        assert_eq!(
                            full.finite_basis.as_ref().map(|b| b.words().to_vec()),
                            Some(vec![z.clone()]),
                            "{} {}",
                            pairs[i],
                            pairs[j]
                        );
                    }
                    Err(e) => panic!("unexpected invariant failure: {e}"),
                }
            }
        }
    }

    #[test]
    fn generator_extraction_matches_definition() {
        // For non-prefix sources the basis automaton must accept exactly the
        // indecomposable nonempty words of the intersection monoid.
        let cases = [("a,ab", "a,ba"), ("a,aa", "a,aba"), ("a,ab", "a,ab")];
        for (xs, us) in cases {
            let x = set(xs);
            let u = set(us);
            let r = intersect(&x, &u);
            let automaton = r.basis_automaton.as_ref().expect("nontrivial cases");
            let bound = 7;
            let members: Vec<Word> = x
                .star_words_up_to(bound)
                .into_iter()
                .filter(|m| parse_over(m, &u).is_some())
                .collect();
            let is_member = |w: &Word| !w.is_empty() && members.binary_search(w).is_ok();
            let expected: Vec<Word> = members
                .iter()
                .filter(|m| {
                    !(1..m.len())
                        .any(|cut| is_member(&m.slice(0, cut)) && is_member(&m.slice(cut, m.len())))
                })
                .cloned()
                .collect();
            assert_eq!(
                automaton.accepted_up_to(bound),
                expected,
                "generators of {xs} ∩ {us}"
            );
        }
    }

    #[test]
    fn bound_reports() {
        let px = pair("abcab", "cb");
        let pu = pair("abc", "bcb");
        let z = intersect_2maximal(&px, &pu).unwrap().unwrap();
        let report = bound_report(&px, &pu, &z).unwrap();
        assert_eq!(report.z_len, 9);
        assert_eq!(report.size_product_bound, 42);
        assert_eq!(report.conjecture1_bound, 13);
        assert!(report.conjecture1_holds);

        let px = pair("a", "bc");
        let pu = pair("a", "cb");
        let report = bound_report(&px, &pu, &w("a")).unwrap();
        assert_eq!(report.z_len, 1);
        assert_eq!(report.size_product_bound, 9);
        assert!(report.conjecture1_holds);
    }
}
