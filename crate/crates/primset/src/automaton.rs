//! Deterministic finite automata for the star languages of finite word sets:
//! trie construction for prefix codes, flower determinization for everything
//! else, and the product/trim machinery behind the intersection and
//! dependency-graph computations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::codes::classify_fix;
use crate::sets::FiniteWordSet;
use crate::words::Word;

/// A deterministic automaton over byte symbols. Transitions are partial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    pub(crate) initial: usize,
    pub(crate) accepting: BTreeSet<usize>,
    pub(crate) delta: Vec<BTreeMap<u8, usize>>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn step(&self, state: usize, symbol: u8) -> Option<usize> {
        self.delta[state].get(&symbol).copied()
    }

    /// Outgoing transitions of a state, in symbol order.
    pub fn transitions(&self, state: usize) -> &BTreeMap<u8, usize> {
        &self.delta[state]
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut state = self.initial;
        for &sym in w.as_bytes() {
            match self.step(state, sym) {
                Some(next) => state = next,
                None => return false,
            }
        }
        self.accepting.contains(&state)
    }

    /// Renumber states in breadth-first order from the initial state with
    /// symbol-ascending edge exploration, dropping unreachable states. This
    /// is the canonical presentation: two runs of the same construction
    /// always produce identical state numbering.
    pub(crate) fn canonical(&self) -> Dfa {
        const UNSEEN: usize = usize::MAX;
        let mut map = vec![UNSEEN; self.delta.len()];
        let mut order: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        map[self.initial] = 0;
        order.push(self.initial);
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            for &t in self.delta[s].values() {
                if map[t] == UNSEEN {
                    map[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = vec![BTreeMap::new(); order.len()];
        for (new, &old) in order.iter().enumerate() {
            for (&sym, &t) in &self.delta[old] {
                if map[t] != UNSEEN {
                    delta[new].insert(sym, map[t]);
                }
            }
        }
        let accepting = self
            .accepting
            .iter()
            .filter(|&&s| map[s] != UNSEEN)
            .map(|&s| map[s])
            .collect();
        Dfa {
            initial: 0,
            accepting,
            delta,
        }
    }

    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.delta.len()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for &t in self.delta[s].values() {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.delta.len()];
        for (s, edges) in self.delta.iter().enumerate() {
            for &t in edges.values() {
                rev[t].push(s);
            }
        }
        let mut seen = vec![false; self.delta.len()];
        let mut stack: Vec<usize> = Vec::new();
        for &s in &self.accepting {
            seen[s] = true;
            stack.push(s);
        }
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Restrict to states both reachable and co-reachable, then renumber
    /// canonically. Returns `None` when the accepted language is empty.
    pub(crate) fn trim(&self) -> Option<Dfa> {
        let reach = self.reachable();
        let coreach = self.coreachable();
        if !coreach[self.initial] {
            return None;
        }
        let live: Vec<bool> = reach.iter().zip(&coreach).map(|(&r, &c)| r && c).collect();
        let mut delta = self.delta.clone();
        for (s, edges) in delta.iter_mut().enumerate() {
            if live[s] {
                edges.retain(|_, t| live[*t]);
            } else {
                edges.clear();
            }
        }
        Some(
            Dfa {
                initial: self.initial,
                accepting: self
                    .accepting
                    .iter()
                    .copied()
                    .filter(|&s| live[s])
                    .collect(),
                delta,
            }
            .canonical(),
        )
    }

    /// True when the transition graph (restricted to reachable states) has a
    /// directed cycle.
    pub(crate) fn has_cycle(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut mark = vec![0u8; self.delta.len()];
        fn visit(dfa: &Dfa, s: usize, mark: &mut [u8]) -> bool {
            mark[s] = 1;
            for &t in dfa.delta[s].values() {
                if mark[t] == 1 {
                    return true;
                }
                if mark[t] == 0 && visit(dfa, t, mark) {
                    return true;
                }
            }
            mark[s] = 2;
            false
        }
        visit(self, self.initial, &mut mark)
    }

    /// Accepted words of length at most `max_len`, canonical order. The empty
    /// word is omitted.
    pub fn accepted_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<(usize, Vec<u8>)> = vec![(self.initial, Vec::new())];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (s, w) in &layer {
                for (&sym, &t) in &self.delta[*s] {
                    let mut v = w.clone();
                    v.push(sym);
                    if self.accepting.contains(&t) {
                        out.push(Word::from_bytes(v.clone()));
                    }
                    next.push((t, v));
                }
            }
            layer = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// All words labelling paths from the initial state to an accepting
    /// state. Requires an acyclic (trimmed) automaton.
    pub(crate) fn enumerate_dag_words(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut path: Vec<u8> = Vec::new();
        fn go(dfa: &Dfa, s: usize, path: &mut Vec<u8>, out: &mut Vec<Word>) {
            if dfa.accepting.contains(&s) && !path.is_empty() {
                out.push(Word::from_bytes(path.clone()));
            }
            for (&sym, &t) in &dfa.delta[s] {
                path.push(sym);
                go(dfa, t, path, out);
                path.pop();
            }
        }
        go(self, self.initial, &mut path, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Line-based text export: a `base N` header, an `accept ...` line when
    /// acceptance is not just the base state, then one `state symbol state`
    /// line per transition.
    pub fn export_lines(&self) -> String {
        let mut lines = vec![format!("base {}", self.initial)];
        if self.accepting.len() != 1 || !self.accepting.contains(&self.initial) {
            let ids: Vec<String> = self.accepting.iter().map(|s| s.to_string()).collect();
            lines.push(format!("accept {}", ids.join(" ")));
        }
        for (s, edges) in self.delta.iter().enumerate() {
            for (&sym, &t) in edges {
                lines.push(format!("{} {} {}", s, sym as char, t));
            }
        }
        lines.join("\n")
    }
}

/// Nondeterministic automaton used internally for flower construction and
/// language concatenation; determinized before use.
#[derive(Clone, Debug)]
pub(crate) struct Nfa {
    pub(crate) initial: usize,
    pub(crate) accepting: BTreeSet<usize>,
    pub(crate) delta: Vec<BTreeMap<u8, BTreeSet<usize>>>,
}

impl Nfa {
    pub(crate) fn determinize(&self) -> Dfa {
        let mut subsets: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let start: BTreeSet<usize> = [self.initial].into();
        subsets.insert(start.clone(), 0);
        let mut order = vec![start];
        let mut delta: Vec<BTreeMap<u8, usize>> = vec![BTreeMap::new()];
        let mut i = 0;
        while i < order.len() {
            let current = order[i].clone();
            let mut by_symbol: BTreeMap<u8, BTreeSet<usize>> = BTreeMap::new();
            for &s in &current {
                for (&sym, targets) in &self.delta[s] {
                    by_symbol.entry(sym).or_default().extend(targets.iter());
                }
            }
            for (sym, targets) in by_symbol {
                let id = *subsets.entry(targets.clone()).or_insert_with(|| {
                    order.push(targets.clone());
                    delta.push(BTreeMap::new());
                    order.len() - 1
                });
                delta[i].insert(sym, id);
            }
            i += 1;
        }
        let accepting = order
            .iter()
            .enumerate()
            .filter(|(_, subset)| subset.iter().any(|s| self.accepting.contains(s)))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            initial: 0,
            accepting,
            delta,
        }
    }
}

/// A deterministic recognizer of `X^*` with a distinguished base state that
/// is both initial and, for prefix-code sources, the sole accepting state.
#[derive(Clone, Debug)]
pub struct MonoidAutomaton {
    dfa: Dfa,
    source: FiniteWordSet,
}

impl MonoidAutomaton {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn source(&self) -> &FiniteWordSet {
        &self.source
    }

    pub fn state_count(&self) -> usize {
        self.dfa.num_states()
    }

    pub fn base_state(&self) -> usize {
        self.dfa.initial
    }

    /// True when the base state is the only accepting state, which is what
    /// the first-return basis extraction relies on.
    pub fn base_is_sole_accepting(&self) -> bool {
        self.dfa.accepting.len() == 1 && self.dfa.accepting.contains(&self.dfa.initial)
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.dfa.accepts(w)
    }
}

/// Literal trie with closing edges back to the base state. Only valid for
/// prefix codes, where reading a member is unambiguous.
fn trie_automaton(x: &FiniteWordSet) -> Dfa {
    let mut delta: Vec<BTreeMap<u8, usize>> = vec![BTreeMap::new()];
    for w in x.iter() {
        let bytes = w.as_bytes();
        let mut state = 0usize;
        for (i, &sym) in bytes.iter().enumerate() {
            if i + 1 == bytes.len() {
                delta[state].insert(sym, 0);
            } else {
                state = match delta[state].get(&sym) {
                    Some(&next) => next,
                    None => {
                        delta.push(BTreeMap::new());
                        let next = delta.len() - 1;
                        delta[state].insert(sym, next);
                        next
                    }
                };
            }
        }
    }
    Dfa {
        initial: 0,
        accepting: [0].into(),
        delta,
    }
    .canonical()
}

/// Flower automaton of `X^*`: one loop per member through fresh chain states.
fn flower_nfa(x: &FiniteWordSet) -> Nfa {
    let mut delta: Vec<BTreeMap<u8, BTreeSet<usize>>> = vec![BTreeMap::new()];
    for w in x.iter() {
        let bytes = w.as_bytes();
        let mut state = 0usize;
        for (i, &sym) in bytes.iter().enumerate() {
            let target = if i + 1 == bytes.len() {
                0
            } else {
                delta.push(BTreeMap::new());
                delta.len() - 1
            };
            delta[state].entry(sym).or_default().insert(target);
            state = target;
        }
    }
    Nfa {
        initial: 0,
        accepting: [0].into(),
        delta,
    }
}

/// A deterministic automaton recognizing `X^*`: the closed trie when `X` is a
/// prefix code (state count is then at most `Σ|x| − |X| + 1`), otherwise the
/// determinized flower automaton.
pub fn build_monoid_automaton(x: &FiniteWordSet) -> MonoidAutomaton {
    assert!(!x.is_empty(), "monoid automaton needs a nonempty set");
    let dfa = if classify_fix(x).is_prefix {
        trie_automaton(x)
    } else {
        flower_nfa(x).determinize().canonical()
    };
    MonoidAutomaton {
        dfa,
        source: x.clone(),
    }
}

/// Recognizer of `u · L(dfa)`: a fresh chain for `u` feeding the automaton's
/// initial state.
pub(crate) fn prepend_word(u: &Word, dfa: &Dfa) -> Dfa {
    let shift = u.len();
    assert!(shift > 0);
    let mut delta: Vec<BTreeMap<u8, usize>> = Vec::with_capacity(shift + dfa.delta.len());
    let bytes = u.as_bytes();
    for (i, &sym) in bytes.iter().enumerate() {
        let target = if i + 1 == bytes.len() {
            shift + dfa.initial
        } else {
            i + 1
        };
        delta.push([(sym, target)].into());
    }
    for edges in &dfa.delta {
        delta.push(edges.iter().map(|(&s, &t)| (s, t + shift)).collect());
    }
    Dfa {
        initial: 0,
        accepting: dfa.accepting.iter().map(|&s| s + shift).collect(),
        delta,
    }
}

/// Product automaton recognizing the intersection of the two languages,
/// restricted to pairs reachable from the paired initial state. Pair lookup
/// uses a dense table indexed by `sa * |b| + sb`.
pub(crate) fn product(a: &Dfa, b: &Dfa) -> Dfa {
    const UNSEEN: usize = usize::MAX;
    let nb = b.delta.len();
    let mut ids = vec![UNSEEN; a.delta.len() * nb];
    let mut order: Vec<(usize, usize)> = Vec::new();
    ids[a.initial * nb + b.initial] = 0;
    order.push((a.initial, b.initial));
    let mut delta: Vec<BTreeMap<u8, usize>> = vec![BTreeMap::new()];
    let mut i = 0;
    while i < order.len() {
        let (sa, sb) = order[i];
        let edges: Vec<(u8, usize)> = a.delta[sa]
            .iter()
            .filter_map(|(&sym, &ta)| b.delta[sb].get(&sym).map(|&tb| (sym, ta * nb + tb)))
            .collect();
        for (sym, key) in edges {
            if ids[key] == UNSEEN {
                ids[key] = order.len();
                order.push((key / nb, key % nb));
                delta.push(BTreeMap::new());
            }
            delta[i].insert(sym, ids[key]);
        }
        i += 1;
    }
    let accepting = order
        .iter()
        .enumerate()
        .filter(|(_, (sa, sb))| a.accepting.contains(sa) && b.accepting.contains(sb))
        .map(|(i, _)| i)
        .collect();
    Dfa {
        initial: 0,
        accepting,
        delta,
    }
}

/// Decide whether the two automata accept a common word, stopping at the
/// first accepting product pair.
pub(crate) fn languages_intersect(a: &Dfa, b: &Dfa) -> bool {
    let nb = b.delta.len();
    let mut seen = vec![false; a.delta.len() * nb];
    let mut stack = vec![(a.initial, b.initial)];
    seen[a.initial * nb + b.initial] = true;
    while let Some((sa, sb)) = stack.pop() {
        if a.accepting.contains(&sa) && b.accepting.contains(&sb) {
            return true;
        }
        for (&sym, &ta) in &a.delta[sa] {
            if let Some(&tb) = b.delta[sb].get(&sym) {
                if !seen[ta * nb + tb] {
                    seen[ta * nb + tb] = true;
                    stack.push((ta, tb));
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_words, parse_over};

    fn set(text: &str) -> FiniteWordSet {
        FiniteWordSet::from_text(text).unwrap()
    }

    #[test]
    fn trie_state_counts() {
        // Prefix-code bound: Σ|x| − |X| + 1.
        assert_eq!(build_monoid_automaton(&set("a,bc")).state_count(), 2);
        assert_eq!(build_monoid_automaton(&set("a")).state_count(), 1);
        let m = build_monoid_automaton(&set("ab,ba"));
        assert_eq!(m.state_count(), 3);
        assert!(m.state_count() <= 2 + 2 - 2 + 1);
        assert!(m.base_is_sole_accepting());
    }

    /// Membership must agree with factorization for every short word.
    fn check_membership(x: &FiniteWordSet, max_len: usize) {
        let m = build_monoid_automaton(x);
        let alphabet = x.alphabet().len();
        for w in enumerate_words(alphabet, max_len) {
            assert_eq!(
                m.accepts(&w),
                parse_over(&w, x).is_some(),
                "membership mismatch on {w} for {x}"
            );
        }
        assert!(m.accepts(&Word::empty()));
    }

    #[test]
    fn membership_matches_parsing() {
        check_membership(&set("a,bc"), 6);
        check_membership(&set("ab,ba"), 6);
        // Not a prefix code: exercises the flower determinization.
        check_membership(&set("a,ab"), 6);
        // Not a code at all.
        check_membership(&set("a,ab,ba"), 5);
    }

    #[test]
    fn prepend_and_product() {
        let x = set("a,ab,abc,bca,acb,cba");
        let m = build_monoid_automaton(&x);
        let ua = prepend_word(&Word::from_text("a"), m.dfa());
        let vb = prepend_word(&Word::from_text("abc"), m.dfa());
        // abca = a·bca = abc·a lies in both languages.
        assert!(languages_intersect(&ua, &vb));
        let wb = prepend_word(&Word::from_text("cba"), m.dfa());
        assert!(!languages_intersect(&ua, &wb));
    }

    #[test]
    fn export_format() {
        let m = build_monoid_automaton(&set("a,bc"));
        let text = m.dfa().export_lines();
        assert_eq!(text, "base 0\n0 a 0\n0 b 1\n1 c 0");
    }
}
