//! Exhaustive and sampled sweeps that turn the structural theorems into
//! executable zero-violation suites and the open conjectures into
//! counterexample scans, with deterministic machine-readable reports.
//!
//! A report depends only on the [`SweepSpec`]: grids enumerate in canonical
//! order, instance outcomes are aggregated with order-independent folds, and
//! witness lines are sorted, so sequential, parallel and sharded runs render
//! byte-identical text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::biroot::biroots;
use crate::error::{Error, Result};
use crate::intersection::{
    bound_report, build_monoid_automaton, intersect_pair_monoids, intersect_pair_monoids_cached,
    MonoidAutomaton,
};
use crate::maximality::{
    all_covering_pairs, circularity_witness_up_to, internal_xy_occurrence, is_primitive_pair,
    pair_root, PairRoot,
};
use crate::par::map_slice;
pub use crate::par::RunMode;
use crate::theta::{morphic_involutions, ThetaMap};
use crate::words::{commute, enumerate_words, is_primitive, Word, WordPair};

/// The experiments the harness can run. The token names are the stable CLI
/// and report identifiers.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Intersections of distinct primitive-pair monoids are trivial or
    /// generated by a single primitive word.
    Thm6,
    /// The minimal covering pair equals the unique primitive pair among all
    /// covering pairs of a non-commuting pair.
    Thm9,
    /// Neither `xy` nor `yx` occurs internally in a triple product over a
    /// primitive pair.
    Thm11,
    /// Primitive pairs pass the bounded circularity check.
    Prop13,
    /// A primitive word has at most one bi-root of size below `√|w|`.
    Thm14,
    /// Morphic involutions: theta-primitivity coincides with pair
    /// primitivity of `{w, θ(w)}`.
    Prop17,
    /// Margin scan for the additive generator-length bound (report-only).
    Conj1,
    /// Margin scan for the half-length bi-root bound (report-only).
    Conj2,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Thm6,
        Experiment::Thm9,
        Experiment::Thm11,
        Experiment::Prop13,
        Experiment::Thm14,
        Experiment::Prop17,
        Experiment::Conj1,
        Experiment::Conj2,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            Experiment::Thm6 => "thm6",
            Experiment::Thm9 => "thm9",
            Experiment::Thm11 => "thm11",
            Experiment::Prop13 => "prop13",
            Experiment::Thm14 => "thm14",
            Experiment::Prop17 => "prop17",
            Experiment::Conj1 => "conj1",
            Experiment::Conj2 => "conj2",
        }
    }

    /// Conjecture experiments report candidate flags, never violations.
    pub fn is_conjecture(&self) -> bool {
        matches!(self, Experiment::Conj1 | Experiment::Conj2)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.token() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

/// What to sweep. Identical specs produce identical reports; exhaustive mode
/// is selected by leaving `sample_seed` unset.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SweepSpec {
    pub experiment: Experiment,
    pub alphabet_size: usize,
    pub max_word_length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<usize>,
}

impl SweepSpec {
    pub fn exhaustive(
        experiment: Experiment,
        alphabet_size: usize,
        max_word_length: usize,
    ) -> Self {
        SweepSpec {
            experiment,
            alphabet_size,
            max_word_length,
            sample_seed: None,
            sample_count: None,
        }
    }

    fn header(&self) -> String {
        let mode = match self.sample_seed {
            None => "exhaustive".to_string(),
            Some(seed) => format!(
                "sample(seed={seed},count={})",
                self.sample_count.unwrap_or(DEFAULT_SAMPLE_COUNT)
            ),
        };
        format!(
            "# sweep experiment={} alphabet_size={} max_word_length={} mode={}",
            self.experiment, self.alphabet_size, self.max_word_length, mode
        )
    }
}

const DEFAULT_SAMPLE_COUNT: usize = 1000;
const CHUNK: usize = 256;

/// A fully reproducible instance record: enough to re-execute the single
/// instance and reproduce the verdict bit for bit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub experiment: String,
    /// `violation`, `flag`, or `record` (extremal statistic).
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    pub instance: BTreeMap<String, String>,
    pub verdict: BTreeMap<String, String>,
}

impl WitnessRecord {
    fn new(experiment: Experiment, kind: &str, instance: BTreeMap<String, String>) -> Self {
        WitnessRecord {
            experiment: experiment.token().to_string(),
            kind: kind.to_string(),
            metric: None,
            instance,
            verdict: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedWitness(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub instances_enumerated: u64,
    pub instances_admitted: u64,
    pub stats: BTreeMap<String, u64>,
    pub violations: Vec<WitnessRecord>,
    pub flags: Vec<WitnessRecord>,
    /// Extremal-statistic records (max/min carriers), replayable like any
    /// witness.
    pub records: Vec<WitnessRecord>,
    pub partial: bool,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.flags.is_empty()
    }

    /// Exit-code contract: 0 clean, 3 violations, 4 candidate flags only.
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            3
        } else if !self.flags.is_empty() {
            4
        } else {
            0
        }
    }

    /// One header line, then sorted `stat,` CSV lines, then sorted
    /// `witness,` JSON lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.spec.header());
        out.push('\n');
        let mut stats = self.stats.clone();
        stats.insert("instances_enumerated".into(), self.instances_enumerated);
        stats.insert("instances_admitted".into(), self.instances_admitted);
        stats.insert("violations".into(), self.violations.len() as u64);
        stats.insert("candidate_flags".into(), self.flags.len() as u64);
        stats.insert("partial".into(), u64::from(self.partial));
        for (key, value) in &stats {
            out.push_str(&format!("stat,{key},{value}\n"));
        }
        let mut lines: Vec<String> = self
            .violations
            .iter()
            .chain(&self.flags)
            .chain(&self.records)
            .map(|w| format!("witness,{}", w.to_json()))
            .collect();
        lines.sort();
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Per-instance outcome, aggregated with order-independent folds.
#[derive(Clone, Default)]
struct Outcome {
    admitted: bool,
    violation: Option<WitnessRecord>,
    flag: Option<WitnessRecord>,
    adds: Vec<(&'static str, u64)>,
    maxima: Vec<(&'static str, u64, WitnessRecord)>,
    minima: Vec<(&'static str, u64, WitnessRecord)>,
}

impl Outcome {
    fn skipped() -> Self {
        Outcome::default()
    }
}

#[derive(Clone)]
enum Instance {
    Pair(Word, Word),
    /// Indices into the grid's primitive-pair table.
    PairOfPairs(usize, usize),
    PrimitivePair(WordPair),
    Single(Word),
    ThetaWord(usize, Word),
}

struct Grid {
    enumerated: u64,
    base_stats: BTreeMap<String, u64>,
    instances: Vec<Instance>,
    thetas: Vec<ThetaMap>,
    /// Primitive pairs with their star automata, built once per sweep.
    pairs: Vec<WordPair>,
    automata: Vec<MonoidAutomaton>,
}

fn word_instance(w: &Word) -> BTreeMap<String, String> {
    [("w".to_string(), w.to_string())].into()
}

fn pair_instance(x: &Word, y: &Word) -> BTreeMap<String, String> {
    [
        ("x".to_string(), x.to_string()),
        ("y".to_string(), y.to_string()),
    ]
    .into()
}

fn two_pair_instance(px: &WordPair, pu: &WordPair) -> BTreeMap<String, String> {
    [
        ("x".to_string(), px.first().to_string()),
        ("y".to_string(), px.second().to_string()),
        ("u".to_string(), pu.first().to_string()),
        ("v".to_string(), pu.second().to_string()),
    ]
    .into()
}

/// All primitive pairs over the grid, plus how many unordered word pairs were
/// scanned to find them.
fn primitive_pairs_grid(alphabet: usize, max_len: usize, mode: RunMode) -> (u64, Vec<WordPair>) {
    let words = enumerate_words(alphabet, max_len);
    let mut index_pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            index_pairs.push((i, j));
        }
    }
    let keep = map_slice(mode, &index_pairs, |&(i, j)| {
        !commute(&words[i], &words[j])
            && is_primitive_pair(&words[i], &words[j]).expect("nonempty distinct words")
    });
    let pairs = index_pairs
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&(i, j), _)| WordPair::new(words[i].clone(), words[j].clone()).expect("distinct"))
        .collect();
    (index_pairs.len() as u64, pairs)
}

fn build_grid(spec: &SweepSpec, mode: RunMode) -> Grid {
    let (alphabet, max_len) = (spec.alphabet_size, spec.max_word_length);
    match spec.experiment {
        Experiment::Thm6 | Experiment::Conj1 => {
            let (scanned, pairs) = primitive_pairs_grid(alphabet, max_len, mode);
            let automata: Vec<MonoidAutomaton> =
                map_slice(mode, &pairs, |p| build_monoid_automaton(&p.as_set()));
            let mut instances = Vec::new();
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    instances.push(Instance::PairOfPairs(i, j));
                }
            }
            Grid {
                enumerated: instances.len() as u64,
                base_stats: [
                    ("word_pairs_scanned".to_string(), scanned),
                    ("primitive_pairs".to_string(), pairs.len() as u64),
                ]
                .into(),
                instances,
                thetas: Vec::new(),
                pairs,
                automata,
            }
        }
        Experiment::Thm11 | Experiment::Prop13 => {
            let (scanned, pairs) = primitive_pairs_grid(alphabet, max_len, mode);
            Grid {
                enumerated: pairs.len() as u64,
                base_stats: [("word_pairs_scanned".to_string(), scanned)].into(),
                instances: pairs.into_iter().map(Instance::PrimitivePair).collect(),
                thetas: Vec::new(),
                pairs: Vec::new(),
                automata: Vec::new(),
            }
        }
        Experiment::Thm9 => {
            let words = enumerate_words(alphabet, max_len);
            let mut instances = Vec::new();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    instances.push(Instance::Pair(words[i].clone(), words[j].clone()));
                }
            }
            Grid {
                enumerated: instances.len() as u64,
                base_stats: BTreeMap::new(),
                instances,
                thetas: Vec::new(),
                pairs: Vec::new(),
                automata: Vec::new(),
            }
        }
        Experiment::Thm14 | Experiment::Conj2 => {
            let words = enumerate_words(alphabet, max_len);
            Grid {
                enumerated: words.len() as u64,
                base_stats: BTreeMap::new(),
                instances: words.into_iter().map(Instance::Single).collect(),
                thetas: Vec::new(),
                pairs: Vec::new(),
                automata: Vec::new(),
            }
        }
        Experiment::Prop17 => {
            let thetas = morphic_involutions(alphabet);
            let words = enumerate_words(alphabet, max_len);
            let mut instances = Vec::new();
            for t in 0..thetas.len() {
                for w in &words {
                    instances.push(Instance::ThetaWord(t, w.clone()));
                }
            }
            Grid {
                enumerated: instances.len() as u64,
                base_stats: [("involutions".to_string(), thetas.len() as u64)].into(),
                instances,
                thetas,
                pairs: Vec::new(),
                automata: Vec::new(),
            }
        }
    }
}

/// Verdict builders, shared between the sweep path and `replay` so a replayed
/// instance reproduces its verdict bit for bit.
mod verdicts {
    use super::*;

    pub(super) fn thm6(px: &WordPair, pu: &WordPair) -> (BTreeMap<String, String>, bool) {
        thm6_outcome(intersect_pair_monoids(px, pu))
    }

    pub(super) fn thm6_outcome(outcome: Result<Option<Word>>) -> (BTreeMap<String, String>, bool) {
        match outcome {
            Ok(None) => ([("trivial".to_string(), "true".to_string())].into(), true),
            Ok(Some(z)) => (
                [
                    ("z".to_string(), z.to_string()),
                    ("z_len".to_string(), z.len().to_string()),
                ]
                .into(),
                true,
            ),
            Err(e) => ([("violation".to_string(), e.to_string())].into(), false),
        }
    }

    pub(super) fn conj1(px: &WordPair, pu: &WordPair) -> (BTreeMap<String, String>, bool, bool) {
        conj1_outcome(px, pu, intersect_pair_monoids(px, pu))
    }

    pub(super) fn conj1_outcome(
        px: &WordPair,
        pu: &WordPair,
        outcome: Result<Option<Word>>,
    ) -> (BTreeMap<String, String>, bool, bool) {
        match outcome {
            Ok(None) => (
                [("trivial".to_string(), "true".to_string())].into(),
                true,
                false,
            ),
            Ok(Some(z)) => match bound_report(px, pu, &z) {
                Ok(report) => {
                    let verdict: BTreeMap<String, String> = [
                        ("z".to_string(), z.to_string()),
                        ("z_len".to_string(), report.z_len.to_string()),
                        (
                            "product_bound".to_string(),
                            report.size_product_bound.to_string(),
                        ),
                        (
                            "additive_bound".to_string(),
                            report.conjecture1_bound.to_string(),
                        ),
                        (
                            "additive_bound_holds".to_string(),
                            report.conjecture1_holds.to_string(),
                        ),
                    ]
                    .into();
                    (verdict, true, !report.conjecture1_holds)
                }
                Err(e) => (
                    [("violation".to_string(), e.to_string())].into(),
                    false,
                    false,
                ),
            },
            Err(e) => (
                [("violation".to_string(), e.to_string())].into(),
                false,
                false,
            ),
        }
    }

    pub(super) fn thm9(x: &Word, y: &Word) -> (BTreeMap<String, String>, bool) {
        let covering = all_covering_pairs(x, y);
        let primitive: Vec<&WordPair> = covering
            .iter()
            .filter(|p| is_primitive_pair(p.first(), p.second()).unwrap_or(false))
            .collect();
        let computed = match pair_root(x, y) {
            Ok(PairRoot::Rank2 { pair, .. }) => pair,
            _ => {
                return (
                    [("violation".to_string(), "pair root is not rank 2".into())].into(),
                    false,
                )
            }
        };
        let mut verdict: BTreeMap<String, String> = [
            ("covering_pairs".to_string(), covering.len().to_string()),
            ("primitive_covers".to_string(), primitive.len().to_string()),
            ("root".to_string(), computed.to_string()),
        ]
        .into();
        let ok = primitive.len() == 1 && primitive[0] == &computed;
        if !ok {
            verdict.insert(
                "violation".to_string(),
                "covering-pair oracle disagrees with pair root".to_string(),
            );
        }
        (verdict, ok)
    }

    pub(super) fn thm11(x: &Word, y: &Word) -> (BTreeMap<String, String>, bool) {
        match internal_xy_occurrence(x, y) {
            Ok(None) => (
                [("internal_occurrence".to_string(), "none".to_string())].into(),
                true,
            ),
            Ok(Some(hit)) => {
                let label = |w: &Word| if w == x { "x" } else { "y" };
                let triple: String = hit.triple.iter().map(label).collect();
                let pattern = if hit.pattern == x.concat(y) {
                    "xy"
                } else {
                    "yx"
                };
                (
                    [
                        (
                            "violation".to_string(),
                            format!("{pattern} internal in {triple}"),
                        ),
                        ("offset".to_string(), hit.offset.to_string()),
                    ]
                    .into(),
                    false,
                )
            }
            Err(e) => ([("violation".to_string(), e.to_string())].into(), false),
        }
    }

    pub(super) fn prop13(px: &WordPair) -> (BTreeMap<String, String>, bool) {
        let bound = 3 * px.size();
        match circularity_witness_up_to(&px.as_set(), bound) {
            None => (
                [("circular_up_to".to_string(), bound.to_string())].into(),
                true,
            ),
            Some((u, v)) => (
                [
                    ("violation".to_string(), "circularity fails".to_string()),
                    ("u".to_string(), u.to_string()),
                    ("v".to_string(), v.to_string()),
                ]
                .into(),
                false,
            ),
        }
    }

    pub(super) fn thm14(w: &Word) -> (BTreeMap<String, String>, bool) {
        let bound = crate::biroot::small_size_bound(w.len());
        let small = match bound {
            Some(b) => match biroots(w, b) {
                Ok(roots) => roots,
                Err(e) => {
                    return ([("violation".to_string(), e.to_string())].into(), false);
                }
            },
            None => Vec::new(),
        };
        let mut verdict: BTreeMap<String, String> =
            [("small_biroots".to_string(), small.len().to_string())].into();
        if let Some(first) = small.first() {
            verdict.insert("smallest".to_string(), first.pair.to_string());
        }
        let ok = small.len() <= 1;
        if !ok {
            verdict.insert(
                "violation".to_string(),
                format!(
                    "two bi-roots below the square-root threshold: {} and {}",
                    small[0].pair, small[1].pair
                ),
            );
        }
        (verdict, ok)
    }

    pub(super) fn conj2(w: &Word) -> (BTreeMap<String, String>, bool) {
        match crate::biroot::conjecture2_scan(w) {
            Ok(scan) => {
                let mut verdict: BTreeMap<String, String> = [(
                    "count_below_half".to_string(),
                    scan.count_below_half.to_string(),
                )]
                .into();
                if let Some(first) = scan.witnesses.first() {
                    verdict.insert("smallest".to_string(), first.pair.to_string());
                }
                (verdict, scan.flagged)
            }
            Err(e) => ([("error".to_string(), e.to_string())].into(), false),
        }
    }

    pub(super) fn prop17(theta: &ThetaMap, w: &Word) -> (BTreeMap<String, String>, bool) {
        match crate::theta::check_morphic_primitivity_equivalence(theta, w) {
            Ok(true) => (
                [("equivalent".to_string(), "true".to_string())].into(),
                true,
            ),
            Ok(false) => (
                [(
                    "violation".to_string(),
                    "theta-primitivity and pair primitivity disagree".to_string(),
                )]
                .into(),
                false,
            ),
            Err(e) => ([("violation".to_string(), e.to_string())].into(), false),
        }
    }
}

fn check_instance(spec: &SweepSpec, grid: &Grid, instance: &Instance) -> Outcome {
    let experiment = spec.experiment;
    let thetas = &grid.thetas;
    match (experiment, instance) {
        (Experiment::Thm6, Instance::PairOfPairs(i, j)) => {
            let (px, pu) = (&grid.pairs[*i], &grid.pairs[*j]);
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let result =
                intersect_pair_monoids_cached(px, pu, &grid.automata[*i], &grid.automata[*j]);
            let (verdict, ok) = verdicts::thm6_outcome(result);
            if ok && verdict.contains_key("trivial") {
                outcome.adds.push(("trivial_intersections", 1));
                return outcome;
            }
            let mut record = WitnessRecord::new(experiment, "record", two_pair_instance(px, pu));
            record.verdict = verdict.clone();
            if !ok {
                record.kind = "violation".to_string();
                outcome.violation = Some(record);
            } else {
                let z_len: u64 = verdict
                    .get("z_len")
                    .and_then(|v| v.parse().ok())
                    .expect("nontrivial verdict carries z_len");
                outcome.adds.push(("nontrivial_intersections", 1));
                outcome.maxima.push(("max_z_len", z_len, record));
            }
            outcome
        }
        (Experiment::Conj1, Instance::PairOfPairs(i, j)) => {
            let (px, pu) = (&grid.pairs[*i], &grid.pairs[*j]);
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let result =
                intersect_pair_monoids_cached(px, pu, &grid.automata[*i], &grid.automata[*j]);
            let (verdict, ok, flagged) = verdicts::conj1_outcome(px, pu, result);
            if ok && verdict.contains_key("trivial") {
                outcome.adds.push(("trivial_intersections", 1));
                return outcome;
            }
            let mut record = WitnessRecord::new(experiment, "record", two_pair_instance(px, pu));
            record.verdict = verdict.clone();
            if !ok {
                record.kind = "violation".to_string();
                outcome.violation = Some(record);
            } else if flagged {
                record.kind = "flag".to_string();
                outcome.flag = Some(record);
            } else {
                let z_len: u64 = verdict
                    .get("z_len")
                    .and_then(|v| v.parse().ok())
                    .expect("nontrivial verdict carries z_len");
                let additive: u64 = verdict
                    .get("additive_bound")
                    .and_then(|v| v.parse().ok())
                    .expect("nontrivial verdict carries the additive bound");
                outcome.adds.push(("nontrivial_intersections", 1));
                outcome.maxima.push(("max_z_len", z_len, record.clone()));
                outcome
                    .minima
                    .push(("min_additive_slack", additive - z_len, record));
            }
            outcome
        }
        (Experiment::Thm9, Instance::Pair(x, y)) => {
            if commute(x, y) {
                return Outcome::skipped();
            }
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let (verdict, ok) = verdicts::thm9(x, y);
            if !ok {
                let mut v = WitnessRecord::new(experiment, "violation", pair_instance(x, y));
                v.verdict = verdict;
                outcome.violation = Some(v);
            }
            outcome
        }
        (Experiment::Thm11, Instance::PrimitivePair(p)) => {
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let (verdict, ok) = verdicts::thm11(p.first(), p.second());
            if !ok {
                let mut v = WitnessRecord::new(
                    experiment,
                    "violation",
                    pair_instance(p.first(), p.second()),
                );
                v.verdict = verdict;
                outcome.violation = Some(v);
            }
            outcome
        }
        (Experiment::Prop13, Instance::PrimitivePair(p)) => {
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let (verdict, ok) = verdicts::prop13(p);
            if !ok {
                let mut v = WitnessRecord::new(
                    experiment,
                    "violation",
                    pair_instance(p.first(), p.second()),
                );
                v.verdict = verdict;
                outcome.violation = Some(v);
            }
            outcome
        }
        (Experiment::Thm14, Instance::Single(w)) => {
            if !is_primitive(w).expect("grid words are nonempty") {
                return Outcome::skipped();
            }
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let (verdict, ok) = verdicts::thm14(w);
            if !ok {
                let mut v = WitnessRecord::new(experiment, "violation", word_instance(w));
                v.verdict = verdict;
                outcome.violation = Some(v);
            } else if verdict.get("small_biroots").map(String::as_str) == Some("1") {
                outcome.adds.push(("words_with_small_biroot", 1));
            }
            outcome
        }
        (Experiment::Conj2, Instance::Single(w)) => {
            if !is_primitive(w).expect("grid words are nonempty") {
                return Outcome::skipped();
            }
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let (verdict, flagged) = verdicts::conj2(w);
            let count: u64 = verdict
                .get("count_below_half")
                .and_then(|c| c.parse().ok())
                .unwrap_or(0);
            if flagged {
                let mut f = WitnessRecord::new(experiment, "flag", word_instance(w));
                f.verdict = verdict;
                outcome.flag = Some(f);
            } else if count == 1 {
                outcome.adds.push(("words_with_half_biroot", 1));
            }
            outcome
        }
        (Experiment::Prop17, Instance::ThetaWord(t, w)) => {
            let theta = &thetas[*t];
            if theta.apply(w).expect("grid words are in alphabet") == *w {
                return Outcome::skipped();
            }
            let mut outcome = Outcome {
                admitted: true,
                ..Outcome::default()
            };
            let (verdict, ok) = verdicts::prop17(theta, w);
            if !ok {
                let mut instance = word_instance(w);
                instance.insert("theta".to_string(), theta.spec_string());
                let mut v = WitnessRecord::new(experiment, "violation", instance);
                v.verdict = verdict;
                outcome.violation = Some(v);
            }
            outcome
        }
        _ => unreachable!("instance kind matches its experiment"),
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    run_sweep_with(spec, RunMode::default(), None)
}

/// Run a sweep with an explicit execution mode and an optional wall-clock
/// budget. A budget cut happens only at chunk boundaries and is reported as a
/// partial run; complete runs are byte-deterministic across modes.
pub fn run_sweep_with(
    spec: &SweepSpec,
    mode: RunMode,
    budget: Option<Duration>,
) -> Result<SweepReport> {
    let mut grid = build_grid(spec, mode);
    let instances = select_instances(spec, std::mem::take(&mut grid.instances));
    let start = Instant::now();
    let mut acc = Accumulator::default();
    let mut processed = 0usize;
    let mut partial = false;
    for chunk in instances.chunks(CHUNK) {
        for outcome in map_slice(mode, chunk, |i| check_instance(spec, &grid, i)) {
            acc.absorb(outcome);
        }
        processed += chunk.len();
        if let Some(limit) = budget {
            if start.elapsed() > limit {
                partial = processed < instances.len();
                break;
            }
        }
    }
    Ok(acc.finish(spec.clone(), grid.enumerated, grid.base_stats, partial))
}

/// Split the grid round-robin into `shards` worker batches, run each batch,
/// and merge. The merged report equals the single-run report.
pub fn run_sweep_sharded(spec: &SweepSpec, shards: usize) -> Result<SweepReport> {
    assert!(shards >= 1);
    let mode = RunMode::default();
    let mut grid = build_grid(spec, mode);
    let instances = select_instances(spec, std::mem::take(&mut grid.instances));
    let mut acc = Accumulator::default();
    for shard in 0..shards {
        let batch: Vec<Instance> = instances
            .iter()
            .skip(shard)
            .step_by(shards)
            .cloned()
            .collect();
        for outcome in map_slice(mode, &batch, |i| check_instance(spec, &grid, i)) {
            acc.absorb(outcome);
        }
    }
    Ok(acc.finish(spec.clone(), grid.enumerated, grid.base_stats, false))
}

fn select_instances(spec: &SweepSpec, instances: Vec<Instance>) -> Vec<Instance> {
    let Some(seed) = spec.sample_seed else {
        return instances;
    };
    if instances.is_empty() {
        return instances;
    }
    let count = spec.sample_count.unwrap_or(DEFAULT_SAMPLE_COUNT);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: BTreeSet<usize> = BTreeSet::new();
    for _ in 0..count {
        picked.insert(rng.gen_range(0..instances.len()));
    }
    picked.into_iter().map(|i| instances[i].clone()).collect()
}

/// Order-independent streaming fold of instance outcomes: sums, extremal
/// champions with canonical tie-breaks, and sorted witness lists. Keeps
/// memory bounded by the number of champions and witnesses, not the grid.
#[derive(Default)]
struct Accumulator {
    admitted: u64,
    adds: BTreeMap<&'static str, u64>,
    violations: Vec<WitnessRecord>,
    flags: Vec<WitnessRecord>,
    maxima: BTreeMap<&'static str, (u64, WitnessRecord)>,
    minima: BTreeMap<&'static str, (u64, WitnessRecord)>,
}

impl Accumulator {
    fn absorb(&mut self, outcome: Outcome) {
        self.admitted += u64::from(outcome.admitted);
        if let Some(v) = outcome.violation {
            self.violations.push(v);
        }
        if let Some(f) = outcome.flag {
            self.flags.push(f);
        }
        for (key, value) in outcome.adds {
            *self.adds.entry(key).or_insert(0) += value;
        }
        for (key, value, record) in outcome.maxima {
            merge_extremal(&mut self.maxima, key, value, record, true);
        }
        for (key, value, record) in outcome.minima {
            merge_extremal(&mut self.minima, key, value, record, false);
        }
    }

    fn finish(
        self,
        spec: SweepSpec,
        enumerated: u64,
        base_stats: BTreeMap<String, u64>,
        partial: bool,
    ) -> SweepReport {
        let mut stats = base_stats;
        for (key, value) in self.adds {
            *stats.entry(key.to_string()).or_insert(0) += value;
        }
        let mut records = Vec::new();
        for (key, (value, mut record)) in self.maxima.into_iter().chain(self.minima) {
            stats.insert(key.to_string(), value);
            record.metric = Some(key.to_string());
            records.push(record);
        }
        let mut violations = self.violations;
        let mut flags = self.flags;
        violations.sort();
        flags.sort();
        records.sort();
        SweepReport {
            spec,
            instances_enumerated: enumerated,
            instances_admitted: self.admitted,
            stats,
            violations,
            flags,
            records,
            partial,
        }
    }
}

/// Ties prefer the canonically least record, keeping merges order-independent.
fn merge_extremal(
    table: &mut BTreeMap<&'static str, (u64, WitnessRecord)>,
    key: &'static str,
    value: u64,
    record: WitnessRecord,
    maximize: bool,
) {
    match table.get_mut(key) {
        None => {
            table.insert(key, (value, record));
        }
        Some((best, best_record)) => {
            let better = if maximize {
                value > *best
            } else {
                value < *best
            };
            if better || (value == *best && record < *best_record) {
                *best = value;
                *best_record = record;
            }
        }
    }
}

fn instance_word(record: &WitnessRecord, key: &str) -> Result<Word> {
    record
        .instance
        .get(key)
        .map(|s| Word::from_text(s))
        .ok_or_else(|| Error::MalformedWitness(format!("missing instance field `{key}`")))
}

/// Re-execute the single instance described by a witness record and return
/// the freshly computed verdict in record form. The result's verdict matches
/// the stored one bit for bit on any record produced by this harness.
pub fn replay(record: &WitnessRecord) -> Result<WitnessRecord> {
    let experiment = Experiment::from_str(&record.experiment)?;
    let verdict = match experiment {
        Experiment::Thm6 | Experiment::Conj1 => {
            let x = instance_word(record, "x")?;
            let y = instance_word(record, "y")?;
            let u = instance_word(record, "u")?;
            let v = instance_word(record, "v")?;
            let px = WordPair::new(x, y).map_err(|e| Error::MalformedWitness(e.to_string()))?;
            let pu = WordPair::new(u, v).map_err(|e| Error::MalformedWitness(e.to_string()))?;
            if experiment == Experiment::Thm6 {
                verdicts::thm6(&px, &pu).0
            } else {
                verdicts::conj1(&px, &pu).0
            }
        }
        Experiment::Thm9 => {
            let x = instance_word(record, "x")?;
            let y = instance_word(record, "y")?;
            verdicts::thm9(&x, &y).0
        }
        Experiment::Thm11 => {
            let x = instance_word(record, "x")?;
            let y = instance_word(record, "y")?;
            verdicts::thm11(&x, &y).0
        }
        Experiment::Prop13 => {
            let x = instance_word(record, "x")?;
            let y = instance_word(record, "y")?;
            let p = WordPair::new(x, y).map_err(|e| Error::MalformedWitness(e.to_string()))?;
            verdicts::prop13(&p).0
        }
        Experiment::Thm14 => verdicts::thm14(&instance_word(record, "w")?).0,
        Experiment::Conj2 => verdicts::conj2(&instance_word(record, "w")?).0,
        Experiment::Prop17 => {
            let w = instance_word(record, "w")?;
            let spec = record
                .instance
                .get("theta")
                .ok_or_else(|| Error::MalformedWitness("missing instance field `theta`".into()))?;
            let theta = ThetaMap::from_spec(spec, crate::theta::ThetaKind::Morphic)
                .map_err(|e| Error::MalformedWitness(e.to_string()))?;
            verdicts::prop17(&theta, &w).0
        }
    };
    let mut out = record.clone();
    out.verdict = verdict;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment_tokens_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(Experiment::from_str(e.token()).unwrap(), e);
        }
        assert!(matches!(
            Experiment::from_str("thm99"),
            Err(Error::UnknownExperiment(_))
        ));
    }

    #[test]
    fn small_thm6_sweep_is_clean() {
        let spec = SweepSpec::exhaustive(Experiment::Thm6, 3, 3);
        let report = run_sweep(&spec).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
        assert_eq!(report.exit_code(), 0);
        assert!(report.stats.contains_key("primitive_pairs"));
    }

    #[test]
    fn small_thm14_sweep_is_clean() {
        let spec = SweepSpec::exhaustive(Experiment::Thm14, 2, 10);
        let report = run_sweep(&spec).unwrap();
        assert!(report.is_clean());
        assert!(report.instances_admitted > 0);
    }

    #[test]
    fn determinism_across_modes_and_shards() {
        for experiment in [Experiment::Thm6, Experiment::Thm9, Experiment::Conj2] {
            let spec = SweepSpec::exhaustive(experiment, 2, 4);
            let sequential = run_sweep_with(&spec, RunMode::Sequential, None).unwrap();
            let parallel = run_sweep_with(&spec, RunMode::Parallel, None).unwrap();
            let rerun = run_sweep_with(&spec, RunMode::Parallel, None).unwrap();
            let sharded = run_sweep_sharded(&spec, 3).unwrap();
            assert_eq!(sequential.render(), parallel.render());
            assert_eq!(parallel.render(), rerun.render());
            assert_eq!(parallel.render(), sharded.render());
        }
    }

    #[test]
    fn sampling_is_deterministic_and_subsets() {
        let mut spec = SweepSpec::exhaustive(Experiment::Thm9, 2, 4);
        spec.sample_seed = Some(7);
        spec.sample_count = Some(50);
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a.render(), b.render());
        assert!(a.instances_admitted <= 50);
        let full = run_sweep(&SweepSpec::exhaustive(Experiment::Thm9, 2, 4)).unwrap();
        assert_eq!(a.instances_enumerated, full.instances_enumerated);
    }

    #[test]
    fn replay_reproduces_verdicts() {
        // A handcrafted negative control: primitive words whose pair is not
        // primitive, where xy does occur internally in yxx.
        let record = WitnessRecord {
            experiment: "thm11".to_string(),
            kind: "control".to_string(),
            metric: None,
            instance: pair_instance(&Word::from_text("abcabca"), &Word::from_text("bcaabcabc")),
            verdict: BTreeMap::new(),
        };
        let replayed = replay(&record).unwrap();
        assert_eq!(
            replayed.verdict.get("violation").map(String::as_str),
            Some("xy internal in yxx")
        );

        // Extremal records from a sweep replay to the identical verdict.
        let spec = SweepSpec::exhaustive(Experiment::Thm6, 3, 3);
        let report = run_sweep(&spec).unwrap();
        for record in &report.records {
            let replayed = replay(record).unwrap();
            assert_eq!(replayed.verdict, record.verdict);
        }

        let mut broken = record;
        broken.instance.remove("y");
        assert!(matches!(replay(&broken), Err(Error::MalformedWitness(_))));
    }

    #[test]
    fn budget_yields_partial_report() {
        let spec = SweepSpec::exhaustive(Experiment::Thm9, 2, 5);
        let report = run_sweep_with(&spec, RunMode::Sequential, Some(Duration::ZERO)).unwrap();
        assert!(report.partial);
        assert!(report.render().contains("stat,partial,1"));
    }

    #[test]
    fn render_shape() {
        let spec = SweepSpec::exhaustive(Experiment::Conj1, 3, 2);
        let report = run_sweep(&spec).unwrap();
        let text = report.render();
        let mut lines = text.lines();
        assert!(lines
            .next()
            .unwrap()
            .starts_with("# sweep experiment=conj1"));
        assert!(text.contains("stat,violations,0"));
    }
}
