//! Command-line surface over the `primset` library. Every subcommand maps
//! onto one library operation, with stable human-readable output and an
//! optional `--json` object form.
//!
//! Exit codes: 0 success; 1 predicate false under `--assert`; 2 usage or
//! parse error; 3 internal invariant violation; 4 conjecture candidate flag.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use primset::biroot;
use primset::codes;
use primset::intersection;
use primset::lab::{self, Experiment, RunMode, SweepSpec, WitnessRecord};
use primset::maximality::{self, PairRoot};
use primset::theta::{self, ThetaKind, ThetaMap};
use primset::words::{self, Factorization, Word};
use primset::{Error, FiniteWordSet, WordPair};

#[derive(Parser)]
#[command(
    name = "primset",
    version,
    about = "Workbench for codes, ranks, primitive sets, submonoid intersections, bi-roots and theta-primitivity"
)]
struct Cli {
    /// Emit one JSON object {command, input, result, witnesses?}.
    #[arg(long, global = true)]
    json: bool,
    /// Exit 1 when the command's predicate is false.
    #[arg(long, global = true)]
    assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is primitive.
    IsPrimitive { word: String },
    /// Primitive root and exponent of a word.
    Root { word: String },
    /// Decide whether two words commute.
    Commute { x: String, y: String },
    /// Factor a word over a set, if possible.
    Parse { word: String, set: Vec<String> },
    /// Unique-factorization test with a shortest witness when it fails.
    IsCode { set: Vec<String> },
    /// Prefix/suffix/bifix classification.
    FixClass { set: Vec<String> },
    /// Dependency graph edges and component count.
    DepGraph { set: Vec<String> },
    /// Basis of the free hull, with the reduction trace.
    FreeHull { set: Vec<String> },
    /// Combinatorial rank with a minimum covering set.
    Rank { set: Vec<String> },
    /// Cardinality of the free hull basis.
    FreeRank { set: Vec<String> },
    /// Primitive root of a two-word set.
    PairRoot { x: String, y: String },
    /// Decide whether two words form a primitive pair.
    IsPrimitivePair { x: String, y: String },
    /// Bounded maximality test with a dominating set when it fails.
    IsPrimitiveSet { set: Vec<String> },
    /// All primitive roots of a set at its rank.
    SetRoots { set: Vec<String> },
    /// Intersection of two finitely generated submonoids.
    Intersect { set_x: String, set_u: String },
    /// Intersection of two primitive-pair monoids with length bounds.
    IntersectPairs {
        x: String,
        y: String,
        u: String,
        v: String,
    },
    /// Bi-roots of a primitive word up to a size bound.
    Biroot {
        word: String,
        /// Largest pair size to report (defaults to the word length).
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// The unique bi-root below the square-root size threshold, if any.
    SmallBiroot { word: String },
    /// Image of a word under an involutive (anti)morphism.
    ThetaApply {
        word: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        kind: String,
    },
    /// Theta-root of a word with its block tags.
    ThetaRoot {
        word: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        kind: String,
    },
    /// Decide theta-primitivity.
    ThetaPrimitive {
        word: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        kind: String,
    },
    /// Run a sweep experiment and print its report.
    Sweep {
        /// One of: thm6, thm9, thm11, prop13, thm14, prop17, conj1, conj2.
        experiment: String,
        #[arg(long)]
        alphabet: usize,
        #[arg(long = "max-len")]
        max_len: usize,
        /// Sample mode seed; exhaustive when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Sample size in sample mode.
        #[arg(long)]
        count: Option<usize>,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Wall-clock budget in seconds; exceeding it yields an explicit
        /// partial report.
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Force the sequential code path.
        #[arg(long)]
        sequential: bool,
    },
    /// Re-execute a witness record (inline JSON or @file).
    Replay { record: String },
}

struct Output {
    text: String,
    input: Value,
    result: Value,
    witnesses: Option<Value>,
    predicate: Option<bool>,
    exit_override: Option<i32>,
}

impl Output {
    fn new(text: impl Into<String>, input: Value, result: Value) -> Self {
        Output {
            text: text.into(),
            input,
            result,
            witnesses: None,
            predicate: None,
            exit_override: None,
        }
    }

    fn predicate(mut self, value: bool) -> Self {
        self.predicate = Some(value);
        self
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_word(token: &str) -> Result<Word, Error> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_alphabetic()) {
        return Err(Error::MalformedWitness(format!(
            "words must be nonempty ASCII letter runs, got `{token}`"
        )));
    }
    Ok(Word::from_text(token))
}

/// Set arguments: each token is `@file` (one word per line) or a
/// comma-separated list of words.
fn parse_set(tokens: &[String]) -> Result<FiniteWordSet, Error> {
    let mut members = Vec::new();
    for token in tokens {
        let expanded = if let Some(path) = token.strip_prefix('@') {
            fs::read_to_string(path)
                .map_err(|e| Error::MalformedWitness(format!("cannot read {path}: {e}")))?
        } else {
            token.clone()
        };
        for item in expanded
            .split([',', '\n'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            members.push(parse_word(item)?);
        }
    }
    if members.is_empty() {
        return Err(Error::EmptySet);
    }
    FiniteWordSet::new(members)
}

fn parse_theta(spec: &str, kind: &str) -> Result<ThetaMap, Error> {
    let kind = match kind {
        "morphic" => ThetaKind::Morphic,
        "antimorphic" => ThetaKind::Antimorphic,
        other => {
            return Err(Error::MalformedWitness(format!(
                "kind must be morphic or antimorphic, got `{other}`"
            )))
        }
    };
    ThetaMap::from_spec(spec, kind)
}

fn set_value(set: &FiniteWordSet) -> Value {
    Value::Array(set.iter().map(|w| json!(w.to_string())).collect())
}

fn fact_value(f: &Factorization) -> Value {
    Value::Array(f.blocks().iter().map(|b| json!(b.to_string())).collect())
}

fn pair_value(p: &WordPair) -> Value {
    json!([p.first().to_string(), p.second().to_string()])
}

fn run(command: &Command) -> Result<Output, Error> {
    match command {
        Command::IsPrimitive { word } => {
            let w = parse_word(word)?;
            let result = words::is_primitive(&w)?;
            Ok(Output::new(
                yes_no(result),
                json!({ "word": word }),
                json!({ "is_primitive": result }),
            )
            .predicate(result))
        }
        Command::Root { word } => {
            let w = parse_word(word)?;
            let (root, exponent) = words::primitive_root(&w)?;
            Ok(Output::new(
                format!("{root}^{exponent}"),
                json!({ "word": word }),
                json!({ "root": root.to_string(), "exponent": exponent }),
            ))
        }
        Command::Commute { x, y } => {
            let (wx, wy) = (parse_word(x)?, parse_word(y)?);
            let result = words::commute(&wx, &wy);
            Ok(Output::new(
                yes_no(result),
                json!({ "x": x, "y": y }),
                json!({ "commute": result }),
            )
            .predicate(result))
        }
        Command::Parse { word, set } => {
            let w = parse_word(word)?;
            let z = parse_set(set)?;
            let parsed = words::parse_over(&w, &z);
            let text = match &parsed {
                Some(f) => f.to_string(),
                None => "no factorization".to_string(),
            };
            let result = match &parsed {
                Some(f) => json!({ "factorization": fact_value(f) }),
                None => json!({ "factorization": Value::Null }),
            };
            Ok(
                Output::new(text, json!({ "word": word, "set": set_value(&z) }), result)
                    .predicate(parsed.is_some()),
            )
        }
        Command::IsCode { set } => {
            let x = parse_set(set)?;
            let witness = codes::code_witness(&x);
            let is_code = witness.is_none();
            let text = match &witness {
                None => "yes".to_string(),
                Some(w) => format!(
                    "no; witness {} = {} = {}",
                    w.word, w.factorization_a, w.factorization_b
                ),
            };
            let mut output = Output::new(
                text,
                json!({ "set": set_value(&x) }),
                json!({ "is_code": is_code }),
            )
            .predicate(is_code);
            if let Some(w) = &witness {
                output.witnesses = Some(json!([{
                    "word": w.word.to_string(),
                    "factorization_a": fact_value(&w.factorization_a),
                    "factorization_b": fact_value(&w.factorization_b),
                }]));
            }
            Ok(output)
        }
        Command::FixClass { set } => {
            let x = parse_set(set)?;
            let c = codes::classify_fix(&x);
            Ok(Output::new(
                format!(
                    "prefix: {}, suffix: {}, bifix: {}",
                    yes_no(c.is_prefix),
                    yes_no(c.is_suffix),
                    yes_no(c.is_bifix)
                ),
                json!({ "set": set_value(&x) }),
                json!({
                    "is_prefix": c.is_prefix,
                    "is_suffix": c.is_suffix,
                    "is_bifix": c.is_bifix,
                }),
            )
            .predicate(c.is_bifix))
        }
        Command::DepGraph { set } => {
            let x = parse_set(set)?;
            let g = codes::dependency_graph(&x);
            let edge_text = if g.edges().is_empty() {
                "none".to_string()
            } else {
                g.edges()
                    .iter()
                    .map(|(u, v)| format!("{{{u}, {v}}}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            Ok(Output::new(
                format!("edges: {edge_text}\ncomponents: {}", g.component_count),
                json!({ "set": set_value(&x) }),
                json!({
                    "edges": g.edges().iter()
                        .map(|(u, v)| json!([u.to_string(), v.to_string()]))
                        .collect::<Vec<_>>(),
                    "component_count": g.component_count,
                }),
            ))
        }
        Command::FreeHull { set } => {
            let x = parse_set(set)?;
            let hull = codes::free_hull(&x)?;
            let mut text = hull.basis.to_string();
            for step in &hull.trace {
                text.push_str(&format!(
                    "\nreduce {} = {}·{}",
                    step.removed, step.prefix, step.quotient
                ));
            }
            Ok(Output::new(
                text,
                json!({ "set": set_value(&x) }),
                json!({
                    "basis": set_value(&hull.basis),
                    "trace": hull.trace.iter().map(|s| json!({
                        "prefix": s.prefix.to_string(),
                        "removed": s.removed.to_string(),
                        "quotient": s.quotient.to_string(),
                    })).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Rank { set } => {
            let x = parse_set(set)?;
            let r = codes::combinatorial_rank(&x)?;
            Ok(Output::new(
                format!("{}; witness {}", r.rank, r.witness),
                json!({ "set": set_value(&x) }),
                json!({ "rank": r.rank, "witness": set_value(&r.witness) }),
            ))
        }
        Command::FreeRank { set } => {
            let x = parse_set(set)?;
            let r = codes::free_rank(&x)?;
            Ok(Output::new(
                r.to_string(),
                json!({ "set": set_value(&x) }),
                json!({ "free_rank": r }),
            ))
        }
        Command::PairRoot { x, y } => {
            let (wx, wy) = (parse_word(x)?, parse_word(y)?);
            let root = maximality::pair_root(&wx, &wy)?;
            let (text, result) = match &root {
                PairRoot::Rank1 {
                    root,
                    fact_x,
                    fact_y,
                } => (
                    format!("{root} (rank 1)"),
                    json!({
                        "kind": "rank1",
                        "root": root.to_string(),
                        "factorization_x": fact_value(fact_x),
                        "factorization_y": fact_value(fact_y),
                    }),
                ),
                PairRoot::Rank2 {
                    pair,
                    fact_x,
                    fact_y,
                } => (
                    pair.to_string(),
                    json!({
                        "kind": "rank2",
                        "root": pair_value(pair),
                        "factorization_x": fact_value(fact_x),
                        "factorization_y": fact_value(fact_y),
                    }),
                ),
            };
            Ok(Output::new(text, json!({ "x": x, "y": y }), result))
        }
        Command::IsPrimitivePair { x, y } => {
            let (wx, wy) = (parse_word(x)?, parse_word(y)?);
            let result = maximality::is_primitive_pair(&wx, &wy)?;
            Ok(Output::new(
                yes_no(result),
                json!({ "x": x, "y": y }),
                json!({ "is_primitive_pair": result }),
            )
            .predicate(result))
        }
        Command::IsPrimitiveSet { set } => {
            let x = parse_set(set)?;
            let cert = maximality::is_primitive_set(&x)?;
            let text = match &cert.dominating_set {
                None => "yes".to_string(),
                Some(z) => format!("no; dominated by {z}"),
            };
            Ok(Output::new(
                text,
                json!({ "set": set_value(&x) }),
                json!({
                    "is_maximal": cert.is_maximal,
                    "dominating_set": cert.dominating_set.as_ref().map(set_value),
                    "note": cert.search_bound_note,
                }),
            )
            .predicate(cert.is_maximal))
        }
        Command::SetRoots { set } => {
            let x = parse_set(set)?;
            let roots = maximality::primitive_roots_of_set(&x)?;
            let text = if roots.is_empty() {
                "none".to_string()
            } else {
                roots
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Output::new(
                text,
                json!({ "set": set_value(&x) }),
                json!({ "roots": roots.iter().map(set_value).collect::<Vec<_>>() }),
            ))
        }
        Command::Intersect { set_x, set_u } => {
            let x = parse_set(std::slice::from_ref(set_x))?;
            let u = parse_set(std::slice::from_ref(set_u))?;
            let r = intersection::intersect(&x, &u);
            let text = if r.is_trivial {
                "trivial".to_string()
            } else if let Some(basis) = &r.finite_basis {
                format!("basis {basis}")
            } else if let Some(expr) = &r.expression {
                format!("infinitely generated: {expr}")
            } else {
                format!(
                    "infinitely generated; basis automaton:\n{}",
                    r.basis_automaton
                        .as_ref()
                        .expect("present when nontrivial")
                        .export_lines()
                )
            };
            Ok(Output::new(
                text,
                json!({ "x": set_value(&x), "u": set_value(&u) }),
                json!({
                    "is_trivial": r.is_trivial,
                    "finitely_generated": r.finitely_generated,
                    "basis": r.finite_basis.as_ref().map(set_value),
                    "expression": r.expression,
                    "automaton": r.basis_automaton.as_ref().map(|a| a.export_lines()),
                }),
            ))
        }
        Command::IntersectPairs { x, y, u, v } => {
            let px = WordPair::new(parse_word(x)?, parse_word(y)?)?;
            let pu = WordPair::new(parse_word(u)?, parse_word(v)?)?;
            let z = intersection::intersect_2maximal(&px, &pu)?;
            let input = json!({ "x": x, "y": y, "u": u, "v": v });
            match z {
                None => Ok(Output::new("trivial", input, json!({ "trivial": true }))),
                Some(z) => {
                    let report = intersection::bound_report(&px, &pu, &z)?;
                    let text = format!(
                        "z = {z} (|z| = {} < {}; additive bound {} {})",
                        report.z_len,
                        report.size_product_bound,
                        report.conjecture1_bound,
                        if report.conjecture1_holds {
                            "holds"
                        } else {
                            "EXCEEDED"
                        },
                    );
                    let mut output = Output::new(
                        text,
                        input,
                        json!({
                            "z": z.to_string(),
                            "z_len": report.z_len,
                            "product_bound": report.size_product_bound,
                            "additive_bound": report.conjecture1_bound,
                            "additive_bound_holds": report.conjecture1_holds,
                        }),
                    );
                    if !report.conjecture1_holds {
                        output.exit_override = Some(4);
                    }
                    Ok(output)
                }
            }
        }
        Command::Biroot { word, max_size } => {
            let w = parse_word(word)?;
            let bound = max_size.unwrap_or_else(|| w.len().max(2));
            let roots = biroot::biroots(&w, bound)?;
            let text = if roots.is_empty() {
                "none".to_string()
            } else {
                roots
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Output::new(
                text,
                json!({ "word": word, "max_size": bound }),
                json!({
                    "biroots": roots.iter().map(|b| json!({
                        "pair": pair_value(&b.pair),
                        "size": b.size(),
                        "factorization": fact_value(&b.factorization),
                    })).collect::<Vec<_>>(),
                }),
            )
            .predicate(!roots.is_empty()))
        }
        Command::SmallBiroot { word } => {
            let w = parse_word(word)?;
            let small = biroot::unique_small_biroot(&w)?;
            let text = match &small {
                Some(b) => b.to_string(),
                None => "none".to_string(),
            };
            Ok(Output::new(
                text,
                json!({ "word": word }),
                json!({
                    "biroot": small.as_ref().map(|b| json!({
                        "pair": pair_value(&b.pair),
                        "size": b.size(),
                        "factorization": fact_value(&b.factorization),
                    })),
                }),
            )
            .predicate(small.is_some()))
        }
        Command::ThetaApply { word, theta, kind } => {
            let map = parse_theta(theta, kind)?;
            let w = parse_word(word)?;
            let image = map.apply(&w)?;
            Ok(Output::new(
                image.to_string(),
                json!({ "word": word, "theta": map.spec_string(), "kind": kind }),
                json!({ "image": image.to_string() }),
            ))
        }
        Command::ThetaRoot { word, theta, kind } => {
            let map = parse_theta(theta, kind)?;
            let w = parse_word(word)?;
            let root = theta::theta_root(&map, &w)?;
            let tags: Vec<&str> = root
                .tags
                .iter()
                .map(|t| match t {
                    theta::BlockTag::Direct => "direct",
                    theta::BlockTag::Mirror => "mirror",
                })
                .collect();
            Ok(Output::new(
                format!("{} (tags: {})", root.root, tags.join(",")),
                json!({ "word": word, "theta": map.spec_string(), "kind": kind }),
                json!({ "root": root.root.to_string(), "tags": tags }),
            ))
        }
        Command::ThetaPrimitive { word, theta, kind } => {
            let map = parse_theta(theta, kind)?;
            let w = parse_word(word)?;
            let result = theta::is_theta_primitive(&map, &w)?;
            Ok(Output::new(
                yes_no(result),
                json!({ "word": word, "theta": map.spec_string(), "kind": kind }),
                json!({ "is_theta_primitive": result }),
            )
            .predicate(result))
        }
        Command::Sweep {
            experiment,
            alphabet,
            max_len,
            seed,
            count,
            out,
            budget_secs,
            sequential,
        } => {
            let spec = SweepSpec {
                experiment: Experiment::from_str(experiment)?,
                alphabet_size: *alphabet,
                max_word_length: *max_len,
                sample_seed: *seed,
                sample_count: *count,
            };
            let mode = if *sequential {
                RunMode::Sequential
            } else {
                RunMode::Parallel
            };
            let budget = budget_secs.map(Duration::from_secs);
            let report = lab::run_sweep_with(&spec, mode, budget)?;
            let rendered = report.render();
            let text = match out {
                Some(path) => {
                    fs::write(path, &rendered).map_err(|e| {
                        Error::MalformedWitness(format!("cannot write {}: {e}", path.display()))
                    })?;
                    format!("report written to {}", path.display())
                }
                None => rendered.trim_end().to_string(),
            };
            let mut output = Output::new(
                text,
                serde_json::to_value(&spec).expect("specs serialize"),
                json!({
                    "instances_enumerated": report.instances_enumerated,
                    "instances_admitted": report.instances_admitted,
                    "violations": report.violations.len(),
                    "candidate_flags": report.flags.len(),
                    "partial": report.partial,
                }),
            );
            if !report.violations.is_empty() || !report.flags.is_empty() {
                let all: Vec<Value> = report
                    .violations
                    .iter()
                    .chain(&report.flags)
                    .map(|w| serde_json::to_value(w).expect("records serialize"))
                    .collect();
                output.witnesses = Some(Value::Array(all));
            }
            output.exit_override = Some(report.exit_code());
            Ok(output)
        }
        Command::Replay { record } => {
            let text = if let Some(path) = record.strip_prefix('@') {
                fs::read_to_string(path)
                    .map_err(|e| Error::MalformedWitness(format!("cannot read {path}: {e}")))?
            } else {
                record.clone()
            };
            let stored = WitnessRecord::from_json(text.trim())?;
            let replayed = lab::replay(&stored)?;
            let reproduced = stored.verdict.is_empty() || stored.verdict == replayed.verdict;
            let mut output = Output::new(
                format!(
                    "{}\n{}",
                    replayed.to_json(),
                    if reproduced {
                        "verdict reproduced"
                    } else {
                        "VERDICT MISMATCH"
                    }
                ),
                serde_json::to_value(&stored).expect("records serialize"),
                json!({
                    "replayed": serde_json::to_value(&replayed).expect("records serialize"),
                    "reproduced": reproduced,
                }),
            );
            if !reproduced {
                output.exit_override = Some(3);
            }
            Ok(output)
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::IsPrimitive { .. } => "is-primitive",
        Command::Root { .. } => "root",
        Command::Commute { .. } => "commute",
        Command::Parse { .. } => "parse",
        Command::IsCode { .. } => "is-code",
        Command::FixClass { .. } => "fix-class",
        Command::DepGraph { .. } => "dep-graph",
        Command::FreeHull { .. } => "free-hull",
        Command::Rank { .. } => "rank",
        Command::FreeRank { .. } => "free-rank",
        Command::PairRoot { .. } => "pair-root",
        Command::IsPrimitivePair { .. } => "is-primitive-pair",
        Command::IsPrimitiveSet { .. } => "is-primitive-set",
        Command::SetRoots { .. } => "set-roots",
        Command::Intersect { .. } => "intersect",
        Command::IntersectPairs { .. } => "intersect-pairs",
        Command::Biroot { .. } => "biroot",
        Command::SmallBiroot { .. } => "small-biroot",
        Command::ThetaApply { .. } => "theta-apply",
        Command::ThetaRoot { .. } => "theta-root",
        Command::ThetaPrimitive { .. } => "theta-primitive",
        Command::Sweep { .. } => "sweep",
        Command::Replay { .. } => "replay",
    }
}

/// Print without panicking when the reader has closed the pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(output) => {
            if cli.json {
                let mut object = json!({
                    "command": command_name(&cli.command),
                    "input": output.input,
                    "result": output.result,
                });
                if let Some(witnesses) = &output.witnesses {
                    object["witnesses"] = witnesses.clone();
                }
                emit(&object.to_string());
            } else if !output.text.is_empty() {
                emit(&output.text);
            }
            let code = if let Some(code) = output.exit_override {
                code
            } else if cli.assert && output.predicate == Some(false) {
                1
            } else {
                0
            };
            std::process::exit(code);
        }
        Err(error) => {
            eprintln!("error: {error}");
            let code = if error.is_invariant_violation() { 3 } else { 2 };
            std::process::exit(code);
        }
    }
}
