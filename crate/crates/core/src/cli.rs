//! Command implementations behind the tunnel-atlas binary. Every command
//! produces one [`OutputDocument`]; the text and JSON renderings carry the
//! same strings, and all integers are serialized as decimal strings so
//! arbitrary precision survives any consumer.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{Map, Value};

use crate::bridge::{
    bridge_set_entries, fibonacci_trace, max_bridge, max_bridge_overall, min_bridge,
    semisimple_range, torus_min_bridge, BridgeError, SeedPair,
};
use crate::cabling::{detect_encoding, BinaryWord, ParseError, PathEncoding, StepSequence};
use crate::search::{
    max_bridge_search, min_bridge_search, SearchError, SearchReport, DEFAULT_ENUMERATION_CAP,
};
use crate::torus::{
    invariant_table, normalize_torus_params, torus_depth_shortcut, ShortcutConvention, SlopeValue,
    TorusError, TorusTunnelTable,
};

/// Exit code 2 marks invalid input, 3 an internal invariant violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 3,
            message: format!("internal invariant violation: {}", message.into()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(err: ParseError) -> Self {
        CliError::usage(err.to_string())
    }
}

impl From<BridgeError> for CliError {
    fn from(err: BridgeError) -> Self {
        CliError::usage(err.to_string())
    }
}

impl From<TorusError> for CliError {
    fn from(err: TorusError) -> Self {
        CliError::usage(err.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(err: SearchError) -> Self {
        CliError::usage(err.to_string())
    }
}

/// One value in a document: a scalar string, a list of strings, or labeled
/// rows. The same strings feed both renderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocValue {
    Scalar(String),
    List(Vec<String>),
    Rows(Vec<Vec<(String, String)>>),
}

impl DocValue {
    fn scalar(value: impl ToString) -> Self {
        DocValue::Scalar(value.to_string())
    }
}

/// The single self-describing document emitted per invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputDocument {
    pub command: String,
    pub inputs: Vec<(String, DocValue)>,
    pub results: Vec<(String, DocValue)>,
    pub warnings: Vec<String>,
}

impl OutputDocument {
    fn new(command: &str) -> Self {
        OutputDocument {
            command: command.to_string(),
            inputs: Vec::new(),
            results: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push((key.to_string(), DocValue::scalar(value)));
        self
    }

    fn result(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.results
            .push((key.to_string(), DocValue::scalar(value)));
        self
    }

    fn result_list(&mut self, key: &str, values: Vec<String>) -> &mut Self {
        self.results.push((key.to_string(), DocValue::List(values)));
        self
    }

    fn result_rows(&mut self, key: &str, rows: Vec<Vec<(String, String)>>) -> &mut Self {
        self.results.push((key.to_string(), DocValue::Rows(rows)));
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (section, entries) in [("inputs", &self.inputs), ("results", &self.results)] {
            if entries.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{section}:");
            for (key, value) in entries {
                match value {
                    DocValue::Scalar(text) => {
                        let _ = writeln!(out, "  {key} = {text}");
                    }
                    DocValue::List(items) => {
                        let _ = writeln!(out, "  {key} = [{}]", items.join(", "));
                    }
                    DocValue::Rows(rows) => {
                        let _ = writeln!(out, "  {key}:");
                        for (i, row) in rows.iter().enumerate() {
                            let fields: Vec<String> =
                                row.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                            let _ = writeln!(out, "    row {i}: {}", fields.join(", "));
                        }
                    }
                }
            }
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(out, "warnings:");
            for warning in &self.warnings {
                let _ = writeln!(out, "  - {warning}");
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        fn value_to_json(value: &DocValue) -> Value {
            match value {
                DocValue::Scalar(text) => Value::String(text.clone()),
                DocValue::List(items) => {
                    Value::Array(items.iter().cloned().map(Value::String).collect())
                }
                DocValue::Rows(rows) => Value::Array(
                    rows.iter()
                        .map(|row| {
                            let mut object = Map::new();
                            for (k, v) in row {
                                object.insert(k.clone(), Value::String(v.clone()));
                            }
                            Value::Object(object)
                        })
                        .collect(),
                ),
            }
        }
        fn section_to_json(entries: &[(String, DocValue)]) -> Value {
            let mut object = Map::new();
            for (key, value) in entries {
                object.insert(key.clone(), value_to_json(value));
            }
            Value::Object(object)
        }
        let mut root = Map::new();
        root.insert("command".to_string(), Value::String(self.command.clone()));
        root.insert("inputs".to_string(), section_to_json(&self.inputs));
        root.insert("results".to_string(), section_to_json(&self.results));
        root.insert(
            "warnings".to_string(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        Value::Object(root).to_string()
    }
}

/// Resolves a word/steps argument; the empty word must be requested with
/// the explicit flag.
fn parse_input(
    text: Option<&str>,
    empty: bool,
    force: Option<PathEncoding>,
) -> Result<(BinaryWord, String), CliError> {
    if empty {
        return Ok((BinaryWord::empty(), String::new()));
    }
    let text = text.ok_or_else(|| {
        CliError::usage("an input word or step sequence is required (or --empty)")
    })?;
    if text.is_empty() {
        return Err(CliError::usage(
            "empty input requires the explicit --empty flag",
        ));
    }
    let encoding = match force {
        Some(encoding) => encoding,
        None => detect_encoding(text)?,
    };
    let word = match encoding {
        PathEncoding::Binary => BinaryWord::parse(text)?,
        PathEncoding::Steps => StepSequence::parse(text)?.to_binary(),
    };
    Ok((word, text.to_string()))
}

pub fn cmd_depth(
    text: Option<&str>,
    empty: bool,
    force: Option<PathEncoding>,
) -> Result<OutputDocument, CliError> {
    let (word, raw) = parse_input(text, empty, force)?;
    let profile = word.profile();
    let mut doc = OutputDocument::new("depth");
    doc.input("input", &raw);
    doc.result("word", &word)
        .result("steps", word.to_steps())
        .result("depth", profile.depth)
        .result("cabling_count", profile.cabling_count)
        .result("semisimple_count", profile.semisimple_count)
        .result("regular", profile.regular);
    Ok(doc)
}

pub fn cmd_convert(
    text: Option<&str>,
    empty: bool,
    force: Option<PathEncoding>,
) -> Result<OutputDocument, CliError> {
    let (word, raw) = parse_input(text, empty, force)?;
    let mut doc = OutputDocument::new("convert");
    doc.input("input", &raw);
    doc.result("word", &word).result("steps", word.to_steps());
    Ok(doc)
}

fn parse_seed_part(label: &str, text: &str) -> Result<BigUint, CliError> {
    text.parse::<BigUint>().map_err(|_| {
        CliError::usage(format!(
            "seed {label} must be a nonnegative decimal integer (got {text:?})"
        ))
    })
}

pub fn cmd_fib(text: &str, a: &str, b: &str, with_trace: bool) -> Result<OutputDocument, CliError> {
    let (word, raw) = parse_input(Some(text), false, None)?;
    let seed = SeedPair::new(parse_seed_part("a", a)?, parse_seed_part("b", b)?)?;
    let trace = fibonacci_trace(&word, &seed)?;
    let mut doc = OutputDocument::new("fib");
    doc.input("input", &raw)
        .input("word", &word)
        .input("a", seed.a())
        .input("b", seed.b());
    doc.result("value", trace.value());
    if with_trace {
        doc.result_list(
            "trace",
            trace.values().iter().map(|v| v.to_string()).collect(),
        );
    }
    Ok(doc)
}

pub fn cmd_bridge_set(text: &str) -> Result<OutputDocument, CliError> {
    let (word, raw) = parse_input(Some(text), false, None)?;
    let entries = bridge_set_entries(&word).map_err(|err| match err {
        BridgeError::NotRegular => CliError::usage(format!(
            "{err}; use `bounds --semisimple {}` for that range",
            word.cabling_count()
        )),
        other => other.into(),
    })?;
    let mut doc = OutputDocument::new("bridge-set");
    doc.input("input", &raw).input("word", &word);
    doc.result("semisimple_count", word.semisimple_count());
    doc.result_list(
        "bridge_set",
        entries.iter().map(|e| e.value.to_string()).collect(),
    );
    doc.result_rows(
        "candidates",
        entries
            .iter()
            .map(|e| {
                vec![
                    ("seed".to_string(), format!("({}, {})", e.seed_a, e.seed_b)),
                    ("value".to_string(), e.value.to_string()),
                ]
            })
            .collect(),
    );
    Ok(doc)
}

/// Which extremal bound the bounds command evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsRequest {
    MinDepth(u64),
    TorusMinDepth(u64),
    Max {
        cabling_count: u64,
        semisimple_count: Option<u64>,
    },
    Semisimple(u64),
}

pub fn cmd_bounds(request: BoundsRequest) -> Result<OutputDocument, CliError> {
    let mut doc = OutputDocument::new("bounds");
    match request {
        BoundsRequest::MinDepth(depth) => {
            doc.input("depth", depth);
            doc.result("min_bridge", min_bridge(depth)?);
        }
        BoundsRequest::TorusMinDepth(depth) => {
            doc.input("depth", depth);
            doc.result("torus_min_bridge", torus_min_bridge(depth)?);
        }
        BoundsRequest::Max {
            cabling_count,
            semisimple_count: Some(m),
        } => {
            doc.input("cabling_count", cabling_count);
            doc.input("semisimple_count", m);
            doc.result("max_bridge", max_bridge(cabling_count, m)?);
        }
        BoundsRequest::Max {
            cabling_count,
            semisimple_count: None,
        } => {
            doc.input("cabling_count", cabling_count);
            doc.result("max_bridge_overall", max_bridge_overall(cabling_count)?);
        }
        BoundsRequest::Semisimple(cabling_count) => {
            doc.input("cabling_count", cabling_count);
            let (low, high) = semisimple_range(cabling_count)?;
            doc.result_list("semisimple_range", vec![low.to_string(), high.to_string()]);
        }
    }
    Ok(doc)
}

/// Checks the internal consistency of a computed table before reporting it.
fn verify_table(table: &TorusTunnelTable) -> Result<(), CliError> {
    for (t, row) in table.rows.iter().enumerate() {
        if !row.matrix.det_is_one() {
            return Err(CliError::internal(format!(
                "product matrix at cabling {t} of ({},{}) has determinant != 1",
                table.p, table.q
            )));
        }
    }
    let last = table.rows.last().expect("tables have at least one row");
    if last.knot != (BigUint::from(table.p), BigUint::from(table.q)) {
        return Err(CliError::internal(format!(
            "final cabling of ({},{}) does not reproduce the knot",
            table.p, table.q
        )));
    }
    let n1 = table.cf.terms()[0];
    if table.rows[0].knot != (BigUint::from(2 * n1 + 1), BigUint::from(2u32)) {
        return Err(CliError::internal(format!(
            "first cabling of ({},{}) is not the (2*{n1}+1, 2) torus knot",
            table.p, table.q
        )));
    }
    Ok(())
}

pub fn cmd_torus(
    p: i64,
    q: i64,
    with_table: bool,
    shortcut: Option<ShortcutConvention>,
) -> Result<OutputDocument, CliError> {
    let params = normalize_torus_params(p, q)?;
    let table = invariant_table(params.p, params.q)?;
    verify_table(&table)?;

    let mut doc = OutputDocument::new("torus");
    doc.input("p", p).input("q", q);
    doc.result("p", params.p)
        .result("q", params.q)
        .result("mirrored", params.mirrored)
        .result("cf", &table.cf)
        .result("word", &table.word)
        .result("steps", table.word.to_steps())
        .result("depth", table.depth)
        .result("cabling_count", table.cabling_count())
        .result("semisimple_count", table.word.semisimple_count());

    if with_table {
        let render_slope = |slope: &SlopeValue| slope.render(params.mirrored);
        doc.result_list(
            "slopes",
            table.rows.iter().map(|r| render_slope(&r.slope)).collect(),
        );
        doc.result_list(
            "knots",
            table
                .rows
                .iter()
                .map(|r| format!("({},{})", r.knot.0, r.knot.1))
                .collect(),
        );
        doc.result_rows(
            "rows",
            table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        ("matrix".to_string(), r.matrix.to_string()),
                        ("slope".to_string(), render_slope(&r.slope)),
                        ("knot".to_string(), format!("({},{})", r.knot.0, r.knot.1)),
                    ]
                })
                .collect(),
        );
    }

    if let Some(convention) = shortcut {
        let shortcut_depth = torus_depth_shortcut(&table.cf, convention)?;
        doc.result("shortcut_convention", convention);
        doc.result("shortcut_depth", shortcut_depth);
        if shortcut_depth != table.depth {
            doc.warnings.push(format!(
                "{convention} shortcut depth ({shortcut_depth}) differs from authoritative depth ({})",
                table.depth
            ));
        }
    }
    Ok(doc)
}

/// Which exhaustive search the search command runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchRequest {
    MinDepth {
        depth: u64,
        max_length: usize,
    },
    Max {
        cabling_count: u64,
        semisimple_count: u64,
    },
}

pub fn cmd_search(
    request: SearchRequest,
    seed: Option<SeedPair>,
    cap: usize,
) -> Result<OutputDocument, CliError> {
    let mut doc = OutputDocument::new("search");
    let report: SearchReport = match request {
        SearchRequest::MinDepth { depth, max_length } => {
            doc.input("mode", "min-depth");
            doc.input("depth", depth);
            doc.input("max_length", max_length);
            min_bridge_search(max_length, depth, seed, cap)?
        }
        SearchRequest::Max {
            cabling_count,
            semisimple_count,
        } => {
            doc.input("mode", "max");
            doc.input("cabling_count", cabling_count);
            doc.input("semisimple_count", semisimple_count);
            max_bridge_search(cabling_count, semisimple_count, seed, cap)?
        }
    };
    doc.input("enum_cap", cap);
    doc.result("search_space", report.params)
        .result("seed", &report.seed)
        .result("value", &report.value);
    doc.result_list(
        "witnesses",
        report.witnesses.iter().map(|w| w.to_string()).collect(),
    );
    doc.result("witness_count", report.witnesses.len())
        .result("words_examined", report.words_examined);
    Ok(doc)
}

/// Enumeration cap: the environment variable wins, then an optional JSON
/// config file named by TUNNEL_ATLAS_CONFIG with an "enum_cap" field, then
/// the built-in default.
pub fn resolve_enum_cap() -> Result<usize, CliError> {
    if let Ok(text) = std::env::var("TUNNEL_ATLAS_ENUM_CAP") {
        return text.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "TUNNEL_ATLAS_ENUM_CAP must be a nonnegative integer (got {text:?})"
            ))
        });
    }
    if let Ok(path) = std::env::var("TUNNEL_ATLAS_CONFIG") {
        let text = std::fs::read_to_string(&path)
            .map_err(|err| CliError::usage(format!("cannot read config file {path}: {err}")))?;
        let value: Value = serde_json::from_str(&text).map_err(|err| {
            CliError::usage(format!("config file {path} is not valid JSON: {err}"))
        })?;
        if let Some(cap) = value.get("enum_cap") {
            return cap.as_u64().map(|v| v as usize).ok_or_else(|| {
                CliError::usage(format!(
                    "config field \"enum_cap\" must be a nonnegative integer in {path}"
                ))
            });
        }
    }
    Ok(DEFAULT_ENUMERATION_CAP)
}
