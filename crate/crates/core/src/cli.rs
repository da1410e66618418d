// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end.
//!
//! Every table-producing command is first turned into a [`Query`]; the
//! query is what a JSON document echoes back as `params`, so a document can
//! be re-evaluated from its own contents with [`recompute`].
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridposet::GridPoset;
use crate::oracle::ScaleLimit;
use crate::pnfposet::{self, DegeneratePolicy, PnFPoset};
use crate::sequences::FSequence;
use crate::verify::{self, ChainFormula, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cobweb",
    version,
    about = "Exact Whitney, Bell-like and maximal-chain numbers of cobweb layer posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print F_1..F_N of a sequence.
    Seq(SeqArgs),
    /// Print rows 0..R of the F-binomial triangle.
    Fbinom(FbinomArgs),
    /// Size, Whitney numbers, Bell-like number and chain count of P_{k,n}.
    Grid(GridArgs),
    /// Whitney numbers or Bell-like number of P(n, F).
    Pnf(PnfArgs),
    /// Run every oracle-equivalence and identity suite.
    Verify(VerifyArgs),
    /// Write a sequence in OEIS b-file format.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SeqSelect {
    /// fib, naturals, ones, gauss or lucas
    #[arg(long = "seq", value_name = "NAME")]
    name: String,
    /// Base of the gaussian sequence; required for `gauss`.
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[command(flatten)]
    seq: SeqSelect,
    #[arg(long)]
    count: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct FbinomArgs {
    #[command(flatten)]
    seq: SeqSelect,
    #[arg(long)]
    rows: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridShow {
    Size,
    Whitney,
    Bell,
    Chains,
    All,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "all")]
    show: GridShow,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PnfShow {
    Whitney,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Degenerate {
    #[default]
    Include,
    Exclude,
}

impl From<Degenerate> for DegeneratePolicy {
    fn from(d: Degenerate) -> Self {
        match d {
            Degenerate::Include => DegeneratePolicy::Include,
            Degenerate::Exclude => DegeneratePolicy::Exclude,
        }
    }
}

#[derive(Debug, Args)]
struct PnfArgs {
    #[command(flatten)]
    seq: SeqSelect,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "whitney")]
    show: PnfShow,
    #[arg(long, value_enum, default_value_t)]
    degenerate: Degenerate,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ChainFormulaArg {
    #[default]
    Ballot,
    Printed,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long = "max-n")]
    max_n: u64,
    /// Comma-separated sequences; gaussian ones as `gauss:Q`.
    #[arg(long = "seq", value_delimiter = ',')]
    seqs: Option<Vec<String>>,
    /// Closed form checked against the chain oracle.
    #[arg(long = "chain-formula", value_enum, default_value_t, hide = true)]
    chain_formula: ChainFormulaArg,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    /// B_1(F), ..., B_N(F)
    Bell,
    /// Central F-binomials (2n choose n)_F
    FbinomDiagonal,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long, value_enum)]
    what: ExportWhat,
    #[command(flatten)]
    seq: SeqSelect,
    #[arg(long)]
    count: u64,
    #[arg(long, value_enum, default_value_t)]
    degenerate: Degenerate,
    /// Output path; standard output when omitted.
    #[arg(long)]
    bfile: Option<PathBuf>,
}

/// A reproducible request, echoed as `object` + `params`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "object", content = "params", rename_all = "lowercase")]
pub enum Query {
    Seq {
        seq: String,
        q: Option<u32>,
        count: u64,
    },
    Fbinom {
        seq: String,
        q: Option<u32>,
        rows: u64,
    },
    Grid {
        k: u64,
        n: u64,
        show: GridShow,
    },
    Pnf {
        seq: String,
        q: Option<u32>,
        n: u64,
        show: PnfShow,
        degenerate: Degenerate,
    },
    Verify {
        max_n: u64,
        seq: Vec<String>,
        chain_formula: ChainFormulaArg,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Values {
    Flat(Vec<String>),
    Nested(Vec<Vec<String>>),
}

/// `{"object": ..., "params": {...}, "values": [...]}`. Integers travel as
/// decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    #[serde(flatten)]
    pub query: Query,
    pub values: Values,
    /// Row labels for table and CSV output.
    #[serde(skip)]
    pub labels: Vec<String>,
}

impl OutputDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("bad document: {e}")))
    }

    /// Every value in document order.
    pub fn flat_values(&self) -> Vec<&str> {
        match &self.values {
            Values::Flat(v) => v.iter().map(String::as_str).collect(),
            Values::Nested(rows) => rows.iter().flatten().map(String::as_str).collect(),
        }
    }

    fn header(&self) -> String {
        let params = serde_json::to_value(&self.query).expect("query serializes");
        let mut line = format!("# {}", params["object"].as_str().unwrap_or_default());
        if let Some(map) = params["params"].as_object() {
            for (key, value) in map {
                match value {
                    serde_json::Value::Null => {}
                    serde_json::Value::String(s) => write!(line, " {key}={s}").unwrap(),
                    other => write!(line, " {key}={other}").unwrap(),
                }
            }
        }
        line
    }

    fn label(&self, i: usize) -> String {
        self.labels.get(i).cloned().unwrap_or_else(|| i.to_string())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = self.to_json();
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match &self.values {
            Values::Flat(vals) => {
                out.push_str("label,value\n");
                for (i, v) in vals.iter().enumerate() {
                    writeln!(out, "{},{v}", self.label(i)).unwrap();
                }
            }
            Values::Nested(rows) => {
                out.push_str("row,column,value\n");
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        writeln!(out, "{},{j},{v}", self.label(i)).unwrap();
                    }
                }
            }
        }
        out
    }

    fn render_table(&self) -> String {
        let rows: Vec<Vec<&str>> = match &self.values {
            Values::Flat(vals) => vals.iter().map(|v| vec![v.as_str()]).collect(),
            Values::Nested(rows) => rows
                .iter()
                .map(|r| r.iter().map(String::as_str).collect())
                .collect(),
        };
        let labels: Vec<String> = (0..rows.len()).map(|i| self.label(i)).collect();
        let label_w = labels.iter().map(String::len).max().unwrap_or(0);
        let cell_w = rows.iter().flatten().map(|c| c.len()).max().unwrap_or(0);

        let mut out = self.header();
        out.push('\n');
        for (label, row) in labels.iter().zip(&rows) {
            let mut line = format!("{label:>label_w$}");
            for cell in row {
                write!(line, "  {cell:>cell_w$}").unwrap();
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn resolve_seq(name: &str, q: Option<u32>) -> Result<FSequence> {
    FSequence::from_name(name, q)
}

/// Parses a `--seq` list token for `verify`: `fib`, `gauss:3`, ...
fn resolve_seq_token(token: &str) -> Result<FSequence> {
    match token.split_once(':') {
        Some((name, q)) => {
            let q = q
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad q in `{token}`")))?;
            resolve_seq(name, Some(q))
        }
        None => resolve_seq(token, None),
    }
}

fn strings(values: impl IntoIterator<Item = BigUint>) -> Vec<String> {
    values.into_iter().map(|v| v.to_string()).collect()
}

fn verify_config(max_n: u64, seqs: &[String], formula: ChainFormulaArg) -> Result<VerifyConfig> {
    if max_n < 2 {
        return Err(Error::InvalidParameter(format!(
            "--max-n must be at least 2, got {max_n}"
        )));
    }
    let mut cfg = VerifyConfig::new(max_n);
    cfg.limit = ScaleLimit::from_env()?;
    if !seqs.is_empty() {
        cfg.sequences = seqs
            .iter()
            .map(|t| resolve_seq_token(t))
            .collect::<Result<_>>()?;
    }
    cfg.chain_formula = match formula {
        ChainFormulaArg::Ballot => ChainFormula::Ballot,
        ChainFormulaArg::Printed => ChainFormula::Printed,
    };
    Ok(cfg)
}

/// Outcome of evaluating a query: the document plus, for `verify`, the
/// human-readable report and whether everything passed.
pub struct Evaluated {
    pub document: OutputDocument,
    pub report: Option<String>,
    pub passed: bool,
}

/// Evaluates a query from scratch.
pub fn evaluate(query: &Query) -> Result<Evaluated> {
    let done = |values, labels| Evaluated {
        document: OutputDocument {
            query: query.clone(),
            values,
            labels,
        },
        report: None,
        passed: true,
    };
    match query {
        Query::Seq { seq, q, count } => {
            let f = resolve_seq(seq, *q)?;
            let vals = (1..=*count)
                .map(|i| f.eval(i))
                .collect::<Result<Vec<_>>>()?;
            Ok(done(
                Values::Flat(strings(vals)),
                (1..=*count).map(|i| i.to_string()).collect(),
            ))
        }
        Query::Fbinom { seq, q, rows } => {
            let f = resolve_seq(seq, *q)?;
            let table = (0..=*rows)
                .map(|n| f.binomial_row(n).map(strings))
                .collect::<Result<Vec<_>>>()?;
            Ok(done(
                Values::Nested(table),
                (0..=*rows).map(|n| n.to_string()).collect(),
            ))
        }
        Query::Grid { k, n, show } => {
            let g = GridPoset::new(*k, *n)?;
            let whitney = || strings(g.whitney().into_inner());
            let ranks = || (0..=g.rank()).map(|r| r.to_string()).collect();
            Ok(match show {
                GridShow::Size => done(
                    Values::Flat(vec![g.size().to_string()]),
                    vec!["size".into()],
                ),
                GridShow::Bell => done(
                    Values::Flat(vec![g.bell().to_string()]),
                    vec!["bell".into()],
                ),
                GridShow::Chains => done(
                    Values::Flat(vec![g.chain_count().to_string()]),
                    vec!["chains".into()],
                ),
                GridShow::Whitney => done(Values::Flat(whitney()), ranks()),
                GridShow::All => done(
                    Values::Nested(vec![
                        vec![g.size().to_string()],
                        whitney(),
                        vec![g.bell().to_string()],
                        vec![g.chain_count().to_string()],
                    ]),
                    ["size", "whitney", "bell", "chains"]
                        .map(String::from)
                        .to_vec(),
                ),
            })
        }
        Query::Pnf {
            seq,
            q,
            n,
            show,
            degenerate,
        } => {
            if *n < 1 {
                return Err(Error::InvalidParameter("--n must be at least 1".into()));
            }
            let p = PnFPoset::new(*n, resolve_seq(seq, *q)?, (*degenerate).into());
            Ok(match show {
                PnfShow::Whitney => {
                    let w = p.whitney_vector()?;
                    let labels = (0..w.len()).map(|r| r.to_string()).collect();
                    done(Values::Flat(strings(w.into_inner())), labels)
                }
                PnfShow::Bell => done(
                    Values::Flat(vec![p.bell()?.to_string()]),
                    vec!["bell".into()],
                ),
            })
        }
        Query::Verify {
            max_n,
            seq,
            chain_formula,
        } => {
            let cfg = verify_config(*max_n, seq, *chain_formula)?;
            let report = verify::run(&cfg);
            let mut rows = Vec::new();
            let mut labels = Vec::new();
            for s in &report.suites {
                labels.push(s.name.to_string());
                rows.push(vec![
                    if s.passed() { "pass" } else { "fail" }.to_string(),
                    s.checks.to_string(),
                    s.skipped.to_string(),
                    s.failures.len().to_string(),
                ]);
            }
            for f in report.failures() {
                labels.push("failure".into());
                rows.push(vec![
                    f.identity.to_string(),
                    f.inputs.clone(),
                    f.expected.clone(),
                    f.actual.clone(),
                ]);
            }
            let mut ev = done(Values::Nested(rows), labels);
            ev.passed = report.passed();
            ev.report = Some(report.to_string());
            Ok(ev)
        }
    }
}

/// Re-evaluates a document from its echoed parameters.
pub fn recompute(doc: &OutputDocument) -> Result<OutputDocument> {
    evaluate(&doc.query).map(|e| e.document)
}

fn export_values(args: &ExportArgs) -> Result<Vec<BigUint>> {
    if args.count < 1 {
        return Err(Error::InvalidParameter("--count must be at least 1".into()));
    }
    let f = resolve_seq(&args.seq.name, args.seq.q)?;
    match args.what {
        ExportWhat::Bell => pnfposet::pnf_bell_sequence(&f, args.count, args.degenerate.into()),
        ExportWhat::FbinomDiagonal => (1..=args.count)
            .map(|n| f.binomial(2 * n, n as i64))
            .collect(),
    }
}

/// OEIS b-file body: `index value` per line, starting at 1.
pub fn bfile(values: &[BigUint]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{} {v}", i + 1).unwrap();
    }
    out
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("write failed: {e}"));
    let (query, format) = match command {
        Command::Seq(a) => (
            Query::Seq {
                seq: a.seq.name,
                q: a.seq.q,
                count: a.count,
            },
            a.format,
        ),
        Command::Fbinom(a) => (
            Query::Fbinom {
                seq: a.seq.name,
                q: a.seq.q,
                rows: a.rows,
            },
            a.format,
        ),
        Command::Grid(a) => (
            Query::Grid {
                k: a.k,
                n: a.n,
                show: a.show,
            },
            a.format,
        ),
        Command::Pnf(a) => (
            Query::Pnf {
                seq: a.seq.name,
                q: a.seq.q,
                n: a.n,
                show: a.show,
                degenerate: a.degenerate,
            },
            a.format,
        ),
        Command::Verify(a) => (
            Query::Verify {
                max_n: a.max_n,
                seq: a.seqs.unwrap_or_default(),
                chain_formula: a.chain_formula,
            },
            a.format,
        ),
        Command::Export(a) => {
            let body = bfile(&export_values(&a)?);
            match &a.bfile {
                Some(path) => std::fs::write(path, body)
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?,
                None => out.write_all(body.as_bytes()).map_err(io)?,
            }
            return Ok(EXIT_OK);
        }
    };

    let ev = evaluate(&query)?;
    match (&ev.report, format) {
        (Some(report), Format::Table) => out.write_all(report.as_bytes()),
        _ => out.write_all(ev.document.render(format).as_bytes()),
    }
    .map_err(io)?;
    Ok(if ev.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
    }
}
