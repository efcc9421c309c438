//! Command-line front end: documents in, deterministic plain-text reports
//! out.
//!
//! Exit codes: 0 when every verdict holds, 1 when some verdict fails, 2 for
//! unreadable input, 3 for a violated precondition, 4 for a failed internal
//! invariant.

mod document;
mod report;

pub use document::{is_name_char, Document, ParseError, Statement};
pub use report::PushoutReport;

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::exactness::{malcev_pushout_decomposed_with, malcev_pushout_direct_with, ExactnessError};
use crate::finset::{canonical_comparison, FinSetError, Span};
use crate::mutant::Mutant;
use crate::pointedset::{
    pointed_diexact_suite, with_basepoints, zero_object_suite, PointedError, PointedMap, PointedSet, PointedSpan,
};
use crate::relcalc::{span_to_relation, tabulate, Relation};
use crate::verify::{certify_with, theorem_suites, SuiteConfig, Verdict};

#[derive(Parser, Debug)]
#[command(
    name = "diexact",
    version,
    about = "Pushouts of difunctional spans of finite sets, with certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct and certify the pushout of the last span, relation or
    /// equivalence declared in a document.
    Pushout(PushoutArgs),
    /// Run the property suites on exhaustive and seeded random instances.
    Suite(SuiteArgs),
    /// Parse a document and print it in canonical form.
    Format {
        /// Input file; standard input when absent.
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Decomposed,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Decomposed => "decomposed",
            Method::Both => "both",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PushoutArgs {
    /// Input file; standard input when absent.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Replace a span that is not jointly monic by the tabulation of its
    /// image relation.
    #[arg(long)]
    pub image_first: bool,
    #[arg(long, default_value = "none")]
    pub mutant: Mutant,
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(0..=8))]
    pub max_size: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also enumerate every instance up to the size bound (capped at 4 for
    /// relations and 3 for pointed spans).
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value = "none")]
    pub mutant: Mutant,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<ExactnessError> for CliError {
    fn from(e: ExactnessError) -> Self {
        match e {
            ExactnessError::Precondition(_) => CliError::Precondition(e.to_string()),
            ExactnessError::Internal { .. } => CliError::Internal(e.to_string()),
        }
    }
}

impl From<PointedError> for CliError {
    fn from(e: PointedError) -> Self {
        match e {
            PointedError::Exactness(inner) => inner.into(),
            PointedError::FinSet(inner) => CliError::Internal(inner.to_string()),
            other => CliError::Precondition(format!("precondition violated: {other}")),
        }
    }
}

fn internal(e: FinSetError) -> CliError {
    CliError::Internal(e.to_string())
}

/// The text a command printed and the exit code it chose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn from_result(result: Result<(String, bool), CliError>) -> Self {
        match result {
            Ok((stdout, ok)) => Outcome {
                stdout,
                stderr: String::new(),
                code: if ok { 0 } else { 1 },
            },
            Err(e) => Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: e.exit_code(),
            },
        }
    }
}

pub fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

/// Runs a parsed command line; documents come from `input` when given,
/// otherwise from the file named on the command line or standard input.
pub fn execute(cli: &Cli, input: Option<&str>) -> Outcome {
    let text = |path: &Option<PathBuf>| match input {
        Some(t) => Ok(t.to_string()),
        None => read_input(path.as_ref()),
    };
    Outcome::from_result(match &cli.command {
        Command::Pushout(args) => text(&args.input).and_then(|t| cmd_pushout(&t, args)),
        Command::Suite(args) => Ok(cmd_suite(args)),
        Command::Format { input } => text(input).and_then(|t| Ok((Document::parse(&t)?.render(), true))),
    })
}

/// The span a pushout is taken of, and its pointed structure if every set
/// involved has a declared point.
pub struct PushoutInput {
    pub description: String,
    pub span: Span,
    pub pointed: Option<PointedSpan>,
}

fn pointed_set(doc: &Document, name: &str) -> Result<Option<PointedSet>, CliError> {
    match (doc.point(name), doc.set(name)) {
        (Some(p), Some(set)) => Ok(Some(PointedSet::new(set.clone(), p)?)),
        _ => Ok(None),
    }
}

fn pointed_relation(doc: &Document, r: &Relation, source: &str, target: &str) -> Result<Option<PointedSpan>, CliError> {
    match (pointed_set(doc, source)?, pointed_set(doc, target)?) {
        (Some(a), Some(b)) => Ok(Some(PointedSpan::tabulate(r, &a, &b)?)),
        _ => Ok(None),
    }
}

pub fn resolve(doc: &Document) -> Result<PushoutInput, CliError> {
    let target = doc
        .statements()
        .iter()
        .rev()
        .find(|s| {
            matches!(
                s,
                Statement::Span { .. } | Statement::Rel { .. } | Statement::Equiv { .. }
            )
        })
        .ok_or_else(|| CliError::Input("the document declares no span, relation or equivalence".into()))?;
    let description = target.to_string();
    match target {
        Statement::Span { name, left, right } => {
            let span = doc.span(name).expect("checked when parsed");
            let (apex, a, _) = doc.function(left).expect("checked when parsed");
            let (_, b, _) = doc.function(right).expect("checked when parsed");
            let pointed = match (pointed_set(doc, apex)?, pointed_set(doc, a)?, pointed_set(doc, b)?) {
                (Some(c), Some(a), Some(b)) => Some(PointedSpan::new(
                    PointedMap::new(c.clone(), a, span.left().clone())?,
                    PointedMap::new(c, b, span.right().clone())?,
                )?),
                (None, Some(_), Some(_)) => {
                    return Err(CliError::Precondition(format!(
                        "precondition violated: both feet of {name} are pointed but its apex {apex} is not"
                    )))
                }
                _ => None,
            };
            Ok(PushoutInput {
                description,
                span,
                pointed,
            })
        }
        Statement::Rel {
            relation,
            source,
            target,
            ..
        } => Ok(PushoutInput {
            description,
            span: tabulate(relation),
            pointed: pointed_relation(doc, relation, source, target)?,
        }),
        Statement::Equiv { relation, set, .. } => Ok(PushoutInput {
            description,
            span: tabulate(relation),
            pointed: pointed_relation(doc, relation, set, set)?,
        }),
        _ => unreachable!("filtered above"),
    }
}

/// Parses, constructs, certifies and renders. The flag is whether every
/// verdict holds.
pub fn cmd_pushout(text: &str, args: &PushoutArgs) -> Result<(String, bool), CliError> {
    let doc = Document::parse(text)?;
    let mut input = resolve(&doc)?;
    let mut notes = Vec::new();
    if args.image_first && !input.span.is_jointly_monic() {
        let r = span_to_relation(&input.span);
        notes.push(format!(
            "span is not jointly monic; using the tabulation of its image {r}"
        ));
        input.pointed = match &input.pointed {
            Some(p) => Some(PointedSpan::tabulate(&r, p.left().codomain(), p.right().codomain())?),
            None => None,
        };
        input.span = tabulate(&r);
    }
    let span = &input.span;
    let mutant = args.mutant;

    let direct = match args.method {
        Method::Direct | Method::Both => Some(malcev_pushout_direct_with(span, mutant)?),
        Method::Decomposed => None,
    };
    let trace = match args.method {
        Method::Decomposed | Method::Both => Some(malcev_pushout_decomposed_with(span, mutant)?),
        Method::Direct => None,
    };
    let cospan = match (&direct, &trace) {
        (Some(d), _) => d.square.cospan(),
        (None, Some(t)) => t.pasted.cospan(),
        (None, None) => unreachable!("some method runs"),
    };
    let certificate = certify_with(span, cospan, mutant).map_err(internal)?;
    let agreement = match (&direct, &trace) {
        (Some(d), Some(t)) => Some(match canonical_comparison(&d.square, t.pasted.cospan()) {
            Ok(m) if m.is_iso() => Verdict::Holds(m),
            Ok(m) => Verdict::Fails(format!("comparison {m} is not a bijection")),
            Err(e) => Verdict::Fails(e.to_string()),
        }),
        _ => None,
    };
    let pointed = input.pointed.as_ref().map(|p| with_basepoints(p, certificate.clone()));
    let report = PushoutReport {
        input: &input.description,
        notes: &notes,
        method: args.method.name(),
        certificate: &certificate,
        pointed: pointed.as_ref(),
        trace: if args.method == Method::Decomposed {
            trace.as_ref()
        } else {
            None
        },
        agreement: agreement.as_ref(),
    };
    Ok((report.render(), report.all_hold()))
}

/// Runs every suite; the flag is whether all of them passed.
pub fn cmd_suite(args: &SuiteArgs) -> (String, bool) {
    let config = SuiteConfig {
        max_size: args.max_size as usize,
        samples: args.samples,
        seed: args.seed,
        exhaustive: args.exhaustive,
        mutant: args.mutant,
    };
    let mut report = theorem_suites(&config);
    report.suites.push(pointed_diexact_suite(
        config.max_size,
        config.samples,
        config.seed,
        config.exhaustive,
        config.mutant,
    ));
    report.suites.push(zero_object_suite(5));
    (report.render(), report.all_passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pushout(text: &str, extra: &[&str]) -> Outcome {
        let mut argv = vec!["diexact", "pushout"];
        argv.extend(extra);
        let cli = Cli::try_parse_from(argv).unwrap();
        execute(&cli, Some(text))
    }

    const MATCHED: &str = "set A = {a1, a2}\nset B = {b1, b2}\nrel R : A -|> B = {(a1,b1), (a2,b2)}\n";

    #[test]
    fn matched_pairs_report() {
        let out = pushout(MATCHED, &[]);
        assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
        assert!(out.stdout.contains("corner: {l:a1, l:a2}\n"));
        for section in [
            "COMMUTES: true",
            "PUSHOUT: true",
            "PULLBACK: true",
            "STABILITY: true",
            "JOINT-EPI: true",
            "AGREEMENT: true",
        ] {
            assert!(out.stdout.contains(section), "missing {section}");
        }
    }

    #[test]
    fn exit_codes() {
        let bad = "set A = {a1, a2}\nset B = {b1, b2}\nrel R : A -|> B = {(a1,b1), (a1,b2), (a2,b1)}\n";
        let out = pushout(bad, &[]);
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("(a1,b1,a2,b2)"), "{}", out.stderr);
        assert_eq!(pushout("set A = {", &[]).code, 2);
        assert_eq!(pushout("set A = {a}\n", &[]).code, 2);
    }

    #[test]
    fn image_first() {
        let doc = "set C = {c1, c2}\nset A = {a}\nset B = {b}\n\
                   fun f : C -> A = {c1 |-> a, c2 |-> a}\nfun g : C -> B = {c1 |-> b, c2 |-> b}\nspan S = <f, g>\n";
        let refused = pushout(doc, &[]);
        assert_eq!(refused.code, 3);
        assert!(refused.stderr.contains("not jointly monic"));
        let taken = pushout(doc, &["--image-first"]);
        assert_eq!(taken.code, 0, "{}", taken.stderr);
        assert!(taken.stdout.contains("note: span is not jointly monic"));
    }

    #[test]
    fn pointed_input() {
        let doc = "set A = {*, a1}\nset B = {*, b1}\npoint A = *\npoint B = *\nrel R : A -|> B = {(*,*)}\n";
        let out = pushout(doc, &["--method", "direct"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("BASEPOINT: true\n  corner basepoint: l:*\n"));
        let unrelated = "set A = {*, a1}\npoint A = *\nrel R : A -|> A = {(a1,a1)}\n";
        assert_eq!(pushout(unrelated, &[]).code, 3);
    }
}
