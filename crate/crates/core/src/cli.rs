//! The `primstab` command-line driver.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a negative
//! verdict, 2 for usage, parse and input errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::h3::{H3Point, DEFAULT_TOL_PARABOLIC};
use crate::rep::{
    make_punctured_torus, make_sanov, make_schottky_pair, ping_pong_certificate, ps_report, resolve_source, PsParams,
    PsReport, DEFAULT_SCHOTTKY_LENGTH,
};
use crate::whitehead::{
    blocking_witness, connectivity_report, enumerate_primitive_classes_with, minimize, whitehead_graph,
    whitehead_separability_test,
};
use crate::word::{cyclic_reduce, Letter, Word};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PRIMSTAB_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "primstab",
    version,
    about = "Whitehead-graph primitivity and primitive-stability diagnostics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide primitivity of a word and show the Whitehead analysis.
    Primitive {
        word: String,
        /// Rank of the free group (default: inferred, at least 2).
        #[arg(long)]
        rank: Option<usize>,
    },
    /// List primitive conjugacy classes up to a length bound.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Count a class and its inverse separately.
        #[arg(long)]
        no_invert_dedup: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the Whitehead graph of a word.
    Whgraph {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a blocking exponent at bounded length.
    Blocking {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        l_max: usize,
    },
    /// Quasi-geodesic metrics of a representation along primitive lines.
    Psreport {
        /// Representation file, or builtin:schottky[:s], builtin:sanov, builtin:ptorus.
        rep: String,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        /// Repetitions of each word (default: enough for 60 edges, at least 4).
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, default_value_t = crate::rep::PsParams::default().window)]
        window: usize,
        /// Base point as re,im,t.
        #[arg(long)]
        base_point: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL_PARABOLIC)]
        tol_parabolic: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        no_invert_dedup: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in representation file (schottky, sanov, ptorus).
    Examples {
        name: String,
        /// Translation length for the Schottky pair.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Everything a run printed, plus its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn usage(message: impl std::fmt::Display) -> Self {
        CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parse arguments (including the program name) and run.
pub fn run_from_args<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> CliOutput {
    let result = match &cli.command {
        Command::Primitive { word, rank } => cmd_primitive(word, *rank),
        Command::Enumerate {
            rank,
            max_length,
            format,
            no_invert_dedup,
            out,
        } => with_pool(|| cmd_enumerate(*rank, *max_length, *format, !no_invert_dedup)).and_then(|o| deliver(o, out)),
        Command::Whgraph {
            word,
            rank,
            format,
            out,
        } => cmd_whgraph(word, *rank, *format).and_then(|o| deliver(o, out)),
        Command::Blocking {
            word,
            rank,
            n_max,
            l_max,
        } => cmd_blocking(word, *rank, *n_max, *l_max),
        Command::Psreport {
            rep,
            max_length,
            reps,
            window,
            base_point,
            tol_parabolic,
            format,
            no_invert_dedup,
            out,
        } => psreport_params(*reps, *window, base_point.as_deref(), *tol_parabolic, !no_invert_dedup)
            .and_then(|params| with_pool(|| cmd_psreport(rep, *max_length, &params, *format)))
            .and_then(|o| deliver(o, out)),
        Command::Examples { name, s, out } => cmd_examples(name, *s).and_then(|o| deliver(o, out)),
    };
    result.unwrap_or_else(CliOutput::usage)
}

fn deliver(output: CliOutput, out: &Option<PathBuf>) -> Result<CliOutput> {
    match out {
        None => Ok(output),
        Some(path) => {
            std::fs::write(path, &output.stdout)
                .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
            Ok(CliOutput {
                stdout: String::new(),
                ..output
            })
        }
    }
}

/// Worker count from [`THREADS_ENV`]; `None` leaves rayon's default.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::InvalidParameter(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn with_pool<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(f)
}

fn parse_word(word: &str, rank: Option<usize>) -> Result<Word> {
    let letters = word.chars().map(Letter::from_char).collect::<Result<Vec<_>>>()?;
    let inferred = letters
        .iter()
        .map(|l| l.generator_index() + 1)
        .max()
        .unwrap_or(0)
        .max(2);
    Word::new(&letters, rank.unwrap_or(inferred))
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        trim(format!("{x:.*}", (11 - exp) as usize))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa.to_string()), sign, exp.abs())
    }
}

pub fn cmd_primitive(word: &str, rank: Option<usize>) -> Result<CliOutput> {
    let w = parse_word(word, rank)?;
    let (c, conjugator) = cyclic_reduce(&w)?;
    let graph = whitehead_graph(&c);
    let conn = connectivity_report(&graph);
    let separability = whitehead_separability_test(&c);
    let verdict = minimize(&c);

    let mut s = String::new();
    let _ = writeln!(s, "word: {w}");
    let _ = writeln!(s, "rank: {}", w.rank());
    let _ = writeln!(s, "cyclic_reduction: {c}");
    let _ = writeln!(
        s,
        "conjugator: {}",
        if conjugator.is_empty() {
            "1".to_string()
        } else {
            conjugator.to_string()
        }
    );
    let edges: Vec<String> = graph.edges().iter().map(|(x, y, m)| format!("{x}-{y}:{m}")).collect();
    let _ = writeln!(s, "whitehead_edges: {}", edges.join(" "));
    let _ = writeln!(s, "connected: {}", conn.is_connected);
    let cuts: Vec<String> = conn.cut_vertices.iter().map(|l| l.to_string()).collect();
    let _ = writeln!(
        s,
        "cut_vertices: {}",
        if cuts.is_empty() {
            "none".to_string()
        } else {
            cuts.join(" ")
        }
    );
    let _ = writeln!(s, "separability_test: {separability:?}");
    let _ = writeln!(s, "minimal_length: {}", verdict.minimal_length);
    let _ = writeln!(s, "reduction_trace:");
    if verdict.reduction_trace.is_empty() {
        let _ = writeln!(s, "  (no shortening move)");
    }
    for (i, (phi, image)) in verdict.reduction_trace.iter().enumerate() {
        let _ = writeln!(s, "  {}: {} -> {} (length {})", i + 1, phi, image, image.len());
    }
    let _ = writeln!(
        s,
        "verdict: {}",
        if verdict.is_primitive {
            "primitive"
        } else {
            "not primitive"
        }
    );
    Ok(CliOutput {
        code: if verdict.is_primitive { EXIT_OK } else { EXIT_NEGATIVE },
        stdout: s,
        stderr: String::new(),
    })
}

pub fn cmd_enumerate(rank: usize, max_length: usize, format: Format, include_inversion: bool) -> Result<CliOutput> {
    let classes = enumerate_primitive_classes_with(rank, max_length, include_inversion)?;
    let stdout = match format {
        Format::Csv => classes.iter().map(|c| format!("{c},{}\n", c.len())).collect(),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                class: String,
                length: usize,
            }
            let rows: Vec<Row> = classes
                .iter()
                .map(|c| Row {
                    class: c.to_string(),
                    length: c.len(),
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
        Format::Dot => {
            return Err(Error::InvalidParameter(
                "dot output is only available for whgraph".into(),
            ))
        }
    };
    Ok(CliOutput {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

pub fn cmd_whgraph(word: &str, rank: Option<usize>, format: Format) -> Result<CliOutput> {
    let (c, _) = cyclic_reduce(&parse_word(word, rank)?)?;
    let graph = whitehead_graph(&c);
    let stdout = match format {
        Format::Dot => graph.to_dot(),
        Format::Json => graph.to_json(&c),
        Format::Csv => return Err(Error::InvalidParameter("whgraph supports dot or json".into())),
    };
    Ok(CliOutput {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

pub fn cmd_blocking(word: &str, rank: Option<usize>, n_max: usize, l_max: usize) -> Result<CliOutput> {
    if n_max == 0 || l_max == 0 {
        return Err(Error::InvalidParameter("n-max and l-max must be positive".into()));
    }
    let (c, _) = cyclic_reduce(&parse_word(word, rank)?)?;
    let report = blocking_witness(&c, n_max, l_max)?;
    let mut s = String::new();
    let _ = writeln!(s, "word: {c}");
    let _ = writeln!(s, "primitive_classes_searched: {}", report.hosts_searched);
    let _ = writeln!(s, "result: {report}");
    let code = if report.witness.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(CliOutput {
        code,
        stdout: s,
        stderr: String::new(),
    })
}

fn parse_base_point(text: &str) -> Result<H3Point> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidParameter(format!("base point {text:?} must be re,im,t")))?;
    match parts.as_slice() {
        [re, im, t] => H3Point::new(Complex64::new(*re, *im), *t),
        _ => Err(Error::InvalidParameter(format!("base point {text:?} must be re,im,t"))),
    }
}

pub fn psreport_params(
    reps: Option<usize>,
    window: usize,
    base_point: Option<&str>,
    tol_parabolic: f64,
    include_inversion: bool,
) -> Result<PsParams> {
    if reps.is_some_and(|r| r < 2) {
        return Err(Error::InvalidParameter("reps must be at least 2".into()));
    }
    if window == 0 {
        return Err(Error::InvalidParameter("window must be positive".into()));
    }
    if !(tol_parabolic > 0.0) {
        return Err(Error::InvalidParameter("tol-parabolic must be positive".into()));
    }
    Ok(PsParams {
        repetitions: reps,
        window,
        base_point: base_point
            .map(parse_base_point)
            .transpose()?
            .unwrap_or_else(H3Point::origin),
        tol_parabolic,
        include_inversion,
    })
}

pub const PSREPORT_HEADER: &str = "class,length,trace_class,translation_length,slope_lower,axis_margin,degenerate";

/// CSV rendering of a report: header, one row per class, `#` footer.
pub fn psreport_csv(report: &PsReport, ping_pong: &str) -> String {
    let mut s = String::new();
    s.push_str(PSREPORT_HEADER);
    s.push('\n');
    for e in &report.entries {
        match &e.outcome {
            Ok(m) => {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    m.class,
                    m.word_length,
                    m.trace_class,
                    fmt_sig(m.translation_length),
                    fmt_sig(m.slope_lower),
                    fmt_sig(m.axis_margin),
                    m.degenerate
                );
            }
            Err(_) => {
                let _ = writeln!(s, "{},{},overflow,,,,", e.class, e.class.len());
            }
        }
    }
    let sum = &report.summary;
    let _ = writeln!(s, "# classes,{}", sum.classes);
    let _ = writeln!(s, "# min_slope,{}", fmt_sig(sum.min_slope));
    let _ = writeln!(s, "# max_margin,{}", fmt_sig(sum.max_margin));
    let _ = writeln!(s, "# degenerate_count,{}", sum.degenerate_count);
    let _ = writeln!(s, "# overflow_count,{}", sum.overflow_count);
    let _ = writeln!(s, "# ping_pong,{ping_pong}");
    let _ = writeln!(
        s,
        "# verdicts are numeric evidence, not a decision of primitive stability"
    );
    s
}

pub fn psreport_json(report: &PsReport, label: &str, ping_pong: &str) -> String {
    #[derive(Serialize)]
    struct Row<'a> {
        class: String,
        length: usize,
        #[serde(flatten, skip_serializing_if = "Option::is_none")]
        metrics: Option<&'a crate::rep::PsMetrics>,
        #[serde(skip_serializing_if = "Option::is_none")]
        error: Option<String>,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        label: &'a str,
        rank: usize,
        max_length: usize,
        rows: Vec<Row<'a>>,
        summary: &'a crate::rep::PsSummary,
        ping_pong: &'a str,
        evidence: &'static str,
    }
    let rows = report
        .entries
        .iter()
        .map(|e| Row {
            class: e.class.to_string(),
            length: e.class.len(),
            metrics: e.outcome.as_ref().ok(),
            error: e.outcome.as_ref().err().map(|err| match err {
                Error::Overflow => "overflow".to_string(),
                other => other.to_string(),
            }),
        })
        .collect();
    let doc = Doc {
        label,
        rank: report.rank,
        max_length: report.max_length,
        rows,
        summary: &report.summary,
        ping_pong,
        evidence: "numeric evidence, not a decision of primitive stability",
    };
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

pub fn cmd_psreport(source: &str, max_length: usize, params: &PsParams, format: Format) -> Result<CliOutput> {
    let rho = resolve_source(source)?;
    let report = ps_report(&rho, max_length, params)?;
    let ping_pong = match ping_pong_certificate(&rho) {
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("error: {e}"),
    };
    let stdout = match format {
        Format::Csv => psreport_csv(&report, &ping_pong),
        Format::Json => psreport_json(&report, rho.label(), &ping_pong),
        Format::Dot => {
            return Err(Error::InvalidParameter(
                "dot output is only available for whgraph".into(),
            ))
        }
    };
    Ok(CliOutput {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

pub fn cmd_examples(name: &str, s: Option<f64>) -> Result<CliOutput> {
    let rho = match (name, s) {
        ("schottky", s) => make_schottky_pair(s.unwrap_or(DEFAULT_SCHOTTKY_LENGTH))?,
        ("sanov", None) => make_sanov(),
        ("ptorus", None) => make_punctured_torus(),
        ("sanov" | "ptorus", Some(_)) => {
            return Err(Error::InvalidParameter(format!(
                "--s only applies to schottky, not {name}"
            )))
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown example {name:?} (schottky, sanov, ptorus)"
            )))
        }
    };
    Ok(CliOutput {
        code: EXIT_OK,
        stdout: rho.to_json(),
        stderr: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutput {
        run_from_args(std::iter::once("primstab").chain(args.iter().copied()))
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(2.0 * 4f64.ln()), "2.77258872224");
        assert_eq!(fmt_sig(1.5), "1.5");
        assert_eq!(fmt_sig(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt_sig(1.25e-7), "1.25e-07");
        assert_eq!(fmt_sig(f64::INFINITY), "inf");
        assert_eq!(fmt_sig(-0.5), "-0.5");
    }

    #[test]
    fn primitive_exit_codes() {
        let out = run_args(&["primitive", "aba"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("verdict: primitive"));
        let out = run_args(&["primitive", "abAB"]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("separability_test: NotSeparable"));
        let out = run_args(&["primitive", "a%"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("invalid character"));
        assert_eq!(run_args(&["primitive", "aA"]).code, 2);
    }

    #[test]
    fn enumerate_lines() {
        let out = run_args(&["enumerate", "--rank", "2", "--max-length", "2"]);
        assert_eq!(out.stdout, "a,1\nb,1\nab,2\naB,2\n");
        let out = run_args(&["enumerate", "--max-length", "1"]);
        assert_eq!(out.stdout, "a,1\nb,1\n");
        assert_eq!(run_args(&["enumerate", "--format", "dot"]).code, 2);
        assert_eq!(run_args(&["enumerate", "--max-length", "0"]).code, 2);
    }

    #[test]
    fn whgraph_formats() {
        let out = run_args(&["whgraph", "a"]);
        assert_eq!(
            out.stdout,
            "graph whitehead {\n  a;\n  A;\n  b;\n  B;\n  a -- A [label=\"1\"];\n}\n"
        );
        let out = run_args(&["whgraph", "aa", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["adjacency"][0][1], 2);
        assert_eq!(run_args(&["whgraph", "ab", "--format", "csv"]).code, 2);
    }

    #[test]
    fn blocking_reports() {
        let out = run_args(&["blocking", "abAB", "--n-max", "1", "--l-max", "8"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("witness n = 1"));
        assert!(out.stdout.contains("bounded evidence (n <= 1, primitive length <= 8)"));
        let out = run_args(&["blocking", "a", "--n-max", "3", "--l-max", "6"]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("inconclusive"));
    }

    #[test]
    fn examples_and_params() {
        assert_eq!(run_args(&["examples", "hyperbolic"]).code, 2);
        let out = run_args(&["examples", "sanov"]);
        assert!(out.stdout.contains("\"label\": \"sanov\""));
        assert!(parse_base_point("0,0,1").is_ok());
        assert!(parse_base_point("0,0,-1").is_err());
        assert!(parse_base_point("0,1").is_err());
        assert_eq!(run_args(&["psreport", "builtin:sanov", "--base-point", "1,2"]).code, 2);
        assert_eq!(run_args(&["psreport", "builtin:none"]).code, 2);
    }
}
