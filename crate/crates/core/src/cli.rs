//! The `homcount` command line.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage or input error, 3 budget
//! exceeded, 4 pattern outside the class. Failures print one JSON object to
//! standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::classes::{Budgets, GraphClass, Pattern};
use crate::counting::{CountMode, Counter};
use crate::duplication::wedge_collection;
use crate::error::{Error, Result};
use crate::exponent::{dup_exponent_with, ExponentOptions};
use crate::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6, Graph};
use crate::lab::{class_levels, verify_exponent, LabConfig, DEFAULT_ENUM_CAP};
use crate::separations::{enumerate_essential_collections, IndependentCollection};

#[derive(Parser, Debug)]
#[command(
    name = "homcount",
    version,
    about = "Growth exponents of pattern counts in graph classes"
)]
struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "HOMCOUNT_JOBS")]
    jobs: Option<usize>,
    /// Node budget of the counting and search routines.
    #[arg(long, global = true, env = "HOMCOUNT_BUDGET")]
    budget: Option<u64>,
    /// Largest k tried by the generic duplicability scan.
    #[arg(long, global = true, env = "HOMCOUNT_KMAX")]
    kmax: Option<usize>,
    /// Input format; by default taken from the extension (.g6 or .el).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    El,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Predicted growth exponent of the pattern in a class (JSON).
    Exponent {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "subgraph")]
        mode: CountMode,
        /// Caps the separation order of the search.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Number of maps or copies of the pattern in the host.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        mode: CountMode,
    },
    /// The wedge of the pattern over a collection.
    Wedge {
        #[arg(long)]
        pattern: String,
        /// A JSON file, or inline JSON: `{"flaps": [[..], ..]}` or `[[..], ..]`.
        #[arg(long)]
        collection: String,
        #[arg(long)]
        k: usize,
        /// Destination; the format follows its extension (graph6 by default).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Essential independent collections of bounded order (JSON).
    Collections {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        max_order: usize,
    },
    /// Checks the predicted exponent against constructions and the exhaustive oracle (JSON).
    Verify {
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        mode: Option<CountMode>,
        /// TOML experiment file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write both series as CSV.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Class members on n vertices, one graph6 line per isomorphism class.
    Enumerate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "HOMCOUNT_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// A .g6 or .el file, or a pattern name such as P3, K4, C5, K2,3.
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    class: String,
}

/// Runs the command line on `argv` (program name first), printing to the
/// process's standard streams. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ =
        env_logger::Builder::from_env(env_logger::Env::default().filter_or("HOMCOUNT_LOG", "warn"))
            .is_test(cfg!(test))
            .try_init();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            report_error(err, 2, "usage", &e.to_string());
            return 2;
        }
    };
    let mut buf = Vec::new();
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut buf)),
            Err(e) => Err(Error::Invalid(format!("thread pool: {e}"))),
        },
        None => execute(&cli, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let (code, kind) = classify(&e);
            report_error(err, code, kind, &e.to_string());
            code
        }
    }
}

fn classify(e: &Error) -> (i32, &'static str) {
    match e {
        _ if e.is_budget() => (3, "budget"),
        Error::NotInClass(_) => (4, "not_in_class"),
        Error::Parse(_)
        | Error::VertexOutOfRange { .. }
        | Error::SelfLoop(..)
        | Error::InvalidCollection(_)
        | Error::NotMonotone(_) => (2, "usage"),
        _ => (1, "error"),
    }
}

fn report_error(err: &mut dyn Write, code: i32, kind: &str, message: &str) {
    let body = json!({ "error": kind, "exit_code": code, "message": message.trim() });
    let _ = writeln!(err, "{body}");
}

fn budgets(cli: &Cli) -> Budgets {
    let mut b = Budgets::default();
    if let Some(n) = cli.budget {
        b.count = n;
        b.search = n;
    }
    b
}

fn counter(cli: &Cli) -> Counter {
    Counter::new(budgets(cli).count)
}

fn execute(cli: &Cli, out: &mut Vec<u8>) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(format!("output: {e}"));
    match &cli.command {
        Command::Exponent {
            target,
            mode,
            max_order,
        } => {
            let h = load_graph(&target.pattern, cli.format)?;
            let class = parse_class(&target.class)?;
            let opts = ExponentOptions {
                k_max: cli.kmax,
                order_cap: *max_order,
                rule: None,
                budgets: budgets(cli),
            };
            let report = dup_exponent_with(&class, &h, *mode, &opts)?;
            writeln!(out, "{}", report.to_json()).map_err(io)
        }
        Command::Count {
            pattern,
            host,
            mode,
        } => {
            let h = load_graph(pattern, cli.format)?;
            let g = load_graph(host, cli.format)?;
            writeln!(out, "{}", counter(cli).count(*mode, &h, &g)?).map_err(io)
        }
        Command::Wedge {
            pattern,
            collection,
            k,
            out: dest,
        } => {
            let h = load_graph(pattern, cli.format)?;
            let c = load_collection(&h, collection)?;
            let w = wedge_collection(&h, &c, *k)?;
            match dest {
                None => writeln!(out, "{}", to_graph6(&w.graph)).map_err(io),
                Some(path) => {
                    let text = match detect_format(path) {
                        Some(Format::El) => to_edge_list(&w.graph),
                        _ => format!("{}\n", to_graph6(&w.graph)),
                    };
                    std::fs::write(path, text)
                        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
                }
            }
        }
        Command::Collections { pattern, max_order } => {
            let h = load_graph(pattern, cli.format)?;
            let all = enumerate_essential_collections(&h, *max_order)?;
            let items: Vec<_> = all
                .iter()
                .map(|c| json!({ "flaps": c.canonical_flaps(), "order": c.max_order() }))
                .collect();
            let body = json!({
                "pattern": to_graph6(&h),
                "max_order": max_order,
                "count": items.len(),
                "collections": items,
            });
            writeln!(out, "{body}").map_err(io)
        }
        Command::Verify {
            pattern,
            class,
            mode,
            config,
            csv,
        } => {
            let mut cfg = match config {
                Some(path) => LabConfig::load(path)?,
                None => LabConfig::default(),
            };
            if cli.budget.is_some() {
                cfg.budget = cli.budget;
            }
            if csv.is_some() {
                cfg.csv = csv.clone();
            }
            let pattern = pattern
                .clone()
                .or(cfg.pattern.clone())
                .ok_or_else(|| Error::Parse("verify needs --pattern or a config pattern".into()))?;
            let class = class
                .clone()
                .or(cfg.class.clone())
                .ok_or_else(|| Error::Parse("verify needs --class or a config class".into()))?;
            let h = load_graph(&pattern, cli.format)?;
            let class = parse_class(&class)?;
            let mode = mode.unwrap_or(cfg.mode);
            let report = verify_exponent(&h, &class, mode, &cfg)?;
            let text = serde_json::to_string(&report).expect("report serializes");
            writeln!(out, "{text}").map_err(io)
        }
        Command::Enumerate { class, n, cap } => {
            let class = parse_class(class)?;
            let levels = class_levels(Some(&class), *n, *cap, &budgets(cli))?;
            for g in &levels[*n] {
                writeln!(out, "{}", to_graph6(g)).map_err(io)?;
            }
            Ok(())
        }
    }
}

fn parse_class(s: &str) -> Result<GraphClass> {
    s.parse()
}

fn detect_format(path: &Path) -> Option<Format> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => Some(Format::G6),
        Some("el") | Some("txt") => Some(Format::El),
        _ => None,
    }
}

/// Reads a graph file, or builds a named pattern when no such file exists.
fn load_graph(spec: &str, format: Option<Format>) -> Result<Graph> {
    let path = Path::new(spec);
    if !path.exists() {
        return Pattern::parse(spec)
            .map(|p| p.graph)
            .map_err(|_| Error::Parse(format!("{spec}: no such file or pattern name")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    match format.or(detect_format(path)) {
        Some(Format::El) => parse_edge_list(&text),
        Some(Format::G6) => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::Parse(format!("{spec}: empty graph6 file")))?;
            parse_graph6(line)
        }
        None => Err(Error::Parse(format!(
            "{spec}: unknown extension, pass --format g6 or --format el"
        ))),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CollectionArg {
    Object {
        host: Option<String>,
        flaps: Vec<Vec<usize>>,
    },
    Flaps(Vec<Vec<usize>>),
}

fn load_collection(h: &Graph, arg: &str) -> Result<IndependentCollection> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    let parsed: CollectionArg =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("collection: {e}")))?;
    let (host, flaps) = match parsed {
        CollectionArg::Object { host, flaps } => (host, flaps),
        CollectionArg::Flaps(flaps) => (None, flaps),
    };
    if let Some(g6) = host {
        if parse_graph6(&g6)? != *h {
            return Err(Error::InvalidCollection(
                "the collection's host differs from the pattern".into(),
            ));
        }
    }
    IndependentCollection::from_flaps(h, &flaps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("homcount").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn named_patterns_and_codes() {
        let (code, out, _) = run_capture(&[
            "count",
            "--pattern",
            "K2",
            "--host",
            "K4",
            "--mode",
            "homomorphism",
        ]);
        assert_eq!((code, out.trim()), (0, "12"));
        let (code, out, _) =
            run_capture(&["exponent", "--pattern", "P3", "--class", "outerplanar"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exponent"], 2);
        let (code, _, err) =
            run_capture(&["exponent", "--pattern", "K4", "--class", "outerplanar"]);
        assert_eq!(code, 4);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "not_in_class");
        let (code, _, _) = run_capture(&["exponent", "--pattern", "P3"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["exponent", "--pattern", "P3", "--class", "wobbly"]);
        assert_eq!(code, 2);
        let (code, _, err) = run_capture(&[
            "--budget",
            "5",
            "count",
            "--pattern",
            "C5",
            "--host",
            "petersen",
            "--mode",
            "subgraph",
        ]);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn wedge_and_collections() {
        let (code, out, _) = run_capture(&[
            "wedge",
            "--pattern",
            "P3",
            "--collection",
            "[[0],[2]]",
            "--k",
            "3",
        ]);
        assert_eq!(code, 0);
        let g = parse_graph6(out.trim()).unwrap();
        assert!(crate::graph::is_isomorphic(&g, &Graph::star(6)));
        let (code, out, _) = run_capture(&["collections", "--pattern", "P3", "--max-order", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 6);
        let (code, _, _) = run_capture(&[
            "wedge",
            "--pattern",
            "P3",
            "--collection",
            "[[0],[1]]",
            "--k",
            "2",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn enumerate_lines() {
        let (code, out, _) = run_capture(&["enumerate", "--class", "forests", "--n", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        let (code, _, _) = run_capture(&["enumerate", "--class", "forests", "--n", "9"]);
        assert_eq!(code, 3);
    }
}
