//! `kdesign` command-line front end.
//!
//! Results go to stdout as one JSON document, diagnostics to stderr. Exit
//! codes: 0 success, 1 proven negative, 2 invalid input, 3 inconclusive.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{evans_block_bound, BoundReport};
use crate::constructions::{
    construct_k3_tight_graph, construct_thm2_tight_graph, construct_thm3_tight_graph,
    construct_uncompletable_design, verify_certificate, K3Case, Target, TightGraph,
};
use crate::decomp::{parse_gamma, ExactTerminal};
use crate::design::{binom2, is_k_admissible, is_kk_divisible};
use crate::equicolor::{equitable_color, ColoringError};
use crate::error::Error;
use crate::io::{self, ColoringJson, DesignJson, Document, GraphJson, Verdict};
use crate::pipeline;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kdesign", version, about = "Complete partial (n,k,1)-designs and K_k-decompose almost complete graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TerminalKind {
    Exact,
}

#[derive(Debug, clap::Args)]
pub struct SearchArgs {
    /// Search-tree node budget for exact search.
    #[arg(long, env = "KDESIGN_BUDGET", default_value_t = 50_000_000)]
    pub budget: u64,
    /// Worker threads for exact search.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Single-threaded canonical search order.
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long, value_enum, default_value_t = TerminalKind::Exact)]
    pub terminal: TerminalKind,
}

impl SearchArgs {
    fn terminal(&self) -> ExactTerminal {
        let threads = if self.deterministic { 1 } else { self.threads.max(1) };
        ExactTerminal { budget: self.budget, threads }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Non-completable design with one block too many.
    Evans,
    /// Non-decomposable graph of admissible order (k = 3 or k ≡ 2 mod 4).
    Thm2,
    /// Non-decomposable graph on s(k−1)+2 vertices.
    Thm3,
    /// k = 3, n ≡ 0 mod 6.
    K3a,
    /// k = 3, n ≡ 5 mod 6.
    K3b,
    /// k = 3, n ≡ 2, 4 mod 6.
    K3c,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a design or graph file and report its basic invariants.
    Check {
        path: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Complete a partial design.
    Complete {
        path: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// K_k-decompose a graph.
    Decompose {
        path: PathBuf,
        #[arg(long)]
        k: usize,
        /// Rational p/q in (0,1) for the low-degree set.
        #[arg(long)]
        gamma: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Build one of the extremal constructions with its certificate.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Equitably colour a graph on a(k−1) vertices with a colours.
    Color {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
    },
    /// Tabulate the bounds for a range of orders.
    Bounds {
        #[arg(long)]
        k: usize,
        /// Single order or inclusive range `lo..hi`.
        #[arg(long)]
        n: String,
    },
    /// Check an obstruction certificate against a design or graph.
    VerifyCert {
        path: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Block size; taken from the file for designs.
        #[arg(long)]
        k: Option<usize>,
    },
}

/// Outcome of one command: exit code plus the JSON document for stdout.
struct Reply {
    code: i32,
    body: Value,
}

impl Reply {
    fn ok(body: Value) -> Self {
        Reply { code: EXIT_OK, body }
    }

    fn negative(body: Value) -> Self {
        Reply { code: EXIT_NEGATIVE, body }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

/// Parses `args`, runs the command, writes JSON to `out` and messages to
/// `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command) {
        Ok(reply) => {
            let _ = writeln!(out, "{}", serde_json::to_string(&reply.body).expect("json value"));
            reply.code
        }
        Err(e) => {
            let _ = writeln!(out, "{}", json!({ "status": "invalid", "error": e.to_string() }));
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(command: Command) -> crate::Result<Reply> {
    match command {
        Command::Check { path, k } => check(io::read_document(&path)?, k),
        Command::Complete { path, search } => {
            let design = match io::read_document(&path)? {
                Document::Design(d) => d,
                Document::Graph(_) => return Err(invalid("complete expects a design file")),
            };
            Ok(verdict_reply(io::completion_json(&pipeline::complete_design(&design, &search.terminal())?)))
        }
        Command::Decompose { path, k, gamma, search } => {
            let g = match io::read_document(&path)? {
                Document::Graph(g) => g,
                Document::Design(d) => d.leave()?,
            };
            let gamma = gamma.as_deref().map(parse_gamma).transpose()?;
            Ok(verdict_reply(io::decomposition_json(&pipeline::decompose(&g, k, &search.terminal(), gamma)?)))
        }
        Command::Construct { family, n, k, s } => construct(family, n, k, s),
        Command::Color { graph, a, k } => {
            let h = match io::read_document(&graph)? {
                Document::Graph(g) => g,
                Document::Design(_) => return Err(invalid("color expects a graph file")),
            };
            if k < 2 {
                return Err(invalid(format!("block size k = {k} is below 2")));
            }
            match equitable_color(&h, a, k) {
                Ok(c) => Ok(Reply::ok(serde_json::to_value(ColoringJson { classes: c.classes() })?)),
                Err(ColoringError::DimensionMismatch { expected, actual }) => {
                    Err(Error::DimensionMismatch { expected, actual })
                }
                Err(ColoringError::Stuck(failure)) => {
                    Ok(Reply::negative(json!({ "status": "stuck", "failure": *failure })))
                }
            }
        }
        Command::Bounds { k, n } => {
            let (lo, hi) = parse_range(&n)?;
            if k < 2 || lo < k {
                return Err(invalid(format!("need k >= 2 and n >= k, got k = {k}, n from {lo}")));
            }
            let rows: Vec<BoundReport> = (lo..=hi).map(|n| BoundReport::new(n, k)).collect();
            Ok(Reply::ok(json!({ "k": k, "rows": rows })))
        }
        Command::VerifyCert { path, cert, k } => {
            let certificate = io::parse_certificate(&std::fs::read_to_string(&cert)?)?;
            let doc = io::read_document(&path)?;
            let valid = match &doc {
                Document::Design(d) => {
                    if k.is_some_and(|k| k != d.k()) {
                        return Err(invalid("--k disagrees with the design's block size"));
                    }
                    verify_certificate(Target::Design(d), d.k(), &certificate)?
                }
                Document::Graph(g) => {
                    let k = k.ok_or_else(|| invalid("--k is required for graph targets"))?;
                    verify_certificate(Target::Graph(g), k, &certificate)?
                }
            };
            let body = json!({ "valid": valid, "certificate": certificate });
            Ok(if valid { Reply::ok(body) } else { Reply::negative(body) })
        }
    }
}

fn verdict_reply((verdict, body): (Verdict, Value)) -> Reply {
    let code = match verdict {
        Verdict::Solved => EXIT_OK,
        Verdict::Impossible => EXIT_NEGATIVE,
        Verdict::Unknown => EXIT_UNKNOWN,
    };
    Reply { code, body }
}

fn check(doc: Document, k: Option<usize>) -> crate::Result<Reply> {
    match doc {
        Document::Design(d) => {
            if let Err(v) = d.validate() {
                return Err(Error::InvalidDesign(v));
            }
            let (n, k) = (d.n(), d.k());
            let admissible = is_k_admissible(n, k);
            let leave = d.leave()?;
            let bound = if admissible { Some(evans_block_bound(n, k)?) } else { None };
            Ok(Reply::ok(json!({
                "kind": "design",
                "valid": true,
                "n": n,
                "k": k,
                "blocks": d.blocks().len(),
                "admissible": admissible,
                "complete": d.is_complete_design(),
                "leave_edges": leave.edge_count(),
                "leave_divisible": is_kk_divisible(&leave, k),
                "evans_block_bound": bound,
                "within_evans_bound": bound.map(|b| d.blocks().len() as i64 <= b),
            })))
        }
        Document::Graph(g) => {
            let n = g.order();
            let mut body = json!({
                "kind": "graph",
                "valid": true,
                "n": n,
                "edges": g.edge_count(),
                "complement_edges": binom2(n) - g.edge_count(),
                "min_degree": if n > 0 { g.min_degree() } else { 0 },
                "max_degree": g.max_degree(),
            });
            if let Some(k) = k {
                if k < 2 {
                    return Err(invalid(format!("block size k = {k} is below 2")));
                }
                body["k"] = json!(k);
                body["divisible"] = json!(is_kk_divisible(&g, k));
                body["order_residue"] = json!(n.saturating_sub(1) % (k - 1));
            }
            Ok(Reply::ok(body))
        }
    }
}

fn construct(family: Family, n: Option<usize>, k: Option<usize>, s: Option<usize>) -> crate::Result<Reply> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| invalid(format!("--{name} is required")));
    let graph_reply = |name: &str, t: TightGraph| {
        Ok(Reply::ok(json!({
            "family": name,
            "graph": GraphJson::from(&t.graph),
            "certificate": t.certificate,
        })))
    };
    let k3 = |case: K3Case, name: &str| -> crate::Result<Reply> {
        let n = need(n, "n")?;
        if k.is_some_and(|k| k != 3) {
            return Err(invalid(format!("{name} is a k = 3 construction")));
        }
        if K3Case::for_order(n) != Some(case) {
            return Err(invalid(format!("n = {n} is not in the {name} regime")));
        }
        graph_reply(name, construct_k3_tight_graph(n)?)
    };
    match family {
        Family::Evans => {
            let t = construct_uncompletable_design(need(n, "n")?, need(k, "k")?)?;
            Ok(Reply::ok(json!({
                "family": "evans",
                "design": DesignJson::from(&t.design),
                "certificate": t.certificate,
            })))
        }
        Family::Thm2 => graph_reply("thm2", construct_thm2_tight_graph(need(n, "n")?, need(k, "k")?)?),
        Family::Thm3 => {
            let (k, s) = (need(k, "k")?, need(s, "s")?);
            if n.is_some_and(|n| n != s * (k - 1) + 2) {
                return Err(invalid("--n must equal s(k-1)+2"));
            }
            graph_reply("thm3", construct_thm3_tight_graph(k, s)?)
        }
        Family::K3a => k3(K3Case::A, "k3a"),
        Family::K3b => k3(K3Case::B, "k3b"),
        Family::K3c => k3(K3Case::C, "k3c"),
    }
}

/// `"12"` or `"7..25"` (inclusive).
fn parse_range(text: &str) -> crate::Result<(usize, usize)> {
    let bad = || invalid(format!("expected N or LO..HI, got {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
