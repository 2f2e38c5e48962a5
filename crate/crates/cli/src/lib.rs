//! `tqnet` command-line front end.
//!
//! [`run`] parses arguments, loads a tjson network, runs one analysis and
//! writes a canonical result document. Exit codes: 0 success, 1 usage error,
//! 2 input error, 3 computation error. Every failure prints one line
//! `error: <category>: <detail>` on the diagnostic stream.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use tqnet::analysis::{
    self, ClosenessType, ClusteringType, CoOccurrenceMode, Direction, DEFAULT_SEED,
};
use tqnet::io::{
    export_chart_data, load_network, IoError, MatrixPayload, NetworkDocument, Payload, Provenance,
    ResultDocument,
};
use tqnet::{SemiringKind, SemiringSpec, TemporalQuantity, TemporalVector};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "TQNET_SEED";

#[derive(Debug, Parser)]
#[command(name = "tqnet", version, about = "Temporal network analysis with temporal quantities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Temporal in- or outdegrees (sums of link values).
    Degrees(Opts),
    /// Activity of one node group on another (`--nodes A:B`).
    Activity(Opts),
    /// Co-occurrence matrix of the document's events (`--type 1` instantaneous, `2` cumulative).
    Cooccur(Opts),
    /// Clustering coefficients (`--type 1` standard, `2`/`3` corrected).
    Cluscoef(Opts),
    /// Matrix closure over an absorptive semiring.
    Closure(Opts),
    /// Reachability degrees.
    Reach(Opts),
    /// Weak connectivity partition.
    Weakconn(Opts),
    /// Strong connectivity partition.
    Strongconn(Opts),
    /// Closeness (`--type 1` output, `2` all, `3` input).
    Closeness(Opts),
    /// Betweenness.
    Betweenness(Opts),
    /// Pathfinder skeleton.
    Pathfinder(Opts),
    /// Attraction coefficients.
    Attraction(Opts),
    /// Node activity with aggregated totals.
    Total(Opts),
    /// Summary of the input document.
    Info(Opts),
}

#[derive(Debug, Args)]
struct Opts {
    /// Input network (tjson).
    #[arg(long)]
    input: PathBuf,
    /// Result file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Semiring for `closure`.
    #[arg(long)]
    semiring: Option<String>,
    /// Variant selector for cooccur, cluscoef and closeness.
    #[arg(long = "type")]
    kind: Option<u8>,
    /// Pathfinder Minkowski parameter (number or `inf`).
    #[arg(long)]
    r: Option<String>,
    /// Pathfinder walk-length cap (integer or `inf`).
    #[arg(long)]
    q: Option<String>,
    /// Exclude the empty walk from the closure.
    #[arg(long, value_parser = clap::value_parser!(bool))]
    strict: Option<bool>,
    /// Seed for the class-label shuffle.
    #[arg(long)]
    seed: Option<u64>,
    /// `in` or `out`.
    #[arg(long)]
    direction: Option<String>,
    /// Node groups for `activity`: `A[:B]`, comma-separated ids or `*`.
    #[arg(long)]
    nodes: Option<String>,
    /// Also write step-function chart rows (CSV) to this file.
    #[arg(long)]
    chart: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Input(IoError),
    Compute(tqnet::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Compute(_) => 3,
        }
    }

    fn line(&self) -> String {
        match self {
            Failure::Usage(msg) => format!("error: usage: {msg}"),
            Failure::Input(e) => format!("error: {}: {e}", e.category()),
            Failure::Compute(e) => format!("error: {}: {e}", e.category()),
        }
    }
}

impl From<tqnet::Error> for Failure {
    fn from(e: tqnet::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let rendered = e.to_string();
                    let detail = rendered
                        .lines()
                        .next()
                        .unwrap_or_default()
                        .trim_start_matches("error: ");
                    let _ = writeln!(stderr, "error: usage: {detail}");
                    let _ = writeln!(stderr, "{}", rendered.trim_end());
                    1
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.line());
            f.code()
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let (name, opts) = match &command {
        Command::Degrees(o) => ("degrees", o),
        Command::Activity(o) => ("activity", o),
        Command::Cooccur(o) => ("cooccur", o),
        Command::Cluscoef(o) => ("cluscoef", o),
        Command::Closure(o) => ("closure", o),
        Command::Reach(o) => ("reach", o),
        Command::Weakconn(o) => ("weakconn", o),
        Command::Strongconn(o) => ("strongconn", o),
        Command::Closeness(o) => ("closeness", o),
        Command::Betweenness(o) => ("betweenness", o),
        Command::Pathfinder(o) => ("pathfinder", o),
        Command::Attraction(o) => ("attraction", o),
        Command::Total(o) => ("total", o),
        Command::Info(o) => ("info", o),
    };
    let bytes = fs::read(&opts.input)
        .map_err(|e| IoError::Io(format!("cannot read {}: {e}", opts.input.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| IoError::Io(format!("{} is not UTF-8", opts.input.display())))?;
    let loaded = load_network(&text)?;
    for w in &loaded.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let net = loaded.network;
    if let Command::Info(_) = command {
        return emit(stdout, opts.output.as_ref(), &info(&net, &loaded.warnings));
    }

    let ids: Vec<i64> = net.nodes.iter().map(|n| n.id).collect();
    let mut params = BTreeMap::new();
    let mut seed = None;
    let mut aggregates = BTreeMap::new();
    let comb = SemiringSpec::combinatorial();
    let (semiring, payload) = match &command {
        Command::Degrees(o) => {
            let dir = direction(o)?;
            params.insert("direction".into(), dir.to_string());
            let v = analysis::degrees(&net.matrix(comb)?, dir)?;
            (comb, Payload::Vector(by_node(&ids, v)))
        }
        Command::Activity(o) => {
            let spec = o.nodes.as_deref().unwrap_or("*");
            let (from, to) = node_groups(spec, &net)?;
            params.insert("nodes".into(), spec.to_string());
            let a = analysis::activity(&net.matrix(comb)?, &from, &to)?;
            aggregates.insert("total".into(), a.total()?);
            (comb, Payload::Quantity(a))
        }
        Command::Cooccur(o) => {
            let mode = match o.kind.unwrap_or(1) {
                1 => CoOccurrenceMode::Instantaneous,
                2 => CoOccurrenceMode::Cumulative,
                k => return usage(format!("cooccur --type must be 1 or 2, got {k}")),
            };
            params.insert("type".into(), o.kind.unwrap_or(1).to_string());
            if net.events.is_empty() {
                return Err(Failure::Input(IoError::Schema("cooccur needs an 'events' array".into())));
            }
            let c = analysis::co_occurrence(&net.event_table()?, mode)?;
            (comb, Payload::Matrix(MatrixPayload::from_matrix(&c, &ids)))
        }
        Command::Cluscoef(o) => {
            let kind = ClusteringType::try_from(o.kind.unwrap_or(1)).map_err(|e| Failure::Usage(e.to_string()))?;
            params.insert("type".into(), (kind as u8).to_string());
            let v = analysis::clus_coef(&net.matrix(comb)?, kind)?;
            (comb, Payload::Vector(by_node(&ids, v)))
        }
        Command::Closure(o) => {
            let kind: SemiringKind = match o.semiring.as_deref() {
                None => SemiringKind::Reachability,
                Some(s) => s.parse().map_err(|e: tqnet::Error| Failure::Usage(e.to_string()))?,
            };
            let spec = match kind {
                SemiringKind::Pathfinder => pathfinder_spec(o)?,
                k => SemiringSpec::new(k),
            };
            let strict = o.strict.unwrap_or(false);
            params.insert("semiring".into(), spec.to_string());
            params.insert("strict".into(), strict.to_string());
            let c = net.matrix(spec)?.closure(strict)?;
            (spec, Payload::Matrix(MatrixPayload::from_matrix(&c, &ids)))
        }
        Command::Reach(o) => {
            let dir = direction(o)?;
            params.insert("direction".into(), dir.to_string());
            let v = analysis::reach_degrees(&net.matrix(SemiringSpec::reachability())?, dir)?;
            (comb, Payload::Vector(by_node(&ids, v)))
        }
        Command::Weakconn(o) | Command::Strongconn(o) => {
            let s = effective_seed(o.seed)?;
            seed = Some(s);
            let a = net.matrix(SemiringSpec::reachability())?;
            let (_, p) = if name == "weakconn" {
                analysis::weak_connectivity(&a, s)?
            } else {
                analysis::strong_connectivity(&a, s)?
            };
            (comb, Payload::Partition(ids.iter().copied().zip(p.into_inner()).collect()))
        }
        Command::Closeness(o) => {
            let kind = ClosenessType::try_from(o.kind.unwrap_or(2)).map_err(|e| Failure::Usage(e.to_string()))?;
            params.insert("type".into(), (kind as u8).to_string());
            let v = analysis::closeness(&net.matrix(comb)?, kind)?;
            (comb, Payload::Vector(by_node(&ids, v)))
        }
        Command::Betweenness(_) => {
            let v = analysis::betweenness(&net.matrix(comb)?)?;
            (comb, Payload::Vector(by_node(&ids, v)))
        }
        Command::Pathfinder(o) => {
            let spec = pathfinder_spec(o)?;
            params.insert("r".into(), tqnet::semiring::format_number(spec.r()));
            params.insert("q".into(), spec.q().map_or("inf".into(), |q| q.to_string()));
            let pf = analysis::path_finder(&net.matrix(comb)?, spec.r(), spec.q())?;
            (spec, Payload::Skeleton(MatrixPayload::from_matrix(&pf, &ids)))
        }
        Command::Attraction(_) => {
            let v = analysis::attraction(&net.matrix(comb)?)?;
            for (id, a) in ids.iter().zip(v.iter()) {
                aggregates.insert(format!("node:{id}"), a.total()?);
            }
            (comb, Payload::Vector(by_node(&ids, v)))
        }
        Command::Total(_) => {
            let a = net.matrix(comb)?;
            let all: Vec<usize> = (0..net.n()).collect();
            let mut rows = Vec::with_capacity(net.n());
            let mut sum = 0.0;
            for (u, &id) in ids.iter().enumerate() {
                let others: Vec<usize> = all.iter().copied().filter(|&v| v != u).collect();
                let act = analysis::activity(&a, &[u], &others)?;
                let total = act.total()?;
                sum += total;
                aggregates.insert(format!("node:{id}"), total);
                rows.push((id, act));
            }
            aggregates.insert("all".into(), sum);
            (comb, Payload::Vector(rows))
        }
        Command::Info(_) => unreachable!("handled above"),
    };

    if let Some(path) = &opts.chart {
        let rows: Vec<(i64, TemporalQuantity)> = match &payload {
            Payload::Vector(v) | Payload::Partition(v) => v.clone(),
            Payload::Quantity(a) => vec![(0, a.clone())],
            Payload::Matrix(_) | Payload::Skeleton(_) => {
                return usage("--chart needs a vector, partition or quantity result")
            }
        };
        fs::write(path, export_chart_data(&rows))
            .map_err(|e| IoError::Io(format!("cannot write {}: {e}", path.display())))?;
    }

    let doc = ResultDocument {
        semiring,
        horizon: net.horizon,
        payload,
        provenance: Provenance {
            command: name.to_string(),
            input_sha256: hex(&Sha256::digest(&bytes)),
            parameters: params,
            seed,
        },
        aggregates,
    };
    emit(stdout, opts.output.as_ref(), &doc.to_json())
}

fn emit(stdout: &mut dyn Write, output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(IoError::Io(format!("cannot write {}: {e}", path.display())))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(IoError::Io(e.to_string()))),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn by_node(ids: &[i64], v: TemporalVector) -> Vec<(i64, TemporalQuantity)> {
    ids.iter().copied().zip(v.into_entries()).collect()
}

fn direction(o: &Opts) -> Result<Direction, Failure> {
    o.direction
        .as_deref()
        .unwrap_or("out")
        .parse()
        .map_err(|e: tqnet::Error| Failure::Usage(e.to_string()))
}

fn effective_seed(flag: Option<u64>) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_ENV} must be a non-negative integer, got '{s}'"))),
        Err(_) => Ok(flag.unwrap_or(DEFAULT_SEED)),
    }
}

fn pathfinder_spec(o: &Opts) -> Result<SemiringSpec, Failure> {
    let r = match o.r.as_deref() {
        None => 1.0,
        Some("inf") => f64::INFINITY,
        Some(s) => s
            .parse::<f64>()
            .map_err(|_| Failure::Usage(format!("--r must be a number or 'inf', got '{s}'")))?,
    };
    let q = match o.q.as_deref() {
        None | Some("inf") => None,
        Some(s) => Some(
            s.parse::<u64>()
                .map_err(|_| Failure::Usage(format!("--q must be a positive integer or 'inf', got '{s}'")))?,
        ),
    };
    SemiringSpec::pathfinder(r, q).map_err(|e| Failure::Usage(e.to_string()))
}

/// Parses `A[:B]` where each side is `*` or comma-separated node ids; a
/// missing `B` means all nodes.
fn node_groups(spec: &str, net: &NetworkDocument) -> Result<(Vec<usize>, Vec<usize>), Failure> {
    let group = |s: &str| -> Result<Vec<usize>, Failure> {
        let s = s.trim();
        if s == "*" {
            return Ok((0..net.n()).collect());
        }
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|id| {
                let id: i64 = id
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad node id '{id}' in --nodes")))?;
                net.nodes
                    .iter()
                    .position(|n| n.id == id)
                    .ok_or_else(|| Failure::Usage(format!("--nodes names unknown node {id}")))
            })
            .collect()
    };
    match spec.split_once(':') {
        Some((a, b)) => Ok((group(a)?, group(b)?)),
        None => Ok((group(spec)?, (0..net.n()).collect())),
    }
}

fn info(net: &NetworkDocument, warnings: &[String]) -> String {
    let mut out = String::new();
    out.push_str(&format!("nodes: {}\n", net.n()));
    out.push_str(&format!("links: {}\n", net.links.len()));
    out.push_str(&format!("arcs: {}\n", net.arcs().len()));
    out.push_str(&format!("events: {}\n", net.events.len()));
    out.push_str(&format!(
        "horizon: [{}, {})\n",
        net.horizon.start(),
        net.horizon.finish()
    ));
    for (k, v) in &net.meta {
        out.push_str(&format!("meta.{k}: {v}\n"));
    }
    for w in warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}
