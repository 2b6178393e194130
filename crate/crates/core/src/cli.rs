//! The `gcdminor` command line.
//!
//! Every subcommand writes one JSON document to standard output, including
//! on failure (`{"error": {...}}`). Exit codes: 0 success, 1 a negative
//! mathematical answer (not a minor, not isomorphic), 2 bad input, 3 a
//! budget or size limit was hit. Usage errors go to standard error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::correspondence::{build_gcd_graph, realize_graph, CorrespondenceError};
use crate::graph::json::graph_from_json;
use crate::graph::{are_isomorphic, GraphError, SimpleGraph};
use crate::minor::{minor_by_operations, MinorError, MinorSearch, DEFAULT_BUDGET};
use crate::semigroup::json::{element_from_json, element_to_json, element_to_json_in, elements_from_json};
use crate::semigroup::{factorize, Backend, FactoredElement, SemigroupContext, SemigroupError};
use crate::theorem::{
    construct_partial_partition, default_k0, extend_to_full_partition, scan_and_demonstrate,
    verify_partition, ScanOptions, SubsetSequence, TheoremError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gcdminor", version, about = "gcd graphs, graph minors and minor-derived partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Naturals,
    Free,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Naturals => Backend::Naturals,
            BackendArg::Free => Backend::Free,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prime factorization of a natural number.
    Factor { n: String },
    /// gcd of two elements (integers or {"primes": {...}} objects).
    Gcd { a: String, b: String },
    /// gcd graph of a JSON array of elements.
    Gcdgraph { set_file: PathBuf },
    /// A set of elements whose gcd graph is isomorphic to the given graph.
    Realize {
        graph_file: PathBuf,
        #[arg(long, value_enum, default_value = "naturals")]
        backend: BackendArg,
    },
    /// Decide whether H is a minor of G.
    Minor {
        h_file: PathBuf,
        g_file: PathBuf,
        /// Use the delete/contract oracle and print an operation sequence.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide whether two graphs are isomorphic.
    Iso { g1_file: PathBuf, g2_file: PathBuf },
    /// Partition of M_g induced by a minor embedding of G(M_h) into G(M_g).
    Partition {
        mh_file: PathBuf,
        mg_file: PathBuf,
        /// Also extend to a partition of all of M_g.
        #[arg(long)]
        full: bool,
        /// Block that absorbs the leftover elements (default: smallest of M_h).
        #[arg(long, requires = "full")]
        k0: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Demonstrate the partitions for Green pairs of a set sequence.
    Scan {
        sequence_file: PathBuf,
        /// Every Green pair instead of the first per left index.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Failure::Input(m) => ("input", m),
            Failure::Resource(m) => ("resource", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<SemigroupError> for Failure {
    fn from(e: SemigroupError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<MinorError> for Failure {
    fn from(e: MinorError) -> Self {
        if e.is_resource_error() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<CorrespondenceError> for Failure {
    fn from(e: CorrespondenceError) -> Self {
        match e {
            CorrespondenceError::Overflow { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        if e.is_resource_error() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit_code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) =
                if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return CliOutput { exit_code, stdout, stderr };
        }
    };
    let (exit_code, doc) = match execute(&cli.command) {
        Ok(answer) => answer,
        Err(f) => (f.exit_code(), f.to_json()),
    };
    let mut stdout = serde_json::to_string_pretty(&doc).expect("JSON serializes");
    stdout.push('\n');
    CliOutput { exit_code, stdout, stderr: String::new() }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: malformed JSON: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    graph_from_json(&read_json(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_set(path: &Path) -> Result<(SemigroupContext, Vec<FactoredElement>), Failure> {
    elements_from_json(&read_json(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Element given on the command line: JSON, so `12` or `'{"primes": {...}}'`.
fn parse_element_arg(arg: &str) -> Result<(Backend, FactoredElement), Failure> {
    let value: Value = serde_json::from_str(arg)
        .map_err(|_| Failure::Input(format!("{arg:?} is not an integer or a JSON element")))?;
    Ok(element_from_json(&value)?)
}

fn context_of(backend: Backend) -> SemigroupContext {
    match backend {
        Backend::Naturals => SemigroupContext::naturals(),
        Backend::Free => SemigroupContext::free(),
    }
}

fn execute(command: &Command) -> Result<(i32, Value), Failure> {
    match command {
        Command::Factor { n } => {
            let n: u64 = n.parse().map_err(|_| Failure::Input(format!("{n:?} is not a natural number")))?;
            let e = factorize(n)?;
            let factors: Map<String, Value> = e.exponents().map(|(p, k)| (p.to_string(), json!(k))).collect();
            Ok((EXIT_OK, json!({ "n": element_to_json(&e), "factors": factors, "unit": e.is_unit() })))
        }
        Command::Gcd { a, b } => {
            let (ba, a) = parse_element_arg(a)?;
            let (bb, b) = parse_element_arg(b)?;
            let units = a.is_unit() || b.is_unit();
            if ba != bb && !units {
                return Err(SemigroupError::MixedBackends.into());
            }
            let ctx = context_of(if a.is_unit() { bb } else { ba });
            let g = ctx.gcd(&a, &b)?;
            Ok((EXIT_OK, json!({ "gcd": element_to_json_in(&ctx, &g) })))
        }
        Command::Gcdgraph { set_file } => {
            let (ctx, set) = read_set(set_file)?;
            let g = build_gcd_graph(&set)?;
            Ok((EXIT_OK, g.to_json(&ctx)))
        }
        Command::Realize { graph_file, backend } => {
            let g = read_graph(graph_file)?;
            let backend = Backend::from(*backend);
            let r = realize_graph(&g, backend)?;
            Ok((EXIT_OK, r.to_json(&context_of(backend))))
        }
        Command::Minor { h_file, g_file, oracle, budget } => {
            let h = read_graph(h_file)?;
            let g = read_graph(g_file)?;
            if *oracle {
                return Ok(match minor_by_operations(&h, &g)? {
                    Some(ops) => (EXIT_OK, json!({ "minor": true, "operations": ops })),
                    None => (EXIT_NO, json!({ "minor": false })),
                });
            }
            Ok(match MinorSearch::with_budget(*budget).find(&h, &g)? {
                Some(emb) => {
                    let mut doc = json!({ "minor": true });
                    doc["branch_sets"] = emb.to_json()["branch_sets"].take();
                    (EXIT_OK, doc)
                }
                None => (EXIT_NO, json!({ "minor": false })),
            })
        }
        Command::Iso { g1_file, g2_file } => {
            let a = read_graph(g1_file)?;
            let b = read_graph(g2_file)?;
            Ok(match are_isomorphic(&a, &b)? {
                Some(map) => {
                    let mapping: Map<String, Value> =
                        map.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    (EXIT_OK, json!({ "isomorphic": true, "mapping": mapping }))
                }
                None => (EXIT_NO, json!({ "isomorphic": false })),
            })
        }
        Command::Partition { mh_file, mg_file, full, k0, budget } => {
            partition(mh_file, mg_file, *full, k0.as_deref(), *budget)
        }
        Command::Scan { sequence_file, all_pairs, budget } => {
            let value = read_json(sequence_file)?;
            let seq = SubsetSequence::from_json(&value)?;
            let options = ScanOptions { all_pairs: *all_pairs, search: MinorSearch::with_budget(*budget) };
            let demos = scan_and_demonstrate(&seq, &options)?;
            let records: Vec<Value> = demos.iter().map(|d| d.to_json(seq.context())).collect();
            Ok((EXIT_OK, Value::Array(records)))
        }
    }
}

fn partition(
    mh_file: &Path,
    mg_file: &Path,
    full: bool,
    k0: Option<&str>,
    budget: u64,
) -> Result<(i32, Value), Failure> {
    let (ctx_h, m_h) = read_set(mh_file)?;
    let (ctx_g, m_g) = read_set(mg_file)?;
    let ctx = match (m_h.iter().all(FactoredElement::is_unit), m_g.iter().all(FactoredElement::is_unit)) {
        (true, _) => ctx_g,
        (_, true) => ctx_h,
        _ if ctx_h == ctx_g => ctx_h,
        _ => return Err(SemigroupError::MixedBackends.into()),
    };
    let h = build_gcd_graph(&m_h)?;
    let g = build_gcd_graph(&m_g)?;
    let Some(emb) = MinorSearch::with_budget(budget).find(&h.graph, &g.graph)? else {
        return Ok((EXIT_NO, json!({ "minor": false })));
    };
    let partial = construct_partial_partition(&m_h, &m_g, &emb)?;
    let partial_report = verify_partition(&m_h, &m_g, &partial);
    let mut ok = partial_report.passes();
    let mut doc = json!({
        "minor": true,
        "embedding": emb.to_json(),
        "partial_partition": partial.to_json(&ctx),
    });
    let mut report = json!({ "partial": partial_report.to_json(&ctx) });
    if full {
        let k0 = match k0 {
            Some(arg) => parse_element_arg(arg)?.1,
            None => default_k0(&m_h)
                .ok_or_else(|| Failure::Input("--full needs a nonempty M_h to choose k0 from".into()))?,
        };
        let full = extend_to_full_partition(&partial, &m_g, &k0)?;
        let full_report = verify_partition(&m_h, &m_g, &full);
        ok &= full_report.passes();
        doc["full_partition"] = full.to_json(&ctx);
        report["full"] = full_report.to_json(&ctx);
    }
    doc["report"] = report;
    Ok((if ok { EXIT_OK } else { EXIT_NO }, doc))
}
