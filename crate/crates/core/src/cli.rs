//! The `graphprint` command-line tool.
//!
//! Exit codes: 0 success (or "equivalent" for `compare`), 1 "not
//! equivalent" or a failed suite, 2 any error.

use std::collections::HashMap;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::format::{read_named_graphs, Format};
use crate::graph::{Graph, NamedGraph};
use crate::index::{IndexRecord, IndexStore};
use crate::oracle::{run_suite, SuiteParams, SUITES};
use crate::slabel::{equivalent, exact_classes, fingerprint, Family, Fingerprint, HashVersion, Iterations, Method, Mode};
use crate::walk::w_equivalent;

/// Environment variable holding the default index store path.
pub const STORE_ENV: &str = "GRAPHPRINT_STORE";

#[derive(Parser, Debug)]
#[command(name = "graphprint", version, about = "Graph fingerprints from walk counts and anchored neighborhood aggregation")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print `<id>\t<fingerprint>` for every input graph, in input order.
    Fingerprint {
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Append the 256-bit digest (always present in exact mode).
        #[arg(long)]
        wide: bool,
    },
    /// Compare two graphs. Exit 0 if equivalent, 1 if not.
    Compare {
        /// Method: w, s0..s3 or t0..t2 (or s/t with --k).
        #[arg(long, default_value = "s2")]
        method: String,
        #[arg(long)]
        k: Option<usize>,
        /// exact (default) or hashed with wide confirmation.
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value = "graph6")]
        format: Format,
        /// Files holding one graph each, `-` for stdin, or `fixture:NAME`.
        g1: String,
        g2: String,
    },
    /// Build or query a fingerprint index.
    Index {
        #[command(subcommand)]
        action: IndexAction,
    },
    /// Run verification suites (default: all). Exit 0 iff all pass.
    Verify {
        suites: Vec<String>,
        #[arg(long, default_value_t = SuiteParams::default().seed)]
        seed: u64,
        /// Random cases per suite (suite default if omitted).
        #[arg(long)]
        cases: Option<usize>,
        /// Largest node count for the exhaustive suite.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long = "hash-version", default_value = "h1")]
        version: HashVersion,
        /// Print one JSON summary per suite instead of text reports.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum IndexAction {
    /// Fingerprint the inputs and append them to the store.
    Build {
        #[command(flatten)]
        store: StoreArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print `<id>\t<candidate ids...>` per input. Candidates still need an
    /// exact isomorphism check.
    Query {
        #[command(flatten)]
        store: StoreArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args, Debug)]
struct StoreArgs {
    /// Index file.
    #[arg(long, env = STORE_ENV)]
    store: PathBuf,
}

#[derive(Args, Debug)]
struct MethodArgs {
    /// s or t, optionally with k attached (s2).
    #[arg(long, default_value = "s2")]
    method: String,
    #[arg(long)]
    k: Option<usize>,
    /// full, stable or a column count.
    #[arg(long, default_value = "full")]
    iters: Iterations,
    #[arg(long, default_value = "hashed")]
    mode: Mode,
    #[arg(long = "hash-version", default_value = "h1")]
    version: HashVersion,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long, default_value = "graph6")]
    format: Format,
    /// Seed for randomized work; recorded for reproducibility.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Input files; stdin if none or `-`.
    files: Vec<PathBuf>,
}

/// `w`, or a family with k either attached or from `--k`.
enum Choice {
    Walk,
    Label(Family, usize),
}

fn parse_choice(method: &str, k: Option<usize>) -> Result<Choice> {
    if method == "w" {
        return Ok(Choice::Walk);
    }
    let (family, rest) = method.split_at(method.len().min(1));
    let family: Family = family.parse()?;
    let attached = if rest.is_empty() {
        None
    } else {
        Some(rest.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad method {method:?}")))?)
    };
    match (attached, k) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidArgument(format!("method {method:?} conflicts with --k {b}"))),
        (Some(a), _) | (None, Some(a)) => Ok(Choice::Label(family, a)),
        (None, None) => Err(Error::InvalidArgument(format!("method {method:?} needs a k"))),
    }
}

impl MethodArgs {
    fn resolve(&self) -> Result<Method> {
        match parse_choice(&self.method, self.k)? {
            Choice::Walk => Err(Error::Unsupported("the walk invariant has no fingerprint; use compare".into())),
            Choice::Label(family, k) => Ok(Method {
                iters: self.iters,
                version: self.version,
                ..Method::new(family, k, self.mode)
            }),
        }
    }
}

fn read_inputs(input: &InputArgs) -> Result<Vec<Result<NamedGraph>>> {
    let mut out = Vec::new();
    let stdin_only = input.files.is_empty();
    let files: Vec<PathBuf> = if stdin_only { vec!["-".into()] } else { input.files.clone() };
    for f in &files {
        let (name, text) = if f.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            ("stdin".to_string(), s)
        } else {
            (f.display().to_string(), std::fs::read_to_string(f)?)
        };
        out.extend(read_named_graphs(&text, input.format, &name));
    }
    Ok(out)
}

fn load_one(spec: &str, format: Format) -> Result<Graph> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return fixtures::by_name(name)
            .map(|f| f.graph)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture {name:?}")));
    }
    let text = if spec == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(spec)?
    };
    let mut graphs = read_named_graphs(&text, format, spec);
    if graphs.len() != 1 {
        return Err(Error::InvalidArgument(format!("{spec}: expected one graph, found {}", graphs.len())));
    }
    Ok(graphs.remove(0)?.graph)
}

/// Fingerprints the parsed inputs in parallel; output order is input order.
fn fingerprint_all(inputs: &[Result<NamedGraph>], m: &Method, wide: bool) -> Vec<Result<Fingerprint>> {
    inputs
        .par_iter()
        .map(|r| match r {
            Ok(ng) => fingerprint(&ng.graph, m, wide),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        })
        .collect()
}

fn input_id(r: &Result<NamedGraph>, position: usize) -> String {
    match r {
        Ok(ng) => ng.id.clone(),
        Err(_) => format!("#{}", position + 1),
    }
}

/// In exact mode, equal wide digests must coincide with the exact classes.
fn check_exact_batch(inputs: &[Result<NamedGraph>], fps: &[Result<Fingerprint>], m: &Method) -> Result<()> {
    let ok: Vec<(&Graph, &Fingerprint)> = inputs
        .iter()
        .zip(fps)
        .filter_map(|(g, f)| Some((&g.as_ref().ok()?.graph, f.as_ref().ok()?)))
        .collect();
    if ok.len() < 2 {
        return Ok(());
    }
    let graphs: Vec<&Graph> = ok.iter().map(|x| x.0).collect();
    let classes = exact_classes(&graphs, m.family, m.k, m.iters)?;
    let mut first: HashMap<usize, &Fingerprint> = HashMap::new();
    let mut by_digest: HashMap<(u64, Option<[u8; 32]>), usize> = HashMap::new();
    for (&class, (_, fp)) in classes.iter().zip(&ok) {
        let rep = *first.entry(class).or_insert(fp);
        let owner = *by_digest.entry((fp.digest, fp.wide)).or_insert(class);
        if rep.wide != fp.wide || owner != class {
            return Err(Error::InvalidArgument(format!(
                "digests disagree with the exact classes under {m}; please report this input"
            )));
        }
    }
    Ok(())
}

fn report_error(id: &str, e: &Error) {
    eprintln!("error\t{id}\t{e}");
}

fn cmd_fingerprint(method: &MethodArgs, input: &InputArgs, wide: bool) -> Result<u8> {
    let m = method.resolve()?;
    log::info!("fingerprint method={m} format={} seed={}", input.format, input.seed);
    let inputs = read_inputs(input)?;
    let fps = fingerprint_all(&inputs, &m, wide);
    if m.mode == Mode::Exact {
        check_exact_batch(&inputs, &fps, &m)?;
    }
    let mut code = 0;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (pos, (g, f)) in inputs.iter().zip(&fps).enumerate() {
        let id = input_id(g, pos);
        match (g, f) {
            (Err(e), _) | (_, Err(e)) => {
                report_error(&id, e);
                code = 2;
            }
            (Ok(_), Ok(fp)) => writeln!(out, "{id}\t{}", fp.to_line())?,
        }
    }
    Ok(code)
}

fn cmd_compare(method: &str, k: Option<usize>, mode: Mode, format: Format, g1: &str, g2: &str) -> Result<u8> {
    let choice = parse_choice(method, k)?;
    let (a, b) = (load_one(g1, format)?, load_one(g2, format)?);
    let (name, same) = match choice {
        Choice::Walk => ("w".to_string(), w_equivalent(&a, &b)),
        Choice::Label(family, k) => {
            let name = format!("{}{k}", family.token());
            let same = if a.n() != b.n() {
                false
            } else if mode == Mode::Exact {
                equivalent(&a, &b, family, k)?
            } else {
                let m = Method::new(family, k, Mode::Hashed);
                fingerprint(&a, &m, true)?.matches(&fingerprint(&b, &m, true)?)
            };
            (name, same)
        }
    };
    let verdict = if same { "equivalent" } else { "not-equivalent" };
    println!("{verdict}\t{name}\t{}", mode.token());
    Ok(if same { 0 } else { 1 })
}

fn cmd_index(action: &IndexAction) -> Result<u8> {
    match action {
        IndexAction::Build { store, method, input } => {
            let m = method.resolve()?;
            let mut idx = IndexStore::open_or_create(&store.store, m.version)?;
            let inputs = read_inputs(input)?;
            let fps = fingerprint_all(&inputs, &m, true);
            let mut records = Vec::new();
            let mut code = 0;
            for (pos, (g, f)) in inputs.iter().zip(&fps).enumerate() {
                match (g, f) {
                    (Ok(ng), Ok(fp)) => records.push(IndexRecord {
                        fingerprint: fp.clone(),
                        id: ng.id.clone(),
                        source: ng.source.clone(),
                    }),
                    (Err(e), _) | (_, Err(e)) => {
                        report_error(&input_id(g, pos), e);
                        code = 2;
                    }
                }
            }
            let added = records.len();
            idx.append(records)?;
            println!("indexed {added} graphs into {} ({} records)", idx.path().display(), idx.len());
            Ok(code)
        }
        IndexAction::Query { store, method, input } => {
            let m = method.resolve()?;
            let idx = IndexStore::open(&store.store)?;
            if idx.version() != m.version {
                return Err(Error::InvalidArgument(format!(
                    "store holds {} digests, query uses {}",
                    idx.version(),
                    m.version
                )));
            }
            let inputs = read_inputs(input)?;
            let fps = fingerprint_all(&inputs, &m, true);
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let mut code = 0;
            for (pos, (g, f)) in inputs.iter().zip(&fps).enumerate() {
                let id = input_id(g, pos);
                match (g, f) {
                    (Err(e), _) | (_, Err(e)) => {
                        report_error(&id, e);
                        code = 2;
                    }
                    (Ok(_), Ok(fp)) => {
                        let mut line = id;
                        for c in idx.query(fp) {
                            line.push('\t');
                            line.push_str(c);
                        }
                        writeln!(out, "{line}")?;
                    }
                }
            }
            Ok(code)
        }
    }
}

fn cmd_verify(names: &[String], params: &SuiteParams, json: bool) -> Result<u8> {
    let mut selected: Vec<&str> = Vec::new();
    if names.is_empty() {
        selected.extend(SUITES);
    }
    for n in names {
        if n == "all" {
            selected.extend(SUITES);
        } else if SUITES.contains(&n.as_str()) {
            selected.push(n);
        } else {
            return Err(Error::InvalidArgument(format!("unknown suite {n:?}; known: all, {}", SUITES.join(", "))));
        }
    }
    let mut all_passed = true;
    for name in selected {
        let report = run_suite(name, params)?;
        all_passed &= report.passed();
        if json {
            println!("{}", report.summary_json());
        } else {
            print!("{}", report.to_text());
        }
        io::stdout().flush()?;
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    match &cli.command {
        Command::Fingerprint { method, input, wide } => cmd_fingerprint(method, input, *wide),
        Command::Compare {
            method,
            k,
            mode,
            format,
            g1,
            g2,
        } => cmd_compare(method, *k, *mode, *format, g1, g2),
        Command::Index { action } => cmd_index(action),
        Command::Verify {
            suites,
            seed,
            cases,
            max_n,
            version,
            json,
        } => {
            let params = SuiteParams {
                seed: *seed,
                cases: *cases,
                max_n: *max_n,
                version: *version,
            };
            cmd_verify(suites, &params, *json)
        }
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
