use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mimkit::coloring::{self, ListAssignment};
use mimkit::construct::{self, DecomposeOptions};
use mimkit::decomp::{self, BranchDecomposition};
use mimkit::generators::{self, GenSpec};
use mimkit::sweep::{self, SweepConfig};
use mimkit::{domfind, io, pattern, ClassParams, Error, Graph, WidthCertificate};

#[derive(Parser)]
#[command(name = "mimkit", version, about = "Branch decompositions of bounded mim-width for (K_t, sP1+P5)-free graphs")]
struct Cli {
    /// output style for results on stdout
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// largest graph handed to the exact mim-width oracle
    #[arg(long, env = "MIMKIT_ORACLE_LIMIT", default_value_t = decomp::DEFAULT_ORACLE_LIMIT, global = true)]
    oracle_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long, default_value_t = 0)]
    s: usize,
    #[arg(long)]
    t: usize,
}

impl Params {
    fn class(self) -> anyhow::Result<ClassParams> {
        Ok(ClassParams::new(self.s, self.t)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Test membership in the (K_t, sP1+P5)-free class
    Check {
        graph: PathBuf,
        #[command(flatten)]
        params: Params,
    },
    /// Find a bounded dominating structure
    Dominate {
        graph: PathBuf,
        #[command(flatten)]
        params: Params,
    },
    /// Build a decomposition with a width certificate
    Decompose {
        graph: PathBuf,
        #[command(flatten)]
        params: Params,
        /// skip the membership test
        #[arg(long)]
        skip_check: bool,
        /// record the measured width of every recursion node
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Measure the mim-width of a given decomposition
    Width { graph: PathBuf, decomposition: PathBuf },
    /// Exact mim-width of a small graph
    Exact {
        graph: PathBuf,
        /// write an optimal decomposition here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recheck a decomposition against its certificate
    Verify { graph: PathBuf, decomposition: PathBuf, certificate: PathBuf },
    /// Reduce list colouring to k-colouring
    ReduceLists {
        graph: PathBuf,
        lists: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide (list) k-colourability
    Solve {
        graph: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(short)]
        k: Option<u32>,
    },
    /// Print a named or seeded random graph
    Gen {
        #[arg(long, conflicts_with_all = ["seed", "p"])]
        name: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Decompose a seeded corpus and write a CSV table
    Sweep {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// instances per (s, t) pair
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        s: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        t: Vec<usize>,
        /// largest n that also gets an exact width
        #[arg(long, default_value_t = 7)]
        exact_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with a specific exit status.
struct Exit {
    code: u8,
    stdout: Option<String>,
    message: String,
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::NotInClass(w)) => Exit {
                code: 2,
                stdout: Some(json!({ "member": false, "witness": w }).to_string()),
                message: format!("not a class member: induced {} on {:?}", w.pattern, w.vertices),
            },
            _ => Exit { code: 1, stdout: None, message: format!("{e:#}") },
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(exit) => {
            if let Some(out) = exit.stdout {
                println!("{out}");
            }
            eprintln!("mimkit: {}", exit.message);
            ExitCode::from(exit.code)
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn run(cli: &Cli) -> Result<String, Exit> {
    let table = cli.format == Format::Table;
    match &cli.command {
        Command::Check { graph, params } => {
            let g = read_graph(graph)?;
            match pattern::class_violation(&g, params.class()?) {
                Some(w) => Err(Error::NotInClass(w).into()),
                None if table => Ok("member".into()),
                None => Ok(json!({ "member": true }).to_string()),
            }
        }
        Command::Dominate { graph, params } => {
            let g = read_graph(graph)?;
            let params = params.class()?;
            if !g.is_connected() {
                return Err(anyhow!("graph is not connected").into());
            }
            let w = domfind::find_bounded_dominating_structure(&g, params)?;
            if table {
                Ok(format!("{} {}", w.dom_set, serde_json::to_value(w.kind).expect("kind serializes")["kind"]))
            } else {
                Ok(pretty(&w))
            }
        }
        Command::Decompose { graph, params, skip_check, audit, out, cert, trace } => {
            let g = read_graph(graph)?;
            let opts = DecomposeOptions { check_membership: !skip_check, audit: *audit };
            let res = construct::decompose_with(&g, params.class()?, opts)?;
            if let Some(p) = out {
                write(p, &pretty(&res.bd))?;
            }
            if let Some(p) = cert {
                write(p, &pretty(&res.cert))?;
            }
            if let Some(p) = trace {
                write(p, &pretty(&res.trace))?;
            }
            if table {
                return Ok(format!("measured width {}\ncertified bound {}", res.measured_width, res.cert.bound));
            }
            let mut summary = json!({ "measured_width": res.measured_width, "bound": res.cert.bound });
            if out.is_none() {
                summary["decomposition"] = serde_json::to_value(&res.bd).expect("serializable");
            }
            Ok(pretty(&summary))
        }
        Command::Width { graph, decomposition } => {
            let g = read_graph(graph)?;
            let bd: BranchDecomposition = read_json(decomposition)?;
            let report = decomp::mimw_of(&bd, &g).map_err(|e| Exit { code: 3, stdout: None, message: e.to_string() })?;
            if !table {
                return Ok(pretty(&report));
            }
            let mut lines = vec![format!("{:>6}  {:>4}  side", "edge", "mim")];
            for c in &report.cuts {
                lines.push(format!("{:>6}  {:>4}  {}", c.tree_edge, c.mim_value, c.side_a));
            }
            lines.push(format!("width {}", report.width));
            Ok(lines.join("\n"))
        }
        Command::Exact { graph, out } => {
            let g = read_graph(graph)?;
            let (width, bd) = decomp::exact_mimw(&g, cli.oracle_limit)?;
            if let Some(p) = out {
                write(p, &pretty(&bd))?;
            }
            Ok(width.to_string())
        }
        Command::Verify { graph, decomposition, certificate } => {
            let g = read_graph(graph)?;
            let bd: BranchDecomposition = read_json(decomposition)?;
            let cert: WidthCertificate = read_json(certificate)?;
            verify(&g, &bd, &cert, table)
        }
        Command::ReduceLists { graph, lists, out } => {
            let g = read_graph(graph)?;
            let la: ListAssignment = read_json(lists)?;
            let red = coloring::kwon_reduce(&g, &la)?;
            let gjson = io::graph_to_json(&red.graph);
            match out {
                Some(p) => {
                    write(p, &pretty(&gjson))?;
                    Ok(pretty(&json!({ "clique": red.clique })))
                }
                None => Ok(pretty(&json!({ "graph": gjson, "clique": red.clique }))),
            }
        }
        Command::Solve { graph, lists, k } => {
            let g = read_graph(graph)?;
            let la = match (lists, k) {
                (Some(p), _) => read_json::<ListAssignment>(p)?,
                (None, Some(k)) => ListAssignment::full(&g, *k),
                (None, None) => return Err(anyhow!("either --lists or -k is required").into()),
            };
            let sol = coloring::solve_list_colouring(&g, &la)?;
            if table {
                return Ok(match sol {
                    Some(c) => c.assignment.iter().map(|(v, c)| format!("{v} {c}")).collect::<Vec<_>>().join("\n"),
                    None => "not colourable".into(),
                });
            }
            Ok(pretty(&json!({ "colourable": sol.is_some(), "colouring": sol.map(|c| c.assignment) })))
        }
        Command::Gen { name, seed, n, p, s, t } => {
            let g = match name {
                Some(name) => generators::named(name)?,
                None => {
                    let spec = GenSpec { seed: *seed, n: *n, edge_prob: *p, params: ClassParams::new(*s, *t)? };
                    generators::random_class_member(&spec)?
                }
            };
            Ok(if table { io::to_text(&g).trim_end().to_string() } else { io::graph_to_json(&g).to_string() })
        }
        Command::Sweep { seed, count, n_min, n_max, p, s, t, exact_limit, out } => {
            let cfg = SweepConfig {
                seed: *seed,
                count: *count,
                n_min: *n_min,
                n_max: *n_max,
                edge_prob: *p,
                s_values: s.clone(),
                t_values: t.clone(),
                exact_limit: (*exact_limit).min(cli.oracle_limit),
            };
            let rows = sweep::run(&cfg)?;
            let csv = sweep::to_csv(&rows)?;
            match out {
                Some(path) => {
                    write(path, &csv)?;
                    eprintln!("wrote {} rows to {}", rows.len(), path.display());
                    Ok(String::new())
                }
                None => Ok(csv.trim_end().to_string()),
            }
        }
    }
}

fn verify(g: &Graph, bd: &BranchDecomposition, cert: &WidthCertificate, table: bool) -> Result<String, Exit> {
    let fail = |message: String| Exit {
        code: 3,
        stdout: Some(json!({ "verified": false, "reason": message }).to_string()),
        message,
    };
    bd.validate(g).map_err(|e| fail(e.to_string()))?;
    let recomputed = cert.recompute().map_err(|e| fail(e.to_string()))?;
    if recomputed != cert.bound {
        return Err(fail(format!("certificate claims {} but recomputes to {recomputed}", cert.bound)));
    }
    let width = decomp::mimw_of(bd, g).map_err(|e| fail(e.to_string()))?.width;
    if width > cert.bound {
        return Err(fail(format!("measured width {width} exceeds certified bound {}", cert.bound)));
    }
    if table {
        return Ok(format!("verified: width {width} <= bound {}", cert.bound));
    }
    Ok(pretty(&json!({ "verified": true, "measured_width": width, "bound": cert.bound })))
}
