//! `shatterlab`: bounds tables, shatter functions, compression, generators,
//! exact searches and verification suites from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! input or I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shatterlab::bits::elements;
use shatterlab::bounds::{format_table1, format_table1_tsv, table1, zeta};
use shatterlab::compression::normalize_traced;
use shatterlab::constructions::{
    family_f1_with, family_f2_with, family_identity_perturbed, graph_to_system, incidence_graph,
    lambda_construction, turan_graph, vc_remark_system, PairIndexing,
};
use shatterlab::io::{parse_family, parse_graph, parse_set_system, write_family, write_graph, write_set_system};
use shatterlab::reduction::build_reduction;
use shatterlab::search::{ex_exact, extremal_ideal_exact, perm_extremal_exact, Constraint, SearchConfig, SearchResult};
use shatterlab::verify::{self, Report, DEFAULT_CASES, DEFAULT_SEED};
use shatterlab::{Graph, PermutationFamily, SetSystem};

macro_rules! out {
    ($($arg:tt)*) => { write_stdout(&format!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { write_stdout(&format!("{}\n", format_args!($($arg)*))) };
}

/// Writes to stdout, exiting quietly when the reader has gone away.
fn write_stdout(text: &str) {
    if let Err(e) = io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: stdout: {e}");
        std::process::exit(2);
    }
}

#[derive(Parser)]
#[command(name = "shatterlab", version, about = "Shatter functions of set systems and permutation families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Human,
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// The υ/λ table with gap marks, and optionally ζ values.
    Bounds {
        #[arg(long, default_value_t = 6)]
        b_max: u64,
        /// Range of b for ζ(b), e.g. `3..10`.
        #[arg(long, value_parser = parse_range)]
        zeta: Option<(u64, u64)>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Shatter profile, VC-dimension and ideal test of a `.ss` file.
    Shatter {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Normalize a `.ss` file to an ideal system of the same size.
    Compress {
        #[arg(long)]
        input: PathBuf,
        /// Print per-pass change counts to stderr.
        #[arg(long)]
        trace_passes: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a construction as `.ss`, `.g` or `.pf`.
    Make {
        #[command(subcommand)]
        what: Make,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// Exact extremal searches.
    Search {
        #[command(subcommand)]
        what: Search,
    },
    /// Permutation-family tools.
    Perm {
        #[command(subcommand)]
        what: Perm,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum Make {
    /// Transversals of `i` balanced blocks of `[n]`.
    Lambda {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// All subsets of `[i]` plus the singletons of `[n]`.
    VcRemark {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// Complete balanced `i`-partite graph on `n` vertices.
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// Point-line incidence graph of the projective plane of prime order `q`.
    Levi {
        #[arg(long)]
        q: u64,
    },
    /// Identity plus one swapped adjacent pair each.
    F1 {
        #[arg(long)]
        n: usize,
        /// Use the pairs {2i, 2i+1} instead of {2i-1, 2i}.
        #[arg(long)]
        shifted: bool,
    },
    /// Every combination of swapped adjacent pairs.
    F2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shifted: bool,
    },
    /// Permutations agreeing with the identity on some `n - 1` elements.
    IdPerturbed {
        #[arg(long)]
        n: usize,
    },
    /// `{∅} ∪ singletons ∪ edges` of a `.g` graph.
    Graph2sys {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Clone, Copy)]
struct SearchOpts {
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Search {
    /// `Ex(n, m, k)`: most edges with every `m` vertices spanning at most `k`.
    GraphEx {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Largest ideal system with `f_R(b) <= k`.
    SetExtremal {
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "k")]
        b: Option<usize>,
        #[arg(long, requires = "b")]
        k: Option<usize>,
        /// Further constraints as `b:k`.
        #[arg(long = "constraint", value_parser = parse_constraint)]
        constraints: Vec<Constraint>,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Largest permutation family with `φ_F(m) <= k`.
    PermExtremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Subcommand)]
enum Perm {
    /// `φ_F(m)` with its smallest witness.
    Phi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The induced system on distinguishing pairs.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_system: PathBuf,
        #[arg(long)]
        out_pairs: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Table1Tightness,
    Theorem1,
    Lemma2,
    Lemma3,
    Frankl,
    BollobasRadcliffe,
    Table3,
    Transitions,
    Compression,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, default_value_t = 6)]
    b_max: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CASES)]
    cases: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected `a..b`")?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad start `{a}`"))?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_constraint(s: &str) -> Result<Constraint, String> {
    let (b, k) = s.split_once(':').ok_or("expected `b:k`")?;
    Ok(Constraint {
        b: b.trim().parse().map_err(|_| format!("bad b `{b}`"))?,
        k: k.trim().parse().map_err(|_| format!("bad k `{k}`"))?,
    })
}

/// Errors that end the run with status 2.
#[derive(Debug)]
struct Failure(String);

impl From<shatterlab::Error> for Failure {
    fn from(e: shatterlab::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => write(p, text),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn system_json(s: &SetSystem) -> Value {
    json!({
        "n": s.ground_size(),
        "ranges": s.ranges().iter().map(|&r| elements(r)).collect::<Vec<_>>(),
    })
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "n": g.vertex_count(),
        "edges": g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
    })
}

fn family_json(f: &PermutationFamily) -> Value {
    json!({
        "n": f.n(),
        "members": f.members().iter().map(|p| p.one_line()).collect::<Vec<_>>(),
    })
}

fn bounds(b_max: u64, zeta_range: Option<(u64, u64)>, format: Format) -> Outcome {
    let rows = table1(b_max)?;
    let zetas = match zeta_range {
        Some((a, b)) => (a..=b).map(|b| Ok((b, zeta(b)?))).collect::<shatterlab::Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let text = match format {
        Format::Human => {
            let mut s = format_table1(&rows);
            if !zetas.is_empty() {
                s.push_str("\nb  zeta\n");
                for (b, z) in &zetas {
                    s.push_str(&format!("{b}  {z}\n"));
                }
            }
            s
        }
        Format::Tsv => {
            let mut s = format_table1_tsv(&rows);
            if !zetas.is_empty() {
                s.push_str("b\tzeta\n");
                for (b, z) in &zetas {
                    s.push_str(&format!("{b}\t{z}\n"));
                }
            }
            s
        }
        Format::Json => {
            let z: Vec<Value> = zetas.iter().map(|(b, z)| json!({"b": b, "zeta": z.to_string()})).collect();
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "b": r.b,
                        "entries": r.entries.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "gap_flags": r.gap_flags,
                    })
                })
                .collect();
            pretty(&json!({ "rows": rows, "zeta": z }))
        }
    };
    out!("{text}");
    Ok(true)
}

fn shatter(input: &Path, format: Format) -> Outcome {
    let sys = parse_set_system(&read(input)?)?;
    let profile = sys.shatter_profile();
    let vc = sys.vc_dimension();
    let ideal = sys.is_ideal();
    match format {
        Format::Human => {
            outln!("n {}", sys.ground_size());
            outln!("ranges {}", sys.len());
            let vals: Vec<String> = profile.values().iter().map(|v| v.to_string()).collect();
            outln!("profile {}", vals.join(" "));
            outln!("vc-dimension {vc}");
            outln!("ideal {ideal}");
        }
        Format::Tsv => {
            outln!("b\tshatter");
            for (b, v) in profile.values().iter().enumerate() {
                outln!("{b}\t{v}");
            }
        }
        Format::Json => out!(
            "{}",
            pretty(&json!({
                "n": sys.ground_size(),
                "ranges": sys.len(),
                "profile": profile.values(),
                "vc_dimension": vc,
                "ideal": ideal,
            }))
        ),
    }
    Ok(true)
}

fn compress(input: &Path, trace: bool, output: Option<&Path>) -> Outcome {
    let sys = parse_set_system(&read(input)?)?;
    let run = normalize_traced(&sys);
    if trace {
        for (i, c) in run.changes_per_pass.iter().enumerate() {
            eprintln!("pass {}: {c} ranges changed", i + 1);
        }
    }
    emit(output, &write_set_system(&run.system))?;
    Ok(true)
}

fn make(what: Make, output: Option<&Path>) -> Outcome {
    let indexing = |shifted: bool| if shifted { PairIndexing::Shifted } else { PairIndexing::Disjoint };
    let text = match what {
        Make::Lambda { n, i } => write_set_system(&lambda_construction(n, i)?),
        Make::VcRemark { n, i } => write_set_system(&vc_remark_system(n, i)?),
        Make::Turan { n, i } => write_graph(&turan_graph(n, i)?),
        Make::Levi { q } => write_graph(&incidence_graph(q)?),
        Make::F1 { n, shifted } => write_family(&family_f1_with(n, indexing(shifted))?),
        Make::F2 { n, shifted } => write_family(&family_f2_with(n, indexing(shifted))?),
        Make::IdPerturbed { n } => write_family(&family_identity_perturbed(n)?),
        Make::Graph2sys { input } => write_set_system(&graph_to_system(&parse_graph(&read(&input)?)?)?),
    };
    emit(output, &text)?;
    Ok(true)
}

fn print_search<W>(r: &SearchResult<W>, format: Format, text: impl Fn(&W) -> String, js: impl Fn(&W) -> Value) {
    match format {
        Format::Human => {
            outln!("optimum {}", r.optimum);
            outln!("exhaustive {}", r.exhaustive);
            outln!("nodes {}", r.nodes_explored);
            out!("{}", text(&r.witness));
        }
        Format::Tsv => {
            outln!("optimum\texhaustive\tnodes_explored");
            outln!("{}\t{}\t{}", r.optimum, r.exhaustive, r.nodes_explored);
        }
        Format::Json => out!(
            "{}",
            pretty(&json!({
                "optimum": r.optimum,
                "exhaustive": r.exhaustive,
                "nodes_explored": r.nodes_explored,
                "witness": js(&r.witness),
            }))
        ),
    }
}

fn search(what: Search) -> Outcome {
    let config = |opts: SearchOpts| SearchConfig::from_env().with_jobs(opts.jobs);
    match what {
        Search::GraphEx { n, m, k, opts } => {
            let r = ex_exact(n, m, k, config(opts))?;
            print_search(&r, opts.format, write_graph, graph_json);
        }
        Search::SetExtremal {
            n,
            b,
            k,
            mut constraints,
            opts,
        } => {
            if let (Some(b), Some(k)) = (b, k) {
                constraints.insert(0, Constraint { b, k });
            }
            let r = extremal_ideal_exact(n, &constraints, config(opts))?;
            print_search(&r, opts.format, write_set_system, system_json);
        }
        Search::PermExtremal { n, m, k, opts } => {
            let r = perm_extremal_exact(n, m, k, config(opts))?;
            print_search(&r, opts.format, write_family, family_json);
        }
    }
    Ok(true)
}

fn perm(what: Perm) -> Outcome {
    match what {
        Perm::Phi { input, m, format } => {
            let fam = parse_family(&read(&input)?)?;
            let phi = fam.phi_value(m)?;
            let witness = elements(phi.witness);
            match format {
                Format::Human => {
                    let w: Vec<String> = witness.iter().map(|e| e.to_string()).collect();
                    outln!("phi({m}) {}", phi.value);
                    outln!("witness {}", w.join(" "));
                }
                Format::Tsv => {
                    outln!("m\tphi\twitness");
                    let w: Vec<String> = witness.iter().map(|e| e.to_string()).collect();
                    outln!("{m}\t{}\t{}", phi.value, w.join(","));
                }
                Format::Json => out!("{}", pretty(&json!({"m": m, "phi": phi.value, "witness": witness}))),
            }
        }
        Perm::Reduce {
            input,
            out_system,
            out_pairs,
        } => {
            let fam = parse_family(&read(&input)?)?;
            let red = build_reduction(&fam)?;
            write(&out_system, &write_set_system(&red.system))?;
            let pairs: String = red
                .ground_pairs
                .iter()
                .enumerate()
                .map(|(e, &(i, j))| format!("{}\t{}\t{}\n", e + 1, i + 1, j + 1))
                .collect();
            write(&out_pairs, &pairs)?;
            outln!("members {}", fam.len());
            outln!("pairs {}", red.ground_pairs.len());
            outln!("ranges {}", red.system.len());
        }
    }
    Ok(true)
}

fn run_suite(args: &VerifyArgs) -> shatterlab::Result<Report> {
    let config = SearchConfig::from_env().with_jobs(args.jobs);
    let ns = |default: &[usize]| args.n.map_or(default.to_vec(), |n| vec![n]);
    match args.suite {
        Suite::Table1Tightness => verify::table1_tightness(args.b_max),
        Suite::Theorem1 => verify::theorem1_equivalence(args.n.unwrap_or(5)),
        Suite::Lemma2 => {
            let pairs = match (args.b, args.n) {
                (Some(b), Some(n)) => vec![(b, n)],
                (Some(b), None) => vec![(b, b + 1)],
                (None, Some(n)) => (3..=n.min(5)).map(|b| (b, n)).collect(),
                (None, None) => vec![(3, 4), (3, 5), (4, 5)],
            };
            verify::lemma2(&pairs, config)
        }
        Suite::Lemma3 => verify::lemma3(args.cases, args.seed),
        Suite::Frankl => verify::frankl(&ns(&[4, 5]), config),
        Suite::BollobasRadcliffe => verify::bollobas_radcliffe(&ns(&[4, 5]), config),
        Suite::Table3 => verify::table3(&verify::table3_cells(), config),
        Suite::Transitions => verify::transitions(config),
        Suite::Compression => verify::compression(args.n.unwrap_or(4).min(4), args.cases, args.seed),
    }
}

fn verify_cmd(args: VerifyArgs) -> Outcome {
    let report = run_suite(&args)?;
    let text = match args.format {
        Format::Human => report.to_human(),
        Format::Tsv => report.to_tsv(),
        Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
    };
    out!("{text}");
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bounds { b_max, zeta, format } => bounds(b_max, zeta, format),
        Command::Shatter { input, format } => shatter(&input, format),
        Command::Compress {
            input,
            trace_passes,
            output,
        } => compress(&input, trace_passes, output.as_deref()),
        Command::Make { what, output } => make(what, output.as_deref()),
        Command::Search { what } => search(what),
        Command::Perm { what } => perm(what),
        Command::Verify(args) => verify_cmd(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
