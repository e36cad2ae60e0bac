//! `kgraph` command line. Exit codes: 0 success, 1 validation or
//! precondition failure, 2 usage, I/O or parse error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{adjacency_matrix, matrices_commute, saturation, sinks, sources};
use crate::kgraph::{validate_presentation, KGraph};
use crate::moves::{self, InsplitPartition, MoveError, MoveResult};
use crate::normal::check_kg4;
use crate::skeleton::ColorIndex;
use crate::textio::{export_dot, parse_kgraph, parse_presentation, serialize, LoadError};

#[derive(Debug, Parser)]
#[command(name = "kgraph", version, about = "Validate and transform k-graph presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the output presentation here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the parent map here instead of stderr.
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms and unique factorization up to the given length.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        kg4_max_len: usize,
    },
    /// Counts, sinks, sources, complete edges and adjacency matrices.
    Info { file: PathBuf },
    /// Split a vertex in two along a partition of its in-edges.
    Insplit {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_delimiter = ',', required = true)]
        e1: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        e2: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Subdivide an edge and everything its squares force along.
    Delay {
        file: PathBuf,
        #[arg(long)]
        edge: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Remove a sink and its down-set.
    DeleteSink {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Contract the complete edge leaving a vertex.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Saturation of a vertex set.
    Saturation {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Pairing blocks of the edges into a vertex.
    Pairing {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Graphviz rendering of the skeleton.
    ExportDot { file: PathBuf },
}

enum Failure {
    /// Exit 1, message to stdout.
    Check(String),
    /// Exit 2, message to stderr.
    Usage(String),
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        Failure::Check(format!("{e}\n"))
    }
}

type Outcome = Result<(), Failure>;

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against arbitrary output streams and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = stdout.write_all(msg.as_bytes());
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &FsPath) -> Result<KGraph, Failure> {
    match parse_kgraph(&read(path)?) {
        Ok(kg) => Ok(kg),
        Err(LoadError::Parse(e)) => Err(Failure::Usage(format!("{}: {e}", path.display()))),
        Err(LoadError::Invalid(report)) => Err(Failure::Check(format!("invalid k-graph\n{report}"))),
    }
}

fn vertex(kg: &KGraph, name: &str) -> Result<crate::VertexId, Failure> {
    kg.skeleton()
        .vertex(name)
        .ok_or_else(|| Failure::from(MoveError::UnknownVertex(name.to_string())))
}

fn write_to(path: Option<&FsPath>, fallback: &mut dyn Write, text: &str) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => fallback
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn emit_move(
    input: &KGraph,
    result: &MoveResult,
    output: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Outcome {
    write_to(output.out.as_deref(), stdout, &serialize(&result.output))?;
    write_to(output.map.as_deref(), stderr, &result.forward_map_text(input))
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let print = |out: &mut dyn Write, text: &str| out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()));
    match command {
        Command::Validate { file, kg4_max_len } => {
            if kg4_max_len < 2 {
                return Err(Failure::Usage("--kg4-max-len must be at least 2".into()));
            }
            let text = read(&file)?;
            let (skeleton, table) =
                parse_presentation(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let report = validate_presentation(&skeleton, &table);
            if !report.is_ok() {
                return Err(Failure::Check(report.to_string()));
            }
            let kg = KGraph::new_unchecked(skeleton, table);
            let report = check_kg4(&kg, kg4_max_len);
            if !report.is_ok() {
                return Err(Failure::Check(report.to_string()));
            }
            print(stdout, "ok\n")
        }
        Command::Info { file } => {
            let kg = load(&file)?;
            print(stdout, &info(&kg))
        }
        Command::Insplit {
            file,
            vertex: v,
            e1,
            e2,
            output,
        } => {
            let kg = load(&file)?;
            let v = vertex(&kg, &v)?;
            let part = InsplitPartition::from_names(&kg, &e1, &e2)?;
            let res = moves::insplit(&kg, v, &part)?;
            emit_move(&kg, &res, &output, stdout, stderr)
        }
        Command::Delay { file, edge, output } => {
            let kg = load(&file)?;
            let f = kg
                .skeleton()
                .edge_by_name(&edge)
                .ok_or_else(|| Failure::from(MoveError::UnknownEdge(edge.clone())))?;
            let res = moves::delay(&kg, f)?;
            emit_move(&kg, &res, &output, stdout, stderr)
        }
        Command::DeleteSink { file, vertex: v, output } => {
            let kg = load(&file)?;
            let v = vertex(&kg, &v)?;
            let res = moves::delete_sink(&kg, v)?;
            emit_move(&kg, &res, &output, stdout, stderr)
        }
        Command::Reduce { file, vertex: v, output } => {
            let kg = load(&file)?;
            let v = vertex(&kg, &v)?;
            let res = moves::reduce(&kg, v)?;
            emit_move(&kg, &res, &output, stdout, stderr)
        }
        Command::Saturation { file, vertices } => {
            let kg = load(&file)?;
            let set = vertices
                .iter()
                .map(|n| vertex(&kg, n))
                .collect::<Result<BTreeSet<_>, _>>()?;
            let s = kg.skeleton();
            let mut names: Vec<&str> = saturation(&kg, &set).into_iter().map(|v| s.vertex_name(v)).collect();
            names.sort_unstable();
            print(stdout, &format!("{}\n", names.join(",")))
        }
        Command::Pairing { file, vertex: v } => {
            let kg = load(&file)?;
            let v = vertex(&kg, &v)?;
            let blocks = moves::pairing_blocks(&kg, v)?;
            let mut text = String::new();
            for block in blocks.names(&kg) {
                let _ = writeln!(text, "{{{}}}", block.join(","));
            }
            print(stdout, &text)
        }
        Command::ExportDot { file } => {
            let kg = load(&file)?;
            print(stdout, &export_dot(&kg))
        }
    }
}

fn info(kg: &KGraph) -> String {
    let s = kg.skeleton();
    let mut text = String::new();
    let _ = writeln!(text, "k {}", s.k());
    let _ = writeln!(text, "vertices {}", s.vertex_count());
    let per_color: Vec<String> = ColorIndex::all(s.k())
        .map(|c| format!("color {c}: {}", s.edges_of_color(c).count()))
        .collect();
    let _ = writeln!(text, "edges {} ({})", s.edge_count(), per_color.join(", "));
    let _ = writeln!(text, "squares {}", kg.squares().classes().count());
    let pairs = |entries: &[(crate::VertexId, ColorIndex)]| {
        if entries.is_empty() {
            "none".to_string()
        } else {
            entries
                .iter()
                .map(|&(v, c)| format!("{}({c})", s.vertex_name(v)))
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    let _ = writeln!(text, "sinks {}", pairs(&sinks(kg).entries));
    let _ = writeln!(text, "sources {}", pairs(&sources(kg).entries));
    let complete = moves::complete_edges(kg);
    if complete.is_empty() {
        let _ = writeln!(text, "complete edges none");
    }
    for c in complete {
        let mut names: Vec<&str> = c.edges.iter().map(|&e| s.edge_name(e)).collect();
        names.sort_unstable();
        let _ = writeln!(
            text,
            "complete edge {{{}}} {} -> {}",
            names.join(","),
            s.vertex_name(c.source),
            s.vertex_name(c.range)
        );
    }
    let order: Vec<&str> = s.vertex_ids().map(|v| s.vertex_name(v)).collect();
    let _ = writeln!(text, "matrix order {}", order.join(","));
    for c in ColorIndex::all(s.k()) {
        let _ = writeln!(text, "matrix {c} {}", adjacency_matrix(kg, c));
    }
    match matrices_commute(kg) {
        Ok(()) => {
            let _ = writeln!(text, "commute yes");
        }
        Err(w) => {
            let _ = writeln!(
                text,
                "commute no (colors {} {} at {} {})",
                w.i,
                w.j,
                s.vertex_name(w.u),
                s.vertex_name(w.x)
            );
        }
    }
    text
}
