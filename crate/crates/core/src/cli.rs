//! Command-line front end.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use clap::error::ErrorKind;

use crate::colorer::{count_input_extensions, evaluate, verify_l_gadget, verify_points, verify_simulates, ColoringOutcome};
use crate::compiler::{compile_with, CompileOptions};
use crate::extend::all_tuples;
use crate::formats::{parse_function_table, read_sim_graph, write_dot, write_sim_graph};
use crate::gadgets::{GadgetKind, SimGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_UNRESOLVED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "colorsim", version, about = "Compile partial functions into graphs whose n-colorings compute them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile a function table into a simulator graph.
    Compile {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long)]
        colors: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Also write the compile report to this file.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = CompileOptions::default().max_vertices)]
        max_vertices: u64,
    },
    /// Evaluate a simulator on one input by propagation.
    Eval {
        #[command(flatten)]
        source: GraphSource,
        /// Input symbols, separated by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// If propagation stalls, count extensions by backtracking instead.
        #[arg(long)]
        search: bool,
    },
    /// Check a simulator against a function table with the exhaustive oracle.
    Verify {
        #[command(flatten)]
        source: GraphSource,
        /// Table to check against; defaults to the gadget's own table.
        #[arg(long = "fn", value_name = "FILE")]
        function: Option<PathBuf>,
    },
    /// Print vertex and edge counts.
    Stats {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Build a named gadget and write it out.
    Gadget {
        #[command(flatten)]
        spec: GadgetArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Print the amalgam expression the gadget was built from.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args, Debug)]
struct GraphSource {
    /// A `.sg` file.
    #[arg(long, value_name = "FILE", conflicts_with = "gadget")]
    graph: Option<PathBuf>,
    #[command(flatten)]
    gadget: GadgetArgs,
}

#[derive(Args, Debug)]
struct GadgetArgs {
    /// Gadget name: L, tau, cs+, cs-, ch, ps, xp, not, and, or, vand, vor,
    /// dot, xt, mux, add, sub, edge.
    #[arg(long)]
    gadget: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long)]
    colors: Option<usize>,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(e.to_string())
    }
}

fn kind_of(name: &str, k: Option<usize>, i: Option<usize>, j: Option<usize>, r: Option<usize>) -> Result<GadgetKind, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("gadget `{name}` needs --{flag}")));
    match name {
        "L" => Ok(GadgetKind::L { k: need(k, "k")? }),
        "tau" => Ok(GadgetKind::Transposition { i: need(i, "i")?, j: need(j, "j")? }),
        "vand" => Ok(GadgetKind::Vand { r: need(r, "r")? }),
        "vor" => Ok(GadgetKind::Vor { r: need(r, "r")? }),
        "edge" => Ok(GadgetKind::Edge { r: need(r, "r")? }),
        _ => name.parse().map_err(|e: crate::gadgets::GadgetError| usage(e.to_string())),
    }
}

fn build_gadget(kind: GadgetKind, m: usize, colors: Option<usize>) -> Result<SimGraph, Failure> {
    let n = colors.unwrap_or(m.max(3));
    kind.build(m, n).map_err(|e| usage(e.to_string()))
}

fn load(source: &GraphSource) -> Result<(SimGraph, Option<GadgetKind>), Failure> {
    match (&source.graph, &source.gadget.gadget) {
        (Some(path), _) => {
            let f = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let g = read_sim_graph(BufReader::new(f)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok((g, None))
        }
        (None, Some(name)) => {
            let a = &source.gadget;
            let kind = kind_of(name, a.k, a.i, a.j, a.r)?;
            Ok((build_gadget(kind, a.m, a.colors)?, Some(kind)))
        }
        (None, None) => Err(usage("give either --graph FILE or --gadget NAME")),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_outputs(g: &SimGraph, out: Option<&Path>, dot: Option<&Path>) -> Result<(), Failure> {
    if let Some(p) = out {
        let mut w = create(p)?;
        write_sim_graph(g, &mut w)?;
        w.flush()?;
    }
    if let Some(p) = dot {
        let mut w = create(p)?;
        write_dot(&g.graph, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn parse_input(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("input symbol `{t}` is not a number"))))
        .collect()
}

fn join(t: &[usize]) -> String {
    t.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Compile { function, colors, out: sg, dot, report, max_vertices } => {
            let text = std::fs::read_to_string(&function).map_err(|e| usage(format!("{}: {e}", function.display())))?;
            let phi = parse_function_table(&text).map_err(|e| usage(format!("{}: {e}", function.display())))?;
            let (g, rep) =
                compile_with(&phi, colors, &CompileOptions { max_vertices }).map_err(|e| usage(e.to_string()))?;
            write_outputs(&g, sg.as_deref(), dot.as_deref())?;
            if let Some(p) = report {
                let mut w = create(&p)?;
                write!(w, "{rep}")?;
                w.flush()?;
            }
            write!(out, "{rep}")?;
            Ok(EXIT_OK)
        }
        Command::Eval { source, input, search } => {
            let (g, _) = load(&source)?;
            let x = parse_input(&input)?;
            let ev = evaluate(&g, &x).map_err(|e| usage(e.to_string()))?;
            match ev.outcome {
                ColoringOutcome::Unique(_) => {
                    writeln!(out, "{}", join(&ev.output.unwrap()))?;
                    Ok(EXIT_OK)
                }
                ColoringOutcome::Infeasible => {
                    writeln!(out, "INFEASIBLE")?;
                    Ok(EXIT_INFEASIBLE)
                }
                ColoringOutcome::Unresolved(lists) => {
                    let open = lists.lists().iter().filter(|s| s.len() > 1).count();
                    if !search {
                        writeln!(out, "UNRESOLVED {open} lists")?;
                        return Ok(EXIT_UNRESOLVED);
                    }
                    let c = count_input_extensions(&g, &x, 2).map_err(|e| usage(e.to_string()))?;
                    match (c.count, c.witness) {
                        (0, _) => {
                            writeln!(out, "INFEASIBLE")?;
                            Ok(EXIT_INFEASIBLE)
                        }
                        (1, Some(w)) => {
                            let y: Vec<usize> = g.outputs.iter().map(|v| w[v.index()]).collect();
                            writeln!(out, "{}", join(&y))?;
                            Ok(EXIT_OK)
                        }
                        _ => {
                            writeln!(out, "AMBIGUOUS")?;
                            Ok(EXIT_UNRESOLVED)
                        }
                    }
                }
            }
        }
        Command::Verify { source, function } => {
            let (g, kind) = load(&source)?;
            let report = match (function, kind) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    let phi = parse_function_table(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    verify_simulates(&g, &phi)
                }
                (None, Some(GadgetKind::L { k })) => verify_l_gadget(&g, k),
                (None, Some(GadgetKind::Mux)) => {
                    let phi = GadgetKind::Mux.reference_table(g.m).expect("mux has a table");
                    let points: Vec<Vec<usize>> = all_tuples(g.m, g.p()).filter(|x| phi.get(x).is_some()).collect();
                    verify_points(&g, &phi, &points)
                }
                (None, Some(kind)) => verify_simulates(&g, &kind.reference_table(g.m).expect("non-L gadgets have tables")),
                (None, None) => return Err(usage("verifying a graph file needs --fn FILE")),
            };
            write!(out, "{report}")?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Stats { source } => {
            let (g, kind) = load(&source)?;
            let s = g.graph.stats();
            writeln!(out, "{s}")?;
            writeln!(out, "params n {} m {} p {} q {}", g.n, g.m, g.p(), g.q())?;
            if let Some(GadgetKind::L { .. }) = kind {
                let n = g.n as u64;
                let (v, e) = (4 * n - 3, n * (7 * n - 11) / 2);
                let ok = |b: bool| if b { "ok" } else { "MISMATCH" };
                writeln!(out, "formula vertices 4n-3 = {v} {}", ok(v == s.vertex_count))?;
                writeln!(out, "formula edges n(7n-11)/2 = {e} {}", ok(e == s.edge_count))?;
            }
            Ok(EXIT_OK)
        }
        Command::Gadget { spec, out: sg, dot, trace } => {
            let name = spec.gadget.as_deref().ok_or_else(|| usage("missing --gadget NAME"))?;
            let kind = kind_of(name, spec.k, spec.i, spec.j, spec.r)?;
            let g = build_gadget(kind, spec.m, spec.colors)?;
            write_outputs(&g, sg.as_deref(), dot.as_deref())?;
            writeln!(out, "{kind} {}", g.graph.stats())?;
            if trace {
                writeln!(out, "{}", g.trace)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command line (including the program name) and returns the exit
/// status. Results go to `out`, diagnostics to `err`.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if shown {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
