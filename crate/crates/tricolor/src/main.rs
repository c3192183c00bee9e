use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::process::ExitCode;
use tricolor::decide::{self, Outcome};
use tricolor::edge_color;
use tricolor::families::{self, FamilyId, FamilyKind};
use tricolor::format;
use tricolor::graph::Graph;
use tricolor::oracle;
use tricolor::patterns;
use tricolor::reductions;

/// Decide 3-colorability of (claw, diamond)-free graphs through
/// 3-edge-colorings of their subcubic triangle-free root graphs.
#[derive(Parser)]
#[command(name = "tricolor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Input format; inferred from the extension (.g6 => graph6) otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide 3-colorability and print a certificate.
    Decide(InputArgs),
    /// Print a proper edge coloring with at most the given colors, or NONE.
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 3)]
        colors: u32,
    },
    /// Search for a pattern (claw, diamond, k4, c5, net:i,j,k, spider:i,j,k).
    Detect {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        pattern: String,
    },
    /// Apply the reductions and print the reduced graph.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        /// Also print the reduction trace.
        #[arg(long)]
        emit_trace: bool,
    },
    /// Generate a family member.
    Generate {
        /// d6i1, d6i5, b9i1, b9i7, pstar, lpstar, or overfull-c9 (all members).
        #[arg(long)]
        family: String,
        /// Family index, for the parameterized families.
        #[arg(long)]
        param: Option<usize>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: String,
        certificate: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the oracle cross-validation sweep.
    Crossvalidate {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Print one record line per graph.
        #[arg(long)]
        records: bool,
    },
}

/// Writes to stdout, swallowing broken-pipe errors so that piping into
/// `head` and friends exits cleanly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn emitln(text: &str) {
    emit(text);
    emit("\n");
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn parse_graph(args: &InputArgs) -> Result<Graph, String> {
    let text = read_input(&args.input)?;
    let format = args.format.unwrap_or({
        if args.input.ends_with(".g6") {
            Format::Graph6
        } else {
            Format::Edgelist
        }
    });
    match format {
        Format::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or("empty graph6 input")?;
            format::from_graph6(line).map_err(|e| e.to_string())
        }
        Format::Edgelist => format::from_edge_list(&text).map_err(|e| e.to_string()),
    }
}

fn emit_graph(g: &Graph, format: Format) -> Result<String, String> {
    match format {
        Format::Graph6 => format::to_graph6(g)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Edgelist => Ok(format::to_edge_list(g)),
    }
}

fn parse_family(name: &str, param: Option<usize>) -> Result<FamilyId, String> {
    let kind = match name.to_ascii_lowercase().as_str() {
        "d6i1" => FamilyKind::D6i1,
        "d6i5" => FamilyKind::D6i5,
        "b9i1" => FamilyKind::B9i1,
        "b9i7" => FamilyKind::B9i7,
        "pstar" | "petersen-minus-vertex" => FamilyKind::PetersenMinusVertex,
        "lpstar" | "line-petersen-minus-vertex" => FamilyKind::LinePetersenMinusVertex,
        "overfull-c9" | "overfullc9chords4" => FamilyKind::OverfullC9Chords4,
        other => return Err(format!("unknown family {other}")),
    };
    if kind.is_parameterized() && param.is_none() {
        return Err(format!("family {name} needs --param"));
    }
    Ok(FamilyId { kind, param })
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Decide(input) => {
            let g = parse_graph(&input)?;
            let verdict = decide::decide_auto(&g).map_err(|e| e.to_string())?;
            emit(&format::verdict_to_certificate(&g, &verdict));
            Ok(match verdict.outcome {
                Outcome::Colorable(_) => 0,
                Outcome::ContainsK4(_)
                | Outcome::Exceptional { .. }
                | Outcome::NotColorableExhaustive => 1,
                Outcome::OutOfClass(_) => 2,
            })
        }
        Command::Color { input, colors } => {
            let g = parse_graph(&input)?;
            let coloring = if colors == 3 && g.is_subcubic() && g.is_triangle_free() {
                structural_edge_coloring(&g)?
            } else {
                edge_color::chromatic_index_backtracking(&g, colors).map_err(|e| e.to_string())?
            };
            match coloring {
                Some(ec) => {
                    for (eid, &(u, v)) in g.edges().iter().enumerate() {
                        emitln(&format!("EDGE {} {} {}", u, v, ec.color(eid)));
                    }
                    Ok(0)
                }
                None => {
                    emitln("NONE");
                    Ok(1)
                }
            }
        }
        Command::Detect { input, pattern } => {
            let g = parse_graph(&input)?;
            match run_detect(&g, &pattern)? {
                Some(mapping) => {
                    let verts: Vec<String> = mapping.iter().map(|v| v.to_string()).collect();
                    emitln(&format!("MATCH {}", verts.join(" ")));
                    Ok(0)
                }
                None => {
                    emitln("NONE");
                    Ok(1)
                }
            }
        }
        Command::Reduce { input, emit_trace } => {
            let g = parse_graph(&input)?;
            let (reduced, trace) = reductions::reduce(&g);
            emit(&format::to_edge_list(&reduced));
            if emit_trace {
                emit(&trace.to_text());
            }
            Ok(0)
        }
        Command::Generate {
            family,
            param,
            format: fmt,
        } => {
            let id = parse_family(&family, param)?;
            if id.kind == FamilyKind::OverfullC9Chords4 {
                for member in families::enumerate_overfull_c9_chords4() {
                    emit(&emit_graph(&member, fmt)?);
                }
                return Ok(0);
            }
            let g = families::gen_family(&id).map_err(|e| e.to_string())?;
            emit(&emit_graph(&g, fmt)?);
            Ok(0)
        }
        Command::Verify {
            graph,
            certificate,
            format: fmt,
        } => {
            let g = parse_graph(&InputArgs {
                input: graph,
                format: fmt,
            })?;
            let cert_text = read_input(&certificate)?;
            let verdict =
                format::certificate_to_verdict(&g, &cert_text).map_err(|e| e.to_string())?;
            if verdict.verify(&g) {
                emitln("OK");
                Ok(0)
            } else {
                emitln("FAIL");
                Ok(1)
            }
        }
        Command::Crossvalidate { max_n, records } => {
            let report = oracle::cross_validate(max_n).map_err(|e| e.to_string())?;
            if records {
                for line in &report.lines {
                    emitln(&format!(
                        "{} n={} m={} chi={} s333free={} c5={} overfull={} family={} agree={}",
                        line.canon_hex,
                        line.n,
                        line.m,
                        line.chi_prime,
                        line.s333_free,
                        line.has_induced_c5,
                        line.overfull,
                        line.family
                            .map(|f| f.to_string())
                            .unwrap_or_else(|| "-".into()),
                        line.decide_agrees
                    ));
                }
            }
            emitln(&format!(
                "checked {} graphs, {} violations",
                report.lines.len(),
                report.violations.len()
            ));
            for v in &report.violations {
                emitln(&format!("VIOLATION {v}"));
            }
            Ok(if report.is_clean() { 0 } else { 1 })
        }
    }
}

/// 3-edge-coloring for subcubic triangle-free inputs via the structural
/// pipelines, falling back to exact search per component when the spider
/// structure rules them out.
fn structural_edge_coloring(g: &Graph) -> Result<Option<edge_color::EdgeColoring>, String> {
    let mut colors = vec![0u32; g.m()];
    for comp in g.components() {
        let (sub, map_back) = g.induced_subgraph(&comp);
        if sub.m() == 0 {
            continue;
        }
        match component_edge_coloring(&sub)? {
            Some(ec) => {
                for (eid, &(u, v)) in sub.edges().iter().enumerate() {
                    colors[g.edge_id(map_back[u], map_back[v]).unwrap()] = ec.color(eid);
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(edge_color::EdgeColoring::new(colors, 3)))
}

fn component_edge_coloring(sub: &Graph) -> Result<Option<edge_color::EdgeColoring>, String> {
    let spider_free = patterns::find_spider_subgraph(sub, 3, 3, 3)
        .map_err(|e| e.to_string())?
        .is_none();
    if !spider_free {
        return edge_color::chromatic_index_backtracking(sub, 3).map_err(|e| e.to_string());
    }
    let has_c5 = patterns::find_induced(&patterns::c5(), sub)
        .map_err(|e| e.to_string())?
        .is_some();
    let verdict = if has_c5 {
        decide::decide_n222_with_c5(sub)
    } else {
        decide::decide_n222_no_c5(sub)
    }
    .map_err(|e| e.to_string())?;
    match verdict.outcome {
        Outcome::Colorable(decide::ColorCert::Edge(ec)) => Ok(Some(ec)),
        Outcome::Colorable(_) => Err("expected an edge coloring".into()),
        _ => Ok(None),
    }
}

fn run_detect(g: &Graph, pattern: &str) -> Result<Option<Vec<usize>>, String> {
    let parse_triple = |spec: &str| -> Result<(usize, usize, usize), String> {
        let nums: Vec<usize> = spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| format!("bad parameters {spec}"))
            })
            .collect::<Result<_, _>>()?;
        if nums.len() != 3 {
            return Err(format!("expected three parameters, got {spec}"));
        }
        Ok((nums[0], nums[1], nums[2]))
    };
    if let Some(spec) = pattern.strip_prefix("net:") {
        let (i, j, k) = parse_triple(spec)?;
        let net = patterns::build_net(i, j, k).map_err(|e| e.to_string())?;
        let m = patterns::find_induced_with_limit(&net, g, net.n()).map_err(|e| e.to_string())?;
        return Ok(m.map(|m| m.mapping));
    }
    if let Some(spec) = pattern.strip_prefix("spider:") {
        let (i, j, k) = parse_triple(spec)?;
        let m = patterns::find_spider_subgraph(g, i, j, k).map_err(|e| e.to_string())?;
        return Ok(m.map(|m| m.mapping));
    }
    let p = match pattern {
        "claw" => patterns::claw(),
        "diamond" => patterns::diamond(),
        "k4" => patterns::k4(),
        "c5" => patterns::c5(),
        other => return Err(format!("unknown pattern {other}")),
    };
    let m = patterns::find_induced(&p, g).map_err(|e| e.to_string())?;
    Ok(m.map(|m| m.mapping))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
