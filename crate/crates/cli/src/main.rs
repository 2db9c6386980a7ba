use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monact::actiongraph::{
    dual_graph, generic_graph, graph_from_json, graph_to_dot, graph_to_json, graph_to_tsv, mixed_to_dot, mixed_to_json,
    regular_graph, scc, simplify_mixed, ActionGraph,
};
use monact::diagramcat::{catalog_mixed, catalog_to_json, classify_window, smith_classify, DiagramFamily, EdgeGraph};
use monact::matmod::{subalgebra_graph, SubalgebraCase};
use monact::mckay::{mckay_certify, GroupSpec};
use monact::repcalc::{tensor_decompose, weight_multiplicities, weyl_dimension};
use monact::rootdata::{Family, RootSystem, Weight};
use monact::selfcheck;
use monact::Error;

#[derive(Parser)]
#[command(
    name = "monact",
    version,
    about = "Tensor products, action graphs and Dynkin-diagram classification"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKindArg {
    Regular,
    Generic,
    #[value(name = "subalg-h")]
    SubalgH,
    #[value(name = "subalg-e")]
    SubalgE,
    #[value(name = "subalg-b")]
    SubalgB,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose L(λ) ⊗ L(μ).
    Tensor {
        family: Family,
        rank: usize,
        #[arg(allow_hyphen_values = true)]
        lam: Weight,
        #[arg(allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Weyl dimension of L(λ).
    Dims { family: Family, rank: usize, lam: Weight },
    /// Weight multiplicities of L(λ) as a table.
    Weights {
        family: Family,
        rank: usize,
        lam: Weight,
        /// Only dominant weights.
        #[arg(long)]
        dominant: bool,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Build an action graph on a finite window.
    Graph {
        #[arg(value_enum)]
        kind: GraphKindArg,
        family: Option<Family>,
        rank: Option<usize>,
        generator: Option<Weight>,
        #[arg(long)]
        window: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Emit the graph built with the dual generator instead.
        #[arg(long)]
        dual: bool,
        /// Emit the mixed simplification (opposite arrow pairs become edges).
        #[arg(long)]
        mixed: bool,
        /// Emit the strongly connected components instead of the graph.
        #[arg(long)]
        components: bool,
    },
    /// Recognise a graph window (JSON from `graph`) as an infinite diagram.
    Classify {
        file: String,
        /// Base vertex: a weight such as `0` or `1,-1`, a label, or `#index`.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long)]
        max_radius: Option<usize>,
    },
    /// Certified McKay graph of a finite subgroup of SL2.
    Mckay { family: String, n: Option<usize> },
    /// Spectral classification of a finite graph (edge list or action graph JSON).
    Smith {
        file: String,
        /// Largest acceptable error bound on the floating spectral radius.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Catalog diagram by family and size.
    Catalog {
        family: DiagramFamily,
        size: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the acceptance checks.
    Selfcheck {
        #[arg(long, default_value_t = selfcheck::DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Outcome of a command: exit code 1 for rejected input, 2 for a failed
/// internal consistency check.
enum Failure {
    Domain(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type CmdResult = Result<String, Failure>;

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise")
}

fn root_system(family: Family, rank: usize) -> Result<RootSystem, Failure> {
    Ok(RootSystem::new(family, rank)?)
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| domain(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| domain(format!("{path} is not valid JSON: {e}")))
}

fn cmd_tensor(family: Family, rank: usize, lam: &Weight, mu: &Weight, format: Format) -> CmdResult {
    let rs = root_system(family, rank)?;
    let d = tensor_decompose(&rs, lam, mu)?;
    match format {
        Format::Text => Ok(d.to_string()),
        Format::Json => {
            let parts: Vec<Value> = d
                .parts()
                .iter()
                .rev()
                .map(|(w, m)| json!({"highest_weight": w.to_string(), "multiplicity": m}))
                .collect();
            Ok(pretty(&json!({
                "type": rs.name(),
                "factors": [lam.to_string(), mu.to_string()],
                "parts": parts,
                "dimension": d.dimension(&rs)?.to_string(),
            })))
        }
        Format::Tsv => {
            let mut out = String::from("highest_weight\tmultiplicity\n");
            for (w, m) in d.parts().iter().rev() {
                out.push_str(&format!("{w}\t{m}\n"));
            }
            Ok(out.trim_end().to_string())
        }
        Format::Dot => Err(domain("tensor supports text, json and tsv")),
    }
}

fn cmd_weights(family: Family, rank: usize, lam: &Weight, dominant: bool, format: Format) -> CmdResult {
    let rs = root_system(family, rank)?;
    let ch = weight_multiplicities(&rs, lam)?;
    let rows: Vec<(Weight, i64)> = if dominant {
        ch.dominant_part().into_iter().collect()
    } else {
        ch.iter().map(|(w, m)| (w.clone(), *m)).collect()
    };
    match format {
        Format::Tsv | Format::Text => {
            let mut out = String::from("weight\tmultiplicity");
            for (w, m) in rows {
                out.push_str(&format!("\n{w}\t{m}"));
            }
            Ok(out)
        }
        Format::Json => Ok(pretty(&Value::Array(
            rows.into_iter()
                .map(|(w, m)| json!({"weight": w.to_string(), "multiplicity": m}))
                .collect(),
        ))),
        Format::Dot => Err(domain("weights supports tsv and json")),
    }
}

fn build_graph(
    kind: GraphKindArg,
    family: Option<Family>,
    rank: Option<usize>,
    generator: Option<&Weight>,
    window: i64,
) -> Result<ActionGraph, Failure> {
    let sub = |case| -> Result<ActionGraph, Failure> {
        if family.is_some() || generator.is_some() {
            return Err(domain("subalgebra graphs take no type, rank or generator"));
        }
        let n = usize::try_from(window).map_err(|_| domain("window must be non-negative"))?;
        Ok(subalgebra_graph(case, n)?)
    };
    match kind {
        GraphKindArg::SubalgH => sub(SubalgebraCase::H),
        GraphKindArg::SubalgE => sub(SubalgebraCase::E),
        GraphKindArg::SubalgB => sub(SubalgebraCase::B),
        GraphKindArg::Regular | GraphKindArg::Generic => {
            let (Some(family), Some(rank), Some(gen)) = (family, rank, generator) else {
                return Err(domain("regular and generic graphs need TYPE RANK GENERATOR"));
            };
            let rs = root_system(family, rank)?;
            Ok(if kind == GraphKindArg::Regular {
                regular_graph(&rs, gen, window)?
            } else {
                generic_graph(&rs, gen, window)?
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_graph(
    kind: GraphKindArg,
    family: Option<Family>,
    rank: Option<usize>,
    generator: Option<&Weight>,
    window: i64,
    format: Format,
    dual: bool,
    mixed: bool,
    components: bool,
) -> CmdResult {
    let mut g = build_graph(kind, family, rank, generator, window)?;
    if dual {
        g = dual_graph(&g)?;
    }
    if components {
        let s = scc(&g);
        let comps: Vec<Value> = s
            .components
            .iter()
            .map(|c| {
                json!({
                    "vertices": c.iter().map(|&v| g.vertices()[v].label.clone()).collect::<Vec<_>>(),
                    "interior": c.iter().all(|&v| g.vertices()[v].interior),
                })
            })
            .collect();
        // counts only describe the infinite graph when no component touches the frontier
        let certified = s.components.iter().all(|c| c.iter().all(|&v| g.vertices()[v].interior));
        return Ok(pretty(&json!({
            "count": s.count(),
            "certified": certified,
            "components": comps,
            "condensation": s.condensation.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })));
    }
    if mixed {
        let m = simplify_mixed(&g);
        return match format {
            Format::Dot => Ok(mixed_to_dot(&m).trim_end().to_string()),
            Format::Json => Ok(pretty(&mixed_to_json(&m))),
            _ => Err(domain("mixed graphs support dot and json")),
        };
    }
    match format {
        Format::Dot => Ok(graph_to_dot(&g).trim_end().to_string()),
        Format::Json => Ok(pretty(&graph_to_json(&g))),
        Format::Tsv => Ok(graph_to_tsv(&g).trim_end().to_string()),
        Format::Text => Err(domain("graph supports dot, json and tsv")),
    }
}

/// Resolves `--base`: a weight first, then a label, then `#index`.
fn resolve_base(g: &ActionGraph, base: Option<&str>) -> Result<usize, Failure> {
    let Some(base) = base else {
        // default: the zero weight if present, else the first interior vertex
        return g
            .vertices()
            .iter()
            .position(|v| v.weight.as_ref().is_some_and(|w| w.0.iter().all(|&c| c == 0)))
            .or_else(|| g.interior_indices().first().copied())
            .ok_or_else(|| domain("graph has no interior vertex"));
    };
    if let Some(idx) = base.strip_prefix('#') {
        let i: usize = idx.parse().map_err(|_| domain(format!("bad vertex index {idx:?}")))?;
        return if i < g.len() {
            Ok(i)
        } else {
            Err(domain(format!("vertex index {i} outside 0..{}", g.len())))
        };
    }
    if let Ok(w) = base.parse::<Weight>() {
        if let Some(i) = g.index_of_weight(&w) {
            return Ok(i);
        }
    }
    g.index_of_label(base)
        .ok_or_else(|| domain(format!("no vertex matches {base:?}")))
}

fn cmd_classify(file: &str, base: Option<&str>, max_radius: Option<usize>) -> CmdResult {
    let g = graph_from_json(&read_json(file)?)?;
    let b = resolve_base(&g, base)?;
    let verdict = classify_window(&simplify_mixed(&g), b, max_radius)?;
    let mut out = verdict.to_json();
    out["base"] = json!(g.vertices()[b].label);
    Ok(pretty(&out))
}

fn cmd_mckay(family: &str, n: Option<usize>) -> CmdResult {
    let spec = GroupSpec::parse(family, n)?;
    let report = mckay_certify(spec)?;
    if report.diagram != spec.expected_diagram() {
        return Err(Failure::Internal(format!(
            "McKay graph of {spec} is {}, expected {}",
            report.diagram,
            spec.expected_diagram()
        )));
    }
    Ok(pretty(&report.to_json()))
}

fn edge_graph_from(v: &Value) -> Result<EdgeGraph, Failure> {
    if v.get("order").is_some() {
        Ok(EdgeGraph::from_json(v)?)
    } else {
        let g = graph_from_json(v)?;
        Ok(EdgeGraph::from_mixed(&simplify_mixed(&g)))
    }
}

fn cmd_smith(file: &str, tolerance: f64) -> CmdResult {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(domain("tolerance must be positive"));
    }
    let g = edge_graph_from(&read_json(file)?)?;
    let verdict = smith_classify(&g)?;
    let mut out = verdict.to_json();
    out["advisory_within_tolerance"] = json!(verdict.spectral.error_bound <= tolerance);
    Ok(pretty(&out))
}

fn cmd_catalog(family: DiagramFamily, size: usize, format: Format) -> CmdResult {
    match format {
        Format::Json => Ok(pretty(&catalog_to_json(family, size)?)),
        Format::Dot => Ok(mixed_to_dot(&catalog_mixed(family, size)?).trim_end().to_string()),
        _ => Err(domain("catalog supports json and dot")),
    }
}

fn cmd_selfcheck(seed: u64, only: &[u8], format: Format) -> CmdResult {
    let wanted = |id: u8| only.is_empty() || only.contains(&id);
    if let Some(bad) = only.iter().find(|&&id| !(1..=8).contains(&id)) {
        return Err(domain(format!("no criterion {bad}")));
    }
    let checks: [(u8, Box<dyn Fn() -> selfcheck::CriterionReport>); 8] = [
        (1, Box::new(selfcheck::check_tensor_oracle)),
        (2, Box::new(move || selfcheck::check_dimensions(seed))),
        (3, Box::new(selfcheck::check_rank_one_windows)),
        (4, Box::new(selfcheck::check_generic_grid)),
        (5, Box::new(selfcheck::check_mckay)),
        (6, Box::new(selfcheck::check_smith)),
        (7, Box::new(selfcheck::check_subalgebras)),
        (8, Box::new(selfcheck::check_transpose)),
    ];
    let reports: Vec<_> = checks.iter().filter(|(id, _)| wanted(*id)).map(|(_, f)| f()).collect();
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let text = match format {
        Format::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
        _ => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        emit(&text);
        Err(Failure::Internal(format!("criteria failed: {failed:?}")))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Tensor {
            family,
            rank,
            lam,
            mu,
            format,
        } => cmd_tensor(family, rank, &lam, &mu, format),
        Command::Dims { family, rank, lam } => {
            let rs = root_system(family, rank)?;
            Ok(weyl_dimension(&rs, &lam)?.to_string())
        }
        Command::Weights {
            family,
            rank,
            lam,
            dominant,
            format,
        } => cmd_weights(family, rank, &lam, dominant, format),
        Command::Graph {
            kind,
            family,
            rank,
            generator,
            window,
            format,
            dual,
            mixed,
            components,
        } => cmd_graph(
            kind,
            family,
            rank,
            generator.as_ref(),
            window,
            format,
            dual,
            mixed,
            components,
        ),
        Command::Classify { file, base, max_radius } => cmd_classify(&file, base.as_deref(), max_radius),
        Command::Mckay { family, n } => cmd_mckay(&family, n),
        Command::Smith { file, tolerance } => cmd_smith(&file, tolerance),
        Command::Catalog { family, size, format } => cmd_catalog(family, size, format),
        Command::Selfcheck { seed, only, format } => cmd_selfcheck(seed, &only, format),
    }
}

/// Writes to stdout; a closed pipe (`monact … | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn single_line(msg: &str) -> String {
    msg.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", single_line(first.trim_start_matches("error:").trim()));
            return ExitCode::from(1);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {}", single_line(&e.to_string()));
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {}", single_line(&msg));
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {}", single_line(&msg));
            ExitCode::from(2)
        }
    }
}
