//! Command-line front end: validation, invariants, flips, walks,
//! enumeration, spin forms, and the batch verification suites.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fatgraph::enumerate::{enumerate, EnumTask, RandomWalk, WalkSpec};
use fatgraph::graph::{Dart, Fatgraph, GraphKind};
use fatgraph::io as fgio;
use fatgraph::marking::initial_marking;
use fatgraph::spin::{form_difference, q_bar, q_g, q_membership, q_wind};
use fatgraph::verify::{self, SuiteOutcome, DEFAULT_SEED};
use fatgraph::xi::{xi, xi_punctured};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "fatgraph",
    version,
    about = "Trivalent fatgraph spines: invariants and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    Bordered,
    Punctured,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> GraphKind {
        match k {
            KindArg::Bordered => GraphKind::Bordered,
            KindArg::Punctured => GraphKind::Punctured,
        }
    }
}

#[derive(Args)]
struct FileArg {
    /// Input spine in fatgraph v1 text form.
    #[arg(long)]
    file: PathBuf,
    /// Emit a machine-readable report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check every spine invariant of a file.
    Validate(FileArg),
    /// Summarize a spine: counts, boundary order, vertex types.
    Info(FileArg),
    /// The homology-valued invariant of a spine.
    Xi {
        #[command(flatten)]
        file: FileArg,
        /// Print only the mod-2 bit vector.
        #[arg(long)]
        mod2: bool,
    },
    /// Accumulate the flip cocycles along an edge sequence.
    Cocycle {
        #[command(flatten)]
        file: FileArg,
        /// Whitespace-separated edge ids, flipped left to right.
        #[arg(long)]
        flips: String,
    },
    /// Flip one edge and print or write the result.
    Flip {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        edge: usize,
        /// Write the flipped spine here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random flip walk.
    Walk {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, value_enum, default_value = "bordered")]
        kind: KindArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively enumerate isomorphism classes at small genus.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "bordered")]
        kind: KindArg,
        /// Write one fatgraph v1 file per class into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// The three quadratic forms of a bordered spine.
    Spin(FileArg),
    /// Run a verification suite.
    Verify {
        /// relations | delta-xi | gluing | tailslide | spin | balanced |
        /// primitivity | all
        suite: String,
        /// Cap the exhaustive census genus.
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Run the full census sweep (always on for genus <= 2).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Sample count for search modes (primitivity at genus >= 3).
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long)]
        json: bool,
        /// Where to write the first counterexample, if any.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replay the suite against one spine file instead of the census.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Plug a guest spine into the right side of a host dart.
    Glue {
        /// Host spine file.
        #[arg(long)]
        file: PathBuf,
        /// Host dart to subdivide.
        #[arg(long)]
        at: usize,
        /// Guest spine file.
        #[arg(long)]
        guest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Slide the tail: flip the edge right after the tail.
    Tailslide {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("FATGRAPH_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Info(args) => cmd_info(args),
        Command::Xi { file, mod2 } => cmd_xi(file, mod2),
        Command::Cocycle { file, flips } => cmd_cocycle(file, &flips),
        Command::Flip { file, edge, out } => cmd_flip(file, edge, out),
        Command::Walk {
            genus,
            kind,
            seed,
            steps,
            json,
        } => cmd_walk(genus, kind.into(), seed, steps, json),
        Command::Enumerate {
            genus,
            kind,
            out,
            json,
        } => cmd_enumerate(genus, kind.into(), out, json),
        Command::Spin(args) => cmd_spin(args),
        Command::Verify {
            suite,
            genus,
            exhaustive,
            seed,
            steps,
            json,
            out,
            file,
        } => cmd_verify(&suite, genus, exhaustive, seed, steps, json, out, file),
        Command::Glue {
            file,
            at,
            guest,
            out,
            json,
        } => cmd_glue(file, at, guest, out, json),
        Command::Tailslide { file, out } => cmd_tailslide(file, out),
    }
}

fn load(path: &std::path::Path) -> Result<Fatgraph> {
    fgio::read_file(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_validate(args: FileArg) -> Result<i32> {
    let graph = load(&args.file)?;
    match graph.validate() {
        Ok(report) => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "valid": true,
                        "kind": report.kind.to_string(),
                        "genus": report.genus,
                        "vertices": report.vertices,
                        "edges": report.edges,
                    })
                );
            } else {
                println!(
                    "valid {} spine: genus {}, {} vertices, {} edges",
                    report.kind, report.genus, report.vertices, report.edges
                );
            }
            Ok(0)
        }
        Err(err) => {
            if args.json {
                println!(
                    "{}",
                    json!({ "valid": false, "violation": err.to_string() })
                );
            } else {
                println!("invalid: {err}");
            }
            Ok(1)
        }
    }
}

fn cmd_info(args: FileArg) -> Result<i32> {
    let graph = load(&args.file)?;
    let report = graph
        .validate()
        .map_err(|e| anyhow!("invalid spine: {e}"))?;
    let bo = graph.boundary_order()?;
    let order: Vec<usize> = bo.order.iter().map(|d| d.0).collect();
    let mut value = json!({
        "kind": report.kind.to_string(),
        "genus": report.genus,
        "vertices": report.vertices,
        "edges": report.edges,
        "boundary_order": order,
        "canonical": graph.canonical_form()?,
    });
    if graph.kind() == GraphKind::Bordered {
        let frames = graph.classify_vertices(&bo)?;
        let types: Vec<u8> = frames
            .iter()
            .map(|f| {
                if f.vtype == fatgraph::VertexType::Type1 {
                    1
                } else {
                    2
                }
            })
            .collect();
        value["vertex_types"] = json!(types);
        value["chord_diagram"] = json!(graph.is_chord_diagram(&bo));
    } else {
        value["balanced"] = json!(graph.is_balanced(&bo)?);
    }
    if args.json {
        println!("{value}");
    } else {
        println!("{}", serde_json::to_string_pretty(&value)?);
    }
    Ok(0)
}

fn cmd_xi(args: FileArg, mod2_only: bool) -> Result<i32> {
    let graph = load(&args.file)?;
    graph
        .validate()
        .map_err(|e| anyhow!("invalid spine: {e}"))?;
    match graph.kind() {
        GraphKind::Bordered => {
            let bo = graph.boundary_order()?;
            let m = initial_marking(&graph, &bo)?;
            let x = xi(&graph, &bo, &m)?;
            if args.json {
                let table: Vec<Value> = x
                    .per_vertex
                    .iter()
                    .map(|(v, ev, fv, c)| {
                        json!({"vertex": v, "e_v": ev.0, "f_v": fv.0, "contribution": c.0})
                    })
                    .collect();
                println!(
                    "{}",
                    json!({"xi": x.xi.0, "xi_mod2": x.xi_mod2.0, "per_vertex": table})
                );
            } else if mod2_only {
                println!("xi_mod2={:?}", x.xi_mod2.0);
            } else {
                println!("xi={:?}", x.xi.0);
                println!("xi_mod2={:?}", x.xi_mod2.0);
                for (v, ev, fv, c) in &x.per_vertex {
                    println!("  vertex {v}: e_v={ev} f_v={fv} contribution={:?}", c.0);
                }
            }
        }
        GraphKind::Punctured => {
            let x = xi_punctured(&graph)?;
            if args.json {
                println!("{}", json!({"pairings": x.pairings, "mod2": x.mod2}));
            } else if mod2_only {
                println!("xi_mod2={:?}", x.mod2);
            } else {
                println!("xi_pairings={:?}", x.pairings);
                println!("xi_mod2={:?}", x.mod2);
            }
        }
    }
    Ok(0)
}

fn cmd_cocycle(args: FileArg, flips: &str) -> Result<i32> {
    let graph = load(&args.file)?;
    graph
        .validate()
        .map_err(|e| anyhow!("invalid spine: {e}"))?;
    let edges: Vec<usize> = flips
        .split_whitespace()
        .map(|w| w.parse::<usize>())
        .collect::<Result<_, _>>()
        .context("parsing flip sequence")?;
    let bo = graph.boundary_order()?;
    let m = initial_marking(&graph, &bo)?;
    let (sums, end, _) = fatgraph::cocycle::evaluate_sequence(&graph, &m, &edges)?;
    let j: Vec<Value> = sums
        .j
        .coeffs()
        .iter()
        .map(|(idx, v)| json!({"triple": idx, "coeff": v}))
        .collect();
    let value = json!({
        "steps": sums.steps,
        "j": j,
        "jprime": sums.jprime.0,
        "m": sums.m.0,
        "final_canonical": end.canonical_form()?,
    });
    if args.json {
        println!("{value}");
    } else {
        println!("{}", serde_json::to_string_pretty(&value)?);
    }
    Ok(0)
}

fn cmd_flip(args: FileArg, edge: usize, out: Option<PathBuf>) -> Result<i32> {
    let graph = load(&args.file)?;
    let mv = graph.flip(edge)?;
    emit_graph(&mv.result, &out, args.json)?;
    Ok(0)
}

fn cmd_walk(genus: usize, kind: GraphKind, seed: u64, steps: usize, json: bool) -> Result<i32> {
    if kind == GraphKind::Punctured {
        bail!("walks start from bordered spines");
    }
    let spec = WalkSpec {
        seed,
        steps,
        genus,
        start: None,
    };
    let mut walk = RandomWalk::new(&spec);
    let mut edges = Vec::with_capacity(steps);
    while let Some(mv) = walk.next() {
        edges.push(mv.edge);
    }
    let final_graph = walk.current().clone();
    final_graph.validate()?;
    let value = json!({
        "genus": genus,
        "seed": seed,
        "steps": edges.len(),
        "edges": edges,
        "final_canonical": final_graph.canonical_form()?,
    });
    if json {
        println!("{value}");
    } else {
        println!("{}", serde_json::to_string_pretty(&value)?);
    }
    Ok(0)
}

fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn cmd_enumerate(genus: usize, kind: GraphKind, out: Option<PathBuf>, json: bool) -> Result<i32> {
    let classes = enumerate(EnumTask {
        genus,
        kind,
        limit: None,
    })?;
    let mut names = Vec::with_capacity(classes.len());
    if let Some(dir) = &out {
        std::fs::create_dir_all(dir)?;
        for g in &classes {
            let text = g.serialize();
            let name = format!("{:016x}.fg", fnv1a(&text));
            std::fs::write(dir.join(&name), &text)?;
            names.push(name);
        }
    }
    let value = json!({
        "genus": genus,
        "kind": kind.to_string(),
        "classes": classes.len(),
        "files": names,
    });
    if json {
        println!("{value}");
    } else {
        println!("{} {} classes at genus {}", classes.len(), kind, genus);
    }
    Ok(0)
}

fn cmd_spin(args: FileArg) -> Result<i32> {
    let graph = load(&args.file)?;
    graph
        .validate()
        .map_err(|e| anyhow!("invalid spine: {e}"))?;
    if graph.kind() != GraphKind::Bordered {
        bail!("spin forms are defined for bordered spines");
    }
    let bo = graph.boundary_order()?;
    let m = initial_marking(&graph, &bo)?;
    let qg = q_g(&graph, &bo);
    let qb = q_bar(&graph, &bo);
    let qw = q_wind(&graph, &bo)?;
    let diff = form_difference(&graph, &bo, &m, &qg, &qb)?;
    let gram: Vec<Vec<u8>> =
        m.j.iter()
            .map(|row| row.iter().map(|&x| (x.rem_euclid(2)) as u8).collect())
            .collect();
    let edge_list = |f: &fatgraph::spin::EdgeForm| -> Vec<String> {
        f.values
            .iter()
            .enumerate()
            .map(|(e, v)| format!("{e}:{v}"))
            .collect()
    };
    let value = json!({
        "q_g": edge_list(&qg),
        "q_bar": edge_list(&qb),
        "q_wind": edge_list(&qw),
        "members": q_membership(&graph, &bo, &qg)?
            && q_membership(&graph, &bo, &qb)?
            && q_membership(&graph, &bo, &qw)?,
        "difference_class": diff.0,
        "gram": gram,
    });
    if args.json {
        println!("{value}");
    } else {
        println!("{}", serde_json::to_string_pretty(&value)?);
    }
    Ok(0)
}

fn suite_value(s: &SuiteOutcome) -> Value {
    json!({
        "suite": s.name,
        "checks": s.checks,
        "failures": s.failures.iter().map(|f| json!({
            "detail": f.detail,
            "seed": f.seed,
        })).collect::<Vec<_>>(),
        "notes": s.notes,
        "ok": s.ok(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    genus: usize,
    _exhaustive: bool,
    seed: u64,
    steps: usize,
    json: bool,
    out: Option<PathBuf>,
    file: Option<PathBuf>,
) -> Result<i32> {
    let cap = genus.min(2).max(1);
    if let Some(path) = file {
        // Replay mode: run the suite's checks on one spine.
        let graph = load(&path)?;
        let outcome = verify::run_file_suite(suite, &graph, seed)?;
        let failures = outcome.failures.len();
        if json {
            println!(
                "{}",
                json!({
                    "seed": seed,
                    "file": path.display().to_string(),
                    "suites": [suite_value(&outcome)],
                    "checks": outcome.checks,
                    "failures": failures,
                })
            );
        } else {
            println!(
                "{}: {} checks, {}",
                outcome.name,
                outcome.checks,
                if outcome.ok() {
                    "ok".to_string()
                } else {
                    format!("{failures} FAILURES")
                }
            );
            for f in &outcome.failures {
                println!("  FAIL {}", f.detail);
            }
            for n in &outcome.notes {
                println!("  note: {n}");
            }
        }
        return Ok(if failures > 0 { 1 } else { 0 });
    }
    let outcomes: Vec<SuiteOutcome> = match suite {
        "relations" => vec![verify::run_relations_capped(seed, 500, cap)?],
        "delta-xi" => vec![verify::run_delta_xi_capped(seed, 10_000, cap)?],
        "gluing" => vec![verify::run_gluing(seed, 50)?],
        "tailslide" => vec![verify::run_tailslide_capped(seed, 100, cap)?],
        "spin" => vec![verify::run_spin_capped(seed, cap)?],
        "balanced" => vec![verify::run_balanced_capped(seed, cap)?],
        // The census settles genus <= 2; beyond that the suite becomes
        // an open search that reports findings without asserting.
        "primitivity" if genus >= 3 => {
            vec![verify::run_primitivity_search(seed, genus, steps)?]
        }
        "primitivity" => vec![verify::run_primitivity_capped(seed, cap)?],
        "all" => verify::run_all_capped(seed, cap)?,
        other => {
            eprintln!("unknown suite {other:?} (expected relations | delta-xi | gluing | tailslide | spin | balanced | primitivity | all)");
            return Ok(2);
        }
    };
    let search_mode = suite == "primitivity" && genus >= 3;
    let census = enumerate(EnumTask {
        genus: cap,
        kind: GraphKind::Bordered,
        limit: None,
    })?
    .len();
    let total_checks: usize = outcomes.iter().map(|s| s.checks).sum();
    let failures: usize = outcomes.iter().map(|s| s.failures.len()).sum();
    let value = json!({
        "seed": seed,
        "genus_cap": cap,
        "classes": census,
        "suites": outcomes.iter().map(suite_value).collect::<Vec<_>>(),
        "checks": total_checks,
        "failures": failures,
    });
    if json {
        println!("{value}");
    } else {
        for s in &outcomes {
            println!(
                "{}: {} checks, {}",
                s.name,
                s.checks,
                if s.ok() {
                    "ok".to_string()
                } else {
                    format!("{} FAILURES", s.failures.len())
                }
            );
            for f in &s.failures {
                println!("  FAIL {}", f.detail);
            }
            for n in &s.notes {
                println!("  note: {n}");
            }
        }
        if search_mode {
            println!("{total_checks} spines searched, {failures} failures");
        } else {
            println!("{census} classes, {failures} failures ({total_checks} checks)");
        }
    }
    if failures > 0 {
        // Serialize the first counterexample for replay.
        if let Some(f) = outcomes.iter().flat_map(|s| s.failures.iter()).next() {
            if let Some(text) = &f.graph {
                let path = out.unwrap_or_else(|| PathBuf::from("counterexample.fg"));
                std::fs::write(&path, text)?;
                eprintln!(
                    "counterexample written to {} (seed {})",
                    path.display(),
                    f.seed.unwrap_or(seed)
                );
            }
        }
        return Ok(1);
    }
    Ok(0)
}

fn cmd_glue(
    file: PathBuf,
    at: usize,
    guest: PathBuf,
    out: Option<PathBuf>,
    json: bool,
) -> Result<i32> {
    let host = load(&file)?;
    let guest = load(&guest)?;
    let (glued, _, _) = host.glue(Dart(at), &guest)?;
    emit_graph(&glued, &out, json)?;
    Ok(0)
}

fn cmd_tailslide(args: FileArg, out: Option<PathBuf>) -> Result<i32> {
    let graph = load(&args.file)?;
    graph
        .validate()
        .map_err(|e| anyhow!("invalid spine: {e}"))?;
    let (mv, c) = graph.tail_slide()?;
    let bo = graph.boundary_order()?;
    let m = initial_marking(&graph, &bo)?;
    if args.json {
        println!(
            "{}",
            json!({
                "edge": mv.edge,
                "increment_dart": c.0,
                "increment_class": m.mu(c).0,
            })
        );
    } else {
        println!(
            "slid edge {} (increment dart {c}, class {:?})",
            mv.edge,
            m.mu(c).0
        );
    }
    if let Some(path) = out {
        std::fs::write(path, mv.result.serialize())?;
    }
    Ok(0)
}

fn emit_graph(graph: &Fatgraph, out: &Option<PathBuf>, json: bool) -> Result<()> {
    let text = graph.serialize();
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    } else if json {
        println!(
            "{}",
            json!({"graph": text, "canonical": graph.canonical_form()?})
        );
    } else {
        print!("{text}");
    }
    Ok(())
}
