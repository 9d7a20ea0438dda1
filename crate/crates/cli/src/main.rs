//! `indmorse`: generate graphs, build acyclic matchings on their
//! independence complexes, and check the results against the oracles.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 input
//! error, 3 unsupported graph (some stage has no simplicial vertex).

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use indmorse::complex::independence_complex;
use indmorse::counts::{critical_fvector_recursive, critical_fvector_with, grid_count_table, grid_critical_fvector};
use indmorse::generators::{grid_graph, power_graph_cyclic, random_chordal, standard_graph, GridSpec, StandardKind};
use indmorse::graph::GraphJson;
use indmorse::homology::{betti_gf2, homology_integer};
use indmorse::homotopy::{check_domination_bound, classify, consistency_with_homology, HomotopyType};
use indmorse::matching::{critical_simplices, find_v_cycle, verify_matching, Matching};
use indmorse::morse::{Driver, MorseBuilder};
use indmorse::{is_chordal, Error, Graph};

use report::{AnalysisReport, GammaCheck, GraphSummary, OracleCheck, Timings};

#[derive(Parser)]
#[command(name = "indmorse", version, about = "Acyclic matchings on independence complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as JSON.
    Gen(GenArgs),
    /// Build the matching (or just its counts) and report the homotopy type.
    Analyze(AnalyzeArgs),
    /// Check that a matching is valid and acyclic on I(G).
    Verify { graph: PathBuf, matching: PathBuf },
    /// Run every pipeline that applies and check that they agree.
    Compare {
        graph: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Integer homology of I(G).
    Homology {
        graph: PathBuf,
        /// Betti numbers over GF(2) as well.
        #[arg(long)]
        gf2: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Grid,
    Power,
    ChordalRandom,
    Path,
    Cycle,
    Complete,
    Empty,
}

#[derive(Args)]
struct GenArgs {
    kind: Kind,
    /// Grid rows beyond the first, or the exponent of p.
    #[arg(long)]
    m: Option<usize>,
    /// Grid columns beyond the first, the exponent of q, or the vertex count.
    #[arg(long)]
    n: Option<usize>,
    /// Grid cell sizes, row-major, comma separated (default all 1).
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chance of joining each extra member of the chosen clique.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Explicit,
    Counts,
}

#[derive(Clone, Copy, ValueEnum)]
enum DriverArg {
    Auto,
    Chordal,
    Grid,
}

impl From<DriverArg> for Driver {
    fn from(d: DriverArg) -> Driver {
        match d {
            DriverArg::Auto => Driver::Auto,
            DriverArg::Chordal => Driver::Chordal,
            DriverArg::Grid => Driver::Grid,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Explicit)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = DriverArg::Auto)]
    driver: DriverArg,
    /// Also compute integer homology and check it against the homotopy type.
    #[arg(long)]
    oracle: bool,
    /// Also check sphere dimensions against the domination number.
    #[arg(long)]
    gamma: bool,
    /// Include the matched pairs (explicit mode).
    #[arg(long)]
    pairs: bool,
    /// Include the grid count table (counts mode, grid driver).
    #[arg(long)]
    table: bool,
    /// Include wall-clock timings; the report is then no longer byte-stable.
    #[arg(long)]
    timings: bool,
    /// Human-readable summary instead of JSON.
    #[arg(long)]
    pretty: bool,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_source(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input_error(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// The graph and the generator record written by `gen`, if any.
fn read_graph(path: &Path) -> CliResult<(Graph, Option<Value>)> {
    let mut value: Value =
        serde_json::from_str(&read_source(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let generator = value.as_object_mut().and_then(|o| o.remove("generator"));
    let graph = serde_json::from_value(value).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok((graph, generator))
}

fn emit(value: &impl serde::Serialize, out: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            io::stdout().write_all(text.as_bytes()).ok();
            Ok(())
        }
    }
}

fn cmd_gen(args: GenArgs) -> CliResult<()> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| input_error(format!("--{flag} is required")));
    let (graph, generator) = match args.kind {
        Kind::Grid => {
            let (m, n) = (need(args.m, "m")?, need(args.n, "n")?);
            let sizes = args.sizes.unwrap_or_else(|| vec![1; (m + 1) * (n + 1)]);
            let spec = GridSpec::from_row_major(m, n, &sizes)?;
            (
                grid_graph(&spec),
                json!({"kind": "grid", "m": m, "n": n, "sizes": sizes}),
            )
        }
        Kind::Power => {
            let (m, n) = (need(args.m, "m")?, need(args.n, "n")?);
            let p = args.p.ok_or_else(|| input_error("--p is required"))?;
            let q = args.q.ok_or_else(|| input_error("--q is required"))?;
            let exponent = |e: usize| u32::try_from(e).map_err(|_| input_error("exponent too large"));
            let graph = power_graph_cyclic(p, q, exponent(m)?, exponent(n)?)?;
            (graph, json!({"kind": "power", "p": p, "q": q, "m": m, "n": n}))
        }
        Kind::ChordalRandom => {
            let n = need(args.n, "n")?;
            let graph = random_chordal(n, args.density, args.seed)?;
            let meta = json!({"kind": "chordal-random", "n": n, "density": args.density, "seed": args.seed, "prng": "chacha8"});
            (graph, meta)
        }
        Kind::Path | Kind::Cycle | Kind::Complete | Kind::Empty => {
            let n = need(args.n, "n")?;
            let (kind, name) = match args.kind {
                Kind::Path => (StandardKind::Path, "path"),
                Kind::Cycle => (StandardKind::Cycle, "cycle"),
                Kind::Complete => (StandardKind::Complete, "complete"),
                _ => (StandardKind::Empty, "empty"),
            };
            (standard_graph(kind, n)?, json!({"kind": name, "n": n}))
        }
    };
    let mut value = serde_json::to_value(GraphJson::from(graph)).expect("serialisable");
    value["generator"] = generator;
    emit(&value, args.out.as_deref())
}

fn summary(graph: &Graph) -> GraphSummary {
    GraphSummary {
        n: graph.order(),
        edges: graph.edge_count(),
        chordal: is_chordal(graph),
        grid: GridSpec::from_labels(graph).ok().map(|s| s.sizes().to_vec()),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult<u8> {
    let (graph, generator) = read_graph(&args.graph)?;
    let driver = Driver::from(args.driver);
    let mut timings = Timings::default();
    let mut report = AnalysisReport {
        graph: summary(&graph),
        generator,
        mode: if args.mode == Mode::Explicit {
            "explicit"
        } else {
            "counts"
        },
        driver: driver.name(),
        ..AnalysisReport::default()
    };

    let start = Instant::now();
    let homotopy = match args.mode {
        Mode::Explicit => {
            let mut builder = MorseBuilder::new(&graph, driver)?;
            let result = builder.build()?;
            timings.construction_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            let x = independence_complex(&graph)?;
            let homotopy = classify(&x, &result)?;
            report.critical_f = Some(result.critical_f().clone());
            report.special_zero = result.special_zero();
            if args.pairs {
                report.pairs = Some(result.matching().clone());
            }
            if args.oracle {
                let start = Instant::now();
                let profile = homology_integer(&x)?;
                timings.oracle_ms = Some(start.elapsed().as_secs_f64() * 1e3);
                report.oracle = Some(OracleCheck {
                    consistent: consistency_with_homology(&homotopy, &profile),
                    betti: profile.betti,
                    torsion_free: profile.torsion_free,
                });
            }
            homotopy
        }
        Mode::Counts => {
            let counts = critical_fvector_with(&graph, driver)?;
            timings.construction_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            if args.table && driver == Driver::Grid {
                let spec = GridSpec::from_labels(&graph)?;
                if spec.m() >= 1 && spec.n() >= 1 {
                    report.table = Some(serde_json::to_value(grid_count_table(&spec)?).expect("serialisable"));
                }
            }
            // Counts pin down the type only where every critical cell but one
            // vertex is known to be maximal.
            let homotopy = if driver == Driver::Grid || report.graph.chordal {
                HomotopyType::from_critical(&counts)
            } else {
                HomotopyType::Unclassified("counts alone do not determine the homotopy type".into())
            };
            report.critical_f = Some(counts);
            if args.oracle {
                let x = independence_complex(&graph)?;
                let profile = homology_integer(&x)?;
                report.oracle = Some(OracleCheck {
                    consistent: consistency_with_homology(&homotopy, &profile),
                    betti: profile.betti,
                    torsion_free: profile.torsion_free,
                });
            }
            homotopy
        }
    };
    if args.gamma {
        report.gamma = Some(match (graph.domination_number(), homotopy.is_classified()) {
            (Ok(gamma), true) => GammaCheck::Checked {
                gamma,
                bound_holds: check_domination_bound(&graph, &homotopy)?,
            },
            (Ok(_), false) => GammaCheck::Skipped {
                reason: "homotopy type unclassified".into(),
            },
            (Err(e), _) => GammaCheck::Skipped { reason: e.to_string() },
        });
    }
    report.homotopy = Some(homotopy);
    if args.timings {
        timings.total_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        report.timings = Some(timings);
    }

    let failed = report.oracle.as_ref().is_some_and(|o| !o.consistent)
        || matches!(report.gamma, Some(GammaCheck::Checked { bound_holds: false, .. }));
    if args.pretty {
        print!("{}", report.pretty());
    } else {
        emit(&report, None)?;
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_verify(graph: &Path, matching: &Path) -> CliResult<u8> {
    let (graph, _) = read_graph(graph)?;
    let matching: Matching = serde_json::from_str(&read_source(matching)?)
        .map_err(|e| input_error(format!("{}: {e}", matching.display())))?;
    let x = independence_complex(&graph)?;
    let outcome = match verify_matching(&x, &matching) {
        Err(defect) => json!({"valid": false, "acyclic": null, "defect": defect.to_string()}),
        Ok(_) => match find_v_cycle(&x, &matching)? {
            Some(cycle) => json!({"valid": true, "acyclic": false, "cycle": cycle}),
            None => {
                let (critical, counts) = critical_simplices(&x, &matching)?;
                json!({"valid": true, "acyclic": true, "critical_f": counts, "critical": critical})
            }
        },
    };
    let ok = outcome["acyclic"] == json!(true);
    emit(&outcome, None)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_compare(path: &Path, pretty: bool) -> CliResult<u8> {
    let (graph, _) = read_graph(path)?;
    let spec = GridSpec::from_labels(&graph).ok();
    let driver = if spec.is_some() { Driver::Grid } else { Driver::Auto };
    let x = independence_complex(&graph)?;
    let result = MorseBuilder::new(&graph, driver)?.build()?;
    let homotopy = classify(&x, &result)?;
    let constructed = result.critical_f().clone();
    let recursive = critical_fvector_recursive(&graph)?;
    let closed = spec.as_ref().map(grid_critical_fvector).transpose()?;
    let profile = homology_integer(&x)?;

    let total = |f: &indmorse::CriticalFVector| f.total();
    let betti_total: usize = profile.betti.iter().sum();
    let mut agree = recursive == constructed && closed.as_ref().is_none_or(|c| *c == constructed);
    let consistent = consistency_with_homology(&homotopy, &profile);
    agree &= consistent && total(&constructed) == betti_total.into();

    let value = json!({
        "driver": driver.name(),
        "constructed": constructed,
        "recursive": recursive,
        "grid_recurrences": closed,
        "homotopy": homotopy,
        "betti": profile.betti,
        "torsion_free": profile.torsion_free,
        "agree": agree,
    });
    if pretty {
        println!("driver        {}", driver.name());
        println!("constructed   {constructed}");
        println!("recursive     {recursive}");
        if let Some(closed) = &closed {
            println!("recurrences   {closed}");
        }
        println!("homotopy      {}", report::describe(&homotopy));
        println!("betti         {:?}", profile.betti);
        println!("agree         {agree}");
    } else {
        emit(&value, None)?;
    }
    Ok(if agree { 0 } else { 1 })
}

fn cmd_homology(path: &Path, gf2: bool) -> CliResult<u8> {
    let (graph, _) = read_graph(path)?;
    let x = independence_complex(&graph)?;
    let profile = homology_integer(&x)?;
    let mut value = serde_json::to_value(&profile).expect("serialisable");
    if gf2 {
        value["betti_gf2"] = json!(betti_gf2(&x)?);
    }
    emit(&value, None)?;
    Ok(0)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args).map(|()| 0),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify { graph, matching } => cmd_verify(&graph, &matching),
        Command::Compare { graph, pretty } => cmd_compare(&graph, pretty),
        Command::Homology { graph, gf2 } => cmd_homology(&graph, gf2),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("indmorse: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
