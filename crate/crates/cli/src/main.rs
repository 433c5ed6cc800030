use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use normrig::bounds::{connectivity, graph_bounds, Connectivity, ValueConfig, ValueKind};
use normrig::experiments::{explore_edge_redundancy, explore_h8, explore_k2d, TreeHarnessOutcome};
use normrig::graph::{algebraic_connectivity, cut_vertices, edge_connectivity, vertex_connectivity};
use normrig::io::{fmt_num, parse_graph, parse_placement, parse_space, round_json};
use normrig::linf::{exact_linf_connectivity_with, LinfConfig, DEFAULT_DECOMPOSITION_CAP, ENUM_VERTEX_LIMIT};
use normrig::reproduce::reproduce;
use normrig::{make_framework, monochrome_decompose, Error, Graph, NormedSpace, Placement, SearchBudget};

const EXIT_MISMATCH: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "normrig", version, about = "Rigidity eigenvalues and algebraic connectivity in normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Seed for every randomised search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Comparison tolerance for eigenvalue decisions.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Search restarts.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Search steps per restart.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Maximum number of candidate orbits sent to realisation.
    #[arg(long, global = true)]
    candidates: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic connectivity and connectivity numbers of a graph.
    Fiedler {
        #[arg(long)]
        graph: String,
    },
    /// Rigidity spectrum of one framework.
    Rigidity {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        placement: String,
        #[arg(long)]
        space: String,
    },
    /// a(G, X): exact for small ℓ∞ inputs, otherwise a search lower bound.
    AlgConn {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        space: String,
    },
    /// Recompute every tabulated closed-form value.
    Reproduce,
    /// Run an exploration harness.
    Explore {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    K2d,
    Redrig,
    H8,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::Unsatisfiable { .. } => Failure::Budget(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

/// A finished command: its JSON body, table lines, and exit code.
struct Report {
    command: &'static str,
    body: Value,
    lines: Vec<String>,
    code: u8,
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_space(desc: &str) -> Result<NormedSpace, Failure> {
    Ok(parse_space(desc)?.load()?)
}

fn budget(opts: &Opts, default: SearchBudget) -> SearchBudget {
    SearchBudget::new(opts.restarts.unwrap_or(default.restarts), opts.steps.unwrap_or(default.steps))
}

fn kv(key: &str, value: impl std::fmt::Display) -> String {
    format!("{key:<30} {value}")
}

fn num(x: f64) -> String {
    fmt_num(x)
}

fn points(p: &Placement) -> String {
    let pts: Vec<String> = p.points().iter().map(|q| format!("({})", q.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", "))).collect();
    pts.join(" ")
}

fn fiedler(path: &str) -> Result<Report, Failure> {
    let g = load_graph(path)?;
    let a = algebraic_connectivity(&g)?;
    let kv_ = vertex_connectivity(&g)?;
    let ke = edge_connectivity(&g)?;
    let cuts = cut_vertices(&g)?;
    let lines = vec![
        kv("vertices", g.n()),
        kv("edges", g.edge_count()),
        kv("a(G)", num(a)),
        kv("vertex connectivity", kv_),
        kv("edge connectivity", ke),
        kv("cut vertices", format!("{cuts:?}")),
    ];
    let body = json!({
        "vertices": g.n(), "edges": g.edge_count(), "algebraic_connectivity": a,
        "vertex_connectivity": kv_, "edge_connectivity": ke, "cut_vertices": cuts,
    });
    Ok(Report { command: "fiedler", body, lines, code: 0 })
}

fn rigidity(graph: &str, placement: &str, space: &str) -> Result<Report, Failure> {
    let g = load_graph(graph)?;
    let p = parse_placement(&read(placement)?).map_err(|e| Failure::Input(format!("{placement}: {e}")))?;
    let space = load_space(space)?;
    let fw = make_framework(&g, &space, &p)?;
    let rep = fw.rigidity_report()?;
    let mut lines = vec![
        kv("space", &space),
        kv("rigidity eigenvalue", num(rep.rigidity_eigenvalue)),
        kv("k(X)", rep.k),
        kv("rank R(G,p)", rep.rank),
        kv("infinitesimally rigid", rep.infinitesimally_rigid),
        kv("full affine span", rep.full_affine_span),
        kv("spectrum", rep.spectrum.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")),
    ];
    let mut body = json!({ "space": space.to_string(), "report": rep });
    match monochrome_decompose(&fw) {
        Ok(dec) => {
            let conn = dec.part_connectivities(g.n())?;
            for (i, (part, a)) in dec.parts.iter().zip(&conn).enumerate() {
                lines.push(kv(&format!("part {i}: a(G_{i})"), num(*a)));
                lines.push(kv(&format!("part {i}: edges"), format!("{part:?}")));
            }
            body["decomposition"] = json!({ "parts": dec.parts, "part_connectivities": conn });
        }
        Err(Error::NotPolyhedral) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(Report { command: "rigidity", body, lines, code: 0 })
}

fn alg_conn(graph: &str, space_desc: &str, opts: &Opts) -> Result<Report, Failure> {
    let g = load_graph(graph)?;
    let space = load_space(space_desc)?;
    let mut lines = vec![kv("space", &space)];
    let mut body = json!({ "space": space.to_string() });
    let mut code = 0;
    let known = if space.is_linf() && g.n() <= ENUM_VERTEX_LIMIT && g.edge_count() <= 64 {
        let mut cfg = LinfConfig::new(budget(opts, SearchBudget::realize()), opts.seed);
        if let Some(c) = opts.candidates {
            cfg.max_attempts = c;
        }
        let r = exact_linf_connectivity_with(&g, space.dim(), &cfg)?;
        lines.push(kv("exact", r.exact));
        lines.push(kv("lower", num(r.lower)));
        lines.push(kv("upper", num(r.upper)));
        lines.push(kv("candidates", r.candidates));
        lines.push(kv("realization attempts", r.realization_attempts));
        if let Some(dec) = &r.best_decomposition {
            for (i, part) in dec.parts.iter().enumerate() {
                lines.push(kv(&format!("part {i}"), format!("{part:?}")));
            }
            if let Some(p) = &dec.certificate {
                lines.push(kv("certificate", points(p)));
            }
        }
        if !r.exact {
            code = EXIT_BUDGET;
        }
        let known = if r.exact {
            Connectivity::exact(r.upper, "exact linf engine")
        } else {
            Connectivity { value: r.lower, kind: ValueKind::LowerBound, source: "realised candidates".into() }
        };
        body["linf"] = serde_json::to_value(&r).expect("serialisable");
        known
    } else {
        let mut cfg = ValueConfig::new(budget(opts, SearchBudget::estimate()), opts.seed);
        if let Some(c) = opts.candidates {
            cfg.max_attempts = c;
        }
        connectivity(&g, &space, &cfg)?
    };
    lines.insert(1, kv("a(G,X)", num(known.value)));
    lines.insert(2, kv("kind", format!("{:?} ({})", known.kind, known.source)));
    let checks = graph_bounds(&g, &space, &known, opts.seed)?;
    for c in &checks {
        lines.push(kv(
            &c.name,
            format!("{} {} {}  slack {}  {}", num(c.lhs), c.relation, num(c.rhs), num(c.slack), if c.holds { "holds" } else { "VIOLATED" }),
        ));
    }
    if checks.iter().any(|c| !c.holds) && code == 0 {
        code = EXIT_MISMATCH;
    }
    body["value"] = json!(known);
    body["bounds"] = json!(checks);
    Ok(Report { command: "alg-conn", body, lines, code })
}

fn cmd_reproduce(seed: u64) -> Result<Report, Failure> {
    let rows = reproduce(seed)?;
    let mut lines = vec![format!("{:<32} {:>16} {:>16} {:>10} {:>8}  {:<8} {}", "quantity", "reference", "computed", "|diff|", "tol", "status", "source")];
    for r in &rows {
        lines.push(format!(
            "{:<32} {:>16} {:>16} {:>10} {:>8}  {:<8} {}",
            r.label,
            num(r.reference),
            num(r.computed),
            format!("{:.2e}", r.diff),
            format!("{:.0e}", r.tol),
            if r.ok { "ok" } else { "MISMATCH" },
            r.citation
        ));
    }
    let code = if rows.iter().all(|r| r.ok) { 0 } else { EXIT_MISMATCH };
    Ok(Report { command: "reproduce", body: json!({ "rows": rows }), lines, code })
}

fn tree_lines(out: &TreeHarnessOutcome) -> Vec<String> {
    let mut lines = vec![
        kv("tree", &out.tree),
        kv("d", out.d),
        kv("verdict", &out.verdict),
        kv("decompositions", out.search.decompositions),
        kv("orbits", out.search.orbits),
        kv("orbits tried", out.search.orbits_tried),
        kv("truncated", out.search.truncated),
        kv("a(T_d)", num(out.t_d_value)),
    ];
    match out.realized_value {
        Some(v) => {
            lines.push(kv("realized min a(G_i)", num(v)));
            lines.push(kv("lower bound on a(K_2d,linf^d)", num(v)));
        }
        None => lines.push(kv("conclusion", "none: search is not a non-existence proof")),
    }
    lines
}

fn tree_report(command: &'static str, out: TreeHarnessOutcome) -> (&'static str, Value, Vec<String>, bool) {
    let lines = tree_lines(&out);
    let found = out.realized_value.is_some();
    (command, serde_json::to_value(&out).expect("serialisable"), lines, found)
}

fn explore(target: Target, d: Option<usize>, n: Option<usize>, opts: &Opts) -> Result<Report, Failure> {
    let b = budget(opts, SearchBudget::realize());
    let (command, body, lines, found) = match target {
        Target::K2d => {
            tree_report("explore k2d", explore_k2d(d.unwrap_or(4), b, opts.seed, DEFAULT_DECOMPOSITION_CAP)?)
        }
        Target::H8 => {
            if d.is_some_and(|d| d != 4) {
                return Err(Failure::Input("h8 is defined for d = 4 only".into()));
            }
            tree_report("explore h8", explore_h8(b, opts.seed, DEFAULT_DECOMPOSITION_CAP)?)
        }
        Target::Redrig => {
            let (d, n) = (d.unwrap_or(2), n.unwrap_or(6));
            let out = explore_edge_redundancy(d, n, b, opts.seed)?;
            let mut lines = vec![kv("d", d), kv("n", n), kv("method", &out.method), kv("samples", out.samples)];
            match &out.witness {
                Some(p) => {
                    lines.push(kv("verdict", "edge-redundant witness found"));
                    lines.push(kv("placement", points(p)));
                }
                None => lines.push(kv("verdict", "not found within budget (no conclusion)")),
            }
            let found = out.witness.is_some();
            ("explore redrig", serde_json::to_value(&out).expect("serialisable"), lines, found)
        }
    };
    Ok(Report { command, body, lines, code: if found { 0 } else { EXIT_BUDGET } })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    if let Some(t) = cli.opts.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::Input(format!("--tol must be positive, got {t}")));
        }
        normrig::tolerance::set_eps(t);
    }
    match &cli.command {
        Command::Fiedler { graph } => fiedler(graph),
        Command::Rigidity { graph, placement, space } => rigidity(graph, placement, space),
        Command::AlgConn { graph, space } => alg_conn(graph, space, &cli.opts),
        Command::Reproduce => cmd_reproduce(cli.opts.seed),
        Command::Explore { target, d, n } => explore(*target, *d, *n, &cli.opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            match cli.opts.format {
                Format::Json => {
                    let mut v = json!({ "schema": "1", "command": rep.command, "seed": cli.opts.seed, "exit_code": rep.code });
                    if let (Value::Object(dst), Value::Object(src)) = (&mut v, rep.body) {
                        dst.extend(src);
                    }
                    round_json(&mut v);
                    println!("{}", serde_json::to_string_pretty(&v).expect("serialisable"));
                }
                Format::Table => {
                    for l in &rep.lines {
                        println!("{l}");
                    }
                }
            }
            ExitCode::from(rep.code)
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Budget(m) => (EXIT_BUDGET, m),
            };
            if cli.opts.format == Format::Json {
                println!("{}", json!({ "schema": "1", "error": msg, "exit_code": code }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
