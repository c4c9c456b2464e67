use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use theta_upsilon::complex::{glue, stabilize, tensor, ComplexData};
use theta_upsilon::graph::{validate_graph, GraphDescription};
use theta_upsilon::homology::{d_invariant, Evaluator};
use theta_upsilon::pl::{f_i_components, jump_delta, reconstruct_segment, tau_matrix, SegmentOptions};
use theta_upsilon::polytope::{decompose_to_matchings, solution_polytope};
use theta_upsilon::rational::{self, Rational};
use theta_upsilon::{selftest, DeltaComplex, Error, LabeledGraph, TangleComplex};

/// Upsilon invariants of bipartite graph tangle complexes, in exact arithmetic.
#[derive(Parser)]
#[command(name = "theta-upsilon", version)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perfect matchings of a graph, as canonical ids.
    Matchings { graph: PathBuf },
    /// Matching vertices and dimension of the solution polytope.
    Polytope { graph: PathBuf },
    /// Write a weight vector as a convex combination of matchings.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// The triangulation of the solution polytope, or the simplex holding `--t`.
    DeltaComplex {
        graph: PathBuf,
        #[arg(long)]
        t: Option<String>,
    },
    /// Check a complex file and list every violated invariant.
    Validate { complex: PathBuf },
    /// Convert a knot complex with Maslov and Alexander gradings to a Θ₂ complex.
    ImportCfk { cfk: PathBuf },
    /// Tensor product of two Θ_n complexes.
    Tensor { first: PathBuf, second: PathBuf },
    /// Add copies of an edge to a Θ_n complex.
    Stabilize {
        complex: PathBuf,
        #[arg(long)]
        slot: usize,
        #[arg(long, default_value_t = 1)]
        extra: usize,
    },
    /// Glue the last edge of one Θ complex to the last edge of another.
    Glue { first: PathBuf, second: PathBuf },
    /// Evaluate Upsilon.
    #[command(subcommand)]
    Upsilon(UpsilonCommand),
    /// Invariants read off Upsilon.
    #[command(subcommand)]
    Invariants(InvariantCommand),
    /// Run every acceptance check.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum UpsilonCommand {
    /// Upsilon at one point.
    Eval {
        complex: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// Upsilon along a segment, as exact piecewise-linear functions.
    Segment {
        complex: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        depth: Depth,
    },
}

#[derive(Subcommand)]
enum InvariantCommand {
    /// Derivatives at the matching vertices; entry (i, j) is -τ(K_ij).
    Tau {
        complex: PathBuf,
        #[command(flatten)]
        depth: Depth,
    },
    /// The d-invariant of a Θ₁ complex.
    D { complex: PathBuf },
    /// The jump of the derivative along the line l_i at t^i_a.
    Jumps {
        complex: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        a: String,
        #[command(flatten)]
        depth: Depth,
    },
    /// The first components of f_i.
    Fi {
        complex: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        depth: Depth,
    },
}

#[derive(Args)]
struct Depth {
    /// Bisection depth before a piece is left uncertified.
    #[arg(long, default_value_t = 20)]
    max_depth: u32,
}

impl Depth {
    fn options(&self) -> SegmentOptions {
        SegmentOptions { max_depth: self.max_depth }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plot,
}

fn q(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

/// A graph file, or the graph of a complex file.
fn load_graph(path: &Path) -> Result<LabeledGraph, Error> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let desc: GraphDescription = match value.get("graph") {
        Some(g) => serde_json::from_value(g.clone())?,
        None => serde_json::from_value(value)?,
    };
    validate_graph(&desc)
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cmd: Command) -> Result<String, Error> {
    Ok(match cmd {
        Command::Matchings { graph } => {
            let g = load_graph(&graph)?;
            let ids: Vec<String> = g.enumerate_matchings().iter().map(|m| m.canonical_id()).collect();
            to_json(&json!(ids))
        }
        Command::Polytope { graph } => {
            let p = solution_polytope(&load_graph(&graph)?);
            let vertices: Vec<Value> = p
                .matchings
                .iter()
                .zip(&p.vertices)
                .map(|(m, v)| json!({"matching": m.canonical_id(), "weight": qs(v)}))
                .collect();
            to_json(&json!({"dimension": p.dimension, "vertices": vertices}))
        }
        Command::Decompose { graph, t } => {
            let g = load_graph(&graph)?;
            let c = decompose_to_matchings(&g, &rational::parse_list(&t)?)?;
            let terms: Vec<Value> = c
                .terms
                .iter()
                .map(|(m, x)| json!({"matching": m.canonical_id(), "coefficient": q(x)}))
                .collect();
            to_json(&json!({"terms": terms}))
        }
        Command::DeltaComplex { graph, t } => {
            let g = load_graph(&graph)?;
            let dc = DeltaComplex::build(&g)?;
            match t {
                Some(t) => {
                    let loc = dc.locate(&g, &rational::parse_list(&t)?)?;
                    let ids: Vec<String> = loc.simplex.iter().map(|&v| dc.matchings()[v].canonical_id()).collect();
                    to_json(&json!({"simplex": loc.simplex, "matchings": ids, "coordinates": qs(&loc.coords)}))
                }
                None => {
                    let vertices: Vec<Value> = dc.vertices().iter().map(|v| qs(v)).collect();
                    let ids: Vec<String> = dc.matchings().iter().map(|m| m.canonical_id()).collect();
                    let simplices: serde_json::Map<String, Value> =
                        dc.simplices().iter().enumerate().map(|(d, faces)| (d.to_string(), json!(faces))).collect();
                    to_json(&json!({
                        "vertices": vertices,
                        "matchings": ids,
                        "simplices": simplices,
                        "dimension": dc.dimension(),
                        "t_min": qs(dc.t_min()),
                    }))
                }
            }
        }
        Command::Validate { complex } => {
            let text = std::fs::read_to_string(&complex)?;
            let data: ComplexData = serde_json::from_str(&text)?;
            let c = TangleComplex::from_data(&data)?;
            let report = c.validate();
            if !report.is_valid() {
                return Err(Error::InvalidComplex(report));
            }
            to_json(&json!({"valid": true, "generators": c.generators().len(), "edges": c.edge_count()}))
        }
        Command::ImportCfk { cfk } => TangleComplex::load_cfk(&cfk)?.to_json() + "\n",
        Command::Tensor { first, second } => {
            tensor(&TangleComplex::load(&first)?, &TangleComplex::load(&second)?)?.to_json() + "\n"
        }
        Command::Stabilize { complex, slot, extra } => {
            stabilize(&TangleComplex::load(&complex)?, slot, extra)?.to_json() + "\n"
        }
        Command::Glue { first, second } => {
            glue(&TangleComplex::load(&first)?, &TangleComplex::load(&second)?)?.to_json() + "\n"
        }
        Command::Upsilon(UpsilonCommand::Eval { complex, t }) => {
            let c = TangleComplex::load(&complex)?;
            let t = rational::parse_list(&t)?;
            let h = Evaluator::new(&c)?.homology(&t)?;
            if h.free.len() != c.expected_rank() {
                return Err(Error::Rank { expected: c.expected_rank(), found: h.free.len() });
            }
            let torsion: Vec<Value> = h.torsion.iter().map(|(g, b)| json!({"gr": q(g), "order": q(b)})).collect();
            to_json(&json!({"t": qs(&t), "upsilon": qs(&h.free), "free_rank": h.free.len(), "torsion": torsion}))
        }
        Command::Upsilon(UpsilonCommand::Segment { complex, from, to, format, depth }) => {
            let c = TangleComplex::load(&complex)?;
            let ev = Evaluator::new(&c)?;
            let (t0, t1) = (rational::parse_list(&from)?, rational::parse_list(&to)?);
            let p = reconstruct_segment(&ev, &t0, &t1, &depth.options())?;
            segment_output(&p, format)?
        }
        Command::Invariants(InvariantCommand::Tau { complex, depth }) => {
            let c = TangleComplex::load(&complex)?;
            let m = tau_matrix(&Evaluator::new(&c)?, &depth.options())?;
            let rows: Vec<Value> =
                m.iter().map(|row| Value::Array(row.iter().map(|x| x.as_ref().map_or(Value::Null, q)).collect())).collect();
            let tau: Vec<Value> = m
                .iter()
                .map(|row| Value::Array(row.iter().map(|x| x.as_ref().map_or(Value::Null, |x| q(&-x))).collect()))
                .collect();
            to_json(&json!({"derivative": rows, "tau": tau}))
        }
        Command::Invariants(InvariantCommand::D { complex }) => {
            to_json(&json!({"d": q(&d_invariant(&TangleComplex::load(&complex)?)?)}))
        }
        Command::Invariants(InvariantCommand::Jumps { complex, edge, a, depth }) => {
            let c = TangleComplex::load(&complex)?;
            let j = jump_delta(&Evaluator::new(&c)?, edge, &rational::parse(&a)?, &depth.options())?;
            to_json(&json!({
                "edge": j.edge,
                "a": q(&j.a),
                "left": q(&j.left),
                "right": q(&j.right),
                "delta": q(&j.delta),
                "a_times_delta": q(&j.parity_product()),
            }))
        }
        Command::Invariants(InvariantCommand::Fi { complex, edge, count, depth }) => {
            let c = TangleComplex::load(&complex)?;
            let f = f_i_components(&Evaluator::new(&c)?, edge, count, &depth.options())?;
            to_json(&json!({"edge": f.edge, "components": qs(&f.values), "non_integral": f.non_integral}))
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            let mut out = String::new();
            for c in &report.criteria {
                out.push_str(&c.to_string());
                out.push('\n');
            }
            if !report.passed() {
                print!("{out}");
                let failed: Vec<String> =
                    report.criteria.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
                return Err(Error::Uncertified(format!("selftest criteria {} failed", failed.join(", "))));
            }
            out
        }
    })
}

fn segment_output(p: &theta_upsilon::pl::SegmentProfile, format: Format) -> Result<String, Error> {
    if !p.certified {
        return Err(Error::Uncertified("some piece hit the depth limit; raise --max-depth".into()));
    }
    let points = p.breakpoints();
    Ok(match format {
        Format::Json => {
            let functions: Vec<Value> = p
                .functions
                .iter()
                .map(|f| json!({"breakpoints": qs(&f.breakpoints), "values": qs(&f.values)}))
                .collect();
            to_json(&json!({"from": qs(&p.functions[0].start), "to": qs(&p.functions[0].end), "functions": functions}))
        }
        Format::Csv => {
            let mut out = String::new();
            for s in &points {
                out.push_str(&rational::format(s));
                for f in &p.functions {
                    out.push(',');
                    out.push_str(&rational::format(&f.value_at(s).expect("breakpoint in range")));
                }
                out.push('\n');
            }
            out
        }
        Format::Plot => {
            // one gnuplot data block per function
            let blocks: Vec<String> = p
                .functions
                .iter()
                .map(|f| {
                    f.breakpoints
                        .iter()
                        .zip(&f.values)
                        .map(|(s, v)| format!("{} {}\n", rational::to_decimal(s, 20), rational::to_decimal(v, 20)))
                        .collect()
                })
                .collect();
            blocks.join("\n\n")
        }
    })
}

fn error_json(code: &str, message: &str) -> String {
    serde_json::to_string(&json!({"error": {"code": code, "message": message}})).expect("json values serialize")
}

fn domain_error_json(e: &Error) -> String {
    let mut body = json!({"code": e.code(), "message": e.to_string()});
    if let Error::InvalidComplex(report) = e {
        let list: Vec<Value> =
            report.violations.iter().map(|v| json!({"code": v.code, "message": v.message})).collect();
        body["violations"] = Value::Array(list);
    }
    serde_json::to_string(&json!({ "error": body })).expect("json values serialize")
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("THETA_UPSILON_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("THETA_UPSILON_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_json("E_USAGE", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("{}", error_json("E_USAGE", &msg));
        return ExitCode::from(2);
    }
    let result = run(cli.command).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", domain_error_json(&e));
            ExitCode::from(1)
        }
    }
}
