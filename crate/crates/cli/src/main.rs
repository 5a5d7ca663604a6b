use std::fs;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matching_discovery::bounds::{bound_satisfied, realized_ratio};
use matching_discovery::extensions::{brute_force_bhm, solve_bhm, Groups};
use matching_discovery::harness::experiment::{
    exit_status, run_experiment, ExperimentConfig, NamedInstance,
};
use matching_discovery::harness::generators::{
    gen_figure, gen_random, Figure, OrderModel, RandomConfig, WeightModel,
};
use matching_discovery::harness::io::{emit_document, read_document, Document};
use matching_discovery::harness::report::{to_csv_string, to_json_string, RunReport};
use matching_discovery::order::{
    build_interval_order, certified_params, consistent_node_orders, extract_params, overlap_counts,
};
use matching_discovery::{Algorithm, Execution, IntervalPolicy, IntervalWeights, Orders};

#[derive(Parser)]
#[command(name = "mwmd", version, about = "Weight discovery for maximum-weight bipartite matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a figure or random instance file.
    Gen(GenArgs),
    /// Run algorithms on one instance file.
    Run(RunArgs),
    /// Report order parameters of an instance file.
    Analyze(AnalyzeArgs),
    /// Run a random instance grid.
    Bench(BenchArgs),
    /// Solve a hypergraph instance file.
    Bhm(BhmArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "structured")]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    /// Named figure, e.g. `fig1`, `beta:4`, `weak-c:2,2,3`.
    #[arg(long, conflicts_with_all = ["seed", "producers", "consumers", "density", "weights", "orders"])]
    figure: Option<Figure>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short = 's', long)]
    producers: Option<usize>,
    #[arg(short = 'q', long)]
    consumers: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// `uniform:LO,HI`, `integer:LO,HI` or `decaying:BETA_CAP,GAMMA_CAP`.
    #[arg(long, value_parser = parse_weight_model)]
    weights: Option<WeightModel>,
    /// `identity`, `random`, `weight-informed` or `interval:SPREAD,POLICY`.
    #[arg(long, value_parser = parse_order_model)]
    orders: Option<OrderModel>,
    /// Attach `±spread` intervals around the true weights.
    #[arg(long)]
    spread: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Algorithm ids; all of them when absent.
    #[arg(long = "algo", value_delimiter = ',')]
    algos: Vec<Algorithm>,
    #[arg(long = "ell", value_delimiter = ',', default_value = "0")]
    ells: Vec<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    instances: u64,
    #[arg(short = 's', long, default_value_t = 10)]
    producers: usize,
    #[arg(short = 'q', long, default_value_t = 10)]
    consumers: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, value_parser = parse_weight_model)]
    weights: Option<WeightModel>,
    #[arg(long, value_parser = parse_order_model)]
    orders: Option<OrderModel>,
    #[arg(long = "algo", value_delimiter = ',')]
    algos: Vec<Algorithm>,
    #[arg(long = "ell", value_delimiter = ',', default_value = "0,1,2")]
    ells: Vec<usize>,
    /// Skip the exact solver (no ratios or bound checks).
    #[arg(long)]
    no_exact: bool,
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BhmArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value = "l-greedy-local")]
    algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    ell: usize,
    /// Also compute the optimum by enumeration (small instances only).
    #[arg(long)]
    brute_force: bool,
    #[command(flatten)]
    output: Output,
}

fn two_floats(args: &str) -> Result<(f64, f64), String> {
    let (a, b) = args.split_once(',').ok_or_else(|| format!("expected two values, got '{args}'"))?;
    let f = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
    Ok((f(a)?, f(b)?))
}

fn parse_weight_model(s: &str) -> Result<WeightModel, String> {
    let (kind, args) = s.split_once(':').ok_or_else(|| format!("expected KIND:A,B, got '{s}'"))?;
    let (a, b) = two_floats(args)?;
    match kind {
        "uniform" => Ok(WeightModel::Uniform { lo: a, hi: b }),
        "integer" => {
            if a < 0.0 || b < 0.0 || a.fract() != 0.0 || b.fract() != 0.0 {
                return Err("integer bounds must be non-negative integers".into());
            }
            Ok(WeightModel::Integer { lo: a as u32, hi: b as u32 })
        }
        "decaying" => Ok(WeightModel::Decaying { beta_cap: a, gamma_cap: b }),
        _ => Err(format!("unknown weight model '{kind}'")),
    }
}

fn parse_order_model(s: &str) -> Result<OrderModel, String> {
    match s {
        "identity" => Ok(OrderModel::Identity),
        "random" => Ok(OrderModel::Random),
        "weight-informed" => Ok(OrderModel::WeightInformed),
        _ => {
            let args = s
                .strip_prefix("interval:")
                .ok_or_else(|| format!("unknown order model '{s}'"))?;
            let (spread, policy) =
                args.split_once(',').ok_or_else(|| "expected interval:SPREAD,POLICY".to_string())?;
            let spread = spread.trim().parse().map_err(|e| format!("spread: {e}"))?;
            let policy = IntervalPolicy::from_str(policy).map_err(|e| e.to_string())?;
            Ok(OrderModel::IntervalInduced { spread, policy })
        }
    }
}

type CliResult<T> = Result<T, String>;

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{text}{nl}").and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn read(path: &PathBuf) -> CliResult<Document> {
    read_document(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn reports_text(reports: &[RunReport], format: Format) -> CliResult<String> {
    match format {
        Format::Csv => to_csv_string(reports),
        Format::Structured => to_json_string(reports),
    }
    .map_err(|e| e.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn gen(args: GenArgs) -> CliResult<u8> {
    let mut doc = match &args.figure {
        Some(fig) => Document::plain(gen_figure(fig).map_err(|e| e.to_string())?),
        None => {
            let (Some(seed), Some(s), Some(q)) = (args.seed, args.producers, args.consumers) else {
                return Err("random generation needs --seed, -s and -q (or use --figure)".into());
            };
            let mut cfg = RandomConfig::new(seed, s, q, args.density);
            if let Some(w) = args.weights {
                cfg = cfg.with_weights(w);
            }
            if let Some(o) = args.orders {
                cfg = cfg.with_orders(o);
            }
            let g = gen_random(&cfg).map_err(|e| e.to_string())?;
            Document { instance: g.instance, intervals: g.intervals, hypergraph: None }
        }
    };
    if let Some(spread) = args.spread {
        doc.intervals =
            Some(IntervalWeights::around(&doc.instance.weights, spread).map_err(|e| e.to_string())?);
    }
    emit(&args.out, &emit_document(&doc).map_err(|e| e.to_string())?)?;
    Ok(0)
}

fn run_cmd(args: RunArgs) -> CliResult<u8> {
    let doc = read(&args.instance)?;
    let algos = if args.algos.is_empty() { Algorithm::ALL.to_vec() } else { args.algos };
    let name = args.instance.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
    let mut cfg = ExperimentConfig::new(vec![NamedInstance::new(name, doc.instance)], algos, args.ells);
    cfg.execution = Execution::Sequential;
    let reports = run_experiment(&cfg);
    emit(&args.output.out, &reports_text(&reports, args.output.format)?)?;
    Ok(exit_status(&reports) as u8)
}

fn analyze(args: AnalyzeArgs) -> CliResult<u8> {
    let doc = read(&args.instance)?;
    let inst = &doc.instance;
    inst.ensure_valid().map_err(|e| e.to_string())?;
    let params = extract_params(inst).map_err(|e| e.to_string())?;
    let mut rows: Vec<(String, String)> = vec![
        ("beta".into(), params.beta.to_string()),
        ("gamma".into(), params.gamma.to_string()),
    ];
    if let Some(z) = params.zeta {
        rows.push(("zeta".into(), z.to_string()));
    }
    let mut report = json!({ "n": inst.n(), "m": inst.m(), "params": params });
    if let Some(iv) = &doc.intervals {
        let (oc, oc_p, oc_c) = overlap_counts(inst, iv).map_err(|e| e.to_string())?;
        report["overlap_counts"] = json!({ "oc": oc, "oc_p": oc_p, "oc_c": oc_c });
        rows.extend([("oc".into(), oc.to_string()), ("oc_p".into(), oc_p.to_string()), ("oc_c".into(), oc_c.to_string())]);
        let own = certified_params(inst, iv, &inst.orders()).map_err(|e| e.to_string())?;
        report["certified"] = json!(own);
        let mut policies = serde_json::Map::new();
        for policy in [IntervalPolicy::Optimistic, IntervalPolicy::Centered, IntervalPolicy::Pessimistic] {
            let mut orders = build_interval_order(inst, iv, policy).map_err(|e| e.to_string())?;
            let sigma_e = orders.sigma_e.clone().unwrap_or_default();
            let consistent = consistent_node_orders(inst, &sigma_e);
            let node_orders = if consistent.is_some() { "consistent" } else { "first-appearance" };
            if let Some((sp, sc)) = consistent {
                orders = Orders { sigma_p: sp, sigma_c: sc, sigma_e: Some(sigma_e) };
            }
            let cert = certified_params(inst, iv, &orders).map_err(|e| e.to_string())?;
            let key = format!("{policy:?}").to_lowercase();
            rows.push((format!("{key}.beta"), cert.beta.to_string()));
            rows.push((format!("{key}.gamma"), cert.gamma.to_string()));
            rows.push((format!("{key}.zeta"), cert.zeta.unwrap_or(f64::NAN).to_string()));
            policies.insert(key, json!({ "node_orders": node_orders, "params": cert }));
        }
        report["policies"] = Value::Object(policies);
    }
    let text = match args.output.format {
        Format::Structured => pretty(&report),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in rows {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        }
    };
    emit(&args.output.out, &text)?;
    Ok(0)
}

fn bench(args: BenchArgs) -> CliResult<u8> {
    let instances = (0..args.instances)
        .map(|i| {
            let mut cfg = RandomConfig::new(args.seed + i, args.producers, args.consumers, args.density);
            if let Some(w) = args.weights {
                cfg = cfg.with_weights(w);
            }
            if let Some(o) = args.orders {
                cfg = cfg.with_orders(o);
            }
            gen_random(&cfg)
                .map(|g| NamedInstance::new(format!("seed{}", args.seed + i), g.instance))
                .map_err(|e| e.to_string())
        })
        .collect::<CliResult<Vec<_>>>()?;
    let algos = if args.algos.is_empty() { Algorithm::ALL.to_vec() } else { args.algos };
    let mut cfg = ExperimentConfig::new(instances, algos, args.ells);
    cfg.compute_exact = !args.no_exact;
    cfg.execution = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let reports = run_experiment(&cfg);
    emit(&args.output.out, &reports_text(&reports, args.output.format)?)?;
    Ok(exit_status(&reports) as u8)
}

fn group_labels(groups: &Groups) -> Vec<String> {
    groups
        .iter()
        .map(|(p, cs)| {
            let cs: Vec<String> = cs.iter().map(|c| format!("c{}", c + 1)).collect();
            format!("p{}:{}", p + 1, cs.join("+"))
        })
        .collect()
}

fn bhm(args: BhmArgs) -> CliResult<u8> {
    let doc = read(&args.instance)?;
    let h = doc.hypergraph_instance().map_err(|e| e.to_string())?;
    let res = solve_bhm(&h, args.algo, args.ell).map_err(|e| e.to_string())?;
    let mut status = 0;
    let mut report = json!({
        "algorithm": args.algo.id(),
        "ell": args.ell,
        "k": h.k,
        "groups": group_labels(&res.groups),
        "weight": res.total_weight,
        "query_count": res.inner.ledger.query_count(),
        "certified_ratio": res.certified_ratio,
    });
    if args.brute_force {
        let (best, opt) = brute_force_bhm(&h).map_err(|e| e.to_string())?;
        let ratio = realized_ratio(opt, res.total_weight);
        let ok = bound_satisfied(ratio, res.certified_ratio);
        if !ok {
            status = 1;
        }
        report["optimum"] = json!({ "groups": group_labels(&best), "weight": opt });
        report["ratio"] = json!(ratio);
        report["bound_satisfied"] = json!(ok);
    }
    let text = match args.output.format {
        Format::Structured => pretty(&report),
        Format::Csv => {
            let mut s = String::from("algorithm,ell,k,weight,query_count,certified_ratio,groups\n");
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                args.algo.id(),
                args.ell,
                h.k,
                res.total_weight,
                res.inner.ledger.query_count(),
                res.certified_ratio,
                group_labels(&res.groups).join(";"),
            ));
            s
        }
    };
    emit(&args.output.out, &text)?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run_cmd(a),
        Command::Analyze(a) => analyze(a),
        Command::Bench(a) => bench(a),
        Command::Bhm(a) => bhm(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mwmd: {e}");
            ExitCode::from(2)
        }
    }
}
