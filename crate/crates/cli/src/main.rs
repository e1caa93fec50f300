use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tempbc_core::graph::{parse_edge_list_with, ParseOptions};
use tempbc_core::output::{fmt_sig12, read_key_values_file, write_bv, write_result};
use tempbc_core::{
    aggregate_static, brandes_static, compute_betweenness_with, kendall_tau, oracle_betweenness,
    prefix_scan, time_histogram, top_k_intersection, Cost, EngineOptions, Error, Ranking,
    TemporalGraph, Time, VariantConfig, WalkType,
};

#[derive(Parser)]
#[command(name = "tempbc", version, about = "Temporal betweenness centrality")]
struct Cli {
    /// Worker threads for the engine (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute B(v,t), B(v) and B(t) and write them as CSV.
    Compute(ComputeArgs),
    /// Brandes betweenness of the aggregated static graph.
    Static(StaticArgs),
    /// Compare two node-value CSV files: Kendall tau-b and top-K overlap.
    Compare(CompareArgs),
    /// Top-K overlap between prefix graphs and the full graph.
    PrefixScan(PrefixArgs),
    /// Same outputs as `compute`, by exhaustive walk enumeration (small graphs only).
    Oracle(OracleArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list, one `u v t` arc per line.
    #[arg(long)]
    input: PathBuf,
    /// Read arcs as directed (default: undirected).
    #[arg(long)]
    directed: bool,
    /// Map distinct timestamps to consecutive integers.
    #[arg(long)]
    compress_times: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Variant {
    Shortest,
    Restless,
    Foremost,
}

#[derive(Clone, Copy, ValueEnum)]
enum Walk {
    Active,
    Passive,
}

#[derive(Args)]
struct VariantArgs {
    #[arg(long, value_enum)]
    variant: Variant,
    #[arg(long, value_enum, default_value = "passive")]
    walk_type: Walk,
    /// Require strictly increasing transition times.
    #[arg(long)]
    strict: bool,
    /// Waiting bound for restless walks.
    #[arg(long, conflicts_with = "k_fraction")]
    k: Option<Time>,
    /// Waiting bound as a fraction of the horizon, rounded up (default 0.1).
    #[arg(long)]
    k_fraction: Option<f64>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    variant: VariantArgs,
    /// Divide by (n-1)(n-2).
    #[arg(long)]
    normalize: bool,
    /// Skip the per-time table; write B(v) and B(t) only.
    #[arg(long)]
    marginals_only: bool,
    /// Also write `P.hist.csv` with B(t) grouped into this many bins.
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    out_prefix: String,
}

#[derive(Args)]
struct StaticArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Size of the top sets (default: min(10, number of keys)).
    #[arg(long)]
    top: Option<usize>,
}

#[derive(Args)]
struct PrefixArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    variant: VariantArgs,
    /// Comma-separated fractions of the horizon.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0"
    )]
    mus: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    variant: VariantArgs,
    #[arg(long)]
    out_prefix: String,
}

/// Error plus the process exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) | Error::TooLarge(_) => 2,
            Error::Parse { .. } | Error::EmptyGraph | Error::Io(_) | Error::Csv(_) => 3,
            Error::Overflow { .. } | Error::Invariant(_) => 4,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn argument(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 3,
        msg: format!("{}: {e}", path.display()),
    }
}

fn load(args: &InputArgs) -> Result<TemporalGraph, Failure> {
    let text = fs::read_to_string(&args.input).map_err(|e| input_error(&args.input, e))?;
    let opts = ParseOptions {
        directed: args.directed,
        compress_times: args.compress_times,
    };
    parse_edge_list_with(&text, opts).map_err(|e| input_error(&args.input, e))
}

fn config(args: &VariantArgs, horizon: Time) -> Result<VariantConfig, Failure> {
    let walk = match args.walk_type {
        Walk::Active => WalkType::Active,
        Walk::Passive => WalkType::Passive,
    };
    let cost = match args.variant {
        Variant::Shortest => Cost::Shortest,
        Variant::Foremost => Cost::Foremost,
        Variant::Restless => {
            let k = match (args.k, args.k_fraction) {
                (Some(k), _) => k,
                (None, fraction) => {
                    let f = fraction.unwrap_or(0.1);
                    if !(f > 0.0 && f.is_finite()) {
                        return Err(argument(format!("--k-fraction must be positive, got {f}")));
                    }
                    ((f * horizon as f64).ceil() as Time).max(1)
                }
            };
            Cost::restless(Some(k))?
        }
    };
    if args.variant != Variant::Restless && (args.k.is_some() || args.k_fraction.is_some()) {
        return Err(argument(
            "--k and --k-fraction apply to the restless variant only",
        ));
    }
    Ok(VariantConfig::new(cost, walk, args.strict)?)
}

fn write_csv(
    path: &Path,
    header: [&str; 2],
    rows: impl IntoIterator<Item = [String; 2]>,
) -> Result<(), Failure> {
    let io = |e: csv::Error| input_error(path, e);
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush().map_err(|e| input_error(path, e))
}

fn compute(args: ComputeArgs) -> Result<(), Failure> {
    let g = load(&args.input)?;
    let cfg = config(&args.variant, g.horizon())?;
    let opts = EngineOptions {
        threads: 0,
        normalize: args.normalize,
        marginals_only: args.marginals_only,
    };
    let r = compute_betweenness_with(&g, cfg, &opts)?;
    write_result(&args.out_prefix, &g, &r)?;
    if let Some(bins) = args.bins {
        let hist = time_histogram(&r, bins)?;
        let path = PathBuf::from(format!("{}.hist.csv", args.out_prefix));
        write_csv(
            &path,
            ["bin", "mass"],
            hist.into_iter().map(|(b, m)| [b.to_string(), fmt_sig12(m)]),
        )?;
    }
    Ok(())
}

fn static_bc(args: StaticArgs) -> Result<(), Failure> {
    let g = load(&args.input)?;
    let values = brandes_static(&aggregate_static(&g));
    let file = fs::File::create(&args.out).map_err(|e| input_error(&args.out, e))?;
    write_bv(file, g.labels(), &values)?;
    Ok(())
}

fn compare(args: CompareArgs) -> Result<(), Failure> {
    let a = read_key_values_file(&args.a).map_err(|e| input_error(&args.a, e))?;
    let b = read_key_values_file(&args.b).map_err(|e| input_error(&args.b, e))?;
    let index: std::collections::HashMap<&str, usize> = a
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (k.as_str(), i))
        .collect();
    if index.len() != a.len() {
        return Err(argument(format!("{}: duplicate keys", args.a.display())));
    }
    let mut pairs = Vec::with_capacity(b.len());
    for (k, v) in &b {
        let i = index
            .get(k.as_str())
            .ok_or_else(|| argument(format!("key {k:?} missing from {}", args.a.display())))?;
        pairs.push((*i, *v));
    }
    let ra = Ranking::from_values(&a.iter().map(|x| x.1).collect::<Vec<_>>());
    let rb = Ranking::from_pairs(pairs);
    let top = args.top.unwrap_or(a.len().min(10));
    let tau = kendall_tau(&ra, &rb)?;
    let inter = top_k_intersection(&ra, &rb, top)?;
    println!("tau={}", fmt_sig12(tau));
    println!("topk={inter}");
    Ok(())
}

fn prefix(args: PrefixArgs) -> Result<(), Failure> {
    let g = load(&args.input)?;
    // the waiting bound follows the full graph's horizon for every prefix
    let cfg = config(&args.variant, g.horizon())?;
    let scan = prefix_scan(&g, cfg, &args.mus, args.top)?;
    write_csv(
        &args.out,
        ["mu", "intersection"],
        scan.into_iter()
            .map(|(mu, k)| [mu.to_string(), k.to_string()]),
    )
}

fn oracle(args: OracleArgs) -> Result<(), Failure> {
    let g = load(&args.input)?;
    let cfg = config(&args.variant, g.horizon())?;
    let r = oracle_betweenness(&g, cfg)?;
    write_result(&args.out_prefix, &g, &r)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // sizes the pool used by every engine call, including prefix scans
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(4);
        }
    }
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Static(a) => static_bc(a),
        Command::Compare(a) => compare(a),
        Command::PrefixScan(a) => prefix(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
