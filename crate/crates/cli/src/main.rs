//! `acv`: simulate lag-s autocovariance Gram spectra, evaluate their limit
//! laws, and verify the analytic identities behind them.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use acv_core::combinatorics;
use acv_core::ensemble::EntryDistribution;
use acv_core::harness::{self, ExportFormat, RunConfig, SweepConfig};
use acv_core::laws::{self, LimitLaw};
use acv_core::verify;

#[derive(Parser)]
#[command(
    name = "acv",
    about = "Spectra of normalized lag-s autocovariance matrices: simulation, \
             limit laws, exact combinatorics, and self-verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a limit law (pdf, cdf, quantile, moment, stieltjes)
    Law(LawArgs),
    /// Exact integer combinatorics (catalan, dyck, isoclass, isobound)
    Combinatorics(CombArgs),
    /// Run replicated simulations at one (p, T) point and export records
    Simulate(SimulateArgs),
    /// Run a sweep from a JSON config and write records plus a summary
    Sweep(SweepArgs),
    /// Run the self-verification suite; exit code 0 iff all checks pass
    Verify(VerifyArgs),
}

#[derive(Args)]
struct LawArgs {
    #[command(subcommand)]
    op: LawOp,
}

#[derive(Subcommand)]
enum LawOp {
    /// Density at x
    Pdf(LawPoint),
    /// Distribution function at x
    Cdf(LawPoint),
    /// Quantile at level u
    Quantile(LawLevel),
    /// k-th moment
    Moment(LawOrder),
    /// Stieltjes transform of the squared law at z = re + i im
    Stieltjes(StieltjesPoint),
}

#[derive(Args)]
struct LawPoint {
    #[arg(long, value_parser = parse_law)]
    law: LimitLaw,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
}

#[derive(Args)]
struct LawLevel {
    #[arg(long, value_parser = parse_law)]
    law: LimitLaw,
    #[arg(long)]
    u: f64,
}

#[derive(Args)]
struct LawOrder {
    #[arg(long, value_parser = parse_law)]
    law: LimitLaw,
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct StieltjesPoint {
    #[arg(long, allow_hyphen_values = true)]
    re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    im: f64,
}

#[derive(Args)]
struct CombArgs {
    #[command(subcommand)]
    op: CombOp,
}

#[derive(Subcommand)]
enum CombOp {
    /// Catalan number C_k
    Catalan {
        #[arg(long)]
        k: u64,
    },
    /// Dyck paths of length 2k by explicit enumeration (k <= 14)
    Dyck {
        #[arg(long)]
        k: u64,
    },
    /// Isomorphism-class count with t distinct row vertices
    Isoclass {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        t: u64,
    },
    /// Class-count bound with t row and s column vertices
    Isobound {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        s: u64,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    p: usize,
    #[arg(long = "T")]
    t: usize,
    #[arg(long, default_value_t = 1)]
    lag: usize,
    /// Family name (gaussian|rademacher|uniform) or JSON spec, e.g.
    /// '{"family":"student_t","nu":5,"truncate_at":2.5}'
    #[arg(long, default_value = "gaussian")]
    dist: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing)
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Emit the full report as JSON instead of a table
    #[arg(long)]
    json: bool,
}

fn parse_law(name: &str) -> Result<LimitLaw, String> {
    match name {
        "semicircle" => Ok(LimitLaw::Semicircle),
        "quarter" => Ok(LimitLaw::Quarter),
        "squared" => Ok(LimitLaw::Squared),
        other => Err(format!("unknown law '{other}' (semicircle|quarter|squared)")),
    }
}

fn parse_dist(text: &str) -> Result<EntryDistribution> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).context("parsing distribution JSON");
    }
    match trimmed {
        "gaussian" => Ok(EntryDistribution::gaussian()),
        "rademacher" => Ok(EntryDistribution::rademacher()),
        "uniform" => Ok(EntryDistribution::uniform()),
        other => bail!(
            "unknown distribution '{other}'; use gaussian|rademacher|uniform or a JSON \
             spec like {{\"family\":\"student_t\",\"nu\":5}}"
        ),
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Law(args) => law(args),
        Command::Combinatorics(args) => comb(args),
        Command::Simulate(args) => simulate(args),
        Command::Sweep(args) => sweep(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

fn law(args: LawArgs) -> Result<()> {
    match args.op {
        LawOp::Pdf(pt) => println!("{}", pt.law.pdf(pt.x)),
        LawOp::Cdf(pt) => println!("{}", pt.law.cdf(pt.x)),
        LawOp::Quantile(lv) => println!("{}", lv.law.quantile(lv.u)?),
        LawOp::Moment(ord) => println!("{}", ord.law.moment(ord.k)),
        LawOp::Stieltjes(z) => {
            let s = laws::stieltjes_squared(Complex64::new(z.re, z.im))?;
            println!("{} {}{}i", s.re, if s.im < 0.0 { "" } else { "+" }, s.im);
        }
    }
    Ok(())
}

fn comb(args: CombArgs) -> Result<()> {
    match args.op {
        CombOp::Catalan { k } => println!("{}", combinatorics::catalan(k)),
        CombOp::Dyck { k } => println!("{}", combinatorics::count_dyck_paths(k)?),
        CombOp::Isoclass { k, t } => println!("{}", combinatorics::iso_class_count(k, t)?),
        CombOp::Isobound { k, t, s } => {
            let bound = if t == 1 {
                combinatorics::iso_class_bound_t1(k, s)
            } else {
                combinatorics::iso_class_bound(k, t, s)?
            };
            println!("{bound}");
        }
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let format = ExportFormat::from_name(&args.format)?;
    let cfg = RunConfig {
        p: args.p,
        t: args.t,
        lag: args.lag,
        distribution: parse_dist(&args.dist)?,
        base_seed: args.seed,
        replications: args.reps,
        moment_orders: harness::DEFAULT_MOMENT_ORDERS.to_vec(),
    };
    for warning in cfg.validate()? {
        eprintln!("warning: {warning}");
    }
    let started = Instant::now();
    let record = harness::run_single(&cfg)?;
    let elapsed = started.elapsed().as_secs_f64() * 1e3;

    summarize_record(&record, elapsed);
    match args.out {
        Some(path) => {
            harness::export(&[record], format, &path)?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let body = match format {
                ExportFormat::Csv => harness::render_csv(&[record]),
                ExportFormat::Jsonl => harness::render_jsonl(&[record]),
            };
            print!("{body}");
        }
    }
    Ok(())
}

fn summarize_record(record: &harness::RunRecord, elapsed_ms: f64) {
    let cfg = &record.config;
    let failures = record.replications.len() - record.ok_stats().count();
    eprintln!(
        "run {} p={} T={} lag={} dist={} reps={} ({elapsed_ms:.0} ms{})",
        record.run_id,
        cfg.p,
        cfg.t,
        cfg.lag,
        cfg.distribution.tag(),
        cfg.replications,
        if failures > 0 { format!(", {failures} failed") } else { String::new() }
    );
    if let (Some(ks), Some(lmax), Some(m1)) = (
        record.mean_ks_squared(),
        record.median_lambda_max(),
        record.mean_moment(1),
    ) {
        eprintln!(
            "  mean KS vs squared law {ks:.4}, median lambda_max {lmax:.4}, mean m1 {m1:.4}"
        );
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let format = ExportFormat::from_name(&args.format)?;
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let sweep: SweepConfig = serde_json::from_str(&text).context("parsing sweep config")?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;

    let started = Instant::now();
    let summary = harness::run_sweep(&sweep)?;
    let elapsed = started.elapsed().as_secs_f64() * 1e3;

    let ext = match format {
        ExportFormat::Csv => "csv",
        ExportFormat::Jsonl => "jsonl",
    };
    for (idx, point) in summary.points.iter().enumerate() {
        match point {
            harness::PointOutcome::Ok(pt) => {
                let path = args.out.join(format!("point_{idx:02}_p{}_T{}.{ext}", pt.p, pt.t));
                harness::export(std::slice::from_ref(&pt.record), format, &path)?;
                eprintln!(
                    "point ({}, {}): mean KS {} median lambda_max {} -> {}",
                    pt.p,
                    pt.t,
                    pt.mean_ks_squared.map(|v| format!("{v:.4}")).unwrap_or_default(),
                    pt.median_lambda_max.map(|v| format!("{v:.4}")).unwrap_or_default(),
                    path.display()
                );
            }
            harness::PointOutcome::Failed { p, t, message } => {
                eprintln!("point ({p}, {t}): FAILED: {message}");
            }
        }
    }
    let summary_path = args.out.join("summary.json");
    std::fs::write(&summary_path, serde_json::to_string_pretty(&summary)?)
        .with_context(|| format!("writing {}", summary_path.display()))?;
    eprintln!(
        "sweep done in {elapsed:.0} ms; KS decreasing: {}; lambda_max gap decreasing: {} -> {}",
        summary.trends.ks_strictly_decreasing,
        summary.trends.lambda_gap_decreasing,
        summary_path.display()
    );
    Ok(())
}

fn verify_cmd(args: VerifyArgs) -> Result<()> {
    let report = verify::verify_suite();
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for c in &report.checks {
            println!(
                "{} {:45} deviation {:9.3e}  tol {:8.1e}  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.deviation,
                c.tolerance,
                c.detail
            );
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        println!("{passed}/{} checks passed", report.checks.len());
    }
    if !report.all_passed() {
        std::process::exit(1);
    }
    Ok(())
}
