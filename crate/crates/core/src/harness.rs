//! Experiment orchestration: seeded replicated runs, regime sweeps, and
//! deterministic CSV/JSONL export.
//!
//! Replication r of a run draws its panel from `mix2(base_seed, r)`, so
//! records depend only on the configuration, never on scheduling. Sweeps
//! and replications execute on a bounded worker pool (capped by the
//! `ACV_MAX_WORKERS` environment variable) and results are gathered in
//! replication order before aggregation, making 1-worker and N-worker runs
//! byte-identical. For the same reason the exported `wall_ms` field is a
//! schema placeholder pinned to zero; live timing is reported by the CLI,
//! not stored in data files.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::acv::spectrum_pipeline;
use crate::ensemble::{self, make_sampler, mix2, mix64, EntryDistribution};
use crate::error::{Error, Result};
use crate::laws::LimitLaw;
use crate::stats::{self, Spectrum};

pub const DEFAULT_MOMENT_ORDERS: [u32; 6] = [1, 2, 3, 4, 5, 6];

fn default_lag() -> usize {
    1
}

fn default_replications() -> usize {
    1
}

fn default_orders() -> Vec<u32> {
    DEFAULT_MOMENT_ORDERS.to_vec()
}

/// Configuration of one (p, T) run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(default = "default_lag")]
    pub lag: usize,
    pub distribution: EntryDistribution,
    pub base_seed: u64,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default = "default_orders")]
    pub moment_orders: Vec<u32>,
}

impl RunConfig {
    pub fn new(p: usize, t: usize, distribution: EntryDistribution, base_seed: u64) -> Self {
        RunConfig {
            p,
            t,
            lag: 1,
            distribution,
            base_seed,
            replications: 1,
            moment_orders: default_orders(),
        }
    }

    pub fn with_replications(mut self, reps: usize) -> Self {
        self.replications = reps;
        self
    }

    pub fn with_lag(mut self, lag: usize) -> Self {
        self.lag = lag;
        self
    }

    /// Hard validation; returns advisory warnings (never errors) about the
    /// asymptotic regime.
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.p < 2 {
            return Err(Error::Config(format!("p must be >= 2, got {}", self.p)));
        }
        if self.t < 1 {
            return Err(Error::Config("T must be >= 1".into()));
        }
        if self.lag < 1 {
            return Err(Error::Config("lag must be >= 1".into()));
        }
        if self.replications < 1 {
            return Err(Error::Config("replications must be >= 1".into()));
        }
        if self.moment_orders.iter().any(|&k| k == 0) {
            return Err(Error::Config("moment orders must be >= 1".into()));
        }
        make_sampler(self.distribution)?;
        let mut warnings = Vec::new();
        let ratio = self.p as f64 / self.t as f64;
        if ratio > 0.2 {
            warnings.push(format!(
                "p/T = {ratio:.3} is far from the p/T -> 0 regime; limit-law \
                 comparisons will be off"
            ));
        }
        Ok(warnings)
    }

    /// Deterministic 16-hex-digit identifier derived from the config.
    pub fn run_id(&self) -> String {
        let blob = serde_json::to_string(self).expect("config serializes");
        let mut h = 0xACB7_25C1_D2E9_55A3u64;
        for b in blob.as_bytes() {
            h = mix64(h ^ *b as u64);
        }
        format!("{h:016x}")
    }
}

/// Statistics of one successful replication.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepStats {
    pub rep: usize,
    pub seed: u64,
    pub lambda_max: f64,
    pub lambda_min_pos: Option<f64>,
    pub ks_squared: f64,
    pub ks_quarter: f64,
    /// (order, empirical moment) pairs, in `moment_orders` order.
    pub moments: Vec<(u32, f64)>,
    /// Reserved schema field, always 0 (see module docs).
    pub wall_ms: f64,
}

/// One replication either yields statistics or records its failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RepOutcome {
    Ok(RepStats),
    Failed { rep: usize, seed: u64, message: String },
}

impl RepOutcome {
    pub fn stats(&self) -> Option<&RepStats> {
        match self {
            RepOutcome::Ok(s) => Some(s),
            RepOutcome::Failed { .. } => None,
        }
    }
}

/// Config echo plus per-replication results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub config: RunConfig,
    pub replications: Vec<RepOutcome>,
}

impl RunRecord {
    pub fn ok_stats(&self) -> impl Iterator<Item = &RepStats> {
        self.replications.iter().filter_map(RepOutcome::stats)
    }

    pub fn mean_ks_squared(&self) -> Option<f64> {
        mean(self.ok_stats().map(|s| s.ks_squared))
    }

    pub fn median_lambda_max(&self) -> Option<f64> {
        median(self.ok_stats().map(|s| s.lambda_max))
    }

    pub fn mean_moment(&self, order: u32) -> Option<f64> {
        mean(self.ok_stats().filter_map(|s| {
            s.moments.iter().find(|(k, _)| *k == order).map(|(_, v)| *v)
        }))
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = values.collect();
    if v.is_empty() {
        None
    } else {
        Some(v.iter().sum::<f64>() / v.len() as f64)
    }
}

fn median(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut v: Vec<f64> = values.collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

// ---------------------------------------------------------------------------
// worker pool
// ---------------------------------------------------------------------------

/// Worker cap: `ACV_MAX_WORKERS` if set, else available parallelism.
pub fn max_workers() -> usize {
    std::env::var("ACV_MAX_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Run `f(0..n)` on up to `workers` threads; results come back indexed, so
/// output is independent of scheduling.
fn run_indexed<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.max(1).min(n.max(1));
    if workers == 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= n {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            for (i, v) in h.join().expect("worker panicked") {
                slots[i] = Some(v);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("all indices filled")).collect()
}

// ---------------------------------------------------------------------------
// single run
// ---------------------------------------------------------------------------

fn run_replication(cfg: &RunConfig, rep: usize) -> RepOutcome {
    let seed = mix2(cfg.base_seed, rep as u64);
    let attempt = (|| -> Result<RepStats> {
        let sampler = make_sampler(cfg.distribution)?;
        let panel = ensemble::sample_panel(&sampler, cfg.p, cfg.t, cfg.lag, seed)?;
        let spectrum = spectrum_pipeline(&panel, &cfg.distribution.tag())?;
        rep_stats_from_spectrum(cfg, rep, seed, &spectrum)
    })();
    match attempt {
        Ok(stats) => RepOutcome::Ok(stats),
        Err(e) => RepOutcome::Failed { rep, seed, message: e.to_string() },
    }
}

fn rep_stats_from_spectrum(
    cfg: &RunConfig,
    rep: usize,
    seed: u64,
    spectrum: &Spectrum,
) -> Result<RepStats> {
    let (lambda_max, lambda_min_pos) = stats::extremes(spectrum)?;
    let ks_squared = stats::ks_distance(spectrum, LimitLaw::Squared)?;
    let ks_quarter = stats::ks_distance(&spectrum.sqrt_spectrum(), LimitLaw::Quarter)?;
    let moments = cfg
        .moment_orders
        .iter()
        .map(|&k| (k, stats::empirical_moment(spectrum, k)))
        .collect();
    Ok(RepStats {
        rep,
        seed,
        lambda_max,
        lambda_min_pos,
        ks_squared,
        ks_quarter,
        moments,
        wall_ms: 0.0,
    })
}

/// Execute all replications of one configuration.
pub fn run_single(cfg: &RunConfig) -> Result<RunRecord> {
    run_single_with_workers(cfg, max_workers())
}

/// As [`run_single`] with an explicit worker cap; output does not depend
/// on the cap.
pub fn run_single_with_workers(cfg: &RunConfig, workers: usize) -> Result<RunRecord> {
    cfg.validate()?;
    let replications = run_indexed(cfg.replications, workers, |rep| run_replication(cfg, rep));
    Ok(RunRecord { run_id: cfg.run_id(), config: cfg.clone(), replications })
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

/// Sweep geometry: either the vanishing-ratio regime (p = round(T^alpha),
/// 0 < alpha < 1, so p/T -> 0) or the proportional contrast regime
/// (p = round(c T), fixed c > 0).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    Ultra {
        #[serde(rename = "T_list")]
        t_list: Vec<usize>,
        alpha: f64,
    },
    Ratio {
        #[serde(rename = "T_list")]
        t_list: Vec<usize>,
        c: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(flatten)]
    pub mode: SweepMode,
    #[serde(default = "default_lag")]
    pub lag: usize,
    pub distribution: EntryDistribution,
    pub base_seed: u64,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default = "default_orders")]
    pub moment_orders: Vec<u32>,
}

impl SweepConfig {
    /// The (p, T) grid points of the sweep.
    pub fn points(&self) -> Result<Vec<(usize, usize)>> {
        match &self.mode {
            SweepMode::Ultra { t_list, alpha } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::Config(format!(
                        "ultra sweep needs 0 < alpha < 1, got {alpha}"
                    )));
                }
                Ok(t_list
                    .iter()
                    .map(|&t| ((t as f64).powf(*alpha).round() as usize, t))
                    .collect())
            }
            SweepMode::Ratio { t_list, c } => {
                if !(*c > 0.0) {
                    return Err(Error::Config(format!("ratio sweep needs c > 0, got {c}")));
                }
                Ok(t_list.iter().map(|&t| ((*c * t as f64).round() as usize, t)).collect())
            }
        }
    }

    fn run_config(&self, p: usize, t: usize, point_index: usize) -> RunConfig {
        RunConfig {
            p,
            t,
            lag: self.lag,
            distribution: self.distribution,
            // decorrelate points without coupling them to list order twice
            base_seed: mix2(self.base_seed, 0x5EED_0000 + point_index as u64),
            replications: self.replications,
            moment_orders: self.moment_orders.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PointOutcome {
    Ok(PointSummary),
    Failed { p: usize, t: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub p: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub mean_ks_squared: Option<f64>,
    pub mean_ks_quarter: Option<f64>,
    pub median_lambda_max: Option<f64>,
    pub mean_m1: Option<f64>,
    pub record: RunRecord,
}

/// Aggregated trend flags across the sweep points, in list order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTrends {
    /// Mean KS (vs the squared law) strictly decreases at every step.
    pub ks_strictly_decreasing: bool,
    /// |median lambda_max - 4| weakly decreases at every step.
    pub lambda_gap_decreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub points: Vec<PointOutcome>,
    pub trends: SweepTrends,
}

/// Run every sweep point; per-point failures are recorded and the sweep
/// continues.
pub fn run_sweep(sweep: &SweepConfig) -> Result<SweepSummary> {
    run_sweep_with_workers(sweep, max_workers())
}

pub fn run_sweep_with_workers(sweep: &SweepConfig, workers: usize) -> Result<SweepSummary> {
    let grid = sweep.points()?;
    let points: Vec<PointOutcome> = grid
        .iter()
        .enumerate()
        .map(|(idx, &(p, t))| {
            let cfg = sweep.run_config(p, t, idx);
            match run_single_with_workers(&cfg, workers) {
                Ok(record) => PointOutcome::Ok(PointSummary {
                    p,
                    t,
                    mean_ks_squared: record.mean_ks_squared(),
                    mean_ks_quarter: mean(record.ok_stats().map(|s| s.ks_quarter)),
                    median_lambda_max: record.median_lambda_max(),
                    mean_m1: record.mean_moment(1),
                    record,
                }),
                Err(e) => PointOutcome::Failed { p, t, message: e.to_string() },
            }
        })
        .collect();

    let ks: Vec<f64> = points
        .iter()
        .filter_map(|pt| match pt {
            PointOutcome::Ok(s) => s.mean_ks_squared,
            PointOutcome::Failed { .. } => None,
        })
        .collect();
    let gaps: Vec<f64> = points
        .iter()
        .filter_map(|pt| match pt {
            PointOutcome::Ok(s) => s.median_lambda_max.map(|m| (m - 4.0).abs()),
            PointOutcome::Failed { .. } => None,
        })
        .collect();
    let trends = SweepTrends {
        ks_strictly_decreasing: ks.len() >= 2 && ks.windows(2).all(|w| w[1] < w[0]),
        lambda_gap_decreasing: gaps.len() >= 2 && gaps.windows(2).all(|w| w[1] <= w[0]),
    };
    Ok(SweepSummary { config: sweep.clone(), points, trends })
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Jsonl,
}

impl ExportFormat {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "csv" => Ok(ExportFormat::Csv),
            "jsonl" => Ok(ExportFormat::Jsonl),
            other => Err(Error::Config(format!("unknown export format '{other}'"))),
        }
    }
}

pub const CSV_HEADER: &str = "run_id,p,T,lag,dist,seed,rep,lambda_max,lambda_min_pos,\
ks_squared,ks_quarter,m1,m2,m3,m4,m5,m6,wall_ms";

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV rendering with one row per replication. Failed replications keep
/// their identifying columns and leave the statistics empty.
pub fn render_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        let cfg = &record.config;
        let prefix = format!(
            "{},{},{},{},{}",
            record.run_id,
            cfg.p,
            cfg.t,
            cfg.lag,
            cfg.distribution.tag()
        );
        for outcome in &record.replications {
            match outcome {
                RepOutcome::Ok(s) => {
                    let moment_cols: Vec<String> = (1..=6)
                        .map(|k| {
                            fmt_opt(s.moments.iter().find(|(o, _)| *o == k).map(|(_, v)| *v))
                        })
                        .collect();
                    out.push_str(&format!(
                        "{prefix},{},{},{},{},{},{},{},{}\n",
                        s.seed,
                        s.rep,
                        s.lambda_max,
                        fmt_opt(s.lambda_min_pos),
                        s.ks_squared,
                        s.ks_quarter,
                        moment_cols.join(","),
                        s.wall_ms,
                    ));
                }
                RepOutcome::Failed { rep, seed, .. } => {
                    // identifying columns only; the 11 statistic fields stay empty
                    out.push_str(&format!("{prefix},{seed},{rep}{}\n", ",".repeat(11)));
                }
            }
        }
    }
    out
}

/// JSONL rendering: one `RunRecord` object per line.
pub fn render_jsonl(records: &[RunRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Parse JSONL produced by [`render_jsonl`].
pub fn parse_jsonl(text: &str) -> Result<Vec<RunRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}

/// Write records to `path` in the given format.
pub fn export(records: &[RunRecord], format: ExportFormat, path: &Path) -> Result<()> {
    let body = match format {
        ExportFormat::Csv => render_csv(records),
        ExportFormat::Jsonl => render_jsonl(records),
    };
    let io_err = |source| Error::Io { path: path.display().to_string(), source };
    let mut file = fs::File::create(path).map_err(io_err)?;
    file.write_all(body.as_bytes()).map_err(io_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> RunConfig {
        RunConfig::new(4, 64, EntryDistribution::gaussian(), 7).with_replications(2)
    }

    #[test]
    fn records_are_deterministic() {
        let cfg = tiny_config();
        let a = run_single_with_workers(&cfg, 1).unwrap();
        let b = run_single_with_workers(&cfg, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let cfg = tiny_config().with_replications(8);
        let serial = run_single_with_workers(&cfg, 1).unwrap();
        let parallel = run_single_with_workers(&cfg, 4).unwrap();
        assert_eq!(render_csv(&[serial.clone()]), render_csv(&[parallel.clone()]));
        assert_eq!(render_jsonl(&[serial]), render_jsonl(&[parallel]));
    }

    #[test]
    fn single_replication_record_shape() {
        let cfg = RunConfig::new(2, 16, EntryDistribution::gaussian(), 3);
        let rec = run_single(&cfg).unwrap();
        assert_eq!(rec.replications.len(), 1);
        let stats = rec.replications[0].stats().unwrap();
        assert_eq!(stats.moments.len(), 6);
        assert_eq!(stats.moments[0].0, 1);
    }

    #[test]
    fn replication_seeds_follow_the_mix() {
        let cfg = tiny_config();
        let rec = run_single(&cfg).unwrap();
        for (r, outcome) in rec.replications.iter().enumerate() {
            assert_eq!(outcome.stats().unwrap().seed, mix2(cfg.base_seed, r as u64));
        }
    }

    #[test]
    fn ks_quarter_is_ks_squared_transferred() {
        // G(sqrt(x)) = F(x) pointwise, so both KS statistics coincide
        let cfg = tiny_config().with_replications(3);
        let rec = run_single(&cfg).unwrap();
        for s in rec.ok_stats() {
            assert!(
                (s.ks_squared - s.ks_quarter).abs() < 1e-12,
                "{} vs {}",
                s.ks_squared,
                s.ks_quarter
            );
        }
    }

    #[test]
    fn validation_rejects_degenerate_configs() {
        let mut cfg = tiny_config();
        cfg.p = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = tiny_config();
        cfg.lag = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = tiny_config();
        cfg.replications = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn ratio_regime_triggers_warning_not_error() {
        let cfg = RunConfig::new(64, 64, EntryDistribution::gaussian(), 1);
        let warnings = cfg.validate().unwrap();
        assert_eq!(warnings.len(), 1);
        let far = RunConfig::new(4, 64, EntryDistribution::gaussian(), 1);
        assert!(far.validate().unwrap().is_empty());
    }

    #[test]
    fn ultra_points_round_power_law() {
        let sweep = SweepConfig {
            mode: SweepMode::Ultra { t_list: vec![1024, 4096, 16384], alpha: 0.5 },
            lag: 1,
            distribution: EntryDistribution::gaussian(),
            base_seed: 1,
            replications: 1,
            moment_orders: default_orders(),
        };
        assert_eq!(sweep.points().unwrap(), vec![(32, 1024), (64, 4096), (128, 16384)]);
    }

    #[test]
    fn ratio_points_scale_linearly() {
        let sweep = SweepConfig {
            mode: SweepMode::Ratio { t_list: vec![256], c: 1.0 },
            lag: 1,
            distribution: EntryDistribution::gaussian(),
            base_seed: 1,
            replications: 1,
            moment_orders: default_orders(),
        };
        assert_eq!(sweep.points().unwrap(), vec![(256, 256)]);
        let ratios = SweepConfig {
            mode: SweepMode::Ratio { t_list: vec![100, 200, 400], c: 0.5 },
            ..sweep
        };
        assert_eq!(ratios.points().unwrap(), vec![(50, 100), (100, 200), (200, 400)]);
    }

    #[test]
    fn ultra_ratios_strictly_decrease() {
        let sweep = SweepConfig {
            mode: SweepMode::Ultra { t_list: vec![256, 1024, 4096], alpha: 0.4 },
            lag: 1,
            distribution: EntryDistribution::gaussian(),
            base_seed: 1,
            replications: 1,
            moment_orders: default_orders(),
        };
        let pts = sweep.points().unwrap();
        let ratios: Vec<f64> = pts.iter().map(|&(p, t)| p as f64 / t as f64).collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
    }

    #[test]
    fn invalid_sweep_parameters_rejected() {
        let bad_alpha = SweepConfig {
            mode: SweepMode::Ultra { t_list: vec![64], alpha: 1.0 },
            lag: 1,
            distribution: EntryDistribution::gaussian(),
            base_seed: 1,
            replications: 1,
            moment_orders: default_orders(),
        };
        assert!(bad_alpha.points().is_err());
        let bad_c = SweepConfig {
            mode: SweepMode::Ratio { t_list: vec![64], c: 0.0 },
            ..bad_alpha
        };
        assert!(bad_c.points().is_err());
    }

    #[test]
    fn csv_shape_and_field_identity() {
        let cfg = tiny_config();
        let rec = run_single(&cfg).unwrap();
        let csv = render_csv(&[rec.clone()]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3); // header + 2 reps
        assert_eq!(lines[0], CSV_HEADER);
        // lambda_max column matches the record
        let first = rec.replications[0].stats().unwrap();
        let cols: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cols.len(), 18);
        assert_eq!(cols[7], first.lambda_max.to_string());
        assert_eq!(cols[17], "0"); // wall_ms placeholder
    }

    #[test]
    fn jsonl_round_trips() {
        let cfg = tiny_config();
        let rec = run_single(&cfg).unwrap();
        let text = render_jsonl(&[rec.clone()]);
        let back = parse_jsonl(&text).unwrap();
        assert_eq!(back, vec![rec]);
    }

    #[test]
    fn sweep_config_json_round_trip() {
        let text = r#"{
            "mode": "ultra", "T_list": [640, 2560], "alpha": 0.5,
            "distribution": {"family": "gaussian"},
            "base_seed": 9, "replications": 2
        }"#;
        let sweep: SweepConfig = serde_json::from_str(text).unwrap();
        assert_eq!(sweep.lag, 1);
        assert_eq!(sweep.replications, 2);
        let back = serde_json::to_string(&sweep).unwrap();
        let again: SweepConfig = serde_json::from_str(&back).unwrap();
        assert_eq!(sweep, again);
    }

    #[test]
    fn sweep_summary_is_deterministic_across_workers() {
        let sweep = SweepConfig {
            mode: SweepMode::Ultra { t_list: vec![64, 256], alpha: 0.5 },
            lag: 1,
            distribution: EntryDistribution::gaussian(),
            base_seed: 3,
            replications: 4,
            moment_orders: default_orders(),
        };
        let a = run_sweep_with_workers(&sweep, 1).unwrap();
        let b = run_sweep_with_workers(&sweep, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
