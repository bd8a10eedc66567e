//! Browser bindings for the spectrum explorer page.
//!
//! Three operations, each returning a JSON payload string:
//!
//! - [`simulate_spectrum`]: sample a panel, build the normalized Gram
//!   matrix, and return its spectrum with histogram + limit-law overlays
//!   (eigenvalues vs the squared law, singular values vs the quarter law);
//! - [`law_curve`]: pdf/cdf samples of one analytic limit law;
//! - [`qq_points`]: quantile-quantile pairs of an empirical spectrum
//!   against its limit law.
//!
//! Everything is counter-seeded, so the page reproduces a spectrum exactly
//! from (dist, p, T, lag, seed). The `*_impl` functions are plain Rust and
//! testable on any target; the exported wrappers only translate errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use acv_core::acv::spectrum_pipeline;
use acv_core::combinatorics::catalan_f64;
use acv_core::ensemble::{make_sampler, sample_panel, EntryDistribution};
use acv_core::laws::LimitLaw;
use acv_core::stats::{self, Spectrum};

#[derive(Serialize)]
struct HistogramOut {
    edges: Vec<f64>,
    counts: Vec<usize>,
    emp_density: Vec<f64>,
    theory_density: Vec<f64>,
}

#[derive(Serialize)]
struct MomentRow {
    k: u32,
    empirical: f64,
    catalan: f64,
}

#[derive(Serialize)]
struct SpectrumOut {
    p: usize,
    t: usize,
    lag: usize,
    dist: String,
    seed: u64,
    eigenvalues: Vec<f64>,
    lambda_max: f64,
    lambda_min_pos: Option<f64>,
    ks_squared: f64,
    ks_quarter: f64,
    moments: Vec<MomentRow>,
    eig_hist: HistogramOut,
    sv_hist: HistogramOut,
}

fn parse_law(name: &str) -> Result<LimitLaw, String> {
    match name {
        "semicircle" => Ok(LimitLaw::Semicircle),
        "quarter" => Ok(LimitLaw::Quarter),
        "squared" => Ok(LimitLaw::Squared),
        other => Err(format!("unknown law '{other}'")),
    }
}

fn s_err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn build_spectrum(
    p: usize,
    t: usize,
    lag: usize,
    dist_json: &str,
    seed: u64,
) -> Result<(Spectrum, EntryDistribution), String> {
    let dist: EntryDistribution = serde_json::from_str(dist_json).map_err(s_err)?;
    let sampler = make_sampler(dist).map_err(s_err)?;
    let panel = sample_panel(&sampler, p, t, lag, seed).map_err(s_err)?;
    let spectrum = spectrum_pipeline(&panel, &dist.tag()).map_err(s_err)?;
    Ok((spectrum, dist))
}

fn histogram_out(spec: &Spectrum, bins: usize, law: LimitLaw) -> Result<HistogramOut, String> {
    let h = stats::histogram(spec, bins, law).map_err(s_err)?;
    let mut edges: Vec<f64> = h.bins.iter().map(|b| b.lo).collect();
    if let Some(last) = h.bins.last() {
        edges.push(last.hi);
    }
    Ok(HistogramOut {
        edges,
        counts: h.bins.iter().map(|b| b.count).collect(),
        emp_density: h.bins.iter().map(|b| b.emp_density).collect(),
        theory_density: h.bins.iter().map(|b| b.theory_density).collect(),
    })
}

fn simulate_spectrum_impl(
    p: usize,
    t: usize,
    lag: usize,
    dist_json: &str,
    seed: u64,
    bins: usize,
) -> Result<String, String> {
    let (spectrum, dist) = build_spectrum(p, t, lag, dist_json, seed)?;
    let (lambda_max, lambda_min_pos) = stats::extremes(&spectrum).map_err(s_err)?;
    let ks_squared = stats::ks_distance(&spectrum, LimitLaw::Squared).map_err(s_err)?;
    let sqrt_spectrum = spectrum.sqrt_spectrum();
    let ks_quarter = stats::ks_distance(&sqrt_spectrum, LimitLaw::Quarter).map_err(s_err)?;
    let moments = (1..=6u32)
        .map(|k| MomentRow {
            k,
            empirical: stats::empirical_moment(&spectrum, k),
            catalan: catalan_f64(k as u64),
        })
        .collect();
    let out = SpectrumOut {
        p,
        t,
        lag,
        dist: dist.tag(),
        seed,
        eigenvalues: spectrum.values().to_vec(),
        lambda_max,
        lambda_min_pos,
        ks_squared,
        ks_quarter,
        eig_hist: histogram_out(&spectrum, bins, LimitLaw::Squared)?,
        sv_hist: histogram_out(&sqrt_spectrum, bins, LimitLaw::Quarter)?,
        moments,
    };
    serde_json::to_string(&out).map_err(s_err)
}

#[derive(Serialize)]
struct CurveOut {
    x: Vec<f64>,
    y: Vec<f64>,
}

fn law_curve_impl(law: &str, kind: &str, points: usize) -> Result<String, String> {
    let law = parse_law(law)?;
    let n = points.clamp(2, 100_000);
    let (lo, hi) = law.support();
    // the squared-law density is unbounded at 0; inset the grid slightly
    let lo = if law == LimitLaw::Squared && kind == "pdf" { lo + 1e-3 } else { lo };
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let xi = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        x.push(xi);
        y.push(match kind {
            "pdf" => law.pdf(xi),
            "cdf" => law.cdf(xi),
            other => return Err(format!("unknown curve kind '{other}'")),
        });
    }
    serde_json::to_string(&CurveOut { x, y }).map_err(s_err)
}

#[derive(Serialize)]
struct QqOut {
    theoretical: Vec<f64>,
    empirical: Vec<f64>,
    law: String,
}

fn qq_points_impl(
    p: usize,
    t: usize,
    lag: usize,
    dist_json: &str,
    seed: u64,
    law: &str,
) -> Result<String, String> {
    let law = parse_law(law)?;
    let (spectrum, _) = build_spectrum(p, t, lag, dist_json, seed)?;
    let spectrum = match law {
        LimitLaw::Quarter | LimitLaw::Semicircle => spectrum.sqrt_spectrum(),
        LimitLaw::Squared => spectrum,
    };
    let n = spectrum.len();
    let theoretical: Result<Vec<f64>, _> = (0..n)
        .map(|i| law.quantile((i as f64 + 0.5) / n as f64).map_err(s_err))
        .collect();
    let out = QqOut {
        theoretical: theoretical?,
        empirical: spectrum.values().to_vec(),
        law: law.name().to_string(),
    };
    serde_json::to_string(&out).map_err(s_err)
}

/// Simulate one panel and return its spectrum with limit-law overlays.
///
/// `dist_json` uses the config schema, e.g. `{"family":"gaussian"}` or
/// `{"family":"student_t","nu":5,"truncate_at":2.5}`.
#[wasm_bindgen]
pub fn simulate_spectrum(
    p: usize,
    t: usize,
    lag: usize,
    dist_json: &str,
    seed: u64,
    bins: usize,
) -> Result<String, JsError> {
    simulate_spectrum_impl(p, t, lag, dist_json, seed, bins).map_err(|e| JsError::new(&e))
}

/// Sample the pdf or cdf of a limit law on a uniform grid over its support.
#[wasm_bindgen]
pub fn law_curve(law: &str, kind: &str, points: usize) -> Result<String, JsError> {
    law_curve_impl(law, kind, points).map_err(|e| JsError::new(&e))
}

/// Quantile-quantile pairs of a simulated spectrum against a limit law:
/// eigenvalues vs the squared law, or singular values vs the quarter law.
#[wasm_bindgen]
pub fn qq_points(
    p: usize,
    t: usize,
    lag: usize,
    dist_json: &str,
    seed: u64,
    law: &str,
) -> Result<String, JsError> {
    qq_points_impl(p, t, lag, dist_json, seed, law).map_err(|e| JsError::new(&e))
}
