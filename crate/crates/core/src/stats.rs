//! Empirical spectral statistics.
//!
//! The convergence metric throughout is the exact Kolmogorov-Smirnov
//! sup-distance between the empirical spectral cdf and an analytic limit
//! law, evaluated at the sample points (no binning): for a sorted sample
//! this is `max_i max(|i/p - F(x_i)|, |(i-1)/p - F(x_i)|)`.

use serde::{Deserialize, Serialize};

use crate::combinatorics;
use crate::error::{Error, Result};
use crate::laws::LimitLaw;

/// Provenance of a spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMeta {
    pub p: usize,
    pub t: usize,
    pub lag: usize,
    pub dist: String,
    pub seed: u64,
}

/// Sorted nonnegative eigenvalues with their provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    pub meta: SpectrumMeta,
}

impl Spectrum {
    /// Sorts the values; rejects NaN and negative entries.
    pub fn new(mut values: Vec<f64>, meta: SpectrumMeta) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Domain("spectrum contains NaN".into()));
        }
        if let Some(&v) = values.iter().find(|&&v| v < 0.0) {
            return Err(Error::Domain(format!("spectrum contains negative value {v}")));
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Spectrum { values, meta })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elementwise square root: the singular values behind the eigenvalues.
    pub fn sqrt_spectrum(&self) -> Spectrum {
        Spectrum {
            values: self.values.iter().map(|v| v.sqrt()).collect(),
            meta: self.meta.clone(),
        }
    }
}

/// Exact KS sup-distance between the empirical cdf of the spectrum and the
/// analytic cdf of `law`. Depends only on the values, never the metadata.
pub fn ks_distance(spec: &Spectrum, law: LimitLaw) -> Result<f64> {
    if spec.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let n = spec.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in spec.values().iter().enumerate() {
        let f = law.cdf(x);
        let above = ((i + 1) as f64 / n - f).abs();
        let below = (i as f64 / n - f).abs();
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// Two-sample KS sup-distance between spectra.
pub fn ks_two_sample(a: &Spectrum, b: &Spectrum) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let (xs, ys) = (a.values(), b.values());
    let (mut i, mut j) = (0usize, 0usize);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let mut d: f64 = 0.0;
    // evaluate the gap only after consuming every copy of the current value
    while i < xs.len() || j < ys.len() {
        let v = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Empirical moment (1/p) sum lambda_i^k = (1/p) tr A^k.
pub fn empirical_moment(spec: &Spectrum, k: u32) -> f64 {
    assert!(k >= 1, "moment order must be >= 1");
    let n = spec.len().max(1) as f64;
    spec.values().iter().map(|v| v.powi(k as i32)).sum::<f64>() / n
}

/// Largest value and smallest strictly positive value (None if all zero,
/// using the same zero threshold as the eigensolver clamp).
pub fn extremes(spec: &Spectrum) -> Result<(f64, Option<f64>)> {
    if spec.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let lambda_max = *spec.values().last().unwrap();
    let zero_tol = 1e-10 * lambda_max.max(1.0);
    let lambda_min_pos = spec.values().iter().copied().find(|&v| v > zero_tol);
    Ok((lambda_max, lambda_min_pos))
}

/// Empirical moments against the exact limit moments (Catalan numbers).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentReport {
    pub orders: Vec<u32>,
    pub empirical: Vec<f64>,
    pub theoretical: Vec<f64>,
    pub deviation: Vec<f64>,
}

pub fn moment_report(spec: &Spectrum, orders: &[u32]) -> MomentReport {
    let empirical: Vec<f64> = orders.iter().map(|&k| empirical_moment(spec, k)).collect();
    let theoretical: Vec<f64> =
        orders.iter().map(|&k| combinatorics::catalan_f64(k as u64)).collect();
    let deviation = empirical.iter().zip(&theoretical).map(|(e, t)| e - t).collect();
    MomentReport { orders: orders.to_vec(), empirical, theoretical, deviation }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub emp_density: f64,
    pub theory_density: f64,
}

/// Equal-width histogram over [0, max(4.5, lambda_max)] with the limit-law
/// density evaluated at bin midpoints. Counts always partition the sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramTable {
    pub law: LimitLaw,
    pub bins: Vec<HistogramBin>,
}

impl HistogramTable {
    /// CSV rendering: `bin_lo,bin_hi,count,emp_density,theory_density`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count,emp_density,theory_density\n");
        for b in &self.bins {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                b.lo, b.hi, b.count, b.emp_density, b.theory_density
            ));
        }
        out
    }
}

/// Default bin count used by the exporters.
pub const DEFAULT_BINS: usize = 64;

pub fn histogram(spec: &Spectrum, bins: usize, law: LimitLaw) -> Result<HistogramTable> {
    if bins < 1 {
        return Err(Error::Config("histogram needs at least one bin".into()));
    }
    if spec.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let lambda_max = *spec.values().last().unwrap();
    // range floor 4.5 covers the support (0, 4] with headroom for
    // finite-size overshoot of the top eigenvalue
    let hi = lambda_max.max(4.5);
    let width = hi / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in spec.values() {
        let idx = ((v / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = spec.len() as f64;
    let table = counts
        .iter()
        .enumerate()
        .map(|(i, &count)| {
            let lo = i as f64 * width;
            let hi = (i + 1) as f64 * width;
            HistogramBin {
                lo,
                hi,
                count,
                emp_density: count as f64 / (n * width),
                theory_density: law.pdf(0.5 * (lo + hi)),
            }
        })
        .collect();
    Ok(HistogramTable { law, bins: table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(values: Vec<f64>) -> Spectrum {
        Spectrum::new(
            values,
            SpectrumMeta { p: 0, t: 0, lag: 1, dist: "test".into(), seed: 0 },
        )
        .unwrap()
    }

    #[test]
    fn ks_of_plugin_quantiles_is_half_bin() {
        let p = 100;
        let vals: Vec<f64> = (0..p)
            .map(|i| LimitLaw::Squared.quantile((i as f64 + 0.5) / p as f64).unwrap())
            .collect();
        let d = ks_distance(&spec(vals), LimitLaw::Squared).unwrap();
        assert!((d - 0.005).abs() < 1e-9, "{d}");
    }

    #[test]
    fn ks_of_degenerate_zero_sample_is_one() {
        let d = ks_distance(&spec(vec![0.0; 8]), LimitLaw::Squared).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn ks_empty_is_an_error() {
        assert!(matches!(ks_distance(&spec(vec![]), LimitLaw::Squared), Err(Error::EmptySpectrum)));
    }

    #[test]
    fn ks_ignores_metadata() {
        let mut a = spec(vec![0.5, 1.0, 2.5]);
        let d1 = ks_distance(&a, LimitLaw::Squared).unwrap();
        a.meta.dist = "renamed".into();
        a.meta.seed = 777;
        let d2 = ks_distance(&a, LimitLaw::Squared).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn ks_two_sample_basics() {
        let a = spec(vec![1.0, 2.0, 3.0, 4.0]);
        let b = spec(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(ks_two_sample(&a, &b).unwrap(), 0.0);
        let c = spec(vec![10.0, 11.0, 12.0, 13.0]);
        assert_eq!(ks_two_sample(&a, &c).unwrap(), 1.0);
    }

    #[test]
    fn moment_of_constant_spectrum() {
        assert_eq!(empirical_moment(&spec(vec![1.0, 1.0, 1.0]), 5), 1.0);
    }

    #[test]
    fn first_moment_is_the_mean() {
        let s = spec(vec![0.25, 1.5, 3.25]);
        let mean = (0.25 + 1.5 + 3.25) / 3.0;
        assert_eq!(empirical_moment(&s, 1), mean);
    }

    #[test]
    fn power_sum_matches_matrix_power_trace() {
        use crate::eigensolve::eigvals_sym;
        use crate::mat::Mat;
        // PSD 4x4 = B B^T for deterministic B
        let b = Mat::from_fn(4, 4, |i, j| ((i * 7 + j * 3 + 1) % 5) as f64 - 2.0);
        let a = b.mul_transpose(&b);
        let evals = eigvals_sym(&a).unwrap();
        let s = spec(evals.iter().map(|v| v.max(0.0)).collect());
        // tr(A^3) by explicit multiplication
        let a2 = a.mul_transpose(&a); // A * A^T = A^2 (A symmetric)
        let mut tr3 = 0.0;
        for i in 0..4 {
            for k in 0..4 {
                tr3 += a2[(i, k)] * a[(i, k)];
            }
        }
        let m3 = empirical_moment(&s, 3);
        assert!((m3 - tr3 / 4.0).abs() <= 1e-9 * (tr3 / 4.0).abs().max(1.0), "{m3} vs {}", tr3 / 4.0);
    }

    #[test]
    fn extremes_examples() {
        let (max, minpos) = extremes(&spec(vec![0.0, 0.1, 3.9])).unwrap();
        assert_eq!(max, 3.9);
        assert_eq!(minpos, Some(0.1));
        let (max, minpos) = extremes(&spec(vec![0.0, 0.0])).unwrap();
        assert_eq!(max, 0.0);
        assert_eq!(minpos, None);
    }

    #[test]
    fn histogram_single_bin_concentration() {
        let s = spec(vec![1.0, 1.01, 1.02, 1.03]);
        let h = histogram(&s, 9, LimitLaw::Squared).unwrap();
        let total: usize = h.bins.iter().map(|b| b.count).sum();
        assert_eq!(total, 4);
        assert_eq!(h.bins.iter().filter(|b| b.count > 0).count(), 1);
        assert_eq!(h.bins[2].count, 4); // bin [1.0, 1.5) with hi = 4.5
    }

    #[test]
    fn histogram_counts_partition_the_sample() {
        let vals: Vec<f64> = (0..97).map(|i| (i as f64 * 0.721) % 5.3).collect();
        let s = spec(vals);
        let h = histogram(&s, 16, LimitLaw::Squared).unwrap();
        assert_eq!(h.bins.iter().map(|b| b.count).sum::<usize>(), 97);
        assert_eq!(h.bins.len(), 16);
    }

    #[test]
    fn histogram_csv_header_and_rows() {
        let s = spec(vec![0.5, 2.0]);
        let h = histogram(&s, 4, LimitLaw::Squared).unwrap();
        let csv = h.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "bin_lo,bin_hi,count,emp_density,theory_density");
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn moment_report_deviations() {
        let s = spec(vec![1.0, 1.0]);
        let r = moment_report(&s, &[1, 2, 3]);
        assert_eq!(r.theoretical, vec![1.0, 2.0, 5.0]);
        assert_eq!(r.empirical, vec![1.0, 1.0, 1.0]);
        assert_eq!(r.deviation, vec![0.0, -1.0, -4.0]);
    }

    #[test]
    fn negative_or_nan_spectra_rejected() {
        let meta = SpectrumMeta { p: 0, t: 0, lag: 1, dist: "x".into(), seed: 0 };
        assert!(Spectrum::new(vec![-0.1], meta.clone()).is_err());
        assert!(Spectrum::new(vec![f64::NAN], meta).is_err());
    }
}
