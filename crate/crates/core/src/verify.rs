//! Self-verification suite: the analytic and combinatorial identities the
//! rest of the crate rests on, bundled into one report with measured
//! deviations. Failures are report entries, never panics.

use num_bigint::BigUint;
use num_complex::Complex64;
use serde::Serialize;

use crate::acv;
use crate::combinatorics::{self, catalan};
use crate::eigensolve;
use crate::ensemble::{self, make_sampler, mix2, EntryDistribution};
use crate::laws::{self, LimitLaw};
use crate::mat::Mat;
use crate::stats;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest measured deviation for the check (0 for pure assertions).
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn measured(name: &str, deviation: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: deviation.is_finite() && deviation <= tolerance,
            deviation,
            tolerance,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Individual named checks. Each returns a measured deviation against a
/// pinned tolerance so that reports stay comparable across runs.
pub mod checks {
    use super::*;

    pub fn pdf_normalization(law: LimitLaw) -> CheckResult {
        let mass = laws::pdf_mass_by_quadrature(law, 1e-12);
        CheckResult::measured(
            &format!("pdf_normalization_{}", law.name()),
            (mass - 1.0).abs(),
            1e-10,
            format!("quadrature mass = {mass}"),
        )
    }

    /// Quadrature moments of the squared law vs the exact integer formula.
    /// Parameterized by the integer source so a corrupted table is caught.
    pub fn squared_moments_match(catalan_fn: impl Fn(u64) -> BigUint) -> CheckResult {
        let mut worst = 0.0f64;
        for k in 1..=8u32 {
            let quad = laws::moment_by_quadrature(LimitLaw::Squared, k, 1e-11);
            let exact = big_to_f64(&catalan_fn(k as u64));
            worst = worst.max((quad - exact).abs() / exact.max(1.0));
        }
        CheckResult::measured(
            "squared_moments_match_catalan",
            worst,
            1e-8,
            "k = 1..8, relative",
        )
    }

    /// Dyck-path enumeration vs the closed formula vs the integer source.
    pub fn moment_dyck_catalan(catalan_fn: impl Fn(u64) -> BigUint) -> CheckResult {
        for k in 1..=12u64 {
            let dyck = match combinatorics::count_dyck_paths(k) {
                Ok(v) => v,
                Err(e) => {
                    return CheckResult::measured(
                        "moment_dyck_catalan_equality",
                        f64::INFINITY,
                        0.5,
                        e.to_string(),
                    )
                }
            };
            let formula = combinatorics::moment_formula(k).unwrap();
            let cat = catalan_fn(k);
            if dyck != formula || formula != cat {
                return CheckResult::measured(
                    "moment_dyck_catalan_equality",
                    1.0,
                    0.5,
                    format!("k = {k}: dyck {dyck}, formula {formula}, catalan {cat}"),
                );
            }
        }
        CheckResult::measured("moment_dyck_catalan_equality", 0.0, 0.5, "k = 1..12 exact")
    }

    pub fn iso_class_dominant_term() -> CheckResult {
        for k in 1..=20u64 {
            let count = combinatorics::iso_class_count(k, k).unwrap();
            let moment = combinatorics::moment_formula(k).unwrap();
            if count != moment {
                return CheckResult::measured(
                    "iso_class_count_dominant_term",
                    1.0,
                    0.5,
                    format!("k = {k}: {count} vs {moment}"),
                );
            }
        }
        CheckResult::measured("iso_class_count_dominant_term", 0.0, 0.5, "k = 1..20 exact")
    }

    pub fn stieltjes_quadratic_identity() -> CheckResult {
        let mut worst = 0.0f64;
        for z in [
            Complex64::new(-2.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(6.0, 0.0),
        ] {
            let s = laws::stieltjes_squared(z).unwrap();
            worst = worst.max((z * s * s + z * s + 1.0).norm());
        }
        CheckResult::measured(
            "stieltjes_quadratic_identity",
            worst,
            1e-12,
            "z in {-2, -1, 6}",
        )
    }

    pub fn stieltjes_matches_quadrature() -> CheckResult {
        let z = Complex64::new(-1.0, 0.0);
        let s = laws::stieltjes_squared(z).unwrap();
        let q = laws::stieltjes_squared_by_quadrature(z, 1e-9);
        CheckResult::measured(
            "stieltjes_matches_quadrature",
            (s - q).norm(),
            1e-6,
            format!("closed {s}, quadrature {q}"),
        )
    }

    pub fn stieltjes_asymptotic() -> CheckResult {
        let z = Complex64::new(1e6, 0.0);
        let s = laws::stieltjes_squared(z).unwrap();
        CheckResult::measured(
            "stieltjes_asymptotic_reciprocal",
            ((-z * s).re - 1.0).abs() + (-z * s).im.abs(),
            1e-5,
            "-z s(z) -> 1 at z = 1e6",
        )
    }

    pub fn cdf_pushforward_quarter() -> CheckResult {
        let mut worst = 0.0f64;
        for i in 0..=1000 {
            let x = 2.0 * i as f64 / 1000.0;
            let lhs = LimitLaw::Quarter.cdf(x);
            let rhs = 2.0 * LimitLaw::Semicircle.cdf(x) - 1.0;
            worst = worst.max((lhs - rhs).abs());
        }
        CheckResult::measured(
            "cdf_pushforward_quarter_from_semicircle",
            worst,
            1e-12,
            "1000-point grid on [0, 2]",
        )
    }

    pub fn cdf_pushforward_squared() -> CheckResult {
        let mut worst = 0.0f64;
        for i in 0..=1000 {
            let x = 4.0 * i as f64 / 1000.0;
            let lhs = LimitLaw::Squared.cdf(x);
            let rhs = LimitLaw::Quarter.cdf(x.sqrt());
            worst = worst.max((lhs - rhs).abs());
        }
        CheckResult::measured(
            "cdf_pushforward_squared_from_quarter",
            worst,
            1e-12,
            "1000-point grid on [0, 4]",
        )
    }

    pub fn cdf_matches_quadrature() -> CheckResult {
        let mut worst = 0.0f64;
        for law in [LimitLaw::Semicircle, LimitLaw::Quarter, LimitLaw::Squared] {
            let (lo, hi) = law.support();
            for i in 1..8 {
                let x = lo + (hi - lo) * i as f64 / 8.0;
                worst = worst.max((law.cdf(x) - laws::cdf_by_quadrature(law, x, 1e-11)).abs());
            }
        }
        CheckResult::measured("cdf_matches_quadrature", worst, 1e-9, "all three laws")
    }

    pub fn quarter_first_moment() -> CheckResult {
        let m1 = LimitLaw::Quarter.moment(1);
        CheckResult::measured(
            "quarter_first_moment",
            (m1 - 8.0 / (3.0 * std::f64::consts::PI)).abs(),
            1e-10,
            format!("m1 = {m1}"),
        )
    }

    pub fn quantile_round_trip() -> CheckResult {
        let mut worst = 0.0f64;
        for law in [LimitLaw::Semicircle, LimitLaw::Quarter, LimitLaw::Squared] {
            let (lo, hi) = law.support();
            for i in 1..32 {
                let x = lo + (hi - lo) * i as f64 / 32.0;
                let back = law.quantile(law.cdf(x)).unwrap();
                worst = worst.max((back - x).abs());
            }
        }
        CheckResult::measured("quantile_round_trip", worst, 1e-8, "interior grids")
    }

    pub fn eigensolver_matches_jacobi() -> CheckResult {
        let mut worst = 0.0f64;
        for seed in 0..20u64 {
            let n = 3 + (seed % 10) as usize;
            let m = random_symmetric(n, seed);
            let ql = eigensolve::eigvals_sym(&m).unwrap();
            let jac = eigensolve::jacobi_eigvals(&m).unwrap();
            for (a, b) in ql.iter().zip(&jac) {
                worst = worst.max((a - b).abs());
            }
        }
        CheckResult::measured(
            "eigensolver_matches_jacobi",
            worst,
            1e-10,
            "20 random matrices, n <= 12",
        )
    }

    pub fn eigensolver_trace_frobenius() -> CheckResult {
        let m = random_symmetric(128, 77);
        let e = eigensolve::eigvals_sym(&m).unwrap();
        let sum: f64 = e.iter().sum();
        let sum2: f64 = e.iter().map(|l| l * l).sum();
        let dev_tr = (sum - m.trace()).abs() / m.trace().abs().max(1.0);
        let dev_fro = (sum2 - m.frobenius_sq()).abs() / m.frobenius_sq();
        CheckResult::measured(
            "eigensolver_trace_frobenius",
            dev_tr.max(dev_fro),
            1e-9,
            "n = 128, relative",
        )
    }

    pub fn acv_product_equals_sum() -> CheckResult {
        let sampler = make_sampler(EntryDistribution::gaussian()).unwrap();
        let mut worst = 0.0f64;
        for (p, t, lag, seed) in [(2usize, 5usize, 1usize, 1u64), (5, 8, 2, 2), (8, 8, 3, 3)] {
            let panel = ensemble::sample_panel(&sampler, p, t, lag, seed).unwrap();
            let (e1, e2) = acv::build_embeddings(&panel);
            let x = acv::build_acv(&e1, &e2, t, lag);
            for i in 0..p {
                for j in 0..p {
                    let mut acc = 0.0;
                    for u in 0..t {
                        acc += panel.entry(i, u + lag) * panel.entry(j, u);
                    }
                    worst = worst.max((x.x[(i, j)] - acc / t as f64).abs());
                }
            }
        }
        CheckResult::measured("acv_product_equals_sum", worst, 1e-12, "p, T <= 8")
    }

    pub fn gram_trace_expectation() -> CheckResult {
        // E (1/p) tr A = 1 exactly; small Monte Carlo with pinned seeds
        let sampler = make_sampler(EntryDistribution::gaussian()).unwrap();
        let mut sum = 0.0;
        let reps = 4;
        for r in 0..reps {
            let panel = ensemble::sample_panel(&sampler, 32, 3200, 1, mix2(0xC0FFEE, r)).unwrap();
            let gram = acv::gram_from_panel(&panel);
            sum += gram.a.trace() / 32.0;
        }
        let mean = sum / reps as f64;
        CheckResult::measured(
            "gram_trace_expectation",
            (mean - 1.0).abs(),
            0.05,
            format!("mean (1/p) tr A = {mean} over {reps} reps at (32, 3200)"),
        )
    }

    pub fn sampler_standardization() -> CheckResult {
        let mut worst = 0.0f64;
        let mut detail = String::new();
        for dist in [
            EntryDistribution::gaussian(),
            EntryDistribution::rademacher(),
            EntryDistribution::uniform(),
            EntryDistribution::student_t(5.0),
        ] {
            let (mean, var) = mc_mean_var(dist, 1_000_000, 0xA11CE);
            worst = worst.max(mean.abs() / 0.01).max((var - 1.0).abs() / 0.03);
            detail.push_str(&format!("{}: mean {mean:.2e} var {var:.4}; ", dist.tag()));
        }
        // deviation normalized so tolerance 1.0 encodes both bounds
        CheckResult::measured("sampler_standardization", worst, 1.0, detail)
    }

    pub fn truncated_standardization() -> CheckResult {
        let mut worst = 0.0f64;
        let mut detail = String::new();
        for dist in [
            ensemble::truncate_spec(EntryDistribution::gaussian(), 3.0).unwrap(),
            ensemble::truncate_spec(
                EntryDistribution::student_t(5.0),
                ensemble::lsd_clip_threshold(4096, None),
            )
            .unwrap(),
        ] {
            let (mean, var) = mc_mean_var(dist, 1_000_000, 0xBEE);
            worst = worst.max(mean.abs() / 0.01).max((var - 1.0).abs() / 0.03);
            let sampler = make_sampler(dist).unwrap();
            let bound = sampler.support_bound().unwrap();
            for i in 0..10_000u32 {
                if sampler.draw(5, i, 1).abs() > bound {
                    worst = worst.max(f64::INFINITY);
                }
            }
            detail.push_str(&format!("{}: mean {mean:.2e} var {var:.4}; ", dist.tag()));
        }
        CheckResult::measured("truncated_standardization_and_support", worst, 1.0, detail)
    }

    pub fn entry_moment_identities() -> CheckResult {
        let cases = [
            (EntryDistribution::gaussian(), 4u32, 3.0),
            (EntryDistribution::rademacher(), 4, 1.0),
            (EntryDistribution::uniform(), 2, 1.0),
            (EntryDistribution::student_t(5.0), 4, 9.0),
        ];
        let mut worst = 0.0f64;
        for (dist, order, expect) in cases {
            let m = ensemble::entry_moment(dist, order).unwrap();
            worst = worst.max((m - expect).abs());
        }
        CheckResult::measured("entry_moment_identities", worst, 1e-6, "closed forms")
    }

    pub fn panel_reproducibility() -> CheckResult {
        let sampler = make_sampler(EntryDistribution::gaussian()).unwrap();
        let a = ensemble::sample_panel(&sampler, 3, 5, 1, 42).unwrap();
        let b = ensemble::sample_panel(&sampler, 3, 5, 1, 42).unwrap();
        let c = ensemble::sample_panel(&sampler, 3, 5, 1, 43).unwrap();
        let identical = a == b;
        let sensitive =
            (0..3).any(|i| (0..6).any(|j| a.entry(i, j) != c.entry(i, j)));
        CheckResult::measured(
            "panel_reproducibility",
            if identical && sensitive { 0.0 } else { 1.0 },
            0.5,
            "bitwise repeat + seed sensitivity",
        )
    }

    pub fn ks_plugin_quantiles() -> CheckResult {
        let p = 100;
        let vals: Vec<f64> = (0..p)
            .map(|i| LimitLaw::Squared.quantile((i as f64 + 0.5) / p as f64).unwrap())
            .collect();
        let spec = stats::Spectrum::new(
            vals,
            stats::SpectrumMeta { p, t: 0, lag: 1, dist: "plugin".into(), seed: 0 },
        )
        .unwrap();
        let d = stats::ks_distance(&spec, LimitLaw::Squared).unwrap();
        CheckResult::measured(
            "ks_plugin_quantiles",
            (d - 1.0 / (2.0 * p as f64)).abs(),
            1e-9,
            format!("D = {d}"),
        )
    }

    pub fn spectrum_scalar_case() -> CheckResult {
        let sampler = make_sampler(EntryDistribution::gaussian()).unwrap();
        let panel = ensemble::sample_panel(&sampler, 1, 2, 1, 3).unwrap();
        let spec = acv::spectrum_pipeline(&panel, "gaussian").unwrap();
        let x = (panel.entry(0, 1) * panel.entry(0, 0) + panel.entry(0, 2) * panel.entry(0, 1))
            / 2.0;
        let expect = 2.0 * x * x;
        CheckResult::measured(
            "spectrum_scalar_case",
            (spec.values()[0] - expect).abs(),
            1e-12,
            "p = 1: single eigenvalue T x^2",
        )
    }

    fn mc_mean_var(dist: EntryDistribution, n: usize, seed: u64) -> (f64, f64) {
        let sampler = make_sampler(dist).unwrap();
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for i in 0..n {
            let x = sampler.draw(seed, (i >> 16) as u32, (i & 0xFFFF) as u32);
            sum += x;
            sum2 += x * x;
        }
        let mean = sum / n as f64;
        (mean, sum2 / n as f64 - mean * mean)
    }

    fn random_symmetric(n: usize, seed: u64) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let bits = mix2(seed, (i * n + j) as u64);
                let v = ((bits >> 11) as f64 / 9007199254740992.0) * 2.0 - 1.0;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    fn big_to_f64(v: &BigUint) -> f64 {
        use num_traits::ToPrimitive;
        v.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Run the full suite with the production integer source.
pub fn verify_suite() -> VerificationReport {
    verify_suite_with_catalan(catalan)
}

/// Suite with an injectable Catalan source; the production path passes
/// [`catalan`], tests pass corrupted tables to confirm the suite notices.
pub fn verify_suite_with_catalan(
    catalan_fn: impl Fn(u64) -> BigUint + Copy,
) -> VerificationReport {
    let checks = vec![
        checks::pdf_normalization(LimitLaw::Semicircle),
        checks::pdf_normalization(LimitLaw::Quarter),
        checks::pdf_normalization(LimitLaw::Squared),
        checks::squared_moments_match(catalan_fn),
        checks::moment_dyck_catalan(catalan_fn),
        checks::iso_class_dominant_term(),
        checks::stieltjes_quadratic_identity(),
        checks::stieltjes_matches_quadrature(),
        checks::stieltjes_asymptotic(),
        checks::cdf_pushforward_quarter(),
        checks::cdf_pushforward_squared(),
        checks::cdf_matches_quadrature(),
        checks::quarter_first_moment(),
        checks::quantile_round_trip(),
        checks::eigensolver_matches_jacobi(),
        checks::eigensolver_trace_frobenius(),
        checks::acv_product_equals_sum(),
        checks::gram_trace_expectation(),
        checks::sampler_standardization(),
        checks::truncated_standardization(),
        checks::entry_moment_identities(),
        checks::panel_reproducibility(),
        checks::ks_plugin_quantiles(),
        checks::spectrum_scalar_case(),
    ];
    VerificationReport { checks }
}
