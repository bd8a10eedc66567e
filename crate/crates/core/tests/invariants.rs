//! Property-based invariants across modules.

use proptest::prelude::*;

use acv_core::acv;
use acv_core::combinatorics;
use acv_core::eigensolve;
use acv_core::ensemble::{self, make_sampler, EntryDistribution};
use acv_core::laws::LimitLaw;
use acv_core::mat::Mat;
use acv_core::stats::{self, Spectrum, SpectrumMeta};

fn symmetric_mat(n: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(-10.0f64..10.0, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = Mat::zeros(n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = it.next().unwrap();
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    })
}

fn spectrum(values: Vec<f64>) -> Spectrum {
    Spectrum::new(
        values,
        SpectrumMeta { p: 0, t: 0, lag: 1, dist: "prop".into(), seed: 0 },
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn acv_product_equals_literal_sum(
        p in 1usize..6,
        t in 1usize..7,
        lag in 0usize..3,
        seed in any::<u64>(),
    ) {
        let sampler = make_sampler(EntryDistribution::uniform()).unwrap();
        let panel = ensemble::sample_panel(&sampler, p, t, lag, seed).unwrap();
        let (e1, e2) = acv::build_embeddings(&panel);
        let x = acv::build_acv(&e1, &e2, t, lag);
        for i in 0..p {
            for j in 0..p {
                let mut acc = 0.0;
                for u in 0..t {
                    acc += panel.entry(i, u + lag) * panel.entry(j, u);
                }
                prop_assert!((x.x[(i, j)] - acc / t as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigensolver_preserves_trace_and_frobenius(m in (2usize..24).prop_flat_map(symmetric_mat)) {
        let e = eigensolve::eigvals_sym(&m).unwrap();
        let sum: f64 = e.iter().sum();
        let sum2: f64 = e.iter().map(|l| l * l).sum();
        prop_assert!((sum - m.trace()).abs() <= 1e-9 * m.trace().abs().max(1.0));
        prop_assert!((sum2 - m.frobenius_sq()).abs() <= 1e-9 * m.frobenius_sq().max(1.0));
    }

    #[test]
    fn eigensolver_scaling_equivariance(m in (2usize..12).prop_flat_map(symmetric_mat)) {
        let base = eigensolve::eigvals_sym(&m).unwrap();
        for c in [2.0, 1e-3] {
            let mut scaled = m.clone();
            scaled.scale(c);
            let e = eigensolve::eigvals_sym(&scaled).unwrap();
            for (l_scaled, l) in e.iter().zip(&base) {
                prop_assert!(
                    (l_scaled - c * l).abs() <= 1e-10 * (c * l).abs().max(1e-3 * c),
                    "c = {c}: {l_scaled} vs {}", c * l
                );
            }
        }
    }

    #[test]
    fn eigensolver_permutation_invariance(
        m in (3usize..10).prop_flat_map(symmetric_mat),
        swap in (0usize..10, 0usize..10),
    ) {
        let n = m.rows();
        let (a, b) = (swap.0 % n, swap.1 % n);
        // symmetric row/column permutation
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        let pm = Mat::from_fn(n, n, |i, j| m[(perm[i], perm[j])]);
        let e1 = eigensolve::eigvals_sym(&m).unwrap();
        let e2 = eigensolve::eigvals_sym(&pm).unwrap();
        for (x, y) in e1.iter().zip(&e2) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn ks_distance_is_a_probability(values in proptest::collection::vec(0.0f64..8.0, 1..64)) {
        let s = spectrum(values);
        for law in [LimitLaw::Semicircle, LimitLaw::Quarter, LimitLaw::Squared] {
            let d = stats::ks_distance(&s, law).unwrap();
            prop_assert!((0.0..=1.0).contains(&d));
        }
    }

    #[test]
    fn histogram_partitions_any_sample(
        values in proptest::collection::vec(0.0f64..6.0, 1..128),
        bins in 1usize..40,
    ) {
        let s = spectrum(values.clone());
        let h = stats::histogram(&s, bins, LimitLaw::Squared).unwrap();
        prop_assert_eq!(h.bins.iter().map(|b| b.count).sum::<usize>(), values.len());
        prop_assert_eq!(h.bins.len(), bins);
    }

    #[test]
    fn quantile_round_trips_interior(u in 0.01f64..0.99) {
        for law in [LimitLaw::Semicircle, LimitLaw::Quarter, LimitLaw::Squared] {
            let x = law.quantile(u).unwrap();
            prop_assert!((law.cdf(x) - u).abs() < 1e-9);
        }
    }

    #[test]
    fn dyck_enumeration_always_matches_formula(k in 0u64..10) {
        let lhs = combinatorics::count_dyck_paths(k).unwrap();
        let rhs = combinatorics::catalan(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_draws_stay_in_bounds(
        threshold in 0.5f64..5.0,
        seed in any::<u64>(),
    ) {
        let dist = ensemble::truncate_spec(EntryDistribution::gaussian(), threshold).unwrap();
        let sampler = make_sampler(dist).unwrap();
        let bound = sampler.support_bound().unwrap();
        for i in 0..512u32 {
            prop_assert!(sampler.draw(seed, i, 0).abs() <= bound);
        }
    }

    #[test]
    fn panel_is_fill_order_independent(seed in any::<u64>()) {
        // counter-based draws: reading entries in any order gives the panel
        let sampler = make_sampler(EntryDistribution::gaussian()).unwrap();
        let panel = ensemble::sample_panel(&sampler, 3, 4, 1, seed).unwrap();
        for i in (0..3).rev() {
            for j in (0..5).rev() {
                prop_assert_eq!(panel.entry(i, j), sampler.draw(seed, i as u32, j as u32));
            }
        }
    }

    #[test]
    fn ks_squared_equals_ks_quarter_on_sqrt(values in proptest::collection::vec(0.0f64..5.0, 1..48)) {
        // G(sqrt(x)) = F(x) makes the two statistics identical
        let s = spectrum(values);
        let d_sq = stats::ks_distance(&s, LimitLaw::Squared).unwrap();
        let d_q = stats::ks_distance(&s.sqrt_spectrum(), LimitLaw::Quarter).unwrap();
        prop_assert!((d_sq - d_q).abs() < 1e-12);
    }
}
