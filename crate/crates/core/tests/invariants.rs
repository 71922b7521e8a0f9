use proptest::prelude::*;
use topk_noise::bounds::{
    correction_terms, evec_bound, hamming_bounds_at, hamming_bounds_realization, infeasibility_report,
    noisy_degree_moments, normal_cdf, separation_report, tail_envelope,
};
use topk_noise::centrality::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use topk_noise::{
    apply_noise, degree_scores, generate_er, hamming, jaccard, spectral_top2, top_k, DegreeSequence,
    Graph, NoiseParams,
};

fn rate() -> impl Strategy<Value = f64> {
    0.0f64..0.45
}

fn er_graph() -> impl Strategy<Value = Graph> {
    (5usize..80, 0.02f64..0.5, any::<u64>()).prop_map(|(n, p, s)| generate_er(n, p, s).unwrap())
}

fn degrees() -> impl Strategy<Value = DegreeSequence> {
    (8usize..60).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n).prop_map(DegreeSequence::new)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sandwich_holds_for_every_realisation(
        g in er_graph(),
        a in rate(),
        b in rate(),
        k_frac in 0.0f64..1.0,
        seeds in any::<(u64, u64, u64)>(),
    ) {
        let n = g.n();
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let truth = top_k(&degree_scores(&g), k, seeds.0).unwrap();
        let y = apply_noise(&g, NoiseParams::new(a, b).unwrap(), seeds.1);
        let s = degree_scores(&y);
        let est = top_k(&s, k, seeds.2).unwrap();
        let dh = hamming(&truth, &est).unwrap();
        let hb = hamming_bounds_realization(&truth, &s, k).unwrap();
        prop_assert!(hb.lower <= dh && dh <= hb.upper);
        prop_assert_eq!(hb.lower % 2, 0);
        prop_assert_eq!(hb.upper % 2, 0);
        prop_assert!(hb.upper <= 2 * k.min(n - k));

        let sorted = s.sorted_desc();
        let hi = sorted[k - 1];
        let at_hi = hamming_bounds_at(&truth, s.scores(), hi).unwrap();
        prop_assert!(at_hi.lower <= dh && dh <= at_hi.upper);
    }

    #[test]
    fn hamming_is_even_and_matches_jaccard(
        g in er_graph(),
        k_frac in 0.0f64..1.0,
        seeds in any::<(u64, u64)>(),
    ) {
        let n = g.n();
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let s = degree_scores(&g);
        let a = top_k(&s, k, seeds.0).unwrap();
        let b = top_k(&s, k, seeds.1).unwrap();
        let h = hamming(&a, &b).unwrap();
        prop_assert_eq!(h % 2, 0);
        let common = (k - h / 2) as f64;
        let j = common / (2.0 * k as f64 - common);
        prop_assert!((jaccard(&a, &b) - j).abs() < 1e-12);
    }

    #[test]
    fn top_k_keeps_every_strictly_larger_score(
        g in er_graph(),
        k_frac in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let n = g.n();
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let s = degree_scores(&g);
        let set = top_k(&s, k, seed).unwrap();
        prop_assert_eq!(set.members().len(), k);
        let cut = s.sorted_desc()[k - 1];
        for (i, &v) in s.scores().iter().enumerate() {
            if v > cut {
                prop_assert!(set.contains(i));
            }
            if v < cut {
                prop_assert!(!set.contains(i));
            }
        }
    }

    #[test]
    fn noise_is_reproducible_and_noiseless_is_identity(g in er_graph(), a in rate(), b in rate(), seed in any::<u64>()) {
        let p = NoiseParams::new(a, b).unwrap();
        prop_assert_eq!(apply_noise(&g, p, seed), apply_noise(&g, p, seed));
        prop_assert_eq!(apply_noise(&g, NoiseParams::NOISELESS, seed), g);
    }

    #[test]
    fn moments_are_bounded_and_complement_symmetric(n in 2usize..500, d_frac in 0.0f64..1.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let d = ((n - 1) as f64 * d_frac) as usize;
        let p = NoiseParams::new(a, b).unwrap();
        let m = noisy_degree_moments(d, n, p).unwrap();
        let top = (n - 1) as f64;
        prop_assert!(m.mu >= 0.0 && m.mu <= top + 1e-9);
        prop_assert!(m.sigma2 >= 0.0 && m.sigma2 <= top / 4.0 + 1e-9);
        let swapped = noisy_degree_moments(n - 1 - d, n, NoiseParams::new(b, a).unwrap()).unwrap();
        prop_assert!((m.mu - (top - swapped.mu)).abs() < 1e-9);
        prop_assert!((m.sigma2 - swapped.sigma2).abs() < 1e-9);
    }

    #[test]
    fn thresholds_grow_with_addition_noise(
        dseq in degrees(),
        k_frac in 0.0f64..1.0,
        a1 in 0.0f64..0.49,
        a2 in 0.0f64..0.49,
        b in 0.0f64..0.4,
    ) {
        let n = dseq.len();
        let k = 1 + ((n - 5) as f64 * k_frac) as usize;
        let i_star = n - 2;
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let at = |a: f64| {
            let p = NoiseParams::new(a, b).unwrap();
            (
                separation_report(&dseq, k, i_star, p, 0.05, 1.0).unwrap(),
                infeasibility_report(&dseq, k, i_star, p, 0.5, 1.0).unwrap(),
            )
        };
        let (s_lo, f_lo) = at(lo);
        let (s_hi, f_hi) = at(hi);
        let tol = 1e-9;
        prop_assert!(s_lo.boundary_threshold <= s_hi.boundary_threshold + tol);
        prop_assert!(s_lo.one_gap_threshold <= s_hi.one_gap_threshold + tol);
        prop_assert!(s_lo.bulk_threshold <= s_hi.bulk_threshold + tol);
        prop_assert!(f_lo.delta_bdry_threshold <= f_hi.delta_bdry_threshold + tol);
        for f in [&f_lo, &f_hi] {
            prop_assert!(f.delta_bulk_threshold >= 0.0);
            prop_assert!(f.delta_bdry_threshold >= 0.0);
            prop_assert!(f.delta_bdry_bar >= 0.0);
        }
        prop_assert!(s_lo.snr >= s_hi.snr - tol);
    }

    #[test]
    fn envelope_width_is_twice_eps2_sigma(
        dseq in degrees(),
        k_frac in 0.0f64..1.0,
        a in rate(),
        b in rate(),
        c in 0.5f64..4.0,
    ) {
        let n = dseq.len();
        let k = 1 + ((n - 4) as f64 * k_frac) as usize;
        let p = NoiseParams::new(a, b).unwrap();
        let env = tail_envelope(&dseq, k, p, c).unwrap();
        let sigma = noisy_degree_moments(dseq.sorted(k + 1), n, p).unwrap().sigma();
        let eps2 = correction_terms(n - k, n, c).unwrap().eps2;
        prop_assert!(((env.c_upper - env.c_lower) - 2.0 * eps2 * sigma).abs() <= 1e-12 * (1.0 + env.c_upper.abs()));
        prop_assert!(env.c_upper >= env.c_lower);
    }

    #[test]
    fn eigenvector_envelopes_are_nonnegative(g in er_graph(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let spec = spectral_top2(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let p = NoiseParams::new(a, b).unwrap();
        let eb = evec_bound(&spec, spec.lambda1, spec.x_inf(), g.n(), p).unwrap();
        prop_assert!(eb.b1 >= 0.0 && eb.b2 >= 0.0 && eb.b3 >= 0.0);
        prop_assert!(eb.eps_n >= 0.0);
        prop_assert_eq!(eb.applicable, eb.eps_n.is_finite());
        prop_assert!(!eb.applicable || eb.gap_condition_ok);
    }

    #[test]
    fn normal_cdf_is_a_symmetric_distribution_function(x in -30.0f64..30.0, dx in 0.0f64..5.0) {
        let p = normal_cdf(x);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(normal_cdf(x + dx) >= p);
        prop_assert!((p + normal_cdf(-x) - 1.0).abs() < 1e-14);
    }
}
