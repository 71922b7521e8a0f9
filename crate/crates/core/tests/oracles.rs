use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Binomial, Distribution};
use topk_noise::bounds::{
    default_c_of_n, er_cn, er_expected_hamming_lower_bound, evec_bound, noisy_degree_moments,
};
use topk_noise::centrality::{principal_eigenpair, DEFAULT_MAX_ITER, DEFAULT_TOL};
use topk_noise::{
    apply_noise, exact_noise_distribution, generate_er, generate_pa, generate_small_world,
    spectral_top2, Graph, NoiseParams, PaParams,
};

fn dense(g: &Graph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n(), g.n());
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Largest two eigenvalues and, if the top one is simple, its unit
/// eigenvector with non-negative sum.
fn dense_top2(g: &Graph) -> (f64, f64, Option<Vec<f64>>) {
    let eig = dense(g).symmetric_eigen();
    let mut idx: Vec<usize> = (0..g.n()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let (l1, l2) = (eig.eigenvalues[idx[0]], eig.eigenvalues[idx[1]]);
    let x = (l1 - l2 > 1e-6).then(|| {
        let col = eig.eigenvectors.column(idx[0]);
        let sign = if col.sum() < 0.0 { -1.0 } else { 1.0 };
        col.iter().map(|v| sign * v).collect()
    });
    (l1, l2, x)
}

fn simpson_phi(x: f64) -> f64 {
    let lo = -40.0;
    let steps = 40_000;
    let h = (x - lo) / steps as f64;
    let f = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut s = f(lo) + f(x);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(lo + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn enumerated_noisy_degrees_match_moment_formulas() {
    for seed in 0..12 {
        let n = 5 + seed as usize % 2;
        let g = generate_er(n, 0.5, seed).unwrap();
        let params = NoiseParams::new(0.05 + 0.02 * seed as f64, 0.3 - 0.015 * seed as f64).unwrap();
        let mu: Vec<f64> = g
            .degree_vec()
            .into_iter()
            .map(|d| noisy_degree_moments(d, n, params).unwrap().mu)
            .collect();
        let mut mean = vec![0.0; n];
        let mut centred = vec![0.0; n];
        let mut total = 0.0;
        for (y, p) in exact_noise_distribution(&g, params).unwrap() {
            for (v, d) in y.degree_vec().into_iter().enumerate() {
                mean[v] += p * d as f64;
                centred[v] += p * (d as f64 - mu[v]).powi(2);
            }
            total += p;
        }
        assert!((total - 1.0).abs() < 1e-12);
        for (v, d) in g.degree_vec().into_iter().enumerate() {
            let m = noisy_degree_moments(d, n, params).unwrap();
            assert!((mean[v] - m.mu).abs() < 1e-12);
            assert!((centred[v] - m.sigma2).abs() < 1e-12, "{} vs {}", centred[v], m.sigma2);
        }
    }
}

#[test]
fn noisy_degree_is_a_sum_of_two_binomials() {
    let (n, d) = (60usize, 17usize);
    let params = NoiseParams::new(0.08, 0.25).unwrap();
    let star = Graph::from_edges(n, (1..=d).map(|v| (0, v))).unwrap();
    let draws = 40_000;
    let mut rng = StdRng::seed_from_u64(17);
    let kept = Binomial::new(d as u64, 1.0 - params.beta).unwrap();
    let added = Binomial::new((n - 1 - d) as u64, params.alpha).unwrap();
    let mut hist_noise = vec![0u32; n];
    let mut hist_oracle = vec![0u32; n];
    for s in 0..draws {
        hist_noise[apply_noise(&star, params, s).degree_vec()[0]] += 1;
        hist_oracle[(kept.sample(&mut rng) + added.sample(&mut rng)) as usize] += 1;
    }
    // Two-sample Kolmogorov-Smirnov at the 0.1% level.
    let mut cdf = (0.0, 0.0);
    let mut ks = 0.0f64;
    for (a, b) in hist_noise.iter().zip(&hist_oracle) {
        cdf.0 += *a as f64 / draws as f64;
        cdf.1 += *b as f64 / draws as f64;
        ks = ks.max((cdf.0 - cdf.1).abs());
    }
    let critical = 1.95 * (2.0 / draws as f64).sqrt();
    assert!(ks < critical, "KS statistic {ks} exceeds {critical}");
}

#[test]
fn spectral_pair_matches_dense_solver_on_structured_graphs() {
    let mut graphs = vec![
        Graph::complete(7),
        Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8)).map(|(a, b)| (a.min(b), a.max(b)))).unwrap(),
        Graph::from_edges(9, (1..9).map(|i| (0, i))).unwrap(),
        Graph::from_edges(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (2, 5)]).unwrap(),
    ];
    for s in 0..6 {
        graphs.push(generate_pa(PaParams::new(60, 2, 0.5).unwrap(), s).unwrap());
        graphs.push(generate_small_world(50, 4, 0.2, s).unwrap());
    }
    for g in &graphs {
        let spec = spectral_top2(g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let (l1, l2, x) = dense_top2(g);
        assert!((spec.lambda1 - l1).abs() < 1e-8, "lambda1 {} vs {l1}", spec.lambda1);
        assert!((spec.lambda2 - l2).abs() < 1e-8, "lambda2 {} vs {l2}", spec.lambda2);
        if let Some(x) = x {
            let err = spec.x.scores().iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-6);
        }
    }
}

#[test]
fn eigenvector_bound_holds_where_it_applies() {
    let n = 400;
    let params = NoiseParams::new(1e-4, 1e-4).unwrap();
    let g = generate_er(n, 0.5, 21).unwrap();
    let spec = spectral_top2(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    let bound = evec_bound(&spec, spec.lambda1, spec.x_inf(), n, params).unwrap();
    assert!(bound.gap_condition_ok && bound.applicable);
    assert!(bound.eps_n.is_finite() && bound.eps_n < 0.05);
    let x = spec.x.scores();
    for s in 0..20 {
        let y = apply_noise(&g, params, 1000 + s);
        let p = principal_eigenpair(&y, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let dev = x.iter().zip(p.x.scores()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev <= bound.eps_n, "deviation {dev} above bound {}", bound.eps_n);
    }
}

#[test]
fn er_lower_bound_matches_a_quadrature_oracle() {
    for &(n, p, a, b, k) in &[
        (1000usize, 0.25, 0.05, 0.05, 5usize),
        (200, 0.1, 0.2, 0.1, 3),
        (5000, 0.5, 0.3, 0.3, 10),
    ] {
        let params = NoiseParams::new(a, b).unwrap();
        let c = default_c_of_n(n);
        let cn = er_cn(n, p, params);
        let z = -2.0 * c / (cn.sqrt() * (n as f64).ln().sqrt());
        let want = k as f64 * simpson_phi(z);
        let got = er_expected_hamming_lower_bound(n, p, params, k, c).unwrap();
        assert!((got - want).abs() <= 1e-9 * want.max(1e-300) + 1e-15, "{got} vs {want}");
    }
}
