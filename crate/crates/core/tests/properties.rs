use igflab::chaos::{iterate_map, series_rigf, MapKind, MapSpec};
use igflab::divergence::cross_integral;
use igflab::estimators::{rigf_nonparametric, Bandwidth, Family};
use igflab::experiments::{mc_estimator_study, EstimatorKind, McConfig};
use igflab::igf::{igf_golomb, igf_quantile_form, rigf_continuous};
use igflab::quadrature::integrate;
use igflab::rng::stream;
use igflab::systems::{distortion_koutofn, SystemModel};
use igflab::{ContinuousModel, ModelSpec, OrderPair, Parallelism, Tolerance};
use proptest::prelude::*;
use rand::Rng;

fn model() -> impl Strategy<Value = ContinuousModel> {
    prop_oneof![
        (0.2f64..5.0).prop_map(|l| ContinuousModel::exponential(l).unwrap()),
        (0.8f64..4.0, 0.3f64..3.0).prop_map(|(k, s)| ContinuousModel::weibull(k, s).unwrap()),
        (1.0f64..5.0, 0.3f64..3.0).prop_map(|(a, r)| ContinuousModel::gamma(a, r).unwrap()),
        (1.0f64..4.0).prop_map(|a| ContinuousModel::power(a).unwrap()),
        (-2.0f64..1.0, 0.1f64..3.0).prop_map(|(a, w)| ContinuousModel::uniform(a, a + w).unwrap()),
        (1.5f64..4.0, 0.5f64..3.0).prop_map(|(c, s)| ContinuousModel::loglogistic(c, s).unwrap()),
    ]
}

fn alpha() -> impl Strategy<Value = f64> {
    prop_oneof![0.6f64..0.95, 1.05f64..3.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn densities_integrate_to_one(m in model()) {
        let s = m.support();
        let mass = integrate(|x| m.density(x), s, &Tolerance::default()).unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-10, "{m:?}: {mass}");
    }

    #[test]
    fn rigf_shape_in_beta(m in model(), a in alpha(), b in 0.3f64..3.0) {
        let h = 0.05;
        let r = |beta: f64| rigf_continuous(&m, OrderPair::new(a, beta).unwrap()).unwrap().value;
        let second = r(b + h) - 2.0 * r(b) + r(b - h);
        if a < 1.0 {
            prop_assert!(r(b) > 0.0);
            prop_assert!(second >= -1e-9 * r(b).abs().max(1.0));
        } else {
            prop_assert!(r(b) < 0.0);
            prop_assert!(second <= 1e-9 * r(b).abs().max(1.0));
        }
    }

    #[test]
    fn quantile_form_matches_direct_integral(
        m in prop_oneof![
            (0.2f64..5.0).prop_map(|l| ContinuousModel::exponential(l).unwrap()),
            (1.0f64..2.5, 0.3f64..3.0).prop_map(|(k, s)| ContinuousModel::weibull(k, s).unwrap()),
            (-2.0f64..1.0, 0.1f64..3.0).prop_map(|(a, w)| ContinuousModel::uniform(a, a + w).unwrap()),
        ],
        a in prop_oneof![0.7f64..0.95, 1.05f64..3.0],
    ) {
        let direct = igf_golomb(&m, a).unwrap();
        let via_quantile = igf_quantile_form(&m, a).unwrap();
        prop_assert!((direct - via_quantile).abs() <= 1e-7 * direct, "{m:?} α={a}: {direct} vs {via_quantile}");
    }

    #[test]
    fn bhattacharyya_coefficient_at_most_one(f in model(), g in model()) {
        if f.support() == g.support() {
            let c = cross_integral(&f, &g, 0.5, &Tolerance::default()).unwrap();
            prop_assert!(c <= 1.0 + 1e-9, "{f:?} {g:?}: {c}");
        }
    }

    #[test]
    fn kernel_estimate_at_unit_beta_is_delta(
        seed in any::<u64>(),
        n in 5usize..60,
        a in alpha(),
        h in prop_oneof![Just(None), (0.05f64..2.0).prop_map(Some)],
    ) {
        let sample = ContinuousModel::exponential(1.0).unwrap().sample(n, seed).unwrap();
        let bw = h.map_or(Bandwidth::Silverman, Bandwidth::Fixed);
        let o = OrderPair::new(a, 1.0).unwrap();
        prop_assert_eq!(rigf_nonparametric(&sample, o, bw).unwrap(), o.delta());
    }

    #[test]
    fn system_density_normalizes(
        baseline in prop_oneof![
            (0.2f64..5.0).prop_map(|l| ContinuousModel::exponential(l).unwrap()),
            (0.3f64..3.0).prop_map(|a| ContinuousModel::power(a).unwrap()),
            (0.8f64..3.0, 0.5f64..2.0).prop_map(|(k, s)| ContinuousModel::weibull(k, s).unwrap()),
        ],
        (k, n) in (1u32..=6).prop_flat_map(|n| (1..=n, Just(n))),
    ) {
        let system = SystemModel::new(baseline, distortion_koutofn(k, n).unwrap());
        let mass = system.total_mass().unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-8, "{k}-of-{n}: {mass}");
    }

    #[test]
    fn orbits_are_deterministic(r in 0.0f64..=4.0, x0 in 0.0f64..=1.0, n in 2usize..400) {
        let spec = MapSpec::one_dim(MapKind::Logistic { r }, x0, n);
        let a = iterate_map(spec).unwrap();
        let b = iterate_map(spec).unwrap();
        prop_assert_eq!(a.xs.len(), n);
        prop_assert!(a.xs.iter().zip(&b.xs).all(|(p, q)| p.to_bits() == q.to_bits()));
        prop_assert!(a.xs.iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn chebyshev_orbits_stay_in_region(s in 0.01f64..3.0, x0 in 0.0f64..=1.0, n in 2usize..400) {
        let orbit = iterate_map(MapSpec::one_dim(MapKind::Chebyshev { s }, x0, n)).unwrap();
        prop_assert_eq!(orbit.clamp_hits, 0);
        if s <= 1.0 {
            prop_assert!(orbit.xs.iter().all(|x| (0.0..=1.0).contains(x)));
        } else {
            prop_assert!(orbit.xs.iter().all(|x| (-1.0..=1.0).contains(x)));
        }
    }

    #[test]
    fn streams_are_reproducible(master in any::<u64>(), idx in any::<u64>()) {
        let a: [u64; 4] = stream(master, idx).random();
        let b: [u64; 4] = stream(master, idx).random();
        let c: [u64; 4] = stream(master, idx.wrapping_add(1)).random();
        prop_assert_eq!(a, b);
        prop_assert_ne!(a, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monte_carlo_cells_are_consistent(seed in any::<u64>(), lambda in 0.5f64..3.0) {
        let config = McConfig {
            truth: ModelSpec::parse(&format!(r#"{{"family":"exponential","params":{{"lambda":{lambda}}}}}"#)).unwrap(),
            fit_family: Family::Exponential,
            estimators: vec![EstimatorKind::Nonparametric, EstimatorKind::Parametric],
            orders: vec![(0.5, 1.5), (2.0, 0.7)],
            sample_sizes: vec![20, 40],
            replications: 6,
            seed,
            bandwidth: None,
        };
        let report = mc_estimator_study(&config, Parallelism::Parallel).unwrap();
        for c in &report.cells {
            prop_assert!(c.sd >= 0.0);
            prop_assert!(c.mse >= c.ab * c.ab - 1e-12, "{c:?}");
            prop_assert!(c.mae >= c.ab - 1e-12, "{c:?}");
        }
        prop_assert_eq!(&report, &mc_estimator_study(&config, Parallelism::Parallel).unwrap());
        prop_assert_eq!(&report, &mc_estimator_study(&config, Parallelism::Sequential).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// `δ(α) I^{β-1}` with `δ(0.01) > 0` moves in β with the sign of `ln I`;
    /// the r = 4 orbit density has `∫f^{0.01} > 1`, so the RIGF rises.
    #[test]
    fn logistic_rigf_in_beta_follows_ln_i(x0 in 0.05f64..0.95) {
        let orbit = iterate_map(MapSpec::one_dim(MapKind::Logistic { r: 4.0 }, x0, 2000)).unwrap();
        let r: Vec<f64> = [1.5, 2.0, 2.5]
            .iter()
            .map(|&b| series_rigf(&orbit, OrderPair::new(0.01, b).unwrap(), Bandwidth::Silverman).unwrap())
            .collect();
        let delta = OrderPair::new(0.01, 2.0).unwrap().delta();
        let ln_i = (r[1] / delta).ln();
        prop_assert!(ln_i > 0.0, "ln I = {ln_i}");
        prop_assert!(r[0] < r[1] && r[1] < r[2], "{r:?}");
    }
}
