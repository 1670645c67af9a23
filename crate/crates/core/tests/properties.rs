use num_complex::Complex64;
use proptest::prelude::*;
use quasiparabolic::expansion::select_alpha;
use quasiparabolic::halfline::{
    fourier_multiplier, inner, norm2, operator_norm_estimate, project_hardy, toeplitz, HardyGrid, NormOptions,
};
use quasiparabolic::spectra::{hausdorff, predict_essential_spectrum};
use quasiparabolic::symbols::{cayley, inverse_cayley, HalfPlanePoint, PointCloud};

fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(a, b)| Complex64::new(a, b))
}

fn cloud(max: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(complex(3.0), 1..max).prop_map(PointCloud::new)
}

fn grid() -> HardyGrid {
    HardyGrid::new(256, 20.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(42), ..ProptestConfig::default() })]

    #[test]
    fn projection_is_idempotent(v in prop::collection::vec(complex(1.0), 256)) {
        let p = project_hardy(&v);
        prop_assert_eq!(project_hardy(p.coeffs()), p);
    }

    #[test]
    fn projection_is_orthogonal(v in prop::collection::vec(complex(1.0), 256)) {
        let p = project_hardy(&v);
        let resid: Vec<Complex64> = v.iter().zip(p.coeffs()).map(|(a, b)| a - b).collect();
        prop_assert!(inner(p.coeffs(), &resid).norm() <= 1e-12 * (1.0 + norm2(&v).powi(2)));
    }

    #[test]
    fn multipliers_compose(a in 0.1f64..3.0, b in -2.0f64..2.0, x in prop::collection::vec(complex(1.0), 128)) {
        let g = grid();
        let th1 = move |t: f64| Complex64::new(0.0, b * t).exp() / (1.0 + a * t);
        let th2 = move |t: f64| Complex64::new((-a * t).exp(), 0.0);
        let prod = fourier_multiplier(move |t| th1(t) * th2(t), &g).unwrap();
        let lhs = prod.apply_half(&x);
        let rhs = fourier_multiplier(th1, &g).unwrap().apply_half(&fourier_multiplier(th2, &g).unwrap().apply_half(&x));
        let err: Vec<Complex64> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
        prop_assert!(norm2(&err) <= 1e-6 * norm2(&lhs).max(1e-300));
    }

    #[test]
    fn multiplier_norm_is_sup(a in 0.1f64..3.0, b in -2.0f64..2.0) {
        let g = grid();
        let th = move |t: f64| Complex64::new(0.0, b * t).exp() * (1.0 + t) / (1.0 + a * t * t);
        let sup = g.nonneg_ts().iter().map(|&t| th(t).norm()).fold(0.0, f64::max);
        let est = operator_norm_estimate(&fourier_multiplier(th, &g).unwrap(), &NormOptions::default()).unwrap();
        prop_assert!((est - sup).abs() <= 1e-6 * sup, "{} vs {}", est, sup);
    }

    #[test]
    fn toeplitz_is_contractive_in_sup_norm(coeffs in prop::collection::vec(complex(1.0), 1..4), x in prop::collection::vec(complex(1.0), 128)) {
        let g = grid();
        let sym: Vec<Complex64> = g.xs().iter().map(|&t| {
            coeffs.iter().enumerate().map(|(k, c)| c * Complex64::new(0.0, k as f64 * t / 5.0).exp()).sum()
        }).collect();
        let sup = sym.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let y = toeplitz(sym, &g).unwrap().apply_half(&x);
        prop_assert!(norm2(&y) <= sup * norm2(&x) * (1.0 + 1e-12));
    }

    #[test]
    fn hausdorff_is_symmetric(a in cloud(12), b in cloud(12)) {
        prop_assert_eq!(hausdorff(&a, &b).unwrap(), hausdorff(&b, &a).unwrap());
        prop_assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn hausdorff_triangle(a in cloud(10), b in cloud(10), c in cloud(10)) {
        let ab = hausdorff(&a, &b).unwrap();
        prop_assert!(ab <= hausdorff(&a, &c).unwrap() + hausdorff(&c, &b).unwrap() + 1e-12);
    }

    #[test]
    fn spiral_sets_contain_zero_and_one_inside_disc(
        gens in prop::collection::vec((-3.0f64..3.0, 0.5f64..4.0), 1..4),
    ) {
        let cloud: PointCloud = gens.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let s = predict_essential_spectrum(&cloud, 0.5, 0.02).unwrap();
        let pts = s.points.points();
        prop_assert!(pts.contains(&Complex64::new(0.0, 0.0)));
        prop_assert!(pts.contains(&Complex64::new(1.0, 0.0)));
        prop_assert!(pts.iter().all(|p| p.norm() <= 1.0 + 1e-12));
    }

    #[test]
    fn singleton_spiral_matches_dense_sampling(a in -2.0f64..2.0, b in 0.5f64..3.0) {
        let z = Complex64::new(a, b);
        let res = 0.02;
        let s = predict_essential_spectrum(&PointCloud::new(vec![z]), 0.5, res).unwrap();
        let t_end = -(1e-3f64).ln() / b;
        let reference: PointCloud = (0..=20_000)
            .map(|k| (Complex64::new(0.0, 1.0) * z * (t_end * k as f64 / 20_000.0)).exp())
            .chain(std::iter::once(Complex64::new(0.0, 0.0)))
            .collect();
        prop_assert!(hausdorff(&s.points, &reference).unwrap() <= res);
    }

    #[test]
    fn alpha_postcondition(c in prop::collection::vec((-5.0f64..5.0, 0.5f64..5.0), 1..30)) {
        let cloud: PointCloud = c.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let s = select_alpha(cloud.clone()).unwrap();
        prop_assert!(s.delta < 1.0);
        let ia = Complex64::new(0.0, s.alpha);
        prop_assert!(cloud.points().iter().all(|z| (ia - z).norm() < s.delta * s.alpha));
    }

    #[test]
    fn cayley_round_trip(re in -50.0f64..50.0, im in 0.01f64..50.0) {
        let z = HalfPlanePoint::new(re, im).unwrap();
        let back = inverse_cayley(cayley(z)).unwrap();
        prop_assert!((back.to_complex() - z.to_complex()).norm() <= 1e-12 * (1.0 + z.to_complex().norm()).powi(2));
    }
}

mod config {
    use proptest::prelude::*;
    use quasiparabolic::cli::RunConfig;

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]

        #[test]
        fn canonical_form_round_trips(
            n in 8u32..14, l in 1.0f64..500.0, tol in 1e-9f64..1e-2, seed in any::<u64>(),
            re in -3.0f64..3.0, im in 0.1f64..3.0, eps in 0.01f64..0.1, svg in any::<bool>(),
        ) {
            let text = format!(
                "mode = spectrum\nsymbol.family = constant\nsymbol.value = {re}+{im}i\nsymbol.eps_lower = {eps}\n\
                 grid.n_points = {}\ngrid.spatial_halfwidth = {l}\ntol = {tol}\nseed = {seed}\nemit_svg = {svg}\n",
                1usize << n,
            );
            let cfg = RunConfig::parse(&text).unwrap();
            let canon = cfg.to_canonical();
            let again = RunConfig::parse(&canon).unwrap();
            prop_assert_eq!(again.to_canonical(), canon);
            prop_assert_eq!(again.hash(), cfg.hash());
        }
    }
}
