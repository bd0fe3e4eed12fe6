//! Property tests over seeded random inputs.

use majorlab::functional::{FunctionalSpec, Variant};
use majorlab::linalg::{operator_norm, ComplexMatrix};
use majorlab::major::{log_majorize, spectrum_via_compounds, weak_log_majorize};
use majorlab::matfun::{psd_power, PsdMatrix};
use majorlab::norms::{kyfan_dominance, singulars, SymmetricNorm};
use majorlab::suites::{run_check, Gen, Instance, Profile, REGISTRY};
use majorlab::tolerance::Tolerance;
use proptest::prelude::*;

const TOL: Tolerance = Tolerance::DEFAULT;

fn profile() -> impl Strategy<Value = Profile> {
    prop::sample::select(Profile::ALL.to_vec())
}

fn psd(g: &mut Gen, n: usize, profile: Profile) -> PsdMatrix {
    PsdMatrix::new(&g.psd(n, profile)).unwrap()
}

fn sandwich(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) * a
}

fn norms(n: usize) -> Vec<SymmetricNorm> {
    SymmetricNorm::family(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weak_log_is_reflexive_and_scale_monotone(seed: u64, n in 1usize..=5, pr in profile(), c in 1.0f64..4.0) {
        let mut g = Gen::new(seed);
        let x = psd(&mut g, n, pr);
        prop_assert!(log_majorize(&x, &x, &TOL).unwrap().verdict);
        let big = PsdMatrix::new(&x.matrix().scale_real(c)).unwrap();
        prop_assert!(weak_log_majorize(&x, &big, &TOL).unwrap().verdict);
        let small = PsdMatrix::new(&x.matrix().scale_real(0.5)).unwrap();
        prop_assert_eq!(weak_log_majorize(&x, &small, &TOL).unwrap().verdict, x.rank() == 0);
    }

    #[test]
    fn log_majorization_implies_kyfan_dominance(seed: u64, n in 1usize..=5, p in 1.0f64..3.0) {
        let mut g = Gen::new(seed);
        let (a, b) = (psd(&mut g, n, Profile::WellConditioned), psd(&mut g, n, Profile::WellConditioned));
        let x = psd_power(&PsdMatrix::project(&sandwich(psd_power(&a, 0.5).matrix(), b.matrix())).unwrap(), p);
        let y = PsdMatrix::project(&sandwich(psd_power(&a, p / 2.0).matrix(), psd_power(&b, p).matrix())).unwrap();
        prop_assert!(log_majorize(&x, &y, &TOL).unwrap().verdict);
        prop_assert!(kyfan_dominance(&x, &y, &TOL).unwrap().verdict);
    }

    #[test]
    fn psd_powers_compose(seed: u64, n in 1usize..=5, pr in profile(), s in -1.5f64..1.5, t in -1.5f64..1.5) {
        let mut g = Gen::new(seed);
        let a = psd(&mut g, n, pr);
        let lhs = psd_power(&psd_power(&a, s), t);
        let rhs = psd_power(&a, s * t);
        let scale = rhs.lambda_max().max(1.0);
        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) <= 1e-8 * scale);
        prop_assert_eq!(lhs.rank(), a.rank());
    }

    #[test]
    fn generalized_inverse_is_identity_on_range(seed: u64, n in 1usize..=5, pr in profile()) {
        let mut g = Gen::new(seed);
        let a = psd(&mut g, n, pr);
        let prod = a.matrix() * psd_power(&a, -1.0).matrix();
        prop_assert!(prod.max_abs_diff(&a.range_projection()) <= 1e-6);
    }

    #[test]
    fn compounds_recover_spectra(seed: u64, n in 1usize..=5) {
        let mut g = Gen::new(seed);
        let a = psd(&mut g, n, Profile::WellConditioned);
        for (x, y) in spectrum_via_compounds(&a).unwrap().iter().zip(a.values()) {
            prop_assert!((x - y).abs() <= 1e-10 * a.lambda_max());
        }
    }

    #[test]
    fn generators_respect_constraints(seed: u64, n in 1usize..=5, m in 1usize..=4, k in 1usize..=3) {
        let mut g = Gen::new(seed);
        prop_assert!(operator_norm(&g.contraction(n)).unwrap() <= 1.0 + 1e-12);
        let s = singulars(&g.expansive(n)).unwrap();
        prop_assert!(*s.last().unwrap() >= 1.0 - 1e-12);
        let h = g.hermitian(n);
        prop_assert!(h.is_hermitian(1e-14) && operator_norm(&h).unwrap() <= 1.0 + 1e-12);
        let x = g.normal_matrix(n, Profile::WellConditioned);
        prop_assert!(x.commutator(&x.adjoint()).norm_max() <= 1e-12);
        let map = g.subunital_map(m, n, k);
        prop_assert!(PsdMatrix::project(&map.unit_image()).unwrap().lambda_max() <= 1.0 + 1e-12);
        let d = g.diag_bounded_psd(n);
        prop_assert!(PsdMatrix::new(&d).is_ok());
        prop_assert!(d.diagonal().iter().all(|z| z.re <= 1.0 + 1e-12));
        let image = map.apply(&g.psd(m, Profile::RankDeficient)).unwrap();
        prop_assert!(PsdMatrix::new(&image).is_ok());
    }

    #[test]
    fn rank_deficient_profile_has_zeros(seed: u64, n in 1usize..=6) {
        let a = psd(&mut Gen::new(seed), n, Profile::RankDeficient);
        prop_assert_eq!(a.rank(), n - (n / 3).max(1));
    }

    #[test]
    fn norms_are_unitarily_invariant_and_ordered(seed: u64, n in 1usize..=5) {
        let mut g = Gen::new(seed);
        let m = g.general(n, 1.0);
        let (u, v) = (g.unitary(n), g.unitary(n));
        let rotated = &(&u * &m) * &v;
        for norm in norms(n) {
            let (a, b) = (norm.evaluate(&m).unwrap(), norm.evaluate(&rotated).unwrap());
            prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        }
        let s = singulars(&m).unwrap();
        let op = SymmetricNorm::Operator.evaluate_singulars(&s).unwrap();
        let trace = SymmetricNorm::Trace.evaluate_singulars(&s).unwrap();
        for q in [1.5, 2.0, 4.0] {
            let sq = SymmetricNorm::Schatten(q).evaluate_singulars(&s).unwrap();
            prop_assert!(op <= sq * (1.0 + 1e-12) && sq <= trace * (1.0 + 1e-12));
        }
        for k in 1..n {
            let lo = SymmetricNorm::KyFan(k).evaluate_singulars(&s).unwrap();
            let hi = SymmetricNorm::KyFan(k + 1).evaluate_singulars(&s).unwrap();
            prop_assert!(lo <= hi);
            let nlo = SymmetricNorm::NormalizedKyFan(k).evaluate_singulars(&s).unwrap();
            let nhi = SymmetricNorm::NormalizedKyFan(k + 1).evaluate_singulars(&s).unwrap();
            prop_assert!(nhi <= nlo * (1.0 + 1e-12));
        }
    }

    #[test]
    fn powered_log_norm_matches_direct(seed: u64, n in 1usize..=5, e in 0.25f64..3.0) {
        let s = singulars(&Gen::new(seed).general(n, 1.0)).unwrap();
        let powered: Vec<f64> = s.iter().map(|x| x.powf(e)).collect();
        for norm in norms(n) {
            let direct = norm.evaluate_singulars(&powered).unwrap().ln();
            prop_assert!((norm.log_evaluate_powered(&s, e).unwrap() - direct).abs() <= 1e-10);
        }
    }

    #[test]
    fn functional_matches_explicit_product(seed: u64, n in 1usize..=4, pr in profile(), p in 0.5f64..2.5, t in -1.0f64..1.0) {
        let mut g = Gen::new(seed);
        let (a, b) = (psd(&mut g, n, pr), psd(&mut g, n, pr));
        let z = g.general(n, 1.0);
        let alpha = 1.0;
        let spec = FunctionalSpec::new(a.clone(), b.clone(), z.clone(), alpha, SymmetricNorm::Trace, Variant::TwoVar).unwrap();
        let m = &(psd_power(&a, t / p).matrix() * &z) * psd_power(&b, t / p).matrix();
        let direct: f64 = singulars(&m).unwrap().iter().map(|x| x.powf(alpha * p)).sum();
        let got = spec.evaluate(p, t).unwrap();
        prop_assert!((got - direct).abs() <= 1e-6 * direct.max(1e-300), "{} vs {}", got, direct);
    }

    #[test]
    fn instances_round_trip_through_json(seed: u64, idx in 0usize..REGISTRY.len(), n in 2usize..=4) {
        let def = &REGISTRY[idx];
        let inst = def.instance(seed, n);
        let text = serde_json::to_string(&inst).unwrap();
        let back: Instance = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        let (x, y) = (run_check(def.id, &inst, &TOL).unwrap(), run_check(def.id, &back, &TOL).unwrap());
        prop_assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
        prop_assert_eq!(def.instance(seed, n), inst);
    }
}
