use circulant_core::circulant::{
    leibniz_expand, step_enumerate, step_expand, CirculantSpec, Mode, StepPermutation,
};
use circulant_core::fastperm::{
    det_poly_interpolate, det_poly_interpolate_with, EvaluationPlan, Route,
};
use circulant_core::gt::{
    invariant_monomials, linear_form, minimality_certificate, quotient_form, reynolds_form,
};
use circulant_core::oracle::{coeff_nonzero, full_coefficient, gcd3, oracle_support_count};
use num_bigint::BigInt;
use proptest::prelude::*;

/// `(d, a, b)` with `3 <= d <= max_d`, `1 <= a < b < d`.
fn triple(max_d: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (3..=max_d)
        .prop_flat_map(|d| (Just(d), 1..d - 1))
        .prop_flat_map(|(d, a)| (Just(d), Just(a), a + 1..d))
}

fn coprime(max_d: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    triple(max_d).prop_filter("gcd(a, b, d) = 1", |&(d, a, b)| {
        gcd3(a as u64, b as u64, d as u64) == 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn step_and_leibniz_agree(d in 1usize..=7, raw in proptest::collection::vec(0usize..7, 1..4)) {
        let shifts: Vec<usize> = raw.into_iter().map(|s| s % d).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let spec = CirculantSpec::new(d, shifts).unwrap();
        let (det, per) = step_expand(&spec).unwrap();
        prop_assert_eq!(det, leibniz_expand(&spec, Mode::Det).unwrap());
        prop_assert_eq!(per, leibniz_expand(&spec, Mode::Per).unwrap());
    }

    #[test]
    fn coefficients_match_step_counts((d, a, b) in coprime(12), ae in 0u64..=12, be in 0u64..=12) {
        let d64 = d as u64;
        prop_assume!(ae + be <= d64);
        let spec = CirculantSpec::three_line(d, a, b).unwrap();
        let target = [(d64 - ae - be) as u32, ae as u32, be as u32];
        let count = step_enumerate(&spec, &target, false).unwrap();
        let rep = full_coefficient(d64, a as u64, b as u64, ae, be).unwrap();
        prop_assert_eq!(&rep.value, &count.det_coeff);
        prop_assert_eq!(rep.nonzero, count.per_coeff != BigInt::from(0));
        prop_assert_eq!(coeff_nonzero(d64, a as u64, b as u64, ae, be).unwrap(), rep.nonzero);
    }

    #[test]
    fn det_support_equals_per_support((d, a, b) in coprime(11)) {
        let det = det_poly_interpolate(d, a, b).unwrap();
        let (_, per) = step_expand(&CirculantSpec::three_line(d, a, b).unwrap()).unwrap();
        let ds: Vec<_> = det.support().cloned().collect();
        let ps: Vec<_> = per.support().cloned().collect();
        prop_assert_eq!(&ds, &ps);
        prop_assert_eq!(oracle_support_count(d as u64, a as u64, b as u64).unwrap(), (ds.len(), ps.len()));
    }

    #[test]
    fn interpolation_routes_agree((d, a, b) in triple(13)) {
        let m = det_poly_interpolate_with(d, a, b, Route::Modular).unwrap().poly;
        let e = det_poly_interpolate_with(d, a, b, Route::Exact).unwrap().poly;
        prop_assert!(m.is_homogeneous());
        prop_assert_eq!(m.degree(), d as i64);
        prop_assert_eq!(m, e);
    }

    #[test]
    fn plan_packing_is_injective((d, a, b) in triple(40)) {
        let plan = EvaluationPlan::new(d, a, b);
        for ae in 0..=d as u64 {
            for be in 0..=d as u64 - ae {
                let e = plan.pack(ae, be);
                prop_assert!(e <= plan.degree_bound);
                prop_assert_eq!(plan.unpack(e), Some((ae, be)));
            }
        }
    }

    #[test]
    fn gt_certificate_consistent((d, a, b) in coprime(12)) {
        let (d, a, b) = (d as u64, a as u64, b as u64);
        let r = minimality_certificate(d, a, b).unwrap();
        let (dn, pn) = oracle_support_count(d, a, b).unwrap();
        prop_assert_eq!((r.mu, r.mu), (dn, pn));
        prop_assert!(r.generators.iter().all(|m| (a * m[1] as u64 + b * m[2] as u64).is_multiple_of(d)));
        prop_assert_eq!(r.generators.clone(), invariant_monomials(d, a, b).unwrap());
        let q = quotient_form(d, a, b).unwrap();
        prop_assert_eq!(q.mul(&linear_form()).unwrap(), reynolds_form(d, a, b).unwrap());
    }

    #[test]
    fn step_permutation_lines_roundtrip(perm in (1usize..=10).prop_flat_map(|d| Just((0..d).collect::<Vec<_>>()).prop_shuffle())) {
        let d = perm.len();
        let steps: Vec<usize> = (0..d).map(|i| (perm[i] + d - i) % d).collect();
        let sp = StepPermutation::new(d, steps).unwrap();
        prop_assert_eq!(StepPermutation::parse_line(&sp.to_line()).unwrap(), sp);
    }
}
