mod common;

use canring::divisor::{default_points, degree_bounds, graded_dim, DivisorJson, PointP1, QDivisor};
use canring::exactla::{FieldSpec, PrimeField, Rationals};
use canring::presentation::{
    compute_report, random_points, scan_configs, stability_scan, EngineOptions, Realization, Report, ScanOptions,
};
use canring::ratapprox::Fraction;
use common::*;
use proptest::prelude::*;

fn fraction(max_den: i64, bound: i64) -> impl Strategy<Value = Fraction> {
    (1..=max_den).prop_flat_map(move |q| (-bound * q..=bound * q).prop_map(move |p| Fraction::new(p, q).unwrap()))
}

fn divisor(max_n: usize, max_den: i64, bound: i64) -> impl Strategy<Value = QDivisor> {
    prop::collection::vec(fraction(max_den, bound), 1..=max_n).prop_map(|a| QDivisor::from_alphas(a).unwrap())
}

fn positive(max_n: usize, max_den: i64) -> impl Strategy<Value = QDivisor> {
    divisor(max_n, max_den, 1).prop_filter("deg D > 0", |d| d.degree().is_positive())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn approximation_chains_are_unimodular(alpha in fraction(1000, 5)) {
        check_approximations(&alpha).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn basis_has_dimension_many_elements(d in divisor(5, 12, 3), deg in 0u64..=40) {
        check_basis_cardinality(&d, deg).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn standard_monomials_count_dimensions(d in positive(3, 6), char_p in prop::bool::ANY) {
        let b = degree_bounds(&d).unwrap();
        prop_assume!(graded_dim(&d, b.rel_bound) <= 30);
        let field = if char_p { FieldSpec::prime(101).unwrap() } else { FieldSpec::rationals() };
        let opts = EngineOptions { relations: true, groebner: true, ..Default::default() };
        let rep = compute_report(&d, field, opts).unwrap();
        check_hilbert(&d, &rep).map_err(TestCaseError::fail)?;
        prop_assert!(rep.generator_degrees().iter().all(|&g| g < b.gen_bound));
        prop_assert!(rep.relation_degrees().iter().all(|&r| r < b.rel_bound));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn engine_matches_oracle(d in positive(3, 5), char_p in prop::bool::ANY) {
        let b = degree_bounds(&d).unwrap();
        prop_assume!(oracle_sized(&d, b.rel_bound, 16));
        let checked = if char_p {
            check_oracle(&Realization::new(&d, PrimeField::new(101).unwrap()).unwrap(), b.gen_bound, b.rel_bound)
        } else {
            check_oracle(&Realization::new(&d, Rationals).unwrap(), b.gen_bound, b.rel_bound)
        };
        if let Err(e) = checked {
            prop_assume!(!e.contains("monomials in degree"));
            return Err(TestCaseError::fail(e));
        }
    }
}

proptest! {
    #[test]
    fn divisor_json_round_trips(
        alphas in prop::collection::vec(fraction(50, 4), 1..=6),
        shift in -20i64..20,
        ext in 1u32..=3,
        p in prop::sample::select(vec![0u64, 2, 3, 5, 7, 11]),
    ) {
        let n = alphas.len();
        let points: Vec<PointP1> = default_points(n)
            .into_iter()
            .map(|pt| match pt {
                PointP1::Finite(x) => PointP1::Finite(&x + &Fraction::from_int(shift)),
                inf => inf,
            })
            .collect();
        let d = QDivisor::new(points, alphas).unwrap();
        let field = FieldSpec::new(p, if p == 0 { 1 } else { ext }).unwrap();
        let doc = DivisorJson::from_divisor(&d, field);
        let text = serde_json::to_string(&doc).unwrap();
        let back = DivisorJson::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_divisor().unwrap(), (d, field));
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn report_json_round_trips(d in positive(3, 4)) {
        let b = degree_bounds(&d).unwrap();
        prop_assume!(graded_dim(&d, b.rel_bound) <= 20);
        let opts = EngineOptions { relations: true, groebner: true, ..Default::default() };
        let rep = compute_report(&d, FieldSpec::prime(7).unwrap(), opts).unwrap();
        let text = serde_json::to_string(&rep).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &rep);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn seeded_runs_are_deterministic(d in positive(4, 4), seed in any::<u64>()) {
        prop_assert_eq!(random_points(&Rationals, 5, seed), random_points(&Rationals, 5, seed));
        let gf = PrimeField::new(31).unwrap();
        prop_assert_eq!(random_points(&gf, 5, seed), random_points(&gf, 5, seed));

        let n = d.with_ghost().n();
        let configs = scan_configs(n, &[0, 2, 3], 2, seed).unwrap();
        prop_assert_eq!(&configs, &scan_configs(n, &[0, 2, 3], 2, seed).unwrap());
        let first = stability_scan(&d, &configs, ScanOptions::default());
        let second = stability_scan(&d, &configs, ScanOptions::default());
        prop_assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    }
}
