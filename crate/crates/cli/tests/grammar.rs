use littlewood_cli::scenario::{map_expr, parse_value, MapExpr};
use num_complex::Complex64;
use proptest::prelude::*;

fn real() -> impl Strategy<Value = f64> {
    prop_oneof![
        -10.0..10.0f64,
        (-1000i32..1000).prop_map(f64::from),
        (-1e-12..1e-12f64),
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
    ]
}

fn complex() -> impl Strategy<Value = Complex64> {
    (real(), real()).prop_map(|(re, im)| Complex64::new(re, im))
}

fn name() -> impl Strategy<Value = String> {
    "[a-z_][a-z0-9_]{0,6}".prop_filter("not reserved", |s| {
        !matches!(
            s.as_str(),
            "identity" | "mobius" | "poly" | "series" | "blaschke" | "compose" | "scale"
        )
    })
}

fn expr() -> impl Strategy<Value = MapExpr> {
    let leaf = prop_oneof![
        Just(MapExpr::Identity),
        complex().prop_map(MapExpr::Mobius),
        (prop::collection::vec((complex(), 1u32..5), 0..4), real())
            .prop_map(|(z, p)| MapExpr::Blaschke(z, p)),
        prop::collection::vec(complex(), 1..5).prop_map(MapExpr::Poly),
        (prop::collection::vec(complex(), 1..5), real()).prop_map(|(c, r)| MapExpr::Series(c, r)),
        name().prop_map(MapExpr::Name),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| MapExpr::Compose(Box::new(a), Box::new(b))),
            (inner, complex()).prop_map(|(a, c)| MapExpr::Scale(Box::new(a), c)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let printed = e.to_string();
        let value = parse_value(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        let back = map_expr(&value).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }
}
