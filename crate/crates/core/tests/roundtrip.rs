//! Print/parse round trips over randomly generated series and pairs.

use proptest::prelude::*;

use riordan_core::{parse_pair, parse_series, Rational, RiordanElement, Series};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (any::<i32>(), 1u32..=1000).prop_map(|(p, q)| Rational::new(p as i64, q as i64))
}

fn series_strategy(n: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(rational_strategy(), n)
        .prop_map(|coeffs| Series::from_coeffs(coeffs).unwrap())
}

fn pair_strategy(n: usize) -> impl Strategy<Value = RiordanElement> {
    (series_strategy(n), series_strategy(n)).prop_map(|(mu, sigma)| {
        let mut coeffs = sigma.coeffs().to_vec();
        coeffs[0] = Rational::from_int(0);
        RiordanElement::new(mu, Series::from_coeffs(coeffs).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn series_round_trip(s in (2usize..12).prop_flat_map(series_strategy)) {
        let printed = s.to_string();
        let reparsed = parse_series(&printed, 99).unwrap();
        prop_assert_eq!(reparsed, s);
    }

    #[test]
    fn pair_round_trip(p in (2usize..12).prop_flat_map(pair_strategy)) {
        let printed = p.to_string();
        let reparsed = parse_pair(&printed, 99).unwrap();
        prop_assert_eq!(reparsed, p);
    }
}
