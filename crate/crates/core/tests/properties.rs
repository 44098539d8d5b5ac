use bernoulli_integrals::exact::{format_rational, parse_rational, permutations, Rational};
use bernoulli_integrals::integrals::{
    closed_form_integral, closed_form_integral_poly, oracle_integral, oracle_integral_poly,
    recurrence_integral,
};
use bernoulli_integrals::{BernoulliCache, IntegralSpec, MultiIndex};
use num_traits::Zero;
use proptest::prelude::*;

fn indices() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=5, 1..=4)
}

fn upper() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_oracle(ks in indices(), x in upper()) {
        let cache = BernoulliCache::new();
        let spec = IntegralSpec::new(ks, x).unwrap();
        prop_assert_eq!(closed_form_integral(&spec, false, &cache), oracle_integral(&spec, &cache));
    }

    #[test]
    fn closed_form_polynomial_matches_oracle(ks in indices()) {
        let cache = BernoulliCache::new();
        let ks = MultiIndex::from(ks);
        prop_assert_eq!(closed_form_integral_poly(&ks, &cache), oracle_integral_poly(&ks, &cache));
    }

    #[test]
    fn recurrence_is_independent_of_depth(ks in indices(), x in upper(), mu in 1i64..=8) {
        let cache = BernoulliCache::new();
        let spec = IntegralSpec::new(ks, x).unwrap();
        let closed = closed_form_integral(&spec, true, &cache);
        prop_assert_eq!(recurrence_integral(&spec, mu, &cache).unwrap().value, closed);
    }

    #[test]
    fn permuting_indices_keeps_the_value(ks in indices(), x in upper()) {
        let cache = BernoulliCache::new();
        let base = closed_form_integral(&IntegralSpec::new(ks.clone(), x.clone()).unwrap(), false, &cache);
        for perm in permutations(&ks) {
            let spec = IntegralSpec::new(perm, x.clone()).unwrap();
            prop_assert_eq!(&closed_form_integral(&spec, false, &cache), &base);
        }
    }

    #[test]
    fn odd_sum_vanishes_on_unit_interval(ks in indices()) {
        prop_assume!(ks.iter().sum::<i64>() % 2 == 1);
        let cache = BernoulliCache::new();
        let spec = IntegralSpec::at_one(ks).unwrap();
        prop_assert!(closed_form_integral(&spec, false, &cache).is_zero());
    }

    #[test]
    fn rendered_values_parse_back(ks in indices(), x in upper()) {
        let cache = BernoulliCache::new();
        let value = oracle_integral(&IntegralSpec::new(ks, x).unwrap(), &cache);
        prop_assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
    }
}
