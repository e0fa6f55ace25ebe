use heatsym_core::exact::MonomialExp;
use heatsym_core::jet::DerivIndex;
use heatsym_core::parse::{parse_diff, parse_poly};
use heatsym_core::symmetry::{basis, shipped_fixture};
use heatsym_core::{DiffFunction, Polynomial, Rational};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((0u32..3, 0u32..3, 0u32..3, 0u32..3), -20i64..21, 1i64..5),
        0..4,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|((a, b, c, d), n, den)| {
            (
                MonomialExp::new(a, b, c, d),
                Rational::new(n.into(), den.into()),
            )
        }))
    })
}

fn arb_diff() -> impl Strategy<Value = DiffFunction> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..2), arb_poly()), 0..4).prop_map(
        |terms| {
            DiffFunction::from_terms(
                terms
                    .into_iter()
                    .map(|((i, j, k, m), p)| (DerivIndex::new(i, j, k, m), p)),
            )
        },
    )
}

proptest! {
    #[test]
    fn diff_roundtrip(f in arb_diff()) {
        prop_assert_eq!(parse_diff(&f.to_string()).unwrap(), f.clone());
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<DiffFunction>(&json).unwrap(), f);
    }

    #[test]
    fn poly_roundtrip(p in arb_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn basis_characteristics_roundtrip() {
    for e in basis(3) {
        let text = e.characteristic.to_string();
        assert_eq!(parse_diff(&text).unwrap(), e.characteristic, "{text}");
    }
}

#[test]
fn fixture_relations_parse() {
    for e in shipped_fixture() {
        let r = e.relation().unwrap();
        let again = heatsym_core::parse::parse_relation(&r.to_string()).unwrap();
        assert_eq!(again, r);
    }
}
