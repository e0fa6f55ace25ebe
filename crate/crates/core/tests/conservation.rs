use heatsym_core::conslaw::{
    divergence, equivalent, generate_evolutionary, generate_point, multiplier,
};
use heatsym_core::jet::residual;
use heatsym_core::liealg::generators;
use heatsym_core::parse::parse_diff;
use heatsym_core::symmetry::basis;
use heatsym_core::{ConservedVector, DiffFunction, Rational};
use proptest::prelude::*;

fn basis_chars() -> Vec<DiffFunction> {
    basis(2).into_iter().map(|e| e.characteristic).collect()
}

#[test]
fn every_order_two_characteristic_generates_a_law() {
    let base = ConservedVector::base();
    let chars = basis_chars();
    assert_eq!(chars.len(), 50);
    for q in &chars {
        let t = generate_evolutionary(q, &base).unwrap();
        let d = divergence(&t);
        assert!(d.conserved(), "{q}");
        // The raw divergence is −(D_t − Δ)Q before substitution.
        let expect = -&(&q.total_derivative(heatsym_core::exact::Var::T) - &q.laplacian());
        assert_eq!(d.raw, expect, "{q}");
        assert_eq!(&d.on_shell + &d.certificate.expand(), d.raw);
        let m = multiplier(&t).unwrap();
        assert!(m.adjoint_ok, "{q}");
    }
}

#[test]
fn iterated_generation_stays_conserved() {
    let base = ConservedVector::base();
    let chars = basis_chars();
    for q in chars.iter().step_by(5) {
        let t = generate_evolutionary(q, &base).unwrap();
        for p in chars.iter().step_by(11) {
            let t2 = generate_evolutionary(p, &t).unwrap();
            assert!(divergence(&t2).conserved());
            assert!(multiplier(&t2).unwrap().adjoint_ok);
        }
        for x in generators::<Rational>() {
            let t3 = generate_point(&x, &t).unwrap();
            assert!(divergence(&t3).conserved());
            assert!(multiplier(&t3).unwrap().adjoint_ok);
        }
    }
}

#[test]
fn section_four_example() {
    let base = ConservedVector::base();
    let t = generate_evolutionary(&parse_diff("Uxx").unwrap(), &base).unwrap();
    assert_eq!(t.to_string(), "(-Uxx, Uxxx, Uxxy, Uxxz)");
    assert!(multiplier(&t).unwrap().value.is_zero());
    assert!(equivalent(&base, &base.add(&t)).unwrap());
    let m = multiplier(&base).unwrap().value;
    assert!(m
        .as_constant()
        .is_some_and(|c| c != Rational::from_integer(0.into())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linear_in_characteristic(i in 0usize..50, j in 0usize..50, a in -4i64..5, b in -4i64..5) {
        let chars = basis_chars();
        let base = ConservedVector::base();
        let (a, b) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let mut comb = chars[i].scale(&a);
        comb.add_scaled(&chars[j], &b);
        prop_assert!(residual(&comb).is_zero());
        let lhs = generate_evolutionary(&comb, &base).unwrap();
        let rhs = generate_evolutionary(&chars[i], &base).unwrap().scale(&a)
            .add(&generate_evolutionary(&chars[j], &base).unwrap().scale(&b));
        prop_assert_eq!(lhs, rhs);
    }
}
