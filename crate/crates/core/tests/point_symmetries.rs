use heatsym_core::jet::residual;
use heatsym_core::liealg::{
    commutator, evolutionary_characteristic, expand, generators, verify_table,
};
use heatsym_core::symmetry::apply_recursion;
use heatsym_core::{DiffFunction, PointVectorField};

fn gens() -> Vec<PointVectorField> {
    generators()
}

#[test]
fn antisymmetric() {
    let g = gens();
    for a in &g {
        for b in &g {
            let ab = commutator(a, b);
            let ba = commutator(b, a);
            assert!(ab.add(&ba).is_zero());
        }
    }
}

#[test]
fn jacobi() {
    let g = gens();
    for a in &g {
        for b in &g {
            for c in &g {
                let s = commutator(&commutator(a, b), c)
                    .add(&commutator(&commutator(b, c), a))
                    .add(&commutator(&commutator(c, a), b));
                assert!(s.is_zero());
            }
        }
    }
}

#[test]
fn table_matches_print() {
    let r = verify_table();
    assert_eq!(r.entries.len(), 78);
    assert!(r.closed);
    assert!(r.subalgebra_closed);
    assert_eq!(r.disagreements, 0);
}

#[test]
fn brackets_expand_uniquely() {
    let g = gens();
    for a in &g {
        for b in &g {
            let br = commutator(a, b);
            let e = expand(&br, &g).expect("closed");
            let mut rebuilt = PointVectorField::zero();
            for (c, x) in e.0.iter().zip(&g) {
                rebuilt = rebuilt.add(&x.scale(c));
            }
            assert_eq!(rebuilt, br);
        }
    }
}

#[test]
fn characteristics_are_symmetries() {
    for (i, x) in gens().iter().enumerate() {
        let q = evolutionary_characteristic(x).unwrap();
        assert!(residual(&q).is_zero(), "X{}", i + 1);
    }
    for i in 1..=3 {
        let q = evolutionary_characteristic(&gens()[i - 1]).unwrap();
        assert_eq!(q, -&apply_recursion(i as u32, &DiffFunction::u()).unwrap());
    }
}
