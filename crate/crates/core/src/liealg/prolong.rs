use std::collections::BTreeMap;

use super::field::PointVectorField;
use crate::error::{Error, Result};
use crate::exact::{Poly, Var};
use crate::jet::{DerivIndex, DiffFn};
use crate::scalar::Scalar;

/// `lin + free`: a differential function linear in U plus a U-free part.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine<C> {
    pub lin: DiffFn<C>,
    pub free: Poly<C>,
}

impl<C: Scalar> Default for Affine<C> {
    fn default() -> Self {
        Affine {
            lin: DiffFn::zero(),
            free: Poly::zero(),
        }
    }
}

impl<C: Scalar> Affine<C> {
    pub fn total_derivative(&self, v: Var) -> Self {
        Affine {
            lin: self.lin.total_derivative(v),
            free: self.free.partial(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lin.is_zero() && self.free.is_zero()
    }
}

/// Coefficients `ζ_J` of `pr X = X + Σ_J ζ_J ∂_{U_J}` for `|J| ≤ order`,
/// over the full jet (t-derivatives included, nothing normalized).
#[derive(Clone, Debug, PartialEq)]
pub struct Prolongation<C> {
    pub order: u32,
    coeffs: BTreeMap<DerivIndex, Affine<C>>,
}

impl<C: Scalar> Prolongation<C> {
    pub fn get(&self, j: &DerivIndex) -> Option<&Affine<C>> {
        self.coeffs.get(j)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DerivIndex, &Affine<C>)> + '_ {
        self.coeffs.iter()
    }
}

/// `ζ_∅ = η`, `ζ_{J+e_i} = D_i ζ_J − Σ_j U_{J+e_j} D_i ξ^j` with `j` over t, x, y, z.
pub fn prolong<C: Scalar>(x: &PointVectorField<C>, order: u32) -> Prolongation<C> {
    let mut coeffs = BTreeMap::new();
    coeffs.insert(
        DerivIndex::ZERO,
        Affine {
            lin: DiffFn::u().mul_poly(&x.eta_lin),
            free: x.eta_free.clone(),
        },
    );
    // Graded order guarantees every parent is filled before its children.
    for j in DerivIndex::up_to(order, false) {
        if j == DerivIndex::ZERO {
            continue;
        }
        let v = Var::COORDS
            .into_iter()
            .find(|&v| j.count(v) > 0)
            .expect("nonzero index");
        let parent = j.lower(v).expect("count checked");
        let mut z: Affine<C> = coeffs[&parent].total_derivative(v);
        for w in Var::COORDS {
            let d = x.xi(w).partial(v);
            if !d.is_zero() {
                z.lin.add_term(parent.bump(w, 1), -d);
            }
        }
        coeffs.insert(j, z);
    }
    Prolongation { order, coeffs }
}

/// `pr X (T)` for `T` linear in U: explicit variables via `ξ`, jet
/// variables via the prolongation truncated at the order of `T`.
pub fn act<C: Scalar>(x: &PointVectorField<C>, t: &DiffFn<C>) -> Affine<C> {
    let pr = prolong(x, t.order().unwrap_or(0));
    let mut out = Affine::default();
    for (j, p) in t.terms() {
        out.lin.add_term(*j, x.apply_to_poly(p));
        let z = pr.get(j).expect("prolonged to the order of T");
        out.lin.add_assign(&z.lin.mul_poly(p));
        out.free = out.free.add_poly(&z.free.mul_poly(p));
    }
    out
}

/// `Q = η − Σ_j ξ^j U_j`, normalized. Only fields whose `η` is homogeneous
/// in U have a characteristic linear in U.
pub fn evolutionary_characteristic<C: Scalar>(x: &PointVectorField<C>) -> Result<DiffFn<C>> {
    if !x.eta_free.is_zero() {
        return Err(Error::Inhomogeneous(x.eta_free.to_string()));
    }
    let mut q = DiffFn::u().mul_poly(&x.eta_lin);
    for v in Var::COORDS {
        q.add_term(DerivIndex::of(v), -x.xi(v).clone());
    }
    Ok(q.normal_form())
}

/// `pr X (U_t − ΔU)` reduced on solutions; zero iff `X` is a point symmetry.
pub fn symmetry_defect<C: Scalar>(x: &PointVectorField<C>) -> Affine<C> {
    let pr = prolong(x, 2);
    let mut out = pr.get(&DerivIndex::of(Var::T)).expect("order 1").clone();
    for v in Var::SPATIAL {
        let z = pr.get(&DerivIndex::ZERO.bump(v, 2)).expect("order 2");
        out.lin = &out.lin - &z.lin;
        out.free = out.free.sub_poly(&z.free);
    }
    out.lin = out.lin.normal_form();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::field::{free_generator, generator, printed_x5};
    use crate::parse::{parse_diff, parse_poly};
    use crate::symmetry::apply_recursion;
    use crate::{DiffFunction, Rational};

    fn gen(i: usize) -> PointVectorField<Rational> {
        generator(i).unwrap()
    }

    fn jet(s: &str) -> DerivIndex {
        DerivIndex::from_letters(s).unwrap()
    }

    #[test]
    fn translation_has_no_prolongation() {
        let pr = prolong(&gen(6), 2);
        assert!(pr.iter().all(|(_, z)| z.is_zero()));
    }

    #[test]
    fn scaling_in_u() {
        let pr = prolong(&gen(10), 1);
        for s in ["x", "y", "z"] {
            assert_eq!(pr.get(&jet(s)).unwrap().lin, DiffFunction::jet(jet(s)));
        }
    }

    #[test]
    fn galilean_boost() {
        let pr = prolong(&gen(1), 1);
        assert_eq!(
            pr.get(&jet("x")).unwrap().lin,
            parse_diff("-U - x*Ux").unwrap()
        );
        assert_eq!(
            pr.get(&jet("t")).unwrap().lin,
            parse_diff("-x*Ut - 2Ux").unwrap()
        );
    }

    #[test]
    fn characteristics() {
        assert_eq!(
            evolutionary_characteristic(&gen(6)).unwrap(),
            parse_diff("-Ux").unwrap()
        );
        assert_eq!(
            evolutionary_characteristic(&gen(1)).unwrap(),
            parse_diff("-2t*Ux - x*U").unwrap()
        );
        assert_eq!(
            evolutionary_characteristic(&gen(10)).unwrap(),
            DiffFunction::u()
        );
        let f = free_generator(parse_poly("1").unwrap());
        assert!(matches!(
            evolutionary_characteristic(&f),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn boosts_match_recursion_images() {
        for i in 1..=3 {
            let q = evolutionary_characteristic(&gen(i)).unwrap();
            let r = apply_recursion(i as u32, &DiffFunction::u()).unwrap();
            assert_eq!(q, -&r);
        }
    }

    #[test]
    fn generators_are_symmetries() {
        for i in 1..=13 {
            assert!(symmetry_defect(&gen(i)).is_zero(), "X{i}");
        }
        assert!(!symmetry_defect(&printed_x5::<Rational>()).is_zero());
        assert!(symmetry_defect(&free_generator(parse_poly("x^2 + 2t").unwrap())).is_zero());
        assert!(!symmetry_defect(&free_generator(parse_poly("x^2").unwrap())).is_zero());
    }

    /// Independent route: `ζ_J = D_J(Q) + Σ_j ξ^j U_{J+e_j}` with the
    /// unnormalized characteristic `Q = η − ξ^j U_j`.
    #[test]
    fn prolongation_matches_characteristic_formula() {
        for i in 1..=13 {
            let x = gen(i);
            let mut q = DiffFunction::u().mul_poly(&x.eta_lin);
            for v in Var::COORDS {
                q.add_term(DerivIndex::of(v), -x.xi(v).clone());
            }
            let pr = prolong(&x, 3);
            for (j, z) in pr.iter() {
                let mut expect = q.total_derivative_multi(j);
                for v in Var::COORDS {
                    expect.add_term(j.bump(v, 1), x.xi(v).clone());
                }
                assert_eq!(z.lin, expect, "X{i}, J = {j}");
            }
        }
    }
}
