//! Conserved vectors of the heat equation, their multipliers, and the
//! construction of new conserved vectors from symmetries.
//!
//! Components are ordered (t, x, y, z). A vector `T` is conserved when
//! `D_t T^t + D_x T^x + D_y T^y + D_z T^z` vanishes on solutions; the
//! normalization certificate of that divergence writes it as
//! `Σ_J c_J D_J(F)`, and `Λ = Σ_J (−1)^{|J|} D_J c_J` is its multiplier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Poly, Var};
use crate::jet::{residual, DerivIndex, DiffFn, ReductionCertificate};
use crate::liealg::{act, commutator, PointVectorField};
use crate::linalg::solve_combination;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ConservedVector<C: Scalar> {
    #[serde(rename = "Tt")]
    pub tt: DiffFn<C>,
    #[serde(rename = "Tx")]
    pub tx: DiffFn<C>,
    #[serde(rename = "Ty")]
    pub ty: DiffFn<C>,
    #[serde(rename = "Tz")]
    pub tz: DiffFn<C>,
}

impl<C: Scalar> ConservedVector<C> {
    pub fn new(components: [DiffFn<C>; 4]) -> Self {
        let [tt, tx, ty, tz] = components;
        ConservedVector { tt, tx, ty, tz }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| DiffFn::zero()))
    }

    /// `(−U, U_x, U_y, U_z)`.
    pub fn base() -> Self {
        Self::new([
            -&DiffFn::u(),
            DiffFn::jet(DerivIndex::of(Var::X)),
            DiffFn::jet(DerivIndex::of(Var::Y)),
            DiffFn::jet(DerivIndex::of(Var::Z)),
        ])
    }

    /// Components in (t, x, y, z) order.
    pub fn components(&self) -> [&DiffFn<C>; 4] {
        [&self.tt, &self.tx, &self.ty, &self.tz]
    }

    fn map(&self, f: impl Fn(&DiffFn<C>) -> DiffFn<C>) -> Self {
        Self::new(self.components().map(f))
    }

    pub fn normal_form(&self) -> Self {
        self.map(DiffFn::normal_form)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let [a, b, c, d] = other.components();
        Self::new([&self.tt - a, &self.tx - b, &self.ty - c, &self.tz - d])
    }

    pub fn add(&self, other: &Self) -> Self {
        let [a, b, c, d] = other.components();
        Self::new([&self.tt + a, &self.tx + b, &self.ty + c, &self.tz + d])
    }
}

impl<C: Scalar> fmt::Display for ConservedVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.tt, self.tx, self.ty, self.tz)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Divergence<C> {
    /// `Σ_i D_i T^i` before any substitution.
    pub raw: DiffFn<C>,
    pub on_shell: DiffFn<C>,
    pub certificate: ReductionCertificate<C>,
}

impl<C: Scalar> Divergence<C> {
    pub fn conserved(&self) -> bool {
        self.on_shell.is_zero()
    }
}

pub fn divergence<C: Scalar>(t: &ConservedVector<C>) -> Divergence<C> {
    let mut raw = DiffFn::zero();
    for (v, c) in Var::COORDS.into_iter().zip(t.components()) {
        raw.add_assign(&c.total_derivative(v));
    }
    let (on_shell, certificate) = raw.normalize();
    Divergence {
        raw,
        on_shell,
        certificate,
    }
}

fn require_conserved<C: Scalar>(t: &ConservedVector<C>) -> Result<Divergence<C>> {
    let d = divergence(t);
    if d.conserved() {
        Ok(d)
    } else {
        Err(Error::NotConserved {
            divergence: d.on_shell.to_string(),
        })
    }
}

/// `T̄^i = pr X_Q (T^i) = Σ_J p_J D_J(Q)` for the evolutionary field `Q ∂_U`,
/// normalized. For the base vector this is `(−Q, D_xQ, D_yQ, D_zQ)`.
pub fn generate_evolutionary<C: Scalar>(
    q: &DiffFn<C>,
    t: &ConservedVector<C>,
) -> Result<ConservedVector<C>> {
    let q = q.normal_form();
    let r = residual(&q);
    if !r.is_zero() {
        return Err(Error::NotASymmetry {
            residual: r.to_string(),
        });
    }
    require_conserved(t)?;
    let apply = |c: &DiffFn<C>| {
        let mut out = DiffFn::zero();
        for (j, p) in c.terms() {
            out.add_assign(&q.total_derivative_multi(j).mul_poly(p));
        }
        out.normal_form()
    };
    Ok(t.map(apply))
}

/// `−X T^i + Σ_j (D_j ξ^i) T^j − (D_j ξ^j) T^i` for each component; the
/// left side of the invariance condition is its negative.
fn point_action<C: Scalar>(
    x: &PointVectorField<C>,
    t: &ConservedVector<C>,
) -> Result<ConservedVector<C>> {
    if !x.eta_free.is_zero() {
        return Err(Error::Inhomogeneous(x.eta_free.to_string()));
    }
    let comps = t.components();
    let div_xi = x.divergence();
    let out = std::array::from_fn(|i| {
        let xt = act(x, comps[i]).lin;
        let mut c = -&xt;
        let target = Var::COORDS[i];
        for (j, v) in Var::COORDS.into_iter().enumerate() {
            let d = x.xi(target).partial(v);
            if !d.is_zero() {
                c.add_assign(&comps[j].mul_poly(&d));
            }
        }
        if !div_xi.is_zero() {
            c = &c - &comps[i].mul_poly(&div_xi);
        }
        c.normal_form()
    });
    Ok(ConservedVector::new(out))
}

/// Conserved vector generated from `T` by a point symmetry `X`.
pub fn generate_point<C: Scalar>(
    x: &PointVectorField<C>,
    t: &ConservedVector<C>,
) -> Result<ConservedVector<C>> {
    require_conserved(t)?;
    point_action(x, t)
}

/// Whether `X` is associated with `T`: the invariance condition holds
/// componentwise on solutions.
pub fn invariance_check<C: Scalar>(
    x: &PointVectorField<C>,
    t: &ConservedVector<C>,
) -> Result<bool> {
    let a = point_action(x, t)?;
    Ok(a.components().iter().all(|c| c.is_zero()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Multiplier<C: Scalar> {
    pub value: Poly<C>,
    /// `Λ_t + Λ_xx + Λ_yy + Λ_zz = 0`.
    pub adjoint_ok: bool,
}

pub fn multiplier<C: Scalar>(t: &ConservedVector<C>) -> Result<Multiplier<C>> {
    let d = require_conserved(t)?;
    let value = d.certificate.adjoint_collapse();
    let adjoint_ok = value.adjoint_heat().is_zero();
    Ok(Multiplier { value, adjoint_ok })
}

/// Every component vanishes on solutions.
pub fn is_trivial_first_kind<C: Scalar>(t: &ConservedVector<C>) -> bool {
    t.components().iter().all(|c| c.normal_form().is_zero())
}

/// Same multiplier.
pub fn equivalent<C: Scalar>(a: &ConservedVector<C>, b: &ConservedVector<C>) -> Result<bool> {
    require_conserved(a)?;
    require_conserved(b)?;
    Ok(multiplier(&a.sub(b))?.value.is_zero())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BracketTrivialityCheck<C: Scalar> {
    /// `[X, Y]`.
    pub bracket: PointVectorField<C>,
    /// `b` with `[X, Y] = b·Y`, if any.
    pub proportional_to_y: Option<String>,
    /// The bracket criterion's verdict on the vector generated by `X`.
    pub predicts_trivial: bool,
    /// Whether `Y` satisfies the invariance condition for `T`.
    pub y_associated: bool,
    /// Multiplier of the vector actually generated from `T` by `X`.
    pub generated_multiplier: Poly<C>,
    /// `generated_multiplier = 0`.
    pub observed_trivial: bool,
}

/// Checks the bracket criterion for triviality (`[X, Y] = b·Y` with `Y`
/// associated to `T`) against the multiplier of the vector that `X`
/// actually generates.
pub fn bracket_triviality_check<C: Scalar>(
    x: &PointVectorField<C>,
    y: &PointVectorField<C>,
    t: &ConservedVector<C>,
) -> Result<BracketTrivialityCheck<C>> {
    let bracket = commutator(x, y);
    let b = if bracket.is_zero() {
        Some(C::zero())
    } else {
        let row = |f: &PointVectorField<C>| {
            let parts = f.xi.iter().chain([&f.eta_lin, &f.eta_free]);
            parts
                .enumerate()
                .flat_map(|(slot, p)| p.terms().map(move |(m, c)| ((slot, *m), c.clone())))
                .collect::<Vec<_>>()
        };
        solve_combination(&[row(y)], &row(&bracket)).map(|s| s[0].clone())
    };
    let generated = generate_point(x, t)?;
    let generated_multiplier = multiplier(&generated)?.value;
    Ok(BracketTrivialityCheck {
        predicts_trivial: b.is_some(),
        proportional_to_y: b.map(|c| c.to_string()),
        y_associated: invariance_check(y, t)?,
        observed_trivial: generated_multiplier.is_zero(),
        generated_multiplier,
        bracket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{free_generator, generator};
    use crate::parse::{parse_diff, parse_poly};
    use crate::{DiffFunction, Rational};

    type CV = ConservedVector<Rational>;

    fn d(s: &str) -> DiffFunction {
        parse_diff(s).unwrap()
    }

    fn cv(parts: [&str; 4]) -> CV {
        CV::new(parts.map(d))
    }

    fn x(i: usize) -> PointVectorField<Rational> {
        generator(i).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn base_divergence() {
        let dv = divergence(&CV::base());
        assert_eq!(dv.raw, d("-Ut + Uxx + Uyy + Uzz"));
        assert!(dv.conserved());
        assert!(!divergence(&cv(["U", "0", "0", "0"])).conserved());
        assert!(divergence(&cv(["-Uxx", "Uxxx", "Uxxy", "Uxxz"])).conserved());
    }

    #[test]
    fn evolutionary_examples() {
        let base = CV::base();
        assert_eq!(
            generate_evolutionary(&d("Uxx"), &base).unwrap(),
            cv(["-Uxx", "Uxxx", "Uxxy", "Uxxz"])
        );
        assert_eq!(generate_evolutionary(&d("U"), &base).unwrap(), base);
        assert_eq!(
            generate_evolutionary(&d("2t*Ux + x*U"), &base).unwrap(),
            cv([
                "-2t*Ux - x*U",
                "2t*Uxx + x*Ux + U",
                "2t*Uxy + x*Uy",
                "2t*Uxz + x*Uz"
            ])
        );
        assert!(matches!(
            generate_evolutionary(&d("x*U"), &base),
            Err(Error::NotASymmetry { .. })
        ));
        let bad = cv(["U", "0", "0", "0"]);
        assert!(matches!(
            generate_evolutionary(&d("U"), &bad),
            Err(Error::NotConserved { .. })
        ));
    }

    #[test]
    fn point_examples() {
        let base = CV::base();
        assert_eq!(generate_point(&x(10), &base).unwrap(), base.scale(&q(-1)));
        assert_eq!(generate_point(&x(11), &base).unwrap(), CV::zero());
        let g = generate_point(&x(1), &base).unwrap();
        assert_eq!(g.tt, d("-x*U"));
        assert!(divergence(&g).conserved());
        let f = free_generator(parse_poly("1").unwrap());
        assert!(matches!(
            generate_point(&f, &base),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn generated_by_point_symmetries_are_conserved() {
        let base = CV::base();
        for i in 1..=13 {
            let g = generate_point(&x(i), &base).unwrap();
            assert!(divergence(&g).conserved(), "X{i}");
            assert!(multiplier(&g).unwrap().adjoint_ok, "X{i}");
        }
    }

    #[test]
    fn invariance() {
        let base = CV::base();
        for i in [4, 5, 6, 7, 8, 9, 11] {
            assert!(invariance_check(&x(i), &base).unwrap(), "X{i}");
        }
        for i in [1, 2, 3, 10, 12, 13] {
            assert!(!invariance_check(&x(i), &base).unwrap(), "X{i}");
        }
    }

    #[test]
    fn multipliers() {
        let m = multiplier(&CV::base()).unwrap();
        assert_eq!(m.value, parse_poly("-1").unwrap());
        assert!(m.adjoint_ok);
        let m = multiplier(&cv(["-Uxx", "Uxxx", "Uxxy", "Uxxz"])).unwrap();
        assert!(m.value.is_zero());
        let g = generate_evolutionary(&d("2t*Ux + x*U"), &CV::base()).unwrap();
        let m = multiplier(&g).unwrap();
        assert_eq!(m.value, parse_poly("-x").unwrap());
        assert!(m.adjoint_ok);
        assert!(matches!(
            multiplier(&cv(["U", "0", "0", "0"])),
            Err(Error::NotConserved { .. })
        ));
    }

    #[test]
    fn triviality_and_equivalence() {
        assert!(is_trivial_first_kind(&CV::zero()));
        assert!(!is_trivial_first_kind(&CV::base()));
        assert!(is_trivial_first_kind(&cv([
            "Ut - Uxx - Uyy - Uzz",
            "0",
            "0",
            "0"
        ])));
        let base = CV::base();
        let gen = cv(["-Uxx", "Uxxx", "Uxxy", "Uxxz"]);
        assert!(equivalent(&base, &base).unwrap());
        assert!(equivalent(&base, &base.add(&gen)).unwrap());
        assert!(!equivalent(&base, &base.scale(&q(2))).unwrap());
    }

    #[test]
    fn bracket_criterion() {
        let base = CV::base();
        let c = bracket_triviality_check(&x(12), &x(6), &base).unwrap();
        assert_eq!(c.proportional_to_y.as_deref(), Some("-1"));
        assert!(c.predicts_trivial);
        assert!(c.y_associated);
        let c = bracket_triviality_check(&x(13), &x(6), &base).unwrap();
        assert!(!c.predicts_trivial);
        let c = bracket_triviality_check(&x(4), &x(4), &base).unwrap();
        assert!(c.predicts_trivial);
        assert_eq!(c.proportional_to_y.as_deref(), Some("0"));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&CV::base()).unwrap();
        assert!(s.starts_with(r#"{"Tt":[{"deriv":[0,0,0,0]"#), "{s}");
        let back: CV = serde_json::from_str(&s).unwrap();
        assert_eq!(back, CV::base());
    }
}
