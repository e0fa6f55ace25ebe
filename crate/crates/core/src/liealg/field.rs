use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::poly::{join_signed, render_product};
use crate::exact::{Poly, Var};
use crate::scalar::Scalar;

/// `ξ^t ∂_t + ξ^x ∂_x + ξ^y ∂_y + ξ^z ∂_z + (eta_lin·U + eta_free) ∂_U`
/// with polynomial coefficients in (t, x, y, z).
#[derive(Clone, Debug, PartialEq)]
pub struct PointVectorField<C> {
    /// Indexed by [`Var::coord`]: t, x, y, z.
    pub xi: [Poly<C>; 4],
    pub eta_lin: Poly<C>,
    pub eta_free: Poly<C>,
}

impl<C: Scalar> Default for PointVectorField<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> PointVectorField<C> {
    pub fn zero() -> Self {
        PointVectorField {
            xi: std::array::from_fn(|_| Poly::zero()),
            eta_lin: Poly::zero(),
            eta_free: Poly::zero(),
        }
    }

    pub fn xi(&self, v: Var) -> &Poly<C> {
        &self.xi[v.coord()]
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(Poly::is_zero) && self.eta_lin.is_zero() && self.eta_free.is_zero()
    }

    /// `Σ_j ξ^j ∂_j p` for a U-free function `p`.
    pub fn apply_to_poly(&self, p: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for v in Var::COORDS {
            let xi = self.xi(v);
            if !xi.is_zero() {
                out = out.add_poly(&xi.mul_poly(&p.partial(v)));
            }
        }
        out
    }

    /// `Σ_j ∂_j ξ^j`.
    pub fn divergence(&self) -> Poly<C> {
        Var::COORDS
            .iter()
            .fold(Poly::zero(), |acc, &v| acc.add_poly(&self.xi(v).partial(v)))
    }

    pub fn scale(&self, c: &C) -> Self {
        PointVectorField {
            xi: std::array::from_fn(|i| self.xi[i].scale(c)),
            eta_lin: self.eta_lin.scale(c),
            eta_free: self.eta_free.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        PointVectorField {
            xi: std::array::from_fn(|i| self.xi[i].add_poly(&other.xi[i])),
            eta_lin: self.eta_lin.add_poly(&other.eta_lin),
            eta_free: self.eta_free.add_poly(&other.eta_free),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> PointVectorField<D> {
        PointVectorField {
            xi: std::array::from_fn(|i| self.xi[i].map_coeffs(&f)),
            eta_lin: self.eta_lin.map_coeffs(&f),
            eta_free: self.eta_free.map_coeffs(&f),
        }
    }
}

/// Lie bracket of vector fields on (t, x, y, z, U). The `η` parts are affine
/// in `U`; the `U²` terms cancel, so the bracket is affine again.
pub fn commutator<C: Scalar>(
    x: &PointVectorField<C>,
    y: &PointVectorField<C>,
) -> PointVectorField<C> {
    let xi = std::array::from_fn(|i| {
        x.apply_to_poly(&y.xi[i])
            .sub_poly(&y.apply_to_poly(&x.xi[i]))
    });
    let eta_lin = x
        .apply_to_poly(&y.eta_lin)
        .sub_poly(&y.apply_to_poly(&x.eta_lin));
    let eta_free = x
        .apply_to_poly(&y.eta_free)
        .add_poly(&x.eta_free.mul_poly(&y.eta_lin))
        .sub_poly(&y.apply_to_poly(&x.eta_free))
        .sub_poly(&y.eta_free.mul_poly(&x.eta_lin));
    PointVectorField {
        xi,
        eta_lin,
        eta_free,
    }
}

fn field<C: Scalar>(xi: [(Var, Poly<C>); 4], eta_lin: Poly<C>) -> PointVectorField<C> {
    let mut f = PointVectorField::zero();
    for (v, p) in xi {
        f.xi[v.coord()] = f.xi[v.coord()].add_poly(&p);
    }
    f.eta_lin = eta_lin;
    f
}

/// The built-in generators `X_1 .. X_13`. `X_5` is the rotation
/// `−x∂_z + z∂_x`.
pub fn generator<C: Scalar>(i: usize) -> Option<PointVectorField<C>> {
    let v = |v: Var| Poly::<C>::var(v);
    let c = |n: i64| Poly::<C>::from_i64(n);
    let z = Poly::<C>::zero;
    let t = v(Var::T);
    let two_t = t.scale(&C::from_i64(2));
    let f = match i {
        1 => field(
            [(Var::X, two_t), (Var::T, z()), (Var::Y, z()), (Var::Z, z())],
            -v(Var::X),
        ),
        2 => field(
            [(Var::Y, two_t), (Var::T, z()), (Var::X, z()), (Var::Z, z())],
            -v(Var::Y),
        ),
        3 => field(
            [(Var::Z, two_t), (Var::T, z()), (Var::X, z()), (Var::Y, z())],
            -v(Var::Z),
        ),
        4 => field(
            [
                (Var::Y, -v(Var::X)),
                (Var::X, v(Var::Y)),
                (Var::T, z()),
                (Var::Z, z()),
            ],
            z(),
        ),
        5 => field(
            [
                (Var::Z, -v(Var::X)),
                (Var::X, v(Var::Z)),
                (Var::T, z()),
                (Var::Y, z()),
            ],
            z(),
        ),
        6 => field(
            [(Var::X, c(1)), (Var::T, z()), (Var::Y, z()), (Var::Z, z())],
            z(),
        ),
        7 => field(
            [
                (Var::Z, -v(Var::Y)),
                (Var::Y, v(Var::Z)),
                (Var::T, z()),
                (Var::X, z()),
            ],
            z(),
        ),
        8 => field(
            [(Var::Y, c(1)), (Var::T, z()), (Var::X, z()), (Var::Z, z())],
            z(),
        ),
        9 => field(
            [(Var::Z, c(1)), (Var::T, z()), (Var::X, z()), (Var::Y, z())],
            z(),
        ),
        10 => field(
            [(Var::T, z()), (Var::X, z()), (Var::Y, z()), (Var::Z, z())],
            c(1),
        ),
        11 => field(
            [(Var::T, c(1)), (Var::X, z()), (Var::Y, z()), (Var::Z, z())],
            z(),
        ),
        12 => field(
            [
                (Var::T, two_t),
                (Var::X, v(Var::X)),
                (Var::Y, v(Var::Y)),
                (Var::Z, v(Var::Z)),
            ],
            z(),
        ),
        13 => {
            let four_t = t.scale(&C::from_i64(4));
            let r2 = Var::SPATIAL
                .iter()
                .fold(z(), |acc, &s| acc.add_poly(&v(s).pow(2)));
            field(
                [
                    (Var::T, t.pow(2).scale(&C::from_i64(4))),
                    (Var::X, four_t.mul_poly(&v(Var::X))),
                    (Var::Y, four_t.mul_poly(&v(Var::Y))),
                    (Var::Z, four_t.mul_poly(&v(Var::Z))),
                ],
                -t.scale(&C::from_i64(6)).add_poly(&r2),
            )
        }
        _ => return None,
    };
    Some(f)
}

pub fn generators<C: Scalar>() -> Vec<PointVectorField<C>> {
    (1..=13)
        .map(|i| generator(i).expect("index in range"))
        .collect()
}

/// The fifth generator exactly as it appears in the printed list,
/// `−x∂_z + z∂_y`. Kept only to demonstrate that it breaks closure.
pub fn printed_x5<C: Scalar>() -> PointVectorField<C> {
    let z = Poly::<C>::zero;
    field(
        [
            (Var::Z, -Poly::var(Var::X)),
            (Var::Y, Poly::var(Var::Z)),
            (Var::T, z()),
            (Var::X, z()),
        ],
        z(),
    )
}

/// `f ∂_U`, a symmetry iff `f` solves the heat equation.
pub fn free_generator<C: Scalar>(f: Poly<C>) -> PointVectorField<C> {
    PointVectorField {
        eta_free: f,
        ..PointVectorField::zero()
    }
}

/// Whether `f ∂_U` is a symmetry: `f_t − f_xx − f_yy − f_zz = 0`.
pub fn check_free_symmetry<C: Scalar>(f: &Poly<C>) -> bool {
    f.heat().is_zero()
}

impl<C: Scalar> fmt::Display for PointVectorField<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in Var::COORDS {
            let p = self.xi(v);
            if !p.is_zero() {
                parts.push(render_product(p, &format!("D{v}")));
            }
        }
        if !self.eta_lin.is_zero() {
            parts.push(render_product(&self.eta_lin, "U*DU"));
        }
        if !self.eta_free.is_zero() {
            parts.push(render_product(&self.eta_free, "DU"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&join_signed(parts))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct XiRecord<C: Scalar> {
    t: Poly<C>,
    x: Poly<C>,
    y: Poly<C>,
    z: Poly<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct FieldRecord<C: Scalar> {
    xi: XiRecord<C>,
    #[serde(default)]
    eta_lin: Poly<C>,
    #[serde(default)]
    eta_free: Poly<C>,
}

impl<C: Scalar> Serialize for PointVectorField<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [t, x, y, z] = self.xi.clone();
        FieldRecord {
            xi: XiRecord { t, x, y, z },
            eta_lin: self.eta_lin.clone(),
            eta_free: self.eta_free.clone(),
        }
        .serialize(s)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for PointVectorField<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FieldRecord::<C>::deserialize(d)?;
        Ok(PointVectorField {
            xi: [r.xi.t, r.xi.x, r.xi.y, r.xi.z],
            eta_lin: r.eta_lin,
            eta_free: r.eta_free,
        })
    }
}
