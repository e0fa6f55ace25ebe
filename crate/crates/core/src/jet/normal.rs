use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DerivIndex, DiffFn};
use crate::exact::{Poly, Var};
use crate::scalar::Scalar;

/// `F = U_t - U_xx - U_yy - U_zz`.
pub fn heat_equation<C: Scalar>() -> DiffFn<C> {
    let mut f = DiffFn::jet(DerivIndex::of(Var::T));
    for v in Var::SPATIAL {
        f.add_term(DerivIndex::ZERO.bump(v, 2), -Poly::one());
    }
    f
}

/// Coefficients `c_J` with `f = normal(f) + Σ_J c_J · D_J(F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionCertificate<C> {
    coeffs: BTreeMap<DerivIndex, Poly<C>>,
}

impl<C: Scalar> Default for ReductionCertificate<C> {
    fn default() -> Self {
        ReductionCertificate {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<C: Scalar> ReductionCertificate<C> {
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&DerivIndex, &Poly<C>)> + '_ {
        self.coeffs.iter()
    }

    pub fn coeff(&self, j: &DerivIndex) -> Poly<C> {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    fn add(&mut self, j: DerivIndex, p: &Poly<C>) {
        let sum = self
            .coeffs
            .get(&j)
            .map_or_else(|| p.clone(), |e| e.add_poly(p));
        if sum.is_zero() {
            self.coeffs.remove(&j);
        } else {
            self.coeffs.insert(j, sum);
        }
    }

    /// `Σ_J c_J · D_J(F)` expanded term by term, without any normalization.
    pub fn expand(&self) -> DiffFn<C> {
        let f = heat_equation::<C>();
        let mut out = DiffFn::zero();
        for (j, c) in &self.coeffs {
            // F has constant coefficients, so D_J(F) only shifts indices.
            for (k, p) in f.terms() {
                out.add_term(k.join(j), p.mul_poly(c));
            }
        }
        out
    }

    /// Formal adjoint collapse `Σ_J (-1)^{|J|} D_J(c_J)`.
    pub fn adjoint_collapse(&self) -> Poly<C> {
        let mut out = Poly::zero();
        for (j, c) in &self.coeffs {
            let d = c.partial_multi(j.0);
            if j.order() % 2 == 0 {
                out = out.add_poly(&d);
            } else {
                out = out.sub_poly(&d);
            }
        }
        out
    }
}

impl<C: Scalar> DiffFn<C> {
    /// Eliminates every t-derivative with `U_{J+e_t} → U_{J+2e_x} + U_{J+2e_y} + U_{J+2e_z}`,
    /// always rewriting the highest-order t-derivative first.
    pub fn normalize(&self) -> (DiffFn<C>, ReductionCertificate<C>) {
        let mut cert = ReductionCertificate::default();
        if self.is_normal() {
            return (self.clone(), cert);
        }
        let mut work = self.clone();
        loop {
            let next = work.keys().rev().find(|j| !j.is_normal()).copied();
            let Some(j) = next else { break };
            let p = work.take_term(&j).expect("key present");
            let k = j
                .lower(Var::T)
                .expect("non-normal index has a t-derivative");
            cert.add(k, &p);
            for v in Var::SPATIAL {
                work.add_term(k.bump(v, 2), p.clone());
            }
        }
        (work, cert)
    }

    pub fn normal_form(&self) -> DiffFn<C> {
        self.normalize().0
    }
}

/// `normalize(D_t Q - ΔQ)`; zero iff `Q` characterizes a generalized symmetry.
pub fn residual<C: Scalar>(q: &DiffFn<C>) -> DiffFn<C> {
    let lhs = q.total_derivative(Var::T);
    (&lhs - &q.laplacian()).normal_form()
}

/// Equality on solutions of the heat equation.
pub fn diff_equal<C: Scalar>(f: &DiffFn<C>, g: &DiffFn<C>) -> bool {
    (f - g).normal_form().is_zero()
}

impl<C: Scalar> Serialize for ReductionCertificate<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiffFn::from_terms(self.coeffs.iter().map(|(j, p)| (*j, p.clone()))).serialize(s)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for ReductionCertificate<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = DiffFn::<C>::deserialize(d)?;
        Ok(ReductionCertificate {
            coeffs: f.terms().map(|(j, p)| (*j, p.clone())).collect(),
        })
    }
}
