use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DerivIndex;
use crate::exact::poly::{join_signed, render_product};
use crate::exact::{MonomialExp, Poly, Var};
use crate::scalar::Scalar;

/// A finite sum `Σ_J p_J(x, y, z, t) · U_J`, linear in U and its derivatives.
/// No stored polynomial is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffFn<C> {
    terms: BTreeMap<DerivIndex, Poly<C>>,
}

impl<C: Scalar> Default for DiffFn<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> DiffFn<C> {
    pub fn zero() -> Self {
        DiffFn {
            terms: BTreeMap::new(),
        }
    }

    /// The seed characteristic `U`.
    pub fn u() -> Self {
        Self::jet(DerivIndex::ZERO)
    }

    /// A single jet variable `U_J`.
    pub fn jet(j: DerivIndex) -> Self {
        Self::term(Poly::one(), j)
    }

    pub fn term(p: Poly<C>, j: DerivIndex) -> Self {
        let mut f = Self::zero();
        f.add_term(j, p);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (DerivIndex, Poly<C>)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (j, p) in terms {
            f.add_term(j, p);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DerivIndex, &Poly<C>)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, j: &DerivIndex) -> Poly<C> {
        self.terms.get(j).cloned().unwrap_or_default()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(DerivIndex::is_normal)
    }

    /// Highest derivative order present; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(DerivIndex::order).max()
    }

    pub fn add_term(&mut self, j: DerivIndex, p: Poly<C>) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&j) {
            Some(existing) => {
                let sum = existing.add_poly(&p);
                if sum.is_zero() {
                    self.terms.remove(&j);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(j, p);
            }
        }
    }

    pub(crate) fn take_term(&mut self, j: &DerivIndex) -> Option<Poly<C>> {
        self.terms.remove(j)
    }

    pub(crate) fn keys(&self) -> impl DoubleEndedIterator<Item = &DerivIndex> + '_ {
        self.terms.keys()
    }

    pub fn add_assign(&mut self, other: &DiffFn<C>) {
        for (j, p) in &other.terms {
            self.add_term(*j, p.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &DiffFn<C>, scale: &C) {
        if scale.is_zero() {
            return;
        }
        for (j, p) in &other.terms {
            self.add_term(*j, p.scale(scale));
        }
    }

    pub fn scale(&self, c: &C) -> DiffFn<C> {
        let mut out = DiffFn::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &Poly<C>) -> DiffFn<C> {
        DiffFn::from_terms(self.terms.iter().map(|(j, q)| (*j, q.mul_poly(p))))
    }

    /// Total derivative `D_v`: `p·U_J ↦ (∂_v p)·U_J + p·U_{J+e_v}`.
    pub fn total_derivative(&self, v: Var) -> DiffFn<C> {
        let mut out = DiffFn::zero();
        for (j, p) in &self.terms {
            out.add_term(*j, p.partial(v));
            out.add_term(j.bump(v, 1), p.clone());
        }
        out
    }

    /// Iterated total derivative `D_J`.
    pub fn total_derivative_multi(&self, j: &DerivIndex) -> DiffFn<C> {
        let mut out = self.clone();
        for v in Var::ALL {
            for _ in 0..j.count(v) {
                out = out.total_derivative(v);
            }
        }
        out
    }

    /// `D_x² + D_y² + D_z²`.
    pub fn laplacian(&self) -> DiffFn<C> {
        let mut out = DiffFn::zero();
        for v in Var::SPATIAL {
            out.add_assign(&self.total_derivative(v).total_derivative(v));
        }
        out
    }

    /// Flattened `((J, monomial), coefficient)` entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = ((DerivIndex, MonomialExp), C)> + '_ {
        self.terms
            .iter()
            .flat_map(|(j, p)| p.terms().map(move |(m, c)| ((*j, *m), c.clone())))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> DiffFn<D> {
        DiffFn::from_terms(self.terms.iter().map(|(j, p)| (*j, p.map_coeffs(&f))))
    }
}

impl<C: Scalar> Add for &DiffFn<C> {
    type Output = DiffFn<C>;
    fn add(self, rhs: &DiffFn<C>) -> DiffFn<C> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<C: Scalar> Sub for &DiffFn<C> {
    type Output = DiffFn<C>;
    fn sub(self, rhs: &DiffFn<C>) -> DiffFn<C> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-C::one());
        out
    }
}

impl<C: Scalar> Neg for &DiffFn<C> {
    type Output = DiffFn<C>;
    fn neg(self) -> DiffFn<C> {
        self.scale(&-C::one())
    }
}

/// Highest derivatives first, e.g. `4t^2*Uxx + 4tx*Ux + (x^2 + 2t)*U`.
/// The output parses back through [`parse_diff`](crate::parse::parse_diff).
impl<C: Scalar> fmt::Display for DiffFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self
            .terms
            .iter()
            .rev()
            .map(|(j, p)| render_product(p, &j.to_string()));
        write!(f, "{}", join_signed(parts))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct TermRecord<C: Scalar> {
    deriv: [u32; 4],
    poly: Poly<C>,
}

impl<C: Scalar> Serialize for DiffFn<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord<C>> = self
            .terms
            .iter()
            .map(|(j, p)| TermRecord {
                deriv: j.0,
                poly: p.clone(),
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for DiffFn<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord<C>>::deserialize(d)?;
        Ok(DiffFn::from_terms(
            records.into_iter().map(|r| (DerivIndex(r.deriv), r.poly)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DiffFunction, Polynomial, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ux() -> DiffFunction {
        DiffFunction::jet(DerivIndex::of(Var::X))
    }

    #[test]
    fn total_derivative_examples() {
        let x = Polynomial::var(Var::X);
        let xu = DiffFunction::term(x.clone(), DerivIndex::ZERO);
        let expect = &DiffFunction::u() + &ux().mul_poly(&x);
        assert_eq!(xu.total_derivative(Var::X), expect);

        // D_x(2t U_x + x U) = 2t U_xx + U + x U_x
        let two_t = Polynomial::var(Var::T).scale(&q(2));
        let q1 = &ux().mul_poly(&two_t) + &xu;
        let expect = DiffFunction::from_terms([
            (DerivIndex::new(2, 0, 0, 0), two_t.clone()),
            (DerivIndex::ZERO, Polynomial::one()),
            (DerivIndex::of(Var::X), x.clone()),
        ]);
        assert_eq!(q1.total_derivative(Var::X), expect);

        let ut = DiffFunction::u().total_derivative(Var::T);
        assert_eq!(ut, DiffFunction::jet(DerivIndex::new(0, 0, 0, 1)));
        assert!(!ut.is_normal());
    }

    #[test]
    fn display_layout() {
        let t = Polynomial::var(Var::T);
        let x = Polynomial::var(Var::X);
        let f = DiffFunction::from_terms([
            (DerivIndex::new(2, 0, 0, 0), t.mul_poly(&t).scale(&q(4))),
            (DerivIndex::of(Var::X), t.mul_poly(&x).scale(&q(4))),
            (DerivIndex::ZERO, &x.mul_poly(&x) + &t.scale(&q(2))),
        ]);
        assert_eq!(f.to_string(), "4t^2*Uxx + 4tx*Ux + (x^2 + 2t)*U");
        assert_eq!((-&ux()).to_string(), "-Ux");
        assert_eq!(DiffFunction::zero().to_string(), "0");
    }

    #[test]
    fn json_layout() {
        let f = ux().scale(&q(-2));
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"[{"deriv":[1,0,0,0],"poly":[{"exp":[0,0,0,0],"coeff":"-2"}]}]"#
        );
    }
}
