use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{MonomialExp, Var};
use crate::scalar::Scalar;

/// Sparse polynomial in x, y, z, t. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    terms: BTreeMap<MonomialExp, C>,
}

impl<C: Scalar> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, MonomialExp::ONE)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(C::one(), MonomialExp::var(v))
    }

    pub fn monomial(c: C, m: MonomialExp) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (MonomialExp, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
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

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MonomialExp, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MonomialExp) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The coefficient if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&MonomialExp::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MonomialExp::degree).max()
    }

    pub fn add_term(&mut self, m: MonomialExp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly<C>, scale: &C) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone() * scale.clone());
        }
    }

    pub fn add_poly(&self, other: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub_poly(&self, other: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn mul_poly(&self, other: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg_poly(&self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, -v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly<C> {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Formal partial derivative in `v`.
    pub fn partial(&self, v: Var) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((k, dm)) = m.partial(v) {
                out.add_term(dm, c.clone() * C::from_i64(k as i64));
            }
        }
        out
    }

    /// Repeated partial derivative, `counts` indexed like [`MonomialExp`].
    pub fn partial_multi(&self, counts: [u32; 4]) -> Poly<C> {
        let mut out = self.clone();
        for v in Var::ALL {
            for _ in 0..counts[v.slot()] {
                if out.is_zero() {
                    return out;
                }
                out = out.partial(v);
            }
        }
        out
    }

    /// Heat operator `p_t - p_xx - p_yy - p_zz`.
    pub fn heat(&self) -> Poly<C> {
        let mut out = self.partial(Var::T);
        for v in Var::SPATIAL {
            out = out.sub_poly(&self.partial(v).partial(v));
        }
        out
    }

    /// Backward (adjoint) heat operator `p_t + p_xx + p_yy + p_zz`.
    pub fn adjoint_heat(&self) -> Poly<C> {
        let mut out = self.partial(Var::T);
        for v in Var::SPATIAL {
            out = out.add_poly(&self.partial(v).partial(v));
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.add_poly(rhs)
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.sub_poly(rhs)
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.mul_poly(rhs)
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_poly()
    }
}

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_poly()
    }
}

/// Text such as `-1/2t^2x`: coefficient followed by juxtaposed powers.
pub(crate) fn render_term<C: Scalar>(c: &C, m: &MonomialExp) -> String {
    let mono = m.to_string();
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        mono
    } else if (-c.clone()).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}{mono}")
    }
}

/// `p*name`, with unit coefficients elided and sums parenthesized.
pub(crate) fn render_product<C: Scalar>(p: &Poly<C>, name: &str) -> String {
    if p.len() == 1 {
        let (m, c) = p.terms().next().expect("one term");
        if *m == MonomialExp::ONE {
            if c.is_one() {
                return name.to_string();
            }
            if (-c.clone()).is_one() {
                return format!("-{name}");
            }
        }
        format!("{}*{name}", render_term(c, m))
    } else {
        format!("({p})*{name}")
    }
}

pub(crate) fn join_signed(parts: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

/// Highest-degree terms first, e.g. `x^2 + 2t`.
impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().rev().map(|(m, c)| render_term(c, m));
        write!(f, "{}", join_signed(parts))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exp: [u32; 4],
    coeff: String,
}

impl<C: Scalar> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord {
                exp: m.0,
                coeff: c.to_string(),
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut p = Poly::zero();
        for r in records {
            let c = C::parse_text(&r.coeff)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {:?}", r.coeff)))?;
            p.add_term(MonomialExp(r.exp), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x() -> P {
        P::var(Var::X)
    }
    fn y() -> P {
        P::var(Var::Y)
    }
    fn z() -> P {
        P::var(Var::Z)
    }
    fn t() -> P {
        P::var(Var::T)
    }

    #[test]
    fn add_examples() {
        assert!((&x() + &x().neg_poly()).is_zero());
        let two_t = t().scale(&q(2));
        let s = &two_t + &x();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "x + 2t");
        let a = &(&x() * &x()) - &(&z() * &z());
        let b = &(&z() * &z()) - &(&y() * &y());
        assert_eq!(&a + &b, &(&x() * &x()) - &(&y() * &y()));
    }

    #[test]
    fn mul_examples() {
        assert!((&x() * &P::zero()).is_zero());
        let two_t = t().scale(&q(2));
        assert_eq!(
            &two_t * &x(),
            P::monomial(q(2), MonomialExp::new(1, 0, 0, 1))
        );
        assert_eq!(
            &two_t * &two_t,
            P::monomial(q(4), MonomialExp::new(0, 0, 0, 2))
        );
    }

    #[test]
    fn partial_examples() {
        assert_eq!((&x() * &x()).partial(Var::X), x().scale(&q(2)));
        assert_eq!(t().scale(&q(2)).partial(Var::T), P::from_i64(2));
        let p = &(&(&x() * &x()) * &y()) - &(&(&z() * &z()) * &y());
        assert_eq!(p.partial(Var::Y), &(&x() * &x()) - &(&z() * &z()));
    }

    #[test]
    fn is_zero_examples() {
        assert!(P::zero().is_zero());
        assert!((&x() - &x()).is_zero());
        assert!(!(&x() + &t()).is_zero());
    }

    #[test]
    fn json_format() {
        let p = &(&x() * &x()) + &t().scale(&Rational::new(1.into(), 2.into()));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"exp":[0,0,0,1],"coeff":"1/2"},{"exp":[2,0,0,0],"coeff":"1"}]"#
        );
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_rationals() {
        let p = P::from_terms([
            (
                MonomialExp::new(0, 0, 0, 1),
                Rational::new((-1).into(), 2.into()),
            ),
            (MonomialExp::new(2, 0, 0, 0), q(-1)),
            (MonomialExp::ONE, q(3)),
        ]);
        assert_eq!(p.to_string(), "-x^2 - 1/2t + 3");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(
            ((0u32..3, 0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4),
            0..6,
        )
        .prop_map(|terms| {
            P::from_terms(terms.into_iter().map(|((a, b, c, d), n, den)| {
                (
                    MonomialExp::new(a, b, c, d),
                    Rational::new(n.into(), den.into()),
                )
            }))
        })
    }

    fn arb_var() -> impl Strategy<Value = Var> {
        prop::sample::select(Var::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn partials_commute(p in arb_poly(), u in arb_var(), v in arb_var()) {
            prop_assert_eq!(p.partial(u).partial(v), p.partial(v).partial(u));
        }

        #[test]
        fn no_zero_coefficients(a in arb_poly(), b in arb_poly()) {
            let prod = &a * &b;
            let sum = &a - &b;
            prop_assert!(prod.terms().chain(sum.terms()).all(|(_, c)| !num_traits::Zero::is_zero(c)));
        }

        #[test]
        fn json_roundtrip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: P = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
