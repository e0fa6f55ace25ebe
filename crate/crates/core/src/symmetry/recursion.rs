use crate::error::{Error, Result};
use crate::exact::{Poly, Var};
use crate::jet::DiffFn;
use crate::scalar::Scalar;

/// First-order operator `Q ↦ xi_x·D_xQ + xi_y·D_yQ + xi_z·D_zQ + phi·Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionOperator<C> {
    pub xi_x: Poly<C>,
    pub xi_y: Poly<C>,
    pub xi_z: Poly<C>,
    pub phi: Poly<C>,
}

impl<C: Scalar> RecursionOperator<C> {
    /// `R_1 .. R_9`.
    pub fn builtin(i: u32) -> Result<Self> {
        let v = |v: Var| Poly::var(v);
        let two_t = Poly::var(Var::T).scale(&C::from_i64(2));
        let zero = Poly::zero;
        let one = Poly::one;
        let (xi_x, xi_y, xi_z, phi) = match i {
            1 => (two_t, zero(), zero(), v(Var::X)),
            2 => (zero(), two_t, zero(), v(Var::Y)),
            3 => (zero(), zero(), two_t, v(Var::Z)),
            4 => (v(Var::Y), -v(Var::X), zero(), zero()),
            5 => (v(Var::Z), zero(), -v(Var::X), zero()),
            6 => (one(), zero(), zero(), zero()),
            7 => (zero(), v(Var::Z), -v(Var::Y), zero()),
            8 => (zero(), one(), zero(), zero()),
            9 => (zero(), zero(), one(), zero()),
            _ => return Err(Error::InvalidOperatorIndex(i)),
        };
        Ok(RecursionOperator {
            xi_x,
            xi_y,
            xi_z,
            phi,
        })
    }

    /// Applies the operator and returns the normal form. The coefficients
    /// are t-derivative free, so a normal input stays normal.
    pub fn apply(&self, q: &DiffFn<C>) -> DiffFn<C> {
        let mut out = q.mul_poly(&self.phi);
        for (v, xi) in [
            (Var::X, &self.xi_x),
            (Var::Y, &self.xi_y),
            (Var::Z, &self.xi_z),
        ] {
            if !xi.is_zero() {
                out.add_assign(&q.total_derivative(v).mul_poly(xi));
            }
        }
        out.normal_form()
    }
}

/// `R_i(Q)` for a built-in index.
pub fn apply_recursion<C: Scalar>(i: u32, q: &DiffFn<C>) -> Result<DiffFn<C>> {
    Ok(RecursionOperator::builtin(i)?.apply(q))
}

/// All nine operators, indexed from zero.
pub(crate) fn builtins<C: Scalar>() -> [RecursionOperator<C>; 9] {
    std::array::from_fn(|k| RecursionOperator::builtin(k as u32 + 1).expect("index in range"))
}
