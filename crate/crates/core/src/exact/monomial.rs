use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// Exponents `[a, b, c, d]` of `x^a y^b z^c t^d`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// array compared left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MonomialExp(pub [u32; 4]);

impl MonomialExp {
    pub const ONE: MonomialExp = MonomialExp([0; 4]);

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        MonomialExp([a, b, c, d])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.slot()] = 1;
        MonomialExp(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.slot()]
    }

    pub fn mul(&self, other: &MonomialExp) -> MonomialExp {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        MonomialExp(e)
    }

    /// Formal derivative: `None` when the variable is absent.
    pub fn partial(&self, v: Var) -> Option<(u32, MonomialExp)> {
        let k = self.exp(v);
        if k == 0 {
            return None;
        }
        let mut e = self.0;
        e[v.slot()] -= 1;
        Some((k, MonomialExp(e)))
    }
}

impl Ord for MonomialExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MonomialExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as juxtaposed powers in t, x, y, z order, e.g. `t^2x`; empty for 1.
impl fmt::Display for MonomialExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in Var::COORDS {
            match self.exp(v) {
                0 => {}
                1 => write!(f, "{v}")?,
                k => write!(f, "{v}^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let one = MonomialExp::ONE;
        let x = MonomialExp::var(Var::X);
        let t = MonomialExp::var(Var::T);
        let x2 = MonomialExp::new(2, 0, 0, 0);
        assert!(one < t);
        assert!(t < x);
        assert!(x < x2);
        assert!(MonomialExp::new(0, 0, 0, 2) < MonomialExp::new(1, 1, 0, 0));
    }

    #[test]
    fn display() {
        assert_eq!(MonomialExp::new(1, 0, 0, 2).to_string(), "t^2x");
        assert_eq!(MonomialExp::ONE.to_string(), "");
    }
}
