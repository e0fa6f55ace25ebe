//! Exact coefficients: monomials and sparse polynomials in x, y, z, t.

mod monomial;
pub(crate) mod poly;

pub use monomial::MonomialExp;
pub use poly::Poly;

use std::fmt;

/// One of the four independent variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    T,
}

impl Var {
    /// Storage order used by [`MonomialExp`] and [`DerivIndex`](crate::jet::DerivIndex).
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];
    pub const SPATIAL: [Var; 3] = [Var::X, Var::Y, Var::Z];
    /// Coordinate order (t, x, y, z) used for vector-field components.
    pub const COORDS: [Var; 4] = [Var::T, Var::X, Var::Y, Var::Z];

    pub fn slot(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
            Var::T => 3,
        }
    }

    /// Position in the (t, x, y, z) coordinate order.
    pub fn coord(self) -> usize {
        match self {
            Var::T => 0,
            Var::X => 1,
            Var::Y => 2,
            Var::Z => 3,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::T => 't',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'z' => Some(Var::Z),
            't' => Some(Var::T),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}
