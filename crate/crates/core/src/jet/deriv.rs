use std::cmp::Ordering;
use std::fmt;

use crate::exact::Var;

/// Derivative orders `[i, j, k, m]` of `∂_x^i ∂_y^j ∂_z^k ∂_t^m U`.
///
/// Same graded-lexicographic order as [`MonomialExp`](crate::exact::MonomialExp).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct DerivIndex(pub [u32; 4]);

impl DerivIndex {
    /// `U` itself.
    pub const ZERO: DerivIndex = DerivIndex([0; 4]);

    pub fn new(i: u32, j: u32, k: u32, m: u32) -> Self {
        DerivIndex([i, j, k, m])
    }

    pub fn of(v: Var) -> Self {
        DerivIndex::ZERO.bump(v, 1)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn count(&self, v: Var) -> u32 {
        self.0[v.slot()]
    }

    /// Normal iff no t-derivative is present.
    pub fn is_normal(&self) -> bool {
        self.0[Var::T.slot()] == 0
    }

    pub fn bump(&self, v: Var, by: u32) -> DerivIndex {
        let mut e = self.0;
        e[v.slot()] += by;
        DerivIndex(e)
    }

    pub fn lower(&self, v: Var) -> Option<DerivIndex> {
        let mut e = self.0;
        let slot = &mut e[v.slot()];
        if *slot == 0 {
            return None;
        }
        *slot -= 1;
        Some(DerivIndex(e))
    }

    pub fn join(&self, other: &DerivIndex) -> DerivIndex {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        DerivIndex(e)
    }

    /// Parses the letters after `U` in names like `Uxxy` or `Ut`.
    pub fn from_letters(s: &str) -> Option<DerivIndex> {
        let mut d = DerivIndex::ZERO;
        for c in s.chars() {
            d = d.bump(Var::from_symbol(c)?, 1);
        }
        Some(d)
    }

    /// Enumerates every index with `order() <= max_order`, optionally
    /// restricted to spatial ones, in canonical order.
    pub fn up_to(max_order: u32, spatial_only: bool) -> Vec<DerivIndex> {
        let tmax = if spatial_only { 0 } else { max_order };
        let mut out = Vec::new();
        for i in 0..=max_order {
            for j in 0..=max_order - i {
                for k in 0..=max_order - i - j {
                    for m in 0..=tmax.min(max_order - i - j - k) {
                        out.push(DerivIndex::new(i, j, k, m));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl Ord for DerivIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DerivIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `U` followed by one letter per derivative, e.g. `Uxxy`.
impl fmt::Display for DerivIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U")?;
        for v in Var::ALL {
            for _ in 0..self.count(v) {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
