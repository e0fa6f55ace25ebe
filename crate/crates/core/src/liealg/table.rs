use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{commutator, generators, PointVectorField};
use crate::exact::MonomialExp;
use crate::linalg::{solve_combination, SparseRow};
use crate::scalar::Scalar;
use crate::Rational;

/// Coefficients of a field over `X_1 .. X_13` (index 0 is `X_1`).
/// Serialized as a list of 13 rational strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion(pub Vec<Rational>);

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| {
                Rational::parse_text(t)
                    .ok_or_else(|| D::Error::custom(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<_, _>>()
            .map(Expansion)
    }
}

impl Expansion {
    pub fn zero() -> Self {
        Expansion(vec![Rational::from_integer(0.into()); 13])
    }

    fn from_terms(terms: &[(i64, usize)]) -> Self {
        let mut e = Expansion::zero();
        for &(c, i) in terms {
            e.0[i - 1] = Rational::from_integer(c.into());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0
            .iter()
            .all(|c| *c == Rational::from_integer(0.into()))
    }

    /// Whether only `X_1 .. X_k` appear.
    pub fn within_first(&self, k: usize) -> bool {
        self.0[k..]
            .iter()
            .all(|c| *c == Rational::from_integer(0.into()))
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().filter(|(_, c)| **c != zero) {
            let neg = *c < zero;
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag != one {
                write!(f, "{mag}")?;
            }
            write!(f, "X{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Component slot (t, x, y, z, eta_lin, eta_free) and monomial.
type Key = (u8, MonomialExp);

fn row_of<C: Scalar>(f: &PointVectorField<C>) -> SparseRow<Key, C> {
    let parts = f.xi.iter().chain([&f.eta_lin, &f.eta_free]);
    parts
        .enumerate()
        .flat_map(|(slot, p)| p.terms().map(move |(m, c)| ((slot as u8, *m), c.clone())))
        .collect()
}

/// Expresses `f` in the basis `X_1 .. X_13`, or `None` if it lies outside the span.
pub fn expand(
    f: &PointVectorField<Rational>,
    basis: &[PointVectorField<Rational>],
) -> Option<Expansion> {
    let rows: Vec<_> = basis.iter().map(row_of).collect();
    let mut target = row_of(f);
    target.sort_by_key(|a| a.0);
    solve_combination(&rows, &target).map(Expansion)
}

/// The bracket table as printed; pairs not listed are claimed to vanish.
pub fn printed_table() -> Vec<((usize, usize), Expansion)> {
    let e = Expansion::from_terms;
    vec![
        ((1, 4), e(&[(-1, 2)])),
        ((2, 8), e(&[(1, 10)])),
        ((4, 5), e(&[(1, 7)])),
        ((5, 6), e(&[(1, 9)])),
        ((1, 5), e(&[(-1, 3)])),
        ((3, 5), e(&[(1, 1)])),
        ((4, 6), e(&[(1, 8)])),
        ((5, 7), e(&[(1, 4)])),
        ((1, 6), e(&[(1, 10)])),
        ((3, 7), e(&[(1, 2)])),
        ((4, 7), e(&[(-1, 5)])),
        ((5, 9), e(&[(-1, 6)])),
        ((1, 11), e(&[(-2, 6)])),
        ((2, 11), e(&[(-2, 8)])),
        ((3, 11), e(&[(-2, 9)])),
        ((6, 12), e(&[(1, 6)])),
        ((1, 12), e(&[(-1, 1)])),
        ((2, 12), e(&[(-1, 2)])),
        ((3, 12), e(&[(-1, 3)])),
        ((6, 13), e(&[(2, 1)])),
        ((2, 4), e(&[(1, 1)])),
        ((3, 9), e(&[(1, 10)])),
        ((4, 8), e(&[(-1, 6)])),
        ((7, 8), e(&[(1, 9)])),
        ((2, 7), e(&[(-1, 3)])),
        ((8, 12), e(&[(1, 8)])),
        ((8, 13), e(&[(2, 2)])),
        ((7, 9), e(&[(-1, 8)])),
        ((9, 12), e(&[(1, 9)])),
        ((9, 13), e(&[(2, 3)])),
        ((11, 12), e(&[(2, 11)])),
        ((11, 13), e(&[(4, 12), (-6, 10)])),
        ((12, 13), e(&[(2, 13)])),
    ]
}

/// Printed value of `[X_i, X_j]` for `i < j`.
pub fn printed_bracket(i: usize, j: usize) -> Expansion {
    printed_table()
        .into_iter()
        .find(|(k, _)| *k == (i, j))
        .map_or_else(Expansion::zero, |(_, e)| e)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorTableEntry {
    pub left: usize,
    pub right: usize,
    /// `None` when the bracket is outside `span{X_1..X_13}`.
    pub computed: Option<Expansion>,
    pub printed: Expansion,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub entries: Vec<CommutatorTableEntry>,
    /// Every bracket expands in `X_1..X_13`.
    pub closed: bool,
    /// Brackets among `X_1..X_10` stay in their span.
    pub subalgebra_closed: bool,
    pub disagreements: usize,
}

/// All 78 brackets `[X_i, X_j]`, `i < j`, for the given 13 generators,
/// compared with the printed table.
pub fn verify_table_with(gens: &[PointVectorField<Rational>]) -> TableReport {
    assert_eq!(gens.len(), 13, "thirteen generators expected");
    let pairs: Vec<(usize, usize)> = (1..=13)
        .flat_map(|i| (i + 1..=13).map(move |j| (i, j)))
        .collect();
    let entries: Vec<CommutatorTableEntry> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let computed = expand(&commutator(&gens[i - 1], &gens[j - 1]), gens);
            let printed = printed_bracket(i, j);
            CommutatorTableEntry {
                left: i,
                right: j,
                agree: computed.as_ref() == Some(&printed),
                computed,
                printed,
            }
        })
        .collect();
    let closed = entries.iter().all(|e| e.computed.is_some());
    let subalgebra_closed = entries
        .iter()
        .filter(|e| e.right <= 10)
        .all(|e| e.computed.as_ref().is_some_and(|c| c.within_first(10)));
    let disagreements = entries.iter().filter(|e| !e.agree).count();
    TableReport {
        entries,
        closed,
        subalgebra_closed,
        disagreements,
    }
}

pub fn verify_table() -> TableReport {
    verify_table_with(&generators())
}
