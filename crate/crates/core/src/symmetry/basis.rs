//! Rank and basis selection for spans of characteristics.
//!
//! Every monomial-times-derivative entry `x^a y^b z^c t^d · U_{ijkm}` carries
//! the scaling weight `a + b + c + 2d − i − j − k − 2m`. Characteristics of
//! operator words are homogeneous in this weight, so the coefficient matrix
//! is block diagonal and each block is eliminated independently.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counting::formula_n;
use super::words::{characteristics, enumerate_words, OperatorWord, WordMode};
use crate::exact::MonomialExp;
use crate::jet::{DerivIndex, DiffFn};
use crate::linalg::{Echelon, SparseRow};
use crate::scalar::Scalar;
use crate::{DiffFunction, Fp};

type Column = (DerivIndex, MonomialExp);

fn entry_weight(j: &DerivIndex, m: &MonomialExp) -> i64 {
    let [i, jj, k, mt] = j.0.map(i64::from);
    let [a, b, c, d] = m.0.map(i64::from);
    a + b + c + 2 * d - i - jj - k - 2 * mt
}

/// The common weight of all entries, if there is one.
fn homogeneous_weight<C: Scalar>(q: &DiffFn<C>) -> Option<i64> {
    let mut w = None;
    for (j, p) in q.terms() {
        for (m, _) in p.terms() {
            let e = entry_weight(j, m);
            match w {
                None => w = Some(e),
                Some(v) if v != e => return None,
                _ => {}
            }
        }
    }
    Some(w.unwrap_or(0))
}

fn row_of<C: Scalar>(q: &DiffFn<C>) -> SparseRow<Column, C> {
    // `entries` yields keys in (DerivIndex, MonomialExp) order already.
    q.entries().collect()
}

/// Groups row indices into column-disjoint blocks (a single block when some
/// row is not homogeneous).
fn blocks<C: Scalar>(chars: &[DiffFn<C>]) -> Vec<Vec<usize>> {
    let weights: Option<Vec<i64>> = chars.iter().map(homogeneous_weight).collect();
    match weights {
        Some(ws) => {
            let mut by: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, w) in ws.into_iter().enumerate() {
                by.entry(w).or_default().push(i);
            }
            by.into_values().collect()
        }
        None => vec![(0..chars.len()).collect()],
    }
}

/// Runs greedy insertion in input order; returns the indices that raised the rank.
fn greedy<C: Scalar>(chars: &[DiffFn<C>]) -> Vec<usize> {
    let parts: Vec<Vec<usize>> = blocks(chars)
        .into_par_iter()
        .map(|block| {
            let mut e = Echelon::new();
            block
                .into_iter()
                .filter(|&i| e.insert(row_of(&chars[i])))
                .collect()
        })
        .collect();
    let mut kept: Vec<usize> = parts.into_iter().flatten().collect();
    kept.sort_unstable();
    kept
}

/// Dimension of the span of `chars` over the coefficient field.
pub fn rank_of<C: Scalar>(chars: &[DiffFn<C>]) -> usize {
    greedy(chars).len()
}

/// Rank of the images modulo 2^61 − 1. Never exceeds the rational rank and
/// agrees with it unless the prime divides some minor.
pub fn rank_mod_p(chars: &[DiffFunction]) -> usize {
    let reduced: Vec<DiffFn<Fp>> = chars
        .iter()
        .map(|q| q.map_coeffs(|c| Fp::from_rational(c).expect("denominator invertible mod p")))
        .collect();
    rank_of(&reduced)
}

/// Whether `q` lies in the span of `basis`.
pub fn in_span<C: Scalar>(basis: &[DiffFn<C>], q: &DiffFn<C>) -> bool {
    let mut e = Echelon::new();
    for b in basis {
        e.insert(row_of(b));
    }
    e.contains(row_of(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentCount {
    pub order: u64,
    pub enumerated_rank: u64,
    pub formula_value: u64,
    pub agree: bool,
}

/// Rank of all words of length `≤ n` applied to `U`, against the closed form.
pub fn independent_count(n: u64, mode: WordMode) -> IndependentCount {
    let words = enumerate_words(n as usize, mode);
    let chars = characteristics::<crate::Rational>(&words);
    let enumerated_rank = rank_of(&chars) as u64;
    let formula_value: u64 = formula_n(n).try_into().expect("fits in u64");
    IndependentCount {
        order: n,
        enumerated_rank,
        formula_value,
        agree: enumerated_rank == formula_value,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub word: OperatorWord,
    pub characteristic: DiffFunction,
}

/// Greedy basis: walk the nondecreasing words of length `≤ n` in enumeration
/// order and keep each word whose characteristic raises the rank.
pub fn basis(n: u64) -> Vec<BasisEntry> {
    let words = enumerate_words(n as usize, WordMode::Nondecreasing);
    let chars = characteristics(&words);
    let kept = greedy(&chars);
    let mut chars: Vec<Option<DiffFunction>> = chars.into_iter().map(Some).collect();
    kept.into_iter()
        .map(|i| BasisEntry {
            word: words[i].clone(),
            characteristic: chars[i].take().expect("each index kept once"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_diff;
    use crate::Rational;

    fn d(s: &str) -> DiffFunction {
        parse_diff(s).unwrap()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_of(&[d("U"), d("2U")]), 1);
        assert_eq!(rank_of(&[d("U"), d("Ux"), d("U + Ux")]), 2);
        assert_eq!(rank_of::<Rational>(&[]), 0);
        // Mixed weights fall back to a single block.
        assert_eq!(rank_of(&[d("U + x*U"), d("x*U"), d("U")]), 2);
    }

    #[test]
    fn low_order_counts() {
        for n in 0..=2 {
            let c = independent_count(n, WordMode::Nondecreasing);
            assert!(c.agree, "{c:?}");
        }
        assert_eq!(
            independent_count(1, WordMode::Nondecreasing).enumerated_rank,
            10
        );
        assert_eq!(
            independent_count(2, WordMode::Nondecreasing).enumerated_rank,
            50
        );
    }

    #[test]
    fn basis_order_one() {
        let b = basis(1);
        assert_eq!(b.len(), 10);
        assert_eq!(b[0].word, OperatorWord::identity());
        assert_eq!(b[0].characteristic, d("U"));
        assert_eq!(b[1].word, OperatorWord::new(vec![1]));
        assert_eq!(b[1].characteristic, d("2t*Ux + x*U"));
    }

    #[test]
    fn basis_order_two_spans() {
        let b = basis(2);
        assert_eq!(b.len(), 50);
        let chars: Vec<_> = b.iter().map(|e| e.characteristic.clone()).collect();
        assert_eq!(rank_of(&chars), 50);
        let all = enumerate_words(2, WordMode::Nondecreasing);
        for (w, q) in all.iter().zip(characteristics::<Rational>(&all)) {
            assert!(in_span(&chars, &q), "{w}");
        }
    }

    #[test]
    fn permutation_invariant() {
        let words = enumerate_words(2, WordMode::Nondecreasing);
        let mut chars = characteristics::<Rational>(&words);
        chars.reverse();
        assert_eq!(rank_of(&chars), 50);
        chars.rotate_left(17);
        assert_eq!(rank_of(&chars), 50);
        assert_eq!(rank_mod_p(&chars), 50);
    }
}
