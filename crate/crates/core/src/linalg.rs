//! Exact sparse linear algebra: incremental fraction-free row echelon form
//! for rank and span membership, and a small dense solver for expressing a
//! vector in a given basis.
//!
//! Rows are sparse vectors sorted by column key. The pivot of a row is its
//! first nonzero entry in key order, so elimination is fully deterministic.
//! Reduction cross-multiplies (`a·v − b·p`) instead of dividing and then
//! rescales the result to its primitive representative, which keeps
//! rational entries integral.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseRow<K, C> = Vec<(K, C)>;

/// Builds a sorted sparse row, merging duplicate keys and dropping zeros.
pub fn sparse_row<K: Ord + Clone, C: Scalar>(
    entries: impl IntoIterator<Item = (K, C)>,
) -> SparseRow<K, C> {
    let mut map: BTreeMap<K, C> = BTreeMap::new();
    for (k, c) in entries {
        let e = map.entry(k).or_insert_with(C::zero);
        *e = e.clone() + c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `a·v − b·p` for sorted sparse rows.
fn cross_combine<K: Ord + Clone, C: Scalar>(
    a: &C,
    v: &[(K, C)],
    b: &C,
    p: &[(K, C)],
) -> SparseRow<K, C> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take = match (v.get(i), p.get(j)) {
            (Some((kv, _)), Some((kp, _))) => kv.cmp(kp),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((v[i].0.clone(), a.clone() * v[i].1.clone()));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((p[j].0.clone(), -(b.clone() * p[j].1.clone())));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a.clone() * v[i].1.clone() - b.clone() * p[j].1.clone();
                if !c.is_zero() {
                    out.push((v[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon<K, C> {
    pivots: BTreeMap<K, SparseRow<K, C>>,
}

impl<K: Ord + Clone, C: Scalar> Default for Echelon<K, C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, C: Scalar> Echelon<K, C> {
    pub fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading entries until the leading column has no pivot.
    /// The result is empty iff `row` lies in the span.
    pub fn reduce(&self, mut row: SparseRow<K, C>) -> SparseRow<K, C> {
        C::make_primitive(&mut row);
        while let Some((lead_key, lead)) = row.first() {
            let Some(p) = self.pivots.get(lead_key) else {
                break;
            };
            let lead = lead.clone();
            row = cross_combine(&p[0].1, &row, &lead, p);
            C::make_primitive(&mut row);
        }
        row
    }

    pub fn contains(&self, row: SparseRow<K, C>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row`; returns whether the rank increased.
    pub fn insert(&mut self, row: SparseRow<K, C>) -> bool {
        let r = self.reduce(row);
        match r.first() {
            Some((k, _)) => {
                let k = k.clone();
                self.pivots.insert(k, r);
                true
            }
            None => false,
        }
    }

    /// Pivot rows in column order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow<K, C>> + '_ {
        self.pivots.values()
    }
}

/// Rank of a family of sparse rows.
pub fn rank<K: Ord + Clone, C: Scalar>(rows: impl IntoIterator<Item = SparseRow<K, C>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Finds `c` with `Σ c_i · basis[i] = target`, if one exists. When the basis
/// is dependent the free coefficients are set to zero.
pub fn solve_combination<K: Ord + Clone, C: Scalar>(
    basis: &[SparseRow<K, C>],
    target: &[(K, C)],
) -> Option<Vec<C>> {
    let mut keys: Vec<K> = basis
        .iter()
        .flat_map(|r| r.iter().map(|(k, _)| k.clone()))
        .chain(target.iter().map(|(k, _)| k.clone()))
        .collect();
    keys.sort();
    keys.dedup();
    let n = basis.len();
    let index = |k: &K| keys.binary_search(k).expect("key collected");

    // One equation per key; columns are the unknowns plus the right-hand side.
    let mut m = vec![vec![C::zero(); n + 1]; keys.len()];
    for (col, row) in basis.iter().enumerate() {
        for (k, c) in row {
            m[index(k)][col] = c.clone();
        }
    }
    for (k, c) in target {
        m[index(k)][n] = c.clone();
    }

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = C::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let (pivot, row) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut sol = vec![C::zero(); n];
    for (i, &col) in pivot_cols.iter().enumerate() {
        sol[col] = m[i][n].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Fp, Rational};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn row(v: &[i64]) -> SparseRow<usize, Rational> {
        sparse_row(v.iter().enumerate().map(|(i, &x)| (i, q(x))))
    }

    /// Rank by exhaustive minors would be too slow; plain dense Gauss with
    /// division is an independent route.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != q(0)) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && m[i][c] != q(0) {
                    let f = &m[i][c] / &m[rank][c];
                    let pivot = m[rank].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot) {
                        *x = &*x - &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn collinear_rows() {
        assert_eq!(rank([row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank([row(&[1, 2]), row(&[0, 4]), row(&[3, 3])]), 2);
        assert_eq!(rank(Vec::<SparseRow<usize, Rational>>::new()), 0);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(row(&[1, 0, 1]));
        e.insert(row(&[0, 1, 1]));
        assert!(e.contains(row(&[2, -3, -1])));
        assert!(!e.contains(row(&[0, 0, 1])));
    }

    #[test]
    fn solve_small() {
        let basis = vec![row(&[1, 0, 1]), row(&[0, 1, 1])];
        let sol = solve_combination(&basis, &row(&[2, -3, -1])).unwrap();
        assert_eq!(sol, vec![q(2), q(-3)]);
        assert!(solve_combination(&basis, &row(&[0, 0, 1])).is_none());
        assert_eq!(solve_combination(&basis, &[]).unwrap(), vec![q(0), q(0)]);
    }

    proptest! {
        #[test]
        fn matches_dense_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 0..7)) {
            let sparse: Vec<_> = rows.iter().map(|r| row(r)).collect();
            prop_assert_eq!(rank(sparse.clone()), dense_rank(&rows));
            let mut rev = sparse.clone();
            rev.reverse();
            prop_assert_eq!(rank(rev), dense_rank(&rows));
            let modp = sparse.iter().map(|r| r.iter().map(|(k, c)| {
                let n: i64 = c.to_integer().try_into().unwrap();
                (*k, Fp::from_i64(n))
            }).collect::<Vec<_>>());
            prop_assert_eq!(rank(modp), dense_rank(&rows));
        }
    }
}
