//! Closed-form counts for the symmetry hierarchy.
//!
//! With `S(k) = C(k+8, 8)` nondecreasing words of length exactly `k`, the
//! dependencies among order-`k` words and those linking orders `k-1` and `k`
//! account for the gap between `Σ S(k)` and the rank `N(n)`:
//!
//! ```text
//! N(n) = Σ_{k≤n} S(k) − Σ_{k≤n} same(k) − Σ_{k<n} cross(k)
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`; zero when `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(n+4)(n+3)²(n+2)²(n+1)/144`.
pub fn formula_n(n: u64) -> BigInt {
    let f = |d: u64| BigInt::from(n + d);
    let num = f(4) * f(3) * f(3) * f(2) * f(2) * f(1);
    let q = &num / BigInt::from(144);
    debug_assert!((q.clone() * 144u32) == num);
    q
}

/// Number of nondecreasing words of length exactly `k`.
pub fn words_of_length(k: u64) -> BigInt {
    let k = k as i64;
    binomial(k + 8, 8)
}

/// Dependencies among the order-`k` words.
pub fn deps_same_order(k: u64) -> BigInt {
    let k = k as i64;
    binomial(k + 8, k) - 4 * binomial(k + 6, k) + 4 * binomial(k + 5, k) - binomial(k + 4, k)
}

/// Dependencies linking order `k-1` to order `k`.
pub fn deps_cross_order(k: u64) -> BigInt {
    let k = k as i64;
    4 * binomial(k + 6, k) - 5 * binomial(k + 5, k) + binomial(k + 4, k)
}

/// New dependencies appearing at order `n`: `same(n) + cross(n-1)`.
pub fn dependency_total(n: u64) -> BigInt {
    let cross = if n == 0 {
        BigInt::zero()
    } else {
        deps_cross_order(n - 1)
    };
    deps_same_order(n) + cross
}

/// `N(n)` assembled from word counts and dependency counts rather than the
/// product formula.
pub fn rank_by_subtraction(n: u64) -> BigInt {
    (0..=n)
        .map(|k| {
            words_of_length(k)
                - deps_same_order(k)
                - if k < n {
                    deps_cross_order(k)
                } else {
                    BigInt::zero()
                }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn closed_form_values() {
        let expect = [1, 10, 50, 175, 490, 1176, 2520];
        for (n, e) in expect.into_iter().enumerate() {
            assert_eq!(formula_n(n as u64), b(e), "n={n}");
        }
    }

    #[test]
    fn dependency_values() {
        let same: Vec<_> = (0..=6).map(deps_same_order).collect();
        assert_eq!(same, [0, 0, 2, 18, 89, 321, 945].map(b));
        let cross: Vec<_> = (0..=5).map(deps_cross_order).collect();
        assert_eq!(cross, [0, 3, 22, 91, 280, 714].map(b));
        let totals: Vec<_> = (2..=6).map(dependency_total).collect();
        assert_eq!(totals, [5, 40, 180, 601, 1659].map(b));
    }

    #[test]
    fn subtraction_route_agrees() {
        for n in 0..=12 {
            assert_eq!(rank_by_subtraction(n), formula_n(n), "n={n}");
        }
    }

    #[test]
    fn formula_divisible() {
        for n in 0..200u64 {
            let num: BigInt = [4, 3, 3, 2, 2, 1]
                .iter()
                .map(|d| BigInt::from(n + d))
                .product();
            assert_eq!(&num % 144, BigInt::zero());
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 7), b(0));
        assert_eq!(binomial(-1, 0), b(0));
        assert_eq!(binomial(10, 0), b(1));
        assert_eq!(binomial(13, 5), b(1287));
    }
}
