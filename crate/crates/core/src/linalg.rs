//! Exact matrix rank: fraction-free elimination over the integers, and plain
//! elimination over a prime field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Rank over the rationals by Bareiss elimination; every division is exact.
pub fn rank_bareiss(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            for j in c + 1..ncols {
                row[j] = (&pivot_row[c] * &row[j] - &row[c] * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    rank
}

/// Rank over `Z/pZ`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for j in c..ncols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                row[j] = (row[j] + p - f * pivot_row[j] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_bareiss(&[]), 0);
        assert_eq!(rank_bareiss(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_bareiss(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_bareiss(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]), 3);
        assert_eq!(rank_bareiss(&[vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]), 2);
    }

    #[test]
    fn characteristic_two_differs() {
        // det = 2: full rank over Q, rank 2 over GF(2)
        let m = [vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert_eq!(rank_mod_p(&m, 2), 2);
        assert_eq!(rank_mod_p(&m, DEFAULT_PRIME), 3);
    }

    /// Rank via the largest non-vanishing minor, for tiny matrices.
    fn rank_by_minors(m: &[Vec<i64>]) -> usize {
        use itertools::Itertools;
        fn det(m: &[Vec<i64>]) -> i128 {
            if m.is_empty() {
                return 1;
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] as i128 * det(&minor)
                })
                .sum()
        }
        let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
        (1..=r.min(c))
            .rev()
            .find(|&k| {
                (0..r).combinations(k).any(|rows| {
                    (0..c).combinations(k).any(|cols| {
                        let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                        det(&sub) != 0
                    })
                })
            })
            .unwrap_or(0)
    }

    proptest! {
        #[test]
        fn bareiss_matches_minors(m in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 0..5)) {
            let expected = rank_by_minors(&m);
            prop_assert_eq!(rank_bareiss(&m), expected);
            prop_assert_eq!(rank_mod_p(&m, DEFAULT_PRIME), expected);
        }
    }
}
