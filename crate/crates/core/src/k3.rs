//! K3 Segre numbers `s_{k,g}` (polarization of square `2g - 2`).
//!
//! Two constructions live here. [`closed_segre`] is the closed formula. The
//! recursion route rebuilds the same numbers from the splitting
//! `s_{k,g} = sum_l b_l s_{k-l,g-1}` (a K3 of genus `g - 1` plus a principally
//! polarized abelian surface), with `b_l` and `s_{l,1}` fixed by the two
//! vanishings `s_{k,2k} = s_{k,2k-1} = 0` for `k >= 2`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{int, ExactRational};

/// `n (n-1) ... (n-k+1) / k!` for any integer `n`.
pub fn generalized_binomial(n: i64, k: i64) -> Result<ExactRational> {
    if k < 0 {
        return Err(Error::NegativeBinomialIndex(k));
    }
    let mut acc = ExactRational::one();
    for i in 0..k {
        acc = acc * int(n - i) / int(i + 1);
    }
    Ok(acc)
}

/// `2^k binom(g - 2k + 1, k)`, valid for every integer `g`.
pub fn closed_segre(k: usize, g: i64) -> ExactRational {
    let k = k as i64;
    let binom = generalized_binomial(g - 2 * k + 1, k).expect("k is non-negative");
    binom * pow2(k as u32)
}

fn pow2(k: u32) -> ExactRational {
    let mut p = ExactRational::one();
    for _ in 0..k {
        p = p * int(2);
    }
    p
}

/// Whether the closed formula predicts `s_{k,g} = 0`, i.e. `2k - 1 <= g <= 3k - 2`.
pub fn in_vanishing_range(k: usize, g: i64) -> bool {
    let n = g - 2 * k as i64 + 1;
    n >= 0 && (k as i64) > n
}

/// The sequences driving the recursion route, all indexed `0..=K`.
#[derive(Clone, Debug, PartialEq)]
pub struct BSequences {
    /// Abelian numbers `b_l` (principal polarization).
    pub b: Vec<ExactRational>,
    /// The genus-one column `s_{l,1}`.
    pub s1: Vec<ExactRational>,
    /// Interpolated `b'_l` from the closed formula; equal to `b` by uniqueness.
    pub b_prime: Vec<ExactRational>,
}

impl BSequences {
    /// Largest index filled in every sequence.
    pub fn max_index(&self) -> usize {
        self.b.len().min(self.s1.len()) - 1
    }
}

/// Determines `b_0..b_K` and `s_{0,1}..s_{K,1}` from the seeds and the vanishings.
///
/// For each `k >= 2`, the lower table `s_{j,g}` (`j < k`) is known, and
/// telescoping the recursion from `g = 1` gives
/// `s_{k,G} = s_{k,1} + (G - 1) b_k + M_G` with `M_G` a known constant.
/// Imposing `s_{k,2k} = s_{k,2k-1} = 0` yields `b_k = -(M_{2k} - M_{2k-1})`
/// and then `s_{k,1}`.
pub fn determine_b_s1(max_k: usize) -> BSequences {
    let mut b = vec![int(1), int(2)];
    let mut s1 = vec![int(1), int(0)];
    for k in 2..=max_k {
        // columns[g - 1][j] = s_{j,g} for j < k
        let top_g = 2 * k - 1;
        let mut columns: Vec<Vec<ExactRational>> = Vec::with_capacity(top_g);
        columns.push(s1[..k].to_vec());
        for _ in 2..=top_g {
            let next = convolve(&b, columns.last().unwrap(), k - 1);
            columns.push(next);
        }
        // m_g: contribution of b_1..b_{k-1} to s_{k,g}, needs column g - 1
        let m = |g: usize| -> ExactRational {
            let col = &columns[g - 2];
            (1..k).map(|l| &b[l] * &col[k - l]).sum()
        };
        let m_top = m(2 * k);
        let telescoped: ExactRational = (2..=2 * k - 1).map(m).sum();
        let b_k = -m_top;
        let s_k1 = -telescoped - &b_k * int(2 * k as i64 - 2);
        b.push(b_k);
        s1.push(s_k1);
    }
    b.truncate(max_k + 1);
    s1.truncate(max_k + 1);
    BSequences {
        b,
        s1,
        b_prime: determine_b_prime(max_k),
    }
}

/// `sum_l b_l col_{j-l}` for `j = 0..=top`.
fn convolve(b: &[ExactRational], col: &[ExactRational], top: usize) -> Vec<ExactRational> {
    (0..=top)
        .map(|j| (0..=j).map(|l| &b[l] * &col[j - l]).sum())
        .collect()
}

/// `s_{k,g}` for `g >= 1` by running the recursion up from the genus-one column.
pub fn recursion_segre(k: usize, g: i64, seqs: &BSequences) -> Result<ExactRational> {
    if g < 1 {
        return Err(Error::GenusBelowOne(g));
    }
    let available = seqs.max_index();
    if k > available {
        return Err(Error::BSequenceTooShort {
            needed: k,
            available,
        });
    }
    let mut col = seqs.s1[..=k].to_vec();
    for _ in 1..g {
        col = convolve(&seqs.b, &col, k);
    }
    Ok(col.swap_remove(k))
}

/// Every `s_{k,g}` with `k <= max_k` and `1 <= g <= max_g` from one upward
/// sweep of the recursion; `table[g - 1][k] = s_{k,g}`.
pub fn recursion_table(max_k: usize, max_g: usize, seqs: &BSequences) -> Result<Vec<Vec<ExactRational>>> {
    let available = seqs.max_index();
    if max_k > available {
        return Err(Error::BSequenceTooShort {
            needed: max_k,
            available,
        });
    }
    let mut table = Vec::with_capacity(max_g);
    if max_g == 0 {
        return Ok(table);
    }
    table.push(seqs.s1[..=max_k].to_vec());
    for _ in 1..max_g {
        let next = convolve(&seqs.b, table.last().unwrap(), max_k);
        table.push(next);
    }
    Ok(table)
}

/// Interpolated coefficients `b'_{0,k} .. b'_{k,k}` with
/// `s'_{k,g} = sum_l b'_{l,k} s'_{k-l,g-1}` as a polynomial identity in `g`.
///
/// Both sides have degree `k` in `g`, so evaluating at `g = 1..=k+1` and
/// solving the resulting square system pins the coefficients down.
pub fn b_prime_system(k: usize) -> Vec<ExactRational> {
    let rows: Vec<Vec<ExactRational>> = (1..=k as i64 + 1)
        .map(|g| {
            let mut row: Vec<ExactRational> =
                (0..=k).map(|l| closed_segre(k - l, g - 1)).collect();
            row.push(closed_segre(k, g));
            row
        })
        .collect();
    solve_augmented(rows)
}

/// `b'_0..b'_K`, taking `b'_k` from the size-`k` system. Lower entries are
/// stable across system sizes, so this agrees with every larger system.
pub fn determine_b_prime(max_k: usize) -> Vec<ExactRational> {
    (0..=max_k)
        .map(|k| b_prime_system(k).swap_remove(k))
        .collect()
}

/// Gauss-Jordan elimination on a nonsingular augmented system.
fn solve_augmented(mut rows: Vec<Vec<ExactRational>>) -> Vec<ExactRational> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .expect("interpolation system is nonsingular");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
    }
    rows.into_iter().map(|mut r| r.swap_remove(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        for n in [-5, 0, 3, 17] {
            assert_eq!(generalized_binomial(n, 0).unwrap(), int(1));
        }
        assert_eq!(generalized_binomial(4, 2).unwrap(), int(6));
        assert_eq!(generalized_binomial(-2, 2).unwrap(), int(3));
        assert_eq!(generalized_binomial(3, 5).unwrap(), int(0));
    }

    #[test]
    fn binomial_negative_lower_index() {
        assert_eq!(
            generalized_binomial(4, -1).unwrap_err(),
            Error::NegativeBinomialIndex(-1)
        );
    }

    #[test]
    fn closed_segre_examples() {
        for g in -6..=12 {
            assert_eq!(closed_segre(1, g), int(2 * g - 2));
        }
        assert_eq!(closed_segre(2, 3), int(0));
        assert_eq!(closed_segre(2, 7), int(24));
        assert_eq!(closed_segre(2, 1), int(12));
    }

    #[test]
    fn b_and_s1_seeds_and_order_two() {
        let seqs = determine_b_s1(1);
        assert_eq!(seqs.b, vec![int(1), int(2)]);
        assert_eq!(seqs.s1, vec![int(1), int(0)]);
        let seqs = determine_b_s1(2);
        assert_eq!(seqs.b[2], int(-8));
        assert_eq!(seqs.s1[2], int(12));
    }

    #[test]
    fn determine_at_zero() {
        let seqs = determine_b_s1(0);
        assert_eq!(seqs.b, vec![int(1)]);
        assert_eq!(seqs.s1, vec![int(1)]);
        assert_eq!(seqs.b_prime, vec![int(1)]);
    }

    #[test]
    fn recursion_examples() {
        let seqs = determine_b_s1(4);
        for g in 1..10 {
            assert_eq!(recursion_segre(1, g, &seqs).unwrap(), int(2 * g - 2));
        }
        assert_eq!(recursion_segre(2, 4, &seqs).unwrap(), int(0));
        assert_eq!(recursion_segre(2, 7, &seqs).unwrap(), int(24));
    }

    #[test]
    fn table_matches_pointwise_recursion() {
        let seqs = determine_b_s1(5);
        let table = recursion_table(5, 12, &seqs).unwrap();
        assert_eq!(table.len(), 12);
        for (g, row) in table.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(*v, recursion_segre(k, g as i64 + 1, &seqs).unwrap());
            }
        }
        assert!(recursion_table(6, 3, &seqs).is_err());
    }

    #[test]
    fn recursion_errors() {
        let seqs = determine_b_s1(3);
        assert_eq!(
            recursion_segre(4, 2, &seqs).unwrap_err(),
            Error::BSequenceTooShort {
                needed: 4,
                available: 3
            }
        );
        assert_eq!(
            recursion_segre(1, 0, &seqs).unwrap_err(),
            Error::GenusBelowOne(0)
        );
    }

    #[test]
    fn b_prime_examples() {
        let bp = determine_b_prime(3);
        assert_eq!(bp[0], int(1));
        assert_eq!(bp[1], int(2));
        assert_eq!(bp[2], int(-8));
    }

    #[test]
    fn b_prime_is_stable_across_system_sizes() {
        for k in 1..=8 {
            let big = b_prime_system(k);
            let small = b_prime_system(k - 1);
            assert_eq!(big[..k], small[..], "size {k}");
        }
    }

    #[test]
    fn vanishing_range_matches_formula() {
        assert!(in_vanishing_range(2, 3));
        assert!(in_vanishing_range(2, 4));
        assert!(!in_vanishing_range(2, 5));
        assert!(!in_vanishing_range(2, 2));
    }
}
