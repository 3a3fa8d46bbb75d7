use num_traits::Zero;

use segre::k3::{
    b_prime_system, closed_segre, determine_b_prime, determine_b_s1, generalized_binomial, in_vanishing_range,
    recursion_segre,
};
use segre::kernel::{int, ExactRational};

/// Binomial from Pascal's triangle, reflecting negative upper indices with
/// `binom(-n, k) = (-1)^k binom(n + k - 1, k)`.
fn binomial_oracle(n: i64, k: i64) -> i128 {
    if n >= 0 {
        if k > n {
            return 0;
        }
        let mut row = vec![1i128];
        for _ in 0..n {
            let mut next = vec![1i128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row[k as usize]
    } else {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sign * binomial_oracle(-n + k - 1, k)
    }
}

#[test]
fn binomial_matches_pascal_triangle() {
    for n in -12..=20 {
        for k in 0..=8 {
            let expected = ExactRational::from_integer(binomial_oracle(n, k).into());
            assert_eq!(generalized_binomial(n, k).unwrap(), expected, "n={n} k={k}");
        }
    }
}

#[test]
fn k3_values_match_pascal_triangle() {
    for k in 0..=8usize {
        for g in -15..=25i64 {
            let expected = (1i128 << k) * binomial_oracle(g - 2 * k as i64 + 1, k as i64);
            assert_eq!(closed_segre(k, g), ExactRational::from_integer(expected.into()));
        }
    }
}

/// b_2 by hand: with b = (1, 2) and s_{j,g} = (1, 2g - 2), the k = 2 system is
/// s_{2,4} = s_{2,1} + 3 b_2 + 12 = 0 and s_{2,3} = s_{2,1} + 2 b_2 + 4 = 0.
#[test]
fn second_order_by_hand() {
    let seqs = determine_b_s1(2);
    assert_eq!(seqs.b[2], int(-8));
    assert_eq!(seqs.s1[2], int(12));
    assert_eq!(seqs.s1[2], closed_segre(2, 1));
}

#[test]
fn sequences_seeds() {
    let seqs = determine_b_s1(10);
    assert_eq!(seqs.b[..2], [int(1), int(2)]);
    assert_eq!(seqs.s1[..2], [int(1), int(0)]);
    assert_eq!(seqs.b_prime[..2], [int(1), int(2)]);
    assert_eq!(seqs.max_index(), 10);
}

#[test]
fn genus_one_column_is_closed_formula() {
    let seqs = determine_b_s1(12);
    for k in 0..=12 {
        assert_eq!(seqs.s1[k], closed_segre(k, 1), "k={k}");
    }
}

#[test]
fn recursion_equals_closed_formula() {
    let seqs = determine_b_s1(10);
    for k in 0..=10 {
        for g in 1..=30 {
            assert_eq!(recursion_segre(k, g, &seqs).unwrap(), closed_segre(k, g), "k={k} g={g}");
        }
    }
}

#[test]
fn vanishing_exactly_on_range() {
    for k in 0..=12usize {
        for g in -40..=40i64 {
            let n = g - 2 * k as i64 + 1;
            let predicted = n >= 0 && (k as i64) > n;
            assert_eq!(predicted, in_vanishing_range(k, g));
            assert_eq!(closed_segre(k, g).is_zero(), predicted, "k={k} g={g}");
        }
    }
}

fn closed_signed(k: i64, g: i64) -> ExactRational {
    if k < 0 {
        ExactRational::zero()
    } else {
        closed_segre(k as usize, g)
    }
}

#[test]
fn pascal_identity() {
    for k in 0..=12 {
        for g in -40..=40 {
            assert_eq!(
                closed_signed(k - 1, g - 3) * int(2),
                closed_signed(k, g) - closed_signed(k, g - 1),
                "k={k} g={g}"
            );
        }
    }
}

#[test]
fn closed_formula_has_degree_k_in_g() {
    for k in 0..=10usize {
        let mut diffs: Vec<ExactRational> = (-5..=20).map(|g| closed_segre(k, g)).collect();
        for _ in 0..k {
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let leading = ExactRational::from_integer((1i64 << k).into());
        assert!(diffs.iter().all(|d| *d == leading), "k={k}: k-th difference is 2^k");
        let next: Vec<ExactRational> = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        assert!(next.iter().all(Zero::is_zero), "k={k}: (k+1)-th difference vanishes");
    }
}

#[test]
fn b_prime_agrees_with_b() {
    let seqs = determine_b_s1(12);
    assert_eq!(seqs.b_prime, seqs.b);
    assert_eq!(determine_b_prime(12), seqs.b);
}

#[test]
fn b_prime_satisfies_its_identity() {
    let bp = determine_b_prime(8);
    for k in 0..=8usize {
        for g in -10..=10 {
            let rhs: ExactRational = (0..=k).map(|l| &bp[l] * closed_segre(k - l, g - 1)).sum();
            assert_eq!(rhs, closed_segre(k, g), "k={k} g={g}");
        }
    }
}

#[test]
fn b_prime_systems_are_nested() {
    for k in 1..=10 {
        let big = b_prime_system(k);
        assert_eq!(big[0], int(1));
        assert_eq!(big[..k], b_prime_system(k - 1)[..]);
    }
}
