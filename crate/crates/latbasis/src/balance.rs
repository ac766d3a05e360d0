//! Size reduction of the computed basis by greedy vector balancing.
//!
//! Each coefficient column is rounded entrywise to 0 or 1; subtracting the
//! rounding from the column keeps the spanned lattice intact while the
//! greedy choice keeps every partial sum short. Rounding is restricted to
//! the rows at or below the column's pivot so the triangular shape and the
//! diagonal survive.

use num_traits::{One, Zero};

use crate::arith::{rat, Int, Rat};
use crate::error::Error;
use crate::fast::scaled_product;
use crate::matrix::{IntMatrix, RatMatrix};

/// Rounding picked for one coefficient column, with the squared norms of
/// the partial sums the greedy walk produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceChoice {
    /// `true` means the coordinate rounds to 1, `false` to 0.
    pub rounding: Vec<bool>,
    /// Squared norm of the balanced partial sum after each step.
    pub partial_norm_sq: Vec<Rat>,
}

fn norm_sq(v: &[Rat]) -> Rat {
    v.iter().map(|q| q * q).sum()
}

/// Greedily rounds the fractional combination `y` of the columns of `b`
/// so the combination `b * (y - rounding)` stays short. Requires every
/// entry of `y` to lie in `[0, 1]`; ties prefer rounding down.
pub fn balance_column(b: &IntMatrix, y: &[Rat]) -> BalanceChoice {
    assert_eq!(b.cols(), y.len(), "one coefficient per column");
    assert!(
        y.iter().all(|q| *q >= Rat::zero() && *q <= Rat::one()),
        "coefficients must lie in [0, 1]"
    );
    let d = b.rows();
    let mut walk = vec![Rat::zero(); d];
    let mut rounding = Vec::with_capacity(y.len());
    let mut partial_norm_sq = Vec::with_capacity(y.len());
    for (j, yj) in y.iter().enumerate() {
        let col = b.col(j);
        let down: Vec<Rat> = walk
            .iter()
            .zip(col)
            .map(|(w, v)| w + yj * Rat::from_integer(v.clone()))
            .collect();
        let up: Vec<Rat> = walk
            .iter()
            .zip(col)
            .map(|(w, v)| w + (yj - Rat::one()) * Rat::from_integer(v.clone()))
            .collect();
        let norm_down = norm_sq(&down);
        let norm_up = norm_sq(&up);
        if norm_up < norm_down {
            rounding.push(true);
            partial_norm_sq.push(norm_up);
            walk = up;
        } else {
            rounding.push(false);
            partial_norm_sq.push(norm_down);
            walk = down;
        }
    }
    BalanceChoice { rounding, partial_norm_sq }
}

/// Worst-case squared norm the greedy walk guarantees for coefficients in
/// `[0, 1]` over the columns of `b`: a quarter of `cols` times the largest
/// squared column norm, but never less than the largest squared column
/// norm itself (short columns pass through unrounded).
pub fn reduction_bound_sq(b: &IntMatrix) -> Rat {
    let max_col: Int = (0..b.cols()).map(|c| b.col_norm_sq(c)).max().unwrap_or_default();
    let max_col = Rat::from_integer(max_col);
    let factor = rat(b.cols() as i64, 4);
    if factor < Rat::one() {
        max_col
    } else {
        factor * max_col
    }
}

/// Applies greedy balancing to every coefficient column, preserving the
/// lattice, the triangular structure and the diagonal. Returns the
/// reduced basis `b * y'`.
///
/// `y` must come from a basis run: square, lower triangular once its rows
/// are reordered by `pivot_order`, entries in `[0, 1]`, and each diagonal
/// entry either 1 or at most 1/2.
pub fn reduce_basis(
    b: &IntMatrix,
    y: &RatMatrix,
    pivot_order: &[usize],
) -> Result<IntMatrix, Error> {
    let dh = y.cols();
    if y.rows() != dh || b.cols() != dh || pivot_order.len() != dh {
        return Err(Error::DimensionMismatch(
            "coefficient matrix must be square and match the basis columns".into(),
        ));
    }
    let mut reduced = y.clone();
    for i in 0..dh {
        let pivot = pivot_order[i];
        let diag = y[(pivot, i)].clone();
        if diag == Rat::one() {
            // Unit diagonal: the plain basis column is already as short
            // as this column can get, and it keeps the determinant.
            for r in 0..dh {
                reduced[(r, i)] =
                    if r == pivot { Rat::one() } else { Rat::zero() };
            }
            continue;
        }
        if diag > rat(1, 2) {
            return Err(Error::InvariantViolation(
                "diagonal coefficient must be 1 or at most 1/2".into(),
            ));
        }
        // Only the pivot row and the rows still below it may round, which
        // keeps the triangular shape; the diagonal itself never rounds
        // because rounding it to 1 could only lengthen the first step.
        let support = &pivot_order[i..];
        let sub_b = b.select_columns(support);
        let sub_y: Vec<Rat> = support.iter().map(|&r| y[(r, i)].clone()).collect();
        let choice = balance_column(&sub_b, &sub_y);
        if choice.rounding[0] {
            return Err(Error::InvariantViolation(
                "diagonal coefficient must not round".into(),
            ));
        }
        for (pos, &r) in support.iter().enumerate() {
            if choice.rounding[pos] {
                let v = &reduced[(r, i)] - Rat::one();
                reduced[(r, i)] = v;
            }
        }
    }
    scaled_product(b, &reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fast::fast_basis;
    use crate::linalg::det;
    use crate::matrix::naive_matmul;
    use crate::oracles::is_basis_of;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn balancing_one_column_against_orthogonal_basis() {
        let b = IntMatrix::from_i64_rows(&[&[10, 0], &[0, 10]]);
        // Large coefficients round up, small ones down.
        let choice = balance_column(&b, &[rat(9, 10), rat(1, 10)]);
        assert_eq!(choice.rounding, vec![true, false]);
        // 0 and 1 stay exact either way; ties prefer down.
        let choice = balance_column(&b, &[rat(1, 2), rat(0, 1)]);
        assert_eq!(choice.rounding, vec![false, false]);
    }

    #[test]
    fn partial_sums_respect_the_greedy_bound() {
        let b = IntMatrix::from_i64_rows(&[&[3, -1, 2], &[1, 4, -2], &[0, 2, 5]]);
        let y = [rat(1, 3), rat(5, 7), rat(1, 2)];
        let choice = balance_column(&b, &y);
        // Running bound: sum of y_j (1 - y_j) |b_j|^2 over prefixes.
        let mut bound = Rat::zero();
        for (j, yj) in y.iter().enumerate() {
            bound += yj * (Rat::one() - yj) * Rat::from_integer(b.col_norm_sq(j));
            assert!(choice.partial_norm_sq[j] <= bound, "prefix {j} exceeds bound");
        }
    }

    #[test]
    fn greedy_never_beats_brute_force_but_meets_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let d = rng.gen_range(1..=5);
            let cols: Vec<Vec<Int>> = (0..d)
                .map(|_| (0..d).map(|_| Int::from(rng.gen_range(-6i64..=6))).collect())
                .collect();
            let b = IntMatrix::from_cols(d, cols);
            let y: Vec<Rat> =
                (0..d).map(|_| rat(rng.gen_range(0..=8), 8)).collect();
            let choice = balance_column(&b, &y);
            let greedy = choice.partial_norm_sq.last().unwrap().clone();

            // Exhaustive search over all roundings.
            let mut best = None;
            for mask in 0..(1u32 << d) {
                let combo: Vec<Rat> = y
                    .iter()
                    .enumerate()
                    .map(|(j, yj)| {
                        if mask >> j & 1 == 1 { yj - Rat::one() } else { yj.clone() }
                    })
                    .collect();
                let n = norm_sq(&b.mul_rat_vec(&combo));
                if best.as_ref().is_none_or(|cur| n < *cur) {
                    best = Some(n);
                }
            }
            let best = best.unwrap();
            assert!(best <= greedy);
            assert!(greedy <= reduction_bound_sq(&b));
        }
    }

    #[test]
    fn reduction_keeps_lattice_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let d = rng.gen_range(1..=4);
            let n = d + rng.gen_range(0..=3);
            let a = loop {
                let rows: Vec<Vec<Int>> = (0..d)
                    .map(|_| (0..n).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect())
                    .collect();
                let m = IntMatrix::from_rows(rows);
                if crate::linalg::rank(&m) == d {
                    break m;
                }
            };
            let result = fast_basis(&a).unwrap();
            let reduced =
                reduce_basis(&result.initial, &result.coefficients, &result.pivot_order)
                    .unwrap();
            assert_eq!(det(&reduced).abs(), det(&result.basis).abs());
            assert!(is_basis_of(&reduced, &a).unwrap().pass);
            let bound = reduction_bound_sq(&result.initial);
            for c in 0..reduced.cols() {
                assert!(Rat::from_integer(reduced.col_norm_sq(c)) <= bound);
            }
        }
    }

    #[test]
    fn reduction_of_identity_coefficients_is_identity() {
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 5]]);
        let y = RatMatrix::identity(2);
        let s = reduce_basis(&b, &y, &[0, 1]).unwrap();
        assert_eq!(s, b);
        let via_product = naive_matmul(&b, &IntMatrix::identity(2)).unwrap();
        assert_eq!(s, via_product);
    }

    #[test]
    fn rejects_out_of_range_diagonal() {
        let b = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let mut y = RatMatrix::identity(2);
        y[(0, 0)] = rat(3, 4);
        assert!(matches!(
            reduce_basis(&b, &y, &[0, 1]),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn known_instance_reduction() {
        let a = IntMatrix::from_i64_rows(&[&[6, 1, 2, 4], &[3, 5, 4, 4]]);
        let result = fast_basis(&a).unwrap();
        let reduced =
            reduce_basis(&result.initial, &result.coefficients, &result.pivot_order).unwrap();
        assert_eq!(det(&reduced).abs(), Int::one());
        assert!(is_basis_of(&reduced, &a).unwrap().pass);
    }
}
