//! Exact linear algebra: fraction-free determinants, exact linear solves
//! and greedy selection of independent columns or rows.

use num_traits::{One, Zero};

use crate::arith::{Int, Rat};
use crate::error::Error;
use crate::matrix::{IntMatrix, RatMatrix};

/// Determinant of a square integer matrix via fraction-free (Bareiss)
/// elimination. Intermediate values stay integral by construction.
pub fn det(m: &IntMatrix) -> Int {
    assert!(m.is_square(), "determinant needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut w: Vec<Vec<Int>> =
        (0..n).map(|r| (0..n).map(|c| m[(r, c)].clone()).collect()).collect();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if w[k][k].is_zero() {
            match (k + 1..n).find(|&r| !w[r][k].is_zero()) {
                Some(r) => {
                    w.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                w[i][j] = num / &prev;
            }
            w[i][k] = Int::zero();
        }
        prev = w[k][k].clone();
    }
    let d = w[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Solves `B X = C` exactly for a nonsingular square `B`.
///
/// Uses fraction-free forward elimination on the augmented matrix followed
/// by rational back substitution, so every intermediate value is exact.
/// Each denominator in the result divides `det(B)`.
pub fn solve_exact(b: &IntMatrix, c: &IntMatrix) -> Result<RatMatrix, Error> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "solve needs a square system, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if b.rows() != c.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system is {}x{} but right-hand side has {} rows",
            b.rows(),
            b.cols(),
            c.rows()
        )));
    }
    let n = b.rows();
    let m = c.cols();
    if n == 0 {
        return Ok(RatMatrix::zero(0, m));
    }
    let width = n + m;
    let mut w: Vec<Vec<Int>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|j| b[(r, j)].clone())
                .chain((0..m).map(|j| c[(r, j)].clone()))
                .collect()
        })
        .collect();
    let mut prev = Int::one();
    for k in 0..n {
        if w[k][k].is_zero() {
            match (k + 1..n).find(|&r| !w[r][k].is_zero()) {
                Some(r) => w.swap(k, r),
                None => return Err(Error::SingularMatrix),
            }
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                w[i][j] = num / &prev;
            }
            w[i][k] = Int::zero();
        }
        prev = w[k][k].clone();
    }
    let mut x = RatMatrix::zero(n, m);
    for t in 0..m {
        for i in (0..n).rev() {
            let mut acc = Rat::from_integer(w[i][n + t].clone());
            for j in i + 1..n {
                if !w[i][j].is_zero() {
                    acc -= Rat::from_integer(w[i][j].clone()) * &x[(j, t)];
                }
            }
            x[(i, t)] = acc / Rat::from_integer(w[i][i].clone());
        }
    }
    Ok(x)
}

/// Solves `B x = c` exactly for a single right-hand side.
pub fn solve_column(b: &IntMatrix, c: &[Int]) -> Result<Vec<Rat>, Error> {
    let rhs = IntMatrix::from_cols(c.len(), vec![c.to_vec()]);
    Ok(solve_exact(b, &rhs)?.col_vec(0))
}

/// Indices of a maximal set of linearly independent columns, scanning left
/// to right so the first column of every dependent group is kept.
pub fn find_independent_columns(a: &IntMatrix) -> Vec<usize> {
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut keep = Vec::new();
    for j in 0..a.cols() {
        let mut v: Vec<Rat> =
            a.col(j).iter().map(|x| Rat::from_integer(x.clone())).collect();
        for (e, &p) in echelon.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= &f * ei;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let lead = v[p].clone();
            for vi in v.iter_mut() {
                *vi /= &lead;
            }
            echelon.push(v);
            pivots.push(p);
            keep.push(j);
            if keep.len() == a.rows() {
                break;
            }
        }
    }
    keep
}

/// Indices of a maximal set of linearly independent rows, scanning top down.
pub fn find_independent_rows(a: &IntMatrix) -> Vec<usize> {
    find_independent_columns(&a.transpose())
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    find_independent_columns(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn det_small_cases() {
        let m = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 3]]);
        assert_eq!(det(&m), int(15));
        let m = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 5]]);
        assert_eq!(det(&m), int(27));
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(det(&m), int(0));
        assert_eq!(det(&IntMatrix::identity(4)), int(1));
        assert_eq!(det(&IntMatrix::zero(0, 0)), int(1));
    }

    #[test]
    fn det_needs_pivot_swap() {
        let m = IntMatrix::from_i64_rows(&[&[0, 2], &[3, 1]]);
        assert_eq!(det(&m), int(-6));
        let m = IntMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(det(&m), int(-6));
    }

    #[test]
    fn solve_known_system() {
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 5]]);
        let x = solve_column(&b, &[int(2), int(4)]).unwrap();
        assert_eq!(x, vec![rat(2, 9), rat(2, 3)]);
    }

    #[test]
    fn solve_rejects_singular() {
        let b = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let c = IntMatrix::identity(2);
        assert_eq!(solve_exact(&b, &c), Err(Error::SingularMatrix));
    }

    #[test]
    fn solve_empty_rhs() {
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 5]]);
        let x = solve_exact(&b, &IntMatrix::zero(2, 0)).unwrap();
        assert_eq!(x.cols(), 0);
        assert_eq!(x.rows(), 2);
    }

    #[test]
    fn independent_columns_prefers_left() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 0, 1], &[2, 4, 1, 0]]);
        assert_eq!(find_independent_columns(&a), vec![0, 2]);
        let a = IntMatrix::from_i64_rows(&[&[0, 0], &[0, 0]]);
        assert!(find_independent_columns(&a).is_empty());
        let a = IntMatrix::from_i64_rows(&[&[2, 4], &[1, 2], &[3, 6]]);
        assert_eq!(find_independent_columns(&a), vec![0]);
        assert_eq!(find_independent_rows(&a), vec![0]);
        assert_eq!(rank(&a), 1);
    }

    fn arb_matrix(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-bound..=bound, n * n).prop_map(move |vals| {
            IntMatrix::from_rows(
                vals.chunks(n).map(|row| row.iter().map(|&v| Int::from(v)).collect()).collect(),
            )
        })
    }

    proptest! {
        // Laplace expansion along the first row must agree with Bareiss.
        #[test]
        fn det_matches_cofactor_expansion(m in arb_matrix(3, 8)) {
            let mut acc = Int::zero();
            for c in 0..3 {
                let minor_cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
                let minor = m.select_rows(&[1, 2]).select_columns(&minor_cols);
                let term = &m[(0, c)] * det(&minor);
                if c % 2 == 0 { acc += term } else { acc -= term }
            }
            prop_assert_eq!(det(&m), acc);
        }

        #[test]
        fn solve_reconstructs_rhs(m in arb_matrix(4, 10), rhs in proptest::collection::vec(-10i64..=10, 4)) {
            prop_assume!(!det(&m).is_zero());
            let c: Vec<Int> = rhs.into_iter().map(Int::from).collect();
            let x = solve_column(&m, &c).unwrap();
            let back = m.mul_rat_vec(&x);
            for (bi, ci) in back.iter().zip(&c) {
                prop_assert_eq!(bi.clone(), Rat::from_integer(ci.clone()));
            }
            // Denominators divide the determinant.
            let d = det(&m);
            for xi in &x {
                prop_assert!((&d % xi.denom()).is_zero());
            }
        }

        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix(4, 3)) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }
    }
}
