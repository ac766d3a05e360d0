//! Large-integer matrix multiplication by digit expansion.
//!
//! The left factor fixes a power of two X just above its largest entry;
//! the right factor is rewritten column by column in base X. Multiplying
//! the digit columns in blocks and recombining with shifts keeps every
//! intermediate small while the result is assembled exactly.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Int;
use crate::error::Error;
use crate::matrix::{naive_matmul, IntMatrix};

/// Multiplies a square `m` by `n` through base-X digit expansion.
///
/// `k` controls the block width `a^k` used when grouping digit columns
/// (`a` being the dimension of `m`); any `k >= 1` yields the same product.
pub fn xadic_matmul(m: &IntMatrix, n: &IntMatrix, k: u32) -> Result<IntMatrix, Error> {
    assert!(k >= 1, "block exponent must be at least 1");
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "left factor must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.cols() != n.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            m.rows(),
            m.cols(),
            n.rows(),
            n.cols()
        )));
    }
    let (mp, mm) = sign_split(m);
    let (np, nm) = sign_split(n);
    let mut out = nonneg_product(&mp, &np, k);
    sub_assign(&mut out, &nonneg_product(&mp, &nm, k));
    sub_assign(&mut out, &nonneg_product(&mm, &np, k));
    add_assign(&mut out, &nonneg_product(&mm, &nm, k));
    Ok(out)
}

/// Splits into the positive and negated-negative parts: `m = pos - neg`.
fn sign_split(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut pos = IntMatrix::zero(m.rows(), m.cols());
    let mut neg = IntMatrix::zero(m.rows(), m.cols());
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let v = &m[(r, c)];
            if v.is_positive() {
                pos[(r, c)] = v.clone();
            } else if v.is_negative() {
                neg[(r, c)] = -v;
            }
        }
    }
    (pos, neg)
}

fn add_assign(m: &mut IntMatrix, other: &IntMatrix) {
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let v = &m[(r, c)] + &other[(r, c)];
            m[(r, c)] = v;
        }
    }
}

fn sub_assign(m: &mut IntMatrix, other: &IntMatrix) {
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let v = &m[(r, c)] - &other[(r, c)];
            m[(r, c)] = v;
        }
    }
}

/// Product of two nonnegative matrices via the digit scheme.
fn nonneg_product(m: &IntMatrix, n: &IntMatrix, k: u32) -> IntMatrix {
    let a = m.rows();
    let b = n.cols();
    let mut out = IntMatrix::zero(a, b);
    let max_m = m.max_norm();
    if max_m.is_zero() || n.max_norm().is_zero() {
        return out;
    }
    // Smallest power of two strictly above every entry of m.
    let shift = max_m.bits();
    let x = Int::one() << shift;

    // Expand each column of n in base X and keep the nonzero digit columns.
    // Each kept entry is a digit in [0, X).
    let inner = n.rows();
    let mut digit_cols: Vec<(usize, usize, Vec<Int>)> = Vec::new();
    for c in 0..b {
        let mut levels: Vec<Vec<Int>> = Vec::new();
        for r in 0..inner {
            let mut v = n[(r, c)].clone();
            let mut level = 0;
            while !v.is_zero() {
                let (q, digit) = v.div_rem(&x);
                if level == levels.len() {
                    levels.push(vec![Int::zero(); inner]);
                }
                levels[level][r] = digit;
                v = q;
                level += 1;
            }
        }
        for (level, digits) in levels.into_iter().enumerate() {
            if digits.iter().any(|d| !d.is_zero()) {
                digit_cols.push((level, c, digits));
            }
        }
    }

    // Multiply the digit columns in blocks of a^k and scatter the partial
    // products back with the matching shift.
    let block = a.checked_pow(k).unwrap_or(usize::MAX).max(1);
    for group in digit_cols.chunks(block) {
        let sub =
            IntMatrix::from_cols(inner, group.iter().map(|(_, _, d)| d.clone()).collect());
        let prod = naive_matmul(m, &sub).expect("digit block has matching shape");
        for (j, (level, c, _)) in group.iter().enumerate() {
            let up = shift as usize * *level;
            for r in 0..a {
                let v = &out[(r, *c)] + (&prod[(r, j)] << up);
                out[(r, *c)] = v;
            }
        }
    }
    out
}
