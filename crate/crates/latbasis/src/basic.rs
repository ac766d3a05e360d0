//! Reference basis algorithm built on exchange steps.
//!
//! Keeps a square candidate basis and a queue of leftover generators.
//! Each leftover is solved against the candidate; a fractional coordinate
//! triggers an exchange with the rounded residue, which provably at least
//! halves the candidate determinant, so the loop terminates quickly.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::arith::{floor_int, round_nearest, Int, Rat};
use crate::error::Error;
use crate::linalg::{det, find_independent_columns, solve_column};
use crate::matrix::IntMatrix;

/// One exchange performed by [`basic_basis`].
#[derive(Debug, Clone)]
pub struct ExchangeStep {
    /// Index of the basis column that was replaced.
    pub pivot: usize,
    /// The generator column that triggered the exchange.
    pub entering: Vec<Int>,
    /// Its exact coordinates over the basis at that moment.
    pub solution: Vec<Rat>,
    pub det_before: Int,
    pub det_after: Int,
}

/// Execution record of a [`basic_basis`] run.
#[derive(Debug, Clone, Default)]
pub struct ExchangeTrace {
    /// |det| of the initial independent column selection.
    pub initial_det: Int,
    pub steps: Vec<ExchangeStep>,
    /// Queue items processed, including ones consumed without an exchange.
    pub iterations: usize,
    /// Largest denominator bit length seen in any solve.
    pub max_denominator_bits: u64,
}

impl ExchangeTrace {
    pub fn exchanges(&self) -> usize {
        self.steps.len()
    }
}

/// Smallest index holding a fractional coordinate, if any.
pub fn choose_fractional_index(x: &[Rat]) -> Option<usize> {
    x.iter().position(|q| !q.is_integer())
}

/// Inverse-style coordinate update after exchanging the pivot column for
/// the solved generator: the pivot coordinate inverts, the others are
/// divided by it and negated. Exposed for direct inspection in tests.
pub fn update_solution_after_exchange(x: &[Rat], pivot: usize) -> Result<Vec<Rat>, Error> {
    let xl = &x[pivot];
    if xl.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x.iter()
        .enumerate()
        .map(|(i, xi)| if i == pivot { xl.recip() } else { -xi / xl })
        .collect())
}

/// Computes a basis of the lattice generated by the columns of `a` using
/// exchange steps. Requires full row rank. Returns the basis together
/// with the exchange trace.
pub fn basic_basis(a: &IntMatrix) -> Result<(IntMatrix, ExchangeTrace), Error> {
    basic_basis_observed(a, |_, _| {})
}

/// Same as [`basic_basis`] but calls `observer` with the candidate basis
/// and the pending queue after every state change, for invariance tests.
pub(crate) fn basic_basis_observed(
    a: &IntMatrix,
    mut observer: impl FnMut(&IntMatrix, &VecDeque<Vec<Int>>),
) -> Result<(IntMatrix, ExchangeTrace), Error> {
    let d = a.rows();
    let keep = find_independent_columns(a);
    if keep.len() < d {
        return Err(Error::RankDeficient { required: d, actual: keep.len() });
    }
    let mut b = a.select_columns(&keep);
    let mut queue: VecDeque<Vec<Int>> = (0..a.cols())
        .filter(|c| !keep.contains(c))
        .map(|c| a.col_vec(c))
        .collect();

    let mut trace = ExchangeTrace {
        initial_det: det(&b).abs(),
        ..ExchangeTrace::default()
    };
    let mut current_det = trace.initial_det.clone();
    observer(&b, &queue);

    while let Some(c) = queue.pop_front() {
        trace.iterations += 1;
        let x = solve_column(&b, &c)?;
        trace.max_denominator_bits = trace
            .max_denominator_bits
            .max(x.iter().map(|q| q.denom().bits()).max().unwrap_or(0));
        let Some(pivot) = choose_fractional_index(&x) else {
            // Integral combination: the generator is already spanned.
            observer(&b, &queue);
            continue;
        };
        // Residue of the generator against the rounded combination; the
        // pivot coordinate rounds to nearest, all others round down.
        let rounded: Vec<Int> = x
            .iter()
            .enumerate()
            .map(|(i, q)| if i == pivot { round_nearest(q) } else { floor_int(q) })
            .collect();
        let combo = b.mul_int_vec(&rounded);
        let residue: Vec<Int> =
            c.iter().zip(&combo).map(|(ci, wi)| ci - wi).collect();
        let outgoing = b.col_vec(pivot);
        b.set_col(pivot, &residue);
        let new_det = det(&b).abs();
        assert!(
            !new_det.is_zero() && &new_det + &new_det <= current_det,
            "exchange must at least halve the determinant"
        );
        trace.steps.push(ExchangeStep {
            pivot,
            entering: c,
            solution: x,
            det_before: current_det.clone(),
            det_after: new_det.clone(),
        });
        current_det = new_det;
        queue.push_back(outgoing);
        observer(&b, &queue);
    }
    Ok((b, trace))
}
