//! Basis computation with one exact solve and gcd translate chains.
//!
//! The leftover generators are solved against an independent column
//! selection once. Each round picks the pivot row whose solution entries
//! have the largest denominator lcm, folds all leftover columns into that
//! direction through a single extended-gcd chain, and keeps every state
//! entry inside [0, 1] with an altered mod-1 reduction that sends nonzero
//! integers to one instead of zero. Rank-deficient inputs run the same
//! core on a projection onto independent rows.

use num_traits::{One, Signed, Zero};

use crate::arith::{altered_mod1, ext_gcd, lcm_many, Int, Rat};
use crate::error::Error;
use crate::linalg::{find_independent_columns, find_independent_rows, solve_exact};
use crate::matrix::{naive_matmul, IntMatrix, RatMatrix};
use crate::xadic::xadic_matmul;

/// Gcd cascade along one pivot row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateChain {
    /// Row the chain was built from.
    pub pivot: usize,
    /// Common denominator `t` of the row (its entry lcm).
    pub denominator: Int,
    /// Scaled numerators of the row: entry values times `t`.
    pub translates: Vec<Int>,
    /// `gcds[0] = t`, then `gcds[j] = gcd(gcds[j-1], translates[j-1])`.
    pub gcds: Vec<Int>,
    /// Coefficients with `bezout[j].0 * gcds[j] + bezout[j].1 * translates[j] = gcds[j+1]`.
    pub bezout: Vec<(Int, Int)>,
}

/// Execution record of the fast algorithm.
#[derive(Debug, Clone, Default)]
pub struct FastTrace {
    /// One chain per pivot round, in execution order.
    pub chains: Vec<TranslateChain>,
    /// Largest denominator bit length held in the state at any point.
    pub max_denominator_bits: u64,
    /// How often the altered mod-1 reduction hit a nonzero integer.
    pub mod1_integer_hits: u64,
    /// Total rational entry updates performed.
    pub entry_updates: u64,
}

impl FastTrace {
    fn observe<'a>(&mut self, entries: impl IntoIterator<Item = &'a Rat>) {
        for q in entries {
            self.max_denominator_bits = self.max_denominator_bits.max(q.denom().bits());
        }
    }
}

/// Result of [`fast_basis`] / [`lowrank_basis`].
#[derive(Debug, Clone)]
pub struct BasisResult {
    /// Independent columns selected from the input, in input order.
    pub initial: IntMatrix,
    /// Rational coefficients with `basis = initial * coefficients`.
    /// Reordering rows by `pivot_order` makes it lower triangular.
    pub coefficients: RatMatrix,
    /// The computed lattice basis.
    pub basis: IntMatrix,
    /// Pivot row chosen in each round.
    pub pivot_order: Vec<usize>,
    /// Pivot rounds executed (the rank of the input).
    pub iterations: usize,
    pub trace: FastTrace,
}

/// Lcm of the denominators in row `r`.
fn row_lcm(x: &RatMatrix, r: usize) -> Int {
    let denoms: Vec<Int> = (0..x.cols()).map(|c| x[(r, c)].denom().clone()).collect();
    lcm_many(&denoms).expect("denominators are never zero")
}

/// Denominator lcm of every row.
pub fn row_lcms(x: &RatMatrix) -> Vec<Int> {
    (0..x.rows()).map(|r| row_lcm(x, r)).collect()
}

/// Row with the largest denominator lcm among `available`; ties go to the
/// smallest index. `available` must be nonempty and sorted ascending.
pub fn choose_max_fractionality_pivot(x: &RatMatrix, available: &[usize]) -> usize {
    assert!(!available.is_empty(), "no pivot rows left");
    let mut best = available[0];
    let mut best_lcm = row_lcm(x, best);
    for &r in &available[1..] {
        let l = row_lcm(x, r);
        if l > best_lcm {
            best = r;
            best_lcm = l;
        }
    }
    best
}

/// Common denominator and scaled numerators of row `r`: returns `(t, v)`
/// with `x[(r, j)] = v[j] / t` for all columns `j`.
pub fn row_translates(x: &RatMatrix, r: usize) -> (Int, Vec<Int>) {
    let t = row_lcm(x, r);
    let translates = (0..x.cols())
        .map(|c| {
            let q = &x[(r, c)];
            q.numer() * (&t / q.denom())
        })
        .collect();
    (t, translates)
}

/// Builds the gcd cascade for denominator `t >= 1` along `translates`.
pub fn gcd_chain(pivot: usize, t: &Int, translates: &[Int]) -> TranslateChain {
    assert!(t.is_positive(), "chain denominator must be positive");
    let mut gcds = vec![t.clone()];
    let mut bezout = Vec::with_capacity(translates.len());
    for tj in translates {
        let (g, alpha, beta) = ext_gcd(gcds.last().unwrap(), tj);
        gcds.push(g);
        bezout.push((alpha, beta));
    }
    TranslateChain {
        pivot,
        denominator: t.clone(),
        translates: translates.to_vec(),
        gcds,
        bezout,
    }
}

/// Multiplies integer `b` by rational `y` whose product must be integral.
/// Denominators are cleared per column so the heavy lifting runs on
/// integers (digit-expanded multiplication when `b` is square).
pub(crate) fn scaled_product(b: &IntMatrix, y: &RatMatrix) -> Result<IntMatrix, Error> {
    if b.cols() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            b.rows(),
            b.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let mut scaled = IntMatrix::zero(y.rows(), y.cols());
    let mut denoms = Vec::with_capacity(y.cols());
    for c in 0..y.cols() {
        let col = y.col(c);
        let denom_list: Vec<Int> = col.iter().map(|q| q.denom().clone()).collect();
        let d = lcm_many(&denom_list).expect("denominators are never zero");
        for (r, q) in col.iter().enumerate() {
            scaled[(r, c)] = q.numer() * (&d / q.denom());
        }
        denoms.push(d);
    }
    let mut prod = if b.is_square() {
        xadic_matmul(b, &scaled, 1)?
    } else {
        naive_matmul(b, &scaled)?
    };
    for (c, d) in denoms.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        for r in 0..prod.rows() {
            let v = &prod[(r, c)];
            if !(v % d).is_zero() {
                return Err(Error::InvariantViolation(
                    "product expected to be integral".into(),
                ));
            }
            let q = v / d;
            prod[(r, c)] = q;
        }
    }
    Ok(prod)
}

/// Core rounds shared by the full-rank and low-rank entry points.
/// `bhat` is square and nonsingular, `chat` holds the leftover columns.
fn euclid_core(
    bhat: &IntMatrix,
    chat: &IntMatrix,
) -> Result<(RatMatrix, Vec<usize>, FastTrace), Error> {
    let dh = bhat.rows();
    let m = chat.cols();
    let mut trace = FastTrace::default();

    let mut x = solve_exact(bhat, chat)?;
    for c in 0..m {
        for r in 0..dh {
            let q = x[(r, c)].clone();
            if q.is_integer() && !q.is_zero() {
                trace.mod1_integer_hits += 1;
            }
            x[(r, c)] = altered_mod1(&q);
        }
    }
    trace.entry_updates += (m * dh) as u64;
    for c in 0..m {
        trace.observe(x.col(c));
    }

    let mut y = RatMatrix::zero(dh, dh);
    let mut available: Vec<usize> = (0..dh).collect();
    let mut pivot_order: Vec<usize> = Vec::with_capacity(dh);

    for round in 0..dh {
        let pivot = choose_max_fractionality_pivot(&x, &available);
        available.retain(|&r| r != pivot);

        let (t, translates) = row_translates(&x, pivot);
        let chain = gcd_chain(pivot, &t, &translates);

        // z starts as the pivot unit vector and absorbs one leftover
        // column per chain step.
        let mut z: Vec<Rat> = (0..dh)
            .map(|r| if r == pivot { Rat::one() } else { Rat::zero() })
            .collect();
        for j in 0..m {
            let g_prev = &chain.gcds[j];
            let g = &chain.gcds[j + 1];
            let (alpha, beta) = &chain.bezout[j];
            let col = x.col_vec(j);

            let z_next: Vec<Rat> = (0..dh)
                .map(|r| {
                    let raw = Rat::from_integer(alpha.clone()) * &z[r]
                        + Rat::from_integer(beta.clone()) * &col[r];
                    if raw.is_integer() && !raw.is_zero() {
                        trace.mod1_integer_hits += 1;
                    }
                    altered_mod1(&raw)
                })
                .collect();

            let f_keep = g_prev / g;
            let f_swap = &chain.translates[j] / g;
            let new_col: Vec<Rat> = (0..dh)
                .map(|r| {
                    let raw = Rat::from_integer(f_keep.clone()) * &col[r]
                        - Rat::from_integer(f_swap.clone()) * &z[r];
                    if raw.is_integer() && !raw.is_zero() {
                        trace.mod1_integer_hits += 1;
                    }
                    altered_mod1(&raw)
                })
                .collect();

            // Structural guarantees of the update.
            assert_eq!(
                z_next[pivot],
                Rat::new(g.clone(), t.clone()),
                "pivot coordinate of z must be g/t"
            );
            assert!(
                new_col[pivot].is_zero(),
                "pivot coordinate must vanish after folding"
            );
            for v in z_next.iter().chain(&new_col) {
                assert!(
                    !v.is_negative() && *v <= Rat::one(),
                    "state entries must stay within [0, 1]"
                );
            }
            for &p in &pivot_order {
                assert!(
                    z_next[p].is_zero() && new_col[p].is_zero(),
                    "previously pivoted rows must stay zero"
                );
            }

            trace.entry_updates += 2 * dh as u64;
            trace.observe(z_next.iter().chain(&new_col));
            x.set_col(j, &new_col);
            z = z_next;
        }
        trace.chains.push(chain);
        y.set_col(round, &z);
        pivot_order.push(pivot);
    }

    // The pivot-reordered coefficient matrix is lower triangular with a
    // unit-numerator diagonal.
    for i in 0..dh {
        for k in 0..i {
            assert!(
                y[(pivot_order[k], i)].is_zero(),
                "coefficients must be triangular in pivot order"
            );
        }
        let diag = &y[(pivot_order[i], i)];
        assert!(diag.numer().is_one(), "diagonal coefficients must be unit fractions");
    }
    Ok((y, pivot_order, trace))
}

fn basis_from_columns(a: &IntMatrix, keep: &[usize]) -> Result<BasisResult, Error> {
    let d = a.rows();
    let dh = keep.len();
    let b = a.select_columns(keep);
    if dh == 0 {
        return Ok(BasisResult {
            initial: b,
            coefficients: RatMatrix::zero(0, 0),
            basis: IntMatrix::zero(d, 0),
            pivot_order: Vec::new(),
            iterations: 0,
            trace: FastTrace::default(),
        });
    }
    let rest: Vec<usize> = (0..a.cols()).filter(|c| !keep.contains(c)).collect();
    let c = a.select_columns(&rest);

    let proj = find_independent_rows(&b);
    debug_assert_eq!(proj.len(), dh);
    let (y, pivot_order, trace) = euclid_core(&b.select_rows(&proj), &c.select_rows(&proj))?;

    // The coefficient columns describe integral combinations of the input
    // generators, so the product is integral on all rows, not just the
    // projected ones.
    let basis = scaled_product(&b, &y)?;
    Ok(BasisResult { initial: b, coefficients: y, basis, pivot_order, iterations: dh, trace })
}

/// Computes a basis of the lattice generated by the columns of `a`.
/// Requires full row rank; see [`lowrank_basis`] for the general case.
pub fn fast_basis(a: &IntMatrix) -> Result<BasisResult, Error> {
    let keep = find_independent_columns(a);
    if keep.len() < a.rows() {
        return Err(Error::RankDeficient { required: a.rows(), actual: keep.len() });
    }
    basis_from_columns(a, &keep)
}

/// Computes a basis for generators of any rank by running the core on a
/// projection onto independent rows and mapping the coefficients back.
pub fn lowrank_basis(a: &IntMatrix) -> Result<BasisResult, Error> {
    let keep = find_independent_columns(a);
    basis_from_columns(a, &keep)
}
