//! Command implementations shared by the binary and the integration
//! tests: structured reports, verification plumbing and exit-code mapping.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::balance::reduce_basis;
use crate::basic::{basic_basis, ExchangeTrace};
use crate::error::Error;
use crate::fast::{fast_basis, lowrank_basis, BasisResult};
use crate::linalg::{det, find_independent_rows, rank};
use crate::matrix::IntMatrix;
use crate::oracles::{columns_outside_lattice, is_basis_of, is_lowrank_basis_of};

/// Largest number of maximal minors the full verification oracle will
/// compute; beyond this only membership is checked.
pub const MINOR_ORACLE_CAP: u128 = 200_000;

/// Errors surfaced by the command layer, keyed to process exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad file or arguments (exit code 1).
    Parse(String),
    /// Rank or degeneracy problems with an otherwise valid input (exit 2).
    Degenerate(String),
    /// The computed result failed verification (exit 3).
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Degenerate(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Degenerate(m) | CliError::Verification(m) => {
                write!(f, "{m}")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Parse(e.to_string()),
            Error::InvariantViolation(_) => CliError::Verification(e.to_string()),
            _ => CliError::Degenerate(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Basic,
    Fast,
}

/// Options for [`run_basis`].
#[derive(Debug, Clone)]
pub struct BasisOptions {
    pub algorithm: Algorithm,
    /// Fall back to the projection-based run when the rank is deficient.
    pub allow_lowrank: bool,
    pub reduce: bool,
    pub verify: bool,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions {
            algorithm: Algorithm::Fast,
            allow_lowrank: true,
            reduce: false,
            verify: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// "full" (membership plus determinant oracle) or "membership-only".
    pub mode: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedReport {
    /// Reduced basis, row-major, entries as decimal strings.
    pub basis: Vec<Vec<String>>,
    pub max_col_norm_sq_before: String,
    pub max_col_norm_sq_after: String,
    pub det_preserved: bool,
}

/// Full structured result of a basis run. Integers are decimal strings so
/// arbitrarily large values survive JSON untouched.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Basis, row-major, entries as decimal strings.
    pub basis: Vec<Vec<String>>,
    /// |det| of the basis; of its row projection when the rank is
    /// deficient; "1" for the empty basis.
    pub det_abs: String,
    pub pivot_order: Vec<usize>,
    pub iterations: usize,
    pub exchanges: usize,
    pub max_denominator_bits: u64,
    pub wall_time_ms: f64,
    pub input_max_norm: String,
    pub basis_max_norm: String,
    pub verification: Option<VerificationReport>,
    pub reduced: Option<ReducedReport>,
}

enum RunOutcome {
    Basic { basis: IntMatrix, trace: ExchangeTrace },
    Fast { result: BasisResult, lowrank: bool },
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect())
        .collect()
}

fn max_col_norm_sq(m: &IntMatrix) -> Int {
    (0..m.cols()).map(|c| m.col_norm_sq(c)).max().unwrap_or_default()
}

/// |det| of a basis candidate; rectangular bases are measured through
/// their projection onto independent rows.
fn projected_abs_det(s: &IntMatrix) -> Result<Int, Error> {
    if s.cols() == 0 {
        return Ok(Int::one());
    }
    if s.is_square() {
        return Ok(det(s).abs());
    }
    let rows = find_independent_rows(s);
    if rows.len() < s.cols() {
        return Err(Error::InvariantViolation(
            "basis columns must be independent".into(),
        ));
    }
    Ok(det(&s.select_rows(&rows)).abs())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Computes a basis for the generator columns of `input` and assembles
/// the full report.
pub fn run_basis(input: &IntMatrix, opts: &BasisOptions) -> Result<RunReport, CliError> {
    let d = input.rows();
    let n = input.cols();
    let r = rank(input);
    if opts.reduce && opts.algorithm == Algorithm::Basic {
        return Err(CliError::Parse(
            "--reduce needs the coefficient matrix of the fast algorithm".into(),
        ));
    }

    let started = Instant::now();
    let outcome = if r == d {
        match opts.algorithm {
            Algorithm::Basic => {
                let (basis, trace) = basic_basis(input)?;
                RunOutcome::Basic { basis, trace }
            }
            Algorithm::Fast => RunOutcome::Fast { result: fast_basis(input)?, lowrank: false },
        }
    } else if opts.allow_lowrank {
        // The projection-based run is built on the fast core, whichever
        // algorithm was requested.
        RunOutcome::Fast { result: lowrank_basis(input)?, lowrank: true }
    } else {
        return Err(CliError::Degenerate(format!(
            "input has rank {r} but {d} rows; rerun with --lowrank auto"
        )));
    };
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

    let (algorithm, basis, pivot_order, iterations, exchanges, max_denominator_bits) =
        match &outcome {
            RunOutcome::Basic { basis, trace } => (
                "basic".to_string(),
                basis,
                trace.steps.iter().map(|s| s.pivot).collect::<Vec<_>>(),
                trace.iterations,
                trace.exchanges(),
                trace.max_denominator_bits,
            ),
            RunOutcome::Fast { result, lowrank } => (
                if *lowrank { "fast-lowrank".to_string() } else { "fast".to_string() },
                &result.basis,
                result.pivot_order.clone(),
                result.iterations,
                0,
                result.trace.max_denominator_bits,
            ),
        };

    let mut report = RunReport {
        algorithm,
        rows: d,
        cols: n,
        rank: r,
        basis: matrix_rows(basis),
        det_abs: projected_abs_det(basis)?.to_string(),
        pivot_order,
        iterations,
        exchanges,
        max_denominator_bits,
        wall_time_ms,
        input_max_norm: input.max_norm().to_string(),
        basis_max_norm: basis.max_norm().to_string(),
        verification: None,
        reduced: None,
    };

    if opts.reduce {
        let RunOutcome::Fast { result, .. } = &outcome else { unreachable!() };
        let reduced =
            reduce_basis(&result.initial, &result.coefficients, &result.pivot_order)?;
        let det_preserved =
            projected_abs_det(&reduced)? == projected_abs_det(&result.basis)?;
        report.reduced = Some(ReducedReport {
            basis: matrix_rows(&reduced),
            max_col_norm_sq_before: max_col_norm_sq(&result.basis).to_string(),
            max_col_norm_sq_after: max_col_norm_sq(&reduced).to_string(),
            det_preserved,
        });
    }

    if opts.verify {
        let full = binomial(n as u128, r as u128) <= MINOR_ORACLE_CAP;
        let pass = if full {
            let check = if r == d {
                is_basis_of(basis, input)?
            } else {
                is_lowrank_basis_of(basis, input)?
            };
            check.pass
        } else {
            columns_outside_lattice(basis, input)?.is_empty()
        };
        report.verification = Some(VerificationReport {
            mode: if full { "full".into() } else { "membership-only".into() },
            pass,
        });
    }

    Ok(report)
}

/// Determinant of a square generator matrix.
pub fn run_det(input: &IntMatrix) -> Result<Int, CliError> {
    if !input.is_square() {
        return Err(CliError::Degenerate(format!(
            "determinant needs a square matrix, got {}x{}",
            input.rows(),
            input.cols()
        )));
    }
    Ok(det(input))
}

/// Brute-force fractionality of the 1-based coordinate `index`.
pub fn run_frac(input: &IntMatrix, index: usize, cap: u64) -> Result<Int, CliError> {
    if index == 0 || index > input.cols() {
        return Err(CliError::Degenerate(format!(
            "coordinate index must be between 1 and {}",
            input.cols()
        )));
    }
    Ok(crate::oracles::fractionality_bruteforce(input, index - 1, cap)?)
}

/// Renders the report the way the binary prints it without `--json`.
pub fn render_report(report: &RunReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("algorithm: {}", report.algorithm));
    push(
        &mut out,
        format!(
            "input: {}x{}, rank {}, max |entry| {}",
            report.rows, report.cols, report.rank, report.input_max_norm
        ),
    );
    push(
        &mut out,
        format!("basis ({}x{}):", report.rows, report.basis.first().map_or(0, Vec::len)),
    );
    for row in &report.basis {
        push(&mut out, format!("  {}", row.join(" ")));
    }
    push(&mut out, format!("|det| = {}", report.det_abs));
    push(&mut out, format!("pivot order: {:?}", report.pivot_order));
    push(
        &mut out,
        format!("iterations: {}, exchanges: {}", report.iterations, report.exchanges),
    );
    push(
        &mut out,
        format!("max denominator bits: {}", report.max_denominator_bits),
    );
    push(&mut out, format!("wall time: {:.3} ms", report.wall_time_ms));
    if let Some(v) = &report.verification {
        push(
            &mut out,
            format!("verification: {} {}", v.mode, if v.pass { "pass" } else { "FAIL" }),
        );
    }
    if let Some(red) = &report.reduced {
        push(
            &mut out,
            format!("reduced basis ({}x{}):", report.rows, red.basis.first().map_or(0, Vec::len)),
        );
        for row in &red.basis {
            push(&mut out, format!("  {}", row.join(" ")));
        }
        push(
            &mut out,
            format!(
                "reduced max column norm^2: {} -> {}",
                red.max_col_norm_sq_before, red.max_col_norm_sq_after
            ),
        );
        push(
            &mut out,
            format!("reduced determinant preserved: {}", red.det_preserved),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn known_instance() -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[6, 1, 2, 4], &[3, 5, 4, 4]])
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 1);
        assert_eq!(CliError::Degenerate("x".into()).exit_code(), 2);
        assert_eq!(CliError::Verification("x".into()).exit_code(), 3);
        assert_eq!(CliError::from(Error::SingularMatrix).exit_code(), 2);
        assert_eq!(CliError::from(Error::Parse("bad".into())).exit_code(), 1);
        assert_eq!(
            CliError::from(Error::InvariantViolation("bad".into())).exit_code(),
            3
        );
    }

    #[test]
    fn fast_run_on_known_instance() {
        let opts = BasisOptions { verify: true, ..BasisOptions::default() };
        let report = run_basis(&known_instance(), &opts).unwrap();
        assert_eq!(report.algorithm, "fast");
        assert_eq!(report.det_abs, "1");
        assert_eq!(report.rank, 2);
        assert_eq!(report.pivot_order, vec![0, 1]);
        assert_eq!(report.basis, vec![vec!["1", "1"], vec!["4", "5"]]);
        let v = report.verification.as_ref().unwrap();
        assert_eq!(v.mode, "full");
        assert!(v.pass);
        let text = render_report(&report);
        assert!(text.contains("|det| = 1"));
        assert!(text.contains("verification: full pass"));
    }

    #[test]
    fn basic_run_reports_exchanges() {
        let opts = BasisOptions {
            algorithm: Algorithm::Basic,
            verify: true,
            ..BasisOptions::default()
        };
        let report = run_basis(&known_instance(), &opts).unwrap();
        assert_eq!(report.algorithm, "basic");
        assert_eq!(report.det_abs, "1");
        assert!(report.exchanges >= 1);
        assert!(report.verification.unwrap().pass);
    }

    #[test]
    fn lowrank_fallback_and_refusal() {
        let a = IntMatrix::from_i64_rows(&[&[4, 2], &[6, 3], &[8, 4]]);
        let report = run_basis(&a, &BasisOptions::default()).unwrap();
        assert_eq!(report.algorithm, "fast-lowrank");
        assert_eq!(report.rank, 1);
        assert_eq!(report.basis.len(), 3);
        assert_eq!(report.det_abs, "2");

        let strict = BasisOptions { allow_lowrank: false, ..BasisOptions::default() };
        let err = run_basis(&a, &strict).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn reduce_requires_fast() {
        let opts = BasisOptions {
            algorithm: Algorithm::Basic,
            reduce: true,
            ..BasisOptions::default()
        };
        let err = run_basis(&known_instance(), &opts).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn reduce_reports_preserved_determinant() {
        let opts = BasisOptions { reduce: true, ..BasisOptions::default() };
        let report = run_basis(&known_instance(), &opts).unwrap();
        let red = report.reduced.unwrap();
        assert!(red.det_preserved);
        let before: u64 = red.max_col_norm_sq_before.parse().unwrap();
        let after: u64 = red.max_col_norm_sq_after.parse().unwrap();
        assert!(after <= before);
    }

    #[test]
    fn report_round_trips_through_json() {
        let opts = BasisOptions { verify: true, reduce: true, ..BasisOptions::default() };
        let report = run_basis(&known_instance(), &opts).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn json_preserves_huge_integers() {
        // A determinant beyond u128 must survive the trip untouched.
        let huge = Int::from(u128::MAX) * Int::from(u128::MAX);
        let report = RunReport {
            algorithm: "fast".into(),
            rows: 1,
            cols: 1,
            rank: 1,
            basis: vec![vec![huge.to_string()]],
            det_abs: huge.to_string(),
            pivot_order: vec![0],
            iterations: 1,
            exchanges: 0,
            max_denominator_bits: 0,
            wall_time_ms: 0.0,
            input_max_norm: huge.to_string(),
            basis_max_norm: huge.to_string(),
            verification: None,
            reduced: None,
        };
        let json = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.det_abs, huge.to_string());
    }

    #[test]
    fn det_and_frac_commands() {
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 3]]);
        assert_eq!(run_det(&b).unwrap(), int(15));
        assert!(run_det(&known_instance()).is_err());

        assert_eq!(run_frac(&b, 2, 100_000).unwrap(), int(5));
        assert_eq!(run_frac(&b, 1, 100_000).unwrap(), int(15));
        assert_eq!(run_frac(&b, 0, 100_000).unwrap_err().exit_code(), 2);
        assert_eq!(run_frac(&b, 3, 100_000).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn binomial_saturates_sensibly() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert!(binomial(300, 150) > MINOR_ORACLE_CAP);
    }

    #[test]
    fn zero_rank_input_reports_empty_basis() {
        let a = IntMatrix::zero(2, 2);
        let opts = BasisOptions { verify: true, ..BasisOptions::default() };
        let report = run_basis(&a, &opts).unwrap();
        assert_eq!(report.rank, 0);
        assert_eq!(report.det_abs, "1");
        assert_eq!(report.basis, vec![Vec::<String>::new(), Vec::<String>::new()]);
        assert!(report.verification.unwrap().pass);
    }
}
