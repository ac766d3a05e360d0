//! Brute-force reference oracles, independent of the basis algorithms.
//!
//! Everything here trades speed for obviousness: half-open parallelepipeds
//! are enumerated point by point inside a bounding box, lattice
//! determinants come from gcds of maximal minors, and basis verification
//! reduces to exact solves. Intended for small instances and tests.

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{lcm_many, Int, Rat};
use crate::error::Error;
use crate::linalg::{det, find_independent_rows, rank, solve_exact};
use crate::matrix::IntMatrix;

/// Default candidate cap for parallelepiped enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 100_000;

/// All integral points of the half-open parallelepiped spanned by a set of
/// independent columns, together with their coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelepipedCensus {
    /// Integral points `b * x` with `x` in `[0, 1)^j`.
    pub points: Vec<Vec<Int>>,
    /// The coefficient vector `x` for each point, in the same order.
    pub coords: Vec<Vec<Rat>>,
}

impl ParallelepipedCensus {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// Enumerates the integral points of the half-open parallelepiped of `b`.
///
/// The columns of `b` must be linearly independent. Candidates are scanned
/// inside the coordinate bounding box of the parallelepiped; if that box
/// holds more than `cap` integer points the enumeration refuses to run.
pub fn enumerate_parallelepiped(
    b: &IntMatrix,
    cap: u64,
) -> Result<ParallelepipedCensus, Error> {
    let d = b.rows();
    let j = b.cols();
    if rank(b) < j {
        return Err(Error::RankDeficient { required: j, actual: rank(b) });
    }
    if j == 0 {
        // The empty parallelepiped is the origin alone.
        return Ok(ParallelepipedCensus {
            points: vec![vec![Int::zero(); d]],
            coords: vec![vec![]],
        });
    }

    let proj_rows = find_independent_rows(b);
    debug_assert_eq!(proj_rows.len(), j);
    let square = b.select_rows(&proj_rows);
    let inverse = solve_exact(&square, &IntMatrix::identity(j))?;

    // Coordinate-wise bounding box of the closed parallelepiped.
    let mut lows = vec![Int::zero(); d];
    let mut highs = vec![Int::zero(); d];
    for r in 0..d {
        for c in 0..j {
            let v = &b[(r, c)];
            if v.is_negative() {
                lows[r] += v;
            } else {
                highs[r] += v;
            }
        }
    }
    let mut candidates: u128 = 1;
    for r in 0..d {
        let width = (&highs[r] - &lows[r] + 1u8).to_u128().unwrap_or(u128::MAX);
        candidates = candidates.saturating_mul(width);
        if candidates > cap as u128 {
            return Err(Error::TooLarge { candidates, cap });
        }
    }

    let mut census = ParallelepipedCensus { points: Vec::new(), coords: Vec::new() };
    let mut point = lows.clone();
    'scan: loop {
        // Solve for the coefficients through the projection rows.
        let mut x = vec![Rat::zero(); j];
        for (i, xi) in x.iter_mut().enumerate() {
            for (k, &row) in proj_rows.iter().enumerate() {
                if !inverse[(i, k)].is_zero() {
                    *xi += &inverse[(i, k)] * Rat::from_integer(point[row].clone());
                }
            }
        }
        let inside = x.iter().all(|xi| !xi.is_negative() && *xi < Rat::one());
        if inside {
            let spanned = j == d
                || b
                    .mul_rat_vec(&x)
                    .iter()
                    .zip(&point)
                    .all(|(bi, pi)| *bi == Rat::from_integer(pi.clone()));
            if spanned {
                census.points.push(point.clone());
                census.coords.push(x);
            }
        }
        // Odometer step through the box.
        for r in 0..d {
            if point[r] < highs[r] {
                point[r] += 1u8;
                continue 'scan;
            }
            point[r] = lows[r].clone();
        }
        break;
    }
    Ok(census)
}

/// Fractionality of coordinate `coord` over the parallelepiped of `b`:
/// the lcm of the denominators that coordinate takes on integral points.
pub fn fractionality_bruteforce(
    b: &IntMatrix,
    coord: usize,
    cap: u64,
) -> Result<Int, Error> {
    if coord >= b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "coordinate {coord} out of range for {} columns",
            b.cols()
        )));
    }
    let census = enumerate_parallelepiped(b, cap)?;
    let denoms: Vec<Int> = census.coords.iter().map(|x| x[coord].denom().clone()).collect();
    lcm_many(&denoms)
}

/// Lattice determinant of the columns of `a` as the gcd of all maximal
/// minors. Requires the columns to span full row rank.
pub fn lattice_det_minor_gcd(a: &IntMatrix) -> Result<Int, Error> {
    let d = a.rows();
    let r = rank(a);
    if r < d {
        return Err(Error::RankDeficient { required: d, actual: r });
    }
    let mut g = Int::zero();
    for combo in (0..a.cols()).combinations(d) {
        g = g.gcd(&det(&a.select_columns(&combo)));
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Outcome of checking a candidate basis against the generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub pass: bool,
    /// Generator columns that are not integral combinations of the basis.
    pub failing_columns: Vec<usize>,
    pub det_matches: bool,
    pub basis_det: Int,
    pub oracle_det: Int,
}

/// Generator columns of `a` that are not integral combinations of the
/// columns of `s`. Handles rectangular `s` by solving through a set of
/// independent rows and checking the remaining rows exactly.
pub fn columns_outside_lattice(s: &IntMatrix, a: &IntMatrix) -> Result<Vec<usize>, Error> {
    if s.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} rows but generators have {}",
            s.rows(),
            a.rows()
        )));
    }
    let r = s.cols();
    if rank(s) < r {
        return Err(Error::RankDeficient { required: r, actual: rank(s) });
    }
    if r == 0 {
        // Only the zero vector lies in the trivial lattice.
        return Ok((0..a.cols())
            .filter(|&c| a.col(c).iter().any(|v| !v.is_zero()))
            .collect());
    }
    let proj_rows = find_independent_rows(s);
    let sp = s.select_rows(&proj_rows);
    let ap = a.select_rows(&proj_rows);
    let x = solve_exact(&sp, &ap)?;
    let mut failing = Vec::new();
    for c in 0..a.cols() {
        let col = x.col(c);
        let integral = col.iter().all(Rat::is_integer);
        let spanned = proj_rows.len() == s.rows()
            || s.mul_rat_vec(col)
                .iter()
                .zip(a.col(c))
                .all(|(si, ai)| *si == Rat::from_integer(ai.clone()));
        if !(integral && spanned) {
            failing.push(c);
        }
    }
    Ok(failing)
}

/// Checks that square `s` is a basis of the lattice generated by the
/// columns of `a`: every generator must be an integral combination of `s`
/// and `|det(s)|` must equal the minor-gcd lattice determinant of `a`.
pub fn is_basis_of(s: &IntMatrix, a: &IntMatrix) -> Result<BasisReport, Error> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "candidate basis must be square, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let basis_det = det(s).abs();
    if basis_det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let failing_columns = columns_outside_lattice(s, a)?;
    let oracle_det = lattice_det_minor_gcd(a)?;
    let det_matches = basis_det == oracle_det;
    Ok(BasisReport {
        pass: failing_columns.is_empty() && det_matches,
        failing_columns,
        det_matches,
        basis_det,
        oracle_det,
    })
}

/// Rank-aware variant of [`is_basis_of`] for a rectangular candidate whose
/// column count matches the rank of `a`. Both checks run on a projection
/// onto independent rows of `s`; span equality outside those rows is part
/// of the membership test.
pub fn is_lowrank_basis_of(s: &IntMatrix, a: &IntMatrix) -> Result<BasisReport, Error> {
    let r = s.cols();
    if rank(s) < r {
        return Err(Error::RankDeficient { required: r, actual: rank(s) });
    }
    if rank(a) != r {
        return Err(Error::RankDeficient { required: r, actual: rank(a) });
    }
    if r == 0 {
        let failing = columns_outside_lattice(s, a)?;
        return Ok(BasisReport {
            pass: failing.is_empty(),
            failing_columns: failing,
            det_matches: true,
            basis_det: Int::one(),
            oracle_det: Int::one(),
        });
    }
    let failing_columns = columns_outside_lattice(s, a)?;
    let proj_rows = find_independent_rows(s);
    let basis_det = det(&s.select_rows(&proj_rows)).abs();
    let ap = a.select_rows(&proj_rows);
    let (det_matches, oracle_det) = match lattice_det_minor_gcd(&ap) {
        Ok(g) => (g == basis_det, g),
        // The generators do not even span the projection: not a basis.
        Err(Error::RankDeficient { .. }) => (false, Int::zero()),
        Err(e) => return Err(e),
    };
    Ok(BasisReport {
        pass: failing_columns.is_empty() && det_matches,
        failing_columns,
        det_matches,
        basis_det,
        oracle_det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn census_of_known_parallelepiped() {
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 3]]);
        let census = enumerate_parallelepiped(&b, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(census.count(), 15);
        assert_eq!(det(&b).abs(), int(15));
        // The origin is always present.
        assert!(census.points.contains(&vec![int(0), int(0)]));
    }

    #[test]
    fn census_of_single_column() {
        let b = IntMatrix::from_i64_rows(&[&[6], &[3]]);
        let census = enumerate_parallelepiped(&b, DEFAULT_ENUM_CAP).unwrap();
        let mut pts = census.points.clone();
        pts.sort();
        assert_eq!(
            pts,
            vec![
                vec![int(0), int(0)],
                vec![int(2), int(1)],
                vec![int(4), int(2)],
            ]
        );
    }

    #[test]
    fn census_of_empty_prefix() {
        let b = IntMatrix::zero(3, 0);
        let census = enumerate_parallelepiped(&b, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(census.count(), 1);
        assert_eq!(census.points[0], vec![int(0); 3]);
    }

    #[test]
    fn census_count_matches_det_for_full_rank() {
        let b = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 2]]);
        let census = enumerate_parallelepiped(&b, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(Int::from(census.count()), det(&b).abs());
    }

    #[test]
    fn enumeration_respects_cap() {
        let b = IntMatrix::from_i64_rows(&[&[1000, 0], &[0, 1000]]);
        assert!(matches!(
            enumerate_parallelepiped(&b, 100),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_rejects_dependent_columns() {
        let b = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            enumerate_parallelepiped(&b, 100),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn fractionality_of_known_instance() {
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 3]]);
        assert_eq!(fractionality_bruteforce(&b, 1, DEFAULT_ENUM_CAP).unwrap(), int(5));
        assert_eq!(fractionality_bruteforce(&b, 0, DEFAULT_ENUM_CAP).unwrap(), int(15));
    }

    #[test]
    fn minor_gcd_of_known_generators() {
        let a = IntMatrix::from_i64_rows(&[&[6, 1, 2, 4], &[3, 5, 4, 4]]);
        assert_eq!(lattice_det_minor_gcd(&a).unwrap(), int(1));
        let a = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 3]]);
        assert_eq!(lattice_det_minor_gcd(&a).unwrap(), int(15));
        let deficient = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            lattice_det_minor_gcd(&deficient),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn basis_check_accepts_and_rejects() {
        let a = IntMatrix::from_i64_rows(&[&[6, 1, 2, 4], &[3, 5, 4, 4]]);
        let good = IntMatrix::from_i64_rows(&[&[1, 1], &[4, 5]]);
        assert!(is_basis_of(&good, &a).unwrap().pass);

        // Sublattice of index 2: dets disagree and some column escapes.
        let doubled = IntMatrix::from_i64_rows(&[&[2, 1], &[8, 5]]);
        let report = is_basis_of(&doubled, &a).unwrap();
        assert!(!report.pass);
        assert!(!report.det_matches);

        let singular = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(is_basis_of(&singular, &a), Err(Error::SingularMatrix));
    }

    #[test]
    fn lowrank_basis_check() {
        // Rank-1 generators in dimension 3.
        let a = IntMatrix::from_i64_rows(&[&[4, 6, 2], &[8, 12, 4], &[2, 3, 1]]);
        let s = IntMatrix::from_i64_rows(&[&[2], &[4], &[1]]);
        let report = is_lowrank_basis_of(&s, &a).unwrap();
        assert!(report.pass, "{report:?}");

        // Wrong direction: same projection row value, different span.
        let bad = IntMatrix::from_i64_rows(&[&[2], &[4], &[5]]);
        let report = is_lowrank_basis_of(&bad, &a).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn membership_check_on_trivial_lattice() {
        let s = IntMatrix::zero(2, 0);
        let a = IntMatrix::zero(2, 2);
        assert!(columns_outside_lattice(&s, &a).unwrap().is_empty());
        let nonzero = IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(columns_outside_lattice(&s, &nonzero).unwrap(), vec![1]);
    }

    #[test]
    fn counting_factorization_over_prefixes() {
        // Dropping one column divides the census by that coordinate's
        // fractionality, for every choice of dropped column.
        let b = IntMatrix::from_i64_rows(&[&[6, 1], &[3, 3]]);
        let full = enumerate_parallelepiped(&b, DEFAULT_ENUM_CAP).unwrap().count();
        for l in 0..2 {
            let keep: Vec<usize> = (0..2).filter(|&c| c != l).collect();
            let rest = enumerate_parallelepiped(&b.select_columns(&keep), DEFAULT_ENUM_CAP)
                .unwrap()
                .count();
            let frac = fractionality_bruteforce(&b, l, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(Int::from(full), frac * Int::from(rest));
        }
    }
}
