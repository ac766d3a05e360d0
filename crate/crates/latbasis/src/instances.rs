//! Deterministic random instance generation for tests, examples and the
//! command line. The same seed always yields the same matrix.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Int;
use crate::error::Error;
use crate::linalg::rank;
use crate::matrix::IntMatrix;

/// Parameters for [`generate_instance`].
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub rows: usize,
    pub cols: usize,
    /// Entries are drawn from `[-max_entry, max_entry]`.
    pub max_entry: u64,
    pub seed: u64,
    /// Target rank; defaults to full row rank.
    pub rank: Option<usize>,
}

const REJECTION_LIMIT: usize = 10_000;

/// Generates a random integer matrix of the requested shape and rank,
/// deterministically from the seed.
pub fn generate_instance(cfg: &GenConfig) -> Result<IntMatrix, Error> {
    let d = cfg.rows;
    let n = cfg.cols;
    if d == 0 || n == 0 {
        return Err(Error::Parse("rows and cols must be positive".into()));
    }
    let bound = i64::try_from(cfg.max_entry)
        .ok()
        .filter(|b| *b >= 1)
        .ok_or_else(|| Error::Parse("max entry must be between 1 and 2^63-1".into()))?;
    let r = cfg.rank.unwrap_or_else(|| d.min(n));
    if r < 1 || r > d.min(n) {
        return Err(Error::Parse(format!(
            "rank must be between 1 and min(rows, cols) = {}",
            d.min(n)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if r == d.min(n) {
        // Maximal rank comes almost surely from plain sampling.
        return max_rank(&mut rng, d, n, bound);
    }
    deficient_rank(&mut rng, d, n, r, bound)
}

fn max_rank(rng: &mut ChaCha8Rng, d: usize, n: usize, bound: i64) -> Result<IntMatrix, Error> {
    for _ in 0..REJECTION_LIMIT {
        let rows: Vec<Vec<Int>> = (0..d)
            .map(|_| (0..n).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let m = IntMatrix::from_rows(rows);
        if rank(&m) == d.min(n) {
            return Ok(m);
        }
    }
    Err(Error::Parse(
        "could not sample a matrix of maximal rank; raise max entry".into(),
    ))
}

/// Rank-deficient instances: a random full-rank core of `r` columns plus
/// small integral combinations of it, shuffled into a random column order.
fn deficient_rank(
    rng: &mut ChaCha8Rng,
    d: usize,
    n: usize,
    r: usize,
    bound: i64,
) -> Result<IntMatrix, Error> {
    let combo_bound: i64 = 2;
    let core_bound = bound / (r as i64 * combo_bound);
    if core_bound < 1 {
        return Err(Error::Parse(format!(
            "max entry too small for rank {r}; need at least {}",
            r as i64 * combo_bound
        )));
    }
    for _ in 0..REJECTION_LIMIT {
        let core_cols: Vec<Vec<Int>> = (0..r)
            .map(|_| {
                (0..d).map(|_| Int::from(rng.gen_range(-core_bound..=core_bound))).collect()
            })
            .collect();
        let core = IntMatrix::from_cols(d, core_cols);
        if rank(&core) < r {
            continue;
        }
        // The core columns themselves pin the rank; the rest are mixtures.
        let mut cols: Vec<Vec<Int>> = (0..r).map(|c| core.col_vec(c)).collect();
        for _ in r..n {
            let mix: Vec<Int> =
                (0..r).map(|_| Int::from(rng.gen_range(-combo_bound..=combo_bound))).collect();
            cols.push(core.mul_int_vec(&mix));
        }
        cols.shuffle(rng);
        let m = IntMatrix::from_cols(d, cols);
        debug_assert_eq!(rank(&m), r);
        return Ok(m);
    }
    Err(Error::Parse(
        "could not sample a matrix of the requested rank".into(),
    ))
}

/// Random integer of exactly `bits` bits (top bit set), random sign.
/// Useful for stressing the large-integer paths.
pub fn random_int_bits(rng: &mut impl Rng, bits: u64) -> Int {
    if bits == 0 {
        return Int::zero();
    }
    let chunks = bits.div_ceil(64);
    let mut v = Int::zero();
    for _ in 0..chunks {
        v = (v << 64) | Int::from(rng.gen::<u64>());
    }
    v >>= (chunks * 64 - bits) as usize;
    v.set_bit(bits - 1, true);
    if rng.gen::<bool>() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn same_seed_same_matrix() {
        let cfg = GenConfig { rows: 4, cols: 7, max_entry: 50, seed: 3, rank: None };
        let a = generate_instance(&cfg).unwrap();
        let b = generate_instance(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows(), 4);
        assert_eq!(a.cols(), 7);
        assert_eq!(rank(&a), 4);
        assert!(a.max_norm() <= Int::from(50));

        let other = generate_instance(&GenConfig { seed: 4, ..cfg }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn requested_rank_is_hit() {
        for r in 1..=4 {
            let cfg =
                GenConfig { rows: 5, cols: 8, max_entry: 50, seed: 17 + r as u64, rank: Some(r) };
            let a = generate_instance(&cfg).unwrap();
            assert_eq!(rank(&a), r);
            assert!(a.max_norm() <= Int::from(50));
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let cfg = GenConfig { rows: 0, cols: 3, max_entry: 5, seed: 0, rank: None };
        assert!(matches!(generate_instance(&cfg), Err(Error::Parse(_))));
        let cfg = GenConfig { rows: 3, cols: 3, max_entry: 0, seed: 0, rank: None };
        assert!(matches!(generate_instance(&cfg), Err(Error::Parse(_))));
        let cfg = GenConfig { rows: 3, cols: 3, max_entry: 5, seed: 0, rank: Some(4) };
        assert!(matches!(generate_instance(&cfg), Err(Error::Parse(_))));
        // Rank 2 mixtures need entries up to 4.
        let cfg = GenConfig { rows: 3, cols: 3, max_entry: 3, seed: 0, rank: Some(2) };
        assert!(matches!(generate_instance(&cfg), Err(Error::Parse(_))));
    }

    #[test]
    fn random_bits_hit_the_requested_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for bits in [1u64, 7, 64, 65, 257] {
            let v = random_int_bits(&mut rng, bits);
            assert_eq!(v.abs().bits(), bits);
        }
        assert!(random_int_bits(&mut rng, 0).is_zero());
    }
}
