//! Exact scalar arithmetic: extended gcds, lcm folds, roundings and the
//! altered mod-1 reduction used by the basis algorithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational, kept reduced with a positive denominator.
pub type Rat = BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for building a reduced [`Rat`] from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(int(numer), int(denom))
}

/// Extended Euclidean algorithm.
///
/// Returns `(g, alpha, beta)` with `g = gcd(|a|, |b|) >= 0` and
/// `alpha * a + beta * b = g`. Both inputs zero yield `(0, 0, 0)`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    if a.is_zero() && b.is_zero() {
        return (Int::zero(), Int::zero(), Int::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// gcd of a sequence, ignoring signs. Empty or all-zero input yields 0.
pub fn gcd_many<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
    let mut g = Int::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Positive lcm of a sequence of nonzero integers.
///
/// A single value yields its absolute value; zero entries are rejected.
/// The lcm of an empty sequence is 1.
pub fn lcm_many<'a>(values: impl IntoIterator<Item = &'a Int>) -> Result<Int, Error> {
    let mut l = Int::one();
    for v in values {
        if v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        l = l.lcm(v);
    }
    Ok(l)
}

/// Fractional part with a twist: nonzero integers map to 1 instead of 0.
///
/// Integer zero stays 0, any other integer maps to 1, and everything else
/// maps to its fractional part `q - floor(q)` in (0, 1).
pub fn altered_mod1(q: &Rat) -> Rat {
    if q.is_integer() {
        if q.is_zero() {
            Rat::zero()
        } else {
            Rat::one()
        }
    } else {
        q - q.floor()
    }
}

/// Nearest integer to `q`, ties rounded up: `floor(q + 1/2)`.
pub fn round_nearest(q: &Rat) -> Int {
    (q + rat(1, 2)).floor().to_integer()
}

/// `floor(q)` as an integer.
pub fn floor_int(q: &Rat) -> Int {
    q.floor().to_integer()
}
