//! Exact rational scalars.

use malachite_base::num::arithmetic::traits::{Gcd, Lcm, Sign};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use std::cmp::Ordering;

pub use malachite_q::Rational;

pub fn zero() -> Rational {
    Rational::ZERO
}

pub fn one() -> Rational {
    Rational::ONE
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::from_signeds(n, d)
}

pub fn is_zero(r: &Rational) -> bool {
    *r == Rational::ZERO
}

pub fn is_one(r: &Rational) -> bool {
    *r == Rational::ONE
}

pub fn is_negative(r: &Rational) -> bool {
    r.sign() == Ordering::Less
}

pub fn is_integer(r: &Rational) -> bool {
    *r.denominator_ref() == Natural::ONE
}

/// Inverse of a nonzero rational.
pub fn inv(r: &Rational) -> Rational {
    assert!(!is_zero(r), "inverse of zero");
    Rational::ONE / r
}

/// The positive rational `q` such that `q * x` is a primitive integer vector
/// for every nonzero entry `x`. Returns one for an empty input.
pub fn primitive_scale<'a, I>(coeffs: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut den_lcm = Natural::ONE;
    let mut num_gcd = Natural::ZERO;
    for c in coeffs {
        if is_zero(c) {
            continue;
        }
        den_lcm = (&den_lcm).lcm(c.denominator_ref());
        num_gcd = (&num_gcd).gcd(c.numerator_ref());
    }
    if num_gcd == Natural::ZERO {
        return Rational::ONE;
    }
    Rational::from_naturals(den_lcm, num_gcd)
}

/// Numerator as a signed integer; the input must be an integer.
pub fn to_integer(r: &Rational) -> Integer {
    debug_assert!(is_integer(r));
    let n = Integer::from(r.numerator_ref().clone());
    if is_negative(r) {
        -n
    } else {
        n
    }
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    i64::try_from(&to_integer(r)).ok()
}

/// Parses `n` or `n/d` with optional sign and surrounding whitespace.
pub fn parse(s: &str) -> Option<Rational> {
    use std::str::FromStr;
    let t = s.trim();
    if t.is_empty() || t.ends_with("/0") {
        return None;
    }
    Rational::from_str(t).ok()
}
