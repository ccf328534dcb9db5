//! Exact rational scalars and the helpers shared by every module.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// The scalar type of the engine. Arbitrary precision, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num / den` in lowest terms. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `p/q` rendering. Integers keep their `/1` so output is byte-stable.
pub fn to_pq(q: &Rational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", q.numer(), q.denom());
    s
}

/// Parses a `p/q` or plain integer string.
pub fn parse_pq(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn floor_i64(q: &Rational) -> Option<i64> {
    q.numer().div_floor(q.denom()).to_i64()
}

pub fn ceil_i64(q: &Rational) -> Option<i64> {
    q.numer().div_ceil(q.denom()).to_i64()
}

/// Smallest integer `>= q` as a rational.
pub fn ceil(q: &Rational) -> Rational {
    Rational::from_integer(q.numer().div_ceil(q.denom()))
}

pub fn is_integral(q: &Rational) -> bool {
    q.is_integer()
}

pub fn min_rat<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_is_canonical() {
        assert_eq!(to_pq(&frac(4, -8)), "-1/2");
        assert_eq!(to_pq(&int(3)), "3/1");
        assert_eq!(to_pq(&int(0)), "0/1");
        assert_eq!(parse_pq("-6/4"), Some(frac(-3, 2)));
        assert_eq!(parse_pq("7"), Some(int(7)));
        assert_eq!(parse_pq("1/0"), None);
    }

    #[test]
    fn rounding() {
        assert_eq!(floor_i64(&frac(-3, 2)), Some(-2));
        assert_eq!(ceil_i64(&frac(-3, 2)), Some(-1));
        assert_eq!(ceil(&frac(7, 2)), int(4));
        assert_eq!(ceil_i64(&int(5)), Some(5));
    }
}
