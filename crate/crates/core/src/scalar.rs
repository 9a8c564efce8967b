//! Exact rational scalars.
//!
//! The ground field is Q throughout. `Scalar` is a reduced fraction of
//! arbitrary-precision integers: denominator positive, gcd(num, den) = 1,
//! zero represented as 0/1. Those invariants are maintained by the
//! underlying `Ratio` type on every operation.

use num::bigint::{BigInt, Sign};
use num::rational::Ratio;
use num::{Integer, One, Signed, Zero};

pub type Scalar = Ratio<BigInt>;

/// Integer as a scalar.
pub fn zint(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Fraction n/d as a scalar. Panics on d = 0.
pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

/// Sign of a scalar as -1, 0, 1.
pub fn sign(s: &Scalar) -> i32 {
    match s.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Parse an integer or `p/q` fraction literal.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Scalar::new(n, d))
            }
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Scalar::from_integer(n))
        }
    }
}

/// Scale a rational vector to the canonical integer representative:
/// denominators cleared, integer content 1, first nonzero entry positive.
/// Returns None for the zero vector.
pub fn canonical_int_vector(v: &[Scalar]) -> Option<Vec<BigInt>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut den_lcm = BigInt::one();
    for x in v {
        den_lcm = den_lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&den_lcm / x.denom()))
        .collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = content.gcd(x);
    }
    let first = ints.iter().find(|x| !x.is_zero()).unwrap();
    if first.is_negative() {
        content = -content;
    }
    for x in &mut ints {
        *x = &*x / &content;
    }
    Some(ints)
}

/// Least common multiple of a collection of big integers, ignoring zeros.
pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    let mut acc = BigInt::one();
    for x in xs {
        if !x.is_zero() {
            acc = acc.lcm(x);
        }
    }
    acc
}
