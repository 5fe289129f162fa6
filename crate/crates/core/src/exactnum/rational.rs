//! Big-rational scalars and exact square-root classification.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
///
/// `num_rational::BigRational` maintains exactly the invariants required
/// here (gcd = 1, positive denominator, canonical 0/1 zero), so it is used
/// directly rather than wrapped.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational n/d.
///
/// # Panics
///
/// Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational denominator must be nonzero, got {}/0", n);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer n as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// The exact nonnegative square root of `x`, when one exists in ℚ.
///
/// Returns `Some(s)` with s ≥ 0 and s² = x exactly iff x ≥ 0 and both the
/// numerator and the denominator of the reduced form are perfect squares;
/// `None` otherwise (including all negative inputs).
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let num_root = exact_int_sqrt(x.numer())?;
    let den_root = exact_int_sqrt(x.denom())?;
    Some(Rational::new(num_root, den_root))
}

fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    debug_assert!(n.sign() != Sign::Minus);
    let root = n.sqrt();
    if &root.clone() * &root == *n {
        Some(root)
    } else {
        None
    }
}
