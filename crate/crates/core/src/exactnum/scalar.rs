//! Quadratic surds and the formal quadratic extension ℚ(√R).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{rational_sqrt, Rational};

/// A pure square root ±√(m/n) with its rationality classification.
///
/// `rational_part` is present exactly when the radicand is a perfect
/// rational square, in which case `rational_part² = radicand` and the
/// represented value is `sign · rational_part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    sign: i8,
    radicand: Rational,
    rational_part: Option<Rational>,
}

impl QuadraticSurd {
    /// The value sign·√radicand.
    ///
    /// # Panics
    ///
    /// Panics when the radicand is negative (this type presents real
    /// square roots; for formal imaginary values use [`ExactScalar`]) or
    /// when `sign` is not ±1.
    pub fn new(sign: i8, radicand: Rational) -> Self {
        assert!(
            sign == 1 || sign == -1,
            "surd sign must be +1 or -1, got {}",
            sign
        );
        assert!(
            !radicand.is_negative(),
            "surd radicand must be nonnegative, got {}",
            radicand
        );
        let rational_part = rational_sqrt(&radicand);
        QuadraticSurd {
            sign,
            radicand,
            rational_part,
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    /// The exact rational value when the radicand is a perfect square.
    pub fn rational_value(&self) -> Option<Rational> {
        self.rational_part.as_ref().map(|r| {
            if self.sign > 0 {
                r.clone()
            } else {
                -r.clone()
            }
        })
    }

    pub fn is_rational(&self) -> bool {
        self.rational_part.is_some()
    }

    /// Embeds into the quadratic extension.
    pub fn to_scalar(&self) -> ExactScalar {
        match self.rational_value() {
            Some(v) => ExactScalar::from_rational(v),
            None => ExactScalar::sqrt(self.radicand.clone()).scale(&Rational::from_integer(
                num_bigint::BigInt::from(self.sign),
            )),
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational_value() {
            Some(v) => write!(f, "{}", v),
            None => write!(
                f,
                "{}sqrt({})",
                if self.sign < 0 { "-" } else { "" },
                self.radicand
            ),
        }
    }
}

/// An element base + coeff·√radicand of a formal quadratic extension of ℚ.
///
/// Canonical form: `coeff = 0` implies `radicand = 0`, and the radicand is
/// never a perfect rational square (such roots are folded into `base`).
/// A negative radicand is allowed and represents the imaginary value
/// i·√|radicand|; arithmetic stays valid because only √R·√R = R is ever
/// used. Mixing two distinct irrational radicands is not supported (the
/// pipeline never needs it) and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    base: Rational,
    coeff: Rational,
    radicand: Rational,
}

impl ExactScalar {
    pub fn from_rational(base: Rational) -> Self {
        ExactScalar {
            base,
            coeff: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_rational(super::rational::int(n))
    }

    /// The formal square root of `radicand` (nonnegative branch for
    /// nonnegative input; i·√|radicand| for negative input).
    pub fn sqrt(radicand: Rational) -> Self {
        if !radicand.is_negative() {
            if let Some(root) = rational_sqrt(&radicand) {
                return ExactScalar::from_rational(root);
            }
        } else {
            // -R with R a perfect square gives the purely imaginary root
            // √R·i, kept as coeff √(-1)-style with radicand -1·R folded:
            // we keep the radicand as given; only perfect squares of the
            // *positive* part fold.
            let positive = -radicand.clone();
            if let Some(root) = rational_sqrt(&positive) {
                return ExactScalar {
                    base: Rational::zero(),
                    coeff: root,
                    radicand: -Rational::from_integer(1.into()),
                };
            }
        }
        ExactScalar {
            base: Rational::zero(),
            coeff: Rational::from_integer(1.into()),
            radicand,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.base)
        } else {
            None
        }
    }

    /// Whether the represented value is real (rational, or a real surd).
    pub fn is_real(&self) -> bool {
        self.coeff.is_zero() || !self.radicand.is_negative()
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn surd_coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ExactScalar::from_rational(Rational::zero());
        }
        ExactScalar {
            base: &self.base * c,
            coeff: &self.coeff * c,
            radicand: self.radicand.clone(),
        }
    }

    fn common_radicand(&self, rhs: &ExactScalar) -> Rational {
        if self.coeff.is_zero() {
            rhs.radicand.clone()
        } else if rhs.coeff.is_zero() || self.radicand == rhs.radicand {
            self.radicand.clone()
        } else {
            panic!(
                "incompatible radicands {} and {} in quadratic-extension arithmetic",
                self.radicand, rhs.radicand
            );
        }
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let radicand = self.common_radicand(rhs);
        let coeff = &self.coeff + &rhs.coeff;
        ExactScalar {
            base: &self.base + &rhs.base,
            radicand: if coeff.is_zero() {
                Rational::zero()
            } else {
                radicand
            },
            coeff,
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            base: -self.base.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let radicand = self.common_radicand(rhs);
        // (a + b√R)(c + e√R) = ac + beR + (ae + bc)√R
        let base = &self.base * &rhs.base + &self.coeff * &rhs.coeff * &radicand;
        let coeff = &self.base * &rhs.coeff + &self.coeff * &rhs.base;
        ExactScalar {
            base,
            radicand: if coeff.is_zero() {
                Rational::zero()
            } else {
                radicand
            },
            coeff,
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.base);
        }
        let root = if self.radicand == -Rational::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("sqrt({})", self.radicand)
        };
        if self.base.is_zero() {
            if self.coeff == Rational::from_integer(1.into()) {
                write!(f, "{}", root)
            } else {
                write!(f, "{}*{}", self.coeff, root)
            }
        } else {
            write!(f, "{} + {}*{}", self.base, self.coeff, root)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn perfect_squares_fold_to_rationals() {
        assert_eq!(
            ExactScalar::sqrt(rat(4, 9)).as_rational(),
            Some(&rat(2, 3))
        );
        assert!(!ExactScalar::sqrt(int(2)).is_rational());
    }

    #[test]
    fn negative_radicands_are_imaginary() {
        let x = ExactScalar::sqrt(int(-4));
        assert!(!x.is_real());
        // (2i)² = -4
        assert_eq!((&x * &x).as_rational(), Some(&int(-4)));
    }

    #[test]
    fn extension_arithmetic() {
        // p = (-1 + √(τ²))/2 with τ² = 4/3: p(p+1) = (τ²-1)/4 = 1/12
        let tau = ExactScalar::sqrt(rat(4, 3));
        let p = &(&tau + &ExactScalar::from_int(-1)) * &ExactScalar::from_rational(rat(1, 2));
        let p_plus_one = &p + &ExactScalar::from_int(1);
        let product = &p * &p_plus_one;
        assert_eq!(product.as_rational(), Some(&rat(1, 12)));
    }

    #[test]
    fn surd_classification() {
        let s = QuadraticSurd::new(-1, rat(9, 4));
        assert_eq!(s.rational_value(), Some(rat(-3, 2)));
        let t = QuadraticSurd::new(1, int(2));
        assert!(!t.is_rational());
        assert_eq!(t.to_string(), "sqrt(2)");
    }

    #[test]
    #[should_panic(expected = "incompatible radicands")]
    fn mixed_radicands_are_rejected() {
        let _ = &ExactScalar::sqrt(int(2)) + &ExactScalar::sqrt(int(3));
    }
}
