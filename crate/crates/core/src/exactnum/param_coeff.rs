//! The coefficient ring ℚ[H] ⊕ ℚ[H]·d.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::hpoly::HPoly;
use super::rational::Rational;

/// A series coefficient a(H) + b(H)·d, where H stands for h³ and d for D/C.
///
/// The ring is truncated at degree one in d: every product formed by the
/// pipeline has at least one d-free factor (the second-variation sources
/// are linear in D and all solution series are d-free), so a d·d product
/// can only arise from a logic error and is rejected loudly rather than
/// silently widening the ring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamCoeff {
    /// The d-free part.
    pub a: HPoly,
    /// The coefficient of d.
    pub b: HPoly,
}

impl ParamCoeff {
    pub fn zero() -> Self {
        ParamCoeff {
            a: HPoly::zero(),
            b: HPoly::zero(),
        }
    }

    pub fn one() -> Self {
        ParamCoeff {
            a: HPoly::one(),
            b: HPoly::zero(),
        }
    }

    /// A d-free coefficient.
    pub fn from_a(a: HPoly) -> Self {
        ParamCoeff {
            a,
            b: HPoly::zero(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        ParamCoeff::from_a(HPoly::constant(c))
    }

    /// The coefficient b(H)·d.
    pub fn d_times(b: HPoly) -> Self {
        ParamCoeff {
            a: HPoly::zero(),
            b,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_d_free(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ParamCoeff {
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }

    /// Evaluates at concrete rational values of H = h³ and d = D/C.
    pub fn eval(&self, h_cubed: &Rational, d: &Rational) -> Rational {
        self.a.eval(h_cubed) + self.b.eval(h_cubed) * d
    }
}

impl Add for &ParamCoeff {
    type Output = ParamCoeff;
    fn add(self, rhs: &ParamCoeff) -> ParamCoeff {
        ParamCoeff {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &ParamCoeff {
    type Output = ParamCoeff;
    fn sub(self, rhs: &ParamCoeff) -> ParamCoeff {
        ParamCoeff {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for &ParamCoeff {
    type Output = ParamCoeff;
    fn neg(self) -> ParamCoeff {
        ParamCoeff {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Mul for &ParamCoeff {
    type Output = ParamCoeff;

    /// (a₁ + b₁d)(a₂ + b₂d) with the linear-in-d truncation.
    ///
    /// # Panics
    ///
    /// Panics when both factors carry a d-part: d² lies outside the ring.
    fn mul(self, rhs: &ParamCoeff) -> ParamCoeff {
        assert!(
            self.b.is_zero() || rhs.b.is_zero(),
            "d*d product escapes the linear-in-d coefficient ring: ({}) * ({})",
            self,
            rhs
        );
        ParamCoeff {
            a: &self.a * &rhs.a,
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl fmt::Display for ParamCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*d", self.b),
            (false, false) => write!(f, "{} + ({})*d", self.a, self.b),
        }
    }
}
