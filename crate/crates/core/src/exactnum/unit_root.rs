//! Root-of-unity exponents and triangular monodromy generators.

use std::fmt;

use num_traits::Zero;

use super::rational::Rational;
use super::scalar::ExactScalar;

/// The exponent θ of a root of unity e^{θπi}.
///
/// Rational exponents are normalized into [0, 2); products add exponents
/// and the inverse negates. Irrational (surd) exponents are kept symbolic
/// with no modular normalization, since e^{θπi} is then not a root of
/// unity and no period applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRootExp {
    exponent: ExactScalar,
}

impl UnitRootExp {
    pub fn new(exponent: ExactScalar) -> Self {
        UnitRootExp {
            exponent: normalize(exponent),
        }
    }

    pub fn from_rational(e: Rational) -> Self {
        UnitRootExp::new(ExactScalar::from_rational(e))
    }

    pub fn exponent(&self) -> &ExactScalar {
        &self.exponent
    }

    pub fn mul(&self, rhs: &UnitRootExp) -> UnitRootExp {
        UnitRootExp::new(&self.exponent + &rhs.exponent)
    }

    pub fn inverse(&self) -> UnitRootExp {
        UnitRootExp::new(-&self.exponent)
    }

    /// Whether the value is exactly 1 (exponent ≡ 0 mod 2).
    pub fn is_one(&self) -> bool {
        self.exponent
            .as_rational()
            .is_some_and(|e| e.is_zero())
    }

    /// Whether the square is 1, i.e. the value is ±1 (exponent ≡ 0 or 1).
    ///
    /// An irrational exponent never gives u² = 1.
    pub fn square_is_one(&self) -> bool {
        self.exponent
            .as_rational()
            .is_some_and(|e| e.is_zero() || *e == Rational::from_integer(1.into()))
    }
}

fn normalize(exponent: ExactScalar) -> ExactScalar {
    match exponent.as_rational() {
        Some(e) => {
            let two = Rational::from_integer(2.into());
            let reduced = e - (e / &two).floor() * &two;
            ExactScalar::from_rational(reduced)
        }
        None => exponent,
    }
}

impl fmt::Display for UnitRootExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{{({})*pi*i}}", self.exponent)
    }
}

/// The off-diagonal entry of a local monodromy generator.
///
/// The generators' off-diagonal constants are unspecified complex numbers;
/// they stay symbolic here, optionally with a declared nonzero constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OffDiagonal {
    Zero,
    Symbolic { name: String, nonzero: bool },
}

impl OffDiagonal {
    pub fn symbol(name: &str) -> Self {
        OffDiagonal::Symbolic {
            name: name.to_string(),
            nonzero: false,
        }
    }

    pub fn nonzero_symbol(name: &str) -> Self {
        OffDiagonal::Symbolic {
            name: name.to_string(),
            nonzero: true,
        }
    }

    fn display_name(&self) -> &str {
        match self {
            OffDiagonal::Zero => "0",
            OffDiagonal::Symbolic { name, .. } => name,
        }
    }
}

/// An upper-triangular 2×2 monodromy generator with unit determinant:
///
/// ```text
/// ( u   α )
/// ( 0  u⁻¹ )
/// ```
///
/// The determinant's exponent is 0 by construction (the second diagonal
/// entry is the inverse of the first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMonodromy {
    diagonal: (UnitRootExp, UnitRootExp),
    off_diagonal: OffDiagonal,
}

impl TriangularMonodromy {
    /// Builds the generator with diagonal (e^{eπi}, e^{−eπi}).
    pub fn from_exponent(e: ExactScalar, off_diagonal: OffDiagonal) -> Self {
        let u = UnitRootExp::new(e);
        let inv = u.inverse();
        TriangularMonodromy {
            diagonal: (u, inv),
            off_diagonal,
        }
    }

    pub fn diagonal(&self) -> &(UnitRootExp, UnitRootExp) {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &OffDiagonal {
        &self.off_diagonal
    }
}

/// The exact commutation condition for a pair of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommutativityReport {
    AlwaysCommute,
    /// The required identity involves only symbols constrained nonzero and
    /// a nonvanishing unit-root factor, so it cannot hold.
    NeverCommute { obstruction: String },
    Conditional { condition: Condition },
}

/// The polynomial condition on the off-diagonal symbols under which the
/// two generators commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// (u − u⁻¹)(α₂ − α₁) = 0 with u² ≠ 1, i.e. α₁ = α₂.
    OffDiagonalsEqual,
    /// One off-diagonal symbol must vanish.
    OffDiagonalVanishes { name: String },
    /// The general balance β(u − u⁻¹) = α(v − v⁻¹) with distinct
    /// nonvanishing sine factors.
    SineBalance { equation: String },
}

/// Classifies when M₁M₂ = M₂M₁ for the upper-triangular generators
///
/// ```text
/// M₁ = (u, α; 0, u⁻¹),  M₂ = (v, β; 0, v⁻¹).
/// ```
///
/// The products agree except in the upper-right entry, whose difference is
/// β(u − u⁻¹) − α(v − v⁻¹); the report is the exact satisfiability
/// classification of that identity over the symbolic off-diagonals.
pub fn unit_root_commutator(
    m1: &TriangularMonodromy,
    m2: &TriangularMonodromy,
) -> CommutativityReport {
    let u = &m1.diagonal.0;
    let v = &m2.diagonal.0;
    let alpha = &m1.off_diagonal;
    let beta = &m2.off_diagonal;

    // β·(u − u⁻¹): identically zero iff β = 0 or u² = 1.
    let term_beta_alive = !matches!(beta, OffDiagonal::Zero) && !u.square_is_one();
    let term_alpha_alive = !matches!(alpha, OffDiagonal::Zero) && !v.square_is_one();

    match (term_beta_alive, term_alpha_alive) {
        (false, false) => CommutativityReport::AlwaysCommute,
        (true, false) => single_term_condition(beta, u),
        (false, true) => single_term_condition(alpha, v),
        (true, true) => {
            if equal_sine_factors(u, v) {
                CommutativityReport::Conditional {
                    condition: Condition::OffDiagonalsEqual,
                }
            } else {
                CommutativityReport::Conditional {
                    condition: Condition::SineBalance {
                        equation: format!(
                            "{}*({} - {}) = {}*({} - {})",
                            beta.display_name(),
                            u,
                            u.inverse(),
                            alpha.display_name(),
                            v,
                            v.inverse()
                        ),
                    },
                }
            }
        }
    }
}

fn single_term_condition(off: &OffDiagonal, root: &UnitRootExp) -> CommutativityReport {
    match off {
        OffDiagonal::Symbolic { name, nonzero } => {
            if *nonzero {
                CommutativityReport::NeverCommute {
                    obstruction: format!(
                        "{} is constrained nonzero but {}² ≠ 1 forces {} = 0",
                        name, root, name
                    ),
                }
            } else {
                CommutativityReport::Conditional {
                    condition: Condition::OffDiagonalVanishes { name: name.clone() },
                }
            }
        }
        OffDiagonal::Zero => unreachable!("a live term has a symbolic off-diagonal"),
    }
}

/// Whether u − u⁻¹ = v − v⁻¹, i.e. sin(πθ_u) = sin(πθ_v): the exponents
/// agree mod 2 or sum to 1 mod 2.
fn equal_sine_factors(u: &UnitRootExp, v: &UnitRootExp) -> bool {
    let eu = u.exponent();
    let ev = v.exponent();
    if eu == ev {
        return true;
    }
    match (eu.as_rational(), ev.as_rational()) {
        (Some(a), Some(b)) => {
            let two = Rational::from_integer(2.into());
            let diff = a - b;
            let sum_minus_one = a + b - Rational::from_integer(1.into());
            (&diff / &two).is_integer() || (&sum_minus_one / &two).is_integer()
        }
        // Distinct symbolic surd exponents with compatible radicands could
        // in principle satisfy a + b ≡ 1 (mod 2); check when subtraction
        // is defined, otherwise they are unrelated.
        _ => {
            if eu.radicand() == ev.radicand() {
                let sum = eu + ev;
                sum.as_rational().is_some_and(|s| {
                    let two = Rational::from_integer(2.into());
                    ((s - Rational::from_integer(1.into())) / two).is_integer()
                })
            } else {
                false
            }
        }
    }
}
