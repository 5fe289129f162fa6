//! Exact scalar arithmetic underpinning every symbolic computation.
//!
//! Layers, from the bottom up:
//!
//! - [`Rational`]: arbitrary-precision reduced fractions (re-exported from
//!   `num-rational`), plus [`rational_sqrt`] for exact square-root
//!   classification.
//! - [`ExactScalar`]: elements a + b·√R of a formal quadratic extension of
//!   ℚ, closed under the arithmetic the Legendre reduction needs. R < 0 is
//!   permitted and represents the imaginary value i·√|R|.
//! - [`QuadraticSurd`]: the presentation ±√(m/n) of a pure square root
//!   with its rationality classification (used for τ).
//! - [`UnitRootExp`]: exponents θ of roots of unity e^{θπi}, normalized
//!   modulo 2 when rational; diagonals of local monodromy generators.
//! - [`HPoly`] and [`ParamCoeff`]: the coefficient ring ℚ[H] ⊕ ℚ[H]·d in
//!   which all series coefficients live (H stands for h³ and d for D/C).
//!   The ring is deliberately truncated at degree one in d; see
//!   [`ParamCoeff::mul`].
//! - [`classify_tau`]: the resonance classification of
//!   τ = ±√((2A+4C)/(9C)), the single parameter combination governing the
//!   ξ₁₁ variational equation.

mod hpoly;
mod param_coeff;
mod rational;
mod resonance;
mod scalar;
mod unit_root;

pub use hpoly::HPoly;
pub use param_coeff::ParamCoeff;
pub use rational::{int, rat, rational_sqrt, Rational};
pub use resonance::{classify_tau, Family, Realization, ResonanceClass, TauStatus};
pub use scalar::{ExactScalar, QuadraticSurd};
pub use unit_root::{
    unit_root_commutator, CommutativityReport, OffDiagonal, TriangularMonodromy, UnitRootExp,
};
