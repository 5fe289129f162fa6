//! Exact-arithmetic non-integrability analysis for the Hamiltonian family
//!
//! ```text
//! H = ½(p_r² + p_z²) + r⁶ + A·r²z⁴ + D·r³z³ + B·r⁴z² + C·z⁶
//! ```
//!
//! The toolkit decides meromorphic non-integrability along the invariant
//! plane r = p_r = 0 by a chain of exact obstructions:
//!
//! 1. [`exactnum`]: big-rational scalars, quadratic surds, root-of-unity
//!    exponents, and the coefficient ring ℚ[H] ⊕ ℚ[H]·d (H = h³, d = D/C).
//! 2. [`legendre`]: solvability tests for the associated Legendre equation
//!    that the first variational equation reduces to (q = 1/6,
//!    p = (−1±τ)/2 with τ² = (2A+4C)/(9C)).
//! 3. [`variational`]: the Fuchsian operators of the variational equations,
//!    chart changes w = 1/x, and the normal form ζ'' = r(x)ζ.
//! 4. [`frobenius`]: exact Frobenius series at the regular singular point
//!    x = 0, with Wronskian-normalized fundamental pairs.
//! 5. [`obstruction`]: residues (coefficients of x⁻¹) of the components of
//!    X⁻¹f₂, whose non-vanishing forces logarithms in the second
//!    variational equation.
//! 6. [`engine`]: the terminal decision procedure with an evidence trace.
//! 7. [`numeric`]: an independent extended-precision ODE oracle validating
//!    the symbolic series, Wronskian constancy, and energy conservation.
//!
//! All symbolic computation is exact: no floating point enters any verdict.
//! The numeric module exists purely as a cross-check.
//!
//! With the default `parallel` feature, batch entry points (residue sweeps,
//! verdict batches) distribute across threads via rayon; disabling the
//! feature falls back to equivalent sequential loops.

pub mod engine;
pub mod error;
pub mod exactnum;
pub mod frobenius;
pub mod legendre;
pub mod model;
pub mod numeric;
pub mod obstruction;
pub mod variational;

pub use error::{Error, Result};
