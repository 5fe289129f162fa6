//! Token parsing for the command line: exact rationals, quadratic surds,
//! and validation windows.
//!
//! Model parameters are accepted only as exact rational strings ("3/4",
//! "-7", "16"). Decimal notation is rejected on purpose: a decimal would
//! silently commit the caller to a nearby rational and the verdicts here
//! are discontinuous in the parameters. Floating point shows up only
//! where it belongs, in the numeric validation window and tolerances.

use sextic_core::exactnum::{rat, ExactScalar, Rational};
use sextic_core::{Error, Result};

/// Parses an exact rational such as "3/4" or "-7".
pub fn rational(token: &str) -> Result<Rational> {
    token.trim().parse().map_err(|_| {
        Error::Parse(format!(
            "expected an exact rational like 3/4 or -7, got '{token}'"
        ))
    })
}

/// Parses a rational or a surd of the form "sqrt(m/n)" or "-sqrt(m/n)".
///
/// Negative radicands are allowed and produce the purely imaginary root,
/// matching the reach of the exact scalar type.
pub fn rational_or_surd(token: &str) -> Result<ExactScalar> {
    let s = token.trim();
    let (negated, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    if let Some(inner) = body.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let root = ExactScalar::sqrt(rational(inner)?);
        return Ok(if negated { root.scale(&rat(-1, 1)) } else { root });
    }
    rational(s).map(ExactScalar::from_rational)
}

/// Parses a window "lo:hi" of positive floats, as in "0.01:0.1".
pub fn window(token: &str) -> Result<(f64, f64)> {
    let bad = || {
        Error::Parse(format!(
            "expected a window like 0.01:0.1, got '{token}'"
        ))
    };
    let (lo, hi) = token.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    Ok((lo, hi))
}
