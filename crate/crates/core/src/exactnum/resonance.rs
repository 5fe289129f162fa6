//! Resonance classification of τ = ±√((2A+4C)/(9C)).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rational::{int, rational_sqrt, Rational};
use super::scalar::QuadraticSurd;
use crate::error::{Error, Result};

/// Rationality status of τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauStatus {
    /// τ² is a perfect rational square; carries |τ|.
    Rational(Rational),
    /// τ² > 0 but not a rational square.
    Irrational,
    /// τ² < 0: τ is purely imaginary. Classified with the irrational
    /// outcomes for decision purposes (a non-real τ excludes the rational
    /// resonance condition) but flagged distinctly here.
    NonReal,
}

/// The two resonant families of τ values.
///
/// They are exchanged by the sign flip τ → −τ via −(2k+2/3) = −2(k+1)+4/3,
/// which is why downstream decisions take the union over both sign
/// branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// τ = −2k + 4/3.
    FourThirds,
    /// τ = 2k + 2/3.
    TwoThirds,
}

impl Family {
    /// The τ value this family assigns to the integer k.
    pub fn tau(&self, k: i64) -> Rational {
        match self {
            Family::FourThirds => int(-2 * k) + Rational::new(4.into(), 3.into()),
            Family::TwoThirds => int(2 * k) + Rational::new(2.into(), 3.into()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FourThirds => write!(f, "-2k+4/3"),
            Family::TwoThirds => write!(f, "2k+2/3"),
        }
    }
}

/// One way a sign branch of τ lands in a resonant family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// Which sign branch of ±|τ| realizes the family membership.
    pub sign: i8,
    pub family: Family,
    pub k: BigInt,
}

/// Everything the decision layer needs to know about τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceClass {
    pub tau_squared: Rational,
    /// The presentation ±√(τ²) when τ² ≥ 0 (the + branch is stored; both
    /// signs are always considered downstream).
    pub tau: Option<QuadraticSurd>,
    pub status: TauStatus,
    /// τ is resonant iff some sign branch lies in a family, i.e. in
    /// lowest terms |τ| = a/3 with a ≡ ±2 (mod 6).
    pub resonant: bool,
    pub realizations: Vec<Realization>,
}

impl ResonanceClass {
    /// The rational value of |τ|, when it exists.
    pub fn tau_abs(&self) -> Option<&Rational> {
        match &self.status {
            TauStatus::Rational(t) => Some(t),
            _ => None,
        }
    }
}

/// Classifies τ² = (2A+4C)/(9C) for the potential coefficients A, C.
///
/// # Errors
///
/// `OutOfScope` when C = 0 (the analysis requires the Cz⁶ term).
pub fn classify_tau(a: &Rational, c: &Rational) -> Result<ResonanceClass> {
    if c.is_zero() {
        return Err(Error::OutOfScope(
            "C = 0: the invariant-manifold analysis requires C != 0".into(),
        ));
    }
    let tau_squared = (int(2) * a + int(4) * c) / (int(9) * c);
    let (status, tau) = if tau_squared.is_negative() {
        (TauStatus::NonReal, None)
    } else {
        match rational_sqrt(&tau_squared) {
            Some(t) => (
                TauStatus::Rational(t),
                Some(QuadraticSurd::new(1, tau_squared.clone())),
            ),
            None => (
                TauStatus::Irrational,
                Some(QuadraticSurd::new(1, tau_squared.clone())),
            ),
        }
    };
    let mut realizations = Vec::new();
    if let TauStatus::Rational(t) = &status {
        for sign in [1i8, -1] {
            if sign == -1 && t.is_zero() {
                continue;
            }
            let branch = if sign == 1 { t.clone() } else { -t.clone() };
            realizations.extend(realize(&branch, sign));
        }
    }
    Ok(ResonanceClass {
        tau_squared,
        tau,
        status,
        resonant: !realizations.is_empty(),
        realizations,
    })
}

/// Family membership of one concrete rational τ value.
fn realize(tau: &Rational, sign: i8) -> Option<Realization> {
    if *tau.denom() != BigInt::from(3) {
        return None;
    }
    let n = tau.numer();
    let rem = n.mod_floor(&BigInt::from(6));
    if rem == BigInt::from(2) {
        // τ = n/3 = 2k + 2/3 with k = (n-2)/6
        Some(Realization {
            sign,
            family: Family::TwoThirds,
            k: (n - BigInt::from(2)) / BigInt::from(6),
        })
    } else if rem == BigInt::from(4) {
        // τ = n/3 = -2k + 4/3 with k = (4-n)/6
        Some(Realization {
            sign,
            family: Family::FourThirds,
            k: (BigInt::from(4) - n) / BigInt::from(6),
        })
    } else {
        None
    }
}
