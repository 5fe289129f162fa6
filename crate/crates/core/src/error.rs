//! Error type shared by every module of the crate.

use crate::exactnum::Rational;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The analysis does not apply to the given parameters (C = 0 has no
    /// invariant manifold of the required form; h = 0 degenerates it).
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// A Frobenius recurrence hit a resonance with nonzero obstruction,
    /// so the requested power series does not exist (a logarithm is
    /// required). Carries the step and the exact obstruction value.
    #[error("logarithmic solution required: resonance at step {step} with obstruction {obstruction}")]
    LogRequired { step: usize, obstruction: String },

    /// Series work would exceed the configured truncation cap.
    #[error("truncation cap exceeded: {needed} steps needed, cap is {cap}")]
    TruncationCap { needed: usize, cap: usize },

    /// A residue was requested from a series whose truncation order does
    /// not reach past x⁻¹, so the coefficient is not yet exact.
    #[error("series truncated at exponent {truncation} cannot produce an exact residue at -1")]
    InsufficientTruncation { truncation: Rational },

    /// Indicial roots are irrational; the rational Frobenius pipeline
    /// does not apply.
    #[error("indicial discriminant {discriminant} is not a rational square")]
    NonRationalExponents { discriminant: Rational },

    /// An operation that requires a Wronskian-1 fundamental pair was given
    /// a non-normalized one.
    #[error("fundamental pair is not Wronskian-normalized (W = {wronskian})")]
    NotNormalized { wronskian: String },

    /// Invalid parameters for an operation (side conditions, malformed
    /// windows, bad tolerances, seeds off the energy curve, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Adaptive integration drove the step size below representable range,
    /// typically near a singularity or a finite-time blowup.
    #[error("step size underflow at t = {location}")]
    StepUnderflow { location: f64 },

    /// Adaptive integration exhausted its step budget.
    #[error("integration exceeded {max_steps} steps")]
    StepsExhausted { max_steps: usize },

    /// Malformed input text: a bad exact-number literal, a missing or
    /// unreadable field, or an out-of-grammar token. Carries the full
    /// message since parse contexts vary (flags, files, environment).
    #[error("parse error: {0}")]
    Parse(String),
}
