//! The terminal decision procedure.
//!
//! For C ≠ 0 the verdict follows from the classification of
//! τ² = (2A+4C)/(9C) alone:
//!
//! - τ non-real or irrational: the Legendre parameter p = (−1±τ)/2 is
//!   non-rational, no solvable case can be hit, the system is
//!   non-integrable (rule i).
//! - τ rational but outside the resonant families ±(2k±2/3): p misses
//!   every solvable window ±(k − 1/6) − 1/2, again non-integrable
//!   (rule ii).
//! - τ in a resonant family with |τ| ≠ 2/3: the second variational
//!   equation carries a logarithm for some realized k ≠ 1,
//!   non-integrable (rule iii).
//! - |τ| = 2/3 (equivalently A = 0): the obstructions all carry the
//!   factor d = D/C, so D ≠ 0 is non-integrable (rule iv) and D = 0 is
//!   inconclusive.
//!
//! The sign branches τ and −τ are always considered together; that is
//! what pulls values like τ = 8/3 (k = 1 in one family) into rule iii
//! through k = 2 in the other.
//!
//! Every verdict carries an ordered evidence trace. An optional live
//! cross-check recomputes residue tables for the realized k values and
//! records agreement or disagreement without overriding the rule table.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::exactnum::{classify_tau, Family, Rational, ResonanceClass, TauStatus};
use crate::frobenius::DEFAULT_STEP_CAP;
use crate::model::PotentialParams;
use crate::obstruction::branch_report_capped;
use crate::variational::reduce_to_legendre;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// What the analysis concludes about meromorphic integrability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    NonIntegrable,
    /// The parameters escape every listed obstruction (A = 0, D = 0).
    Inconclusive,
    /// The analysis does not apply (C = 0: no invariant plane of this
    /// form).
    OutOfScope,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Conclusion::NonIntegrable => "non-integrable",
            Conclusion::Inconclusive => "inconclusive",
            Conclusion::OutOfScope => "out of scope",
        };
        f.write_str(s)
    }
}

/// Which item of the non-integrability theorem fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// τ irrational (or non-real).
    ThV6I,
    /// τ rational, non-resonant.
    ThV6II,
    /// τ resonant with a realized k ≠ 1.
    ThV6III,
    /// |τ| = 2/3 and D ≠ 0.
    ThV6IV,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::ThV6I => "ThV6-i",
            Rule::ThV6II => "ThV6-ii",
            Rule::ThV6III => "ThV6-iii",
            Rule::ThV6IV => "ThV6-iv",
        };
        f.write_str(s)
    }
}

/// One step of evidence in the order it was established.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub stage: &'static str,
    pub detail: String,
}

/// The decision together with its evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub conclusion: Conclusion,
    /// Present exactly when the conclusion is NonIntegrable.
    pub rule: Option<Rule>,
    /// Never empty.
    pub trace: Vec<TraceEntry>,
}

impl Verdict {
    fn close(conclusion: Conclusion, rule: Option<Rule>, trace: Vec<TraceEntry>) -> Verdict {
        debug_assert_eq!(rule.is_some(), conclusion == Conclusion::NonIntegrable);
        debug_assert!(!trace.is_empty());
        Verdict {
            conclusion,
            rule,
            trace,
        }
    }

    /// One line suitable for logs: conclusion, rule, leading evidence.
    pub fn summary(&self) -> String {
        match self.rule {
            Some(rule) => format!("{} by {}", self.conclusion, rule),
            None => self.conclusion.to_string(),
        }
    }
}

/// Knobs for [`decide_with`]; the default runs the pure rule table.
#[derive(Debug, Clone)]
pub struct DecideOptions {
    /// Recompute residue tables for the realized k values and record
    /// agreement with the rule-table conclusion in the trace.
    pub live_residue_check: bool,
    /// Step cap handed to the residue computations.
    pub step_cap: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            live_residue_check: false,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

/// Decides non-integrability for one parameter point.
pub fn decide(params: &PotentialParams) -> Verdict {
    decide_with(params, &DecideOptions::default())
}

/// [`decide`] with explicit options.
pub fn decide_with(params: &PotentialParams, options: &DecideOptions) -> Verdict {
    let mut trace = Vec::new();
    let class = match classify_tau(&params.a, &params.c) {
        Err(err) => {
            trace.push(TraceEntry {
                stage: "scope",
                detail: err.to_string(),
            });
            return Verdict::close(Conclusion::OutOfScope, None, trace);
        }
        Ok(class) => class,
    };
    trace.push(TraceEntry {
        stage: "tau",
        detail: describe_class(&class),
    });
    match reduce_to_legendre(params) {
        Ok(reduction) => {
            for branch in &reduction.branches {
                let status = match (&branch.params, &branch.note) {
                    (Some(_), _) => "admissible".to_string(),
                    (None, Some(note)) => format!("rejected ({})", note),
                    (None, None) => "rejected".to_string(),
                };
                trace.push(TraceEntry {
                    stage: "legendre",
                    detail: format!(
                        "branch p = (-1{}tau)/2 = {}: {}",
                        if branch.sign >= 0 { "+" } else { "-" },
                        branch.p,
                        status
                    ),
                });
            }
        }
        Err(err) => trace.push(TraceEntry {
            stage: "legendre",
            detail: format!("reduction unavailable: {}", err),
        }),
    }

    match &class.status {
        TauStatus::NonReal => {
            trace.push(TraceEntry {
                stage: "rule",
                detail: "tau^2 < 0: tau is non-real, p = (-1+tau)/2 never hits a solvable case"
                    .into(),
            });
            Verdict::close(Conclusion::NonIntegrable, Some(Rule::ThV6I), trace)
        }
        TauStatus::Irrational => {
            trace.push(TraceEntry {
                stage: "rule",
                detail: format!(
                    "tau = sqrt({}) is irrational, p = (-1+tau)/2 never hits a solvable case",
                    class.tau_squared
                ),
            });
            Verdict::close(Conclusion::NonIntegrable, Some(Rule::ThV6I), trace)
        }
        TauStatus::Rational(tau_abs) => {
            decide_rational(params, &class, tau_abs, options, trace)
        }
    }
}

fn decide_rational(
    params: &PotentialParams,
    class: &ResonanceClass,
    tau_abs: &Rational,
    options: &DecideOptions,
    mut trace: Vec<TraceEntry>,
) -> Verdict {
    if !class.resonant {
        trace.push(TraceEntry {
            stage: "rule",
            detail: format!(
                "|tau| = {} lies in no resonant family +/-(2k+2/3), +/-(2k-2/3): \
                 p is rational but misses every solvable window",
                tau_abs
            ),
        });
        return Verdict::close(Conclusion::NonIntegrable, Some(Rule::ThV6II), trace);
    }

    let realized: Vec<(i8, Family, i64)> = class
        .realizations
        .iter()
        .filter_map(|r| r.k.to_i64().map(|k| (r.sign, r.family, k)))
        .collect();
    trace.push(TraceEntry {
        stage: "resonance",
        detail: realized
            .iter()
            .map(|(sign, family, k)| {
                format!("{}{} realizes {} at k = {}", if *sign >= 0 { "+" } else { "-" }, tau_abs, family, k)
            })
            .collect::<Vec<_>>()
            .join("; "),
    });

    let a_zero = *tau_abs == Rational::new(2.into(), 3.into());
    let verdict = if a_zero {
        if params.d.is_zero() {
            trace.push(TraceEntry {
                stage: "rule",
                detail: "|tau| = 2/3 (A = 0) and D = 0: every listed obstruction vanishes".into(),
            });
            Verdict::close(Conclusion::Inconclusive, None, trace.clone())
        } else {
            trace.push(TraceEntry {
                stage: "rule",
                detail: format!(
                    "|tau| = 2/3 (A = 0) and D = {} != 0: the d-conditional obstruction applies",
                    params.d
                ),
            });
            Verdict::close(Conclusion::NonIntegrable, Some(Rule::ThV6IV), trace.clone())
        }
    } else {
        let witness = realized
            .iter()
            .find(|(_, _, k)| *k != 1)
            .expect("a resonant |tau| != 2/3 realizes two distinct k, not both 1");
        trace.push(TraceEntry {
            stage: "rule",
            detail: format!(
                "realized k = {} != 1 in family {}: logarithmic obstruction",
                witness.2, witness.1
            ),
        });
        Verdict::close(Conclusion::NonIntegrable, Some(Rule::ThV6III), trace.clone())
    };

    if !options.live_residue_check {
        return verdict;
    }
    let mut trace = verdict.trace;
    for (_, family, k) in &realized {
        match branch_report_capped(*k, *family, options.step_cap) {
            Ok(report) => {
                // rule iii expects an unconditional obstruction at the
                // realized branch; rule iv expects a d-conditional one
                let expected = if a_zero {
                    report.nonzero_requires_d
                } else {
                    report.any_nonzero_without_d
                };
                trace.push(TraceEntry {
                    stage: "residue-check",
                    detail: format!(
                        "k = {}, family {}: any_nonzero_without_d = {}, nonzero_requires_d = {}; {} the rule table",
                        k,
                        family,
                        report.any_nonzero_without_d,
                        report.nonzero_requires_d,
                        if expected { "agrees with" } else { "disagrees with" }
                    ),
                });
            }
            Err(err) => trace.push(TraceEntry {
                stage: "residue-check",
                detail: format!("k = {}, family {}: skipped ({})", k, family, err),
            }),
        }
    }
    Verdict {
        trace,
        ..verdict
    }
}

fn describe_class(class: &ResonanceClass) -> String {
    let status = match &class.status {
        TauStatus::Rational(t) => format!("rational, |tau| = {}", t),
        TauStatus::Irrational => "irrational".to_string(),
        TauStatus::NonReal => "non-real".to_string(),
    };
    format!(
        "tau^2 = (2A+4C)/(9C) = {}; {}; resonant: {}",
        class.tau_squared, status, class.resonant
    )
}

/// Sequential batch decision, always available.
pub fn decide_batch_seq(list: &[PotentialParams]) -> Vec<Verdict> {
    list.iter().map(decide).collect()
}

/// Data-parallel batch decision over the rayon pool.
#[cfg(feature = "parallel")]
pub fn decide_batch_par(list: &[PotentialParams]) -> Vec<Verdict> {
    list.par_iter().map(decide).collect()
}

/// Batch entry point: parallel when the `parallel` feature is on.
pub fn decide_batch(list: &[PotentialParams]) -> Vec<Verdict> {
    #[cfg(feature = "parallel")]
    {
        decide_batch_par(list)
    }
    #[cfg(not(feature = "parallel"))]
    {
        decide_batch_seq(list)
    }
}
