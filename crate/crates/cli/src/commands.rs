//! One handler per subcommand. Each returns the assembled report and the
//! process exit code; main only prints and exits.
//!
//! Exit codes are part of the contract: 0 success, 2 out-of-scope input,
//! 3 parse error, 4 truncation or step cap exceeded, 1 anything else.
//! Out of scope is special-cased here because it is a conclusion, not a
//! failure: the report is still printed in full.

use std::path::Path;

use serde_json::{json, Value};
use sextic_core::engine::{self, Conclusion, DecideOptions};
use sextic_core::exactnum::{int, Family, Rational};
use sextic_core::frobenius::{normalize_wronskian, solve_pair_capped};
use sextic_core::legendre as leg;
use sextic_core::model::PotentialParams;
use sextic_core::numeric::{validate_pair, IntegrationConfig};
use sextic_core::obstruction::{self, BranchReport};
use sextic_core::variational::{normal_form, ve1_infinity_xi11, ve1_infinity_xi12};
use sextic_core::{Error, Result};

use crate::parse;
use crate::report::{envelope, Trace};

/// Which first-level equation a series is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesEq {
    Ve1Xi12,
    Ve1Xi11,
}

/// Which normal-form coefficient a validation run integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ValidateEq {
    R2,
    R1,
}

/// Residue branch selector mirroring [`Family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    FourThirds,
    TwoThirds,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::FourThirds => Family::FourThirds,
            FamilyArg::TwoThirds => Family::TwoThirds,
        }
    }
}

/// Decides integrability for exact rational parameters.
pub fn check(
    a: &str,
    b: &str,
    c: &str,
    d: &str,
    live_residue_check: bool,
    step_cap: usize,
) -> Result<(Value, i32)> {
    let a = parse::rational(a)?;
    let b = parse::rational(b)?;
    let c = parse::rational(c)?;
    let d = parse::rational(d)?;
    let params = PotentialParams::new(a.clone(), b.clone(), c.clone(), d.clone(), int(1));
    let options = DecideOptions {
        live_residue_check,
        step_cap,
    };
    let verdict = engine::decide_with(&params, &options);

    let inputs = json!({
        "A": a.to_string(),
        "B": b.to_string(),
        "C": c.to_string(),
        "D": d.to_string(),
        "liveResidueCheck": live_residue_check,
        "stepCap": step_cap,
    });
    let body = json!({
        "conclusion": verdict.conclusion.to_string(),
        "rule": verdict.rule.map(|r| r.to_string()),
        "summary": verdict.summary(),
    });
    let trace: Trace = verdict
        .trace
        .iter()
        .map(|t| (t.stage.to_string(), t.detail.clone()))
        .collect();
    let code = if verdict.conclusion == Conclusion::OutOfScope {
        2
    } else {
        0
    };
    Ok((envelope("check", inputs, "verdict", body, trace), code))
}

/// Reports exponents, monodromy diagonals, and the solvability verdict
/// for an associated Legendre equation.
pub fn legendre(p: &str, q: &str) -> Result<(Value, i32)> {
    let p = parse::rational_or_surd(p)?;
    let q = parse::rational_or_surd(q)?;
    let params = leg::LegendreParams::new(p.clone(), q.clone())?;
    let exps = leg::exponents(&params);
    let generators = leg::monodromy_generators(&params);
    let verdict = leg::solvability_verdict(&params);

    fn pair<T: std::fmt::Display>(t: &(T, T)) -> Value {
        json!([t.0.to_string(), t.1.to_string()])
    }
    let diagonals: Vec<Value> = generators
        .iter()
        .map(|g| pair(g.diagonal()))
        .collect();
    let inputs = json!({ "p": p.to_string(), "q": q.to_string() });
    let body = json!({
        "exponents": {
            "atPlusOne": pair(&exps.at_plus_one),
            "atMinusOne": pair(&exps.at_minus_one),
            "atInfinity": pair(&exps.at_infinity),
        },
        "monodromyDiagonals": diagonals,
        "conclusion": verdict.conclusion.to_string(),
        "firedRules": verdict.fired_rules.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    });
    let trace: Trace = verdict
        .evidence
        .iter()
        .map(|e| {
            let held = if e.held { "held" } else { "not held" };
            (e.rule.to_string(), format!("{held}: {}", e.witness))
        })
        .collect();
    Ok((envelope("legendre", inputs, "analysis", body, trace), 0))
}

/// Prints the per-component residue table for one k, both branches or a
/// selected one, optionally evaluated at a concrete rational h.
pub fn residues(
    k: i64,
    family: Option<FamilyArg>,
    h: Option<&str>,
    step_cap: usize,
) -> Result<(Value, i32)> {
    let h = h.map(parse::rational).transpose()?;
    let h_cubed = h.as_ref().map(|h| h * h * h);

    let (branches, any_without_d, requires_d) = match family {
        Some(arg) => {
            let b = obstruction::branch_report_capped(k, arg.family(), step_cap)?;
            let flags = (b.any_nonzero_without_d, b.nonzero_requires_d);
            (vec![b], flags.0, flags.1)
        }
        None => {
            let table = obstruction::residue_table_capped(k, step_cap)?;
            (
                table.branches,
                table.any_nonzero_without_d,
                table.nonzero_requires_d,
            )
        }
    };

    let mut inputs = json!({ "k": k, "stepCap": step_cap });
    if let Some(h) = &h {
        inputs["h"] = json!(h.to_string());
    }
    if let Some(arg) = family {
        inputs["family"] = json!(arg.family().to_string());
    }
    let body = json!({
        "branches": branches.iter().map(|b| branch_json(b, h_cubed.as_ref())).collect::<Vec<_>>(),
        "anyNonzeroWithoutD": any_without_d,
        "nonzeroRequiresD": requires_d,
    });
    let trace: Trace = branches
        .iter()
        .map(|b| {
            (
                "residues".to_string(),
                format!(
                    "family {}: tau = {}, anyNonzeroWithoutD = {}, nonzeroRequiresD = {}",
                    b.family, b.tau, b.any_nonzero_without_d, b.nonzero_requires_d
                ),
            )
        })
        .collect();
    Ok((envelope("residues", inputs, "analysis", body, trace), 0))
}

fn branch_json(branch: &BranchReport, h_cubed: Option<&Rational>) -> Value {
    let components: Vec<Value> = branch
        .per_component
        .iter()
        .map(|(selector, residue)| {
            let mut entry = json!({
                "component": selector.to_string(),
                "residue": residue.to_string(),
            });
            if let Some(h3) = h_cubed {
                let d_free = residue.eval(h3, &int(0));
                let d_coefficient = residue.eval(h3, &int(1)) - &d_free;
                entry["valueAtH"] = json!({
                    "dFree": d_free.to_string(),
                    "dCoefficient": d_coefficient.to_string(),
                });
            }
            entry
        })
        .collect();
    json!({
        "family": branch.family.to_string(),
        "tau": branch.tau.to_string(),
        "components": components,
        "anyNonzeroWithoutD": branch.any_nonzero_without_d,
        "nonzeroRequiresD": branch.nonzero_requires_d,
    })
}

/// Prints a fundamental pair of Frobenius solutions as exact series.
pub fn series(
    eq: SeriesEq,
    tau: Option<&str>,
    order: usize,
    step_cap: usize,
) -> Result<(Value, i32)> {
    let (op, label, tau) = match eq {
        SeriesEq::Ve1Xi12 => (ve1_infinity_xi12(), "ve1-xi12", None),
        SeriesEq::Ve1Xi11 => {
            let tau = required_tau(tau, "ve1-xi11")?;
            (ve1_infinity_xi11(&(&tau * &tau)), "ve1-xi11", Some(tau))
        }
    };
    let nf = normal_form(&op)?;
    let pair = solve_pair_capped(&nf, order, step_cap)?;

    let mut inputs = json!({ "eq": label, "order": order, "stepCap": step_cap });
    if let Some(tau) = &tau {
        inputs["tau"] = json!(tau.to_string());
    }
    let body = json!({
        "exponents": [pair.exponents.0.to_string(), pair.exponents.1.to_string()],
        "first": pair.first.to_string(),
        "second": pair.second.to_string(),
        "wronskian": pair.wronskian.to_string(),
        "logRequired": pair.log_flag,
    });
    let trace: Trace = vec![(
        "series".to_string(),
        format!(
            "exponents ({}, {}), {} recurrence steps",
            pair.exponents.0, pair.exponents.1, order
        ),
    )];
    Ok((envelope("series", inputs, "analysis", body, trace), 0))
}

/// Integrates a fundamental pair numerically and reports the deviations.
#[allow(clippy::too_many_arguments)]
pub fn validate(
    eq: ValidateEq,
    tau: Option<&str>,
    window: &str,
    h: &str,
    order: usize,
    step_cap: usize,
    config: IntegrationConfig,
) -> Result<(Value, i32)> {
    let (op, label, tau) = match eq {
        ValidateEq::R2 => (ve1_infinity_xi12(), "r2", None),
        ValidateEq::R1 => {
            let tau = required_tau(tau, "r1")?;
            (ve1_infinity_xi11(&(&tau * &tau)), "r1", Some(tau))
        }
    };
    let window = parse::window(window)?;
    let h = parse::rational(h)?;
    let h_cubed = &h * &h * &h;
    let nf = normal_form(&op)?;
    let pair = normalize_wronskian(&solve_pair_capped(&nf, order, step_cap)?)?;
    let report = validate_pair(&nf, &pair, &h_cubed, window, &config)?;

    let mut inputs = json!({
        "eq": label,
        "window": [window.0, window.1],
        "h": h.to_string(),
        "order": order,
        "relTol": config.rel_tol,
        "absTol": config.abs_tol,
        "maxSteps": config.max_steps,
        "precisionBits": config.precision_bits,
    });
    if let Some(tau) = &tau {
        inputs["tau"] = json!(tau.to_string());
    }
    let body = json!({
        "exponents": [pair.exponents.0.to_string(), pair.exponents.1.to_string()],
        "firstMaxRelDev": report.first_max_rel_dev,
        "secondMaxRelDev": report.second_max_rel_dev,
        "wronskianMaxDev": report.wronskian_max_dev,
        "samples": report.samples,
    });
    let trace: Trace = vec![(
        "validate".to_string(),
        format!(
            "window [{}, {}], deviations ({:.3e}, {:.3e}), wronskian {:.3e} over {} samples",
            window.0,
            window.1,
            report.first_max_rel_dev,
            report.second_max_rel_dev,
            report.wronskian_max_dev,
            report.samples
        ),
    )];
    Ok((envelope("validate", inputs, "analysis", body, trace), 0))
}

fn required_tau(tau: Option<&str>, eq: &str) -> Result<Rational> {
    let token = tau.ok_or_else(|| Error::Parse(format!("--tau is required for --eq {eq}")))?;
    parse::rational(token)
}

/// Decides every row of a parameter CSV and writes the verdicts alongside.
pub fn sweep(input: &Path, output: &Path) -> Result<(Value, i32)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(input)
        .map_err(|e| Error::InvalidParams(format!("{}: {e}", input.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| csv_error(input, e))?
        .clone();
    let column = |name: &str| {
        headers.iter().position(|field| field == name).ok_or_else(|| {
            Error::Parse(format!("missing column '{name}' in {}", input.display()))
        })
    };
    let cols = [column("A")?, column("B")?, column("C")?, column("D")?];

    let mut rows = Vec::new();
    let mut params = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(input, e))?;
        let mut values = Vec::with_capacity(4);
        for (name, &col) in ["A", "B", "C", "D"].iter().zip(&cols) {
            let field = record.get(col).unwrap_or("");
            let value = parse::rational(field).map_err(|e| {
                let detail = match e {
                    Error::Parse(message) => message,
                    other => other.to_string(),
                };
                Error::Parse(format!("row {}, column {name}: {detail}", index + 2))
            })?;
            values.push(value);
        }
        let [a, b, c, d]: [Rational; 4] = values.try_into().expect("four columns");
        params.push(PotentialParams::new(a, b, c, d, int(1)));
        rows.push(record);
    }

    let verdicts = engine::decide_batch(&params);

    let mut writer = csv::Writer::from_path(output)
        .map_err(|e| Error::InvalidParams(format!("{}: {e}", output.display())))?;
    let mut out_headers = headers.clone();
    out_headers.push_field("verdict");
    out_headers.push_field("rule");
    writer.write_record(&out_headers).map_err(|e| csv_error(output, e))?;
    let mut counts = [0usize; 3];
    for (record, verdict) in rows.iter().zip(&verdicts) {
        let mut out = record.clone();
        out.push_field(&verdict.conclusion.to_string());
        out.push_field(&verdict.rule.map(|r| r.to_string()).unwrap_or_default());
        writer.write_record(&out).map_err(|e| csv_error(output, e))?;
        counts[match verdict.conclusion {
            Conclusion::NonIntegrable => 0,
            Conclusion::Inconclusive => 1,
            Conclusion::OutOfScope => 2,
        }] += 1;
    }
    writer
        .flush()
        .map_err(|e| Error::InvalidParams(format!("{}: {e}", output.display())))?;

    let inputs = json!({
        "in": input.display().to_string(),
        "out": output.display().to_string(),
    });
    let body = json!({
        "rows": rows.len(),
        "counts": {
            "nonIntegrable": counts[0],
            "inconclusive": counts[1],
            "outOfScope": counts[2],
        },
    });
    let trace: Trace = vec![(
        "sweep".to_string(),
        format!("{} rows decided, order preserved", rows.len()),
    )];
    Ok((envelope("sweep", inputs, "analysis", body, trace), 0))
}

/// Keeps I/O failures apart from malformed content: the former exit 1,
/// the latter 3 with position context from the reader.
fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        Error::InvalidParams(format!("{}: {e}", path.display()))
    } else {
        Error::Parse(format!("{}: {e}", path.display()))
    }
}
