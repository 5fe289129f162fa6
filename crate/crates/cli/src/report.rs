//! The JSON report envelope shared by every subcommand.
//!
//! Each run prints exactly one report to stdout. The envelope carries the
//! schema version, the command name, an echo of the parsed inputs, either
//! a `verdict` or an `analysis` payload, the evidence trace, and the
//! standing convention warnings. The shape is pinned by
//! `schema/report.schema.json` at the repository root; `SCHEMA_VERSION`
//! is bumped whenever that shape changes.
//!
//! Exact quantities are serialized as rational strings ("num/den" or a
//! plain integer), never as floats, so that parsing a report recovers the
//! values bit for bit. Floating-point fields appear only in the numeric
//! validation payload, where they are measurements rather than inputs.

use serde_json::{json, Value};
use sextic_core::variational::convention_notes;

pub const SCHEMA_VERSION: &str = "1";

/// One evidence record: a stage label and its detail line.
pub type Trace = Vec<(String, String)>;

/// Assembles the single report a command prints.
///
/// `body_key` is "verdict" for the decision command and "analysis" for
/// the descriptive ones; the schema admits exactly one of the two.
pub fn envelope(command: &str, inputs: Value, body_key: &str, body: Value, trace: Trace) -> Value {
    let trace: Vec<Value> = trace
        .into_iter()
        .map(|(stage, detail)| json!({ "stage": stage, "detail": detail }))
        .collect();
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        body_key: body,
        "trace": trace,
        "warnings": convention_notes(),
    })
}
