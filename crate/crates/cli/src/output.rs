//! Rendering: one envelope for JSON, plain lines for text. Both modes
//! carry the same data.

use std::io::Write;

use arf_core::semigroup::{CharacterSet, MultiplicitySequence, NumericalSemigroup};
use arf_core::Error;
use serde_json::{json, Value};

use crate::Config;

/// Writes a line to stdout, exiting quietly if the pipe has closed.
fn out_line(line: &str) {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if writeln!(lock, "{line}").is_err() {
        std::process::exit(0);
    }
}

/// A command's payload: structured data plus its text form.
pub struct Rendered {
    pub json: Value,
    pub text: Vec<String>,
}

fn config_json(config: &Config) -> Value {
    json!({
        "field": config.field_token,
        "precision": config.precision,
        "max_steps": config.max_steps,
    })
}

pub fn emit_result(command: &str, config: &Config, rendered: &Rendered) {
    if config.json {
        let envelope = json!({
            "command": command,
            "config": config_json(config),
            "result": rendered.json,
        });
        out_line(&envelope.to_string());
    } else {
        for line in &rendered.text {
            out_line(line);
        }
    }
}

pub fn emit_error(command: &str, config: &Config, error: &Error) {
    let category = error.category().as_str();
    let mut body = json!({
        "category": category,
        "message": error.to_string(),
    });
    if category == "insufficient-precision" {
        // suggest, never auto-apply: retries should be visible in scripts
        body["suggested_precision"] = json!(config.precision * 2);
    }
    if config.json {
        let envelope = json!({
            "command": command,
            "config": config_json(config),
            "error": body,
        });
        out_line(&envelope.to_string());
    } else {
        eprintln!("error ({category}): {error}");
        if category == "insufficient-precision" {
            eprintln!("hint: retry with --prec {}", config.precision * 2);
        }
    }
}

pub fn semigroup_json(s: &NumericalSemigroup) -> Value {
    json!({
        "generators": s.generators(),
        "conductor": s.conductor(),
        "elements": s.elements(),
        "nu": s.nu(),
    })
}

pub fn semigroup_text(s: &NumericalSemigroup) -> String {
    format!("{s} (conductor {})", s.conductor())
}

pub fn sequence_json(m: &MultiplicitySequence) -> Value {
    json!(m.display_entries())
}

pub fn characters_json(c: &CharacterSet) -> Value {
    json!(c.values())
}

pub fn join_u64(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Short text form of a series: the first few terms with an ellipsis. The
/// JSON payload always carries the full expansion.
pub fn abbreviate_series(s: &arf_core::PowerSeries, max_terms: usize) -> String {
    let total = s.terms().count();
    if total <= max_terms {
        return s.to_string();
    }
    let shown = s
        .terms()
        .take(max_terms)
        .fold(None::<arf_core::PowerSeries>, |acc, (e, c)| {
            let m = arf_core::PowerSeries::monomial(s.field(), s.precision(), c.clone(), e)
                .expect("exponent within precision");
            Some(match acc {
                Some(a) => a.add(&m).expect("same field"),
                None => m,
            })
        })
        .expect("at least one term");
    format!("{shown} + ({} more terms)", total - max_terms)
}
