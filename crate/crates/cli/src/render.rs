use std::fmt::Write;

use multicat_core::{Report, Status};
use serde_json::{json, Value};

use crate::commands::CliError;
use crate::Format;

/// What a command prints and how it exits.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Outcome {
    pub fn report(r: &Report) -> Outcome {
        let code = match r.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::BoundExceeded => 3,
        };
        Outcome {
            json: serde_json::to_value(r).expect("reports serialize"),
            text: report_text(r),
            code,
        }
    }

    pub fn value(json: Value, text: String) -> Outcome {
        Outcome { json, text, code: 0 }
    }

    pub fn error(e: CliError) -> Outcome {
        let (kind, code) = e.kind_and_code();
        let msg = e.to_string();
        Outcome {
            json: json!({ "error": { "kind": kind, "message": msg } }),
            text: format!("error ({kind}): {msg}\n"),
            code,
        }
    }

    pub fn print(&self, format: Format) {
        match format {
            // serde_json maps keep keys sorted, so the output is canonical
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("values serialize")),
            Format::Text if self.json.get("error").is_some() => eprint!("{}", self.text),
            Format::Text => print!("{}", self.text),
        }
    }
}

pub fn report_text(r: &Report) -> String {
    let mut s = String::new();
    let status = serde_json::to_value(r.status).expect("status serializes");
    let _ = writeln!(s, "{}", r.subject);
    let _ = writeln!(s, "  bound {}  status {}", r.bound, status.as_str().unwrap_or("?"));
    let _ = writeln!(
        s,
        "  {} instances, {} out of range, {} violations",
        r.stats.instances, r.stats.out_of_range, r.stats.violations_total
    );
    for v in &r.violations {
        let _ = writeln!(s, "  [{}] {}: {}", v.law, v.instance, v.explanation);
    }
    if let Some(Value::Array(rows)) = r.details.get("flags") {
        let _ = writeln!(s, "  {:<24} {:<14} {:>2}  AP UP R", "X", "f", "J");
        for row in rows {
            let flag = |k: &str| if row[k].as_bool() == Some(true) { " T" } else { " F" };
            let x: Vec<String> = row["X"]
                .as_array()
                .map(|a| a.iter().filter_map(|o| o.as_str().map(str::to_string)).collect())
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "  {:<24} {:<14} {:>2} {} {}{}",
                format!("({})", x.join(",")),
                row["f"].to_string(),
                row["J"],
                flag("algebraic"),
                flag("universal"),
                flag("representable")
            );
        }
    }
    s
}
