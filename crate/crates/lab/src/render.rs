//! Plain-text rendering of a run report. Reads only the JSON, so the text and
//! the machine-readable output cannot disagree.

use std::fmt::Write;

use serde_json::Value;

fn short(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            let parts: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn mark(holds: bool) -> &'static str {
    if holds {
        "ok"
    } else {
        "NO"
    }
}

fn render_verification(out: &mut String, r: &Value) {
    let _ = writeln!(out, "    {} -> {}", r["theorem"].as_str().unwrap_or("?"), r["conclusion"].as_str().unwrap_or("?"));
    for h in r["hypotheses"].as_array().into_iter().flatten() {
        let detail = h.get("detail").and_then(Value::as_str).map(|d| format!(" [{d}]")).unwrap_or_default();
        let _ = writeln!(
            out,
            "      {:<3} {} ({}){detail}",
            mark(h["holds"].as_bool().unwrap_or(false)),
            h["name"].as_str().unwrap_or("?"),
            h["mode"].as_str().unwrap_or("?"),
        );
    }
    if let Some(values) = r["values"].as_object() {
        for (k, v) in values {
            let _ = writeln!(out, "      {k} = {}", short(v));
        }
    }
    for c in r["certificates"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "      {:<3} {}: {} {} {}",
            mark(c["holds"].as_bool().unwrap_or(false)),
            c["claim"].as_str().unwrap_or("?"),
            short(&c["left"]),
            c["relation"].as_str().unwrap_or("?"),
            short(&c["right"]),
        );
    }
}

pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    for entry in report["results"].as_array().into_iter().flatten() {
        let status = entry["status"].as_str().unwrap_or("?");
        let _ = writeln!(
            out,
            "{:>4}  {:<13} {}",
            entry["line"],
            status,
            entry["statement"].as_str().unwrap_or("")
        );
        let result = &entry["result"];
        if result.get("theorem").is_some() {
            render_verification(&mut out, result);
        } else if let Some(obj) = result.as_object() {
            for (k, v) in obj {
                if k != "asserted" {
                    let _ = writeln!(out, "      {k} = {}", short(v));
                }
            }
        }
        if let Some(err) = entry.get("error") {
            let _ = writeln!(out, "      error: {}", err["message"].as_str().unwrap_or("?"));
        }
    }
    let _ = writeln!(out, "exit code {}", report["exit_code"]);
    out
}
