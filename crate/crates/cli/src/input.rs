use std::fmt::Write;
use std::fs;
use std::path::Path;

use tecode::constructions::code_by_name;
use tecode::divisible::{is_doubly_even, is_maximal, is_triply_even, radical_summary};
use tecode::gf2::hexio::{emit_hex_text, parse_hex_text};
use tecode::gf2::CodeRecord;
use tecode::symmetry::canonical_form;
use tecode::{Error, LinearCode, Result};

use serde_json::{Map, Value};

use crate::Format;

/// Reads a `.json` code record or the hex text format.
pub fn load_file(path: &Path) -> Result<LinearCode> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{') {
        CodeRecord::from_json(&text)?.to_code()
    } else {
        parse_hex_text(&text, None)
    }
}

/// A path to an existing file, otherwise a code name.
pub fn load_code(input: &str) -> Result<LinearCode> {
    let p = Path::new(input);
    if p.is_file() {
        load_file(p)
    } else {
        code_by_name(input)
    }
}

pub fn emit(c: &LinearCode, format: Format) -> Result<String> {
    Ok(match format {
        Format::Hex => emit_hex_text(c),
        Format::Json => {
            let rec =
                CodeRecord::from_code(c).unwrap_or_else(|_| CodeRecord::from_code_unenumerated(c));
            rec.to_json() + "\n"
        }
    })
}

fn show<T: Into<Value>>(r: Result<T>) -> Value {
    match r {
        Ok(v) => v.into(),
        Err(Error::Budget(_)) => "unknown (budget)".into(),
        Err(e) => format!("unavailable ({e})").into(),
    }
}

/// Key/value report; `--format json` gives a single JSON object.
pub fn invariants(c: &LinearCode, format: Format) -> String {
    let mut fields: Vec<(&str, Value)> =
        vec![("length", c.length().into()), ("dim", c.dim().into())];
    let we = c.weight_enumerator().map(|w| {
        w.support()
            .iter()
            .map(|&(i, a)| Value::from(vec![i as u64, a]))
            .collect::<Vec<Value>>()
    });
    fields.push(("weight_enumerator", show(we)));
    let de = is_doubly_even(c);
    let te = is_triply_even(c);
    fields.push(("doubly_even", de.into()));
    fields.push(("triply_even", te.into()));
    if de {
        match radical_summary(c) {
            Ok(s) => {
                fields.push(("dim_meet_rad", s.meet_rad.dim().into()));
                fields.push(("dim_meet_big_rad", s.meet_big_rad.dim().into()));
            }
            Err(e) => fields.push(("radicals", format!("unavailable ({e})").into())),
        }
    }
    if te {
        fields.push(("maximal", show(is_maximal(c))));
    }
    let aut = if c.length() <= 64 {
        // u128 orders go out as decimal strings.
        show(canonical_form(c).map(|f| match f.aut_order {
            u128::MAX => "at least 2^128 - 1".to_string(),
            n => n.to_string(),
        }))
    } else {
        "unavailable (length above 64)".into()
    };
    fields.push(("aut_order", aut));
    match format {
        Format::Hex => {
            let mut out = String::new();
            for (k, v) in fields {
                let text = match v {
                    Value::String(s) => s,
                    Value::Array(pairs) => pairs
                        .iter()
                        .map(|p| format!("{}:{}", p[0], p[1]))
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                writeln!(out, "{k}: {text}").expect("string write");
            }
            out
        }
        Format::Json => {
            let map: Map<String, Value> = fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            Value::Object(map).to_string() + "\n"
        }
    }
}
