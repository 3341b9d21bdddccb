use hilbaut::surface::{to_document, InputDocument};
use serde_json::json;

use crate::commands::{degree_mode, max_weight, Output};
use crate::{Failure, Format, Options};

fn options_json(name: &str, o: &Options) -> serde_json::Value {
    let mut v = json!({ "n": o.n });
    if name == "trace-series" {
        v["max_weight"] = json!(max_weight(o));
        v["degree_mode"] = json!(degree_mode(o));
        v["t"] = json!(o.t);
    }
    if let Some(r) = &o.row {
        v["row"] = json!(r);
    }
    if let Some(t) = &o.table {
        v["table"] = json!(t);
    }
    if let Some(b) = o.bound {
        v["bound"] = json!(b);
    }
    v
}

pub fn render(name: &str, o: &Options, input: &InputDocument, out: Output) -> Result<String, Failure> {
    match o.format {
        Format::Json => {
            let doc = json!({
                "request": {
                    "subcommand": name,
                    "preset": input.preset,
                    "input": to_document(&input.spec, &input.datum),
                    "options": options_json(name, o),
                },
                "results": out.results,
                "provenance": out.provenance,
                "warnings": out.warnings,
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Failure::usage(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            Ok(out.text)
        }
        Format::Csv => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            let mut wr = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::usage(e.to_string());
            wr.write_record(&out.header).map_err(io)?;
            for row in &out.rows {
                wr.write_record(row).map_err(io)?;
            }
            let bytes = wr.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}
