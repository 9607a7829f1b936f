//! Record streams in CSV or JSON lines.
//!
//! CSV: a header row, one row per record, then the summary as a single `# key=value ...`
//! comment line. JSON lines: one object per record, then `{"summary": {...}}`.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use zerofinder::{Error, Result};

use crate::args::Format;

pub struct Sink<'a> {
    format: Format,
    csv: Option<csv::Writer<&'a mut dyn Write>>,
    raw: Option<&'a mut dyn Write>,
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Domain(format!("output: {e}"))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}={s}")),
        other => out.push(format!("{prefix}={other}")),
    }
}

impl<'a> Sink<'a> {
    pub fn new(out: &'a mut dyn Write, format: Format) -> Self {
        match format {
            Format::Csv => Self { format, csv: Some(csv::Writer::from_writer(out)), raw: None },
            Format::JsonLines => Self { format, csv: None, raw: Some(out) },
        }
    }

    pub fn record<R: Serialize>(&mut self, r: &R) -> Result<()> {
        match self.format {
            Format::Csv => self.csv.as_mut().expect("csv writer").serialize(r).map_err(io),
            Format::JsonLines => {
                let w = self.raw.as_mut().expect("raw writer");
                serde_json::to_writer(&mut *w, r).map_err(io)?;
                writeln!(w).map_err(io)
            }
        }
    }

    pub fn summary<S: Serialize>(&mut self, s: &S) -> Result<()> {
        let v = serde_json::to_value(s).map_err(io)?;
        self.flush()?;
        match self.format {
            Format::Csv => {
                let mut parts = Vec::new();
                flatten("", &v, &mut parts);
                // The footer ends the stream; write it on the unwrapped writer.
                let w = self.csv.take().expect("csv writer").into_inner().map_err(io)?;
                writeln!(w, "# {}", parts.join(" ")).map_err(io)?;
                self.raw = Some(w);
                Ok(())
            }
            Format::JsonLines => {
                let w = self.raw.as_mut().expect("raw writer");
                serde_json::to_writer(&mut *w, &serde_json::json!({ "summary": v })).map_err(io)?;
                writeln!(w).map_err(io)
            }
        }
    }

    pub fn flush(&mut self) -> Result<()> {
        match self.format {
            Format::Csv => match (self.csv.as_mut(), self.raw.as_mut()) {
                (Some(c), _) => c.flush().map_err(io),
                (None, Some(w)) => w.flush().map_err(io),
                (None, None) => Ok(()),
            },
            Format::JsonLines => self.raw.as_mut().expect("raw writer").flush().map_err(io),
        }
    }
}
