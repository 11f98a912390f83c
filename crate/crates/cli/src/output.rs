use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};
use serde_json::Value;

use crate::config::RunConfig;

/// The `--out` file, or standard output.
pub fn sink(cfg: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Human-readable notes go to stdout when data goes to a file, otherwise to
/// stderr so piped data stays clean.
pub fn note(cfg: &RunConfig, msg: impl AsRef<str>) {
    if cfg.out.is_some() {
        println!("{}", msg.as_ref());
    } else {
        eprintln!("{}", msg.as_ref());
    }
}

pub fn json_lines<T: serde::Serialize>(w: &mut dyn Write, rows: &[T]) -> Result<()> {
    for r in rows {
        serde_json::to_writer(&mut *w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// Flat records as CSV with the given column order; nested values are
/// written as JSON text.
pub fn csv_rows<T: serde::Serialize>(w: &mut dyn Write, columns: &[&str], rows: &[T]) -> Result<()> {
    writeln!(w, "{}", columns.join(","))?;
    for r in rows {
        csv_row(w, columns, r)?;
    }
    Ok(())
}

pub fn csv_row<T: serde::Serialize>(w: &mut dyn Write, columns: &[&str], row: &T) -> Result<()> {
    let v = serde_json::to_value(row)?;
    let line: Vec<String> = columns.iter().map(|c| csv_field(&v[*c])).collect();
    writeln!(w, "{}", line.join(","))?;
    Ok(())
}
