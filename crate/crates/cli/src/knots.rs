use std::collections::BTreeSet;
use std::io::Write;

use anyhow::Result;

use knotmodel::diagram::{enumerate_matchings, DiagramRecord, MatchMode};
use knotmodel::knot::{enumerate_knot_diagrams_with, KnotRecord};

use crate::config::{Format, RunConfig};
use crate::output::{csv_row, csv_rows, json_lines, note, sink};
use crate::Outcome;

const KNOT_COLUMNS: [&str; 7] = ["k", "match", "code", "canonical", "coeff_re", "coeff_im", "reduced_code"];
const DIAGRAM_COLUMNS: [&str; 7] = ["k", "match", "C", "l", "components", "genus", "tadpole"];

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    crate::check_kmax(cfg)?;
    let mut records = Vec::new();
    let mut summary = Vec::new();
    for k in 1..=cfg.kmax {
        let diagrams = enumerate_knot_diagrams_with(k, cfg.convention, cfg.action)?;
        let canonical: BTreeSet<String> = diagrams.iter().map(|d| d.canonical.to_string()).collect();
        let reduced: BTreeSet<String> = diagrams.iter().map(|d| d.reduced.canonical().to_string()).collect();
        summary.push(format!(
            "k={k}: {} diagrams, {} distinct codes, {} distinct after R1",
            diagrams.len(),
            canonical.len(),
            reduced.len()
        ));
        records.extend(diagrams.iter().map(KnotRecord::from));
    }
    let mut w = sink(cfg)?;
    match cfg.format {
        Format::Json => json_lines(&mut w, &records)?,
        Format::Csv => csv_rows(&mut w, &KNOT_COLUMNS, &records)?,
    }
    w.flush()?;
    drop(w);
    for s in summary {
        note(cfg, s);
    }
    Ok(Outcome::Ok)
}

pub fn run_diagrams(cfg: &RunConfig, k: usize, mode: MatchMode) -> Result<Outcome> {
    if k > cfg.kmax_cap {
        return Err(knotmodel::Error::ResourceBound { what: "diagram order k", requested: k as u64, limit: cfg.kmax_cap as u64 }.into());
    }
    // streamed in enumeration order so memory stays flat at large k
    let mut w = sink(cfg)?;
    if cfg.format == Format::Csv {
        writeln!(w, "{}", DIAGRAM_COLUMNS.join(","))?;
    }
    let mut count = 0u64;
    for p in enumerate_matchings(k, mode)? {
        let r = DiagramRecord::from_pairing(&p)?;
        match cfg.format {
            Format::Json => json_lines(&mut w, std::slice::from_ref(&r))?,
            Format::Csv => csv_row(&mut w, &DIAGRAM_COLUMNS, &r)?,
        }
        count += 1;
    }
    w.flush()?;
    drop(w);
    note(cfg, format!("k={k}: {count} pairings"));
    Ok(Outcome::Ok)
}
