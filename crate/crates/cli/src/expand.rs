use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::json;

use knotmodel::diagram::{census, MatchMode};
use knotmodel::series::{
    assemble_z_with, extract_flp, f_of_g, free_log_constants, printed_log_constants, Action, ConstJson, ExactParts,
    FOfGJson, FlpJson, SeriesJson,
};

use crate::config::{Format, RunConfig};
use crate::output::{csv_rows, note, sink};
use crate::Outcome;

#[derive(Serialize)]
struct CsvRow {
    table: &'static str,
    k: u32,
    n_pow: i32,
    d_pow: u32,
    l: Option<u32>,
    p: Option<u32>,
    #[serde(flatten)]
    coeff: ExactParts,
}

const CSV_COLUMNS: [&str; 10] = ["table", "k", "n_pow", "d_pow", "l", "p", "re_num", "re_den", "im_num", "im_den"];

/// Connected planar single-loop pairings per order, as plain counts.
fn planar_one_loop_counts(cfg: &RunConfig) -> Result<Vec<serde_json::Value>> {
    let mode = if cfg.action == Action::Symmetric { MatchMode::All } else { MatchMode::AbOnly };
    let mut out = Vec::new();
    for k in 1..=cfg.kmax {
        let c = census(k, mode)?;
        let n: u64 = c
            .classes
            .iter()
            .filter(|(cl, _)| cl.connected() && cl.genus == 0 && cl.l == 1 && cl.same_family == 0)
            .filter(|(cl, _)| cfg.action != Action::WickOrdered || !cl.tadpole)
            .map(|(_, n)| n)
            .sum();
        out.push(json!({ "k": k, "pairings": n }));
    }
    Ok(out)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    crate::check_kmax(cfg)?;
    let z = assemble_z_with(cfg.kmax, cfg.convention, cfg.action)?;
    let ln_z = z.formal_log()?;
    let table = extract_flp(&ln_z)?;
    let f = f_of_g(&table);

    let mut w = sink(cfg)?;
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "convention": cfg.convention,
                "action": cfg.action,
                "coupling": cfg.convention.coupling_label(),
                "kmax": cfg.kmax,
                "z": SeriesJson::new(&z, cfg.convention, cfg.action),
                "ln_z": SeriesJson::new(&ln_z, cfg.convention, cfg.action),
                "flp": FlpJson::new(&table, cfg.convention),
                "f_of_g": FOfGJson::from(&f),
                "free_log_constants": free_log_constants().iter().map(ConstJson::from).collect::<Vec<_>>(),
                "printed_free_log_constants": printed_log_constants().iter().map(ConstJson::from).collect::<Vec<_>>(),
                "planar_one_loop_pairings": planar_one_loop_counts(cfg)?,
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for (name, s) in [("z", &z), ("ln_z", &ln_z)] {
                for (t, c) in s.terms() {
                    rows.push(CsvRow { table: name, k: t.k, n_pow: t.n_pow, d_pow: t.d_pow, l: None, p: None, coeff: c.into() });
                }
            }
            for (&(l, p), poly) in &table.entries {
                for (&k, c) in poly {
                    rows.push(CsvRow {
                        table: "flp",
                        k,
                        n_pow: 2 - 2 * p as i32,
                        d_pow: l,
                        l: Some(l),
                        p: Some(p),
                        coeff: c.into(),
                    });
                }
            }
            csv_rows(&mut w, &CSV_COLUMNS, &rows)?;
        }
    }
    w.flush()?;
    drop(w);

    note(cfg, format!("convention {} (vertex factor {}), action {}", cfg.convention, cfg.convention.coupling_label(), cfg.action));
    note(cfg, format!("ln Z has {} coefficients through g^{}", ln_z.len(), cfg.kmax));
    for (&(l, p), poly) in &table.entries {
        note(cfg, format!("  F_{{{l},{p}}}: {} terms", poly.len()));
    }
    note(cfg, format!("F(g) = {f}"));
    Ok(Outcome::Ok)
}
