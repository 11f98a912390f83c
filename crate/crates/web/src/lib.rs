//! Browser bindings: knot export, the expansion table and a transform sweep.
//!
//! Every entry point returns a JSON string; errors come back as a thrown
//! string. The `*_json` functions are the same operations without the
//! wasm-bindgen layer, for native tests.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde_json::json;
use wasm_bindgen::prelude::*;

use knotmodel::gaussian::{t_transform_limit, t_transform_reg, MatrixPair, ModelDims, RegKernel, C64};
use knotmodel::knot::{enumerate_knot_diagrams_with, KnotRecord};
use knotmodel::series::{assemble_z_with, extract_flp, f_of_g, Action, Convention, FOfGJson, FlpJson};

/// The browser runs single-threaded, so orders stay small.
pub const WEB_KMAX: usize = 4;
pub const WEB_MAX_N: usize = 8;
pub const WEB_MAX_D: usize = 4;

fn check_order(k: usize) -> Result<(), String> {
    if k > WEB_KMAX {
        return Err(format!("order {k} exceeds the in-browser limit {WEB_KMAX}"));
    }
    Ok(())
}

fn parse<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

/// Knot diagrams at order `k`, grouped by canonical code.
pub fn knots_json(k: usize, convention: &str, action: &str) -> Result<String, String> {
    check_order(k)?;
    let conv: Convention = parse(convention)?;
    let action: Action = parse(action)?;
    let diagrams = enumerate_knot_diagrams_with(k, conv, action).map_err(|e| e.to_string())?;
    let mut groups: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for d in &diagrams {
        let g = groups.entry(d.canonical.to_string()).or_insert((0, d.reduced.canonical().to_string()));
        g.0 += 1;
    }
    let groups: Vec<_> = groups
        .into_iter()
        .map(|(code, (count, reduced))| json!({ "canonical": code, "count": count, "reduced": reduced }))
        .collect();
    let records: Vec<KnotRecord> = diagrams.iter().map(KnotRecord::from).collect();
    serde_json::to_string(&json!({ "k": k, "groups": groups, "records": records })).map_err(|e| e.to_string())
}

/// F_{l,p} table and F(g) through `kmax`.
pub fn expansion_json(kmax: usize, convention: &str, action: &str) -> Result<String, String> {
    check_order(kmax)?;
    let conv: Convention = parse(convention)?;
    let action: Action = parse(action)?;
    let table = assemble_z_with(kmax, conv, action)
        .and_then(|z| z.formal_log())
        .and_then(|l| extract_flp(&l))
        .map_err(|e| e.to_string())?;
    let f = f_of_g(&table);
    serde_json::to_string(&json!({
        "kmax": kmax,
        "coupling": conv.coupling_label(),
        "flp": FlpJson::new(&table, conv),
        "f_of_g": FOfGJson::from(&f),
    }))
    .map_err(|e| e.to_string())
}

/// `TΦ_{N,d,ε}` at `F_μ = f·1`, `G_μ = g·1` for each ε, with the ε → 0 value.
pub fn transform_sweep_json(n: usize, d: usize, f: f64, g: f64, eps: &[f64]) -> Result<String, String> {
    if n > WEB_MAX_N || d > WEB_MAX_D {
        return Err(format!("N <= {WEB_MAX_N} and d <= {WEB_MAX_D} in the browser"));
    }
    let dims = ModelDims::new(n, d).map_err(|e| e.to_string())?;
    let scaled = |x: f64| vec![DMatrix::<C64>::identity(n, n).scale(x); dims.d()];
    let fg = MatrixPair::new(scaled(f), scaled(g)).map_err(|e| e.to_string())?;
    let mut points = Vec::with_capacity(eps.len());
    for &e in eps {
        let v = t_transform_reg(&fg, RegKernel::new(e).map_err(|e| e.to_string())?);
        points.push(json!({ "eps": e, "re": v.re, "im": v.im, "abs": v.norm() }));
    }
    let limit = t_transform_limit(&fg);
    serde_json::to_string(&json!({
        "N": n,
        "d": d,
        "points": points,
        "limit": { "re": limit.re, "im": limit.im, "abs": limit.norm() },
    }))
    .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn knots(k: usize, convention: &str, action: &str) -> Result<String, JsValue> {
    knots_json(k, convention, action).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn expansion(kmax: usize, convention: &str, action: &str) -> Result<String, JsValue> {
    expansion_json(kmax, convention, action).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn transform_sweep(n: usize, d: usize, f: f64, g: f64, eps: Vec<f64>) -> Result<String, JsValue> {
    transform_sweep_json(n, d, f, g, &eps).map_err(|e| JsValue::from_str(&e))
}
