//! Invariant suites behind `knotmodel verify <suite>`.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use knotmodel::diagram::{components_and_genus, enumerate_matchings, MatchMode};
use knotmodel::gaussian::{
    extrapolate_to_zero, general_propagators, propagator_with, t_transform_limit, t_transform_reg, u_bound_check,
    wick_moment, wick_order_quartic, wick_ordered_expectation, wick_pairing_count, ActionSpec, EntrySymbol,
    EpsilonLadder, MatrixPair, ModelDims, OracleCovariance, OracleRecord, PaperCountertermComparison,
    RegKernel, WickCounterterms, C64, U_BOUND_MAX_EPSILON,
};
use knotmodel::series::{
    assemble_z_with, connected_assemble_with, double_limit_check, extract_flp, full_log_series,
    tadpole_free_assemble, wick_ordered_assemble, Action, Convention,
};

use crate::config::{Format, RunConfig};
use crate::output::{csv_rows, json_lines, note, sink};
use crate::Outcome;

pub const ORACLE_ABS_TOL: f64 = 1e-8;
pub const FINITE_EPS_ABS_TOL: f64 = 1e-10;
pub const T_TRANSFORM_REL_TOL: f64 = 1e-9;
/// Largest oracle covariance dimension `2dN²` accepted.
pub const MAX_ORACLE_COORDS: usize = 72;
/// Exhaustive degree-4 moments up to this many entries, seeded samples above.
const EXHAUSTIVE_MOMENT_ENTRIES: usize = 18;
const SAMPLED_MOMENTS: usize = 400;
const WICK_SERIES_KMAX: usize = 3;
const SYMMETRIC_EULER_KMAX: usize = 3;
const RNG_SEED: u64 = 0x6b6e_6f74;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Wick,
    Euler,
    Logcheck,
    Bound,
    Propagators,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Wick => "wick",
            Suite::Euler => "euler",
            Suite::Logcheck => "logcheck",
            Suite::Bound => "bound",
            Suite::Propagators => "propagators",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub check: String,
    pub inputs: String,
    pub ok: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

const CSV_COLUMNS: [&str; 6] = ["suite", "check", "inputs", "ok", "detail", "oracle"];

struct Checks {
    suite: &'static str,
    records: Vec<CheckRecord>,
}

impl Checks {
    fn push(&mut self, check: &str, inputs: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push_oracle(check, inputs, ok, detail, None);
    }

    fn push_oracle(
        &mut self,
        check: &str,
        inputs: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
        oracle: Option<OracleRecord>,
    ) {
        self.records.push(CheckRecord {
            suite: self.suite,
            check: check.to_string(),
            inputs: inputs.into(),
            ok,
            detail: detail.into(),
            oracle,
        });
    }
}

fn grid(cfg: &RunConfig) -> Result<Vec<ModelDims>> {
    let mut out = Vec::new();
    for &n in &cfg.n {
        for &d in &cfg.d {
            let dims = ModelDims::new(n, d)?;
            let coords = 2 * dims.coords_per_family();
            if coords > MAX_ORACLE_COORDS {
                return Err(knotmodel::Error::ResourceBound {
                    what: "oracle coordinates 2dN^2",
                    requested: coords as u64,
                    limit: MAX_ORACLE_COORDS as u64,
                }
                .into());
            }
            out.push(dims);
        }
    }
    Ok(out)
}

fn dims_label(dims: ModelDims) -> String {
    format!("N={} d={}", dims.n(), dims.d())
}

fn action_spec(a: Action) -> ActionSpec {
    match a {
        Action::Symmetric => ActionSpec::Symmetric,
        Action::Standard | Action::WickOrdered => ActionSpec::Standard,
    }
}

fn propagators(cfg: &RunConfig, out: &mut Checks) -> Result<()> {
    let spec = action_spec(cfg.action);
    let props = general_propagators(spec)?;
    for dims in grid(cfg)? {
        let ladder = EpsilonLadder::new(dims, spec)?;
        let all = EntrySymbol::all(dims);
        let mut worst = (0.0f64, String::new(), C64::new(0.0, 0.0));
        for x in &all {
            for y in &all {
                let ex = ladder.extrapolate(|cov| cov.second_moment(x, y))?;
                let exact = propagator_with(&props, x, y)?;
                let e = (ex.value - exact).norm();
                if e > worst.0 || worst.1.is_empty() {
                    worst = (e, format!("<{x} {y}>"), ex.value);
                }
            }
        }
        let ok = worst.0 < ORACLE_ABS_TOL;
        out.push_oracle(
            "limit propagator",
            format!("{} action={}", dims_label(dims), cfg.action),
            ok,
            format!("{} pairs, max abs err {:.1e} at {} (tol {ORACLE_ABS_TOL:e})", all.len() * all.len(), worst.0, worst.1),
            Some(OracleRecord::new("second_moment", worst.1, Some(0.0), worst.2)),
        );

        // the finite-ε closed form is only written down for the standard weight
        if spec != ActionSpec::Standard {
            continue;
        }
        for &eps in &cfg.eps {
            let cov = OracleCovariance::new(dims, eps, spec)?;
            let ab = C64::new(0.0, 1.0 / (1.0 + eps * eps));
            let same = C64::new(eps / (1.0 + eps * eps), 0.0);
            let mut worst = (0.0f64, String::new(), C64::new(0.0, 0.0));
            for x in &all {
                for y in &all {
                    let got = cov.second_moment(x, y)?;
                    let pattern = x.mu == y.mu && x.row == y.col && x.col == y.row;
                    let expected = match (pattern, x.family == y.family) {
                        (false, _) => C64::new(0.0, 0.0),
                        (true, true) => same,
                        (true, false) => ab,
                    };
                    let e = (got - expected).norm();
                    if e > worst.0 || worst.1.is_empty() {
                        worst = (e, format!("<{x} {y}>"), got);
                    }
                }
            }
            out.push_oracle(
                "finite-epsilon propagator",
                format!("{} eps={eps}", dims_label(dims)),
                worst.0 < FINITE_EPS_ABS_TOL,
                format!("max abs err {:.1e} at {} (tol {FINITE_EPS_ABS_TOL:e})", worst.0, worst.1),
                Some(OracleRecord::new("second_moment", worst.1, Some(eps), worst.2)),
            );
        }
    }
    Ok(())
}

fn quadruples(total: usize, rng: &mut ChaCha8Rng) -> Vec<[usize; 4]> {
    if total <= EXHAUSTIVE_MOMENT_ENTRIES {
        let mut out = Vec::new();
        for a in 0..total {
            for b in a..total {
                for c in b..total {
                    for d in c..total {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    } else {
        (0..SAMPLED_MOMENTS).map(|_| std::array::from_fn(|_| rng.gen_range(0..total))).collect()
    }
}

fn wick(cfg: &RunConfig, out: &mut Checks) -> Result<()> {
    for len in [4usize, 6] {
        let counted = wick_pairing_count(len);
        let closed: u64 = (1..len as u64).step_by(2).product();
        out.push("pairing count", format!("degree {len}"), counted == closed, format!("{counted} pairings, (n-1)!! = {closed}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    for dims in grid(cfg)? {
        let ladder = EpsilonLadder::new(dims, ActionSpec::Standard)?;
        let all = EntrySymbol::all(dims);
        let quads = quadruples(all.len(), &mut rng);
        let mut worst = (0.0f64, String::new());
        for q in &quads {
            let entries: Vec<EntrySymbol> = q.iter().map(|&i| all[i]).collect();
            let exact = wick_moment(&entries)?;
            let oracle = ladder.extrapolate(|cov| cov.moment(&entries))?;
            let e = (exact - oracle.value).norm();
            if e > worst.0 || worst.1.is_empty() {
                worst = (e, entries.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            }
        }
        out.push(
            "degree-4 moments",
            dims_label(dims),
            worst.0 < ORACLE_ABS_TOL,
            format!("{} moments, max abs err {:.1e} at <{}> (tol {ORACLE_ABS_TOL:e})", quads.len(), worst.0, worst.1),
        );

        let ct = wick_order_quartic(dims)?;
        let ex = wick_ordered_expectation(dims, &ct)?;
        out.push_oracle(
            "E[:V:] vanishes",
            dims_label(dims),
            ex.value.norm() < ORACLE_ABS_TOL,
            format!("|E[:V:]| = {:.1e}, c1 = {}, c2 = {}", ex.value.norm(), ct.c1, ct.c2),
            Some(OracleRecord::new("wick_ordered_expectation", dims_label(dims), Some(0.0), ex.value)),
        );
    }

    let (c1, c2) = WickCounterterms::monomials()?;
    for dims in grid(cfg)? {
        let ct = wick_order_quartic(dims)?;
        let e = (c1.eval(dims.n(), dims.d()) - ct.c1).norm() + (c2.eval(dims.n(), dims.d()) - ct.c2).norm();
        out.push("counterterm monomials", dims_label(dims), e < ORACLE_ABS_TOL, format!("c1 = {c1}, c2 = {c2}"));
    }
    let cmp = PaperCountertermComparison::compute()?;
    out.push(
        "printed counterterms",
        "",
        true,
        format!(
            "derived c1 = {}, c2 = {}; printed c1 = {}, c2 = {}; agree: {}, {}",
            cmp.derived_c1, cmp.derived_c2, cmp.printed_c1, cmp.printed_c2, cmp.c1_matches, cmp.c2_matches
        ),
    );

    for conv in [Convention::Action, Convention::PaperSeries] {
        for k in 1..=cfg.kmax.min(WICK_SERIES_KMAX) {
            let ok = wick_ordered_assemble(k, conv)? == tadpole_free_assemble(k, conv)?;
            out.push("wick-ordered series equals tadpole-free sum", format!("k={k} convention={conv}"), ok, "");
        }
    }
    Ok(())
}

fn euler_for(k: usize, mode: MatchMode, out: &mut Checks) -> Result<()> {
    let mut components = 0u64;
    let mut bad = Vec::new();
    for p in enumerate_matchings(k, mode)? {
        match components_and_genus(&p) {
            Ok(r) => {
                for c in &r.per_component {
                    components += 1;
                    let parity = (c.c as i64 - c.vertices as i64) % 2 == 0;
                    let relation = 2 * c.genus as usize + c.c == 2 + c.vertices;
                    if !(parity && relation) && bad.len() < 5 {
                        bad.push(format!("{:?}: V={} C={} p={}", p.pairs().collect::<Vec<_>>(), c.vertices, c.c, c.genus));
                    }
                }
            }
            Err(e) => {
                if bad.len() < 5 {
                    bad.push(format!("{:?}: {e}", p.pairs().collect::<Vec<_>>()));
                }
            }
        }
    }
    let mode_name = match mode {
        MatchMode::AbOnly => "ab_only",
        MatchMode::All => "all",
    };
    let detail = if bad.is_empty() {
        format!("{components} components, integral genus, C = V mod 2")
    } else {
        format!("failures: {}", bad.join("; "))
    };
    out.push("genus integrality", format!("k={k} mode={mode_name}"), bad.is_empty(), detail);
    Ok(())
}

fn euler(cfg: &RunConfig, out: &mut Checks) -> Result<()> {
    crate::check_kmax(cfg)?;
    for k in 1..=cfg.kmax {
        euler_for(k, MatchMode::AbOnly, out)?;
    }
    if cfg.action == Action::Symmetric {
        for k in 1..=cfg.kmax.min(SYMMETRIC_EULER_KMAX) {
            euler_for(k, MatchMode::All, out)?;
        }
    }
    Ok(())
}

fn logcheck(cfg: &RunConfig, out: &mut Checks) -> Result<()> {
    crate::check_kmax(cfg)?;
    for conv in [Convention::Action, Convention::PaperSeries] {
        let inputs = format!("kmax={} convention={conv} action={}", cfg.kmax, cfg.action);
        let log = assemble_z_with(cfg.kmax, conv, cfg.action)?.formal_log()?;
        let conn = connected_assemble_with(cfg.kmax, conv, cfg.action)?;
        out.push("linked cluster", inputs.clone(), log == conn, format!("{} coefficients", conn.len()));

        match extract_flp(&log) {
            Ok(t) => {
                let cells: Vec<String> = t.entries.keys().map(|(l, p)| format!("({l},{p})")).collect();
                out.push("genus/link lattice", inputs.clone(), true, format!("F_{{l,p}} cells {}", cells.join(" ")));
            }
            Err(e) => out.push("genus/link lattice", inputs.clone(), false, e.to_string()),
        }

        if cfg.action == Action::Standard {
            let full = full_log_series(cfg.kmax, conv)?;
            out.push("double limit", inputs, double_limit_check(&full, cfg.kmax)?, "N → ∞ then d → 0 reproduces F(g)");
        }
    }
    Ok(())
}

fn random_pair(dims: ModelDims, rng: &mut ChaCha8Rng) -> Result<MatrixPair> {
    let n = dims.n();
    let mut mats = || -> Vec<DMatrix<C64>> {
        (0..dims.d())
            .map(|_| {
                let x = DMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)));
                (&x + x.adjoint()).scale(0.5)
            })
            .collect()
    };
    let f = mats();
    let g = mats();
    Ok(MatrixPair::new(f, g)?)
}

fn bound(cfg: &RunConfig, out: &mut Checks) -> Result<()> {
    let zs: Vec<C64> = [(0.5, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -0.5), (0.0, 3.0)]
        .iter()
        .map(|&(re, im)| C64::new(re, im))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    for dims in grid(cfg)? {
        let fg = random_pair(dims, &mut rng)?;
        for &eps in &cfg.eps {
            let kernel = RegKernel::new(eps)?;
            let inputs = format!("{} eps={eps} seed={RNG_SEED}", dims_label(dims));
            if eps <= U_BOUND_MAX_EPSILON {
                let ok = u_bound_check(&fg, kernel, &zs)?;
                out.push("growth bound", inputs.clone(), ok, format!("{} sample points z", zs.len()));
            } else {
                out.push("growth bound", inputs.clone(), true, format!("skipped: bound needs eps <= {U_BOUND_MAX_EPSILON}"));
            }
            let oracle = OracleCovariance::new(dims, eps, ActionSpec::Standard)?.t_transform(&fg)?;
            let closed = t_transform_reg(&fg, kernel);
            let rel = (oracle - closed).norm() / closed.norm();
            out.push_oracle(
                "transform closed form",
                inputs,
                rel < T_TRANSFORM_REL_TOL,
                format!("rel err {rel:.1e} (tol {T_TRANSFORM_REL_TOL:e})"),
                Some(OracleRecord::new("t_transform", dims_label(dims), Some(eps), oracle)),
            );
        }
        let ex = extrapolate_to_zero(|e| Ok(t_transform_reg(&fg, RegKernel::new(e)?)))?;
        let limit = t_transform_limit(&fg);
        let rel = (ex.value - limit).norm() / limit.norm();
        out.push(
            "transform limit",
            dims_label(dims),
            rel < ORACLE_ABS_TOL,
            format!("eps → 0 extrapolation vs 2^dN π^dN² exp(-i Tr FG): rel err {rel:.1e}"),
        );
    }
    Ok(())
}

pub fn run(cfg: &RunConfig, suite: Suite) -> Result<Outcome> {
    let mut checks = Checks { suite: suite.name(), records: Vec::new() };
    match suite {
        Suite::Propagators => propagators(cfg, &mut checks)?,
        Suite::Wick => wick(cfg, &mut checks)?,
        Suite::Euler => euler(cfg, &mut checks)?,
        Suite::Logcheck => logcheck(cfg, &mut checks)?,
        Suite::Bound => bound(cfg, &mut checks)?,
    }
    let records = checks.records;

    let mut w = sink(cfg)?;
    match cfg.format {
        Format::Json => json_lines(&mut w, &records)?,
        Format::Csv => csv_rows(&mut w, &CSV_COLUMNS, &records)?,
    }
    w.flush()?;
    drop(w);

    let failed: Vec<&CheckRecord> = records.iter().filter(|r| !r.ok).collect();
    for r in &failed {
        note(cfg, format!("FAIL {} [{}]: {}", r.check, r.inputs, r.detail));
    }
    note(cfg, format!("verify {}: {} checks, {} failed", suite.name(), records.len(), failed.len()));
    Ok(if failed.is_empty() { Outcome::Ok } else { Outcome::Failed })
}
