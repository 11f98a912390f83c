//! Acceptance criteria 1–11, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use knotmodel::diagram::{
    brute_force_index_sum, census, census_serial, components_and_genus, count_matchings, enumerate_matchings,
    MatchMode,
};
use knotmodel::gaussian::{
    extrapolate_to_zero, free_partition, oracle_normalization, wick_moment, wick_order_quartic,
    wick_ordered_expectation, wick_pairing_count, ActionSpec, EntrySymbol, EpsilonLadder, ModelDims, C64,
};
use knotmodel::knot::{alternating_check, enumerate_knot_diagrams, reduce_r1, GaussCode};
use knotmodel::series::{
    assemble_z, connected_assemble, double_limit, double_limit_check, extract_flp, f_of_g, full_log_series,
    tadpole_free_assemble, wick_ordered_assemble, Convention, GaussRational, Term,
};

const FREE_PARTITION_REL_TOL: f64 = 1e-6;
const PROPAGATOR_ABS_TOL: f64 = 1e-8;
const WICK_ABS_TOL: f64 = 1e-8;
const WICK_ORDERED_ABS_TOL: f64 = 1e-8;
const ENUMERATION_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn dims(n: usize, d: usize) -> ModelDims {
    ModelDims::new(n, d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: knotmodel::Error) -> String {
    e.to_string()
}

fn free_partition_function() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for d in 1..=2 {
            let ex = extrapolate_to_zero(|e| oracle_normalization(dims(n, d), e)).map_err(err)?;
            let exact = free_partition(n, d).map_err(err)?;
            let rel = (ex.value - C64::new(exact, 0.0)).norm() / exact;
            ensure(rel < FREE_PARTITION_REL_TOL, || format!("N={n} d={d}: rel err {rel:e}"))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("N<=3, d<=2: max rel err {worst:.1e} (tol {FREE_PARTITION_REL_TOL:e})"))
}

fn propagator_theorem() -> Outcome {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for n in 1..=3 {
        for d in 1..=2 {
            let c = dims(n, d);
            let ladder = EpsilonLadder::new(c, ActionSpec::Standard).map_err(err)?;
            let all = EntrySymbol::all(c);
            for x in &all {
                for y in &all {
                    let ex = ladder.extrapolate(|cov| cov.second_moment(x, y)).map_err(err)?;
                    // i δ_{μν} δ^{kn} δ^{lm} for A–B pairs, zero otherwise
                    let expected = if x.family != y.family && x.mu == y.mu && x.row == y.col && x.col == y.row {
                        C64::new(0.0, 1.0)
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    let e = (ex.value - expected).norm();
                    ensure(e < PROPAGATOR_ABS_TOL, || format!("<{x} {y}> off by {e:e}"))?;
                    worst = worst.max(e);
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} entry pairs at N<=3, d<=2: max abs err {worst:.1e} (tol {PROPAGATOR_ABS_TOL:e})"))
}

/// Every multiset of `len` entries, as sorted index tuples.
fn multisets(total: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, total: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..total {
            cur.push(i);
            rec(i, total, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, total, len, &mut Vec::new(), &mut out);
    out
}

fn double_factorial_count(len: usize) -> u64 {
    // (2m)! / (2^m m!)
    let m = len as u64 / 2;
    let fact = |n: u64| (1..=n).product::<u64>();
    fact(2 * m) / (2u64.pow(m as u32) * fact(m))
}

fn wick_theorem() -> Outcome {
    for len in [4, 6] {
        let counted = wick_pairing_count(len);
        let closed = double_factorial_count(len);
        ensure(counted == closed, || format!("degree {len}: {counted} pairings, expected {closed}"))?;
    }
    let mut worst = 0.0f64;
    let mut moments = 0;
    for n in 1..=2 {
        for d in 1..=2 {
            let c = dims(n, d);
            let ladder = EpsilonLadder::new(c, ActionSpec::Standard).map_err(err)?;
            let all = EntrySymbol::all(c);
            for len in [4, 6] {
                for idx in multisets(all.len(), len) {
                    let entries: Vec<EntrySymbol> = idx.iter().map(|&i| all[i]).collect();
                    let exact = wick_moment(&entries).map_err(err)?;
                    let oracle = ladder.extrapolate(|cov| cov.moment(&entries)).map_err(err)?;
                    let e = (exact - oracle.value).norm();
                    ensure(e < WICK_ABS_TOL, || format!("N={n} d={d} moment {idx:?}: off by {e:e}"))?;
                    worst = worst.max(e);
                    moments += 1;
                }
            }
        }
    }
    Ok(format!(
        "{moments} degree-4/6 moments at N<=2, d<=2: max abs err {worst:.1e} (tol {WICK_ABS_TOL:e}); pairing counts 3, 15"
    ))
}

fn matching_counts() -> Outcome {
    let mut parts = Vec::new();
    for k in 1..=5u64 {
        let ab_expected: u64 = (1..=2 * k).product();
        let all_expected: u64 = (1..=4 * k).product::<u64>() / (2u64.pow(2 * k as u32) * (1..=2 * k).product::<u64>());
        let ab = count_matchings(k as usize, MatchMode::AbOnly).map_err(err)?;
        let all = count_matchings(k as usize, MatchMode::All).map_err(err)?;
        ensure(ab == ab_expected, || format!("k={k} ab_only: {ab} != {ab_expected}"))?;
        ensure(all == all_expected, || format!("k={k} all: {all} != {all_expected}"))?;
        parts.push(format!("k={k}: {ab}/{all}"));
    }
    Ok(format!("ab_only/all {}", parts.join(", ")))
}

fn diagram_weight_oracle() -> Outcome {
    let mut checked = 0;
    for k in 1..=3 {
        for p in enumerate_matchings(k, MatchMode::AbOnly).map_err(err)? {
            let r = components_and_genus(&p).map_err(err)?;
            for n in 1..=3usize {
                for d in 1..=2usize {
                    let brute = brute_force_index_sum(&p, n, d).map_err(err)?;
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let expected = GaussRational::from_int(sign * (n as i64).pow(r.c as u32) * (d as i64).pow(r.l as u32));
                    ensure(brute == expected, || format!("{p:?} at N={n} d={d}: {brute} != {expected}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (pairing, N, d) cases exact for k<=3, N<=3, d<=2"))
}

fn euler_integrality() -> Outcome {
    let mut components = 0u64;
    let mut max_genus = 0;
    for k in 1..=4 {
        for p in enumerate_matchings(k, MatchMode::AbOnly).map_err(err)? {
            let r = components_and_genus(&p).map_err(|e| format!("{p:?}: {e}"))?;
            for c in &r.per_component {
                ensure((c.c as i64 - c.vertices as i64) % 2 == 0, || format!("{p:?}: C_c={} V_c={}", c.c, c.vertices))?;
                ensure(2 * c.genus as usize + c.c == 2 + c.vertices, || format!("{p:?}: genus mismatch"))?;
                max_genus = max_genus.max(c.genus);
                components += 1;
            }
        }
    }
    Ok(format!("{components} components for k<=4, all integral genus (max {max_genus}), C_c = V_c mod 2"))
}

fn linked_cluster() -> Outcome {
    for conv in [Convention::Action, Convention::PaperSeries] {
        let log = assemble_z(3, conv).map_err(err)?.formal_log().map_err(err)?;
        let conn = connected_assemble(3, conv).map_err(err)?;
        ensure(log == conn, || format!("{conv}: formal_log(Z) differs from connected sum"))?;
    }
    let n = connected_assemble(3, Convention::Action).map_err(err)?.len();
    Ok(format!("kmax=3, both conventions: {n} coefficients identical"))
}

fn lattice_and_double_limit() -> Outcome {
    let mut summary = Vec::new();
    for (conv, im) in [(Convention::Action, -1), (Convention::PaperSeries, -2)] {
        let full = full_log_series(3, conv).map_err(err)?;
        let table = extract_flp(&full.series).map_err(err)?;
        for &(l, p) in table.entries.keys() {
            ensure(p <= 1 && (1..=3).contains(&l), || format!("{conv}: unexpected F_{{{l},{p}}}"))?;
        }
        ensure(double_limit_check(&full, 3).map_err(err)?, || format!("{conv}: double limit differs from F(g)"))?;
        let f = double_limit(&full).map_err(err)?;
        ensure(f == f_of_g(&table), || "F(g) mismatch".into())?;
        let g1 = f.poly.get(&1).cloned().unwrap_or_else(GaussRational::zero);
        ensure(g1 == GaussRational::from_gauss_int(0, im), || format!("{conv}: order-g coefficient {g1}"))?;
        summary.push(format!("{conv}: F(g) = {f}"));
    }
    // order g from the brute-force index sum: (c/N)·Σ_pairings at N=2, d=1
    let mut total = GaussRational::zero();
    for p in enumerate_matchings(1, MatchMode::AbOnly).map_err(err)? {
        total += &brute_force_index_sum(&p, 2, 1).map_err(err)?;
    }
    let c = Convention::Action.coupling();
    let from_brute = (&c * &total).div_int(2);
    let from_series = assemble_z(1, Convention::Action).map_err(err)?.coeff(Term::new(1, 2, 1));
    ensure(from_brute == &from_series * &GaussRational::from_int(4), || {
        format!("brute force gives {from_brute} at N=2, d=1; series gives {from_series}·N²d")
    })?;
    Ok(summary.join("; "))
}

fn knot_export() -> Outcome {
    let trefoil: GaussCode = "O1U2O3U1O2U3".parse().map_err(err)?;
    let k3 = enumerate_knot_diagrams(3, Convention::Action).map_err(err)?;
    let found = k3
        .iter()
        .any(|d| d.canonical == trefoil && alternating_check(&d.code) && reduce_r1(&d.code) == d.code && d.code.crossing_count() == 3);
    ensure(found, || "no alternating R1-reduced trefoil at k=3".into())?;
    let mut total = 0;
    for k in 1..=4 {
        for d in enumerate_knot_diagrams(k, Convention::Action).map_err(err)? {
            ensure(alternating_check(&d.code), || format!("k={k}: {} is not alternating", d.code))?;
            ensure(d.code.len() == 2 * k, || format!("k={k}: {} has wrong length", d.code))?;
            total += 1;
        }
    }
    let k1 = enumerate_knot_diagrams(1, Convention::Action).map_err(err)?;
    ensure(k1.iter().all(|d| d.reduced.is_empty()), || "k=1 code survives R1".into())?;
    Ok(format!("trefoil present at k=3; {total} codes for k<=4 all alternating; k=1 reduces to the unknot"))
}

fn wick_ordered_vertex() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=2 {
        for d in 1..=2 {
            let c = dims(n, d);
            let ct = wick_order_quartic(c).map_err(err)?;
            let ex = wick_ordered_expectation(c, &ct).map_err(err)?;
            ensure(ex.value.norm() < WICK_ORDERED_ABS_TOL, || format!("N={n} d={d}: E[:V:] = {}", ex.value))?;
            worst = worst.max(ex.value.norm());
        }
    }
    for conv in [Convention::Action, Convention::PaperSeries] {
        let wo = wick_ordered_assemble(2, conv).map_err(err)?;
        let tf = tadpole_free_assemble(2, conv).map_err(err)?;
        ensure(wo == tf, || format!("{conv}: Wick-ordered series differs from tadpole-free series"))?;
    }
    Ok(format!(
        "|E[:V:]| <= {worst:.1e} (tol {WICK_ORDERED_ABS_TOL:e}) at N,d<=2; series equal tadpole-free sum for k<=2"
    ))
}

fn performance() -> Outcome {
    let start = Instant::now();
    let serial = census_serial(5, MatchMode::AbOnly).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(serial.total() == 3_628_800, || format!("k=5 enumerated {} pairings", serial.total()))?;
    ensure(elapsed < ENUMERATION_BUDGET, || format!("k=5 serial census took {elapsed:?}"))?;
    for threads in [1, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        let par = pool.install(|| census(5, MatchMode::AbOnly)).map_err(err)?;
        ensure(par == serial, || format!("{threads}-thread census differs from serial"))?;
    }
    Ok(format!(
        "k=5 serial census of 3628800 pairings in {:.2}s (budget {}s); 1/2/4-thread results identical",
        elapsed.as_secs_f64(),
        ENUMERATION_BUDGET.as_secs()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("free partition function", free_partition_function),
        ("propagator theorem", propagator_theorem),
        ("Wick theorem", wick_theorem),
        ("matching counts", matching_counts),
        ("diagram-weight oracle", diagram_weight_oracle),
        ("Euler integrality", euler_integrality),
        ("linked cluster", linked_cluster),
        ("genus/link lattice and double limit", lattice_and_double_limit),
        ("knot export", knot_export),
        ("Wick-ordered vertex", wick_ordered_vertex),
        ("performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
