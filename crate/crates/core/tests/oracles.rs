//! Cross-checks between independently computed quantities.

use std::collections::BTreeMap;

use knotmodel::diagram::{
    brute_force_index_sum, brute_force_index_sum_with, enumerate_matchings, mixed_pairing_weights, trace_greek_loops,
    trace_latin_loops, MatchMode, MixedVertex, Pairing,
};
use knotmodel::gaussian::{
    general_propagators, propagator_with, ActionSpec, EntrySymbol, EpsilonLadder, ModelDims, OracleCovariance,
    PaperCountertermComparison, C64,
};
use knotmodel::knot::enumerate_knot_diagrams;
use knotmodel::series::{
    assemble_z_with, connected_assemble, connected_assemble_with, extract_flp, tadpole_free_assemble,
    wick_ordered_assemble, Action, Convention, GaussRational,
};

/// Exponent `e` with `value(x) = value(1)·x^e` on `x ∈ {1, 2, 3}`.
fn fitted_exponent(values: [GaussRational; 3]) -> u32 {
    let base = &values[0];
    let e = (0..40)
        .find(|&e| values[1] == base * &GaussRational::from_int(2i64.pow(e)))
        .expect("not a monomial in the sampled variable");
    assert_eq!(values[2], base * &GaussRational::from_int(3i64.pow(e)), "fit fails at 3");
    e
}

#[test]
fn latin_loops_equal_the_exponent_of_n() {
    for p in enumerate_matchings(2, MatchMode::AbOnly).unwrap() {
        let values = [1, 2, 3].map(|n| brute_force_index_sum(&p, n, 1).unwrap());
        assert_eq!(fitted_exponent(values) as usize, trace_latin_loops(&p), "{p:?}");
    }
}

#[test]
fn greek_loops_equal_the_exponent_of_d() {
    for k in 1..=2 {
        for p in enumerate_matchings(k, MatchMode::AbOnly).unwrap() {
            let values = [1, 2, 3].map(|d| brute_force_index_sum(&p, 1, d).unwrap());
            assert_eq!(fitted_exponent(values) as usize, trace_greek_loops(&p), "{p:?}");
        }
    }
}

#[test]
fn mixed_union_find_agrees_with_loop_tracing() {
    // the mixed-vertex route counts index classes without tracing loops
    for k in 1..=3 {
        let mut traced: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for p in enumerate_matchings(k, MatchMode::AbOnly).unwrap() {
            *traced.entry((trace_latin_loops(&p) as u32, trace_greek_loops(&p) as u32)).or_default() += 1;
        }
        let mixed = mixed_pairing_weights(&vec![MixedVertex::Quartic; k]).unwrap();
        assert_eq!(mixed.counts, traced, "k={k}");
        assert_eq!(mixed.propagators, 2 * k);
    }
}

#[test]
fn symmetric_blocks_match_oracle_and_brute_force() {
    let dims = ModelDims::new(2, 1).unwrap();
    let props = general_propagators(ActionSpec::Symmetric).unwrap();
    let ladder = EpsilonLadder::new(dims, ActionSpec::Symmetric).unwrap();
    let all = EntrySymbol::all(dims);
    for x in &all {
        for y in &all {
            let ex = ladder.extrapolate(|cov| cov.second_moment(x, y)).unwrap();
            let exact = propagator_with(&props, x, y).unwrap();
            assert!((ex.value - exact).norm() < 1e-8, "<{x} {y}>: {} vs {exact}", ex.value);
        }
    }
    // all-mode k=1 total at N=2, d=2 from the brute-force sum against the series
    let mut total = GaussRational::zero();
    for p in enumerate_matchings(1, MatchMode::All).unwrap() {
        total += &brute_force_index_sum_with(&props, &p, 2, 2).unwrap();
    }
    let z = assemble_z_with(1, Convention::Action, Action::Symmetric).unwrap();
    let mut at_point = GaussRational::zero();
    for (t, c) in z.order(1) {
        let n = 2f64.powi(t.n_pow);
        at_point += &c.scale(&num_rational::BigRational::from_float(n * 2f64.powi(t.d_pow as i32)).unwrap());
    }
    // order g: (i/2)·N^{-1}·total
    let expected = (&Convention::Action.coupling() * &total).div_int(2);
    assert_eq!(at_point, expected);
}

#[test]
fn symmetric_linked_cluster() {
    for conv in [Convention::Action, Convention::PaperSeries] {
        let z = assemble_z_with(3, conv, Action::Symmetric).unwrap();
        assert_eq!(z.formal_log().unwrap(), connected_assemble_with(3, conv, Action::Symmetric).unwrap());
    }
}

#[test]
fn wick_ordered_series_at_third_order() {
    let wo = wick_ordered_assemble(3, Convention::Action).unwrap();
    assert_eq!(wo, tadpole_free_assemble(3, Convention::Action).unwrap());
    assert_eq!(wo.formal_log().unwrap(), connected_assemble_with(3, Convention::Action, Action::WickOrdered).unwrap());
}

#[test]
fn knot_coefficients_sum_to_planar_one_loop_term() {
    for conv in [Convention::Action, Convention::PaperSeries] {
        let table = extract_flp(&connected_assemble(4, conv).unwrap()).unwrap();
        let f10 = table.get(1, 0);
        for k in 1..=4 {
            let mut sum = GaussRational::zero();
            for d in enumerate_knot_diagrams(k, conv).unwrap() {
                sum += &d.coeff;
            }
            assert_eq!(sum, f10.get(&(k as u32)).cloned().unwrap_or_else(GaussRational::zero), "k={k}");
        }
    }
}

#[test]
fn printed_counterterms_disagree_with_derivation() {
    let cmp = PaperCountertermComparison::compute().unwrap();
    assert!(!cmp.c1_matches);
    assert!(!cmp.c2_matches);
    assert_eq!(cmp.derived_c2.coeff, GaussRational::from_int(-2));
}

#[test]
fn oracle_t_transform_matches_closed_form() {
    use knotmodel::gaussian::{t_transform_reg, MatrixPair, RegKernel};
    use nalgebra::DMatrix;
    let f = DMatrix::from_row_slice(2, 2, &[C64::new(0.3, 0.0), C64::new(0.1, 0.2), C64::new(0.1, -0.2), C64::new(-0.4, 0.0)]);
    let g = DMatrix::from_row_slice(2, 2, &[C64::new(0.5, 0.0), C64::new(-0.2, 0.1), C64::new(-0.2, -0.1), C64::new(0.2, 0.0)]);
    let fg = MatrixPair::new(vec![f], vec![g]).unwrap();
    for eps in [0.5, 0.1] {
        let cov = OracleCovariance::new(fg.dims(), eps, ActionSpec::Standard).unwrap();
        let oracle = cov.t_transform(&fg).unwrap();
        let closed = t_transform_reg(&fg, RegKernel::new(eps).unwrap());
        assert!((oracle - closed).norm() < 1e-9 * closed.norm(), "eps={eps}: {oracle} vs {closed}");
    }
}

#[test]
fn trefoil_pairing_is_not_a_tadpole() {
    let trefoil: knotmodel::knot::GaussCode = "O1U2O3U1O2U3".parse().unwrap();
    let hits: Vec<Pairing> = enumerate_knot_diagrams(3, Convention::Action)
        .unwrap()
        .into_iter()
        .filter(|d| d.canonical == trefoil)
        .map(|d| d.pairing)
        .collect();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|p| !knotmodel::diagram::is_tadpole(p)));
}
