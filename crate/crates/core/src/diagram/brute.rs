//! Literal index summation of a pairing, independent of loop tracing.
//!
//! Each vertex `A_μ^{jl} B_ν^{lm} A_μ^{mn} B_ν^{nj}` owns six summation
//! variables. Every propagator contributes a product of Kronecker deltas;
//! the sum runs over all `N^{4k} d^{2k}` assignments, pruned as soon as a
//! delta with both variables fixed fails.

use crate::gaussian::{general_propagators, ActionSpec, Family, PropagatorMatrix};
use crate::series::GaussRational;
use crate::{Error, Result};

use super::pairing::Pairing;

pub const BRUTE_MAX_N: usize = 3;
pub const BRUTE_MAX_D: usize = 3;
pub const BRUTE_MAX_K: usize = 3;

const J: usize = 0;
const L: usize = 1;
const M: usize = 2;
const N_: usize = 3;
const MU: usize = 4;
const NU: usize = 5;

/// `(row, col, greek)` slots of the leg at each position.
const LEG_VARS: [(usize, usize, usize); 4] = [(J, L, MU), (L, M, NU), (M, N_, MU), (N_, J, NU)];

fn leg_vars(leg: usize) -> (usize, usize, usize) {
    let base = 6 * (leg / 4);
    let (r, c, g) = LEG_VARS[leg % 4];
    (base + r, base + c, base + g)
}

/// `Σ_{indices} Π_{propagators} ⟨x y⟩` for the standard action.
pub fn brute_force_index_sum(p: &Pairing, n: usize, d: usize) -> Result<GaussRational> {
    brute_force_index_sum_with(&general_propagators(ActionSpec::Standard)?, p, n, d)
}

/// As [`brute_force_index_sum`] with arbitrary family blocks.
pub fn brute_force_index_sum_with(props: &PropagatorMatrix, p: &Pairing, n: usize, d: usize) -> Result<GaussRational> {
    for (what, got, limit) in [
        ("brute-force N", n, BRUTE_MAX_N),
        ("brute-force d", d, BRUTE_MAX_D),
        ("brute-force k", p.k(), BRUTE_MAX_K),
    ] {
        if got > limit {
            return Err(Error::ResourceBound { what, requested: got as u64, limit: limit as u64 });
        }
    }
    if n == 0 || d == 0 {
        return Err(Error::invalid("N and d must be positive"));
    }

    let vars = 6 * p.k();
    let mut prefactor = GaussRational::one();
    // deltas, each checked once both of its variables are assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); vars];
    for (a, b) in p.pairs() {
        let family = |leg: u8| if leg.is_multiple_of(2) { Family::A } else { Family::B };
        prefactor = &prefactor * props.block(family(a), family(b));
        let (ra, ca, ga) = leg_vars(a as usize);
        let (rb, cb, gb) = leg_vars(b as usize);
        for (x, y) in [(ra, cb), (ca, rb), (ga, gb)] {
            checks[x.max(y)].push(x.min(y));
        }
    }
    let range: Vec<usize> = (0..vars).map(|v| if v % 6 >= MU { d } else { n }).collect();

    fn count(v: usize, vals: &mut [usize], range: &[usize], checks: &[Vec<usize>]) -> u64 {
        if v == vals.len() {
            return 1;
        }
        let mut total = 0;
        for x in 1..=range[v] {
            vals[v] = x;
            // a delta between a variable and itself holds trivially
            if checks[v].iter().all(|&u| u == v || vals[u] == x) {
                total += count(v + 1, vals, range, checks);
            }
        }
        total
    }
    let mut vals = vec![0; vars];
    let hits = count(0, &mut vals, &range, &checks);
    Ok(prefactor.scale(&num_rational::BigRational::from_integer(hits.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_values() {
        let p = Pairing::from_pairs(1, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_force_index_sum(&p, 2, 1).unwrap(), GaussRational::from_int(-8));
        let q = Pairing::from_pairs(1, &[(0, 3), (1, 2)]).unwrap();
        for p in [&p, &q] {
            assert_eq!(brute_force_index_sum(p, 1, 1).unwrap(), GaussRational::from_int(-1));
        }
    }

    #[test]
    fn refuses_large_inputs() {
        let p = Pairing::from_pairs(1, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(brute_force_index_sum(&p, 4, 1), Err(Error::ResourceBound { .. })));
        assert!(matches!(brute_force_index_sum(&p, 1, 4), Err(Error::ResourceBound { .. })));
    }

    #[test]
    fn same_family_blocks() {
        let props = general_propagators(ActionSpec::Symmetric).unwrap();
        let p = Pairing::from_pairs(1, &[(0, 2), (1, 3)]).unwrap();
        // (2i/3)² · N^1 · d^2 at N=2, d=2
        let got = brute_force_index_sum_with(&props, &p, 2, 2).unwrap();
        assert_eq!(got, GaussRational::from_frac(-32, 0, 9));
    }
}
