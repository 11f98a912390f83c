//! Wick sums over products of quartic, bilinear and constant vertices.
//!
//! Loops are not traced here. Each vertex owns explicit index variables,
//! each A–B propagator merges variables, and the weight of a pairing is
//! `i^P · N^{#Latin classes} · d^{#Greek classes}`.

use std::collections::BTreeMap;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MixedVertex {
    /// `Σ Tr(A_μB_νA_μB_ν)`.
    Quartic,
    /// `Σ_μ Tr(A_μB_μ)`.
    Bilinear,
    /// A number; contributes no legs.
    Constant,
}

#[derive(Debug, Clone, Copy)]
struct MixedLeg {
    is_a: bool,
    row: usize,
    col: usize,
    greek: usize,
}

struct Layout {
    legs: Vec<MixedLeg>,
    latin: Vec<usize>,
    greek: Vec<usize>,
    vars: usize,
}

fn layout(vertices: &[MixedVertex]) -> Layout {
    let mut legs = Vec::new();
    let (mut latin, mut greek) = (Vec::new(), Vec::new());
    let mut next = 0;
    let mut fresh = |n: usize| {
        let start = next;
        next += n;
        start
    };
    for v in vertices {
        match v {
            MixedVertex::Quartic => {
                // j l m n μ ν
                let b = fresh(6);
                latin.extend(b..b + 4);
                greek.extend([b + 4, b + 5]);
                let (j, l, m, n, mu, nu) = (b, b + 1, b + 2, b + 3, b + 4, b + 5);
                legs.push(MixedLeg { is_a: true, row: j, col: l, greek: mu });
                legs.push(MixedLeg { is_a: false, row: l, col: m, greek: nu });
                legs.push(MixedLeg { is_a: true, row: m, col: n, greek: mu });
                legs.push(MixedLeg { is_a: false, row: n, col: j, greek: nu });
            }
            MixedVertex::Bilinear => {
                // k l μ
                let b = fresh(3);
                latin.extend([b, b + 1]);
                greek.push(b + 2);
                legs.push(MixedLeg { is_a: true, row: b, col: b + 1, greek: b + 2 });
                legs.push(MixedLeg { is_a: false, row: b + 1, col: b, greek: b + 2 });
            }
            MixedVertex::Constant => {}
        }
    }
    Layout { legs, latin, greek, vars: next }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

/// Multiplicities of `(Latin classes, Greek classes)` over all A–B pairings
/// of the legs of `vertices`, together with the propagator count `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedWeights {
    pub propagators: usize,
    pub counts: BTreeMap<(u32, u32), u64>,
}

/// At most this many legs are paired exhaustively.
pub const MIXED_MAX_LEGS: usize = 16;

pub fn mixed_pairing_weights(vertices: &[MixedVertex]) -> Result<MixedWeights> {
    let lay = layout(vertices);
    let n = lay.legs.len();
    if n > MIXED_MAX_LEGS {
        return Err(Error::ResourceBound { what: "mixed-vertex legs", requested: n as u64, limit: MIXED_MAX_LEGS as u64 });
    }
    let mut counts = BTreeMap::new();
    let a_count = lay.legs.iter().filter(|l| l.is_a).count();
    if 2 * a_count == n {
        let mut partner = vec![usize::MAX; n];
        rec(&lay, &mut partner, &mut counts);
    }
    Ok(MixedWeights { propagators: n / 2, counts })
}

fn rec(lay: &Layout, partner: &mut [usize], counts: &mut BTreeMap<(u32, u32), u64>) {
    let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
        let mut parent: Vec<usize> = (0..lay.vars).collect();
        for (x, &y) in partner.iter().enumerate() {
            if x < y {
                let (lx, ly) = (&lay.legs[x], &lay.legs[y]);
                union(&mut parent, lx.row, ly.col);
                union(&mut parent, lx.col, ly.row);
                union(&mut parent, lx.greek, ly.greek);
            }
        }
        let classes = |vars: &[usize], parent: &mut Vec<usize>| {
            let mut roots: Vec<usize> = vars.iter().map(|&v| find(parent, v)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len() as u32
        };
        let key = (classes(&lay.latin, &mut parent), classes(&lay.greek, &mut parent));
        *counts.entry(key).or_default() += 1;
        return;
    };
    for b in a + 1..partner.len() {
        if partner[b] == usize::MAX && lay.legs[a].is_a != lay.legs[b].is_a {
            partner[a] = b;
            partner[b] = a;
            rec(lay, partner, counts);
            partner[a] = usize::MAX;
            partner[b] = usize::MAX;
        }
    }
}
