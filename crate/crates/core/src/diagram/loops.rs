//! Latin and Greek index loops, connectivity and genus of a pairing.

use serde::Serialize;

use super::pairing::{Pairing, MAX_K, MAX_LEGS};
use crate::{Error, Result};

const MAX_PORTS: usize = 2 * MAX_LEGS;

/// Port `2·leg` is the row index of a leg, `2·leg + 1` its column index.
#[inline]
fn vertex_port(port: usize) -> usize {
    let leg = port / 2;
    let base = leg & !3;
    let pos = leg & 3;
    if port & 1 == 1 {
        // col(p) ~ row(p+1)
        2 * (base + (pos + 1) % 4)
    } else {
        // row(p) ~ col(p−1)
        2 * (base + (pos + 3) % 4) + 1
    }
}

#[inline]
fn propagator_port(p: &Pairing, port: usize) -> usize {
    2 * p.partner(port / 2) + (1 - (port & 1))
}

/// Visits each Latin cycle once; `f` receives the vertex of the cycle's
/// first port.
fn for_each_latin_cycle(p: &Pairing, mut f: impl FnMut(usize, usize)) {
    let ports = 2 * p.legs();
    let mut seen = [false; MAX_PORTS];
    for start in 0..ports {
        if seen[start] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        loop {
            let y = vertex_port(x);
            seen[x] = true;
            seen[y] = true;
            len += 2;
            x = propagator_port(p, y);
            if x == start {
                break;
            }
        }
        f(start / 8, len);
    }
}

/// Number `C` of closed Latin index loops.
pub fn trace_latin_loops(p: &Pairing) -> usize {
    let mut c = 0;
    for_each_latin_cycle(p, |_, _| c += 1);
    c
}

/// Lengths of every Latin cycle, in discovery order.
pub fn latin_cycle_lengths(p: &Pairing) -> Vec<usize> {
    let mut out = Vec::new();
    for_each_latin_cycle(p, |_, len| out.push(len));
    out
}

fn for_each_greek_cycle(p: &Pairing, mut f: impl FnMut(usize)) {
    let legs = p.legs();
    let mut seen = [false; MAX_LEGS];
    for start in 0..legs {
        if seen[start] {
            continue;
        }
        let mut x = start;
        loop {
            let y = x ^ 2;
            seen[x] = true;
            seen[y] = true;
            x = p.partner(y);
            if x == start {
                break;
            }
        }
        f(start / 4);
    }
}

/// Number `l` of closed Greek index loops.
pub fn trace_greek_loops(p: &Pairing) -> usize {
    let mut l = 0;
    for_each_greek_cycle(p, |_| l += 1);
    l
}

fn find(parent: &mut [u8; MAX_K], mut x: usize) -> usize {
    while parent[x] as usize != x {
        parent[x] = parent[parent[x] as usize];
        x = parent[x] as usize;
    }
    x
}

/// Compact per-pairing summary, cheap enough for the exhaustive folds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LoopSummary {
    pub c: u8,
    pub l: u8,
    pub components: u8,
    /// Sum of the per-component genera.
    pub genus: u8,
    pub tadpole: bool,
    /// Propagators joining two legs of the same family.
    pub same_family: u8,
}

struct Components {
    root_of: [u8; MAX_K],
    count: usize,
}

fn components(p: &Pairing) -> Components {
    let k = p.k();
    let mut parent = [0u8; MAX_K];
    for (v, slot) in parent.iter_mut().enumerate().take(k) {
        *slot = v as u8;
    }
    for (a, b) in p.pairs() {
        let ra = find(&mut parent, a as usize / 4);
        let rb = find(&mut parent, b as usize / 4);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb) as u8;
        }
    }
    // relabel roots to 0..count in order of first vertex
    let mut label = [u8::MAX; MAX_K];
    let mut root_of = [0u8; MAX_K];
    let mut count = 0;
    for (v, slot) in root_of.iter_mut().enumerate().take(k) {
        let r = find(&mut parent, v);
        if label[r] == u8::MAX {
            label[r] = count as u8;
            count += 1;
        }
        *slot = label[r];
    }
    Components { root_of, count }
}

fn genus_of(c: usize, v: usize) -> Result<u32> {
    let twice = 2 + v as i64 - c as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::InvariantViolation(format!(
            "component with C={c}, V={v} has non-integral or negative genus"
        )));
    }
    Ok((twice / 2) as u32)
}

/// Per-component data: vertex, Latin-loop and Greek-loop counts.
fn per_component(p: &Pairing) -> (Components, [usize; MAX_K], [usize; MAX_K], [usize; MAX_K]) {
    let comps = components(p);
    let mut vs = [0usize; MAX_K];
    let mut cs = [0usize; MAX_K];
    let mut ls = [0usize; MAX_K];
    for v in 0..p.k() {
        vs[comps.root_of[v] as usize] += 1;
    }
    for_each_latin_cycle(p, |v, _| cs[comps.root_of[v] as usize] += 1);
    for_each_greek_cycle(p, |v| ls[comps.root_of[v] as usize] += 1);
    (comps, vs, cs, ls)
}

pub fn is_tadpole(p: &Pairing) -> bool {
    p.pairs().any(|(a, b)| a / 4 == b / 4)
}

/// Loop counts, components and total genus without allocating.
pub fn analyze(p: &Pairing) -> Result<LoopSummary> {
    let (comps, vs, cs, ls) = per_component(p);
    let mut genus = 0;
    for i in 0..comps.count {
        genus += genus_of(cs[i], vs[i])?;
    }
    let same_family = p.pairs().filter(|(a, b)| (a ^ b) & 1 == 0).count();
    Ok(LoopSummary {
        c: cs[..comps.count].iter().sum::<usize>() as u8,
        l: ls[..comps.count].iter().sum::<usize>() as u8,
        components: comps.count as u8,
        genus: genus as u8,
        tadpole: is_tadpole(p),
        same_family: same_family as u8,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: usize,
    #[serde(rename = "C")]
    pub c: usize,
    pub l: usize,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    #[serde(rename = "C")]
    pub c: usize,
    pub l: usize,
    pub components: usize,
    pub genus_per_component: Vec<u32>,
    pub per_component: Vec<ComponentReport>,
}

/// Connected components of the vertex graph and the genus of each,
/// from `C_c − V_c = 2 − 2p_c`.
pub fn components_and_genus(p: &Pairing) -> Result<LoopReport> {
    let (comps, vs, cs, ls) = per_component(p);
    let mut per = Vec::with_capacity(comps.count);
    for i in 0..comps.count {
        per.push(ComponentReport { vertices: vs[i], c: cs[i], l: ls[i], genus: genus_of(cs[i], vs[i])? });
    }
    Ok(LoopReport {
        c: per.iter().map(|r| r.c).sum(),
        l: per.iter().map(|r| r.l).sum(),
        components: comps.count,
        genus_per_component: per.iter().map(|r| r.genus).collect(),
        per_component: per,
    })
}
