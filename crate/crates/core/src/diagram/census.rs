//! Symbolic diagram weights and exhaustive folds over all pairings.

use std::collections::BTreeMap;

use serde::Serialize;

use super::loops::{analyze, components_and_genus, is_tadpole, LoopSummary};
use super::pairing::{check_k, enumerate_matchings, MatchMode, Pairing};
use crate::Result;

/// `i^{phase_ipow} · N^C · d^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DiagramWeight {
    pub k: usize,
    #[serde(rename = "C")]
    pub c: usize,
    pub l: usize,
    pub phase_ipow: i64,
    pub connected: bool,
}

/// Weight of a pairing under the standard action: one factor `i` per
/// propagator. Same-family propagators vanish there, so `connected`
/// additionally requires an A–B-only pairing.
pub fn diagram_weight(p: &Pairing) -> Result<DiagramWeight> {
    let s = analyze(p)?;
    Ok(DiagramWeight {
        k: p.k(),
        c: s.c as usize,
        l: s.l as usize,
        phase_ipow: 2 * p.k() as i64,
        connected: s.components == 1 && p.is_ab_only(),
    })
}

/// Everything the series and knot layers need to know about a pairing,
/// up to the pairing itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagramClass {
    #[serde(rename = "C")]
    pub c: u8,
    pub l: u8,
    pub components: u8,
    pub genus: u8,
    pub tadpole: bool,
    pub same_family: u8,
}

impl From<LoopSummary> for DiagramClass {
    fn from(s: LoopSummary) -> Self {
        DiagramClass {
            c: s.c,
            l: s.l,
            components: s.components,
            genus: s.genus,
            tadpole: s.tadpole,
            same_family: s.same_family,
        }
    }
}

impl DiagramClass {
    pub fn connected(&self) -> bool {
        self.components == 1
    }
}

/// Multiplicity of each [`DiagramClass`] over every pairing of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub k: usize,
    pub mode: MatchMode,
    pub classes: BTreeMap<DiagramClass, u64>,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.classes.values().sum()
    }

    fn merge(mut self, other: Census) -> Census {
        for (class, n) in other.classes {
            *self.classes.entry(class).or_default() += n;
        }
        self
    }
}

fn fold(k: usize, mode: MatchMode, it: impl Iterator<Item = Pairing>) -> Result<Census> {
    let mut classes = BTreeMap::new();
    for p in it {
        *classes.entry(DiagramClass::from(analyze(&p)?)).or_default() += 1;
    }
    Ok(Census { k, mode, classes })
}

/// Single-threaded census; the reference for [`census`].
pub fn census_serial(k: usize, mode: MatchMode) -> Result<Census> {
    fold(k, mode, enumerate_matchings(k, mode)?)
}

/// Census over every pairing of order `k`. With the `parallel` feature the
/// matching space is split by its first propagators and folded on the
/// current rayon pool; counts are integers, so the result is identical to
/// [`census_serial`].
pub fn census(k: usize, mode: MatchMode) -> Result<Census> {
    check_k(k, mode)?;
    par_map_ranges(k, mode, |it| fold(k, mode, it))?
        .into_iter()
        .try_fold(Census { k, mode, classes: BTreeMap::new() }, |acc, c| Ok(acc.merge(c?)))
}

/// Runs `f` on each prefix range of the enumeration and returns the results
/// in enumeration order.
pub(crate) fn par_map_ranges<T: Send>(
    k: usize,
    mode: MatchMode,
    f: impl Fn(super::pairing::Matchings) -> T + Sync,
) -> Result<Vec<T>> {
    check_k(k, mode)?;
    let depth = if k >= 4 { 2 } else { 1 };
    let prefixes = super::pairing::prefixes(k, mode, depth);
    let run = |prefix: &Vec<(u8, u8)>| f(super::pairing::matchings_with_prefix(k, mode, prefix));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(prefixes.par_iter().map(run).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(prefixes.iter().map(run).collect())
    }
}

/// Pairing count per order, computed by streaming.
pub fn count_matchings(k: usize, mode: MatchMode) -> Result<u64> {
    Ok(par_map_ranges(k, mode, |it| it.count() as u64)?.into_iter().sum())
}

/// One line of a diagram dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramRecord {
    pub k: usize,
    #[serde(rename = "match")]
    pub matching: Vec<[u8; 2]>,
    #[serde(rename = "C")]
    pub c: usize,
    pub l: usize,
    pub components: usize,
    pub genus: Vec<u32>,
    pub tadpole: bool,
}

impl DiagramRecord {
    pub fn from_pairing(p: &Pairing) -> Result<Self> {
        let r = components_and_genus(p)?;
        Ok(DiagramRecord {
            k: p.k(),
            matching: p.pairs().map(|(a, b)| [a, b]).collect(),
            c: r.c,
            l: r.l,
            components: r.components,
            genus: r.genus_per_component,
            tadpole: is_tadpole(p),
        })
    }
}

/// Dump records for every pairing of order `k`, in enumeration order.
pub fn diagram_records(k: usize, mode: MatchMode) -> Result<Vec<DiagramRecord>> {
    let chunks = par_map_ranges(k, mode, |it| it.map(|p| DiagramRecord::from_pairing(&p)).collect::<Result<Vec<_>>>())?;
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_weights() {
        let p = Pairing::from_pairs(1, &[(0, 1), (2, 3)]).unwrap();
        let w = diagram_weight(&p).unwrap();
        assert_eq!((w.c, w.l, w.phase_ipow, w.connected), (3, 1, 2, true));
        let c = census(1, MatchMode::AbOnly).unwrap();
        assert_eq!(c.total(), 2);
        assert_eq!(c.classes.len(), 1);
    }

    #[test]
    fn disconnected_weight_is_product() {
        let p = Pairing::from_pairs(2, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let w = diagram_weight(&p).unwrap();
        assert_eq!((w.c, w.l, w.phase_ipow, w.connected), (6, 2, 4, false));
    }

    #[test]
    fn parallel_census_equals_serial() {
        for k in 1..=4 {
            for mode in [MatchMode::AbOnly, MatchMode::All] {
                assert_eq!(census(k, mode).unwrap(), census_serial(k, mode).unwrap());
            }
        }
    }

    #[test]
    fn records_follow_enumeration_order() {
        let recs = diagram_records(2, MatchMode::AbOnly).unwrap();
        let serial: Vec<_> = enumerate_matchings(2, MatchMode::AbOnly)
            .unwrap()
            .map(|p| DiagramRecord::from_pairing(&p).unwrap())
            .collect();
        assert_eq!(recs, serial);
        assert_eq!(count_matchings(3, MatchMode::All).unwrap(), 10395);
    }
}
