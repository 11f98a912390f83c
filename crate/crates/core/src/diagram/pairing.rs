//! Legs of quartic vertices and perfect matchings on them.

use serde::{Deserialize, Serialize};

use crate::gaussian::Family;
use crate::{Error, Result};

/// Hard cap on vertices for exhaustive A–B enumeration: `(2·6)! = 479 001 600`.
pub const MAX_K: usize = 6;
/// Hard cap when every leg may pair with every other: `19!! ≈ 6.5·10⁸`.
pub const MAX_K_ALL: usize = 5;
pub const MAX_LEGS: usize = 4 * MAX_K;

pub(crate) const UNMATCHED: u8 = u8::MAX;

/// Leg `id` of a diagram with `k` quartic vertices: vertex `id / 4`,
/// position `id % 4` in the trace `A B A B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Leg(pub u8);

impl Leg {
    pub fn vertex(self) -> usize {
        (self.0 / 4) as usize
    }

    pub fn position(self) -> usize {
        (self.0 % 4) as usize
    }

    pub fn family(self) -> Family {
        if self.0.is_multiple_of(2) {
            Family::A
        } else {
            Family::B
        }
    }

    /// The leg across the vertex sharing this leg's Greek index.
    pub fn opposite(self) -> Leg {
        Leg(self.0 ^ 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// Only A–B propagators (the standard action).
    AbOnly,
    /// Every leg may pair with every other.
    All,
}

impl MatchMode {
    pub fn cap(self) -> usize {
        match self {
            MatchMode::AbOnly => MAX_K,
            MatchMode::All => MAX_K_ALL,
        }
    }

    fn compatible(self, a: u8, b: u8) -> bool {
        match self {
            MatchMode::AbOnly => (a ^ b) & 1 == 1,
            MatchMode::All => true,
        }
    }
}

/// A fixed-point-free involution on the `4k` legs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pairing {
    k: u8,
    partner: [u8; MAX_LEGS],
}

impl std::fmt::Debug for Pairing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pairing(k={}, {:?})", self.k, self.pairs().collect::<Vec<_>>())
    }
}

pub(crate) fn check_k(k: usize, mode: MatchMode) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if k > mode.cap() {
        return Err(Error::ResourceBound {
            what: "vertex count k",
            requested: k as u64,
            limit: mode.cap() as u64,
        });
    }
    Ok(())
}

impl Pairing {
    /// Builds a pairing from a full partner table, validating the
    /// involution.
    pub fn from_partners(k: usize, partners: &[u8]) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return Err(Error::invalid(format!("k must be in 1..={MAX_K}, got {k}")));
        }
        let legs = 4 * k;
        if partners.len() != legs {
            return Err(Error::invalid(format!("expected {legs} partners, got {}", partners.len())));
        }
        let mut partner = [UNMATCHED; MAX_LEGS];
        for (a, &b) in partners.iter().enumerate() {
            if b as usize >= legs || b as usize == a || partners[b as usize] as usize != a {
                return Err(Error::invalid(format!("leg {a} -> {b} is not a fixed-point-free involution")));
            }
            partner[a] = b;
        }
        Ok(Pairing { k: k as u8, partner })
    }

    /// Builds a pairing from its list of propagators.
    pub fn from_pairs(k: usize, pairs: &[(u8, u8)]) -> Result<Self> {
        let legs = 4 * k;
        let mut partners = vec![UNMATCHED; legs];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x as usize >= legs {
                    return Err(Error::invalid(format!("leg {x} out of range for k={k}")));
                }
                if partners[x as usize] != UNMATCHED {
                    return Err(Error::invalid(format!("leg {x} paired twice")));
                }
            }
            partners[a as usize] = b;
            partners[b as usize] = a;
        }
        if partners.contains(&UNMATCHED) {
            return Err(Error::invalid("some legs are unpaired"));
        }
        Self::from_partners(k, &partners)
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn legs(&self) -> usize {
        4 * self.k as usize
    }

    pub fn partner(&self, leg: usize) -> usize {
        self.partner[leg] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner[..self.legs()]
    }

    /// Propagators `(a, b)` with `a < b`, in increasing order of `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        (0..self.legs() as u8).filter_map(move |a| {
            let b = self.partner[a as usize];
            (a < b).then_some((a, b))
        })
    }

    pub fn is_ab_only(&self) -> bool {
        self.pairs().all(|(a, b)| MatchMode::AbOnly.compatible(a, b))
    }
}

/// Closed-form number of matchings: `(2k)!` or `(4k−1)!!`.
pub fn matching_count(k: usize, mode: MatchMode) -> u128 {
    match mode {
        MatchMode::AbOnly => (1..=(2 * k) as u128).product(),
        MatchMode::All => (1..4 * k as u128).step_by(2).product(),
    }
}

/// Streaming enumeration of pairings in lexicographic order of the partner
/// table. Each step pairs the lowest unmatched leg with the next admissible
/// higher leg; memory stays `O(k)`.
#[derive(Debug, Clone)]
pub struct Matchings {
    k: u8,
    mode: MatchMode,
    partner: [u8; MAX_LEGS],
    stack: [(u8, u8); MAX_LEGS / 2],
    depth: usize,
    floor: usize,
    started: bool,
    done: bool,
}

impl Matchings {
    fn with_prefix(k: usize, mode: MatchMode, prefix: &[(u8, u8)]) -> Self {
        let mut m = Matchings {
            k: k as u8,
            mode,
            partner: [UNMATCHED; MAX_LEGS],
            stack: [(0, 0); MAX_LEGS / 2],
            depth: 0,
            floor: prefix.len(),
            started: false,
            done: false,
        };
        for &(a, b) in prefix {
            m.push(a, b);
        }
        m
    }

    fn legs(&self) -> u8 {
        4 * self.k
    }

    fn push(&mut self, a: u8, b: u8) {
        self.partner[a as usize] = b;
        self.partner[b as usize] = a;
        self.stack[self.depth] = (a, b);
        self.depth += 1;
    }

    fn pop(&mut self) -> (u8, u8) {
        self.depth -= 1;
        let (a, b) = self.stack[self.depth];
        self.partner[a as usize] = UNMATCHED;
        self.partner[b as usize] = UNMATCHED;
        (a, b)
    }

    fn lowest_unmatched(&self) -> Option<u8> {
        (0..self.legs()).find(|&x| self.partner[x as usize] == UNMATCHED)
    }

    fn next_candidate(&self, a: u8, after: u8) -> Option<u8> {
        (after + 1..self.legs()).find(|&b| self.partner[b as usize] == UNMATCHED && self.mode.compatible(a, b))
    }

    /// Completes the current partial matching with smallest choices.
    fn descend(&mut self) -> bool {
        while let Some(a) = self.lowest_unmatched() {
            match self.next_candidate(a, a) {
                Some(b) => self.push(a, b),
                None => return false,
            }
        }
        true
    }

    fn advance(&mut self) -> bool {
        while self.depth > self.floor {
            let (a, b) = self.pop();
            if let Some(b2) = self.next_candidate(a, b) {
                self.push(a, b2);
                if self.descend() {
                    return true;
                }
            }
        }
        false
    }

    fn current(&self) -> Pairing {
        Pairing { k: self.k, partner: self.partner }
    }
}

impl Iterator for Matchings {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        let ok = if self.started {
            self.advance()
        } else {
            self.started = true;
            self.descend() || self.advance()
        };
        if ok {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// Every pairing of `k` vertices in `mode`, streamed in lexicographic order.
pub fn enumerate_matchings(k: usize, mode: MatchMode) -> Result<Matchings> {
    check_k(k, mode)?;
    Ok(Matchings::with_prefix(k, mode, &[]))
}

/// Partial matchings fixing the first `depth` choices, in enumeration order.
/// Together the ranges they seed partition the full enumeration.
pub(crate) fn prefixes(k: usize, mode: MatchMode, depth: usize) -> Vec<Vec<(u8, u8)>> {
    fn rec(m: &mut Matchings, depth: usize, out: &mut Vec<Vec<(u8, u8)>>) {
        if m.depth == depth {
            out.push(m.stack[..m.depth].to_vec());
            return;
        }
        let Some(a) = m.lowest_unmatched() else {
            out.push(m.stack[..m.depth].to_vec());
            return;
        };
        let mut after = a;
        while let Some(b) = m.next_candidate(a, after) {
            m.push(a, b);
            rec(m, depth, out);
            m.pop();
            after = b;
        }
    }
    let mut m = Matchings::with_prefix(k, mode, &[]);
    let mut out = Vec::new();
    rec(&mut m, depth.min(2 * k), &mut out);
    out
}

/// Enumeration of one range seeded by a prefix from [`prefixes`].
pub(crate) fn matchings_with_prefix(k: usize, mode: MatchMode, prefix: &[(u8, u8)]) -> Matchings {
    Matchings::with_prefix(k, mode, prefix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_counts() {
        assert_eq!(enumerate_matchings(1, MatchMode::All).unwrap().count(), 3);
        let ab: Vec<_> = enumerate_matchings(1, MatchMode::AbOnly).unwrap().collect();
        assert_eq!(ab.len(), 2);
        assert_eq!(ab[0].pairs().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert_eq!(ab[1].pairs().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn k2_counts() {
        assert_eq!(enumerate_matchings(2, MatchMode::All).unwrap().count(), 105);
        assert_eq!(enumerate_matchings(2, MatchMode::AbOnly).unwrap().count(), 24);
    }

    #[test]
    fn counts_match_closed_forms_up_to_4() {
        for k in 1..=4 {
            for mode in [MatchMode::AbOnly, MatchMode::All] {
                let n = enumerate_matchings(k, mode).unwrap().count() as u128;
                assert_eq!(n, matching_count(k, mode), "k={k} {mode:?}");
            }
        }
    }

    #[test]
    fn order_is_strictly_lexicographic() {
        let all: Vec<_> = enumerate_matchings(3, MatchMode::All).unwrap().collect();
        for w in all.windows(2) {
            assert!(w[0].partners() < w[1].partners());
        }
        assert!(all.iter().all(|p| Pairing::from_partners(3, p.partners()).is_ok()));
    }

    #[test]
    fn prefixes_partition_the_enumeration() {
        for mode in [MatchMode::AbOnly, MatchMode::All] {
            let serial: Vec<_> = enumerate_matchings(3, mode).unwrap().collect();
            let mut joined = Vec::new();
            for p in prefixes(3, mode, 2) {
                joined.extend(matchings_with_prefix(3, mode, &p));
            }
            assert_eq!(serial, joined);
        }
    }

    #[test]
    fn refuses_over_cap() {
        assert!(matches!(
            enumerate_matchings(7, MatchMode::AbOnly),
            Err(Error::ResourceBound { .. })
        ));
        assert!(matches!(enumerate_matchings(6, MatchMode::All), Err(Error::ResourceBound { .. })));
        assert!(enumerate_matchings(0, MatchMode::AbOnly).is_err());
    }

    #[test]
    fn from_pairs_validates() {
        assert!(Pairing::from_pairs(1, &[(0, 1), (2, 3)]).is_ok());
        assert!(Pairing::from_pairs(1, &[(0, 1), (1, 3)]).is_err());
        assert!(Pairing::from_pairs(1, &[(0, 1)]).is_err());
        assert!(Pairing::from_partners(1, &[1, 0, 2, 2]).is_err());
    }

    #[test]
    fn leg_geometry() {
        let l = Leg(6);
        assert_eq!((l.vertex(), l.position(), l.family()), (1, 2, Family::A));
        assert_eq!(l.opposite(), Leg(4));
        assert_eq!(Leg(7).family(), Family::B);
    }
}
