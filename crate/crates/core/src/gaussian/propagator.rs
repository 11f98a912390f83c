//! Propagators `⟨X_μ^{kl} Y_ν^{mn}⟩` and Wick moments built from them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::basis::{Family, ModelDims, C64};
use crate::series::GaussRational;
use crate::{Error, Result};

/// A single matrix entry `A_μ^{kl}` or `B_μ^{kl}` (1-based indices) tied to
/// the `(N, d)` context it was created in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntrySymbol {
    dims: ModelDims,
    pub family: Family,
    pub mu: usize,
    pub row: usize,
    pub col: usize,
}

impl EntrySymbol {
    pub fn new(dims: ModelDims, family: Family, mu: usize, row: usize, col: usize) -> Result<Self> {
        let n = dims.n();
        if mu == 0 || mu > dims.d() || row == 0 || row > n || col == 0 || col > n {
            return Err(Error::invalid(format!(
                "entry {family:?}_{mu}^{{{row}{col}}} out of bounds for N={n}, d={}",
                dims.d()
            )));
        }
        Ok(EntrySymbol { dims, family, mu, row, col })
    }

    pub fn a(dims: ModelDims, mu: usize, row: usize, col: usize) -> Result<Self> {
        Self::new(dims, Family::A, mu, row, col)
    }

    pub fn b(dims: ModelDims, mu: usize, row: usize, col: usize) -> Result<Self> {
        Self::new(dims, Family::B, mu, row, col)
    }

    pub fn dims(&self) -> ModelDims {
        self.dims
    }

    /// Every entry of both families in a given context.
    pub fn all(dims: ModelDims) -> Vec<EntrySymbol> {
        let mut out = Vec::with_capacity(2 * dims.coords_per_family());
        for family in [Family::A, Family::B] {
            for mu in 1..=dims.d() {
                for row in 1..=dims.n() {
                    for col in 1..=dims.n() {
                        out.push(EntrySymbol { dims, family, mu, row, col });
                    }
                }
            }
        }
        out
    }

    fn key(&self) -> (Family, usize, usize, usize) {
        (self.family, self.mu, self.row, self.col)
    }
}

impl PartialOrd for EntrySymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EntrySymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::fmt::Display for EntrySymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}_{}^{{{},{}}}", self.family, self.mu, self.row, self.col)
    }
}

/// Which quadratic form the Gaussian weight comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSpec {
    /// `Tr(A_μ B_μ)`.
    Standard,
    /// `Tr(A_μ A_μ) + Tr(B_μ B_μ) + Tr(A_μ B_μ)`.
    Symmetric,
}

impl ActionSpec {
    /// Per-entry-pair coupling `M` with `S₂ = ½ Σ Tr(X_a M_ab X_b)`.
    pub fn coupling(self) -> [[i64; 2]; 2] {
        match self {
            ActionSpec::Standard => [[0, 1], [1, 0]],
            ActionSpec::Symmetric => [[2, 1], [1, 2]],
        }
    }
}

/// Family-block propagator values; every block carries the index pattern
/// `δ_{μν} δ^{kn} δ^{lm}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropagatorMatrix {
    blocks: [[GaussRational; 2]; 2],
}

impl PropagatorMatrix {
    pub fn block(&self, x: Family, y: Family) -> &GaussRational {
        &self.blocks[x.index()][y.index()]
    }

    pub fn block_c64(&self, x: Family, y: Family) -> C64 {
        let (re, im) = self.block(x, y).to_f64_pair();
        C64::new(re, im)
    }

    /// True when only A–B contractions survive.
    pub fn is_off_diagonal(&self) -> bool {
        self.blocks[0][0].is_zero() && self.blocks[1][1].is_zero()
    }
}

/// Inverts the 2×2 coupling of `action` exactly and returns `i·M⁻¹`.
pub fn general_propagators(action: ActionSpec) -> Result<PropagatorMatrix> {
    let [[a, b], [c, d]] = action.coupling();
    let det = a * d - b * c;
    if det == 0 {
        return Err(Error::Singular(format!("coupling matrix of {action:?} is not invertible")));
    }
    let entry = |v: i64| GaussRational::from_frac(0, v, det);
    Ok(PropagatorMatrix {
        blocks: [[entry(d), entry(-b)], [entry(-c), entry(a)]],
    })
}

fn check_same_context(x: &EntrySymbol, y: &EntrySymbol) -> Result<()> {
    if x.dims != y.dims {
        return Err(Error::invalid(format!("entries {x} and {y} come from different (N, d) contexts")));
    }
    Ok(())
}

/// `⟨x y⟩ = i δ_{μν} δ^{kn} δ^{lm}` for an A–B pair, 0 otherwise.
pub fn propagator(x: &EntrySymbol, y: &EntrySymbol) -> Result<C64> {
    check_same_context(x, y)?;
    Ok(if x.family != y.family && index_match(x, y) {
        C64::new(0.0, 1.0)
    } else {
        C64::new(0.0, 0.0)
    })
}

fn index_match(x: &EntrySymbol, y: &EntrySymbol) -> bool {
    x.mu == y.mu && x.row == y.col && x.col == y.row
}

/// Propagator for an arbitrary family-block matrix.
pub fn propagator_with(props: &PropagatorMatrix, x: &EntrySymbol, y: &EntrySymbol) -> Result<C64> {
    check_same_context(x, y)?;
    Ok(if index_match(x, y) {
        props.block_c64(x.family, y.family)
    } else {
        C64::new(0.0, 0.0)
    })
}

/// Normalized moment `⟨x₁ ⋯ x_{2m}⟩` of the standard action: the sum over
/// all unordered pairings of products of propagators. Odd moments vanish.
pub fn wick_moment(entries: &[EntrySymbol]) -> Result<C64> {
    let props = general_propagators(ActionSpec::Standard)?;
    wick_moment_with(&props, entries)
}

pub fn wick_moment_with(props: &PropagatorMatrix, entries: &[EntrySymbol]) -> Result<C64> {
    if let Some(first) = entries.first() {
        for e in &entries[1..] {
            check_same_context(first, e)?;
        }
    }
    if entries.len() % 2 == 1 {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut used = vec![false; entries.len()];
    Ok(pairing_sum(props, entries, &mut used))
}

/// Number of pairings the Wick sum visits for `len` entries, counted by
/// running the same recursion with unit weights.
pub fn wick_pairing_count(len: usize) -> u64 {
    fn count(used: &mut [bool]) -> u64 {
        let Some(first) = used.iter().position(|u| !u) else {
            return 1;
        };
        used[first] = true;
        let mut total = 0;
        for j in first + 1..used.len() {
            if !used[j] {
                used[j] = true;
                total += count(used);
                used[j] = false;
            }
        }
        used[first] = false;
        total
    }
    if len % 2 == 1 {
        return 0;
    }
    count(&mut vec![false; len])
}

fn pairing_sum(props: &PropagatorMatrix, entries: &[EntrySymbol], used: &mut [bool]) -> C64 {
    let Some(first) = used.iter().position(|u| !u) else {
        return C64::new(1.0, 0.0);
    };
    used[first] = true;
    let mut total = C64::new(0.0, 0.0);
    for j in first + 1..entries.len() {
        if used[j] {
            continue;
        }
        let x = &entries[first];
        let y = &entries[j];
        if !index_match(x, y) {
            continue;
        }
        let p = props.block_c64(x.family, y.family);
        if p == C64::new(0.0, 0.0) {
            continue;
        }
        used[j] = true;
        total += p * pairing_sum(props, entries, used);
        used[j] = false;
    }
    used[first] = false;
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(n: usize, d: usize) -> ModelDims {
        ModelDims::new(n, d).unwrap()
    }

    #[test]
    fn theorem_pattern() {
        let c = dims(2, 2);
        let a12 = EntrySymbol::a(c, 1, 1, 2).unwrap();
        let i = C64::new(0.0, 1.0);
        assert_eq!(propagator(&a12, &EntrySymbol::b(c, 1, 2, 1).unwrap()).unwrap(), i);
        assert_eq!(propagator(&a12, &EntrySymbol::a(c, 1, 2, 1).unwrap()).unwrap(), C64::default());
        assert_eq!(propagator(&a12, &EntrySymbol::b(c, 2, 2, 1).unwrap()).unwrap(), C64::default());
        assert_eq!(propagator(&a12, &EntrySymbol::b(c, 1, 1, 2).unwrap()).unwrap(), C64::default());
    }

    #[test]
    fn propagator_is_symmetric() {
        let c = dims(2, 2);
        let all = EntrySymbol::all(c);
        for x in &all {
            for y in &all {
                assert_eq!(propagator(x, y).unwrap(), propagator(y, x).unwrap());
            }
        }
    }

    #[test]
    fn mismatched_contexts_rejected() {
        let x = EntrySymbol::a(dims(2, 1), 1, 1, 2).unwrap();
        let y = EntrySymbol::b(dims(3, 1), 1, 2, 1).unwrap();
        assert!(matches!(propagator(&x, &y), Err(Error::InvalidInput(_))));
        assert!(EntrySymbol::a(dims(2, 1), 2, 1, 1).is_err());
    }

    #[test]
    fn general_propagators_blocks() {
        let std = general_propagators(ActionSpec::Standard).unwrap();
        assert_eq!(std.block(Family::A, Family::B), &GaussRational::i());
        assert!(std.is_off_diagonal());
        let sym = general_propagators(ActionSpec::Symmetric).unwrap();
        assert_eq!(sym.block(Family::A, Family::A), &GaussRational::from_frac(0, 2, 3));
        assert_eq!(sym.block(Family::B, Family::B), &GaussRational::from_frac(0, 2, 3));
        assert_eq!(sym.block(Family::A, Family::B), &GaussRational::from_frac(0, -1, 3));
        assert_eq!(sym.block(Family::B, Family::A), sym.block(Family::A, Family::B));
    }

    #[test]
    fn standard_blocks_reproduce_propagator() {
        let c = dims(2, 2);
        let props = general_propagators(ActionSpec::Standard).unwrap();
        let all = EntrySymbol::all(c);
        for x in &all {
            for y in &all {
                assert_eq!(propagator_with(&props, x, y).unwrap(), propagator(x, y).unwrap());
            }
        }
    }

    #[test]
    fn small_moments() {
        let c = dims(1, 1);
        let a = EntrySymbol::a(c, 1, 1, 1).unwrap();
        let b = EntrySymbol::b(c, 1, 1, 1).unwrap();
        assert_eq!(wick_moment(&[a]).unwrap(), C64::default());
        assert_eq!(wick_moment(&[]).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(wick_moment(&[a, b, a, b]).unwrap(), C64::new(-2.0, 0.0));
    }

    #[test]
    fn pairing_counts_are_double_factorials() {
        assert_eq!(wick_pairing_count(2), 1);
        assert_eq!(wick_pairing_count(4), 3);
        assert_eq!(wick_pairing_count(6), 15);
        assert_eq!(wick_pairing_count(8), 105);
        assert_eq!(wick_pairing_count(5), 0);
    }
}
