//! Genus/link decomposition `ln Z = const + N² Σ_{l,p} F_{l,p}(g) N^{−2p} d^l`
//! and the limit `lim_{d→0} lim_{N→∞} ln Z / (dN²)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::assemble::{connected_assemble, Convention};
use super::gauss::GaussRational;
use super::triseries::{Term, TriSeries};
use crate::{Error, Result};

/// Polynomial in `g` keyed by power.
pub type GPoly = BTreeMap<u32, GaussRational>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlpTable {
    pub kmax: u32,
    pub entries: BTreeMap<(u32, u32), GPoly>,
}

impl FlpTable {
    /// `F_{l,p}(g)`; zero when absent.
    pub fn get(&self, l: u32, p: u32) -> GPoly {
        self.entries.get(&(l, p)).cloned().unwrap_or_default()
    }

    /// `N² Σ F_{l,p}(g) N^{−2p} d^l` as a series.
    pub fn reconstruct(&self) -> TriSeries {
        let mut out = TriSeries::zero(self.kmax);
        for (&(l, p), poly) in &self.entries {
            for (&k, c) in poly {
                out.add_term(Term::new(k, 2 - 2 * p as i32, l), c.clone());
            }
        }
        out
    }
}

/// Sorts every coefficient of the normalized log series onto the lattice
/// `N^{2−2p} d^l`, `p ≥ 0`, `l ≥ 1`.
pub fn extract_flp(ln_z_norm: &TriSeries) -> Result<FlpTable> {
    let mut table = FlpTable { kmax: ln_z_norm.kmax(), entries: BTreeMap::new() };
    for (t, c) in ln_z_norm.terms() {
        let a = t.n_pow;
        if a > 2 || (2 - a) % 2 != 0 || t.d_pow == 0 || t.k == 0 {
            return Err(Error::StructuralViolation(format!(
                "coefficient {c} at g^{} N^{} d^{} lies off the genus/link lattice",
                t.k, t.n_pow, t.d_pow
            )));
        }
        let p = ((2 - a) / 2) as u32;
        table.entries.entry((t.d_pow, p)).or_default().insert(t.k, c.clone());
    }
    Ok(table)
}

/// `ln π + (polynomial in g)`, with `ln π` kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FOfG {
    pub ln_pi: GaussRational,
    pub poly: GPoly,
}

impl fmt::Display for FOfG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.ln_pi.is_zero() {
            parts.push(if self.ln_pi.is_one() { "ln π".to_string() } else { format!("({})·ln π", self.ln_pi) });
        }
        for (k, c) in &self.poly {
            let g = if *k == 1 { "g".to_string() } else { format!("g^{k}") };
            parts.push(format!("({c})·{g}"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `F(g) = ln π + F_{1,0}(g)`.
pub fn f_of_g(table: &FlpTable) -> FOfG {
    FOfG { ln_pi: GaussRational::one(), poly: table.get(1, 0) }
}

/// Opaque constants of the free partition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogSymbol {
    Ln2,
    LnPi,
}

impl fmt::Display for LogSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogSymbol::Ln2 => "ln 2",
            LogSymbol::LnPi => "ln π",
        })
    }
}

/// `coeff · symbol · N^{n_pow} d^{d_pow}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstTerm {
    pub symbol: LogSymbol,
    pub n_pow: i32,
    pub d_pow: u32,
    pub coeff: GaussRational,
}

impl fmt::Display for ConstTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.coeff.is_one() { String::new() } else { format!("({})·", self.coeff) };
        let d = match self.d_pow {
            0 => String::new(),
            1 => "d".to_string(),
            p => format!("d^{p}"),
        };
        let n = match self.n_pow {
            0 => String::new(),
            1 => "N".to_string(),
            p => format!("N^{p}"),
        };
        write!(f, "{c}{d}{n}·{}", self.symbol)
    }
}

/// `ln(2^{dN} π^{dN²})`.
pub fn free_log_constants() -> Vec<ConstTerm> {
    vec![
        ConstTerm { symbol: LogSymbol::Ln2, n_pow: 1, d_pow: 1, coeff: GaussRational::one() },
        ConstTerm { symbol: LogSymbol::LnPi, n_pow: 2, d_pow: 1, coeff: GaussRational::one() },
    ]
}

/// The constant as printed in the literature's expansion line,
/// `N·ln 2 + dN²·ln π`, reported next to [`free_log_constants`].
pub fn printed_log_constants() -> Vec<ConstTerm> {
    vec![
        ConstTerm { symbol: LogSymbol::Ln2, n_pow: 1, d_pow: 0, coeff: GaussRational::one() },
        ConstTerm { symbol: LogSymbol::LnPi, n_pow: 2, d_pow: 1, coeff: GaussRational::one() },
    ]
}

/// `ln Z` including the free-partition constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullLogSeries {
    pub constants: Vec<ConstTerm>,
    pub series: TriSeries,
}

impl FullLogSeries {
    pub fn new(series: TriSeries) -> Self {
        FullLogSeries { constants: free_log_constants(), series }
    }
}

/// Full `ln Z` of the standard action from its connected diagrams.
pub fn full_log_series(kmax: usize, convention: Convention) -> Result<FullLogSeries> {
    Ok(FullLogSeries::new(connected_assemble(kmax, convention)?))
}

/// Divides by `dN²`, lets `N → ∞` and then `d → 0`, term by term.
/// A surviving positive power of `N`, or a negative power of `d`, means the
/// limit does not exist.
pub fn double_limit(full: &FullLogSeries) -> Result<FOfG> {
    let mut ln_pi = GaussRational::zero();
    let mut poly = GPoly::new();
    let keep = |n_pow: i32, d_pow: u32, what: String| -> Result<bool> {
        let (a, b) = (n_pow - 2, d_pow as i32 - 1);
        if a > 0 {
            return Err(Error::StructuralViolation(format!("{what} grows like N^{a} after division by dN^2")));
        }
        if a < 0 {
            return Ok(false);
        }
        if b < 0 {
            return Err(Error::StructuralViolation(format!("{what} diverges as d -> 0")));
        }
        Ok(b == 0)
    };
    for c in &full.constants {
        if keep(c.n_pow, c.d_pow, c.to_string())? {
            match c.symbol {
                LogSymbol::LnPi => ln_pi += &c.coeff,
                LogSymbol::Ln2 => {
                    return Err(Error::StructuralViolation("ln 2 survives the double limit".into()));
                }
            }
        }
    }
    for (t, c) in full.series.terms() {
        if keep(t.n_pow, t.d_pow, format!("g^{} N^{} d^{}", t.k, t.n_pow, t.d_pow))? {
            *poly.entry(t.k).or_insert_with(GaussRational::zero) += c;
        }
    }
    poly.retain(|_, c| !c.is_zero());
    Ok(FOfG { ln_pi, poly })
}

/// The double limit of `full`, truncated at `kmax`, equals `F(g)` built
/// from the lattice decomposition of the same series.
pub fn double_limit_check(full: &FullLogSeries, kmax: usize) -> Result<bool> {
    let truncated = FullLogSeries { constants: full.constants.clone(), series: full.series.truncate(kmax as u32) };
    let limit = double_limit(&truncated)?;
    let table = extract_flp(&truncated.series)?;
    Ok(limit == f_of_g(&table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kmax0_gives_ln_pi() {
        let full = full_log_series(0, Convention::Action).unwrap();
        assert!(double_limit_check(&full, 0).unwrap());
        let f = double_limit(&full).unwrap();
        assert_eq!(f, FOfG { ln_pi: GaussRational::one(), poly: GPoly::new() });
        assert_eq!(f.to_string(), "ln π");
    }

    #[test]
    fn kmax1_limits() {
        for (conv, im) in [(Convention::Action, -1), (Convention::PaperSeries, -2)] {
            let full = full_log_series(1, conv).unwrap();
            assert!(double_limit_check(&full, 1).unwrap());
            let f = double_limit(&full).unwrap();
            assert_eq!(f.poly, GPoly::from([(1, GaussRational::from_gauss_int(0, im))]));
        }
    }

    #[test]
    fn fake_n3_term_is_rejected() {
        let mut full = full_log_series(1, Convention::Action).unwrap();
        full.series.add_term(Term::new(1, 3, 1), GaussRational::one());
        assert!(matches!(double_limit(&full), Err(Error::StructuralViolation(_))));
        assert!(matches!(extract_flp(&full.series), Err(Error::StructuralViolation(_))));
    }

    #[test]
    fn empty_series_gives_empty_table() {
        let t = extract_flp(&TriSeries::zero(3)).unwrap();
        assert!(t.entries.is_empty());
    }

    #[test]
    fn reconstruct_round_trip() {
        let s = connected_assemble(3, Convention::Action).unwrap();
        let t = extract_flp(&s).unwrap();
        assert_eq!(t.reconstruct(), s);
    }

    #[test]
    fn printed_constant_differs_but_has_the_same_limit() {
        assert_ne!(printed_log_constants(), free_log_constants());
        let mut full = full_log_series(2, Convention::Action).unwrap();
        let derived = double_limit(&full).unwrap();
        full.constants = printed_log_constants();
        assert_eq!(double_limit(&full).unwrap(), derived);
    }
}
