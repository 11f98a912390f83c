//! `Z(N, d, g)/Z(N, d, 0)` and its connected part as sums over pairings.
//!
//! Order `g^k` collects `(1/k!)·c^k·N^{−k}·⟨V^k⟩`, where each pairing of
//! the `k` vertices contributes the product of its propagators times
//! `N^C d^l`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gauss::GaussRational;
use super::triseries::{Term, TriSeries};
use super::wick::wick_ordered_assemble;
use crate::diagram::{census, Census, DiagramClass, MatchMode, MAX_K};
use crate::gaussian::{general_propagators, ActionSpec, Family, PropagatorMatrix};
use crate::{Error, Result};

/// How the coupling enters: `exp(i·(g/2N)·V)` or a series in `(ig/N)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Action,
    PaperSeries,
}

impl Convention {
    /// `c` in `(c·g/N)^k`.
    pub fn coupling(self) -> GaussRational {
        match self {
            Convention::Action => GaussRational::from_frac(0, 1, 2),
            Convention::PaperSeries => GaussRational::i(),
        }
    }

    pub fn coupling_label(self) -> &'static str {
        match self {
            Convention::Action => "i*g/(2N)",
            Convention::PaperSeries => "i*g/N",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Action => "action",
            Convention::PaperSeries => "paper_series",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "action" => Ok(Convention::Action),
            "paper_series" => Ok(Convention::PaperSeries),
            _ => Err(Error::invalid(format!("unknown convention '{s}' (expected action or paper_series)"))),
        }
    }
}

/// Gaussian weight and vertex treatment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    #[default]
    Standard,
    /// `Tr(AA) + Tr(BB) + Tr(AB)` quadratic part; same-family propagators
    /// survive.
    Symmetric,
    /// Standard quadratic part with the Wick-ordered quartic vertex.
    WickOrdered,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Standard => "standard",
            Action::Symmetric => "symmetric",
            Action::WickOrdered => "wick_ordered",
        }
    }

    /// Largest order the series can be assembled to.
    pub fn kmax_cap(self) -> usize {
        match self {
            Action::Standard => MAX_K,
            Action::Symmetric | Action::WickOrdered => 4,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Action::Standard),
            "symmetric" => Ok(Action::Symmetric),
            "wick_ordered" => Ok(Action::WickOrdered),
            _ => Err(Error::invalid(format!(
                "unknown action '{s}' (expected standard, symmetric or wick_ordered)"
            ))),
        }
    }
}

pub(crate) fn check_kmax(kmax: usize, action: Action) -> Result<()> {
    if kmax > action.kmax_cap() {
        return Err(Error::ResourceBound {
            what: "series order kmax",
            requested: kmax as u64,
            limit: action.kmax_cap() as u64,
        });
    }
    Ok(())
}

/// `(1/k!)·c^k`.
pub fn order_prefactor(k: usize, convention: Convention) -> GaussRational {
    let fact: i64 = (1..=k as i64).product();
    convention.coupling().pow(k as u32).div_int(fact)
}

/// Exact contribution of one A–B pairing of order `k` to the coefficient of
/// `g^k N^{C−k} d^l`: `(1/k!)·c^k·i^{2k}`.
pub fn pairing_coefficient(k: usize, convention: Convention) -> GaussRational {
    &order_prefactor(k, convention) * &GaussRational::i_pow(2 * k as i64)
}

fn class_value(class: &DiagramClass, k: usize, props: &PropagatorMatrix) -> GaussRational {
    let same = class.same_family as u32;
    let cross = 2 * k as u32 - same;
    &props.block(Family::A, Family::A).pow(same) * &props.block(Family::A, Family::B).pow(cross)
}

fn fold_census(
    out: &mut TriSeries,
    census: &Census,
    convention: Convention,
    props: &PropagatorMatrix,
    keep: impl Fn(&DiagramClass) -> bool,
) {
    let k = census.k;
    let pre = order_prefactor(k, convention);
    for (class, &count) in &census.classes {
        if !keep(class) {
            continue;
        }
        let value = &(&pre * &class_value(class, k, props)) * &GaussRational::from_int(count as i64);
        out.add_term(Term::new(k as u32, class.c as i32 - k as i32, class.l as u32), value);
    }
}

fn assemble_filtered(
    kmax: usize,
    convention: Convention,
    action: ActionSpec,
    include_unit: bool,
    keep: impl Fn(&DiagramClass) -> bool,
) -> Result<TriSeries> {
    let (mode, props) = match action {
        ActionSpec::Standard => (MatchMode::AbOnly, general_propagators(ActionSpec::Standard)?),
        ActionSpec::Symmetric => (MatchMode::All, general_propagators(ActionSpec::Symmetric)?),
    };
    let mut out = if include_unit { TriSeries::one(kmax as u32) } else { TriSeries::zero(kmax as u32) };
    for k in 1..=kmax {
        fold_census(&mut out, &census(k, mode)?, convention, &props, &keep);
    }
    Ok(out)
}

/// Normalized `Z` of the standard action.
pub fn assemble_z(kmax: usize, convention: Convention) -> Result<TriSeries> {
    assemble_z_with(kmax, convention, Action::Standard)
}

pub fn assemble_z_with(kmax: usize, convention: Convention, action: Action) -> Result<TriSeries> {
    check_kmax(kmax, action)?;
    match action {
        Action::Standard => assemble_filtered(kmax, convention, ActionSpec::Standard, true, |_| true),
        Action::Symmetric => assemble_filtered(kmax, convention, ActionSpec::Symmetric, true, |_| true),
        Action::WickOrdered => wick_ordered_assemble(kmax, convention),
    }
}

/// Sum over connected pairings only.
pub fn connected_assemble(kmax: usize, convention: Convention) -> Result<TriSeries> {
    connected_assemble_with(kmax, convention, Action::Standard)
}

/// For [`Action::WickOrdered`] the connected pairings are those of the
/// standard action without same-vertex propagators.
pub fn connected_assemble_with(kmax: usize, convention: Convention, action: Action) -> Result<TriSeries> {
    check_kmax(kmax, action)?;
    match action {
        Action::Standard => assemble_filtered(kmax, convention, ActionSpec::Standard, false, |c| c.connected()),
        Action::Symmetric => assemble_filtered(kmax, convention, ActionSpec::Symmetric, false, |c| c.connected()),
        Action::WickOrdered => {
            assemble_filtered(kmax, convention, ActionSpec::Standard, false, |c| c.connected() && !c.tadpole)
        }
    }
}

/// Normalized `Z` of the standard action restricted to pairings without
/// same-vertex propagators.
pub fn tadpole_free_assemble(kmax: usize, convention: Convention) -> Result<TriSeries> {
    check_kmax(kmax, Action::Standard)?;
    assemble_filtered(kmax, convention, ActionSpec::Standard, true, |c| !c.tadpole)
}
