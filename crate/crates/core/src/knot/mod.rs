//! Knot diagrams read off planar single-loop pairings.
//!
//! The Greek strand runs straight through each vertex, so every vertex is a
//! crossing met twice: once along the A legs (over) and once along the B
//! legs (under).

mod code;

pub use code::{alternating_check, reduce_r1, reduce_r1_reverse, Crossing, GaussCode, Passage};

use serde::Serialize;

use crate::diagram::{analyze, par_map_ranges, Leg, MatchMode, Pairing};
use crate::gaussian::Family;
use crate::series::{pairing_coefficient, Action, Convention, GaussRational};
use crate::{Error, Result};

/// Walks the Greek loop from leg 0 and records each vertex it crosses.
pub fn to_gauss_code(p: &Pairing) -> Result<GaussCode> {
    let s = analyze(p)?;
    if !p.is_ab_only() {
        return Err(Error::Precondition("pairing has same-family propagators".into()));
    }
    if s.components != 1 {
        return Err(Error::Precondition(format!("pairing has {} components", s.components)));
    }
    if s.genus != 0 {
        return Err(Error::Precondition(format!("pairing has genus {}", s.genus)));
    }
    if s.l != 1 {
        return Err(Error::Precondition(format!("pairing has {} Greek loops", s.l)));
    }
    let mut seq = Vec::with_capacity(2 * p.k());
    let mut x = Leg(0);
    loop {
        let passage = match x.family() {
            Family::A => Passage::Over,
            Family::B => Passage::Under,
        };
        seq.push(Crossing { id: x.vertex() as u32 + 1, passage });
        x = Leg(p.partner(x.opposite().0 as usize) as u8);
        if x == Leg(0) {
            break;
        }
    }
    GaussCode::new(seq)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    pub pairing: Pairing,
    pub code: GaussCode,
    pub canonical: GaussCode,
    pub reduced: GaussCode,
    /// Contribution of this pairing to the `g^k` coefficient of `F_{1,0}`.
    pub coeff: GaussRational,
}

/// Every connected, planar, single-loop A–B pairing of order `k` with its
/// Gauss code, in enumeration order. [`Action::WickOrdered`] drops pairings
/// with same-vertex propagators.
pub fn enumerate_knot_diagrams(k: usize, convention: Convention) -> Result<Vec<KnotDiagram>> {
    enumerate_knot_diagrams_with(k, convention, Action::Standard)
}

pub fn enumerate_knot_diagrams_with(k: usize, convention: Convention, action: Action) -> Result<Vec<KnotDiagram>> {
    if action == Action::Symmetric {
        return Err(Error::invalid("knot export needs an A-B-only action (standard or wick_ordered)"));
    }
    let coeff = pairing_coefficient(k, convention);
    let chunks = par_map_ranges(k, MatchMode::AbOnly, |it| -> Result<Vec<KnotDiagram>> {
        let mut out = Vec::new();
        for p in it {
            let s = analyze(&p)?;
            if s.components != 1 || s.genus != 0 || s.l != 1 {
                continue;
            }
            if action == Action::WickOrdered && s.tadpole {
                continue;
            }
            let code = to_gauss_code(&p)?;
            out.push(KnotDiagram {
                pairing: p,
                canonical: code.canonical(),
                reduced: reduce_r1(&code),
                code,
                coeff: coeff.clone(),
            });
        }
        Ok(out)
    })?;
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// One JSON line of a knot export. Coefficients are exact rationals
/// written as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotRecord {
    pub k: usize,
    #[serde(rename = "match")]
    pub matching: Vec<[u8; 2]>,
    pub code: String,
    pub canonical: String,
    pub coeff_re: String,
    pub coeff_im: String,
    pub reduced_code: String,
}

impl From<&KnotDiagram> for KnotRecord {
    fn from(d: &KnotDiagram) -> Self {
        KnotRecord {
            k: d.pairing.k(),
            matching: d.pairing.pairs().map(|(a, b)| [a, b]).collect(),
            code: d.code.to_string(),
            canonical: d.canonical.to_string(),
            coeff_re: d.coeff.re.to_string(),
            coeff_im: d.coeff.im.to_string(),
            reduced_code: d.reduced.to_string(),
        }
    }
}
