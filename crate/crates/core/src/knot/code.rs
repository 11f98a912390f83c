//! Gauss codes: crossings met along a closed strand, with over/under.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    fn letter(self) -> char {
        match self {
            Passage::Over => 'O',
            Passage::Under => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub id: u32,
    pub passage: Passage,
}

/// A cyclic sequence in which every crossing id appears exactly twice,
/// once over and once under.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussCode(Vec<Crossing>);

impl GaussCode {
    pub fn new(seq: Vec<Crossing>) -> Result<Self> {
        let mut seen: std::collections::BTreeMap<u32, (u32, u32)> = Default::default();
        for c in &seq {
            let e = seen.entry(c.id).or_default();
            match c.passage {
                Passage::Over => e.0 += 1,
                Passage::Under => e.1 += 1,
            }
        }
        if let Some((id, (o, u))) = seen.iter().find(|(_, &(o, u))| o != 1 || u != 1) {
            return Err(Error::invalid(format!(
                "crossing {id} appears {o} time(s) over and {u} time(s) under; expected once each"
            )));
        }
        Ok(GaussCode(seq))
    }

    pub fn empty() -> Self {
        GaussCode(Vec::new())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.0.len() / 2
    }

    /// Rotated and relabeled in order of first appearance.
    fn normalized_rotation(&self, start: usize) -> Vec<Crossing> {
        let n = self.0.len();
        let mut labels: Vec<(u32, u32)> = Vec::new();
        (0..n)
            .map(|i| {
                let c = self.0[(start + i) % n];
                let id = match labels.iter().find(|(old, _)| *old == c.id) {
                    Some(&(_, new)) => new,
                    None => {
                        let new = labels.len() as u32 + 1;
                        labels.push((c.id, new));
                        new
                    }
                };
                Crossing { id, passage: c.passage }
            })
            .collect()
    }

    /// Lexicographically least code over cyclic rotations and relabelings.
    /// Reversal and mirror images are distinct diagrams and stay distinct.
    pub fn canonical(&self) -> GaussCode {
        (0..self.0.len().max(1))
            .map(|s| if self.0.is_empty() { Vec::new() } else { self.normalized_rotation(s) })
            .min()
            .map(GaussCode)
            .unwrap_or_else(GaussCode::empty)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}{}", c.passage.letter(), c.id)?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut seq = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(ch) = chars.next() {
            let passage = match ch {
                'O' => Passage::Over,
                'U' => Passage::Under,
                _ => return Err(Error::invalid(format!("unexpected '{ch}' in Gauss code '{s}'"))),
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let id = digits
                .parse()
                .map_err(|_| Error::invalid(format!("missing crossing number in Gauss code '{s}'")))?;
            seq.push(Crossing { id, passage });
        }
        GaussCode::new(seq)
    }
}

impl Serialize for GaussCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// True iff over and under strictly alternate around the closed strand.
pub fn alternating_check(c: &GaussCode) -> bool {
    let n = c.len();
    (0..n).all(|i| c.0[i].passage != c.0[(i + 1) % n].passage)
}

/// Deletes kinks, crossings whose two passages are cyclically adjacent,
/// until none remain.
pub fn reduce_r1(c: &GaussCode) -> GaussCode {
    let mut seq = c.0.clone();
    'outer: loop {
        let n = seq.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if seq[i].id == seq[j].id {
                let (lo, hi) = (i.min(j), i.max(j));
                seq.remove(hi);
                seq.remove(lo);
                continue 'outer;
            }
        }
        return GaussCode(seq);
    }
}

/// As [`reduce_r1`] but removing the kink at the largest index first; used to
/// check that the fixed point does not depend on deletion order.
pub fn reduce_r1_reverse(c: &GaussCode) -> GaussCode {
    let mut seq = c.0.clone();
    'outer: loop {
        let n = seq.len();
        for i in (0..n).rev() {
            let j = (i + 1) % n;
            if seq[i].id == seq[j].id {
                let (lo, hi) = (i.min(j), i.max(j));
                seq.remove(hi);
                seq.remove(lo);
                continue 'outer;
            }
        }
        return GaussCode(seq);
    }
}
