//! JSON views of series, F_{l,p} tables and F(g).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use super::assemble::{Action, Convention};
use super::flp::{ConstTerm, FOfG, FlpTable};
use super::gauss::GaussRational;
use super::triseries::TriSeries;

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactParts {
    pub re_num: Value,
    pub re_den: Value,
    pub im_num: Value,
    pub im_den: Value,
}

impl From<&GaussRational> for ExactParts {
    fn from(c: &GaussRational) -> Self {
        ExactParts {
            re_num: bigint_json(c.re.numer()),
            re_den: bigint_json(c.re.denom()),
            im_num: bigint_json(c.im.numer()),
            im_den: bigint_json(c.im.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermJson {
    pub k: u32,
    pub n_pow: i32,
    pub d_pow: u32,
    #[serde(flatten)]
    pub coeff: ExactParts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesJson {
    pub convention: Convention,
    pub action: Action,
    /// The factor multiplying each vertex, so outputs of the two
    /// conventions are never confused.
    pub coupling: &'static str,
    pub kmax: u32,
    pub terms: Vec<TermJson>,
}

impl SeriesJson {
    pub fn new(series: &TriSeries, convention: Convention, action: Action) -> Self {
        SeriesJson {
            convention,
            action,
            coupling: convention.coupling_label(),
            kmax: series.kmax(),
            terms: series
                .terms()
                .map(|(t, c)| TermJson { k: t.k, n_pow: t.n_pow, d_pow: t.d_pow, coeff: c.into() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyTermJson {
    pub k: u32,
    #[serde(flatten)]
    pub coeff: ExactParts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlpEntryJson {
    pub l: u32,
    pub p: u32,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlpJson {
    pub convention: Convention,
    pub kmax: u32,
    pub entries: Vec<FlpEntryJson>,
}

impl FlpJson {
    pub fn new(table: &FlpTable, convention: Convention) -> Self {
        FlpJson {
            convention,
            kmax: table.kmax,
            entries: table
                .entries
                .iter()
                .map(|(&(l, p), poly)| FlpEntryJson {
                    l,
                    p,
                    terms: poly.iter().map(|(&k, c)| PolyTermJson { k, coeff: c.into() }).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstJson {
    pub symbol: super::flp::LogSymbol,
    pub n_pow: i32,
    pub d_pow: u32,
    #[serde(flatten)]
    pub coeff: ExactParts,
}

impl From<&ConstTerm> for ConstJson {
    fn from(c: &ConstTerm) -> Self {
        ConstJson { symbol: c.symbol, n_pow: c.n_pow, d_pow: c.d_pow, coeff: (&c.coeff).into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FOfGJson {
    pub text: String,
    pub ln_pi: ExactParts,
    pub terms: Vec<PolyTermJson>,
}

impl From<&FOfG> for FOfGJson {
    fn from(f: &FOfG) -> Self {
        FOfGJson {
            text: f.to_string(),
            ln_pi: (&f.ln_pi).into(),
            terms: f.poly.iter().map(|(&k, c)| PolyTermJson { k, coeff: c.into() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::assemble_z;

    #[test]
    fn first_order_json() {
        let z = assemble_z(1, Convention::Action).unwrap();
        let v = serde_json::to_value(SeriesJson::new(&z, Convention::Action, Action::Standard)).unwrap();
        assert_eq!(v["convention"], "action");
        assert_eq!(v["terms"][1]["k"], 1);
        assert_eq!(v["terms"][1]["n_pow"], 2);
        assert_eq!(v["terms"][1]["im_num"], -1);
        assert_eq!(v["terms"][1]["re_den"], 1);
    }

    #[test]
    fn large_integers_become_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        assert!(bigint_json(&big).is_string());
        assert_eq!(bigint_json(&BigInt::from(-3)), Value::from(-3));
    }
}
