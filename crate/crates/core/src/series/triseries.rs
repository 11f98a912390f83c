//! Truncated formal series in `g` with Laurent-monomial coefficients in
//! `N` and `d`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gauss::GaussRational;
use crate::{Error, Result};

/// The monomial `g^k N^{n_pow} d^{d_pow}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub k: u32,
    pub n_pow: i32,
    pub d_pow: u32,
}

impl Term {
    pub fn new(k: u32, n_pow: i32, d_pow: u32) -> Self {
        Term { k, n_pow, d_pow }
    }

    fn mul(self, o: Term) -> Term {
        Term { k: self.k + o.k, n_pow: self.n_pow + o.n_pow, d_pow: self.d_pow + o.d_pow }
    }
}

/// Exact series truncated after order `g^{kmax}`; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSeries {
    kmax: u32,
    coeffs: BTreeMap<Term, GaussRational>,
}

impl TriSeries {
    pub fn zero(kmax: u32) -> Self {
        TriSeries { kmax, coeffs: BTreeMap::new() }
    }

    pub fn one(kmax: u32) -> Self {
        let mut s = Self::zero(kmax);
        s.add_term(Term::new(0, 0, 0), GaussRational::one());
        s
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn coeff(&self, t: Term) -> GaussRational {
        self.coeffs.get(&t).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &GaussRational)> {
        self.coeffs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms of order exactly `g^k`.
    pub fn order(&self, k: u32) -> impl Iterator<Item = (&Term, &GaussRational)> {
        self.coeffs.range(Term::new(k, i32::MIN, 0)..=Term::new(k, i32::MAX, u32::MAX))
    }

    /// Adds `c · t`; terms beyond `kmax` are dropped.
    pub fn add_term(&mut self, t: Term, c: GaussRational) {
        if t.k > self.kmax || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(t).or_insert_with(GaussRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&t);
        }
    }

    pub fn add(&self, o: &TriSeries) -> TriSeries {
        let mut out = TriSeries { kmax: self.kmax.min(o.kmax), coeffs: BTreeMap::new() };
        for (t, c) in self.terms().chain(o.terms()) {
            out.add_term(*t, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TriSeries) -> TriSeries {
        self.add(&o.scale(&GaussRational::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussRational) -> TriSeries {
        let mut out = TriSeries::zero(self.kmax);
        for (t, v) in self.terms() {
            out.add_term(*t, v * c);
        }
        out
    }

    pub fn mul(&self, o: &TriSeries) -> TriSeries {
        let kmax = self.kmax.min(o.kmax);
        let mut out = TriSeries::zero(kmax);
        for (ta, ca) in self.terms() {
            for (tb, cb) in o.terms() {
                if ta.k + tb.k <= kmax {
                    out.add_term(ta.mul(*tb), ca * cb);
                }
            }
        }
        out
    }

    /// Same coefficients, truncated at a smaller order.
    pub fn truncate(&self, kmax: u32) -> TriSeries {
        let mut out = TriSeries::zero(kmax.min(self.kmax));
        for (t, c) in self.terms() {
            out.add_term(*t, c.clone());
        }
        out
    }

    fn without_constant(&self) -> TriSeries {
        let mut out = self.clone();
        out.coeffs.retain(|t, _| t.k > 0);
        out
    }

    /// `log(1 + u) = Σ_{m≥1} (−1)^{m+1} u^m / m`, truncated at `kmax`.
    pub fn formal_log(&self) -> Result<TriSeries> {
        let constant: Vec<_> = self.order(0).collect();
        if constant.len() != 1 || *constant[0].0 != Term::new(0, 0, 0) || !constant[0].1.is_one() {
            return Err(Error::Precondition("formal log needs constant term exactly 1".into()));
        }
        let u = self.without_constant();
        let mut out = TriSeries::zero(self.kmax);
        let mut power = u.clone();
        for m in 1..=self.kmax as i64 {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let c = GaussRational::from_rational(BigRational::new(BigInt::from(sign), BigInt::from(m)));
            out = out.add(&power.scale(&c));
            power = power.mul(&u);
        }
        Ok(out)
    }

    /// `exp(s) = Σ_{m≥0} s^m / m!` for a series without `g⁰` part.
    pub fn formal_exp(&self) -> Result<TriSeries> {
        if self.order(0).next().is_some() {
            return Err(Error::Precondition("formal exp needs a series without g^0 terms".into()));
        }
        let mut out = TriSeries::one(self.kmax);
        let mut power = TriSeries::one(self.kmax);
        for m in 1..=self.kmax as i64 {
            power = power.mul(self).scale(&GaussRational::from_frac(1, 0, m));
            out = out.add(&power);
        }
        Ok(out)
    }
}
