//! Normalized `Z` of the Wick-ordered vertex, expanded through its
//! counterterms: `:V: = V + c1·Σ_μ Tr(A_μB_μ) + c2`.

use super::assemble::{check_kmax, order_prefactor, Action, Convention};
use super::gauss::GaussRational;
use super::triseries::{Term, TriSeries};
use crate::diagram::{mixed_pairing_weights, MixedVertex};
use crate::gaussian::{CountertermMonomial, WickCounterterms};
use crate::Result;

fn binomial(n: usize, r: usize) -> i64 {
    (0..r).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `(1/k!)·c^k·N^{−k}·⟨:V:^k⟩` summed over `k ≤ kmax`, with each power of
/// `:V:` multiplied out into quartic, bilinear and constant factors.
pub fn wick_ordered_assemble(kmax: usize, convention: Convention) -> Result<TriSeries> {
    check_kmax(kmax, Action::WickOrdered)?;
    let (c1, c2) = WickCounterterms::monomials()?;
    wick_ordered_assemble_with(kmax, convention, &c1, &c2)
}

/// As [`wick_ordered_assemble`] with explicit counterterms.
pub fn wick_ordered_assemble_with(
    kmax: usize,
    convention: Convention,
    c1: &CountertermMonomial,
    c2: &CountertermMonomial,
) -> Result<TriSeries> {
    check_kmax(kmax, Action::WickOrdered)?;
    let mut out = TriSeries::one(kmax as u32);
    let i = GaussRational::i();
    for k in 1..=kmax {
        let pre = order_prefactor(k, convention);
        for bil in 0..=k {
            for cst in 0..=k - bil {
                let quartic = k - bil - cst;
                // multinomial k! / (quartic! bil! cst!)
                let mult = binomial(k, bil) * binomial(k - bil, cst);
                let mut vertices = vec![MixedVertex::Quartic; quartic];
                vertices.extend(std::iter::repeat_n(MixedVertex::Bilinear, bil));
                vertices.extend(std::iter::repeat_n(MixedVertex::Constant, cst));
                let w = mixed_pairing_weights(&vertices)?;
                let ct = &c1.coeff.pow(bil as u32) * &c2.coeff.pow(cst as u32);
                let base = &(&(&pre * &ct) * &i.pow(w.propagators as u32)) * &GaussRational::from_int(mult);
                let n_shift = (c1.n_pow as usize * bil + c2.n_pow as usize * cst) as i32 - k as i32;
                let d_shift = c1.d_pow * bil as u32 + c2.d_pow * cst as u32;
                for (&(latin, greek), &count) in &w.counts {
                    out.add_term(
                        Term::new(k as u32, latin as i32 + n_shift, greek + d_shift),
                        &base * &GaussRational::from_int(count as i64),
                    );
                }
            }
        }
    }
    Ok(out)
}
