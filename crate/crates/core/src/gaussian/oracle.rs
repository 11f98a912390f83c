//! Independent numerical channel: the ε-regularized weight
//! `exp(−ε/2 Tr(A²+B²) + i S₂(A,B))` is a genuine Gaussian on
//! `ℝ^{2dN²}`, so its normalization, characteristic function and moments
//! follow from the determinant and inverse of its complex coupling matrix.
//! Moments use the Isserlis expansion over that inverse; the ε→0 limit is
//! taken by polynomial (Richardson/Neville) extrapolation on a geometric
//! ε ladder.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::basis::{coord_index, cos_basis, BasisElement, BasisKind, MatrixPair, ModelDims, C64};
use super::propagator::{ActionSpec, EntrySymbol};
use crate::{Error, Result};

/// Residual bound on `‖Q·Q⁻¹ − I‖_max`.
const INVERSE_RESIDUAL_TOL: f64 = 1e-10;

/// Successive extrapolated estimates must agree to this (relative to
/// `max(1, |value|)`) before the limit is accepted.
pub const CONVERGENCE_TOL: f64 = 1e-9;

/// The coupling matrix `Q` of `exp(−½ vᵀ Q v)` in real basis coordinates,
/// with its inverse (the covariance).
#[derive(Debug, Clone)]
pub struct OracleCovariance {
    dims: ModelDims,
    epsilon: f64,
    action: ActionSpec,
    basis: Vec<BasisElement>,
    coupling: DMatrix<C64>,
    inverse: DMatrix<C64>,
    residual: f64,
}

impl OracleCovariance {
    pub fn new(dims: ModelDims, epsilon: f64, action: ActionSpec) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::invalid(format!("oracle needs epsilon > 0, got {epsilon}")));
        }
        let basis = cos_basis(dims.n(), dims.d())?;
        let size = basis.len();
        let half = size / 2;
        let m = action.coupling();
        let mut q = DMatrix::<C64>::zeros(size, size);
        // coordinate i of family A pairs with coordinate i + half of family B
        for (ia, e) in basis[..half].iter().enumerate() {
            let ib = ia + half;
            let w = e.trace_weight();
            q[(ia, ia)] = C64::new(w * epsilon, -w * m[0][0] as f64);
            q[(ib, ib)] = C64::new(w * epsilon, -w * m[1][1] as f64);
            q[(ia, ib)] = C64::new(0.0, -w * m[0][1] as f64);
            q[(ib, ia)] = C64::new(0.0, -w * m[1][0] as f64);
        }
        let inverse = q
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular(format!("oracle coupling at epsilon={epsilon}")))?;
        let residual = (&q * &inverse - DMatrix::<C64>::identity(size, size))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if residual >= INVERSE_RESIDUAL_TOL {
            return Err(Error::InvariantViolation(format!(
                "oracle inverse residual {residual:e} at epsilon={epsilon}"
            )));
        }
        Ok(OracleCovariance { dims, epsilon, action, basis, coupling: q, inverse, residual })
    }

    pub fn dims(&self) -> ModelDims {
        self.dims
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn action(&self) -> ActionSpec {
        self.action
    }

    pub fn coupling(&self) -> &DMatrix<C64> {
        &self.coupling
    }

    pub fn covariance(&self) -> &DMatrix<C64> {
        &self.inverse
    }

    pub fn inverse_residual(&self) -> f64 {
        self.residual
    }

    /// `∫ exp(−½ vᵀQv) dv = (2π)^{n/2} det(Q)^{−1/2}`.
    ///
    /// `Q = εW − iC` with `W` diagonal positive and `C` real symmetric, so
    /// the eigenvalues of `W^{−1/2} Q W^{−1/2}` are `ε − iλ` with real `λ`;
    /// taking principal roots factor by factor follows the branch that is
    /// continuous from the positive-definite case.
    pub fn normalization(&self) -> C64 {
        let size = self.basis.len();
        let w: Vec<f64> = self
            .basis
            .iter()
            .map(BasisElement::trace_weight)
            .collect();
        let c = DMatrix::<f64>::from_fn(size, size, |i, j| -self.coupling[(i, j)].im / (w[i] * w[j]).sqrt());
        let eig = SymmetricEigen::new(c);
        let mut log = C64::new(0.5 * size as f64 * (2.0 * PI).ln(), 0.0);
        for (wi, lambda) in w.iter().zip(eig.eigenvalues.iter()) {
            log -= 0.5 * wi.ln();
            log -= 0.5 * C64::new(self.epsilon, -lambda).ln();
        }
        log.exp()
    }

    /// The entry as a complex linear form in real coordinates:
    /// `X^{kl} = x + iy` (k<l), `x − iy` (k>l), `x` (k=l).
    pub fn entry_form(&self, e: &EntrySymbol) -> Result<Vec<(usize, C64)>> {
        if e.dims() != self.dims {
            return Err(Error::invalid(format!("entry {e} does not match oracle context")));
        }
        let idx = |kind, k, l| coord_index(self.dims, e.family, e.mu, kind, k, l);
        let one = C64::new(1.0, 0.0);
        Ok(match e.row.cmp(&e.col) {
            std::cmp::Ordering::Equal => vec![(idx(BasisKind::Diagonal, e.row, e.row), one)],
            std::cmp::Ordering::Less => vec![
                (idx(BasisKind::OffDiagReal, e.row, e.col), one),
                (idx(BasisKind::OffDiagImag, e.row, e.col), C64::new(0.0, 1.0)),
            ],
            std::cmp::Ordering::Greater => vec![
                (idx(BasisKind::OffDiagReal, e.col, e.row), one),
                (idx(BasisKind::OffDiagImag, e.col, e.row), C64::new(0.0, -1.0)),
            ],
        })
    }

    /// Normalized second moment `⟨x y⟩_ε`.
    pub fn second_moment(&self, x: &EntrySymbol, y: &EntrySymbol) -> Result<C64> {
        let fx = self.entry_form(x)?;
        let fy = self.entry_form(y)?;
        let mut acc = C64::new(0.0, 0.0);
        for &(i, ci) in &fx {
            for &(j, cj) in &fy {
                acc += ci * self.inverse[(i, j)] * cj;
            }
        }
        Ok(acc)
    }

    /// Normalized moment of a product of entries by the Isserlis expansion.
    pub fn moment(&self, entries: &[EntrySymbol]) -> Result<C64> {
        let len = entries.len();
        if len % 2 == 1 {
            return Ok(C64::new(0.0, 0.0));
        }
        let mut pair = DMatrix::<C64>::zeros(len, len);
        for i in 0..len {
            for j in i + 1..len {
                let v = self.second_moment(&entries[i], &entries[j])?;
                pair[(i, j)] = v;
                pair[(j, i)] = v;
            }
        }
        Ok(hafnian(&pair, &mut vec![false; len]))
    }

    /// `∫ exp(i(Tr(A_μF_μ) + Tr(B_μG_μ))) exp(−½ vᵀQv) dv`.
    pub fn t_transform(&self, fg: &MatrixPair) -> Result<C64> {
        if fg.dims() != self.dims {
            return Err(Error::invalid("matrix pair does not match oracle context"));
        }
        let j = fg.functional_coords();
        let mut quad = C64::new(0.0, 0.0);
        for (a, ja) in j.iter().enumerate() {
            if *ja == 0.0 {
                continue;
            }
            for (b, jb) in j.iter().enumerate() {
                quad += ja * self.inverse[(a, b)] * jb;
            }
        }
        Ok(self.normalization() * (-0.5 * quad).exp())
    }
}

fn hafnian(pair: &DMatrix<C64>, used: &mut [bool]) -> C64 {
    let Some(first) = used.iter().position(|u| !u) else {
        return C64::new(1.0, 0.0);
    };
    used[first] = true;
    let mut total = C64::new(0.0, 0.0);
    for j in first + 1..used.len() {
        if !used[j] {
            used[j] = true;
            total += pair[(first, j)] * hafnian(pair, used);
            used[j] = false;
        }
    }
    used[first] = false;
    total
}

/// Result of an ε→0 extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    pub value: C64,
    /// ε values actually consumed.
    pub epsilons: Vec<f64>,
    /// Last difference between successive estimates.
    pub last_delta: f64,
    pub converged: bool,
}

/// Neville extrapolation to `ε = 0` over the prefix `values[..=j]`; returns
/// the successive diagonal estimates.
fn neville_estimates(eps: &[f64], values: &[C64]) -> Vec<C64> {
    let mut table: Vec<C64> = Vec::with_capacity(values.len());
    let mut estimates = Vec::with_capacity(values.len());
    for j in 0..values.len() {
        table.push(values[j]);
        // table[i] holds P_{i..j}(0) after the update
        for i in (0..j).rev() {
            let (xi, xj) = (eps[i], eps[j]);
            table[i] = (xj * table[i] - xi * table[i + 1]) / (xj - xi);
        }
        estimates.push(table[0]);
    }
    estimates
}

fn accept(eps: &[f64], values: &[C64]) -> Extrapolation {
    let est = neville_estimates(eps, values);
    let mut last_delta = f64::INFINITY;
    for j in 2..est.len() {
        let delta = (est[j] - est[j - 1]).norm();
        last_delta = delta;
        if delta < CONVERGENCE_TOL * est[j].norm().max(1.0) {
            return Extrapolation {
                value: est[j],
                epsilons: eps[..=j].to_vec(),
                last_delta,
                converged: true,
            };
        }
    }
    Extrapolation {
        value: *est.last().unwrap_or(&C64::new(f64::NAN, f64::NAN)),
        epsilons: eps.to_vec(),
        last_delta,
        converged: false,
    }
}

/// Geometric ladder `ε_j = 10^{-(j+1)}`; the first three rungs are always
/// used, further rungs only until convergence.
pub const LADDER_START: f64 = 0.1;
pub const LADDER_RATIO: f64 = 0.1;
pub const LADDER_MAX_RUNGS: usize = 8;

fn ladder_epsilons() -> Vec<f64> {
    (0..LADDER_MAX_RUNGS)
        .map(|j| LADDER_START * LADDER_RATIO.powi(j as i32))
        .collect()
}

/// Extrapolates `f(ε)` to `ε → 0`, evaluating lazily along the ladder.
pub fn extrapolate_to_zero<F>(mut f: F) -> Result<Extrapolation>
where
    F: FnMut(f64) -> Result<C64>,
{
    let eps = ladder_epsilons();
    let mut values = Vec::new();
    for (j, &e) in eps.iter().enumerate() {
        values.push(f(e)?);
        if j >= 2 {
            let ex = accept(&eps[..=j], &values);
            if ex.converged {
                return Ok(ex);
            }
        }
    }
    Ok(accept(&eps, &values))
}

/// Oracle covariances precomputed on every rung, for checking many
/// moments against the same ladder.
#[derive(Debug, Clone)]
pub struct EpsilonLadder {
    rungs: Vec<OracleCovariance>,
}

impl EpsilonLadder {
    pub fn new(dims: ModelDims, action: ActionSpec) -> Result<Self> {
        let rungs = ladder_epsilons()
            .into_iter()
            .map(|e| OracleCovariance::new(dims, e, action))
            .collect::<Result<Vec<_>>>()?;
        Ok(EpsilonLadder { rungs })
    }

    pub fn rungs(&self) -> &[OracleCovariance] {
        &self.rungs
    }

    pub fn extrapolate<F>(&self, mut f: F) -> Result<Extrapolation>
    where
        F: FnMut(&OracleCovariance) -> Result<C64>,
    {
        let eps: Vec<f64> = self.rungs.iter().map(|r| r.epsilon()).collect();
        let mut values = Vec::new();
        for (j, rung) in self.rungs.iter().enumerate() {
            values.push(f(rung)?);
            if j >= 2 {
                let ex = accept(&eps[..=j], &values);
                if ex.converged {
                    return Ok(ex);
                }
            }
        }
        Ok(accept(&eps, &values))
    }
}

/// Normalized standard-action moment of the regularized Gaussian at a fixed
/// ε. Degree 0 gives 1.
pub fn gaussian_oracle_moment(entries: &[EntrySymbol], dims: ModelDims, epsilon: f64) -> Result<C64> {
    OracleCovariance::new(dims, epsilon, ActionSpec::Standard)?.moment(entries)
}

/// `∫ exp(−ε/2 Tr(A²+B²) + i Tr(A_μB_μ)) dA dB` from the oracle
/// determinant.
pub fn oracle_normalization(dims: ModelDims, epsilon: f64) -> Result<C64> {
    Ok(OracleCovariance::new(dims, epsilon, ActionSpec::Standard)?.normalization())
}

/// One line of oracle output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub op: String,
    pub inputs: String,
    pub epsilon: Option<f64>,
    pub value_re: f64,
    pub value_im: f64,
}

impl OracleRecord {
    pub fn new(op: &str, inputs: impl Into<String>, epsilon: Option<f64>, value: C64) -> Self {
        OracleRecord {
            op: op.to_string(),
            inputs: inputs.into(),
            epsilon,
            value_re: value.re,
            value_im: value.im,
        }
    }
}
