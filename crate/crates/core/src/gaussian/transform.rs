//! Closed-form T-transforms of the regularized and limiting distributions.

use std::f64::consts::PI;

use super::basis::{MatrixPair, ModelDims, C64};
use crate::{Error, Result};

/// The regularization `K_ε = −((1−ε)·Id + i·[[0, Id], [Id, 0]])`, stored by
/// its parameter `ε > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegKernel {
    epsilon: f64,
}

impl RegKernel {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::invalid(format!("epsilon must be a positive finite number, got {epsilon}")));
        }
        Ok(RegKernel { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// `Z(N, d, 0) = 2^{dN} π^{dN²}`.
pub fn free_partition(n: usize, d: usize) -> Result<f64> {
    let dims = ModelDims::new(n, d)?;
    Ok(prefactor(dims, 0.0))
}

/// `2^{dN} (π/√(ε²+1))^{dN²}`.
fn prefactor(dims: ModelDims, epsilon: f64) -> f64 {
    let (n, d) = (dims.n() as f64, dims.d() as f64);
    let damp = (PI / (epsilon * epsilon + 1.0).sqrt()).ln();
    (d * n * std::f64::consts::LN_2 + d * n * n * damp).exp()
}

/// Exponent of the regularized transform at `z·(F,G)`; quadratic in `z`.
fn reg_exponent(fg: &MatrixPair, epsilon: f64, z: C64) -> C64 {
    let e2 = epsilon * epsilon + 1.0;
    let x = C64::new(epsilon * fg.norm_sq(), 2.0 * fg.cross_trace()) / (2.0 * e2);
    -(z * z) * x
}

/// `TΦ_{N,d,ε}(F,G)`.
pub fn t_transform_reg(fg: &MatrixPair, kernel: RegKernel) -> C64 {
    t_transform_reg_at(fg, kernel, C64::new(1.0, 0.0))
}

/// `TΦ_{N,d,ε}(z·(F,G))` for complex `z`, continued from the quadratic
/// exponent.
pub fn t_transform_reg_at(fg: &MatrixPair, kernel: RegKernel, z: C64) -> C64 {
    let eps = kernel.epsilon();
    prefactor(fg.dims(), eps) * reg_exponent(fg, eps, z).exp()
}

/// `TΦ_{N,d}(F,G) = 2^{dN} π^{dN²} exp(−i Tr(F_μ G_μ))`.
pub fn t_transform_limit(fg: &MatrixPair) -> C64 {
    prefactor(fg.dims(), 0.0) * C64::new(0.0, -fg.cross_trace()).exp()
}

/// Largest ε for which [`u_bound_check`] is meaningful.
pub const U_BOUND_MAX_EPSILON: f64 = 0.5;

/// Checks `R⁻¹ |TΦ_{N,d,ε}(z(F,G))| ≤ exp(2|z|²|(F,G)|²)` at every sample,
/// with `R = 2^{dN}(π/√(ε²+1))^{dN²}`.
pub fn u_bound_check(fg: &MatrixPair, kernel: RegKernel, zs: &[C64]) -> Result<bool> {
    u_bound_check_scaled(fg, kernel, zs, 1.0)
}

/// As [`u_bound_check`] with the left side multiplied by `lhs_scale`.
pub fn u_bound_check_scaled(fg: &MatrixPair, kernel: RegKernel, zs: &[C64], lhs_scale: f64) -> Result<bool> {
    if kernel.epsilon() > U_BOUND_MAX_EPSILON {
        return Err(Error::invalid(format!(
            "bound only applies for epsilon <= {U_BOUND_MAX_EPSILON}"
        )));
    }
    let norm_sq = fg.norm_sq();
    Ok(zs.iter().all(|&z| {
        // compare logarithms so large |z| does not overflow
        let lhs = lhs_scale.ln() + reg_exponent(fg, kernel.epsilon(), z).re;
        let rhs = 2.0 * z.norm_sqr() * norm_sq;
        lhs <= rhs + 1e-12
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn scalar_pair(f: f64, g: f64) -> MatrixPair {
        MatrixPair::new(
            vec![DMatrix::from_element(1, 1, C64::new(f, 0.0))],
            vec![DMatrix::from_element(1, 1, C64::new(g, 0.0))],
        )
        .unwrap()
    }

    #[test]
    fn free_partition_values() {
        assert!((free_partition(1, 1).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!((free_partition(2, 1).unwrap() - 4.0 * PI.powi(4)).abs() < 1e-9);
        assert!(free_partition(0, 1).is_err());
    }

    #[test]
    fn zero_argument_gives_prefactor() {
        let dims = ModelDims::new(2, 3).unwrap();
        let zero = MatrixPair::zeros(dims);
        let eps = 0.3;
        let expected = 2f64.powi(6) * (PI / (eps * eps + 1.0f64).sqrt()).powi(12);
        let got = t_transform_reg(&zero, RegKernel::new(eps).unwrap());
        assert!((got.re - expected).abs() < 1e-9 * expected && got.im.abs() < 1e-9);
        let lim = t_transform_limit(&zero);
        assert_eq!(lim.re, free_partition(2, 3).unwrap());
        assert_eq!(lim.im, 0.0);
    }

    #[test]
    fn scalar_case_direct_substitution() {
        let fg = scalar_pair(1.0, 1.0);
        let got = t_transform_reg(&fg, RegKernel::new(1.0).unwrap());
        let expected = 2f64.sqrt() * PI * (C64::new(-2.0, -2.0) / 4.0).exp();
        assert!((got - expected).norm() < 1e-12);
        let lim = t_transform_limit(&fg);
        let expected = 2.0 * PI * C64::new(0.0, -1.0).exp();
        assert!((lim - expected).norm() < 1e-12);
    }

    #[test]
    fn bound_at_origin_is_equality() {
        let fg = scalar_pair(0.7, -1.1);
        let k = RegKernel::new(0.1).unwrap();
        assert!(u_bound_check(&fg, k, &[C64::new(0.0, 0.0)]).unwrap());
        assert!(!u_bound_check_scaled(&fg, k, &[C64::new(0.0, 0.0)], 10.0).unwrap());
        assert!(u_bound_check(&fg, RegKernel::new(0.9).unwrap(), &[]).is_err());
    }

    #[test]
    fn kernel_rejects_non_positive() {
        assert!(RegKernel::new(0.0).is_err());
        assert!(RegKernel::new(-1.0).is_err());
        assert!(RegKernel::new(f64::NAN).is_err());
    }
}
