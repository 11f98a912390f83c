//! The oscillatory Gaussian `exp(i Tr(A_μ B_μ))` on pairs of Hermitian
//! matrix families, its ε-regularization and everything computed from it.
//!
//! Exact results (propagators, Wick sums) live next to a floating-point
//! oracle that integrates the regularized density directly in real
//! coordinates. The two never share code paths beyond the coordinate
//! basis.

mod basis;
mod oracle;
mod propagator;
mod transform;
mod wick_order;

pub use basis::{cos_basis, BasisElement, BasisKind, Family, MatrixPair, ModelDims, C64};
pub use oracle::{
    extrapolate_to_zero, gaussian_oracle_moment, oracle_normalization, EpsilonLadder,
    Extrapolation, OracleCovariance, OracleRecord, CONVERGENCE_TOL,
};
pub use propagator::{
    general_propagators, propagator, propagator_with, wick_moment, wick_moment_with,
    wick_pairing_count, ActionSpec, EntrySymbol, PropagatorMatrix,
};
pub use transform::{
    free_partition, t_transform_limit, t_transform_reg, t_transform_reg_at, u_bound_check,
    u_bound_check_scaled, RegKernel, U_BOUND_MAX_EPSILON,
};
pub use wick_order::{
    quartic_vertex_entries, wick_order_quartic, wick_ordered_expectation, CountertermMonomial,
    PaperCountertermComparison, WickCounterterms,
};
