//! Exact perturbative engine for the U(N)-invariant two-family matrix model
//!
//! ```text
//! Z(N, d, g) = ∫ exp(i Tr(A_μ B_μ) + i g/(2N) Tr(A_μ B_ν A_μ B_ν)) dA dB
//! ```
//!
//! The crate is split along the pipeline that turns the model into knot
//! diagrams:
//!
//! - [`gaussian`]: the regularized oscillatory Gaussian, its T-transform,
//!   propagators, Wick moments and an independent floating-point oracle.
//! - [`diagram`]: Wick pairings of quartic vertices as triple-line ribbon
//!   graphs, Latin/Greek loop tracing, genus and a brute-force index sum.
//! - [`series`]: exact tri-variate series in `g`, `N`, `d` over Gaussian
//!   rationals, the formal logarithm and the `F_{l,p}` genus/link table.
//! - [`knot`]: Gauss codes for planar one-loop diagrams, alternation and
//!   Reidemeister-I reduction.

pub mod diagram;
pub mod error;
pub mod gaussian;
pub mod knot;
pub mod series;

pub use error::{Error, Result};
