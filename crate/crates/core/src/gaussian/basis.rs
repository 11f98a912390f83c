//! Orthogonal coordinate system on Hermitian matrix families.

use nalgebra::DMatrix;
use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type C64 = Complex<f64>;

/// Matrix size `N` and number of matrix components `d`, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelDims {
    n: usize,
    d: usize,
}

impl ModelDims {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::invalid(format!("N and d must be >= 1 (got N={n}, d={d})")));
        }
        Ok(ModelDims { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Real coordinates per family: `d·N²`.
    pub fn coords_per_family(&self) -> usize {
        self.d * self.n * self.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn index(self) -> usize {
        match self {
            Family::A => 0,
            Family::B => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisKind {
    Diagonal,
    OffDiagReal,
    OffDiagImag,
}

/// One element of the orthogonal system `e_{k,k}`, `e_{k,l}`, `iJe_{k,l}`
/// placed in component `mu` of family `family`. Indices are 1-based and
/// `k <= l` (`k < l` for the off-diagonal kinds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub family: Family,
    pub mu: usize,
    pub kind: BasisKind,
    pub k: usize,
    pub l: usize,
}

impl BasisElement {
    /// The Hermitian `N×N` matrix this element represents in component `mu`.
    ///
    /// `Tr(A·e)` recovers `Re A^{kl}` for the real kinds and `Im A^{kl}` for
    /// the imaginary kind.
    pub fn matrix(&self, n: usize) -> DMatrix<C64> {
        let mut m = DMatrix::<C64>::zeros(n, n);
        let (k, l) = (self.k - 1, self.l - 1);
        match self.kind {
            BasisKind::Diagonal => m[(k, k)] = C64::new(1.0, 0.0),
            BasisKind::OffDiagReal => {
                m[(k, l)] = C64::new(0.5, 0.0);
                m[(l, k)] = C64::new(0.5, 0.0);
            }
            BasisKind::OffDiagImag => {
                m[(k, l)] = C64::new(0.0, 0.5);
                m[(l, k)] = C64::new(0.0, -0.5);
            }
        }
        m
    }

    /// Trace norm squared: 1 for diagonal elements, 1/2 otherwise.
    pub fn norm_sq(&self) -> f64 {
        match self.kind {
            BasisKind::Diagonal => 1.0,
            _ => 0.5,
        }
    }

    /// Weight of this coordinate in `Tr(XY) = Σ w x y`: 1 on the diagonal,
    /// 2 off it (each off-diagonal pair appears twice in the trace).
    pub fn trace_weight(&self) -> f64 {
        match self.kind {
            BasisKind::Diagonal => 1.0,
            _ => 2.0,
        }
    }

    /// Real trace inner product. Elements in different families or
    /// components are orthogonal by construction of the product space.
    pub fn inner(&self, other: &BasisElement, n: usize) -> f64 {
        if self.family != other.family || self.mu != other.mu {
            return 0.0;
        }
        (self.matrix(n) * other.matrix(n)).trace().re
    }
}

/// Position of the off-diagonal pair `(k, l)`, `k < l` (0-based), in
/// row-major order of the strict upper triangle.
pub(crate) fn offdiag_rank(n: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < n);
    k * n - k * (k + 1) / 2 + (l - k - 1)
}

/// Coordinate index of a basis element in the order produced by
/// [`cos_basis`].
pub(crate) fn coord_index(dims: ModelDims, family: Family, mu: usize, kind: BasisKind, k: usize, l: usize) -> usize {
    let n = dims.n();
    let block = (family.index() * dims.d() + (mu - 1)) * n * n;
    let pairs = n * (n - 1) / 2;
    block
        + match kind {
            BasisKind::Diagonal => k - 1,
            BasisKind::OffDiagReal => n + offdiag_rank(n, k - 1, l - 1),
            BasisKind::OffDiagImag => n + pairs + offdiag_rank(n, k - 1, l - 1),
        }
}

/// The complete orthogonal system for both families: family A first, then
/// B; within a family by component `mu`, then diagonal, real off-diagonal
/// and imaginary off-diagonal elements.
pub fn cos_basis(n: usize, d: usize) -> Result<Vec<BasisElement>> {
    let dims = ModelDims::new(n, d)?;
    let mut out = Vec::with_capacity(2 * dims.coords_per_family());
    for family in [Family::A, Family::B] {
        for mu in 1..=d {
            for k in 1..=n {
                out.push(BasisElement { family, mu, kind: BasisKind::Diagonal, k, l: k });
            }
            for kind in [BasisKind::OffDiagReal, BasisKind::OffDiagImag] {
                for k in 1..=n {
                    for l in (k + 1)..=n {
                        out.push(BasisElement { family, mu, kind, k, l });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A pair of `d`-vectors of Hermitian matrices `(F_μ, G_μ)`, the argument
/// of the T-transform.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPair {
    dims: ModelDims,
    f: Vec<DMatrix<C64>>,
    g: Vec<DMatrix<C64>>,
}

const HERMITIAN_TOL: f64 = 1e-12;

fn is_hermitian(m: &DMatrix<C64>) -> bool {
    m.is_square() && (m - m.adjoint()).iter().all(|z| z.norm() <= HERMITIAN_TOL * (1.0 + m.norm()))
}

impl MatrixPair {
    pub fn new(f: Vec<DMatrix<C64>>, g: Vec<DMatrix<C64>>) -> Result<Self> {
        if f.is_empty() || f.len() != g.len() {
            return Err(Error::invalid("F and G must be non-empty d-vectors of equal length"));
        }
        let n = f[0].nrows();
        let dims = ModelDims::new(n, f.len())?;
        for (mu, m) in f.iter().chain(g.iter()).enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::invalid(format!("component {mu} is not {n}x{n}")));
            }
            if !is_hermitian(m) {
                return Err(Error::invalid(format!("component {mu} is not Hermitian")));
            }
        }
        Ok(MatrixPair { dims, f, g })
    }

    pub fn zeros(dims: ModelDims) -> Self {
        let z = DMatrix::<C64>::zeros(dims.n(), dims.n());
        MatrixPair {
            dims,
            f: vec![z.clone(); dims.d()],
            g: vec![z; dims.d()],
        }
    }

    pub fn dims(&self) -> ModelDims {
        self.dims
    }

    pub fn f(&self) -> &[DMatrix<C64>] {
        &self.f
    }

    pub fn g(&self) -> &[DMatrix<C64>] {
        &self.g
    }

    /// `Tr(F_μF_μ + G_μG_μ)`, the squared trace norm `|(F,G)|²`.
    pub fn norm_sq(&self) -> f64 {
        self.f
            .iter()
            .chain(self.g.iter())
            .map(|m| (m * m).trace().re)
            .sum()
    }

    /// `Tr(F_μ G_μ)` summed over components; real for Hermitian input.
    pub fn cross_trace(&self) -> f64 {
        self.f.iter().zip(&self.g).map(|(f, g)| (f * g).trace().re).sum()
    }

    /// Coordinates of the linear functional `(A,B) ↦ Tr(A_μF_μ) + Tr(B_μG_μ)`
    /// in the [`cos_basis`] coordinate order.
    pub fn functional_coords(&self) -> Vec<f64> {
        let basis = cos_basis(self.dims.n(), self.dims.d()).expect("dims already validated");
        basis
            .iter()
            .map(|e| {
                let m = match e.family {
                    Family::A => &self.f[e.mu - 1],
                    Family::B => &self.g[e.mu - 1],
                };
                let entry = m[(e.k - 1, e.l - 1)];
                match e.kind {
                    BasisKind::Diagonal => entry.re,
                    BasisKind::OffDiagReal => 2.0 * entry.re,
                    BasisKind::OffDiagImag => 2.0 * entry.im,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_basis_is_single_diagonal() {
        let b = cos_basis(1, 1).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].kind, BasisKind::Diagonal);
        assert_eq!((b[0].k, b[0].l), (1, 1));
    }

    #[test]
    fn n2_basis_lists_e11_e22_e12_ije12() {
        let b = cos_basis(2, 1).unwrap();
        let a: Vec<_> = b.iter().filter(|e| e.family == Family::A).collect();
        assert_eq!(a.len(), 4);
        let kinds: Vec<_> = a.iter().map(|e| (e.kind, e.k, e.l)).collect();
        assert_eq!(
            kinds,
            vec![
                (BasisKind::Diagonal, 1, 1),
                (BasisKind::Diagonal, 2, 2),
                (BasisKind::OffDiagReal, 1, 2),
                (BasisKind::OffDiagImag, 1, 2),
            ]
        );
    }

    #[test]
    fn coord_index_matches_listing_order() {
        let dims = ModelDims::new(4, 2).unwrap();
        for (i, e) in cos_basis(4, 2).unwrap().iter().enumerate() {
            assert_eq!(coord_index(dims, e.family, e.mu, e.kind, e.k, e.l), i);
        }
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        for n in 1..=4 {
            let basis = cos_basis(n, 2).unwrap();
            assert_eq!(basis.len(), 2 * 2 * n * n);
            for (i, x) in basis.iter().enumerate() {
                for (j, y) in basis.iter().enumerate() {
                    let ip = x.inner(y, n);
                    let expected = if i == j { x.norm_sq() } else { 0.0 };
                    assert!((ip - expected).abs() < 1e-15, "n={n} {x:?} {y:?} -> {ip}");
                }
            }
        }
    }

    #[test]
    fn basis_recovers_real_and_imaginary_parts() {
        let mut a = DMatrix::<C64>::zeros(2, 2);
        a[(0, 0)] = C64::new(3.0, 0.0);
        a[(0, 1)] = C64::new(1.5, -0.25);
        a[(1, 0)] = C64::new(1.5, 0.25);
        let re = BasisElement { family: Family::A, mu: 1, kind: BasisKind::OffDiagReal, k: 1, l: 2 };
        let im = BasisElement { kind: BasisKind::OffDiagImag, ..re };
        assert!(((&a * re.matrix(2)).trace().re - 1.5).abs() < 1e-15);
        assert!(((&a * im.matrix(2)).trace().re + 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_dims_and_non_hermitian() {
        assert!(cos_basis(0, 1).is_err());
        assert!(ModelDims::new(2, 0).is_err());
        let mut m = DMatrix::<C64>::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let err = MatrixPair::new(vec![m.clone()], vec![m]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }
}
