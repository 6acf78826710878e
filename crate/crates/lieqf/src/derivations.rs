//! Derivation algebras, inner derivations, diagonal derivations and the
//! direct completeness test.
//!
//! `derivation_space` solves the n^2-unknown linear system
//! `D[x,y] = [Dx,y] + [x,Dy]` over all basis pairs. The diagonal variant
//! restricts to diagonal matrices, where the system collapses to the weight
//! constraints `d_k = d_i + d_j` for every nonzero structure constant
//! c_ij^k; its solution space is reported as the rank of the algebra in the
//! given basis (exact when the basis consists of torus eigenvectors, a
//! lower bound in general).

use num::{One, Zero};

use crate::error::Error;
use crate::exactlin::{self, Matrix, Scalar};
use crate::liecore::LieAlgebra;

/// A linear space of derivations, held as a deterministic echelon basis of
/// n x n matrices.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub n: usize,
    pub basis: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Space of diagonal derivations, presented as weight forms: entry `i` of
/// the diagonal is the linear form `weights[i]` in `params()` formal
/// parameters. Each parameter corresponds to one basis diagonal derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalDerivationSpec {
    /// n rows, one per basis vector; each row has `params()` coefficients.
    pub weights: Vec<Vec<Scalar>>,
}

impl DiagonalDerivationSpec {
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Number of free parameters = dimension of the diagonal space.
    pub fn params(&self) -> usize {
        self.weights.first().map_or(0, |w| w.len())
    }

    /// Diagonal entries obtained by substituting concrete parameter values.
    pub fn instantiate(&self, values: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if values.len() != self.params() {
            return Err(Error::input(format!(
                "expected {} parameter values, got {}",
                self.params(),
                values.len()
            )));
        }
        Ok(self
            .weights
            .iter()
            .map(|w| w.iter().zip(values).map(|(c, v)| c * v).sum())
            .collect())
    }

    /// The a-th basis diagonal (unit value for parameter a).
    pub fn basis_diagonal(&self, a: usize) -> Vec<Scalar> {
        self.weights.iter().map(|w| w[a].clone()).collect()
    }

    /// True if the concrete diagonal lies in the span of this space.
    pub fn contains(&self, diagonal: &[Scalar]) -> Result<bool, Error> {
        if diagonal.len() != self.n() {
            return Err(Error::input(format!(
                "diagonal length {} does not match dimension {}",
                diagonal.len(),
                self.n()
            )));
        }
        let mut m = Matrix::new(self.n(), self.params());
        for (r, w) in self.weights.iter().enumerate() {
            for (c, v) in w.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(exactlin::solve(&m, diagonal)?.is_some())
    }
}

fn linear_maps_from_kernel(kernel: Vec<Vec<Scalar>>, n: usize) -> Vec<Matrix> {
    // Unknown layout: x[k*n + i] is the (k,i) entry of D, i.e. D Y_i = sum_k x[k*n+i] Y_k.
    kernel
        .into_iter()
        .map(|v| {
            let mut d = Matrix::new(n, n);
            for (idx, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    d.set(idx / n, idx % n, x);
                }
            }
            d
        })
        .collect()
}

/// The full derivation algebra Der(g).
pub fn derivation_space(g: &LieAlgebra) -> Result<DerivationSpace, Error> {
    g.require_lie()?;
    let n = g.dim();
    let idx = |k: usize, i: usize| k * n + i;
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let br = g.bracket_of_basis(i, j);
            // One equation per target coordinate m:
            //   sum_k br_k D_{m,k} - [D Y_i, Y_j]_m - [Y_i, D Y_j]_m = 0
            for m in 0..n {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                // D applied to the bracket: coefficient br_k on D_{m,k}.
                for (k, c) in &br {
                    row.push((idx(m, *k), c.clone()));
                }
                // -[D Y_i, Y_j]: D Y_i = sum_k D_{k,i} Y_k, so subtract
                // D_{k,i} [Y_k, Y_j]_m; symmetrically for -[Y_i, D Y_j].
                for k in 0..n {
                    for (t, c) in g.bracket_of_basis(k, j) {
                        if t == m {
                            row.push((idx(k, i), -c.clone()));
                        }
                    }
                    for (t, c) in g.bracket_of_basis(i, k) {
                        if t == m {
                            row.push((idx(k, j), -c.clone()));
                        }
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut m = Matrix::new(rows.len(), n * n);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            m.add_to(r, *c, v.clone());
        }
    }
    let kernel = exactlin::kernel_basis(&m);
    Ok(DerivationSpace {
        n,
        basis: linear_maps_from_kernel(kernel, n),
    })
}

/// The adjoint matrix ad(x) for a basis vector, as D Y_j = [Y_i, Y_j].
fn ad_matrix(g: &LieAlgebra, i: usize) -> Matrix {
    let n = g.dim();
    let mut m = Matrix::new(n, n);
    for j in 0..n {
        for (k, c) in g.bracket_of_basis(i, j) {
            m.set(k, j, c);
        }
    }
    m
}

/// Inner derivations B^1 = span of the adjoint maps ad(Y_i).
pub fn inner_derivations(g: &LieAlgebra) -> Result<DerivationSpace, Error> {
    g.require_lie()?;
    let n = g.dim();
    let flats: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let ad = ad_matrix(g, i);
            let mut flat = vec![Scalar::zero(); n * n];
            for r in 0..n {
                for c in 0..n {
                    flat[r * n + c] = ad.get(r, c);
                }
            }
            flat
        })
        .collect();
    let (basis, _) = exactlin::rref_dense(&flats, n * n);
    let mats = basis
        .into_iter()
        .map(|flat| {
            let mut m = Matrix::new(n, n);
            for (idx, v) in flat.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(idx / n, idx % n, v);
                }
            }
            m
        })
        .collect();
    Ok(DerivationSpace { n, basis: mats })
}

/// The space of diagonal derivations in the given basis. Its dimension is
/// the rank of g when the basis consists of torus eigenvectors (true for
/// every catalog basis); in general it is a lower bound for the rank.
pub fn diagonal_derivation_space(g: &LieAlgebra) -> Result<DiagonalDerivationSpec, Error> {
    g.require_lie()?;
    let n = g.dim();
    let mut rows = Vec::new();
    for (i, j, terms) in g.bracket_entries() {
        for (k, _) in terms {
            let mut row = vec![Scalar::zero(); n];
            row[i] += Scalar::one();
            row[j] += Scalar::one();
            row[*k] -= Scalar::one();
            rows.push(row);
        }
    }
    let m = Matrix::from_rows(rows, n);
    let kernel = exactlin::kernel_basis(&m);
    let weights = (0..n)
        .map(|i| kernel.iter().map(|b| b[i].clone()).collect())
        .collect::<Vec<Vec<Scalar>>>();
    Ok(DiagonalDerivationSpec { weights })
}

/// Verifies that a concrete diagonal map is a derivation of g.
pub fn is_diagonal_derivation(g: &LieAlgebra, diagonal: &[Scalar]) -> Result<bool, Error> {
    if diagonal.len() != g.dim() {
        return Err(Error::input(format!(
            "diagonal length {} does not match dimension {}",
            diagonal.len(),
            g.dim()
        )));
    }
    for (i, j, terms) in g.bracket_entries() {
        for (k, _) in terms {
            if &diagonal[i] + &diagonal[j] != diagonal[*k] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the direct completeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub complete: bool,
    pub center_dim: usize,
    pub der_dim: usize,
    pub inner_dim: usize,
}

/// g is complete iff Z(g) = 0 and every derivation is inner.
pub fn is_complete(g: &LieAlgebra) -> Result<CompletenessReport, Error> {
    let center_dim = g.center()?.dim();
    let der_dim = derivation_space(g)?.dim();
    let inner_dim = inner_derivations(g)?.dim();
    Ok(CompletenessReport {
        complete: center_dim == 0 && der_dim == inner_dim,
        center_dim,
        der_dim,
        inner_dim,
    })
}
