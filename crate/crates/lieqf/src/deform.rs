//! Deformation machinery for the completed A-family: gamma coefficients,
//! the deformation 2-cocycles F_1^l, and the H^2 lower bound.
//!
//! Writing the A-family structure constants as a_{i,j} = sum_l gamma^l_{i,j}
//! alpha_l, each l gives a direction F_1^l(Y_i, Y_j) = gamma^l_{i,j}
//! Y_{i+j+k-1} in which the bracket can be deformed. On the semidirect
//! completion of A^k_{n-1}(1,0,...,0) + C, each direction l = 2..t-1 with
//! vanishing first-order Jacobi obstruction is a 2-cocycle, and the closed
//! ones are independent modulo coboundaries, giving a lower bound
//! dim H^2 >= (number of closed directions), at most t-2 with
//! t = floor((n-k)/2). For most (n, k) every direction is closed and the
//! bound t-2 is attained; at some parameters (for example n = 10, k = 2)
//! the Jacobi identity couples alpha_1 and alpha_3 quadratically, the
//! direction l = 3 is obstructed, and only the closed subset counts.
//! Growing n still makes the realized bound as large as desired while the
//! algebra stays complete: the smallest instance with two independent
//! classes is (n, k) = (11, 3).

use num::Zero;
use serde::Serialize;

use crate::catalog::{self, Family, FamilySpec, StructureConstantTable};
use crate::cohomology::{self, Cochain2};
use crate::derivations;
use crate::error::Error;
use crate::exactlin::Scalar;
use crate::liecore::LieAlgebra;

/// The gamma^l_{i,j} tables: one structure-constant table per unit alpha seed.
#[derive(Clone, Debug)]
pub struct GammaTable {
    /// t - 1 tables; index l-1 holds gamma^l.
    tables: Vec<StructureConstantTable>,
}

impl GammaTable {
    /// gamma^l_{i,j}, 1-based in all three indices.
    pub fn get(&self, l: usize, i: i64, j: i64) -> Result<Scalar, Error> {
        if l == 0 || l > self.tables.len() {
            return Err(Error::input(format!(
                "gamma index l={l} out of range 1..={}",
                self.tables.len()
            )));
        }
        Ok(self.tables[l - 1].get(i, j))
    }

    pub fn count(&self) -> usize {
        self.tables.len()
    }
}

/// Gamma tables for the A-family at (n, k): the a_{i,j} recurrence run once
/// per unit alpha vector, l = 1..t-1 with t = floor((n-k)/2).
pub fn gamma_coefficients(n: usize, k: usize) -> Result<GammaTable, Error> {
    if !(2..=n.saturating_sub(4)).contains(&k) {
        return Err(Error::input(format!(
            "gamma coefficients need 2 <= k <= n-4, got n={n}, k={k}"
        )));
    }
    let t = (n - k) / 2;
    let ni = n as i64;
    let ki = k as i64;
    let tables = (1..t)
        .map(|l| {
            let mut alphas = vec![Scalar::zero(); t - 1];
            alphas[l - 1] = Scalar::from_integer(1.into());
            catalog::structure_table(&alphas, ni - ki - 1)
        })
        .collect();
    Ok(GammaTable { tables })
}

/// The deformation direction F_1^l on the semidirect completion of
/// A^k_{n-1}(1,0,...,0) + C: value gamma^l_{i,j} Y_{i+j+k-1} on (Y_i, Y_j)
/// for i + j <= n-k-1, zero elsewhere (including against torus directions).
///
/// `base` must be the completed algebra (dimension n + 2: the A-family
/// torus has rank 2).
pub fn deformation_cocycle(base: &LieAlgebra, l: usize, k: usize) -> Result<Cochain2, Error> {
    if base.dim() < 3 {
        return Err(Error::input(
            "base algebra too small to be a completed A-family instance".to_string(),
        ));
    }
    let offset = 2; // torus rank of the A-family
    let n = base.dim() - offset;
    let t = (n - k) / 2;
    if !(2..=t.saturating_sub(1)).contains(&l) {
        return Err(Error::input(format!(
            "cocycle index l={l} out of range 2..={} for n={n}, k={k}",
            t.saturating_sub(1)
        )));
    }
    let gamma = gamma_coefficients(n, k)?;
    let mut c = Cochain2::new(base.dim());
    let ni = n as i64;
    let ki = k as i64;
    for i in 1..ni {
        for j in (i + 1)..ni {
            if i + j > ni - ki - 1 {
                continue;
            }
            let v = gamma.get(l, i, j)?;
            if !v.is_zero() {
                let target = (i + j + ki - 1) as usize;
                c.add_term(offset + i as usize, offset + j as usize, offset + target, v)?;
            }
        }
    }
    Ok(c)
}

/// JSON row emitted by `h2_bound_check`.
#[derive(Clone, Debug, Serialize)]
pub struct H2BoundRow {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub bound: usize,
    /// Directions l in 2..t-1 whose first-order Jacobi obstruction vanishes.
    pub closed: usize,
    pub classes: usize,
    #[serde(rename = "H2")]
    pub h2: usize,
}

/// Builds the completed A-family instance at (n, k), keeps the deformation
/// directions that are actually closed, verifies that they are independent
/// modulo coboundaries and that dim H^2 is at least their number; returns
/// the counts. `bound` is the nominal target t-2; `classes` is the number
/// of classes realized, which falls short of `bound` exactly when some
/// direction is obstructed.
pub fn h2_bound_check(n: usize, k: usize) -> Result<H2BoundRow, Error> {
    if !(2..=n.saturating_sub(4)).contains(&k) {
        return Err(Error::input(format!(
            "h2 bound check needs 2 <= k <= n-4, got n={n}, k={k}"
        )));
    }
    let t = (n - k) / 2;
    let bound = t.saturating_sub(2);
    let spec = FamilySpec::new(Family::AC, n).with_k(k);
    let nilp = catalog::build_family(&spec)?;
    nilp.require_lie().map_err(|_| {
        Error::Verification(format!("A-family seed violates Jacobi at n={n}, k={k}"))
    })?;
    let torus = derivations::diagonal_derivation_space(&nilp)?;
    let completed = catalog::semidirect_sum(&nilp, &torus)?;
    let mut cocycles: Vec<Cochain2> = Vec::new();
    for l in 2..t {
        let c = deformation_cocycle(&completed, l, k)?;
        if cohomology::is_cocycle(&completed, &c)? {
            cocycles.push(c);
        }
    }
    let closed = cocycles.len();
    let classes = cohomology::classes_rank(&completed, &cocycles)?;
    if classes != closed {
        return Err(Error::verification(format!(
            "expected the {closed} closed directions at n={n}, k={k} to be \
             independent, found {classes} classes"
        )));
    }
    let h2 = cohomology::cohomology_dim(&completed, 2)?;
    if h2 < classes {
        return Err(Error::verification(format!(
            "dim H^2 = {h2} is below the class count {classes} at n={n}, k={k}"
        )));
    }
    Ok(H2BoundRow {
        n,
        k,
        t,
        bound,
        closed,
        classes,
        h2,
    })
}
