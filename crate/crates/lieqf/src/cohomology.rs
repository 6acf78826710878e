//! Chevalley-Eilenberg cochain complex with adjoint coefficients,
//! degrees 0 through 2.
//!
//! The basis of C^k is indexed by (S, m) with S a k-subset of basis indices
//! in lexicographic order and m the target coordinate: the cochain sending
//! e_S to e_m and every other basis tuple to 0. Column/row index is
//! `subset_index * n + m`, so every matrix is reproducible bit-for-bit.
//!
//! The differential is the standard one,
//!   (d phi)(x_0..x_k) = sum_i (-1)^i [x_i, phi(.. x_i ..)]
//!                     + sum_{i<j} (-1)^{i+j} phi([x_i,x_j], .. x_i .. x_j ..),
//! whose degree-1 kernel is exactly the derivation algebra; a unit test
//! pins that anchor so the sign convention cannot drift.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::exactlin::{self, Matrix, Scalar};
use crate::liecore::LieAlgebra;

/// n * binomial(n, k), the dimension of C^k(g, g).
pub fn cochain_dim(n: usize, k: usize) -> Result<usize, Error> {
    if k > n {
        return Err(Error::input(format!(
            "cochain degree {k} out of range for dimension {n}"
        )));
    }
    Ok(n * binomial(n, k))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All k-subsets of 0..n in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// One degree of the complex: the matrix of d_k : C^k -> C^{k+1}.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub degree: usize,
    pub d: Matrix,
    /// (dim C^k, dim C^{k+1})
    pub dims: (usize, usize),
}

/// The matrix of the CE differential in degree k (k in {0, 1, 2}).
pub fn differential_matrix(g: &LieAlgebra, k: usize) -> Result<ComplexSlice, Error> {
    g.require_lie()?;
    if k > 2 {
        return Err(Error::input(format!(
            "differential degree {k} not materialized (degrees 0..2 only)"
        )));
    }
    Ok(differential_matrix_unchecked(g, k))
}

fn differential_matrix_unchecked(g: &LieAlgebra, k: usize) -> ComplexSlice {
    let n = g.dim();
    let subs_k = k_subsets(n, k);
    let subs_k1 = k_subsets(n, k + 1);
    let index: BTreeMap<Vec<usize>, usize> = subs_k
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let c_k = n * subs_k.len();
    let c_k1 = n * subs_k1.len();
    let mut d = Matrix::new(c_k1, c_k);
    for (ti, t) in subs_k1.iter().enumerate() {
        // sum_i (-1)^i [x_i, phi(T \ x_i)]
        for (pos, &x) in t.iter().enumerate() {
            let mut s = t.clone();
            s.remove(pos);
            let si = index[&s];
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            for m in 0..n {
                for (u, c) in g.bracket_of_basis(x, m) {
                    let v = if sign > 0 { c } else { -c };
                    d.add_to(ti * n + u, si * n + m, v);
                }
            }
        }
        // sum_{i<j} (-1)^{i+j} phi([x_i,x_j], T \ {x_i,x_j})
        for pi in 0..t.len() {
            for pj in (pi + 1)..t.len() {
                let (a, b) = (t[pi], t[pj]);
                let mut rest = t.clone();
                rest.remove(pj);
                rest.remove(pi);
                let pair_sign: i64 = if (pi + pj) % 2 == 0 { 1 } else { -1 };
                for (u, c) in g.bracket_of_basis(a, b) {
                    if rest.contains(&u) {
                        continue;
                    }
                    let ins = rest.partition_point(|&y| y < u);
                    let mut s = rest.clone();
                    s.insert(ins, u);
                    let shuffle_sign: i64 = if ins % 2 == 0 { 1 } else { -1 };
                    let si = index[&s];
                    let coef = if pair_sign * shuffle_sign > 0 { c } else { -c };
                    for m in 0..n {
                        d.add_to(ti * n + m, si * n + m, coef.clone());
                    }
                }
            }
        }
    }
    ComplexSlice {
        degree: k,
        d,
        dims: (c_k, c_k1),
    }
}

/// dim H^k(g, g) = dim C^k - rank d_k - rank d_{k-1}.
pub fn cohomology_dim(g: &LieAlgebra, k: usize) -> Result<usize, Error> {
    let slice = differential_matrix(g, k)?;
    let rk = exactlin::rank(&slice.d);
    let rk_prev = if k == 0 {
        0
    } else {
        exactlin::rank(&differential_matrix(g, k - 1)?.d)
    };
    Ok(slice.dims.0 - rk - rk_prev)
}

/// Adjoint-valued alternating 2-cochain, sparse over basis pairs i<j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    n: usize,
    values: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl Cochain2 {
    pub fn new(n: usize) -> Cochain2 {
        Cochain2 {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `c * Y_k` to the value on (Y_i, Y_j); antisymmetry is applied.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> Result<(), Error> {
        if i >= self.n || j >= self.n || k >= self.n {
            return Err(Error::input(format!(
                "cochain index out of range: ({i},{j})->{k} in dimension {}",
                self.n
            )));
        }
        if i == j {
            return Err(Error::input("cochain value on (Y_i, Y_i) must be zero".to_string()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let vec = self
            .values
            .entry((i, j))
            .or_insert_with(|| vec![Scalar::zero(); self.n]);
        vec[k] += c;
        if vec.iter().all(|v| v.is_zero()) {
            self.values.remove(&(i, j));
        }
        Ok(())
    }

    pub fn value(&self, i: usize, j: usize) -> Vec<Scalar> {
        if i < j {
            self.values
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![Scalar::zero(); self.n])
        } else {
            self.value(j, i).into_iter().map(|v| -v).collect()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Coordinates in the lexicographic basis of C^2.
    pub fn to_vector(&self) -> Vec<Scalar> {
        let n = self.n;
        let pairs = k_subsets(n, 2);
        let index: BTreeMap<(usize, usize), usize> = pairs
            .iter()
            .enumerate()
            .map(|(idx, p)| ((p[0], p[1]), idx))
            .collect();
        let mut out = vec![Scalar::zero(); n * pairs.len()];
        for (&(i, j), vec) in &self.values {
            let si = index[&(i, j)];
            for (m, v) in vec.iter().enumerate() {
                out[si * n + m] = v.clone();
            }
        }
        out
    }
}

/// True iff d_2(c) = 0 on the given algebra.
pub fn is_cocycle(g: &LieAlgebra, c: &Cochain2) -> Result<bool, Error> {
    if c.n() != g.dim() {
        return Err(Error::input(format!(
            "cochain dimension {} does not match algebra dimension {}",
            c.n(),
            g.dim()
        )));
    }
    let slice = differential_matrix(g, 2)?;
    let image = slice.d.mul_vec(&c.to_vector())?;
    Ok(image.iter().all(|v| v.is_zero()))
}

/// Dimension of the span of the given cocycles modulo coboundaries:
/// rank([B^2-generators | cocycles]) - rank(B^2-generators).
pub fn classes_rank(g: &LieAlgebra, cocycles: &[Cochain2]) -> Result<usize, Error> {
    for (idx, c) in cocycles.iter().enumerate() {
        if !is_cocycle(g, c)? {
            return Err(Error::precondition(format!(
                "input {idx} is not a 2-cocycle"
            )));
        }
    }
    let d1 = differential_matrix(g, 1)?.d;
    // Rows of the eliminator live in C^2; the columns of d1 span B^2.
    let d1t = d1.transpose();
    let mut e = exactlin::Eliminator::new();
    let mut row: Vec<(usize, Scalar)> = Vec::new();
    for r in 0..d1t.rows() {
        row.clear();
        for c in 0..d1t.cols() {
            let v = d1t.get(r, c);
            if !v.is_zero() {
                row.push((c, v));
            }
        }
        e.push_rational_row(&row);
    }
    let coboundary_rank = e.rank();
    for c in cocycles {
        e.push_dense_row(&c.to_vector());
    }
    Ok(e.rank() - coboundary_rank)
}

/// Machine-readable cohomology report for one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub dims: BTreeMap<String, usize>,
    pub ranks: BTreeMap<String, usize>,
    #[serde(rename = "H")]
    pub h: BTreeMap<String, usize>,
}

/// Computes C^0..C^3 dimensions, the ranks of d0..d2 and H^0..H^2.
pub fn cohomology_report(g: &LieAlgebra, label: &str) -> Result<CohomologyReport, Error> {
    let n = g.dim();
    let mut dims = BTreeMap::new();
    for k in 0..=3usize {
        // binomial(n,k) is 0 for k > n, so this is safe for tiny algebras
        dims.insert(format!("C{k}"), n * binomial(n, k));
    }
    let mut ranks = BTreeMap::new();
    let mut rank_of = [0usize; 3];
    for k in 0..=2usize {
        rank_of[k] = exactlin::rank(&differential_matrix(g, k)?.d);
        ranks.insert(format!("d{k}"), rank_of[k]);
    }
    let mut h = BTreeMap::new();
    for k in 0..=2usize {
        let prev = if k == 0 { 0 } else { rank_of[k - 1] };
        h.insert(
            format!("H{k}"),
            cochain_dim(n, k)? - rank_of[k] - prev,
        );
    }
    Ok(CohomologyReport {
        algebra: label.to_string(),
        dims,
        ranks,
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            k_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(13, 3), 286);
        assert_eq!(binomial(5, 0), 1);
    }
}
