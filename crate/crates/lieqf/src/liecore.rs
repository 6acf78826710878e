//! Lie algebra data model and filtration-level invariants.
//!
//! A `LieAlgebra` is a dimension, basis labels and a sparse antisymmetric
//! structure-constant table; only `i < j` entries are stored, antisymmetry
//! is structural. On top of that sit the Jacobi checker (the arbiter of
//! whether a parameter choice yields a Lie algebra at all), the center,
//! the lower central series and nilindex, the type `dim g/[g,g]`, and the
//! associated graded algebra of the lower-central-series filtration.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactlin::{self, Matrix, Scalar};

/// Finite-dimensional Lie algebra over Q given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// (i,j) with i<j -> sorted sparse coefficient vector of [Y_i, Y_j].
    brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

/// A subspace of a fixed ambient coordinate space, held as a reduced
/// echelon basis so subspace equality is syntactic comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Result of the lower central series computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Nilpotent { nilindex: usize },
    NotNilpotent,
}

/// Associated graded algebra of the lower-central-series filtration.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub pieces: Vec<Subspace>,
    pub psequence: Vec<usize>,
    pub algebra: LieAlgebra,
    /// Adapted basis vectors in the original coordinates, by graded position.
    pub adapted_basis: Vec<Vec<Scalar>>,
    /// Degree of each adapted basis vector.
    pub degrees: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(vecs: &[Vec<Scalar>], ambient: usize) -> Subspace {
        let (basis, pivots) = exactlin::rref_dense(vecs, ambient);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut e = exactlin::Eliminator::new();
        for b in &self.basis {
            e.push_dense_row(b);
        }
        let r = e.rank();
        e.push_dense_row(v);
        e.rank() == r
    }
}

impl LieAlgebra {
    /// Abelian algebra with default labels Y0..Y{n-1}.
    pub fn new(dim: usize) -> LieAlgebra {
        let labels = (0..dim).map(|i| format!("Y{i}")).collect();
        LieAlgebra {
            dim,
            labels,
            brackets: BTreeMap::new(),
        }
    }

    pub fn with_labels(dim: usize, labels: Vec<String>) -> Result<LieAlgebra, Error> {
        if labels.len() != dim {
            return Err(Error::input(format!(
                "expected {dim} labels, got {}",
                labels.len()
            )));
        }
        Ok(LieAlgebra {
            dim,
            labels,
            brackets: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Adds `c * Y_k` to `[Y_i, Y_j]`, accumulating and normalizing to i<j.
    pub fn add_bracket(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> Result<(), Error> {
        if i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(Error::input(format!(
                "bracket index out of range: ({i},{j})->{k} in dim {}",
                self.dim
            )));
        }
        if i == j {
            return Err(Error::input(format!("bracket [Y{i},Y{i}] must be zero")));
        }
        if c.is_zero() {
            return Ok(());
        }
        let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let terms = self.brackets.entry((i, j)).or_default();
        match terms.binary_search_by_key(&k, |&(t, _)| t) {
            Ok(pos) => {
                terms[pos].1 += c;
                if terms[pos].1.is_zero() {
                    terms.remove(pos);
                }
            }
            Err(pos) => terms.insert(pos, (k, c)),
        }
        if terms.is_empty() {
            self.brackets.remove(&(i, j));
        }
        Ok(())
    }

    /// Sparse coefficient vector of `[Y_i, Y_j]` (antisymmetry applied).
    pub fn bracket_of_basis(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default()
        }
    }

    /// Iterates over the stored (i<j) bracket entries.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Scalar)])> {
        self.brackets.iter().map(|(&(i, j), t)| (i, j, t.as_slice()))
    }

    /// Bilinear antisymmetric extension of the structure table.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::input(format!(
                "bracket arguments must have length {}",
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(i, j), terms) in &self.brackets {
            let coef = &x[i] * &y[j] - &x[j] * &y[i];
            if coef.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += &coef * c;
            }
        }
        Ok(out)
    }

    /// All triples i<j<k where the Jacobi identity fails, with the defect
    /// vector [Yi,[Yj,Yk]] + [Yj,[Yk,Yi]] + [Yk,[Yi,Yj]].
    pub fn jacobi_defect(&self) -> Vec<(usize, usize, usize, Vec<Scalar>)> {
        let mut bad = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut d = vec![Scalar::zero(); self.dim];
                    for &(a, b, c) in &[(j, k, i), (k, i, j), (i, j, k)] {
                        // term [Yc, [Ya, Yb]]
                        for (m, cf) in self.bracket_of_basis(a, b) {
                            for (t, cf2) in self.bracket_of_basis(c, m) {
                                d[t] += &cf * &cf2;
                            }
                        }
                    }
                    if d.iter().any(|v| !v.is_zero()) {
                        bad.push((i, j, k, d));
                    }
                }
            }
        }
        bad
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_defect().is_empty()
    }

    pub(crate) fn require_lie(&self) -> Result<(), Error> {
        let bad = self.jacobi_defect();
        if let Some((i, j, k, _)) = bad.first() {
            return Err(Error::precondition(format!(
                "Jacobi identity fails at ({i},{j},{k}) and {} more triple(s)",
                bad.len() - 1
            )));
        }
        Ok(())
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Stacked adjoint matrix: rows (j,k), columns i, entry c of [Y_i,Y_j]_k.
    fn adjoint_stack(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::new(n * n, n);
        for (i, j, terms) in self.bracket_entries() {
            for (k, c) in terms {
                // [Y_i, Y_j] = c Y_k  and [Y_j, Y_i] = -c Y_k
                m.add_to(j * n + k, i, c.clone());
                m.add_to(i * n + k, j, -c.clone());
            }
        }
        m
    }

    /// Center Z(g) = { x : [x,y] = 0 for all y }.
    pub fn center(&self) -> Result<Subspace, Error> {
        self.require_lie()?;
        let kernel = exactlin::kernel_basis(&self.adjoint_stack());
        Ok(Subspace::from_spanning(&kernel, self.dim))
    }

    /// Derived algebra [g,g] as a subspace.
    pub fn derived_subalgebra(&self) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = self
            .bracket_entries()
            .map(|(_, _, terms)| {
                let mut v = vec![Scalar::zero(); self.dim];
                for (k, c) in terms {
                    v[*k] = c.clone();
                }
                v
            })
            .collect();
        Subspace::from_spanning(&vecs, self.dim)
    }

    /// Lower central series g_1 = g, g_{k+1} = [g_k, g], computed until
    /// stabilization. When the series reaches zero the terminal zero
    /// subspace is included and the nilindex is the last k with g_k != 0.
    pub fn lower_central_series(&self) -> Result<(Vec<Subspace>, Nilpotency), Error> {
        self.require_lie()?;
        let full: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.unit(i)).collect();
        let mut series = vec![Subspace::from_spanning(&full, self.dim)];
        loop {
            let prev = series.last().unwrap();
            let mut spanning = Vec::new();
            for v in &prev.basis {
                for i in 0..self.dim {
                    let w = self.bracket(v, &self.unit(i))?;
                    if w.iter().any(|x| !x.is_zero()) {
                        spanning.push(w);
                    }
                }
            }
            let next = Subspace::from_spanning(&spanning, self.dim);
            if next.dim() == prev.dim() {
                return Ok((series, Nilpotency::NotNilpotent));
            }
            let done = next.dim() == 0;
            series.push(next);
            if done {
                let nilindex = series.len() - 1;
                return Ok((series, Nilpotency::Nilpotent { nilindex }));
            }
        }
    }

    pub fn nilindex(&self) -> Result<Option<usize>, Error> {
        match self.lower_central_series()?.1 {
            Nilpotency::Nilpotent { nilindex } => Ok(Some(nilindex)),
            Nilpotency::NotNilpotent => Ok(None),
        }
    }

    /// Type ty(g) = dim g - dim [g,g], the number of generators.
    pub fn type_of(&self) -> Result<usize, Error> {
        self.require_lie()?;
        Ok(self.dim - self.derived_subalgebra().dim())
    }

    /// Associated graded algebra of the lower-central-series filtration.
    ///
    /// The adapted basis takes, for each degree d, the echelon basis vectors
    /// of g_d whose pivot column is not a pivot of g_{d+1} (the echelon
    /// pivots of g_{d+1} are a subset of those of g_d), ordered by degree
    /// then pivot column. The induced bracket keeps only the degree
    /// (d_a + d_b) component of [v_a, v_b].
    pub fn associated_graded(&self) -> Result<GradedAlgebra, Error> {
        let (series, nil) = self.lower_central_series()?;
        if nil == Nilpotency::NotNilpotent {
            return Err(Error::precondition(
                "associated graded algebra requires a nilpotent algebra".to_string(),
            ));
        }
        let m = series.len() - 1; // series = [g_1, ..., g_m, 0]
        let mut adapted: Vec<Vec<Scalar>> = Vec::new();
        let mut degrees: Vec<usize> = Vec::new();
        let mut pieces: Vec<Subspace> = Vec::new();
        for d in 0..m {
            let next_pivots: std::collections::BTreeSet<usize> =
                series[d + 1].pivots().iter().copied().collect();
            let mut piece_vecs = Vec::new();
            for (v, &p) in series[d].basis.iter().zip(series[d].pivots()) {
                if !next_pivots.contains(&p) {
                    adapted.push(v.clone());
                    degrees.push(d + 1);
                    piece_vecs.push(v.clone());
                }
            }
            pieces.push(Subspace::from_spanning(&piece_vecs, self.dim));
        }
        debug_assert_eq!(adapted.len(), self.dim);
        let psequence: Vec<usize> = pieces.iter().map(|w| w.dim()).collect();

        // Change of basis: columns of A are the adapted vectors.
        let n = self.dim;
        let mut a = Matrix::new(n, n);
        for (c, v) in adapted.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                a.set(r, c, x.clone());
            }
        }

        // Labels: reuse the original label when an adapted vector is a unit
        // vector (true for every catalog algebra), else a generic one.
        let labels: Vec<String> = adapted
            .iter()
            .enumerate()
            .map(|(pos, v)| {
                let nz: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, _)| i)
                    .collect();
                if nz.len() == 1 && v[nz[0]].is_one() {
                    self.labels[nz[0]].clone()
                } else {
                    format!("Z{pos}")
                }
            })
            .collect();
        let mut gr = LieAlgebra::with_labels(n, labels)?;
        for ai in 0..n {
            for bi in (ai + 1)..n {
                let w = self.bracket(&adapted[ai], &adapted[bi])?;
                if w.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let coords = exactlin::solve(&a, &w)?
                    .expect("adapted basis spans the algebra");
                let target = degrees[ai] + degrees[bi];
                for (ci, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() && degrees[ci] == target {
                        gr.add_bracket(ai, bi, ci, x)?;
                    }
                }
            }
        }
        Ok(GradedAlgebra {
            pieces,
            psequence,
            algebra: gr,
            adapted_basis: adapted,
            degrees,
        })
    }

    // ----- JSON interface -----

    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            dim: self.dim,
            labels: self.labels.clone(),
            brackets: self
                .bracket_entries()
                .map(|(i, j, terms)| BracketDoc {
                    i,
                    j,
                    terms: terms
                        .iter()
                        .map(|(k, c)| TermDoc {
                            k: *k,
                            c: exactlin::scalar_to_string(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<LieAlgebra, Error> {
        let mut g = LieAlgebra::with_labels(doc.dim, doc.labels.clone())?;
        let mut seen = std::collections::BTreeSet::new();
        for b in &doc.brackets {
            if b.i >= b.j {
                return Err(Error::input(format!(
                    "bracket entry ({},{}) must satisfy i < j",
                    b.i, b.j
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(Error::input(format!(
                    "duplicate bracket entry ({},{})",
                    b.i, b.j
                )));
            }
            let mut seen_k = std::collections::BTreeSet::new();
            for t in &b.terms {
                if !seen_k.insert(t.k) {
                    return Err(Error::input(format!(
                        "duplicate term Y{} in bracket ({},{})",
                        t.k, b.i, b.j
                    )));
                }
                g.add_bracket(b.i, b.j, t.k, exactlin::scalar_from_str(&t.c)?)?;
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("algebra doc serializes")
    }

    pub fn from_json(s: &str) -> Result<LieAlgebra, Error> {
        let doc: AlgebraDoc =
            serde_json::from_str(s).map_err(|e| Error::input(format!("invalid algebra JSON: {e}")))?;
        LieAlgebra::from_doc(&doc)
    }
}

/// JSON document form of a Lie algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: usize,
    pub c: String,
}
