//! Exact rational sparse linear algebra.
//!
//! Everything downstream (derivation systems, Chevalley-Eilenberg
//! differentials, structure-constant checks) reduces to rank, kernel and
//! solve over the rationals. Elimination is fraction-free: rows are scaled
//! to integer vectors, combined with cross-multiplication and divided by
//! their content after every step, which bounds coefficient swell without
//! ever leaving exact arithmetic. Pivoting is deterministic (first nonzero
//! in column order), so every basis this module returns is reproducible
//! bit-for-bit.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational scalar; all arithmetic in the crate is exact.
pub type Scalar = BigRational;

/// Shorthand for an integer scalar.
pub fn sc(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for the fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses the external rational syntax `"p/q"` or `"p"` (sign on the numerator).
pub fn scalar_from_str(s: &str) -> Result<Scalar, Error> {
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.parse::<BigInt>()
            .map_err(|_| Error::input(format!("invalid rational component {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den <= BigInt::zero() {
                return Err(Error::input(format!(
                    "denominator must be positive in {s:?}"
                )));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sparse rational matrix; absent entries are zero, stored entries nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Matrix::new(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::new(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::input(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (&(r, c), x) in &self.entries {
            if !v[c].is_zero() {
                out[r] += x * &v[c];
            }
        }
        Ok(out)
    }

    /// Rows as sparse integer vectors (cleared of denominators and content).
    fn int_rows(&self) -> Vec<IntRow> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows.into_iter().map(|r| int_row_from_rational(&r)).collect()
    }
}

/// A sparse row of integers, sorted by column, content-free, leading entry positive.
type IntRow = Vec<(usize, BigInt)>;

fn int_row_from_rational(row: &[(usize, Scalar)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = num::integer::lcm(lcm, v.denom().clone());
    }
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    out.sort_by_key(|&(c, _)| c);
    content_reduce(&mut out);
    out
}

/// Divides by the gcd of the entries and makes the leading entry positive.
fn content_reduce(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = num::integer::gcd(g, v.clone());
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if row[0].1.is_negative() {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `a*r1 - b*r2`, merged, zero entries dropped, content-reduced.
fn combine(a: &BigInt, r1: &IntRow, b: &BigInt, r2: &IntRow) -> IntRow {
    let mut out: IntRow = Vec::with_capacity(r1.len() + r2.len());
    let (mut i, mut j) = (0, 0);
    while i < r1.len() || j < r2.len() {
        let c1 = r1.get(i).map(|&(c, _)| c);
        let c2 = r2.get(j).map(|&(c, _)| c);
        match (c1, c2) {
            (Some(c1), Some(c2)) if c1 == c2 => {
                let v = a * &r1[i].1 - b * &r2[j].1;
                if !v.is_zero() {
                    out.push((c1, v));
                }
                i += 1;
                j += 1;
            }
            (Some(c1), Some(c2)) if c1 < c2 => {
                out.push((c1, a * &r1[i].1));
                i += 1;
            }
            (Some(_), Some(c2)) => {
                out.push((c2, -(b * &r2[j].1)));
                j += 1;
            }
            (Some(c1), None) => {
                out.push((c1, a * &r1[i].1));
                i += 1;
            }
            (None, Some(c2)) => {
                out.push((c2, -(b * &r2[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    content_reduce(&mut out);
    out
}

/// Incremental fraction-free row eliminator.
///
/// Rows are pushed one at a time and reduced against the pivot rows seen so
/// far; a row that survives becomes the pivot for its leading column. The
/// rank after any prefix of pushes is available immediately, which lets
/// callers measure how much a batch of extra rows enlarges a row space.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    pivots: BTreeMap<usize, IntRow>,
}

impl Eliminator {
    pub fn new() -> Self {
        Eliminator::default()
    }

    /// Reduces and installs one row; returns true if it increased the rank.
    pub fn push_int_row(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let a = p[0].1.clone();
                    let b = row[0].1.clone();
                    row = combine(&a, &row, &b, p);
                }
            }
        }
    }

    pub fn push_rational_row(&mut self, row: &[(usize, Scalar)]) -> bool {
        self.push_int_row(int_row_from_rational(row))
    }

    pub fn push_dense_row(&mut self, row: &[Scalar]) -> bool {
        let sparse: Vec<(usize, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.push_rational_row(&sparse)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Back-substitutes to reduced echelon form; each returned row has a
    /// unit leading entry at its pivot column and zeros above every pivot.
    pub fn rref_rows(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows: Vec<IntRow> = self.pivots.values().cloned().collect();
        for r in (0..rows.len()).rev() {
            let lead = rows[r][0].0;
            for s in 0..r {
                let coef = rows[s]
                    .iter()
                    .find(|&&(c, _)| c == lead)
                    .map(|(_, v)| v.clone());
                if let Some(coef) = coef {
                    let a = rows[r][0].1.clone();
                    rows[s] = combine(&a, &rows[s], &coef, &rows[r]);
                }
            }
        }
        rows.into_iter()
            .map(|row| {
                let lead = BigRational::from_integer(row[0].1.clone());
                row.into_iter()
                    .map(|(c, v)| (c, BigRational::from_integer(v) / &lead))
                    .collect()
            })
            .collect()
    }
}

/// Rank over the rationals, fraction-free elimination, deterministic.
pub fn rank(m: &Matrix) -> usize {
    let mut e = Eliminator::new();
    for row in m.int_rows() {
        e.push_int_row(row);
    }
    e.rank()
}

/// Deterministic kernel basis: reduced echelon convention, one vector per
/// free column in increasing index order, free coordinates set to the 1/0
/// unit pattern.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut e = Eliminator::new();
    for row in m.int_rows() {
        e.push_int_row(row);
    }
    kernel_from_eliminator(&e, m.cols())
}

pub(crate) fn kernel_from_eliminator(e: &Eliminator, ncols: usize) -> Vec<Vec<Scalar>> {
    let rref = e.rref_rows();
    let pivots = e.pivot_columns();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (row, &p) in rref.iter().zip(&pivots) {
            if let Some((_, coef)) = row.iter().find(|&&(c, _)| c == f) {
                v[p] = -coef.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a.x = b` if consistent (free variables set to 0).
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
    if b.len() != a.rows() {
        return Err(Error::input(format!(
            "right-hand side length {} does not match {} rows",
            b.len(),
            a.rows()
        )));
    }
    let aug_col = a.cols();
    let mut e = Eliminator::new();
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); a.rows()];
    for (&(r, c), v) in &a.entries {
        rows[r].push((c, v.clone()));
    }
    for (r, mut row) in rows.into_iter().enumerate() {
        if !b[r].is_zero() {
            row.push((aug_col, b[r].clone()));
        }
        e.push_rational_row(&row);
    }
    if e.pivot_columns().contains(&aug_col) {
        return Ok(None); // inconsistent system
    }
    let rref = e.rref_rows();
    let pivots = e.pivot_columns();
    let mut x = vec![Scalar::zero(); a.cols()];
    for (row, &p) in rref.iter().zip(&pivots) {
        if let Some((_, v)) = row.iter().find(|&&(c, _)| c == aug_col) {
            x[p] = v.clone();
        }
    }
    Ok(Some(x))
}

/// Reduced row-echelon form of a list of dense vectors; returns the RREF
/// basis rows (dense) and the pivot columns.
pub fn rref_dense(vecs: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut e = Eliminator::new();
    for v in vecs {
        assert_eq!(v.len(), ncols, "vector length mismatch");
        e.push_dense_row(v);
    }
    let pivots = e.pivot_columns();
    let rows = e
        .rref_rows()
        .into_iter()
        .map(|row| {
            let mut dense = vec![Scalar::zero(); ncols];
            for (c, v) in row {
                dense[c] = v;
            }
            dense
        })
        .collect();
    (rows, pivots)
}
