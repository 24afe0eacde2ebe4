//! Exact linear algebra over the rationals.
//!
//! Everything downstream (radical, center, splitting, lifting) reduces to row
//! canonical forms of matrices with `Rational` entries, so this module pins the
//! conventions once: deterministic first-nonzero pivoting, fully reduced rows,
//! zero rows trailing, and a canonical nullspace basis obtained by setting each
//! free coordinate to one and the remaining free coordinates to zero.

use std::fmt;
use std::mem;
use std::str::FromStr;

use malachite::base::num::arithmetic::traits::Reciprocal;
use malachite::base::num::basic::traits::{One, Zero};

pub use malachite::rational::Rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("linear system is inconsistent (column {column})")]
    Inconsistent { column: usize },
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

/// Shorthand for a reduced fraction with small components.
pub fn rat(numerator: i64, denominator: i64) -> Rational {
    Rational::from_signeds(numerator, denominator)
}

/// Shorthand for an integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(n)
}

/// Parses "p/q" or "p" with an optional leading minus on the numerator.
/// The result is reduced; "2/4" is accepted and normalized to "1/2".
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason: &str| ParseRationalError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = malachite::Integer::from_str(num_str.trim())
        .map_err(|_| err("numerator is not an integer"))?;
    let den = match den_str {
        None => malachite::Integer::ONE,
        Some(d) => malachite::Integer::from_str(d.trim())
            .map_err(|_| err("denominator is not an integer"))?,
    };
    if den == 0 {
        return Err(err("denominator is zero"));
    }
    if den < 0 {
        return Err(err("denominator must be positive"));
    }
    Ok(Rational::from_integers(num, den))
}

/// Formats a rational as "p/q", or "p" when the denominator is one.
/// This is exactly `Display` for `Rational`; the helper exists so callers
/// never depend on that coincidence.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::ZERO; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in Matrix::from_rows"
        );
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds a matrix whose rows may be empty; `cols` is explicit so a
    /// zero-row matrix still knows its width.
    pub fn from_rows_with_width(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let data = (0..rows)
            .map(|i| (0..cols).map(|j| f(i, j)).collect())
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.data
    }

    pub fn row_vecs(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data
            .iter()
            .all(|r| r.iter().all(|e| *e == Rational::ZERO))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    /// Stacks `other` below `self`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vcat width mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Joins `other` to the right of `self`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat height mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, aik) in self.data[i].iter().enumerate() {
                if *aik == Rational::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if *b != Rational::ZERO {
                        out.data[i][j] += aik * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = Rational::ZERO;
                for (a, b) in row.iter().zip(v) {
                    if *a != Rational::ZERO && *b != Rational::ZERO {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Row canonical form together with the pivot columns, one per nonzero
    /// row in order. Pivoting is deterministic: columns are scanned left to
    /// right and the first row with a nonzero entry wins.
    pub fn rcf(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rcf_in_place();
        (m, pivots)
    }

    pub fn rcf_in_place(&mut self) -> Vec<usize> {
        let order: Vec<usize> = (0..self.cols).collect();
        reduce_in_column_order(&mut self.data, &order)
    }

    /// Row canonical form with the pivot search following `col_order`
    /// (a permutation of the columns). Entries stay in their original
    /// positions; only the choice and ordering of pivots changes. Rows come
    /// out sorted by their pivot's position in `col_order`.
    pub fn rcf_ordered(&self, col_order: &[usize]) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = reduce_in_column_order(&mut m.data, col_order);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rcf().1.len()
    }

    /// Canonical basis of the right nullspace: one vector per free column,
    /// free coordinates forming an identity pattern.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rcf();
        nullspace_from_rcf(&red, &pivots)
    }

    /// Solves `self * x = rhs`. The particular solution sets every free
    /// variable to zero; the returned nullspace basis is canonical.
    pub fn solve(&self, rhs: &[Rational]) -> Result<LinearSolution, LinAlgError> {
        assert_eq!(self.rows, rhs.len(), "solve shape mismatch");
        let rhs_m = Matrix::from_rows(rhs.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>());
        let rhs_m = if self.rows == 0 {
            Matrix::zeros(0, 1)
        } else {
            rhs_m
        };
        let aug = self.hcat(&rhs_m);
        let (red, pivots) = aug.rcf();
        if pivots.iter().any(|&p| p == self.cols) {
            return Err(LinAlgError::Inconsistent { column: 0 });
        }
        let mut particular = vec![Rational::ZERO; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = red.data[r][self.cols].clone();
        }
        let a_red = Matrix::from_fn(self.rows, self.cols, |i, j| red.data[i][j].clone());
        let nullspace = nullspace_from_rcf(&a_red, &pivots);
        let free_cols = free_columns(self.cols, &pivots);
        Ok(LinearSolution {
            particular,
            free_cols,
            nullspace,
        })
    }

    /// Solves `self * X = rhs` column by column via one shared elimination.
    /// Each solution is the canonical particular one (free variables zero).
    /// Fails with the index of the first inconsistent right-hand column.
    pub fn solve_multi(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        assert_eq!(self.rows, rhs.rows, "solve_multi shape mismatch");
        let aug = self.hcat(rhs);
        let (red, pivots) = aug.rcf();
        if let Some(&p) = pivots.iter().find(|&&p| p >= self.cols) {
            return Err(LinAlgError::Inconsistent {
                column: p - self.cols,
            });
        }
        let mut out = Matrix::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for t in 0..rhs.cols {
                out.data[p][t] = red.data[r][self.cols + t].clone();
            }
        }
        Ok(out)
    }

    /// Inverse via Gauss-Jordan on `[self | I]`.
    pub fn invert(&self) -> Result<Matrix, LinAlgError> {
        assert_eq!(self.rows, self.cols, "invert requires a square matrix");
        let n = self.rows;
        let aug = self.hcat(&Matrix::identity(n));
        let (red, pivots) = aug.rcf();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(LinAlgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| red.data[i][n + j].clone()))
    }

    /// The nonzero rows, cloned out in order.
    pub fn nonzero_rows(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .filter(|r| r.iter().any(|e| *e != Rational::ZERO))
            .cloned()
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub free_cols: Vec<usize>,
    pub nullspace: Vec<Vec<Rational>>,
}

impl LinearSolution {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

/// Gauss-Jordan elimination visiting columns in the order given.
/// Returns the pivot columns in row order.
fn reduce_in_column_order(rows: &mut [Vec<Rational>], col_order: &[usize]) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for &c in col_order {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| rows[r][c] != Rational::ZERO) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = (&rows[rank][c]).reciprocal();
        if rows[rank][c] != Rational::ONE {
            for e in rows[rank].iter_mut() {
                if *e != Rational::ZERO {
                    *e *= &inv;
                }
            }
        }
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        for r in before.iter_mut().chain(after.iter_mut()) {
            if r[c] == Rational::ZERO {
                continue;
            }
            let f = mem::replace(&mut r[c], Rational::ZERO);
            for (j, v) in pivot_row.iter().enumerate() {
                if j != c && *v != Rational::ZERO {
                    r[j] -= &f * v;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

fn nullspace_from_rcf(red: &Matrix, pivots: &[usize]) -> Vec<Vec<Rational>> {
    let n = red.cols();
    free_columns(n, pivots)
        .into_iter()
        .map(|fc| {
            let mut v = vec![Rational::ZERO; n];
            v[fc] = Rational::ONE;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(r, fc).clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the subspace spanned by `rows`, defined as the
/// canonical nullspace basis of any matrix whose nullspace is that span.
/// Concretely: the free coordinate set is the set of "reachable last
/// positions" of the span (pivots of a right-to-left reduction), and the
/// basis restricted to those coordinates is the identity.
pub fn canonical_subspace_basis(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    assert!(rows.iter().all(|r| r.len() == n));
    let m = Matrix::from_rows_with_width(rows.to_vec(), n);
    let reversed: Vec<usize> = (0..n).rev().collect();
    let (_, rev_pivots) = m.rcf_ordered(&reversed);
    let mut free: Vec<usize> = rev_pivots;
    free.sort_unstable();
    let mut order = free.clone();
    order.extend((0..n).filter(|c| !free.contains(c)));
    let (red, pivots) = m.rcf_ordered(&order);
    debug_assert_eq!(pivots, free, "free-coordinate pivots must be available");
    red.into_rows().into_iter().take(pivots.len()).collect()
}

/// True if `v` lies in the span of `rcf_rows` (rows in canonical form with
/// the given pivot columns). Reduces `v` and checks the remainder.
pub fn in_rcf_span(rcf_rows: &[Vec<Rational>], pivots: &[usize], v: &[Rational]) -> bool {
    reduce_against_rcf(rcf_rows, pivots, v)
        .iter()
        .all(|e| *e == Rational::ZERO)
}

/// Remainder of `v` after eliminating the pivot coordinates of the rows.
pub fn reduce_against_rcf(
    rcf_rows: &[Vec<Rational>],
    pivots: &[usize],
    v: &[Rational],
) -> Vec<Rational> {
    let mut w = v.to_vec();
    for (row, &p) in rcf_rows.iter().zip(pivots) {
        if w[p] == Rational::ZERO {
            continue;
        }
        let f = mem::replace(&mut w[p], Rational::ZERO);
        for (j, rv) in row.iter().enumerate() {
            if j != p && *rv != Rational::ZERO {
                w[j] -= &f * rv;
            }
        }
    }
    w
}

/// Coordinates of `v` in the span of canonical rows, or None if outside.
/// Coordinate `k` multiplies row `k`.
pub fn coordinates_in_rcf_span(
    rcf_rows: &[Vec<Rational>],
    pivots: &[usize],
    v: &[Rational],
) -> Option<Vec<Rational>> {
    let mut w = v.to_vec();
    let mut coords = Vec::with_capacity(rcf_rows.len());
    for (row, &p) in rcf_rows.iter().zip(pivots) {
        let f = mem::replace(&mut w[p], Rational::ZERO);
        if f != Rational::ZERO {
            for (j, rv) in row.iter().enumerate() {
                if j != p && *rv != Rational::ZERO {
                    w[j] -= &f * rv;
                }
            }
        }
        coords.push(f);
    }
    if w.iter().all(|e| *e == Rational::ZERO) {
        Some(coords)
    } else {
        None
    }
}

/// An incrementally maintained row space in canonical form.
/// Used wherever a closure has to grow a subspace vector by vector.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        in_rcf_span(&self.rows, &self.pivots, v)
    }

    /// Reduces `v` against the space and inserts the remainder if nonzero.
    /// Returns true when the space grew. Keeps rows fully reduced and sorted
    /// by pivot column, so `rows()` is always the RCF basis of the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = reduce_against_rcf(&self.rows, &self.pivots, v);
        let Some(p) = w.iter().position(|e| *e != Rational::ZERO) else {
            return false;
        };
        let inv = (&w[p]).reciprocal();
        if w[p] != Rational::ONE {
            for e in w.iter_mut() {
                if *e != Rational::ZERO {
                    *e *= &inv;
                }
            }
        }
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert_ne!(rp, p);
            if row[p] != Rational::ZERO {
                let f = mem::replace(&mut row[p], Rational::ZERO);
                for (j, wv) in w.iter().enumerate() {
                    if j != p && *wv != Rational::ZERO {
                        row[j] -= &f * wv;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows
    }
}
