//! Finite-dimensional associative algebras over Q presented by structure
//! constants.
//!
//! A basis product `a_i * a_j` is stored as a sparse row of (index,
//! coefficient) pairs. Rows are reference-counted so that quotients of large
//! semigroup algebras, where thousands of pairs rewrite to the same row, share
//! storage instead of duplicating it.

use std::collections::BTreeMap;
use std::sync::Arc;

use malachite::base::num::basic::traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactla::{
    format_rational, parse_rational, reduce_against_rcf, Matrix, Rational, RowSpace,
};
use crate::rng::SplitMix64;

pub type Element = Vec<Rational>;
pub type ProductRow = Arc<[(u32, Rational)]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure entry ({i}, {j}, {k}) out of range for dimension {dim}")]
    EntryOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("product is not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("subspace is not a two-sided ideal (basis vector {row} escapes under basis element {against})")]
    NotAnIdeal { row: usize, against: usize },
    #[error("algebra has no identity element")]
    NotUnital,
    #[error("invalid algebra JSON: {0}")]
    Json(String),
}

/// How far to push `subspace_closure`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    Subalgebra,
}

/// Associativity checking policy for externally supplied products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocCheck {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
    Off,
}

#[derive(Debug, Clone)]
pub struct Algebra {
    dim: usize,
    rows: Vec<ProductRow>,
    one: Option<Element>,
    labels: Option<Vec<String>>,
}

impl Algebra {
    /// Builds an algebra from 0-based structure entries `(i, j, k, c)` with
    /// `a_i a_j = sum_k c a_k`. Duplicate `(i, j, k)` entries are summed.
    pub fn from_structure_constants(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Algebra, AlgebraError> {
        let mut cells: Vec<BTreeMap<u32, Rational>> = vec![BTreeMap::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::EntryOutOfRange { i, j, k, dim });
            }
            let slot = cells[i * dim + j].entry(k as u32).or_insert(Rational::ZERO);
            *slot += c;
        }
        let rows = cells
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .filter(|(_, c)| *c != Rational::ZERO)
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        Ok(Algebra {
            dim,
            rows,
            one: None,
            labels: None,
        })
    }

    /// Builds an algebra directly from shared product rows (row `(i, j)` at
    /// index `i * dim + j`). Internal constructor for quotients and tables.
    pub(crate) fn from_rows(dim: usize, rows: Vec<ProductRow>) -> Algebra {
        assert_eq!(rows.len(), dim * dim);
        Algebra {
            dim,
            rows,
            one: None,
            labels: None,
        }
    }

    /// The full matrix algebra M_q(Q) on the basis E_11, E_12, ..., E_qq
    /// (row-major). E_ij E_kl = delta_jk E_il.
    pub fn matrix_algebra(q: usize) -> Algebra {
        let dim = q * q;
        let mut entries = Vec::new();
        for i in 0..q {
            for j in 0..q {
                for l in 0..q {
                    entries.push((i * q + j, j * q + l, i * q + l, Rational::ONE));
                }
            }
        }
        let mut a = Algebra::from_structure_constants(dim, entries).expect("valid entries");
        let mut one = vec![Rational::ZERO; dim];
        for i in 0..q {
            one[i * q + i] = Rational::ONE;
        }
        a.one = Some(one);
        a.labels = Some(
            (0..q)
                .flat_map(|i| (0..q).map(move |j| format!("E{}{}", i + 1, j + 1)))
                .collect(),
        );
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> Option<&Element> {
        self.one.as_ref()
    }

    pub fn set_one(&mut self, one: Option<Element>) {
        if let Some(e) = &one {
            assert_eq!(e.len(), self.dim);
        }
        self.one = one;
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.dim);
        }
        self.labels = labels;
    }

    /// Sparse row of the basis product `a_i * a_j`.
    pub fn structure_row(&self, i: usize, j: usize) -> &[(u32, Rational)] {
        &self.rows[i * self.dim + j]
    }

    pub(crate) fn shared_row(&self, i: usize, j: usize) -> ProductRow {
        self.rows[i * self.dim + j].clone()
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![Rational::ZERO; self.dim];
        v[i] = Rational::ONE;
        v
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Element, AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        Ok(self.mul(x, y))
    }

    /// Product of coefficient vectors; callers guarantee matching dimension.
    pub(crate) fn mul(&self, x: &[Rational], y: &[Rational]) -> Element {
        let mut acc = vec![Rational::ZERO; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if *xi == Rational::ZERO {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == Rational::ZERO {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in self.structure_row(i, j) {
                    acc[*k as usize] += &f * c;
                }
            }
        }
        acc
    }

    /// Product of basis element `a_i` with an arbitrary vector.
    pub(crate) fn mul_basis_left(&self, i: usize, y: &[Rational]) -> Element {
        let mut acc = vec![Rational::ZERO; self.dim];
        for (j, yj) in y.iter().enumerate() {
            if *yj == Rational::ZERO {
                continue;
            }
            for (k, c) in self.structure_row(i, j) {
                acc[*k as usize] += yj * c;
            }
        }
        acc
    }

    pub(crate) fn mul_basis_right(&self, x: &[Rational], j: usize) -> Element {
        let mut acc = vec![Rational::ZERO; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if *xi == Rational::ZERO {
                continue;
            }
            for (k, c) in self.structure_row(i, j) {
                acc[*k as usize] += xi * c;
            }
        }
        acc
    }

    /// Matrix of left multiplication by `x`: column `j` holds the
    /// coordinates of `x * a_j`.
    pub fn left_mult_matrix(&self, x: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.dim);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if *xi == Rational::ZERO {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.structure_row(i, j) {
                    let cell = m.get(*k as usize, j).clone();
                    m.set(*k as usize, j, cell + xi * c);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by `x`: column `j` holds `a_j * x`.
    pub fn right_mult_matrix(&self, x: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.dim);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if *xi == Rational::ZERO {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.structure_row(j, i) {
                    let cell = m.get(*k as usize, j).clone();
                    m.set(*k as usize, j, cell + xi * c);
                }
            }
        }
        m
    }

    /// Finds the two-sided identity element if one exists. Basis elements are
    /// tried first (covers semigroup algebras); otherwise the affine solution
    /// set of the left-identity constraints is refined constraint block by
    /// constraint block and the final candidate is verified on both sides.
    pub fn find_identity(&self) -> Option<Element> {
        'candidates: for t in 0..self.dim {
            for j in 0..self.dim {
                let lt = self.structure_row(t, j);
                let rt = self.structure_row(j, t);
                let unit = [(j as u32, Rational::ONE)];
                if lt != unit || rt != unit {
                    continue 'candidates;
                }
            }
            return Some(self.basis_element(t));
        }
        self.find_identity_general()
    }

    fn find_identity_general(&self) -> Option<Element> {
        let n = self.dim;
        if n == 0 {
            return None;
        }
        // Left-identity constraints for basis element j: M_j e = a_j with
        // M_j[k][i] = c_{ij}^k. Solve the first block, then substitute the
        // affine parametrization into subsequent blocks.
        let block = |j: usize| {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for (k, c) in self.structure_row(i, j) {
                    m.set(*k as usize, i, c.clone());
                }
            }
            m
        };
        let mut particular: Element;
        let mut basis: Vec<Element>;
        {
            let m0 = block(0);
            let sol = m0.solve(&self.basis_element(0)).ok()?;
            particular = sol.particular;
            basis = sol.nullspace;
        }
        for j in 1..n {
            if basis.is_empty() {
                break;
            }
            let mj = block(j);
            let rhs_shift = mj.mul_vec(&particular);
            let target: Vec<Rational> = self
                .basis_element(j)
                .iter()
                .zip(&rhs_shift)
                .map(|(a, b)| a - b)
                .collect();
            let cols: Vec<Element> = basis.iter().map(|v| mj.mul_vec(v)).collect();
            let coeff = Matrix::from_fn(n, basis.len(), |r, c| cols[c][r].clone());
            let sol = coeff.solve(&target).ok()?;
            let mut new_particular = particular.clone();
            for (c, t) in sol.particular.iter().enumerate() {
                if *t != Rational::ZERO {
                    for (x, b) in new_particular.iter_mut().zip(&basis[c]) {
                        *x += t * b;
                    }
                }
            }
            particular = new_particular;
            basis = sol
                .nullspace
                .iter()
                .map(|t| {
                    let mut v = vec![Rational::ZERO; n];
                    for (c, tc) in t.iter().enumerate() {
                        if *tc != Rational::ZERO {
                            for (x, b) in v.iter_mut().zip(&basis[c]) {
                                *x += tc * b;
                            }
                        }
                    }
                    v
                })
                .collect();
        }
        // A two-sided identity is unique, so any solution of the left
        // constraints that also passes the right constraints is it.
        let e = particular;
        for j in 0..n {
            let aj = self.basis_element(j);
            if self.mul(&e, &aj) != aj || self.mul(&aj, &e) != aj {
                return None;
            }
        }
        Some(e)
    }

    /// Extends the algebra by one basis element acting as a two-sided
    /// identity. The original basis keeps its indices; the identity is last.
    pub fn adjoin_identity(&self) -> Algebra {
        let n = self.dim;
        let dim = n + 1;
        let mut rows: Vec<ProductRow> = Vec::with_capacity(dim * dim);
        let unit_rows: Vec<ProductRow> = (0..dim)
            .map(|k| Arc::from(vec![(k as u32, Rational::ONE)]))
            .collect();
        for i in 0..n {
            for j in 0..n {
                rows.push(self.shared_row(i, j));
            }
            rows.push(unit_rows[i].clone());
        }
        for unit in unit_rows.iter().take(dim) {
            rows.push(unit.clone());
        }
        let mut labels = self.labels.clone();
        if let Some(l) = &mut labels {
            l.push("1".to_string());
        }
        let mut one = vec![Rational::ZERO; dim];
        one[n] = Rational::ONE;
        Algebra {
            dim,
            rows,
            one: Some(one),
            labels,
        }
    }

    /// Verifies associativity on basis triples, either all of them or a
    /// seeded sample. Returns the first failing triple.
    pub fn check_associativity(&self, mode: AssocCheck) -> Result<(), AlgebraError> {
        let check = |i: usize, j: usize, k: usize| -> Result<(), AlgebraError> {
            let ij = self.basis_product(i, j);
            let jk = self.basis_product(j, k);
            let left = self.mul_basis_right_sparse(&ij, k);
            let right = self.mul_basis_left_sparse(i, &jk);
            if left != right {
                return Err(AlgebraError::NotAssociative { i, j, k });
            }
            Ok(())
        };
        match mode {
            AssocCheck::Off => Ok(()),
            AssocCheck::Exhaustive => {
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        for k in 0..self.dim {
                            check(i, j, k)?;
                        }
                    }
                }
                Ok(())
            }
            AssocCheck::Sampled { triples, seed } => {
                let mut rng = SplitMix64::new(seed);
                for _ in 0..triples {
                    let i = rng.below(self.dim as u64) as usize;
                    let j = rng.below(self.dim as u64) as usize;
                    let k = rng.below(self.dim as u64) as usize;
                    check(i, j, k)?;
                }
                Ok(())
            }
        }
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<(u32, Rational)> {
        self.structure_row(i, j).to_vec()
    }

    fn mul_basis_left_sparse(&self, i: usize, y: &[(u32, Rational)]) -> Vec<(u32, Rational)> {
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (j, yj) in y {
            for (k, c) in self.structure_row(i, *j as usize) {
                let slot = acc.entry(*k).or_insert(Rational::ZERO);
                *slot += yj * c;
            }
        }
        acc.into_iter().filter(|(_, c)| *c != Rational::ZERO).collect()
    }

    fn mul_basis_right_sparse(&self, x: &[(u32, Rational)], k: usize) -> Vec<(u32, Rational)> {
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, xi) in x {
            for (l, c) in self.structure_row(*i as usize, k) {
                let slot = acc.entry(*l).or_insert(Rational::ZERO);
                *slot += xi * c;
            }
        }
        acc.into_iter().filter(|(_, c)| *c != Rational::ZERO).collect()
    }

    /// Smallest subspace containing `generators` that is closed under the
    /// requested multiplications. Returns the canonical RCF-row basis.
    pub fn subspace_closure(&self, generators: &[Element], mode: ClosureMode) -> Vec<Element> {
        let mut space = RowSpace::new();
        let mut queue: Vec<Element> = Vec::new();
        for g in generators {
            assert_eq!(g.len(), self.dim);
            if space.insert(g) {
                queue.push(g.clone());
            }
        }
        match mode {
            ClosureMode::Subalgebra => {
                // Fixpoint over pairwise products of the current basis.
                loop {
                    let basis: Vec<Element> = space.rows().to_vec();
                    let mut grew = false;
                    for x in &basis {
                        for y in &basis {
                            let p = self.mul(x, y);
                            if space.insert(&p) {
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
            }
            _ => {
                while let Some(v) = queue.pop() {
                    for t in 0..self.dim {
                        if matches!(mode, ClosureMode::LeftIdeal | ClosureMode::TwoSidedIdeal) {
                            let w = self.mul_basis_left(t, &v);
                            if space.insert(&w) {
                                queue.push(w);
                            }
                        }
                        if matches!(mode, ClosureMode::RightIdeal | ClosureMode::TwoSidedIdeal) {
                            let w = self.mul_basis_right(&v, t);
                            if space.insert(&w) {
                                queue.push(w);
                            }
                        }
                    }
                }
            }
        }
        // RowSpace maintains RCF incrementally; rows are already canonical.
        space.into_rows()
    }

    /// Quotient by a two-sided ideal given by any spanning set. When `verify`
    /// is set, two-sidedness is checked and violations are reported.
    pub fn quotient_by_ideal(
        &self,
        ideal_span: &[Element],
        verify: bool,
    ) -> Result<(Algebra, ReducedIdealBasis), AlgebraError> {
        let n = self.dim;
        let span = Matrix::from_rows_with_width(ideal_span.to_vec(), n);
        let (red, pivots) = span.rcf();
        let rows: Vec<Element> = red.into_rows().into_iter().take(pivots.len()).collect();
        if verify {
            for (ri, zeta) in rows.iter().enumerate() {
                for t in 0..n {
                    let left = self.mul_basis_left(t, zeta);
                    if !crate::exactla::in_rcf_span(&rows, &pivots, &left) {
                        return Err(AlgebraError::NotAnIdeal { row: ri, against: t });
                    }
                    let right = self.mul_basis_right(zeta, t);
                    if !crate::exactla::in_rcf_span(&rows, &pivots, &right) {
                        return Err(AlgebraError::NotAnIdeal { row: ri, against: t });
                    }
                }
            }
        }
        let reduced = ReducedIdealBasis::from_rcf(n, rows, pivots);
        let quotient = self.build_quotient(&reduced);
        Ok((quotient, reduced))
    }

    fn build_quotient(&self, reduced: &ReducedIdealBasis) -> Algebra {
        let r = reduced.complement.len();
        // Shared rows: the image of a single leading index is the same row
        // for every pair that rewrites to it, and the image of a complement
        // index m_k is the unit row at k.
        let unit_rows: Vec<ProductRow> = (0..r)
            .map(|k| Arc::from(vec![(k as u32, Rational::ONE)]))
            .collect();
        let rewrite_rows: Vec<ProductRow> = reduced
            .rewrite
            .iter()
            .map(|rw| Arc::from(rw.clone()))
            .collect();
        let mut rows: Vec<ProductRow> = Vec::with_capacity(r * r);
        let mut scratch = vec![Rational::ZERO; r];
        for &mi in &reduced.complement {
            for &mj in &reduced.complement {
                let src = self.structure_row(mi, mj);
                if src.len() == 1 && src[0].1 == Rational::ONE {
                    let k = src[0].0 as usize;
                    match reduced.position(k) {
                        IdealPosition::Complement(pos) => {
                            rows.push(unit_rows[pos].clone());
                            continue;
                        }
                        IdealPosition::Leading(h) => {
                            rows.push(rewrite_rows[h].clone());
                            continue;
                        }
                    }
                }
                for e in scratch.iter_mut() {
                    *e = Rational::ZERO;
                }
                for (k, c) in src {
                    match reduced.position(*k as usize) {
                        IdealPosition::Complement(pos) => scratch[pos] += c,
                        IdealPosition::Leading(h) => {
                            for (kk, w) in &reduced.rewrite[h] {
                                scratch[*kk as usize] += c * w;
                            }
                        }
                    }
                }
                let row: Vec<(u32, Rational)> = scratch
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != Rational::ZERO)
                    .map(|(k, c)| (k as u32, c.clone()))
                    .collect();
                rows.push(row.into());
            }
        }
        let mut q = Algebra::from_rows(r, rows);
        q.one = self.one.as_ref().map(|e| reduced.project(e));
        q
    }

    /// Serializes per the algebra JSON interchange format (1-based indices,
    /// rationals as "p/q" strings, only nonzero entries).
    pub fn to_json(&self) -> Value {
        let mut structure = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.structure_row(i, j) {
                    structure.push(json!([
                        i + 1,
                        j + 1,
                        (*k as usize) + 1,
                        format_rational(c)
                    ]));
                }
            }
        }
        json!({
            "dim": self.dim,
            "one": self.one.as_ref().map(|e| {
                e.iter().map(format_rational).collect::<Vec<_>>()
            }),
            "labels": self.labels,
            "structure": structure,
        })
    }

    pub fn from_json(v: &Value) -> Result<Algebra, AlgebraError> {
        let obj = v
            .as_object()
            .ok_or_else(|| AlgebraError::Json("top level must be an object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| AlgebraError::Json("missing integer field \"dim\"".into()))?
            as usize;
        let structure = obj
            .get("structure")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Json("missing array field \"structure\"".into()))?;
        let mut entries = Vec::with_capacity(structure.len());
        for (pos, e) in structure.iter().enumerate() {
            let arr = e.as_array().filter(|a| a.len() == 4).ok_or_else(|| {
                AlgebraError::Json(format!("structure[{pos}] must be [i, j, k, \"p/q\"]"))
            })?;
            let idx = |t: usize| -> Result<usize, AlgebraError> {
                let v = arr[t].as_u64().ok_or_else(|| {
                    AlgebraError::Json(format!("structure[{pos}][{t}] must be a 1-based index"))
                })?;
                if v == 0 || v as usize > dim {
                    return Err(AlgebraError::Json(format!(
                        "structure[{pos}][{t}] = {v} out of range 1..={dim}"
                    )));
                }
                Ok(v as usize - 1)
            };
            let c = arr[3]
                .as_str()
                .ok_or_else(|| {
                    AlgebraError::Json(format!("structure[{pos}][3] must be a rational string"))
                })
                .and_then(|s| {
                    parse_rational(s)
                        .map_err(|e| AlgebraError::Json(format!("structure[{pos}][3]: {e}")))
                })?;
            entries.push((idx(0)?, idx(1)?, idx(2)?, c));
        }
        let mut a = Algebra::from_structure_constants(dim, entries)?;
        if let Some(one_v) = obj.get("one").filter(|v| !v.is_null()) {
            let arr = one_v
                .as_array()
                .ok_or_else(|| AlgebraError::Json("\"one\" must be an array or null".into()))?;
            if arr.len() != dim {
                return Err(AlgebraError::Json(format!(
                    "\"one\" has {} entries, expected {dim}",
                    arr.len()
                )));
            }
            let mut one = Vec::with_capacity(dim);
            for (i, s) in arr.iter().enumerate() {
                let s = s.as_str().ok_or_else(|| {
                    AlgebraError::Json(format!("one[{i}] must be a rational string"))
                })?;
                one.push(
                    parse_rational(s)
                        .map_err(|e| AlgebraError::Json(format!("one[{i}]: {e}")))?,
                );
            }
            a.one = Some(one);
        }
        if let Some(labels_v) = obj.get("labels").filter(|v| !v.is_null()) {
            let arr = labels_v
                .as_array()
                .ok_or_else(|| AlgebraError::Json("\"labels\" must be an array or null".into()))?;
            if arr.len() != dim {
                return Err(AlgebraError::Json(format!(
                    "\"labels\" has {} entries, expected {dim}",
                    arr.len()
                )));
            }
            let labels = arr
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| AlgebraError::Json("labels must be strings".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            a.labels = Some(labels);
        }
        Ok(a)
    }
}

enum IdealPosition {
    Leading(usize),
    Complement(usize),
}

/// Reduced basis of a two-sided ideal: RCF rows, their pivot (leading)
/// columns L, the complement columns M giving the quotient basis, and the
/// rewrite rows expressing each leading coset in the complement cosets.
#[derive(Debug, Clone)]
pub struct ReducedIdealBasis {
    pub ambient_dim: usize,
    pub leading: Vec<usize>,
    pub complement: Vec<usize>,
    pub rows: Vec<Element>,
    /// rewrite[h] is sparse over quotient coordinates: the class of
    /// basis element `leading[h]` equals `sum rewrite[h]` in the quotient.
    pub rewrite: Vec<Vec<(u32, Rational)>>,
    position: Vec<i64>,
}

impl ReducedIdealBasis {
    fn from_rcf(n: usize, rows: Vec<Element>, pivots: Vec<usize>) -> ReducedIdealBasis {
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut position = vec![0i64; n];
        for (h, &p) in pivots.iter().enumerate() {
            position[p] = -(h as i64) - 1;
        }
        for (k, &m) in complement.iter().enumerate() {
            position[m] = k as i64 + 1;
        }
        let rewrite = rows
            .iter()
            .map(|row| {
                complement
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| row[m] != Rational::ZERO)
                    .map(|(k, &m)| (k as u32, -row[m].clone()))
                    .collect()
            })
            .collect();
        ReducedIdealBasis {
            ambient_dim: n,
            leading: pivots,
            complement,
            rows,
            rewrite,
            position,
        }
    }

    fn position(&self, k: usize) -> IdealPosition {
        let p = self.position[k];
        if p < 0 {
            IdealPosition::Leading((-p - 1) as usize)
        } else {
            IdealPosition::Complement((p - 1) as usize)
        }
    }

    pub fn ideal_dim(&self) -> usize {
        self.leading.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        crate::exactla::in_rcf_span(&self.rows, &self.leading, x)
    }

    /// Coordinates of the class of `x` on the quotient basis.
    pub fn project(&self, x: &[Rational]) -> Element {
        assert_eq!(x.len(), self.ambient_dim);
        let reduced = reduce_against_rcf(&self.rows, &self.leading, x);
        self.complement.iter().map(|&m| reduced[m].clone()).collect()
    }

    /// Canonical section of the projection: quotient coordinates back to the
    /// ambient complement coordinates.
    pub fn lift(&self, y: &[Rational]) -> Element {
        assert_eq!(y.len(), self.complement.len());
        let mut x = vec![Rational::ZERO; self.ambient_dim];
        for (k, &m) in self.complement.iter().enumerate() {
            x[m] = y[k].clone();
        }
        x
    }
}
