//! Semigroups of n x n Boolean matrices and their multiplication tables.
//!
//! Seven classical families are generated by exhaustive enumeration of the
//! 2^(n^2) candidate matrices with a membership predicate per family. The
//! enumeration order is the canonical one: lexicographic on the row-major
//! 0/1 string, which coincides with ascending order of the packed bits.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use malachite::base::num::basic::traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, ProductRow};
use crate::exactla::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoolSemiError {
    #[error("enumeration budget exceeded: {candidates} candidate matrices (limit {limit})")]
    TooManyCandidates { candidates: u64, limit: u64 },
    #[error("table budget exceeded: order {order} (limit {limit})")]
    TableTooLarge { order: usize, limit: usize },
    #[error("set is not closed: element {i} * element {j} is outside the set")]
    NotClosed { i: usize, j: usize },
    #[error("unknown family {0:?} (expected one of sym, si, ft, pt, hall, qp, b)")]
    UnknownFamily(String),
    #[error("invalid table JSON: {0}")]
    Json(String),
}

/// An n x n Boolean matrix, n <= 5, packed so that ascending `bits` order is
/// lexicographic order on the row-major 0/1 string: entry (r, c) lives at bit
/// `n*n - 1 - (r*n + c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoolMatrix {
    n: u8,
    bits: u32,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> Self {
        assert!((1..=5).contains(&n));
        BoolMatrix { n: n as u8, bits: 0 }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BoolMatrix::zero(n);
        for i in 0..n {
            m = m.with(i, i, true);
        }
        m
    }

    fn from_bits(n: usize, bits: u32) -> Self {
        BoolMatrix { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    fn bit_index(&self, r: usize, c: usize) -> u32 {
        let n = self.n as usize;
        (n * n - 1 - (r * n + c)) as u32
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits >> self.bit_index(r, c) & 1 == 1
    }

    pub fn with(&self, r: usize, c: usize, v: bool) -> Self {
        let idx = self.bit_index(r, c);
        let bits = if v {
            self.bits | 1 << idx
        } else {
            self.bits & !(1 << idx)
        };
        BoolMatrix { n: self.n, bits }
    }

    /// Parses rows of 0/1 characters separated by '|', e.g. "10|01".
    pub fn parse(s: &str) -> Option<Self> {
        let rows: Vec<&str> = s.split('|').collect();
        let n = rows.len();
        if !(1..=5).contains(&n) || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let mut m = BoolMatrix::zero(n);
        for (r, row) in rows.iter().enumerate() {
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m = m.with(r, c, true),
                    _ => return None,
                }
            }
        }
        Some(m)
    }

    /// Boolean matrix product: (ab)(r, c) = OR_j a(r, j) AND b(j, c).
    pub fn product(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n as usize;
        let mut out = BoolMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let hit = (0..n).any(|j| self.get(r, j) && other.get(j, c));
                if hit {
                    out = out.with(r, c, true);
                }
            }
        }
        out
    }

    fn row_count(&self, r: usize) -> usize {
        (0..self.n as usize).filter(|&c| self.get(r, c)).count()
    }

    fn col_count(&self, c: usize) -> usize {
        (0..self.n as usize).filter(|&r| self.get(r, c)).count()
    }

    /// True if some permutation sigma has every (i, sigma(i)) entry set.
    /// Bitmask DP over assigned columns.
    fn has_permutation_support(&self) -> bool {
        let n = self.n as usize;
        let mut reachable = vec![false; 1 << n];
        reachable[0] = true;
        for used in 0..(1usize << n) {
            if !reachable[used] {
                continue;
            }
            let row = used.count_ones() as usize;
            if row == n {
                return true;
            }
            for c in 0..n {
                if used & (1 << c) == 0 && self.get(row, c) {
                    reachable[used | 1 << c] = true;
                }
            }
        }
        reachable[(1 << n) - 1]
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        for r in 0..n {
            if r > 0 {
                write!(f, "|")?;
            }
            for c in 0..n {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

/// The seven generated families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Permutation matrices: every row and column has exactly one 1.
    Symmetric,
    /// Partial injections: every row and column has at most one 1.
    SymmetricInverse,
    /// Full transformations: every column has exactly one 1.
    FullTransformation,
    /// Partial transformations: every column has at most one 1.
    PartialTransformation,
    /// Matrices whose support contains a permutation.
    HallMonoid,
    /// Quasi-permutations: no zero row and no zero column.
    QuasiPermutation,
    /// All Boolean matrices.
    AllBoolean,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Symmetric,
        Family::SymmetricInverse,
        Family::FullTransformation,
        Family::PartialTransformation,
        Family::HallMonoid,
        Family::QuasiPermutation,
        Family::AllBoolean,
    ];

    pub fn parse(s: &str) -> Result<Family, BoolSemiError> {
        match s {
            "sym" => Ok(Family::Symmetric),
            "si" => Ok(Family::SymmetricInverse),
            "ft" => Ok(Family::FullTransformation),
            "pt" => Ok(Family::PartialTransformation),
            "hall" | "hm" => Ok(Family::HallMonoid),
            "qp" => Ok(Family::QuasiPermutation),
            "b" | "bool" => Ok(Family::AllBoolean),
            other => Err(BoolSemiError::UnknownFamily(other.to_string())),
        }
    }

    pub fn flag_name(&self) -> &'static str {
        match self {
            Family::Symmetric => "sym",
            Family::SymmetricInverse => "si",
            Family::FullTransformation => "ft",
            Family::PartialTransformation => "pt",
            Family::HallMonoid => "hall",
            Family::QuasiPermutation => "qp",
            Family::AllBoolean => "b",
        }
    }

    fn contains(&self, m: &BoolMatrix) -> bool {
        let n = m.n();
        match self {
            Family::Symmetric => {
                (0..n).all(|r| m.row_count(r) == 1) && (0..n).all(|c| m.col_count(c) == 1)
            }
            Family::SymmetricInverse => {
                (0..n).all(|r| m.row_count(r) <= 1) && (0..n).all(|c| m.col_count(c) <= 1)
            }
            Family::FullTransformation => (0..n).all(|c| m.col_count(c) == 1),
            Family::PartialTransformation => (0..n).all(|c| m.col_count(c) <= 1),
            Family::HallMonoid => m.has_permutation_support(),
            Family::QuasiPermutation => {
                (0..n).all(|r| m.row_count(r) >= 1) && (0..n).all(|c| m.col_count(c) >= 1)
            }
            Family::AllBoolean => true,
        }
    }

    /// Closed-form order where one is known. The Hall monoid order is open.
    pub fn expected_order(&self, n: usize) -> Option<u64> {
        let n = n as u64;
        let binom = |n: u64, k: u64| -> u64 {
            if k > n {
                return 0;
            }
            let mut acc = 1u64;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        };
        let factorial = |n: u64| (1..=n).product::<u64>().max(1);
        match self {
            Family::Symmetric => Some(factorial(n)),
            Family::SymmetricInverse => {
                Some((0..=n).map(|i| binom(n, i).pow(2) * factorial(i)).sum())
            }
            Family::FullTransformation => Some(n.pow(n as u32)),
            Family::PartialTransformation => Some((n + 1).pow(n as u32)),
            Family::HallMonoid => None,
            Family::QuasiPermutation => {
                let mut total: i128 = 0;
                for k in 0..n {
                    let term = (binom(n, k) as i128)
                        * ((2i128.pow((n - k) as u32) - 1).pow(n as u32));
                    if k % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
                Some(total as u64)
            }
            Family::AllBoolean => Some(1u64 << (n * n)),
        }
    }
}

/// Default cap on the enumeration candidate space 2^(n^2).
pub const DEFAULT_CANDIDATE_LIMIT: u64 = 1 << 25;

/// Enumerates a family in canonical (lexicographic) order.
pub fn generate(family: Family, n: usize, candidate_limit: u64) -> Result<Vec<BoolMatrix>, BoolSemiError> {
    assert!((1..=5).contains(&n), "Boolean matrices support 1 <= n <= 5");
    let candidates = 1u64 << (n * n);
    if candidates > candidate_limit {
        return Err(BoolSemiError::TooManyCandidates {
            candidates,
            limit: candidate_limit,
        });
    }
    let mut out = Vec::new();
    for bits in 0..candidates {
        let m = BoolMatrix::from_bits(n, bits as u32);
        if family.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// A finite multiplication table: `at(i, j)` is the index of the product of
/// elements `i` and `j`. Indices are 0-based internally, 1-based in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    order: usize,
    table: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl MultiplicationTable {
    pub fn new(order: usize, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), order * order);
        assert!(table.iter().all(|&t| (t as usize) < order));
        MultiplicationTable {
            order,
            table,
            labels: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn at(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.order);
        }
        self.labels = labels;
    }

    /// First associativity violation, if any.
    pub fn check_associative(&self) -> Result<(), (usize, usize, usize)> {
        let m = self.order;
        for i in 0..m {
            for j in 0..m {
                let ij = self.at(i, j);
                for k in 0..m {
                    if self.at(ij, k) != self.at(i, self.at(j, k)) {
                        return Err((i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|j| self.at(e, j) == j && self.at(j, e) == j))
    }

    /// The semigroup algebra Q S: basis indexed by elements, products given
    /// by the table. Every structure row is a shared single-entry row.
    pub fn semigroup_algebra(&self) -> Algebra {
        let unit_rows: Vec<ProductRow> = (0..self.order)
            .map(|k| Arc::from(vec![(k as u32, Rational::ONE)]))
            .collect();
        let rows: Vec<ProductRow> = self
            .table
            .iter()
            .map(|&k| unit_rows[k as usize].clone())
            .collect();
        let mut a = Algebra::from_rows(self.order, rows);
        if let Some(e) = self.identity() {
            let mut one = vec![Rational::from(0); self.order];
            one[e] = Rational::ONE;
            a.set_one(Some(one));
        }
        a.set_labels(self.labels.clone());
        a
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<u64>> = (0..self.order)
            .map(|i| (0..self.order).map(|j| self.at(i, j) as u64 + 1).collect())
            .collect();
        match &self.labels {
            Some(labels) => json!({ "order": self.order, "table": rows, "labels": labels }),
            None => json!({ "order": self.order, "table": rows }),
        }
    }

    pub fn from_json(v: &Value) -> Result<MultiplicationTable, BoolSemiError> {
        let obj = v
            .as_object()
            .ok_or_else(|| BoolSemiError::Json("top level must be an object".into()))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| BoolSemiError::Json("missing integer field \"order\"".into()))?
            as usize;
        let rows = obj
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| BoolSemiError::Json("missing array field \"table\"".into()))?;
        if rows.len() != order {
            return Err(BoolSemiError::Json(format!(
                "table has {} rows, expected {order}",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == order)
                .ok_or_else(|| {
                    BoolSemiError::Json(format!("table[{i}] must be an array of {order} indices"))
                })?;
            for (j, cell) in row.iter().enumerate() {
                let v = cell.as_u64().ok_or_else(|| {
                    BoolSemiError::Json(format!("table[{i}][{j}] must be a 1-based index"))
                })?;
                if v == 0 || v as usize > order {
                    return Err(BoolSemiError::Json(format!(
                        "table[{i}][{j}] = {v} out of range 1..={order}"
                    )));
                }
                table.push(v as u32 - 1);
            }
        }
        let mut t = MultiplicationTable::new(order, table);
        if let Some(labels) = obj.get("labels") {
            let labels = labels
                .as_array()
                .filter(|l| l.len() == order)
                .ok_or_else(|| {
                    BoolSemiError::Json(format!("labels must be an array of {order} strings"))
                })?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| BoolSemiError::Json("labels must be strings".into()))
                })
                .collect::<Result<Vec<String>, BoolSemiError>>()?;
            t.set_labels(Some(labels));
        }
        Ok(t)
    }
}

/// Default cap on table construction; the table itself is order^2 entries.
pub const DEFAULT_TABLE_LIMIT: usize = 4096;

/// Multiplication table of a closed set of Boolean matrices, labelled by
/// their 0/1 row strings.
pub fn table_of(elems: &[BoolMatrix], table_limit: usize) -> Result<MultiplicationTable, BoolSemiError> {
    let m = elems.len();
    if m > table_limit {
        return Err(BoolSemiError::TableTooLarge {
            order: m,
            limit: table_limit,
        });
    }
    let index: HashMap<BoolMatrix, u32> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (*e, i as u32))
        .collect();
    let mut table = Vec::with_capacity(m * m);
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let p = a.product(b);
            match index.get(&p) {
                Some(&k) => table.push(k),
                None => return Err(BoolSemiError::NotClosed { i, j }),
            }
        }
    }
    let mut t = MultiplicationTable::new(m, table);
    t.set_labels(Some(elems.iter().map(BoolMatrix::to_string).collect()));
    Ok(t)
}

/// The partial transformation matrices on two points, permuted to the fixed
/// reference ordering used by the worked 9-element example: zero first, then
/// the four singletons ordered (1,1), (1,2), (2,1), (2,2), then the two-entry
/// matrices, with the identity seventh. Golden tests depend on this order.
pub fn pt2_reference_order() -> Vec<BoolMatrix> {
    [
        "00|00", "10|00", "01|00", "00|10", "00|01", "11|00", "10|01", "01|10", "00|11",
    ]
    .iter()
    .map(|s| BoolMatrix::parse(s).expect("fixture parses"))
    .collect()
}
