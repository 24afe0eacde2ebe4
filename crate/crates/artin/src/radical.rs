//! Jacobson radical over Q via the trace-form criterion.
//!
//! For a unital algebra in characteristic zero the radical is the nullspace
//! of the trace matrix Delta with Delta[i][j] = trace of left multiplication
//! by a_j a_i. The trace of left multiplication by a_k is tau_k =
//! sum_l c_{kl}^l, so Delta[i][j] = sum_k c_{ji}^k tau_k without ever
//! materializing a multiplication matrix. For a semigroup algebra given by
//! its table, trace of left multiplication by element p counts the fixed
//! points l of p, so Delta[i][j] counts solutions of (a_j a_i) a_l = a_l.

use malachite::base::num::basic::traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, ReducedIdealBasis};
use crate::boolsemi::MultiplicationTable;
use crate::exactla::{Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RadicalError {
    #[error("the algebra has no stored identity; adjoin one before taking the radical")]
    NotUnital,
    #[error("radical consistency check failed: {0}")]
    Algebra(#[from] AlgebraError),
}

/// Everything the rest of the pipeline needs about the radical.
#[derive(Debug, Clone)]
pub struct RadicalData {
    /// Canonical nullspace basis of the trace matrix.
    pub canonical_basis: Vec<Element>,
    /// RCF form of the same span, with rewrite data for the quotient.
    pub reduced: ReducedIdealBasis,
    /// The semisimple quotient, with the projected identity.
    pub quotient: Algebra,
}

impl RadicalData {
    pub fn radical_dim(&self) -> usize {
        self.reduced.ideal_dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.reduced.quotient_dim()
    }
}

/// Trace matrix from structure constants.
pub fn dickson_matrix(a: &Algebra) -> Matrix {
    let n = a.dim();
    // tau[k] = trace of left multiplication by a_k.
    let mut tau = vec![Rational::ZERO; n];
    for k in 0..n {
        for l in 0..n {
            for (idx, c) in a.structure_row(k, l) {
                if *idx as usize == l {
                    tau[k] += c;
                }
            }
        }
    }
    Matrix::from_fn(n, n, |i, j| {
        let mut acc = Rational::ZERO;
        for (k, c) in a.structure_row(j, i) {
            let t = &tau[*k as usize];
            if *t != Rational::ZERO {
                acc += c * t;
            }
        }
        acc
    })
}

/// Trace matrix straight from a multiplication table: entry (i, j) counts
/// the fixed points of the element a_j a_i. Integer arithmetic only.
pub fn drazin_matrix(t: &MultiplicationTable) -> Matrix {
    let m = t.order();
    let mut fixed = vec![0u32; m];
    for (p, f) in fixed.iter_mut().enumerate() {
        *f = (0..m).filter(|&l| t.at(p, l) == l).count() as u32;
    }
    Matrix::from_fn(m, m, |i, j| Rational::from(fixed[t.at(j, i)]))
}

/// Canonical radical basis, reduced form, and semisimple quotient.
/// Requires a stored identity: the trace criterion reads off the left
/// regular representation, which is faithful only in the unital case.
pub fn radical_basis(a: &Algebra) -> Result<RadicalData, RadicalError> {
    if a.one().is_none() {
        return Err(RadicalError::NotUnital);
    }
    radical_from_trace_matrix(a, dickson_matrix(a))
}

/// Same as `radical_basis`, starting from an already-computed trace matrix
/// (for instance the fixed-point count matrix of a multiplication table).
pub fn radical_from_trace_matrix(a: &Algebra, delta: Matrix) -> Result<RadicalData, RadicalError> {
    if a.one().is_none() {
        return Err(RadicalError::NotUnital);
    }
    let canonical_basis = delta.nullspace_basis();
    // The nullspace of the trace form of an associative algebra is a
    // two-sided ideal; skipping the closure check here keeps the quotient
    // construction linear-algebra-only (report verification re-checks it).
    let (quotient, reduced) = a.quotient_by_ideal(&canonical_basis, false)?;
    Ok(RadicalData {
        canonical_basis,
        reduced,
        quotient,
    })
}
