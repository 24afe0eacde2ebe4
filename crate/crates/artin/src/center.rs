//! Center of the semisimple quotient.
//!
//! An element z is central iff it commutes with every basis element, so the
//! center is the nullspace of the stacked commutator constraints. We compute
//! it one generator at a time: intersecting with the centralizer of b_i only
//! needs the nullspace of an r x c matrix, where c is the current candidate
//! dimension. The candidate space shrinks quickly, which keeps the large
//! partial-transformation algebras cheap; the dense r^2 x r formulation is
//! kept for cross-checking.

use malachite::base::num::basic::traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::exactla::{canonical_subspace_basis, Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CenterError {
    #[error("the algebra has no stored identity")]
    NotUnital,
    #[error("product of central elements left the computed center span")]
    ProductOutsideSpan,
    #[error("identity has no coordinates in the computed center span")]
    IdentityOutsideSpan,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The center of a semisimple algebra, as a commutative algebra in its own
/// right. `basis` lives in the coordinates of the ambient algebra; `algebra`
/// multiplies coordinate vectors relative to that basis.
#[derive(Debug, Clone)]
pub struct CenterData {
    pub basis: Vec<Element>,
    pub algebra: Algebra,
    /// Coordinates of the ambient identity in `basis`.
    pub identity: Element,
}

impl CenterData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Expand center coordinates back into ambient coordinates.
    pub fn to_ambient(&self, x: &[Rational]) -> Element {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut acc = vec![Rational::ZERO; n];
        for (c, z) in x.iter().zip(&self.basis) {
            if *c == Rational::ZERO {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(z) {
                *a += c * v;
            }
        }
        acc
    }
}

/// Stacked commutator matrix: row i*r + k, column j holds
/// d_ij^k - d_ji^k, so its right nullspace is the center.
pub fn center_matrix(a: &Algebra) -> Matrix {
    let r = a.dim();
    let mut m = Matrix::zeros(r * r, r);
    for i in 0..r {
        for j in 0..r {
            for (k, c) in a.structure_row(i, j) {
                *m.get_mut(i * r + *k as usize, j) += c;
            }
            for (k, c) in a.structure_row(j, i) {
                *m.get_mut(i * r + *k as usize, j) -= c;
            }
        }
    }
    m
}

/// Canonical basis of the center, computed by intersecting centralizers of
/// the basis elements one at a time.
pub fn center_basis(a: &Algebra) -> Vec<Element> {
    let r = a.dim();
    // Current candidate basis, initially all of the algebra.
    let mut basis: Vec<Element> = (0..r)
        .map(|j| {
            let mut v = vec![Rational::ZERO; r];
            v[j] = Rational::from(1u32);
            v
        })
        .collect();
    for i in 0..r {
        if basis.len() <= 1 {
            // The identity is always central, so a 1-dimensional candidate
            // space is exactly the scalars and cannot shrink further.
            break;
        }
        // Column t holds the commutator [b_i, v_t].
        let mut cols: Vec<Element> = Vec::with_capacity(basis.len());
        for v in &basis {
            let mut com = a.mul_basis_left(i, v);
            let right = a.mul_basis_right(v, i);
            for (c, rv) in com.iter_mut().zip(right) {
                *c -= rv;
            }
            cols.push(com);
        }
        let w = Matrix::from_fn(r, basis.len(), |row, t| cols[t][row].clone());
        let combos = w.nullspace_basis();
        if combos.len() == basis.len() {
            continue;
        }
        basis = combos
            .iter()
            .map(|t| {
                let mut v = vec![Rational::ZERO; r];
                for (coef, b) in t.iter().zip(&basis) {
                    if *coef == Rational::ZERO {
                        continue;
                    }
                    for (acc, bv) in v.iter_mut().zip(b) {
                        *acc += coef * bv;
                    }
                }
                v
            })
            .collect();
    }
    canonical_subspace_basis(&basis, r)
}

/// Structure constants of the center relative to `z`: solves each product
/// z_i z_j back into coordinates over `z`.
pub fn center_structure(a: &Algebra, z: &[Element]) -> Result<Algebra, CenterError> {
    let r = a.dim();
    let c = z.len();
    let zt = Matrix::from_fn(r, c, |row, col| z[col][row].clone());
    let mut rhs = Matrix::zeros(r, c * c);
    for i in 0..c {
        for j in 0..c {
            let p = a.multiply(&z[i], &z[j])?;
            for (row, v) in p.into_iter().enumerate() {
                *rhs.get_mut(row, i * c + j) = v;
            }
        }
    }
    let x = zt
        .solve_multi(&rhs)
        .map_err(|_| CenterError::ProductOutsideSpan)?;
    let mut entries = Vec::new();
    for i in 0..c {
        for j in 0..c {
            for k in 0..c {
                let v = x.get(k, i * c + j);
                if *v != Rational::ZERO {
                    entries.push((i, j, k, v.clone()));
                }
            }
        }
    }
    let mut alg = Algebra::from_structure_constants(c, entries)?;
    alg.set_labels(Some((1..=c).map(|i| format!("z{i}")).collect()));
    Ok(alg)
}

/// Center basis, structure, and the coordinates of the ambient identity.
pub fn center_of(a: &Algebra) -> Result<CenterData, CenterError> {
    let one = a.one().ok_or(CenterError::NotUnital)?.clone();
    let basis = center_basis(a);
    let mut algebra = center_structure(a, &basis)?;
    let r = a.dim();
    let zt = Matrix::from_fn(r, basis.len(), |row, col| basis[col][row].clone());
    let identity = zt
        .solve(&one)
        .map_err(|_| CenterError::IdentityOutsideSpan)?
        .particular;
    algebra.set_one(Some(identity.clone()));
    Ok(CenterData {
        basis,
        algebra,
        identity,
    })
}
