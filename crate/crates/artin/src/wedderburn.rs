//! Simple components of the semisimple quotient, explicit matrix units,
//! and the induced irreducible representations.
//!
//! Each primitive central idempotent e cuts out the two-sided ideal Qe.
//! When the component's center is Q itself and its dimension is a perfect
//! square q^2, the component is a full matrix algebra M_q(Q) once a
//! q-dimensional minimal left ideal is in hand: solving
//! E_ij u_k = [j = k] u_i against a basis u_1..u_q of that ideal produces
//! a complete system of matrix units in one multi-column solve, and the
//! change of basis to the units diagonalizes the action into q x q blocks.
//! Components whose center is a proper extension field, or where no
//! q-dimensional left ideal turns up within the search budget, are reported
//! as possibly non-split rather than forced.

use malachite::base::num::basic::traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::exactla::{coordinates_in_rcf_span, rat_int, LinAlgError, Matrix, Rational, RowSpace};
use crate::poly::Polynomial;
use crate::rng::SplitMix64;
use crate::split::SplitComponentInfo;

pub const DEFAULT_DESCENT_BUDGET: usize = 200;

#[derive(Debug, Clone)]
pub struct WedderburnConfig {
    pub seed: u64,
    /// Candidate generators tried while hunting a minimal left ideal.
    pub descent_budget: usize,
}

impl Default for WedderburnConfig {
    fn default() -> Self {
        WedderburnConfig {
            seed: 0,
            descent_budget: DEFAULT_DESCENT_BUDGET,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedderburnError {
    #[error("component products escape the component span")]
    ComponentNotClosed,
    #[error("the idempotent has no coordinates inside its own component")]
    IdentityOutsideComponent,
    #[error("matrix-unit relations failed to verify")]
    UnitRelations,
    #[error("component bases do not fill the quotient; cannot assemble representations")]
    IncompleteDecomposition,
    #[error("change-of-basis matrix is singular")]
    SingularBasisMatrix,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentStatus {
    /// Full matrix algebra over Q with verified matrix units.
    Split,
    /// Center is a degree > 1 field, or the dimension is not a square:
    /// simple, but not a matrix algebra over Q itself.
    NonSplitCenter,
    /// Expected a matrix algebra but no minimal left ideal of the right
    /// dimension was found within the budget.
    UnitsNotFound,
}

/// One simple two-sided ideal of the semisimple quotient. Coordinate
/// vectors are over the quotient unless stated otherwise; `local` speaks
/// the coordinates of `basis`.
#[derive(Debug, Clone)]
pub struct SimpleComponent {
    pub idempotent: Element,
    pub basis: Vec<Element>,
    pub pivots: Vec<usize>,
    pub local: Algebra,
    pub center_degree: usize,
    pub center_min_poly: Polynomial,
    pub status: ComponentStatus,
    pub matrix_size: Option<usize>,
    /// Basis of a minimal left ideal, row-canonical, in quotient coordinates.
    pub minimal_left_ideal: Option<Vec<Element>>,
    /// Row-major matrix units E_11, E_12, ..., E_qq in quotient coordinates.
    pub matrix_units: Option<Vec<Element>>,
    pub note: Option<String>,
}

impl SimpleComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == n {
            return Some(c);
        }
    }
    None
}

/// Left ideal generated by `u` inside `local`, as a canonical row space.
fn left_ideal_of(local: &Algebra, u: &Element) -> RowSpace {
    let mut span = RowSpace::new();
    for a in 0..local.dim() {
        span.insert(&local.mul_basis_left(a, u));
    }
    span
}

/// Cut out the component of `e` and express it as an algebra in its own
/// coordinates. `info` carries what the splitting stage learned about the
/// component's center.
pub fn component_from_idempotent(
    q: &Algebra,
    e: &Element,
    info: &SplitComponentInfo,
    cfg: &WedderburnConfig,
) -> Result<SimpleComponent, WedderburnError> {
    let r = q.dim();
    let mut span = RowSpace::new();
    for j in 0..r {
        span.insert(&q.mul_basis_right(e, j));
        span.insert(&q.mul_basis_left(j, e));
    }
    let basis: Vec<Element> = span.rows().to_vec();
    let pivots: Vec<usize> = span.pivots().to_vec();
    let s = basis.len();

    let mut entries = Vec::new();
    for a in 0..s {
        for b in 0..s {
            let p = q.multiply(&basis[a], &basis[b])?;
            let coords = coordinates_in_rcf_span(&basis, &pivots, &p)
                .ok_or(WedderburnError::ComponentNotClosed)?;
            for (k, v) in coords.into_iter().enumerate() {
                if v != Rational::ZERO {
                    entries.push((a, b, k, v));
                }
            }
        }
    }
    let mut local = Algebra::from_structure_constants(s, entries)?;
    let e_local = coordinates_in_rcf_span(&basis, &pivots, e)
        .ok_or(WedderburnError::IdentityOutsideComponent)?;
    local.set_one(Some(e_local));

    let mut component = SimpleComponent {
        idempotent: e.clone(),
        basis,
        pivots,
        local,
        center_degree: info.center_degree,
        center_min_poly: info.center_min_poly.clone(),
        status: ComponentStatus::NonSplitCenter,
        matrix_size: None,
        minimal_left_ideal: None,
        matrix_units: None,
        note: None,
    };

    let Some(q_size) = exact_sqrt(s).filter(|_| info.center_degree == 1) else {
        component.note = Some(if info.center_degree > 1 {
            format!(
                "center is a degree-{} extension of Q; component left as a simple algebra",
                info.center_degree
            )
        } else {
            format!("dimension {s} is not a perfect square over a rational center")
        });
        return Ok(component);
    };

    match find_minimal_left_ideal(&component.local, q_size, cfg) {
        Some(ideal) => {
            let units_local = matrix_units(&component.local, ideal.rows(), q_size)?;
            let to_q = |x: &Element| -> Element {
                let mut acc = vec![Rational::ZERO; r];
                for (c, row) in x.iter().zip(&component.basis) {
                    if *c == Rational::ZERO {
                        continue;
                    }
                    for (av, rv) in acc.iter_mut().zip(row) {
                        *av += c * rv;
                    }
                }
                acc
            };
            component.minimal_left_ideal =
                Some(ideal.rows().iter().map(&to_q).collect());
            component.matrix_units = Some(units_local.iter().map(&to_q).collect());
            component.matrix_size = Some(q_size);
            component.status = ComponentStatus::Split;
        }
        None => {
            component.status = ComponentStatus::UnitsNotFound;
            component.note = Some(format!(
                "no {q_size}-dimensional left ideal found within {} candidates; \
                 the component may be a division algebra",
                cfg.descent_budget
            ));
        }
    }
    Ok(component)
}

/// Search for a left ideal of dimension `target`. Basis elements first;
/// then random combinations, biased toward elements of the smallest ideal
/// seen so far, with the coefficient height doubling periodically.
fn find_minimal_left_ideal(
    local: &Algebra,
    target: usize,
    cfg: &WedderburnConfig,
) -> Option<RowSpace> {
    let s = local.dim();
    let mut best: Option<RowSpace> = None;
    let consider = |ideal: RowSpace, best: &mut Option<RowSpace>| -> bool {
        let d = ideal.dim();
        if d == 0 {
            return false;
        }
        if d == target {
            *best = Some(ideal);
            return true;
        }
        if best.as_ref().map_or(true, |b| d < b.dim()) {
            *best = Some(ideal);
        }
        false
    };
    for a in 0..s {
        let mut u = vec![Rational::ZERO; s];
        u[a] = Rational::ONE;
        if consider(left_ideal_of(local, &u), &mut best) {
            return best;
        }
    }
    let mut rng = SplitMix64::derive(cfg.seed, s as u64);
    for trial in 0..cfg.descent_budget {
        let h = 3u64 << (trial / (cfg.descent_budget / 4 + 1)).min(16);
        // Mix coordinates of the smallest ideal found so far with a few
        // ambient coordinates, so the search can both descend and escape.
        let mut u = vec![Rational::ZERO; s];
        if let Some(b) = &best {
            for row in b.rows() {
                let c = rng.signed_height(h);
                if c == 0 {
                    continue;
                }
                for (uv, rv) in u.iter_mut().zip(row) {
                    *uv += rat_int(c) * rv;
                }
            }
        } else {
            for uv in u.iter_mut() {
                *uv = rat_int(rng.signed_height(h));
            }
        }
        if u.iter().all(|c| *c == Rational::ZERO) {
            continue;
        }
        if consider(left_ideal_of(local, &u), &mut best) {
            return best;
        }
    }
    None
}

/// Matrix units from a basis u_1..u_q of a minimal left ideal: solves
/// E_ij u_k = [j = k] u_i for all (i, j) in one multi-column solve, then
/// verifies the unit relations and the partition of the identity.
pub fn matrix_units(
    local: &Algebra,
    ideal: &[Element],
    q_size: usize,
) -> Result<Vec<Element>, WedderburnError> {
    let s = local.dim();
    // prod[a][k] = s_a u_k, the action of the basis on the ideal.
    let mut m = Matrix::zeros(q_size * s, s);
    for a in 0..s {
        for (k, u) in ideal.iter().enumerate() {
            let p = local.mul_basis_left(a, u);
            for (t, v) in p.into_iter().enumerate() {
                m.set(k * s + t, a, v);
            }
        }
    }
    let mut rhs = Matrix::zeros(q_size * s, q_size * q_size);
    for i in 0..q_size {
        for j in 0..q_size {
            for (t, v) in ideal[i].iter().enumerate() {
                rhs.set(j * s + t, i * q_size + j, v.clone());
            }
        }
    }
    let x = m.solve_multi(&rhs).map_err(|err| match err {
        LinAlgError::Inconsistent { .. } => WedderburnError::UnitRelations,
        LinAlgError::Singular => WedderburnError::UnitRelations,
    })?;
    let units: Vec<Element> = (0..q_size * q_size)
        .map(|c| (0..s).map(|t| x.get(t, c).clone()).collect())
        .collect();

    // E_ij E_kl = [j = k] E_il and the diagonal units sum to the identity.
    for i in 0..q_size {
        for j in 0..q_size {
            for k in 0..q_size {
                for l in 0..q_size {
                    let p = local.multiply(&units[i * q_size + j], &units[k * q_size + l])?;
                    let expect = if j == k {
                        units[i * q_size + l].clone()
                    } else {
                        vec![Rational::ZERO; s]
                    };
                    if p != expect {
                        return Err(WedderburnError::UnitRelations);
                    }
                }
            }
        }
    }
    let mut diag = vec![Rational::ZERO; s];
    for i in 0..q_size {
        for (d, v) in diag.iter_mut().zip(&units[i * q_size + i]) {
            *d += v;
        }
    }
    if Some(&diag) != local.one() {
        return Err(WedderburnError::UnitRelations);
    }
    Ok(units)
}

/// The change of basis that block-diagonalizes the quotient: columns are
/// the matrix units of split components and the plain component basis of
/// the others, component by component.
#[derive(Debug, Clone)]
pub struct RepresentationSet {
    pub new_basis: Vec<Element>,
    pub m: Matrix,
    pub m_inv: Matrix,
    pub blocks: Vec<RepBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepBlock {
    pub offset: usize,
    pub dim: usize,
    pub matrix_size: Option<usize>,
}

pub fn assemble_representations(
    quotient_dim: usize,
    components: &[SimpleComponent],
) -> Result<RepresentationSet, WedderburnError> {
    let mut new_basis: Vec<Element> = Vec::with_capacity(quotient_dim);
    let mut blocks = Vec::with_capacity(components.len());
    for c in components {
        let cols: &[Element] = match &c.matrix_units {
            Some(units) => units,
            None => &c.basis,
        };
        blocks.push(RepBlock {
            offset: new_basis.len(),
            dim: c.dim(),
            matrix_size: c.matrix_size,
        });
        new_basis.extend(cols.iter().cloned());
    }
    if new_basis.len() != quotient_dim {
        return Err(WedderburnError::IncompleteDecomposition);
    }
    let m = Matrix::from_fn(quotient_dim, quotient_dim, |i, j| new_basis[j][i].clone());
    let m_inv = m
        .invert()
        .map_err(|_| WedderburnError::SingularBasisMatrix)?;
    Ok(RepresentationSet {
        new_basis,
        m,
        m_inv,
        blocks,
    })
}

impl RepresentationSet {
    /// The q x q matrix through which an element of the quotient (given in
    /// quotient coordinates) acts on the irreducible module of `block`.
    /// None when the block is not a split matrix algebra.
    pub fn matrix_of(&self, block: usize, y: &[Rational]) -> Option<Matrix> {
        let b = &self.blocks[block];
        let q_size = b.matrix_size?;
        let mut out = Matrix::zeros(q_size, q_size);
        for i in 0..q_size {
            for j in 0..q_size {
                let row = b.offset + i * q_size + j;
                let mut acc = Rational::ZERO;
                for (l, yv) in y.iter().enumerate() {
                    if *yv != Rational::ZERO {
                        acc += self.m_inv.get(row, l) * yv;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Some(out)
    }
}
