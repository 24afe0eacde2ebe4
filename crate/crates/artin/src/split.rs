//! Primitive idempotents of a commutative semisimple algebra by recursive
//! ideal splitting.
//!
//! The center Z of the semisimple quotient is a product of number fields.
//! Any element u whose minimal polynomial factors as f = g h with g, h
//! coprime splits the current ideal I into Z g(u) and Z h(u); recursing
//! until every piece is indecomposable yields the primitive idempotents.
//! A piece is a leaf either when it is one-dimensional (a copy of Q, whose
//! idempotent is a rescaled basis vector) or when some element's minimal
//! polynomial is irreducible of degree equal to the piece's dimension (a
//! field extension of Q; the piece contributes one idempotent and records
//! its degree).
//!
//! Candidates are tried deterministically: basis elements of the current
//! ideal in row order, then random combinations with slowly growing
//! coefficient height drawn from a per-node stream. Depth-first recursion
//! with the candidate factors in canonical order makes the output order
//! reproducible.

use malachite::base::num::basic::traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::exactla::{rat_int, Rational, RowSpace};
use crate::poly::{cmp_canonical, factor_over_q, Polynomial, PolyError};
use crate::rng::SplitMix64;

pub const DEFAULT_KRONECKER_CAP: usize = 8;
pub const DEFAULT_PRIMITIVE_TRIALS: usize = 64;

#[derive(Debug, Clone)]
pub struct SplitConfig {
    pub seed: u64,
    /// Largest divisor degree the factorizer will search exhaustively.
    pub kronecker_cap: usize,
    /// Random candidates tried per node after the basis elements run out.
    pub primitive_trials: usize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            seed: 0,
            kronecker_cap: DEFAULT_KRONECKER_CAP,
            primitive_trials: DEFAULT_PRIMITIVE_TRIALS,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("the algebra has no stored identity")]
    NotUnital,
    #[error("minimal polynomial search exceeded the ambient dimension")]
    MinimalPolynomialTooLong,
    #[error("an element has a non-squarefree minimal polynomial; the algebra is not semisimple")]
    NotSemisimple,
    #[error("a {dim}-dimensional leaf is spanned by a nilpotent element; the algebra is not semisimple")]
    NilpotentLeaf { dim: usize },
    #[error("ideal of dimension {dim} has no internal identity")]
    IdealIdentity { dim: usize },
    #[error("coprime splitting produced dimensions {left} + {right} != {parent}")]
    SplitDimensions {
        parent: usize,
        left: usize,
        right: usize,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// What is known about one indecomposable factor of the center: the degree
/// of the number field it is, and the minimal polynomial that presents it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitComponentInfo {
    pub center_degree: usize,
    pub center_min_poly: Polynomial,
}

/// A node the candidate search gave up on. Non-fatal: the rest of the tree
/// is still decomposed, and callers can rerun with a larger budget or seed.
#[derive(Debug, Clone)]
pub struct UnresolvedNode {
    pub dim: usize,
    pub basis: Vec<Element>,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct SplitOutcome {
    /// Primitive idempotents in discovery order, as coordinate vectors over
    /// the ambient commutative algebra.
    pub idempotents: Vec<Element>,
    pub components: Vec<SplitComponentInfo>,
    pub unresolved: Vec<UnresolvedNode>,
}

/// Minimal polynomial of `u` relative to the identity `e` of the ideal it
/// lives in: the monic f of least degree with f(u) = 0, where u^0 = e.
pub fn minimal_polynomial(
    z: &Algebra,
    e: &Element,
    u: &Element,
) -> Result<Polynomial, SplitError> {
    let dim = z.dim();
    let mut powers: Vec<Element> = vec![e.clone()];
    for _ in 0..=dim {
        let next = z.multiply(u, powers.last().unwrap())?;
        // Solve [p_0 ... p_{j-1}] x = p_j.
        let m = crate::exactla::Matrix::from_fn(dim, powers.len(), |r, c| powers[c][r].clone());
        match m.solve(&next) {
            Ok(sol) => {
                let mut coeffs: Vec<Rational> =
                    sol.particular.iter().map(|c| -c).collect();
                coeffs.push(Rational::ONE);
                return Ok(Polynomial::from_coeffs(coeffs));
            }
            Err(_) => powers.push(next),
        }
    }
    Err(SplitError::MinimalPolynomialTooLong)
}

/// Canonical basis (RCF rows) of the ideal Z u.
pub fn ideal_from_generator(z: &Algebra, u: &Element) -> Result<Vec<Element>, SplitError> {
    let mut span = RowSpace::new();
    for i in 0..z.dim() {
        span.insert(&z.mul_basis_left(i, u));
    }
    Ok(span.into_rows())
}

/// Identity element of an ideal given by a basis: solves e y_k = y_k for
/// all k inside the span of the basis.
pub fn ideal_identity(z: &Algebra, basis: &[Element]) -> Result<Element, SplitError> {
    let c = z.dim();
    let d = basis.len();
    let mut m = crate::exactla::Matrix::zeros(c * d, d);
    let mut rhs = vec![Rational::ZERO; c * d];
    for (k, y) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let p = z.multiply(b, y)?;
            for (row, v) in p.into_iter().enumerate() {
                m.set(k * c + row, j, v);
            }
        }
        for (row, v) in y.iter().enumerate() {
            rhs[k * c + row] = v.clone();
        }
    }
    let sol = m
        .solve(&rhs)
        .map_err(|_| SplitError::IdealIdentity { dim: d })?;
    let mut e = vec![Rational::ZERO; c];
    for (x, b) in sol.particular.iter().zip(basis) {
        if *x == Rational::ZERO {
            continue;
        }
        for (acc, v) in e.iter_mut().zip(b) {
            *acc += x * v;
        }
    }
    Ok(e)
}

/// Evaluate g at an element, with the constant term applied to `e`.
fn eval_at_element(
    z: &Algebra,
    g: &Polynomial,
    u: &Element,
    e: &Element,
) -> Result<Element, SplitError> {
    // Horner from the top coefficient down: acc <- acc * u + g_i * e.
    let coeffs = g.coeffs();
    let mut acc = vec![Rational::ZERO; z.dim()];
    for gi in coeffs.iter().rev() {
        acc = z.multiply(&acc, u)?;
        if *gi != Rational::ZERO {
            for (a, ev) in acc.iter_mut().zip(e) {
                *a += gi * ev;
            }
        }
    }
    Ok(acc)
}

fn is_scalar_multiple(u: &[Rational], v: &[Rational]) -> bool {
    let Some(p) = v.iter().position(|c| *c != Rational::ZERO) else {
        return u.iter().all(|c| *c == Rational::ZERO);
    };
    let lambda = &u[p] / &v[p];
    u.iter()
        .zip(v)
        .all(|(uc, vc)| *uc == &lambda * vc)
}

/// Split a commutative algebra (with stored identity) into its primitive
/// idempotents. The algebra is expected to be semisimple; if it is not,
/// the search reports it through `SplitError`.
pub fn split_to_idempotents(
    z: &Algebra,
    cfg: &SplitConfig,
) -> Result<SplitOutcome, SplitError> {
    let e = z.one().ok_or(SplitError::NotUnital)?.clone();
    let basis: Vec<Element> = (0..z.dim())
        .map(|i| {
            let mut v = vec![Rational::ZERO; z.dim()];
            v[i] = Rational::ONE;
            v
        })
        .collect();
    let mut out = SplitOutcome {
        idempotents: Vec::new(),
        components: Vec::new(),
        unresolved: Vec::new(),
    };
    split_node(z, basis, e, cfg, &mut out)?;
    Ok(out)
}

fn split_node(
    z: &Algebra,
    basis: Vec<Element>,
    e: Element,
    cfg: &SplitConfig,
    out: &mut SplitOutcome,
) -> Result<(), SplitError> {
    let dim = basis.len();
    if dim == 0 {
        return Ok(());
    }
    if dim == 1 {
        // One-dimensional ideal: a copy of Q. Its spanning vector satisfies
        // w^2 = lambda w; the idempotent is w / lambda.
        let w = &basis[0];
        let w2 = z.multiply(w, w)?;
        let p = w
            .iter()
            .position(|c| *c != Rational::ZERO)
            .expect("ideal basis rows are nonzero");
        let lambda = &w2[p] / &w[p];
        if lambda == Rational::ZERO || !is_scalar_multiple(&w2, w) {
            return Err(SplitError::NilpotentLeaf { dim });
        }
        out.idempotents
            .push(w.iter().map(|c| c / &lambda).collect());
        out.components.push(SplitComponentInfo {
            center_degree: 1,
            center_min_poly: Polynomial::from_coeffs(vec![rat_int(-1), Rational::ONE]),
        });
        return Ok(());
    }

    // Node-local RNG keyed by the leading coordinate of the first basis row,
    // so reruns with the same seed walk the same tree.
    let leading = basis[0]
        .iter()
        .position(|c| *c != Rational::ZERO)
        .unwrap_or(0) as u64;
    let mut rng = SplitMix64::derive(cfg.seed, leading);
    let mut note = String::new();

    for trial in 0..basis.len() + cfg.primitive_trials {
        let candidate: Element = if trial < basis.len() {
            basis[trial].clone()
        } else {
            let h = 3u64 << ((trial - basis.len()) / 16).min(16);
            let mut v = vec![Rational::ZERO; z.dim()];
            for b in &basis {
                let c = rng.signed_height(h);
                if c == 0 {
                    continue;
                }
                for (acc, bv) in v.iter_mut().zip(b) {
                    *acc += rat_int(c) * bv;
                }
            }
            v
        };
        if candidate.iter().all(|c| *c == Rational::ZERO)
            || is_scalar_multiple(&candidate, &e)
        {
            continue;
        }
        let f = minimal_polynomial(z, &e, &candidate)?;
        let mut fact = factor_over_q(&f, cfg.kronecker_cap)?;
        fact.factors.sort_by(|a, b| cmp_canonical(&a.0, &b.0));
        if fact.factors.len() == 1 {
            let (p, mult) = &fact.factors[0];
            if *mult > 1 {
                return Err(SplitError::NotSemisimple);
            }
            let d = p.degree().unwrap_or(0);
            if d == dim {
                // The candidate generates the whole node, which is a field.
                out.idempotents.push(e);
                out.components.push(SplitComponentInfo {
                    center_degree: d,
                    center_min_poly: p.clone(),
                });
                return Ok(());
            }
            // Proper subfield: not a primitive element, try the next one.
            note = format!(
                "best candidate generated a degree-{d} subfield of a {dim}-dimensional node"
            );
            continue;
        }

        // Coprime split f = g h with g the canonically smallest factor.
        let (p0, m0) = fact.factors[0].clone();
        let mut g = Polynomial::one();
        for _ in 0..m0 {
            g = g.mul(&p0);
        }
        let h = f.divrem(&g)?.0;
        let gv = eval_at_element(z, &g, &candidate, &e)?;
        let hv = eval_at_element(z, &h, &candidate, &e)?;
        let left = ideal_from_generator(z, &gv)?;
        let right = ideal_from_generator(z, &hv)?;
        if left.len() + right.len() != dim {
            return Err(SplitError::SplitDimensions {
                parent: dim,
                left: left.len(),
                right: right.len(),
            });
        }
        let e_left = ideal_identity(z, &left)?;
        let mut e_right = e.clone();
        for (a, b) in e_right.iter_mut().zip(&e_left) {
            *a -= b;
        }
        for y in &right {
            if z.multiply(&e_right, y)? != *y {
                return Err(SplitError::IdealIdentity { dim: right.len() });
            }
        }
        split_node(z, left, e_left, cfg, out)?;
        split_node(z, right, e_right, cfg, out)?;
        return Ok(());
    }

    if note.is_empty() {
        note = "no splitting element found within the trial budget".to_string();
    }
    out.unresolved.push(UnresolvedNode { dim, basis, note });
    Ok(())
}
