//! Lifting the semisimple quotient back into the algebra.
//!
//! With R the radical, the quotient embeds into A as a subalgebra: a basis
//! beta_1..beta_r of coset representatives can be corrected, one radical
//! power at a time, until its products reproduce the quotient's structure
//! constants exactly. Working in B = A / R^(mu+1), the correction at stage
//! mu lives in the square-zero bimodule M = R^mu / R^(mu+1), and solving
//!
//!   lambda_i x_j + x_i rho_j - sum_k d_ij^k x_k = -sigma_ij
//!
//! over M yields the corrected representatives. The solution set is affine;
//! its direction space consists exactly of the inner derivations x_i = [s,
//! beta_i] for s in M, because the quotient is separable over Q. That gives
//! the homogeneous part for free, and the canonical parametrization (zeros
//! at the reachable-last free coordinates) is path-independent, so the
//! particular solution can come either from a dense solve of the system
//! above or, when every component carries matrix units, from lifting the
//! units multiplicatively: orthogonalize the diagonal idempotents one at a
//! time with the square-zero Newton step e = u + (1 - 2u)(u^2 - u), then
//! repair the off-diagonal units through the corner inverses
//! (e + n)^(-1) = e - n. The multiplicative route costs a few products per
//! basis element instead of a solve in r*m unknowns.
//!
//! The derivation span is never canonicalized by eliminating over all r*m
//! coordinates: [`InnerKernel`] finds the free coordinates by scanning the
//! flat positions from the right until the kernel rank is reached (the rank
//! comes from the centralizer of the representatives in M), and stores each
//! canonical basis vector as a small combination recipe over the sparse
//! derivation rows instead of materializing it.

use std::collections::BTreeSet;

use malachite::base::num::basic::traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::exactla::{coordinates_in_rcf_span, Matrix, Rational, RowSpace};
use crate::radical::RadicalData;
use crate::rng::SplitMix64;
use crate::wedderburn::{RepBlock, SimpleComponent};

pub const DEFAULT_DENSE_LIMIT: usize = 4096;
/// Product verification stays exhaustive up to this quotient dimension.
pub const DEFAULT_VERIFY_EXHAUSTIVE_LIMIT: usize = 64;
/// Sampled product checks above the exhaustive limit.
pub const DEFAULT_VERIFY_SAMPLES: usize = 2000;

#[derive(Debug, Clone)]
pub struct MalcevConfig {
    /// Largest unknown count the dense stage solver will accept.
    pub dense_limit: usize,
    /// Testing hook: take the dense route even when matrix units exist.
    pub force_dense: bool,
    /// Check every product of the lifted basis when the quotient dimension
    /// is at most this; spot-check `verify_samples` pairs above it.
    pub verify_exhaustive_limit: usize,
    /// Number of deterministic sampled pairs for large quotients.
    pub verify_samples: usize,
}

impl Default for MalcevConfig {
    fn default() -> Self {
        MalcevConfig {
            dense_limit: DEFAULT_DENSE_LIMIT,
            force_dense: false,
            verify_exhaustive_limit: DEFAULT_VERIFY_EXHAUSTIVE_LIMIT,
            verify_samples: DEFAULT_VERIFY_SAMPLES,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MalcevError {
    #[error("the algebra has no stored identity")]
    NotUnital,
    #[error("radical power chain does not reach zero; the ideal is not nilpotent")]
    NotNilpotent,
    #[error("component bases do not fill the quotient; cannot lift")]
    IncompleteDecomposition,
    #[error("lifting system has {vars} unknowns, above the dense solver limit; \
             matrix units are required for the structured path")]
    SystemTooLarge { vars: usize },
    #[error("a stage defect left the radical-power complement")]
    DefectOutsideComplement,
    #[error("lifted idempotent failed its square check")]
    IdempotentLift,
    #[error("lifted basis fails the structure constants at pair ({i}, {j})")]
    LiftVerificationFailed { i: usize, j: usize },
    #[error("lifted basis and radical together do not span the algebra")]
    ComplementSingular,
    #[error("unknown lift parameter x{i}_{l}")]
    UnknownParameter { i: usize, l: usize },
    #[error("lift parameter x{i}_{l} assigned twice")]
    DuplicateParameter { i: usize, l: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// RCF bases of R, R^2, R^3, ... down to the last nonzero power.
pub fn radical_power_chain(
    a: &Algebra,
    radical_rcf: &[Element],
) -> Result<Vec<Vec<Element>>, MalcevError> {
    if radical_rcf.is_empty() {
        return Ok(Vec::new());
    }
    let mut chain = vec![radical_rcf.to_vec()];
    loop {
        let last = chain.last().unwrap();
        let mut next = RowSpace::new();
        for u in last {
            for v in radical_rcf {
                next.insert(&a.multiply(u, v)?);
            }
        }
        if next.dim() == 0 {
            break;
        }
        if next.dim() >= last.len() {
            return Err(MalcevError::NotNilpotent);
        }
        chain.push(next.into_rows());
    }
    Ok(chain)
}

/// One square-zero lifting stage: the ambient B = A / R^(mu+1), coset
/// representatives beta, an RCF basis zeta of the stage bimodule, the
/// structure constants d of the quotient in the beta ordering, and the
/// component layout of that ordering.
#[derive(Debug, Clone)]
pub struct LiftingProblem {
    pub ambient: Algebra,
    pub beta: Vec<Element>,
    pub zeta: Vec<Element>,
    pub zeta_pivots: Vec<usize>,
    pub d: Vec<Vec<(u32, Rational)>>,
    pub blocks: Vec<RepBlock>,
}

#[derive(Debug, Clone)]
pub struct SquareZeroSolution {
    /// Canonical correction coordinates, row i holding gamma_i over zeta.
    pub gamma: Vec<Vec<Rational>>,
    /// beta_i + gamma_i, in ambient coordinates.
    pub lifted: Vec<Element>,
    /// Homogeneous solution space (the inner derivations), canonical basis
    /// available through [`InnerKernel::canonical_rows`].
    pub kernel: InnerKernel,
    /// Free coordinates (i, l), zero-based, one per kernel basis vector.
    pub free_vars: Vec<(usize, usize)>,
}

/// The homogeneous solution space of one square-zero stage: the span of the
/// inner derivation rows D_s = ([beta_i, zeta_s] coordinates)_i, flat over
/// the r*m positions x_(i,l) = v[i*m + l].
///
/// The canonical basis (identity pattern on the free positions, which are
/// the reachable trailing coordinates) is represented by a combination
/// recipe over the sparse derivation rows; materializing it is optional.
#[derive(Debug, Clone)]
pub struct InnerKernel {
    /// Sparse derivation rows, one per bimodule basis vector, entries
    /// (flat column, coefficient) sorted by column.
    rows: Vec<Vec<(u32, Rational)>>,
    /// Free positions, ascending. Every kernel vector has its trailing
    /// nonzero coordinate at one of these.
    phi: Vec<usize>,
    /// m x rank matrix; canonical basis vector k is sum_s comb[s][k] *
    /// rows[s], the unique kernel vector that is 1 at phi[k] and 0 at the
    /// other free positions.
    comb: Matrix,
    r: usize,
    m: usize,
}

impl InnerKernel {
    /// Builds the kernel from the derivation rows. `rows[s]` must hold the
    /// coordinates of ([beta_i, zeta_s])_i flat over i*m + t, sorted.
    fn compute(rows: Vec<Vec<(u32, Rational)>>, r: usize, m: usize) -> InnerKernel {
        debug_assert_eq!(rows.len(), m);
        // Kernel dimension of the combination map x -> sum_s x_s rows[s]:
        // such x are exactly the bimodule elements commuting with every
        // beta_i, so intersect the per-i constraints x^T A_i = 0, where
        // A_i is the block of columns i*m..(i+1)*m. The candidate space
        // shrinks to its final dimension within a few blocks.
        let mut cent: Vec<Vec<Rational>> = (0..m)
            .map(|s| {
                let mut e = vec![Rational::ZERO; m];
                e[s] = Rational::ONE;
                e
            })
            .collect();
        for i in 0..r {
            if cent.is_empty() {
                break;
            }
            let mut pt = Matrix::zeros(m, cent.len());
            let mut any = false;
            for (b, brow) in cent.iter().enumerate() {
                for (s, coef) in brow.iter().enumerate() {
                    if *coef == Rational::ZERO {
                        continue;
                    }
                    let row = &rows[s];
                    let lo = row.partition_point(|(c, _)| (*c as usize) < i * m);
                    for (c, v) in &row[lo..] {
                        let c = *c as usize;
                        if c >= (i + 1) * m {
                            break;
                        }
                        *pt.get_mut(c - i * m, b) += coef * v;
                        any = true;
                    }
                }
            }
            if !any {
                continue;
            }
            let null = pt.nullspace_basis();
            if null.len() == cent.len() {
                continue;
            }
            cent = null
                .iter()
                .map(|nv| {
                    let mut w = vec![Rational::ZERO; m];
                    for (b, c) in nv.iter().enumerate() {
                        add_scaled(&mut w, c, &cent[b]);
                    }
                    w
                })
                .collect();
        }
        let rank = m - cent.len();

        // Free positions: scan the flat coordinates from the right and keep
        // those whose column (a vector over s) extends the span, stopping
        // as soon as the kernel rank is reached.
        let mut cols: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); r * m];
        for (s, row) in rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c as usize].push((s as u32, v.clone()));
            }
        }
        let mut space = RowSpace::new();
        let mut phi: Vec<usize> = Vec::with_capacity(rank);
        for c in (0..r * m).rev() {
            if phi.len() == rank {
                break;
            }
            if cols[c].is_empty() {
                continue;
            }
            let mut dense = vec![Rational::ZERO; m];
            for (s, v) in &cols[c] {
                dense[*s as usize] = v.clone();
            }
            if space.insert(&dense) {
                phi.push(c);
            }
        }
        debug_assert_eq!(phi.len(), rank);
        phi.reverse();

        // Combination recipe: coefficients reproducing the identity pattern
        // on the free positions. The free columns are independent, so the
        // system is always consistent.
        let comb = if rank == 0 {
            Matrix::zeros(m, 0)
        } else {
            let mt = Matrix::from_fn(rank, m, |k, s| {
                let row = &rows[s];
                match row.binary_search_by_key(&(phi[k] as u32), |(c, _)| *c) {
                    Ok(idx) => row[idx].1.clone(),
                    Err(_) => Rational::ZERO,
                }
            });
            mt.solve_multi(&Matrix::identity(rank))
                .expect("independent free columns always admit a recipe")
        };

        InnerKernel {
            rows,
            phi,
            comb,
            r,
            m,
        }
    }

    /// Number of canonical basis vectors (= free positions).
    pub fn rank(&self) -> usize {
        self.phi.len()
    }

    /// Free coordinates as (i, l) pairs, ascending in the flat order.
    pub fn free_vars(&self) -> Vec<(usize, usize)> {
        self.phi.iter().map(|&c| (c / self.m, c % self.m)).collect()
    }

    /// Subtracts the unique kernel vector matching `gamma` on the free
    /// positions, leaving the canonical representative (zeros there).
    pub fn canonicalize(&self, gamma: &mut [Rational]) {
        debug_assert_eq!(gamma.len(), self.r * self.m);
        if self.phi.is_empty() {
            return;
        }
        let vals: Vec<Rational> = self.phi.iter().map(|&c| gamma[c].clone()).collect();
        if vals.iter().all(|v| *v == Rational::ZERO) {
            return;
        }
        let w = self.comb.mul_vec(&vals);
        for (s, ws) in w.iter().enumerate() {
            if *ws == Rational::ZERO {
                continue;
            }
            for (c, v) in &self.rows[s] {
                gamma[*c as usize] -= ws * v;
            }
        }
        debug_assert!(self.phi.iter().all(|&c| gamma[c] == Rational::ZERO));
    }

    /// Materializes the canonical basis, one dense row per free position.
    pub fn canonical_rows(&self) -> Vec<Vec<Rational>> {
        let rank = self.phi.len();
        let mut out = vec![vec![Rational::ZERO; self.r * self.m]; rank];
        for (k, row) in out.iter_mut().enumerate() {
            for s in 0..self.m {
                let coef = self.comb.get(s, k);
                if *coef == Rational::ZERO {
                    continue;
                }
                for (c, v) in &self.rows[s] {
                    row[*c as usize] += coef * v;
                }
            }
        }
        out
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Element {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_scaled(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if *c == Rational::ZERO {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

impl LiftingProblem {
    fn zeta_coords(&self, v: &[Rational]) -> Result<Vec<Rational>, MalcevError> {
        coordinates_in_rcf_span(&self.zeta, &self.zeta_pivots, v)
            .ok_or(MalcevError::DefectOutsideComplement)
    }

    fn d_row(&self, i: usize, j: usize) -> &[(u32, Rational)] {
        &self.d[i * self.beta.len() + j]
    }
}

/// Solve one square-zero stage. Returns the canonical solution: the unique
/// one whose free coordinates vanish.
pub fn lift_square_zero(
    p: &LiftingProblem,
    cfg: &MalcevConfig,
) -> Result<SquareZeroSolution, MalcevError> {
    let r = p.beta.len();
    let m = p.zeta.len();

    // Homogeneous space: inner derivations x_i = [beta_i, s] for s in the
    // bimodule. Separability of the quotient makes these the whole kernel.
    let mut t = std::time::Instant::now();
    let mut der_rows: Vec<Vec<(u32, Rational)>> = Vec::with_capacity(m);
    for s in 0..m {
        let mut row: Vec<(u32, Rational)> = Vec::new();
        for i in 0..r {
            let com = sub(
                &p.ambient.multiply(&p.beta[i], &p.zeta[s])?,
                &p.ambient.multiply(&p.zeta[s], &p.beta[i])?,
            );
            let coords = p.zeta_coords(&com)?;
            for (l, c) in coords.into_iter().enumerate() {
                if c != Rational::ZERO {
                    row.push(((i * m + l) as u32, c));
                }
            }
        }
        der_rows.push(row);
    }
    if crate::timing::enabled() {
        let nnz: usize = der_rows.iter().map(Vec::len).sum();
        let total = der_rows.len() * r * m;
        eprintln!(
            "[timing]   square-zero: {} derivation rows x {} cols, nnz {} ({:.1}%)",
            der_rows.len(),
            r * m,
            nnz,
            100.0 * nnz as f64 / total.max(1) as f64
        );
    }
    crate::timing::mark("  square-zero: derivation rows", t);
    t = std::time::Instant::now();
    let kernel = InnerKernel::compute(der_rows, r, m);
    crate::timing::mark("  square-zero: kernel basis", t);
    t = std::time::Instant::now();
    let free_vars = kernel.free_vars();

    let structured = !cfg.force_dense && p.blocks.iter().all(|b| b.matrix_size.is_some());
    let mut gamma_flat = if structured {
        structured_particular(p)?
    } else {
        dense_particular(p, cfg)?
    };
    crate::timing::mark("  square-zero: particular solution", t);
    t = std::time::Instant::now();

    // Canonicalize: subtract the kernel vector that matches gamma on the
    // free coordinates, leaving zeros there.
    kernel.canonicalize(&mut gamma_flat);

    let gamma: Vec<Vec<Rational>> = (0..r)
        .map(|i| gamma_flat[i * m..(i + 1) * m].to_vec())
        .collect();
    let lifted: Vec<Element> = (0..r)
        .map(|i| {
            let mut v = p.beta[i].clone();
            for (l, c) in gamma[i].iter().enumerate() {
                add_scaled(&mut v, c, &p.zeta[l]);
            }
            v
        })
        .collect();

    crate::timing::mark("  square-zero: assemble lift", t);
    t = std::time::Instant::now();

    // The lifted representatives must reproduce the structure constants
    // exactly in the stage quotient.
    verify_pairs(r, cfg, |i, j| {
        let lhs = p.ambient.multiply(&lifted[i], &lifted[j])?;
        let mut rhs = vec![Rational::ZERO; p.ambient.dim()];
        for (k, c) in p.d_row(i, j) {
            add_scaled(&mut rhs, c, &lifted[*k as usize]);
        }
        if lhs != rhs {
            return Err(MalcevError::LiftVerificationFailed { i, j });
        }
        Ok(())
    })?;
    crate::timing::mark("  square-zero: product verification", t);

    Ok(SquareZeroSolution {
        gamma,
        lifted,
        kernel,
        free_vars,
    })
}

/// Runs `check` on every (i, j) pair when the basis is small, or on a fixed
/// deterministic sample of pairs above `cfg.verify_exhaustive_limit`.
fn verify_pairs<F>(r: usize, cfg: &MalcevConfig, mut check: F) -> Result<(), MalcevError>
where
    F: FnMut(usize, usize) -> Result<(), MalcevError>,
{
    if r == 0 {
        return Ok(());
    }
    if r <= cfg.verify_exhaustive_limit {
        for i in 0..r {
            for j in 0..r {
                check(i, j)?;
            }
        }
    } else {
        let mut rng = SplitMix64::derive(0x6c69667465646261, 0x76657269667921);
        for _ in 0..cfg.verify_samples {
            let i = rng.below(r as u64) as usize;
            let j = rng.below(r as u64) as usize;
            check(i, j)?;
        }
    }
    Ok(())
}

/// Multiplicative particular solution through idempotent and matrix-unit
/// lifting. Requires every block to carry matrix units.
fn structured_particular(p: &LiftingProblem) -> Result<Vec<Rational>, MalcevError> {
    let b = &p.ambient;
    let n = b.dim();
    let r = p.beta.len();
    let m = p.zeta.len();

    // Lift the diagonal units e_ii of every block into a globally
    // orthogonal family: shrink each into the corner of what is already
    // lifted, then repair the square with one Newton step, which is exact
    // because the defect lives in a square-zero ideal and commutes with u.
    let mut diag: Vec<Element> = Vec::new();
    let mut e_sum = vec![Rational::ZERO; n];
    for block in &p.blocks {
        let q = block.matrix_size.expect("structured path requires units");
        for i in 0..q {
            let u0 = &p.beta[block.offset + i * q + i];
            let eu = b.multiply(&e_sum, u0)?;
            let ue = b.multiply(u0, &e_sum)?;
            let eue = b.multiply(&e_sum, &ue)?;
            let mut u = u0.clone();
            for t in 0..n {
                u[t] -= &eu[t];
                u[t] -= &ue[t];
                u[t] += &eue[t];
            }
            let u2 = b.multiply(&u, &u)?;
            let delta = sub(&u2, &u);
            let udelta = b.multiply(&u, &delta)?;
            let mut e = u.clone();
            for t in 0..n {
                e[t] += &delta[t];
                e[t] -= &udelta[t];
                e[t] -= &udelta[t];
            }
            if b.multiply(&e, &e)? != e {
                return Err(MalcevError::IdempotentLift);
            }
            for (s, v) in e_sum.iter_mut().zip(&e) {
                *s += v;
            }
            diag.push(e);
        }
    }

    // Off-diagonal units per block: pin the first column and row through
    // the lifted corners, normalize with the square-zero corner inverse,
    // and generate the rest as products a_i b_j.
    let mut gamma = vec![Rational::ZERO; r * m];
    let mut cursor = 0;
    for block in &p.blocks {
        let q = block.matrix_size.unwrap();
        let e_local = &diag[cursor..cursor + q];
        cursor += q;
        let mut a_vecs: Vec<Element> = vec![e_local[0].clone()];
        let mut b_vecs: Vec<Element> = vec![e_local[0].clone()];
        for i in 1..q {
            let raw_a = &p.beta[block.offset + i * q];
            let raw_b = &p.beta[block.offset + i];
            let a_i = b.multiply(&b.multiply(&e_local[i], raw_a)?, &e_local[0])?;
            let b_i = b.multiply(&b.multiply(&e_local[0], raw_b)?, &e_local[i])?;
            // b_i a_i = e_00 + n with n square-zero, so (e_00 - n) inverts it
            // inside the corner.
            let prod = b.multiply(&b_i, &a_i)?;
            let mut inv = e_local[0].clone();
            for t in 0..n {
                inv[t] -= &prod[t];
                inv[t] += &e_local[0][t];
            }
            let b_i = b.multiply(&inv, &b_i)?;
            a_vecs.push(a_i);
            b_vecs.push(b_i);
        }
        for i in 0..q {
            for j in 0..q {
                let unit = if i == 0 && j == 0 {
                    e_local[0].clone()
                } else {
                    b.multiply(&a_vecs[i], &b_vecs[j])?
                };
                let idx = block.offset + i * q + j;
                let diff = sub(&unit, &p.beta[idx]);
                let coords = p.zeta_coords(&diff)?;
                gamma[idx * m..(idx + 1) * m].clone_from_slice(&coords);
            }
        }
    }
    Ok(gamma)
}

/// Particular solution by assembling and solving the full linear system.
fn dense_particular(p: &LiftingProblem, cfg: &MalcevConfig) -> Result<Vec<Rational>, MalcevError> {
    let b = &p.ambient;
    let r = p.beta.len();
    let m = p.zeta.len();
    let vars = r * m;
    if vars > cfg.dense_limit {
        return Err(MalcevError::SystemTooLarge { vars });
    }
    // lambda[i][t][l]: zeta_t coefficient of beta_i zeta_l;
    // rho[j][t][l]: zeta_t coefficient of zeta_l beta_j.
    let mut lambda: Vec<Matrix> = Vec::with_capacity(r);
    let mut rho: Vec<Matrix> = Vec::with_capacity(r);
    for i in 0..r {
        let mut lam = Matrix::zeros(m, m);
        let mut rh = Matrix::zeros(m, m);
        for l in 0..m {
            let left = p.zeta_coords(&b.multiply(&p.beta[i], &p.zeta[l])?)?;
            let right = p.zeta_coords(&b.multiply(&p.zeta[l], &p.beta[i])?)?;
            for t in 0..m {
                lam.set(t, l, left[t].clone());
                rh.set(t, l, right[t].clone());
            }
        }
        lambda.push(lam);
        rho.push(rh);
    }
    let mut system = Matrix::zeros(r * r * m, vars);
    let mut rhs = vec![Rational::ZERO; r * r * m];
    for i in 0..r {
        for j in 0..r {
            let mut defect = b.multiply(&p.beta[i], &p.beta[j])?;
            for (k, c) in p.d_row(i, j) {
                for (dv, bv) in defect.iter_mut().zip(&p.beta[*k as usize]) {
                    *dv -= c * bv;
                }
            }
            let sigma = p.zeta_coords(&defect)?;
            for t in 0..m {
                let eq = (i * r + j) * m + t;
                for l in 0..m {
                    *system.get_mut(eq, j * m + l) += lambda[i].get(t, l);
                    *system.get_mut(eq, i * m + l) += rho[j].get(t, l);
                }
                for (k, c) in p.d_row(i, j) {
                    *system.get_mut(eq, *k as usize * m + t) -= c;
                }
                rhs[eq] = -&sigma[t];
            }
        }
    }
    let sol = system
        .solve(&rhs)
        .map_err(|_| MalcevError::DefectOutsideComplement)?;
    Ok(sol.particular)
}

/// Result of the staged lift: representatives in the original algebra whose
/// products reproduce the quotient structure constants exactly, plus the
/// parametrization of the final stage's solution family.
#[derive(Debug, Clone)]
pub struct LiftOutcome {
    pub stages: usize,
    /// Lifted basis in original coordinates, ordered like the new basis of
    /// the quotient (matrix units of split components, component bases of
    /// the rest).
    pub lifted: Vec<Element>,
    /// Final-stage bimodule basis in original coordinates.
    pub zeta: Vec<Element>,
    pub nullspace: Vec<Vec<Rational>>,
    pub free_vars: Vec<(usize, usize)>,
    /// (ambient dimension, bimodule dimension) per stage.
    pub stage_dims: Vec<(usize, usize)>,
}

impl LiftOutcome {
    pub fn params_free(&self) -> usize {
        self.free_vars.len()
    }
}

/// New-basis layout shared by representations and lifting: the flattened
/// basis, the block table, and the quotient structure constants in that
/// basis. The structure constants need no solve: split blocks multiply as
/// matrix units, other blocks carry their local tables, and cross-block
/// products vanish.
pub fn new_basis_layout(
    components: &[SimpleComponent],
) -> (Vec<Element>, Vec<RepBlock>, Vec<Vec<(u32, Rational)>>) {
    let mut basis: Vec<Element> = Vec::new();
    let mut blocks = Vec::with_capacity(components.len());
    for c in components {
        let cols: &[Element] = match &c.matrix_units {
            Some(units) => units,
            None => &c.basis,
        };
        blocks.push(RepBlock {
            offset: basis.len(),
            dim: c.dim(),
            matrix_size: c.matrix_size,
        });
        basis.extend(cols.iter().cloned());
    }
    let r = basis.len();
    let mut d = vec![Vec::new(); r * r];
    for (c, block) in components.iter().zip(&blocks) {
        let off = block.offset;
        match c.matrix_size {
            Some(q) => {
                for i in 0..q {
                    for j in 0..q {
                        for k in 0..q {
                            for l in 0..q {
                                if j == k {
                                    d[(off + i * q + j) * r + (off + k * q + l)] =
                                        vec![((off + i * q + l) as u32, Rational::ONE)];
                                }
                            }
                        }
                    }
                }
            }
            None => {
                let s = c.dim();
                for a in 0..s {
                    for bb in 0..s {
                        d[(off + a) * r + (off + bb)] = c
                            .local
                            .structure_row(a, bb)
                            .iter()
                            .map(|(k, v)| ((off + *k as usize) as u32, v.clone()))
                            .collect();
                    }
                }
            }
        }
    }
    (basis, blocks, d)
}

/// Induct through the radical power chain. Stage mu works in A / R^(mu+1)
/// and corrects the representatives within R^mu / R^(mu+1); the final stage
/// is the algebra itself, so the outcome is exact.
pub fn lift_general(
    a: &Algebra,
    radical: &RadicalData,
    components: &[SimpleComponent],
    cfg: &MalcevConfig,
) -> Result<LiftOutcome, MalcevError> {
    let r = radical.quotient_dim();
    let (new_basis, blocks, d) = new_basis_layout(components);
    if new_basis.len() != r {
        return Err(MalcevError::IncompleteDecomposition);
    }
    let mut beta_a: Vec<Element> = new_basis
        .iter()
        .map(|y| radical.reduced.lift(y))
        .collect();
    let chain = radical_power_chain(a, &radical.reduced.rows)?;
    let nu = chain.len();

    let mut stage_dims = Vec::with_capacity(nu);
    let mut last: Option<(SquareZeroSolution, Vec<Element>)> = None;
    for mu in 1..=nu {
        let t_stage = std::time::Instant::now();
        let ideal: &[Element] = if mu == nu { &[] } else { &chain[mu] };
        let (ambient, red) = a.quotient_by_ideal(ideal, false)?;
        let beta_b: Vec<Element> = beta_a.iter().map(|x| red.project(x)).collect();
        let drop: BTreeSet<usize> = if mu == nu {
            BTreeSet::new()
        } else {
            chain[mu]
                .iter()
                .map(|row| row.iter().position(|c| *c != Rational::ZERO).unwrap())
                .collect()
        };
        let mut zeta_space = RowSpace::new();
        for row in &chain[mu - 1] {
            let pivot = row.iter().position(|c| *c != Rational::ZERO).unwrap();
            if !drop.contains(&pivot) {
                zeta_space.insert(&red.project(row));
            }
        }
        let zeta: Vec<Element> = zeta_space.rows().to_vec();
        let zeta_pivots: Vec<usize> = zeta_space.pivots().to_vec();
        stage_dims.push((ambient.dim(), zeta.len()));
        let problem = LiftingProblem {
            ambient,
            beta: beta_b,
            zeta,
            zeta_pivots,
            d: d.clone(),
            blocks: blocks.clone(),
        };
        crate::timing::mark(&format!("lift stage {mu}: setup"), t_stage);
        let t_solve = std::time::Instant::now();
        let sol = lift_square_zero(&problem, cfg)?;
        crate::timing::mark(&format!("lift stage {mu}: solve"), t_solve);
        beta_a = sol.lifted.iter().map(|x| red.lift(x)).collect();
        let zeta_a: Vec<Element> = problem.zeta.iter().map(|x| red.lift(x)).collect();
        last = Some((sol, zeta_a));
    }

    let outcome = match last {
        Some((sol, zeta_a)) => LiftOutcome {
            stages: nu,
            lifted: beta_a,
            zeta: zeta_a,
            nullspace: sol.kernel.canonical_rows(),
            free_vars: sol.free_vars,
            stage_dims,
        },
        None => {
            // Zero radical: the canonical section is already an isomorphism,
            // but verify the products all the same.
            verify_pairs(r, cfg, |i, j| {
                let lhs = a.multiply(&beta_a[i], &beta_a[j])?;
                let mut rhs = vec![Rational::ZERO; a.dim()];
                for (k, c) in &d[i * r + j] {
                    add_scaled(&mut rhs, c, &beta_a[*k as usize]);
                }
                if lhs != rhs {
                    return Err(MalcevError::LiftVerificationFailed { i, j });
                }
                Ok(())
            })?;
            LiftOutcome {
                stages: 0,
                lifted: beta_a,
                zeta: Vec::new(),
                nullspace: Vec::new(),
                free_vars: Vec::new(),
                stage_dims,
            }
        }
    };

    // The lifted subalgebra and the radical together must restore the whole
    // algebra.
    let mut span_rows = outcome.lifted.clone();
    span_rows.extend(chain.first().cloned().unwrap_or_default());
    let rank = Matrix::from_rows_with_width(span_rows, a.dim()).rank();
    if rank != a.dim() {
        return Err(MalcevError::ComplementSingular);
    }
    Ok(outcome)
}

/// Replace the canonical (all-zero) free parameters of the final stage with
/// chosen values. Assignments are zero-based (i, l) pairs matching
/// `free_vars`; every other solution of the final stage arises this way.
pub fn apply_parameters(
    out: &LiftOutcome,
    assignments: &[((usize, usize), Rational)],
) -> Result<Vec<Element>, MalcevError> {
    let m = out.zeta.len();
    let mut seen = BTreeSet::new();
    let mut lifted = out.lifted.clone();
    for ((i, l), value) in assignments {
        if !seen.insert((*i, *l)) {
            return Err(MalcevError::DuplicateParameter { i: i + 1, l: l + 1 });
        }
        let idx = out
            .free_vars
            .iter()
            .position(|fv| fv == &(*i, *l))
            .ok_or(MalcevError::UnknownParameter { i: i + 1, l: l + 1 })?;
        if *value == Rational::ZERO {
            continue;
        }
        let vec = &out.nullspace[idx];
        for (bi, el) in lifted.iter_mut().enumerate() {
            for (li, z) in out.zeta.iter().enumerate() {
                let c = value * &vec[bi * m + li];
                add_scaled(el, &c, z);
            }
        }
    }
    Ok(lifted)
}
