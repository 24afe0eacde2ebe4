//! Univariate polynomials over Q and complete factorization into monic
//! irreducibles.
//!
//! Factorization strategy: Yun squarefree decomposition, exhaustive rational
//! root extraction, then Kronecker divisor interpolation for what remains.
//! Degrees 2 and 3 with no rational root are already irreducible, so
//! Kronecker only runs for residual degree >= 4 and is bounded by a
//! configurable cap on the candidate divisor degree.

use std::cmp::Ordering;

use malachite::integer::Integer;
use malachite::base::num::arithmetic::traits::{Abs, DivisibleBy, Lcm};
use malachite::base::num::basic::traits::{One, Zero};
use thiserror::Error;

use crate::exactla::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("factorization needs divisor degree up to {needed}, above the cap {cap}")]
    DegreeCapExceeded { needed: usize, cap: usize },
    #[error("factorization coefficient exceeds the supported divisor-search magnitude")]
    ValueOverflow,
}

/// Coefficients ascending by degree, normalized to carry no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The monomial t^d.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![Rational::ZERO; d + 1];
        coeffs[d] = Rational::ONE;
        Polynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Rational::ZERO) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == Rational::ONE)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if *c == Rational::ZERO {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Rational::ZERO {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b != Rational::ZERO {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Euclidean division: self = q * divisor + r with deg r < deg divisor.
    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = Rational::ONE / divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::ZERO; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = &rem[i] * &lead_inv;
            if q == Rational::ZERO {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let delta = &q * b;
                rem[i - d + j] -= delta;
            }
            quot[i - d] = q;
        }
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem)))
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) if *l == Rational::ONE => self.clone(),
            Some(l) => {
                let inv = Rational::ONE / l;
                self.scale(&inv)
            }
        }
    }

    /// Display form like "t^2 - 1/2 t + 3".
    pub fn to_display_string(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == Rational::ZERO {
                continue;
            }
            let mag = if *c < 0 { -c.clone() } else { c.clone() };
            let sign = if *c < 0 { "-" } else { "+" };
            let body = match i {
                0 => mag.to_string(),
                _ => {
                    let pw = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if mag == Rational::ONE {
                        pw
                    } else {
                        format!("{mag} {pw}")
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if *c < 0 {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        parts.join(" ")
    }
}

/// Total order used wherever factor lists need a canonical arrangement:
/// by degree, then by the coefficient vector from the constant term up.
pub fn cmp_canonical(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_zero() {
        let (_, r) = f.divrem(&g).expect("nonzero divisor");
        f = g;
        g = r;
    }
    f.monic()
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn poly_xgcd(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = Polynomial::one();
    let mut s1 = Polynomial::zero();
    let mut t0 = Polynomial::zero();
    let mut t1 = Polynomial::one();
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    match r0.leading() {
        None => (Polynomial::zero(), Polynomial::zero(), Polynomial::zero()),
        Some(l) => {
            let inv = Rational::ONE / l;
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

/// Complete factorization: `constant * prod factors[i].0 ^ factors[i].1`
/// with monic irreducible factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub constant: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.constant.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Factors `f` over Q. `kronecker_cap` bounds the degree of candidate
/// divisors searched by interpolation (the residual degree may be up to
/// twice the cap).
pub fn factor_over_q(f: &Polynomial, kronecker_cap: usize) -> Result<Factorization, PolyError> {
    let lead = f.leading().ok_or(PolyError::ZeroPolynomial)?.clone();
    let monic = f.monic();
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for irr in factor_squarefree(&part, kronecker_cap)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| cmp_canonical(a, b));
    // Merge equal factors that appeared in different squarefree parts
    // (cannot happen for a correct decomposition, but keep the invariant
    // "each irreducible listed once" locally checkable).
    let mut merged: Vec<(Polynomial, u32)> = Vec::new();
    for (p, m) in factors {
        match merged.last_mut() {
            Some((q, qm)) if *q == p => *qm += m,
            _ => merged.push((p, m)),
        }
    }
    Ok(Factorization {
        constant: lead,
        factors: merged,
    })
}

/// Yun's algorithm; input monic nonzero. Returns monic squarefree parts with
/// their multiplicities, skipping trivial parts.
fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let mut g = poly_gcd(f, &f.derivative());
    let mut w = f
        .divrem(&g)
        .expect("gcd of nonzero is nonzero")
        .0;
    let mut i = 1u32;
    while w.degree().map_or(false, |d| d > 0) {
        let y = poly_gcd(&w, &g);
        let z = w.divrem(&y).expect("gcd divides").0;
        if z.degree().is_some_and(|d| d > 0) {
            out.push((z.monic(), i));
        }
        g = g.divrem(&y).expect("gcd divides").0;
        w = y;
        i += 1;
    }
    out
}

/// Factors a monic squarefree polynomial into monic irreducibles.
fn factor_squarefree(f: &Polynomial, cap: usize) -> Result<Vec<Polynomial>, PolyError> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    // Exhaust rational roots first; squarefree means each root once.
    // Root extraction must not fail silently: a missed linear factor would
    // let the divisor search return a reducible quadratic.
    for root in rational_roots(&rest)? {
        let lin = Polynomial::from_coeffs(vec![-root, Rational::ONE]);
        rest = rest.divrem(&lin).expect("root divides").0;
        out.push(lin);
    }
    loop {
        let deg = match rest.degree() {
            None | Some(0) => break,
            Some(d) => d,
        };
        if deg <= 3 {
            // No rational roots remain, so degree 1 is impossible and
            // degrees 2 and 3 are irreducible.
            out.push(rest.clone());
            break;
        }
        if deg / 2 > cap {
            return Err(PolyError::DegreeCapExceeded {
                needed: deg / 2,
                cap,
            });
        }
        match kronecker_divisor(&rest)? {
            Some(g) => {
                rest = rest.divrem(&g).expect("divisor divides").0;
                out.push(g);
            }
            None => {
                out.push(rest.clone());
                break;
            }
        }
    }
    out.sort_by(cmp_canonical);
    Ok(out)
}

/// All rational roots of `f`, found by testing p/q with p | constant and
/// q | leading coefficient of the primitive integer form.
fn rational_roots(f: &Polynomial) -> Result<Vec<Rational>, PolyError> {
    let mut roots = Vec::new();
    let mut rest = f.clone();
    // Roots at zero.
    while !rest.is_zero() && rest.coeff(0) == Rational::ZERO {
        roots.push(Rational::ZERO);
        rest = rest
            .divrem(&Polynomial::monomial(1))
            .expect("t divides")
            .0;
        // Squarefree input has a single root at zero, but stay general.
    }
    let Some(deg) = rest.degree() else {
        return Ok(roots);
    };
    if deg == 0 {
        return Ok(roots);
    }
    let ints = primitive_integer_coeffs(&rest);
    let a0 = ints[0].clone().abs();
    let ad = ints[deg].clone().abs();
    let (Some(a0), Some(ad)) = (to_u128(&a0), to_u128(&ad)) else {
        return Err(PolyError::ValueOverflow);
    };
    debug_assert!(a0 != 0);
    for p in divisors(a0) {
        for q in divisors(ad) {
            for sign in [1i64, -1] {
                let cand = Rational::from_signeds(sign, 1)
                    * Rational::from(p)
                    / Rational::from(q);
                if rest.eval(&cand) == Rational::ZERO {
                    let lin = Polynomial::from_coeffs(vec![-cand.clone(), Rational::ONE]);
                    while lin.divides(&rest) {
                        rest = rest.divrem(&lin).expect("root divides").0;
                        roots.push(cand.clone());
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Searches for a proper divisor of monic squarefree `f` (degree >= 4, no
/// rational roots) by Kronecker interpolation, smallest degree first.
/// Returns None when `f` is irreducible.
fn kronecker_divisor(f: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
    let deg = f.degree().expect("nonzero");
    let ints = primitive_integer_coeffs(f);
    let fz = Polynomial::from_coeffs(ints.iter().map(Rational::from).collect());
    for d in 2..=deg / 2 {
        let points: Vec<i64> = sample_points(d + 1);
        let mut value_divisors: Vec<Vec<i64>> = Vec::with_capacity(d + 1);
        for (idx, &x) in points.iter().enumerate() {
            let v = fz.eval(&Rational::from(x));
            debug_assert!(v != 0, "integer root would have been removed");
            let mag = to_u128(&rational_to_integer(&v).abs()).ok_or(PolyError::ValueOverflow)?;
            let divs = divisors(mag);
            let mut signed: Vec<i64> = Vec::with_capacity(divs.len() * 2);
            for dv in divs {
                let dv = i64::try_from(dv).map_err(|_| PolyError::ValueOverflow)?;
                signed.push(dv);
                if idx > 0 {
                    signed.push(-dv);
                }
            }
            value_divisors.push(signed);
        }
        // Odometer over candidate value tuples.
        let mut cursor = vec![0usize; d + 1];
        'tuples: loop {
            let values: Vec<Rational> = cursor
                .iter()
                .zip(&value_divisors)
                .map(|(&c, divs)| Rational::from(divs[c]))
                .collect();
            if let Some(g) = interpolate(&points, &values) {
                if g.degree().is_some_and(|gd| gd >= 1) {
                    let g = g.monic();
                    if g.divides(f) && g.degree() != Some(deg) {
                        return Ok(Some(g));
                    }
                }
            }
            for slot in 0..=d {
                cursor[slot] += 1;
                if cursor[slot] < value_divisors[slot].len() {
                    continue 'tuples;
                }
                cursor[slot] = 0;
            }
            break;
        }
    }
    Ok(None)
}

fn sample_points(count: usize) -> Vec<i64> {
    let mut pts = Vec::with_capacity(count);
    let mut k = 0i64;
    while pts.len() < count {
        if k == 0 {
            pts.push(0);
        } else {
            pts.push(k);
            if pts.len() < count {
                pts.push(-k);
            }
        }
        k += 1;
    }
    pts
}

/// Lagrange interpolation through integer points with rational values.
fn interpolate(points: &[i64], values: &[Rational]) -> Option<Polynomial> {
    let mut acc = Polynomial::zero();
    for (i, (&xi, yi)) in points.iter().zip(values).enumerate() {
        if *yi == Rational::ZERO {
            continue;
        }
        let mut basis = Polynomial::one();
        let mut denom = Rational::ONE;
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Polynomial::from_coeffs(vec![
                Rational::from(-xj),
                Rational::ONE,
            ]));
            denom *= Rational::from(xi - xj);
        }
        acc = acc.add(&basis.scale(&(yi / &denom)));
    }
    Some(acc)
}

/// Coefficients of the primitive integer polynomial proportional to `f`.
fn primitive_integer_coeffs(f: &Polynomial) -> Vec<Integer> {
    use malachite::natural::Natural;
    let mut denom_lcm = Natural::ONE;
    for c in f.coeffs() {
        denom_lcm = (&denom_lcm).lcm(c.denominator_ref());
    }
    let lcm_rat = Rational::from(&denom_lcm);
    let scaled: Vec<Integer> = f
        .coeffs()
        .iter()
        .map(|c| rational_to_integer(&(c * &lcm_rat)))
        .collect();
    let mut content = Integer::ZERO;
    for c in &scaled {
        content = gcd_integer(&content, c);
    }
    if content == 0 || content == 1 {
        return scaled;
    }
    scaled
        .into_iter()
        .map(|c| {
            debug_assert!((&c).divisible_by(&content));
            c / &content
        })
        .collect()
}

fn rational_to_integer(r: &Rational) -> Integer {
    debug_assert_eq!(*r.denominator_ref(), 1u32);
    Integer::from_sign_and_abs(*r >= 0, r.numerator_ref().clone())
}

fn gcd_integer(a: &Integer, b: &Integer) -> Integer {
    use malachite::base::num::arithmetic::traits::Gcd;
    Integer::from(a.unsigned_abs_ref().clone().gcd(b.unsigned_abs_ref().clone()))
}

fn to_u128(v: &Integer) -> Option<u128> {
    u128::try_from(v).ok()
}

/// Positive divisors of n > 0 by trial division, ascending.
fn divisors(n: u128) -> Vec<u128> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u128;
    while i.checked_mul(i).is_some_and(|sq| sq <= n) {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rat_int};
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let f = p(&[1, 2, 1]); // (t+1)^2
        let g = p(&[1, 1]);
        assert_eq!(g.mul(&g), f);
        let (q, r) = f.divrem(&g).unwrap();
        assert_eq!(q, g);
        assert!(r.is_zero());
        assert_eq!(f.derivative(), p(&[2, 2]));
        assert_eq!(f.eval(&rat_int(2)), rat_int(9));
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn gcd_and_xgcd() {
        let f = p(&[-1, 0, 1]); // t^2 - 1
        let g = p(&[1, 1]); // t + 1
        assert_eq!(poly_gcd(&f, &g), g);
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        let (gcd, s, t) = poly_xgcd(&a, &b);
        assert_eq!(gcd, Polynomial::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), Polynomial::one());
    }

    #[test]
    fn factor_split_quadratics() {
        let cap = 8;
        let f = factor_over_q(&p(&[0, -1, 1]), cap).unwrap(); // t^2 - t
        assert_eq!(
            f.factors,
            vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 1)]
        );
        let g = factor_over_q(&p(&[0, 1, 1]), cap).unwrap(); // t^2 + t
        assert_eq!(g.factors, vec![(p(&[0, 1]), 1), (p(&[1, 1]), 1)]);
        // Canonical factor order: t - 1 < t < t + 1.
        let h = factor_over_q(&p(&[0, 0, -1, 0, 1]), cap).unwrap(); // t^4 - t^2
        assert_eq!(
            h.factors,
            vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2), (p(&[1, 1]), 1)]
        );
    }

    #[test]
    fn factor_keeps_irreducibles() {
        let cap = 8;
        let f = factor_over_q(&p(&[1, 0, 1]), cap).unwrap(); // t^2 + 1
        assert_eq!(f.factors, vec![(p(&[1, 0, 1]), 1)]);
        let g = factor_over_q(&p(&[2, 0, 0, 1]), cap).unwrap(); // t^3 + 2
        assert_eq!(g.factors, vec![(p(&[2, 0, 0, 1]), 1)]);
        // x^4 + 1 is irreducible over Q; Kronecker must prove it.
        let h = factor_over_q(&p(&[1, 0, 0, 0, 1]), cap).unwrap();
        assert_eq!(h.factors, vec![(p(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn factor_with_multiplicities_and_constant() {
        let cap = 8;
        // 3 (t - 1)^2 (t + 2)
        let f = p(&[1, -2, 1])
            .mul(&p(&[2, 1]))
            .scale(&rat_int(3));
        let fac = factor_over_q(&f, cap).unwrap();
        assert_eq!(fac.constant, rat_int(3));
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 2), (p(&[2, 1]), 1)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factor_rational_roots() {
        let cap = 8;
        // (3t - 2)(t + 5) = 3 (t - 2/3)(t + 5)
        let f = p(&[-2, 3]).mul(&p(&[5, 1]));
        let fac = factor_over_q(&f, cap).unwrap();
        assert_eq!(fac.constant, rat_int(3));
        assert_eq!(
            fac.factors,
            vec![
                (Polynomial::from_coeffs(vec![rat(-2, 3), rat_int(1)]), 1),
                (p(&[5, 1]), 1)
            ]
        );
    }

    #[test]
    fn kronecker_finds_quadratic_pairs() {
        let cap = 8;
        // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2), no rational roots.
        let f = p(&[4, 0, 0, 0, 1]);
        let fac = factor_over_q(&f, cap).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]
        );
        assert_eq!(fac.expand(), f);
        // Product of two distinct irreducible quadratics.
        let g = p(&[1, 0, 1]).mul(&p(&[1, 1, 1]));
        let gf = factor_over_q(&g, cap).unwrap();
        assert_eq!(gf.factors, vec![(p(&[1, 0, 1]), 1), (p(&[1, 1, 1]), 1)]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        // t^18 + t + 1 has no rational roots; searching divisors would need
        // degree 9 > 8.
        let mut coeffs = vec![0i64; 19];
        coeffs[0] = 1;
        coeffs[1] = 1;
        coeffs[18] = 1;
        let f = p(&coeffs);
        assert_eq!(
            factor_over_q(&f, 8),
            Err(PolyError::DegreeCapExceeded { needed: 9, cap: 8 })
        );
    }

    proptest! {
        #[test]
        fn factorization_remultiplies(
            c1 in -3i64..4, c0s in proptest::collection::vec(-4i64..5, 1..4), m in 1u32..3
        ) {
            // Build a product of monic linears and one quadratic, factor it,
            // and check the expansion matches exactly.
            let mut f = Polynomial::constant(rat_int(if c1 == 0 { 1 } else { c1 }));
            for &c in &c0s {
                f = f.mul(&p(&[c, 1]));
            }
            let quad = p(&[1, 1, 1]);
            for _ in 0..m {
                f = f.mul(&quad);
            }
            let fac = factor_over_q(&f, 8).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (irr, _) in &fac.factors {
                prop_assert!(irr.is_monic());
            }
        }
    }
}
