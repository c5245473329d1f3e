//! Varieties over a prime field given by polynomial systems, and exhaustive
//! point counting over F_{p^m}.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{is_prime, pow_mod, MAX_PRIME};
use crate::error::{Error, Result};
use crate::ffield::{make_field, FieldSpec};

pub use parse::{parse_poly, parse_variety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Affine(usize),
    Projective(usize),
}

impl Ambient {
    pub fn num_vars(self) -> usize {
        match self {
            Ambient::Affine(n) => n,
            Ambient::Projective(n) => n + 1,
        }
    }

    /// Number of points of the ambient space over a field with `q` elements,
    /// `None` on overflow.
    pub fn size_over(self, q: u128) -> Option<u128> {
        match self {
            Ambient::Affine(n) => q.checked_pow(n as u32),
            Ambient::Projective(n) => {
                // 1 + q + .. + q^n
                let mut total: u128 = 0;
                let mut pw: u128 = 1;
                for _ in 0..=n {
                    total = total.checked_add(pw)?;
                    pw = pw.checked_mul(q)?;
                }
                Some(total)
            }
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Affine(n) => write!(f, "affine({n})"),
            Ambient::Projective(n) => write!(f, "projective({n})"),
        }
    }
}

/// Multivariate polynomial over F_p in canonical sparse form: exponent
/// vectors sorted, zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl SparsePoly {
    pub fn from_big_terms(nvars: usize, terms: BTreeMap<Vec<u32>, BigInt>, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut out = BTreeMap::new();
        for (k, v) in terms {
            let r = ((v % &pb) + &pb) % &pb;
            let r = r.to_u64().expect("reduced below p");
            if r != 0 {
                out.insert(k, r);
            }
        }
        SparsePoly { nvars, terms: out }
    }

    /// Builds from `(coefficient, exponents)` pairs, reducing mod `p`.
    pub fn from_terms(nvars: usize, terms: &[(i64, &[u32])], p: u64) -> Self {
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            *map.entry(e.to_vec()).or_insert_with(BigInt::zero) += BigInt::from(*c);
        }
        SparsePoly::from_big_terms(nvars, map, p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| if *k == 1 { format!("X{i}") } else { format!("X{i}^{k}") })
                    .collect();
                match (mono.is_empty(), *c) {
                    (true, c) => c.to_string(),
                    (false, 1) => mono.join("*"),
                    (false, c) => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    p: u64,
    ambient: Ambient,
    polys: Vec<SparsePoly>,
    dim: usize,
}

impl VarietySpec {
    pub fn new(p: u64, ambient: Ambient, polys: Vec<SparsePoly>, dim: usize) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidPrime(p));
        }
        for (i, f) in polys.iter().enumerate() {
            if f.nvars() != ambient.num_vars() {
                return Err(Error::DimensionMismatch {
                    expected: ambient.num_vars(),
                    got: f.nvars(),
                });
            }
            if matches!(ambient, Ambient::Projective(_)) && !f.is_homogeneous() {
                return Err(Error::NotHomogeneous { index: i });
            }
        }
        Ok(VarietySpec {
            p,
            ambient,
            polys,
            dim,
        })
    }

    /// All of projective `n`-space.
    pub fn projective_space(p: u64, n: usize) -> Result<Self> {
        VarietySpec::new(p, Ambient::Projective(n), Vec::new(), n)
    }

    /// Projective closure `Y²Z = X³ + A·XZ² + B·Z³` of a short Weierstrass curve.
    pub fn weierstrass(a: i64, b: i64, p: u64) -> Result<Self> {
        let f = SparsePoly::from_terms(
            3,
            &[
                (1, &[0, 2, 1]),
                (-1, &[3, 0, 0]),
                (-a, &[1, 0, 2]),
                (-b, &[0, 0, 3]),
            ],
            p,
        );
        VarietySpec::new(p, Ambient::Projective(2), vec![f], 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn polys(&self) -> &[SparsePoly] {
        &self.polys
    }

    /// Declared dimension (trusted input).
    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Exact counts `N_1..N_{m_max}` over F_{q^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCountSeries {
    pub q: u64,
    pub counts: Vec<BigInt>,
}

impl PointCountSeries {
    pub fn new(q: u64, counts: Vec<BigInt>) -> Self {
        PointCountSeries { q, counts }
    }

    pub fn from_u64(q: u64, counts: &[u64]) -> Self {
        PointCountSeries::new(q, counts.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Monomials compiled for evaluation: (coefficient, exponent per variable).
struct Compiled {
    polys: Vec<Vec<(u64, Vec<u32>)>>,
    max_exp: Vec<u32>,
}

impl Compiled {
    fn new(v: &VarietySpec) -> Self {
        let nv = v.ambient.num_vars();
        let polys: Vec<Vec<(u64, Vec<u32>)>> = v
            .polys
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.terms().map(|(e, c)| (c, e.to_vec())).collect())
            .collect();
        let mut max_exp = vec![0u32; nv];
        for f in &polys {
            for (_, e) in f {
                for (i, k) in e.iter().enumerate() {
                    max_exp[i] = max_exp[i].max(*k);
                }
            }
        }
        Compiled { polys, max_exp }
    }
}

/// Per-thread evaluation workspace.
struct Evaluator<'a> {
    field: &'a FieldSpec,
    compiled: &'a Compiled,
    m: usize,
    /// powers[var][e] flattened: coordinate `var` raised to `e`.
    powers: Vec<Vec<Vec<u64>>>,
    acc: Vec<u64>,
    term: Vec<u64>,
    tmp: Vec<u64>,
    scratch: Vec<u64>,
}

impl<'a> Evaluator<'a> {
    fn new(field: &'a FieldSpec, compiled: &'a Compiled) -> Self {
        let m = field.degree();
        let powers = compiled
            .max_exp
            .iter()
            .map(|&e| vec![vec![0u64; m]; e as usize + 1])
            .collect();
        Evaluator {
            field,
            compiled,
            m,
            powers,
            acc: vec![0; m],
            term: vec![0; m],
            tmp: vec![0; m],
            scratch: vec![0; 2 * m],
        }
    }

    fn load_point(&mut self, coords: &[Vec<u64>]) {
        for (var, table) in self.powers.iter_mut().enumerate() {
            if table.len() <= 1 {
                continue;
            }
            table[0].fill(0);
            table[0][0] = 1;
            table[1].copy_from_slice(&coords[var]);
            for e in 2..table.len() {
                let (lo, hi) = table.split_at_mut(e);
                self.field
                    .mul_raw(&lo[e - 1], &coords[var], &mut hi[0], &mut self.scratch);
            }
        }
    }

    fn all_vanish(&mut self) -> bool {
        let p = self.field.p();
        for f in &self.compiled.polys {
            self.acc.fill(0);
            for (c, e) in f {
                self.term.fill(0);
                self.term[0] = *c;
                for (var, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    self.field.mul_raw(
                        &self.term,
                        &self.powers[var][k as usize],
                        &mut self.tmp,
                        &mut self.scratch,
                    );
                    std::mem::swap(&mut self.term, &mut self.tmp);
                }
                for i in 0..self.m {
                    let s = self.acc[i] + self.term[i];
                    self.acc[i] = if s >= p { s - p } else { s };
                }
            }
            if self.acc.iter().any(|&c| c != 0) {
                return false;
            }
        }
        true
    }
}

/// Chunk size for parallel enumeration; the total is independent of it.
const CHUNK: u128 = 1 << 14;

/// Counts tuples `(fixed.., free)` with `free` ranging over `F^free_vars`
/// where all polynomials vanish.
fn count_block(
    field: &FieldSpec,
    compiled: &Compiled,
    prefix: &[Vec<u64>],
    free_vars: usize,
    q: u128,
) -> u128 {
    let total = q.pow(free_vars as u32);
    let m = field.degree();
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut ev = Evaluator::new(field, compiled);
            let mut coords: Vec<Vec<u64>> = prefix.to_vec();
            coords.extend((0..free_vars).map(|_| vec![0u64; m]));
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut hits = 0u128;
            for idx in start..end {
                let mut r = idx;
                for slot in coords[prefix.len()..].iter_mut() {
                    field.raw_from_index(r % q, slot);
                    r /= q;
                }
                ev.load_point(&coords);
                if ev.all_vanish() {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

/// Exact number of common zeros over F_{p^m}; projective points are counted
/// once through normalized representatives (first nonzero coordinate 1).
pub fn count_points(v: &VarietySpec, m: usize, budget: u64) -> Result<BigInt> {
    let field: Arc<FieldSpec> = make_field(v.p, m)?;
    let q = field.order().ok_or(Error::EnumerationBudgetExceeded {
        needed: u128::MAX,
        budget,
    })?;
    let needed = v.ambient.size_over(q).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::EnumerationBudgetExceeded { needed, budget });
    }
    let compiled = Compiled::new(v);
    if compiled.polys.is_empty() {
        return Ok(BigInt::from(needed));
    }
    let count = match v.ambient {
        Ambient::Affine(n) => count_block(&field, &compiled, &[], n, q),
        Ambient::Projective(n) => {
            let mut total = 0u128;
            for lead in 0..=n {
                let mut prefix = vec![vec![0u64; m]; lead];
                let mut one = vec![0u64; m];
                one[0] = 1;
                prefix.push(one);
                total += count_block(&field, &compiled, &prefix, n - lead, q);
            }
            total
        }
    };
    Ok(BigInt::from(count))
}

pub fn count_series(v: &VarietySpec, m_max: usize, budget: u64) -> Result<PointCountSeries> {
    let counts = (1..=m_max)
        .map(|m| count_points(v, m, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCountSeries::new(v.p, counts))
}

/// Quadratic character table `χ(x)` for `x ∈ [0, p)` by Euler's criterion.
pub fn quadratic_character_table(p: u64) -> Vec<i8> {
    let e = (p - 1) / 2;
    (0..p)
        .map(|x| match pow_mod(x, e, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        })
        .collect()
}

fn check_short_weierstrass(a: i64, b: i64, p: u64) -> Result<(u64, u64)> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::InvalidPrime(p));
    }
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic { p });
    }
    let pi = p as i128;
    let ar = (a as i128).rem_euclid(pi);
    let br = (b as i128).rem_euclid(pi);
    let disc = (4 * ar * ar % pi * ar + 27 * br * br) % pi;
    if disc == 0 {
        return Err(Error::SingularCurve { p });
    }
    Ok((ar as u64, br as u64))
}

/// `|E(F_p)|` for `y² = x³ + Ax + B`, including the point at infinity:
/// `p + 1 + Σ_x χ(x³ + Ax + B)`.
pub fn ec_count(a: i64, b: i64, p: u64) -> Result<BigInt> {
    let (ar, br) = check_short_weierstrass(a, b, p)?;
    let chi = quadratic_character_table(p);
    let pu = p as u128;
    let sum: i64 = (0..p as u128)
        .map(|x| {
            let rhs = (x * x % pu * x + ar as u128 * x + br as u128) % pu;
            chi[rhs as usize] as i64
        })
        .sum();
    Ok(BigInt::from(p as i64 + 1 + sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::DEFAULT_BUDGET;

    fn n(v: &VarietySpec, m: usize) -> BigInt {
        count_points(v, m, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn projective_spaces() {
        assert_eq!(n(&VarietySpec::projective_space(5, 1).unwrap(), 1), BigInt::from(6));
        assert_eq!(n(&VarietySpec::projective_space(2, 2).unwrap(), 2), BigInt::from(21));
        let s = count_series(&VarietySpec::projective_space(2, 1).unwrap(), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(s, PointCountSeries::from_u64(2, &[3, 5, 9]));
    }

    /// Enumerating every tuple and deduplicating projective classes by
    /// scaling is an independent route to the same count.
    fn orbit_count(v: &VarietySpec, m: usize) -> u64 {
        let field = make_field(v.p(), m).unwrap();
        let q = field.order().unwrap();
        let nv = v.ambient().num_vars();
        let compiled = Compiled::new(v);
        let mut ev = Evaluator::new(&field, &compiled);
        let mut zeros = 0u64;
        let mut coords = vec![vec![0u64; m]; nv];
        for idx in 0..q.pow(nv as u32) {
            let mut r = idx;
            for c in coords.iter_mut() {
                field.raw_from_index(r % q, c);
                r /= q;
            }
            if coords.iter().all(|c| c.iter().all(|x| *x == 0)) {
                continue;
            }
            ev.load_point(&coords);
            if ev.all_vanish() {
                zeros += 1;
            }
        }
        zeros / (q as u64 - 1)
    }

    #[test]
    fn elliptic_curve_over_f5_and_f25() {
        let e = VarietySpec::weierstrass(-1, 0, 5).unwrap();
        assert_eq!(n(&e, 1), BigInt::from(8));
        assert_eq!(orbit_count(&e, 1), 8);
        assert_eq!(n(&e, 2), BigInt::from(32));
        assert_eq!(orbit_count(&e, 2), 32);
    }

    #[test]
    fn constant_system_has_no_points() {
        for p in [2u64, 3, 7] {
            let one = parse_poly("1", 1, p).unwrap();
            let v = VarietySpec::new(p, Ambient::Affine(1), vec![one], 0).unwrap();
            let s = count_series(&v, 3, DEFAULT_BUDGET).unwrap();
            assert!(s.counts.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn projective_identity_for_empty_systems() {
        for p in [2u64, 3, 5, 7] {
            for nn in 1..=3usize {
                for m in 1..=3usize {
                    let q = (p as u128).pow(m as u32);
                    if q.pow(nn as u32 + 1) > 10_000 * q {
                        continue;
                    }
                    let v = VarietySpec::projective_space(p, nn).unwrap();
                    let expected = (q.pow(nn as u32 + 1) - 1) / (q - 1);
                    assert_eq!(n(&v, m), BigInt::from(expected));
                }
            }
        }
    }

    #[test]
    fn affine_count_of_a_conic() {
        // x^2 + y^2 = 1 over F_p has p - (-1|p) points
        for p in [3u64, 5, 7, 11, 13] {
            let f = parse_poly("X0^2 + X1^2 - 1", 2, p).unwrap();
            let v = VarietySpec::new(p, Ambient::Affine(2), vec![f], 1).unwrap();
            let leg = if p % 4 == 1 { 1 } else { -1 };
            assert_eq!(n(&v, 1), BigInt::from(p as i64 - leg));
        }
    }

    #[test]
    fn budget_enforced() {
        let v = VarietySpec::projective_space(5, 2).unwrap();
        let e = count_points(&v, 3, 1000).unwrap_err();
        assert_eq!(
            e,
            Error::EnumerationBudgetExceeded {
                needed: 125 * 125 + 125 + 1,
                budget: 1000
            }
        );
    }

    #[test]
    fn ec_count_examples_and_errors() {
        assert_eq!(ec_count(-1, 0, 5).unwrap(), BigInt::from(8));
        assert_eq!(ec_count(-1, 0, 7).unwrap(), BigInt::from(8));
        assert_eq!(
            ec_count(1, 1, 5).unwrap(),
            n(&VarietySpec::weierstrass(1, 1, 5).unwrap(), 1)
        );
        assert_eq!(ec_count(0, 0, 7).unwrap_err(), Error::SingularCurve { p: 7 });
        assert_eq!(ec_count(1, 1, 3).unwrap_err(), Error::UnsupportedCharacteristic { p: 3 });
    }

    #[test]
    fn ec_count_matches_enumeration_and_hasse() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for p in [5u64, 7, 11, 13] {
            let mut done = 0;
            while done < 50 {
                let a = rng.gen_range(0..p as i64);
                let b = rng.gen_range(0..p as i64);
                let Ok(fast) = ec_count(a, b, p) else { continue };
                let slow = n(&VarietySpec::weierstrass(a, b, p).unwrap(), 1);
                assert_eq!(fast, slow, "A={a} B={b} p={p}");
                let t: i64 = (BigInt::from(p + 1) - &fast).try_into().unwrap();
                assert!((t * t) as u64 <= 4 * p);
                done += 1;
            }
        }
    }
}
