//! Factorization of integer polynomials into irreducible factors over Q.
//!
//! Square-free decomposition is exact (Yun). Each square-free part is then
//! split by grouping its numeric roots: every candidate factor is rounded
//! to integer coefficients and accepted only after exact division in Z[t].
//! Candidates are tried in increasing degree, so each accepted factor is
//! irreducible.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::ZPoly;
use crate::roots::complex_roots;

/// Most root groups (real roots plus conjugate pairs) the subset search accepts.
const MAX_GROUPS: usize = 24;

/// `unit · Π f_i^{e_i}` with each `f_i` primitive and irreducible, signed so
/// its constant term (or, for `t`, its leading coefficient) is positive.
/// Factors are sorted by degree, then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(ZPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> ZPoly {
        self.factors
            .iter()
            .fold(ZPoly::new(vec![self.unit.clone()]), |acc, (f, e)| {
                acc.mul(&f.pow(*e))
            })
    }
}

/// Normalizes sign so the constant term is positive when nonzero, otherwise
/// the leading coefficient.
fn normalize_sign(f: ZPoly) -> ZPoly {
    let c0 = f.constant_term();
    let key = if c0.is_zero() { f.leading() } else { c0 };
    if key.is_negative() {
        f.neg()
    } else {
        f
    }
}

pub fn factor(p: &ZPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::Internal("cannot factor the zero polynomial".into()));
    }
    let prim = normalize_sign(p.primitive());
    let mut factors: Vec<(ZPoly, usize)> = Vec::new();
    for (mult, part) in prim.to_q().squarefree_decomposition() {
        for f in split_squarefree(&normalize_sign(part.primitive_part()))? {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.cmp(b))
            .then(ea.cmp(eb))
    });
    let mut out = Factorization {
        unit: BigInt::one(),
        factors,
    };
    out.unit = p.leading() / out.expand().leading();
    if &out.expand() != p {
        return Err(Error::Internal(format!(
            "factorization of {p} does not expand back"
        )));
    }
    Ok(out)
}

pub fn is_irreducible(p: &ZPoly) -> Result<bool> {
    if p.deg() == 0 {
        return Ok(false);
    }
    let f = factor(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Groups roots into real singletons and conjugate pairs.
fn group_roots(roots: &[Complex64]) -> Vec<Vec<Complex64>> {
    let mut remaining: Vec<Complex64> = roots.to_vec();
    let mut groups = Vec::new();
    while let Some(z) = remaining.pop() {
        let tol = 1e-7 * z.norm().max(1.0);
        if z.im.abs() <= tol {
            groups.push(vec![Complex64::new(z.re, 0.0)]);
            continue;
        }
        let conj = z.conj();
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (w - conj).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, cur| {
                if cur.1 < best.1 {
                    cur
                } else {
                    best
                }
            });
        if idx == usize::MAX {
            groups.push(vec![z]);
        } else {
            let w = remaining.swap_remove(idx);
            groups.push(vec![z, w]);
        }
    }
    groups
}

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Real polynomial `Π (x - r)` from the roots, coefficients low-to-high.
fn monic_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c
}

fn round_candidate(real: &[Complex64], scale: f64) -> Option<ZPoly> {
    let mut out = Vec::with_capacity(real.len());
    for c in real {
        let v = c.re * scale;
        let r = v.round();
        if (v - r).abs() > 1e-4 * v.abs().max(1.0) || c.im.abs() * scale > 1e-4 * v.abs().max(1.0)
        {
            return None;
        }
        out.push(BigInt::from(r as i128));
    }
    Some(ZPoly::new(out))
}

/// Splits a primitive square-free polynomial into irreducible factors.
fn split_squarefree(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let mut f = f.clone();
    let mut out = Vec::new();
    // Factor out t exactly.
    while f.deg() > 0 && f.constant_term().is_zero() {
        out.push(ZPoly::from_ints(&[0, 1]));
        f = f.exact_div(&ZPoly::from_ints(&[0, 1])).expect("t divides");
    }
    if f.deg() <= 1 {
        if f.deg() == 1 {
            out.push(f);
        }
        return Ok(out);
    }
    let roots = complex_roots(&f)?;
    let mut groups = group_roots(&roots);
    if groups.len() > MAX_GROUPS {
        return Err(Error::Internal(format!(
            "degree {} too large for factor search",
            f.deg()
        )));
    }
    let mut target = 1;
    while f.deg() > 0 && target * 2 <= f.deg() {
        let mut found = None;
        let n = groups.len();
        'search: for mask in 1u32..(1u32 << n) {
            let deg: usize = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| groups[i].len())
                .sum();
            if deg != target {
                continue;
            }
            let chosen: Vec<Complex64> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .flat_map(|i| groups[i].iter().copied())
                .collect();
            let monic = monic_from_roots(&chosen);
            let leads = positive_divisors(&f.leading()).unwrap_or_else(|| vec![f.leading().abs()]);
            for a in leads {
                let Some(cand) = round_candidate(&monic, a.to_f64().unwrap_or(f64::INFINITY))
                else {
                    continue;
                };
                if cand.deg() != target {
                    continue;
                }
                if let Some(q) = f.exact_div(&cand) {
                    found = Some((mask, normalize_sign(cand.primitive()), q));
                    break 'search;
                }
            }
        }
        match found {
            Some((mask, g, q)) => {
                out.push(g);
                f = normalize_sign(q);
                groups = groups
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, g)| g)
                    .collect();
            }
            None => target += 1,
        }
    }
    if f.deg() > 0 {
        out.push(normalize_sign(f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_ints(c)
    }

    #[test]
    fn splits_zeta_denominator() {
        // (1 - t)(1 - 3t)(1 - 9t)
        let p = z(&[1, -1]).mul(&z(&[1, -3])).mul(&z(&[1, -9]));
        let f = factor(&p).unwrap();
        assert_eq!(
            f.factors,
            vec![(z(&[1, -9]), 1), (z(&[1, -3]), 1), (z(&[1, -1]), 1)]
        );
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn keeps_irreducible_quadratic_whole() {
        let p = z(&[1, 2, 5]).mul(&z(&[1, -1]));
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.contains(&(z(&[1, 2, 5]), 1)));
        assert!(is_irreducible(&z(&[-2, 0, 1])).unwrap());
        assert!(is_irreducible(&z(&[1, 0, -10, 0, 1])).unwrap());
        assert!(!is_irreducible(&z(&[4, 0, -5, 0, 1])).unwrap()); // (x^2-1)(x^2-4)
    }

    #[test]
    fn multiplicities_and_units() {
        let p = z(&[1, -5]).pow(2).mul(&z(&[1, -1])).scale(&BigInt::from(-3));
        let f = factor(&p).unwrap();
        assert_eq!(f.unit, BigInt::from(-3));
        assert!(f.factors.contains(&(z(&[1, -5]), 2)));
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn quartic_splitting_into_quadratics() {
        // (x^2 - 2)(x^2 - 3): irreducible quadratics with real roots
        let p = z(&[-2, 0, 1]).mul(&z(&[-3, 0, 1]));
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(is_irreducible(&z(&[1, 0, 0, 0, 1])).unwrap());
    }
}
