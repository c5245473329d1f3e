//! Prime fields F_p and extensions F_{p^m} = F_p[x]/(f).
//!
//! Elements are coefficient vectors (low-to-high) of length `m` with entries
//! in `[0, p)`. The modulus `f` is the lexicographically smallest monic
//! irreducible polynomial of degree `m`, comparing `(c_0, .., c_{m-1})`.

use std::fmt;
use std::sync::Arc;

use crate::arith::{inv_mod, is_prime, mul_mod, MAX_PRIME};
use crate::error::{Error, Result};

/// Default cap on the number of elements or tuples an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic, length `m + 1`.
    modulus: Vec<u64>,
}

/// Polynomials over F_p as coefficient vectors; helpers for the
/// irreducibility test.
mod fp_poly {
    use super::*;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let k = r.len() - 1 - df;
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            for (j, fj) in f.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, *fj, p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(*x, *y, p)) % p;
            }
        }
        rem(&out, f, p)
    }

    pub fn pow_mod_poly(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod_poly(&acc, &b, f, p);
            }
            b = mul_mod_poly(&b, &b, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `gcd(x^{p^i} - x, f) = 1` for `i ≤ m/2` and `x^{p^m} ≡ x (mod f)`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        if m <= 1 {
            return m == 1;
        }
        let x = vec![0u64, 1];
        let mut h = x.clone();
        for i in 1..=m {
            h = pow_mod_poly(&h, p, f, p);
            if i <= m / 2 {
                let g = gcd(&sub(&h, &x, p), f, p);
                if g.len() > 1 {
                    return false;
                }
            }
        }
        rem(&sub(&h, &x, p), f, p).is_empty()
    }
}

pub fn is_irreducible_mod_p(modulus: &[u64], p: u64) -> bool {
    fp_poly::is_irreducible(modulus, p)
}

/// Builds F_{p^m} with the lexicographically smallest irreducible modulus.
pub fn make_field(p: u64, m: usize) -> Result<Arc<FieldSpec>> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::InvalidPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidDegree);
    }
    if m == 1 {
        return Ok(Arc::new(FieldSpec {
            p,
            m,
            modulus: vec![0, 1],
        }));
    }
    // c_0 is the most significant position; c_0 = 0 is always reducible.
    let mut tail = vec![0u64; m];
    tail[0] = 1;
    loop {
        let mut f = tail.clone();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return Ok(Arc::new(FieldSpec { p, m, modulus: f }));
        }
        // increment (c_0, .., c_{m-1}) with c_{m-1} least significant
        let mut k = m - 1;
        loop {
            tail[k] += 1;
            if tail[k] < p {
                break;
            }
            tail[k] = 0;
            if k == 0 {
                return Err(Error::Internal(format!(
                    "no irreducible polynomial of degree {m} over F_{p}"
                )));
            }
            k -= 1;
        }
    }
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Monic modulus, coefficients low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `q = p^m`, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.m as u32)
    }

    pub fn zero_raw(&self) -> Vec<u64> {
        vec![0; self.m]
    }

    pub fn add_raw(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        for i in 0..self.m {
            let s = a[i] + b[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
    }

    pub fn sub_raw(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        for i in 0..self.m {
            out[i] = if a[i] >= b[i] {
                a[i] - b[i]
            } else {
                a[i] + self.p - b[i]
            };
        }
    }

    /// `out = a·b mod f`; `scratch` must hold `2m - 1` entries.
    pub fn mul_raw(&self, a: &[u64], b: &[u64], out: &mut [u64], scratch: &mut [u64]) {
        let m = self.m;
        let p = self.p;
        if m == 1 {
            out[0] = mul_mod(a[0], b[0], p);
            return;
        }
        let buf = &mut scratch[..2 * m - 1];
        buf.fill(0);
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                buf[i + j] = (buf[i + j] + a[i] * b[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = buf[k];
            if c == 0 {
                continue;
            }
            let shift = k - m;
            for j in 0..m {
                buf[shift + j] = (buf[shift + j] + (p - self.modulus[j]) * c) % p;
            }
            buf[k] = 0;
        }
        out.copy_from_slice(&buf[..m]);
    }

    /// Element with coefficient index `i = Σ c_j p^j`.
    pub fn raw_from_index(&self, mut index: u128, out: &mut [u64]) {
        for c in out.iter_mut().take(self.m) {
            *c = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
    }

    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> FFElement {
        let mut c = vec![0u64; self.m];
        // Reduce arbitrary-length input modulo f.
        let reduced = fp_poly::rem(
            &coeffs.iter().map(|v| v % self.p).collect::<Vec<_>>(),
            &self.modulus,
            self.p,
        );
        c[..reduced.len()].copy_from_slice(&reduced);
        FFElement {
            field: Arc::clone(self),
            coeffs: c,
        }
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FFElement {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.element(&[r])
    }

    pub fn zero(self: &Arc<Self>) -> FFElement {
        self.element(&[])
    }

    pub fn one(self: &Arc<Self>) -> FFElement {
        self.element(&[1])
    }

    /// The class of `x` (the generator of the extension).
    pub fn generator(self: &Arc<Self>) -> FFElement {
        self.element(&[0, 1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

impl FFElement {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn index(&self) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.field.p as u128 + c as u128)
    }

    fn check(&self, other: &FFElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, coeffs: Vec<u64>) -> FFElement {
        FFElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn add(&self, other: &FFElement) -> Result<FFElement> {
        self.check(other)?;
        let mut out = self.field.zero_raw();
        self.field.add_raw(&self.coeffs, &other.coeffs, &mut out);
        Ok(self.with(out))
    }

    pub fn sub(&self, other: &FFElement) -> Result<FFElement> {
        self.check(other)?;
        let mut out = self.field.zero_raw();
        self.field.sub_raw(&self.coeffs, &other.coeffs, &mut out);
        Ok(self.with(out))
    }

    pub fn neg(&self) -> FFElement {
        let mut out = self.field.zero_raw();
        self.field
            .sub_raw(&self.field.zero_raw(), &self.coeffs, &mut out);
        self.with(out)
    }

    pub fn mul(&self, other: &FFElement) -> Result<FFElement> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &FFElement) -> FFElement {
        let mut out = self.field.zero_raw();
        let mut scratch = vec![0u64; 2 * self.field.m];
        self.field
            .mul_raw(&self.coeffs, &other.coeffs, &mut out, &mut scratch);
        self.with(out)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in F_p[x].
    pub fn inv(&self) -> Result<FFElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        // Invariant: s_i · a ≡ r_i (mod f)
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        fp_poly::trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (q, r) = div_rem_fp(&r0, &r1, p);
            let qs = poly_mul_fp(&q, &s1, p);
            let s2 = fp_poly::sub(&s0, &qs, p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant
        let c = inv_mod(r1[0], p);
        let s: Vec<u64> = s1.iter().map(|v| mul_mod(*v, c, p)).collect();
        Ok(self.field.element(&s))
    }

    pub fn div(&self, other: &FFElement) -> Result<FFElement> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Square-and-multiply.
    pub fn pow(&self, mut e: u64) -> FFElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }
}

fn poly_mul_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(*x, *y, p)) % p;
        }
    }
    fp_poly::trim(&mut out);
    out
}

fn div_rem_fp(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_poly::trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        q[k] = c;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mul_mod(c, *bj, p)) % p;
        }
        fp_poly::trim(&mut r);
    }
    fp_poly::trim(&mut q);
    (q, r)
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Restartable iterator over all `q` elements in coefficient order
/// (`0, 1, .., p-1, x, x+1, ..`).
#[derive(Clone, Debug)]
pub struct FieldElements {
    field: Arc<FieldSpec>,
    next: u128,
    end: u128,
}

impl Iterator for FieldElements {
    type Item = FFElement;

    fn next(&mut self) -> Option<FFElement> {
        if self.next >= self.end {
            return None;
        }
        let mut c = self.field.zero_raw();
        self.field.raw_from_index(self.next, &mut c);
        self.next += 1;
        Some(FFElement {
            field: Arc::clone(&self.field),
            coeffs: c,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FieldElements {}

pub fn enumerate_field(spec: &Arc<FieldSpec>, budget: u64) -> Result<FieldElements> {
    let q = spec.order().unwrap_or(u128::MAX);
    if q > budget as u128 {
        return Err(Error::EnumerationBudgetExceeded { needed: q, budget });
    }
    Ok(FieldElements {
        field: Arc::clone(spec),
        next: 0,
        end: q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// Exhaustive oracle: a monic polynomial of degree 2 or 3 over F_p is
    /// irreducible iff it has no root in F_p.
    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| f.iter().rev().fold(0u64, |acc, c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(make_field(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn lexicographic_choice_matches_root_scan() {
        for p in [2u64, 3, 5, 7] {
            for m in [2usize, 3] {
                // first tuple (c0, .., c_{m-1}) with no root, c0 most significant
                let mut expected = None;
                'scan: for idx in 0..p.pow(m as u32) {
                    let mut tail = vec![0u64; m];
                    let mut r = idx;
                    for k in (0..m).rev() {
                        tail[k] = r % p;
                        r /= p;
                    }
                    let mut f = tail.clone();
                    f.push(1);
                    if !has_root(&f, p) {
                        expected = Some(f);
                        break 'scan;
                    }
                }
                assert_eq!(
                    make_field(p, m).unwrap().modulus(),
                    expected.unwrap().as_slice()
                );
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::InvalidPrime(4));
        assert_eq!(make_field(1, 1).unwrap_err(), Error::InvalidPrime(1));
        assert_eq!(make_field(5, 0).unwrap_err(), Error::InvalidDegree);
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.from_int(3).mul(&f5.from_int(4)).unwrap(), f5.from_int(2));
        let f4 = make_field(2, 2).unwrap();
        let x = f4.generator();
        assert_eq!(x.mul(&x).unwrap(), f4.element(&[1, 1]));
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(x.add(&f9.one()).unwrap_err(), Error::FieldMismatch);
        assert_eq!(f9.zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn inverse_for_every_nonzero_element() {
        for (p, m) in [(2u64, 3usize), (3, 2), (5, 2), (7, 1), (2, 4)] {
            let f = make_field(p, m).unwrap();
            for a in enumerate_field(&f, DEFAULT_BUDGET).unwrap().skip(1) {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), f.one(), "{a}");
            }
        }
    }

    #[test]
    fn enumeration_order_and_uniqueness() {
        let f2 = make_field(2, 1).unwrap();
        let e: Vec<String> = enumerate_field(&f2, 10).unwrap().map(|a| a.to_string()).collect();
        assert_eq!(e, ["0", "1"]);
        let f4 = make_field(2, 2).unwrap();
        let e: Vec<String> = enumerate_field(&f4, 10).unwrap().map(|a| a.to_string()).collect();
        assert_eq!(e, ["0", "1", "x", "x + 1"]);
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut m = 1;
            while p.pow(m as u32) <= 10_000 {
                let f = make_field(p, m).unwrap();
                let set: HashSet<Vec<u64>> = enumerate_field(&f, 10_000)
                    .unwrap()
                    .map(|a| a.coeffs().to_vec())
                    .collect();
                assert_eq!(set.len() as u64, p.pow(m as u32));
                m += 1;
            }
        }
        let f = make_field(3, 2).unwrap();
        assert!(matches!(
            enumerate_field(&f, 8),
            Err(Error::EnumerationBudgetExceeded { needed: 9, budget: 8 })
        ));
        // restartable
        let it = enumerate_field(&f, 100).unwrap();
        assert_eq!(it.clone().count(), it.count());
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(make_field(7, 3).unwrap(), make_field(7, 3).unwrap());
    }

    fn arb_field() -> impl Strategy<Value = Arc<FieldSpec>> {
        prop_oneof![
            Just((2u64, 3usize)),
            Just((3, 2)),
            Just((5, 2)),
            Just((7, 3)),
            Just((13, 1)),
            Just((2, 8))
        ]
        .prop_map(|(p, m)| make_field(p, m).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms_and_frobenius(
            f in arb_field(),
            a in any::<u64>(), b in any::<u64>(), c in any::<u64>()
        ) {
            let q = f.order().unwrap();
            let el = |seed: u64| {
                let mut raw = f.zero_raw();
                f.raw_from_index(seed as u128 % q, &mut raw);
                f.element(&raw)
            };
            let (a, b, c) = (el(a), el(b), el(c));
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.pow(q as u64), a.clone());
            prop_assert_eq!(a.sub(&b).unwrap().add(&b).unwrap(), a);
        }
    }
}
