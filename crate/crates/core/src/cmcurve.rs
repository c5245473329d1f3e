//! Frobenius traces and eigenvalues of elliptic curves over prime fields, and
//! the CM count for `y² = x³ - x` through Gaussian primes.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_pow, fmt_rational, is_prime, pow_mod, rat, rat_int};
use crate::error::{Error, Result};
use crate::variety::ec_count;

/// `a + b·i` in `Z[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    pub fn norm(self) -> i128 {
        self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128
    }

    pub fn mul(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im < 0 { '-' } else { '+' };
        write!(f, "{} {} {}i", self.re, sign, self.im.abs())
    }
}

/// `a = p + 1 - |E(F_p)|` for `y² = x³ + Ax + B`.
pub fn frobenius_trace(a: i64, b: i64, p: u64) -> Result<BigInt> {
    Ok(BigInt::from(p) + 1 - ec_count(a, b, p)?)
}

/// `x² + y² = p` with `x ≥ y ≥ 0` by Cornacchia, for prime `p ≡ 1 (mod 4)`.
fn two_squares(p: u64) -> Option<(u64, u64)> {
    // a square root of -1: c^{(p-1)/4} for any non-residue c
    let c = (2..p).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)?;
    let mut r0 = p;
    let mut r1 = pow_mod(c, (p - 1) / 4, p);
    if r1 > p / 2 {
        r1 = p - r1;
    }
    while r1 * r1 > p {
        let r = r0 % r1;
        r0 = r1;
        r1 = r;
    }
    let rest = p - r1 * r1;
    let y = rest.sqrt();
    (y * y == rest).then(|| (r1.max(y), r1.min(y)))
}

/// The primary Gaussian prime `ψ = a + bi` over `p ≡ 1 (mod 4)`: `a` odd,
/// `b` even, `a + b ≡ 1 (mod 4)`. `None` for `p ≡ 3 (mod 4)`.
pub fn primary_gaussian_prime(p: u64) -> Result<Option<GaussianInt>> {
    if p <= 3 || !is_prime(p) {
        return Err(if is_prime(p) {
            Error::UnsupportedCharacteristic { p }
        } else {
            Error::InvalidPrime(p)
        });
    }
    if p % 4 == 3 {
        return Ok(None);
    }
    let (x, y) = two_squares(p)
        .ok_or_else(|| Error::Internal(format!("no two-square representation of {p}")))?;
    let (odd, even) = if x % 2 == 1 { (x, y) } else { (y, x) };
    let (odd, even) = (odd as i64, even as i64);
    for a in [odd, -odd] {
        for b in [even, -even] {
            if (a + b).rem_euclid(4) == 1 {
                return Ok(Some(GaussianInt::new(a, b)));
            }
        }
    }
    Err(Error::Internal(format!("no primary normalization for {p}")))
}

/// `ψ(𝔓) + ψ̄(𝔓)` for `y² = x³ - x`; zero in the supersingular case.
pub fn grossencharacter_trace_d1(p: u64) -> Result<BigInt> {
    Ok(match primary_gaussian_prime(p)? {
        Some(psi) => BigInt::from(2 * psi.re),
        None => BigInt::zero(),
    })
}

/// `x + y·√d` with rational `x, y` and an integer radicand `d` (not reduced),
/// which may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub rational: BigRational,
    pub sqrt_coeff: BigRational,
    pub radicand: BigInt,
}

impl QuadSurd {
    pub fn conj(&self) -> QuadSurd {
        QuadSurd {
            rational: self.rational.clone(),
            sqrt_coeff: -&self.sqrt_coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let x = self.rational.to_f64().unwrap_or(f64::NAN);
        let y = self.sqrt_coeff.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        if d < 0.0 {
            Complex64::new(x, y * (-d).sqrt())
        } else {
            Complex64::new(x + y * d.sqrt(), 0.0)
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_coeff.is_zero() {
            return f.write_str(&fmt_rational(&self.rational));
        }
        let sign = if self.sqrt_coeff.is_negative() { '-' } else { '+' };
        let c = self.sqrt_coeff.abs();
        let root = if self.radicand.is_negative() {
            format!("√{}·i", -&self.radicand)
        } else {
            format!("√{}", self.radicand)
        };
        let coeff = if c.is_one() {
            String::new()
        } else {
            format!("{}·", fmt_rational(&c))
        };
        write!(f, "{} {sign} {coeff}{root}", fmt_rational(&self.rational))
    }
}

/// Roots of `λ² - aλ + q`, stored exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    pub a: BigInt,
    pub q: BigInt,
    pub disc: BigInt,
    pub lambda1: QuadSurd,
    pub lambda2: QuadSurd,
}

impl FrobeniusData {
    /// `λ1 + λ2`, exactly.
    pub fn sum(&self) -> BigRational {
        &self.lambda1.rational + &self.lambda2.rational
    }

    /// `λ1 · λ2 = x² - y²·disc`, exactly.
    pub fn product(&self) -> BigRational {
        let x = &self.lambda1.rational;
        let y = &self.lambda1.sqrt_coeff;
        x * x - y * y * rat_int(self.disc.clone())
    }

    /// `|λ|² = x² + y²·|disc|`; meaningful when `disc < 0`.
    pub fn modulus_squared(&self) -> Option<BigRational> {
        if !self.disc.is_negative() {
            return None;
        }
        let x = &self.lambda1.rational;
        let y = &self.lambda1.sqrt_coeff;
        Some(x * x + y * y * rat_int(-&self.disc))
    }

    /// `s_m = λ1^m + λ2^m` for `m = 0..=m_max`.
    pub fn power_sums(&self, m_max: usize) -> Vec<BigInt> {
        power_sums(&self.a, &self.q, m_max)
    }
}

pub fn frobenius_eigenvalues(a: &BigInt, q: &BigInt) -> FrobeniusData {
    let disc = a * a - BigInt::from(4) * q;
    let half = rat(1, 2);
    let rational = rat_int(a.clone()) * &half;
    let lambda1 = QuadSurd {
        rational,
        sqrt_coeff: if disc.is_zero() { BigRational::zero() } else { half },
        radicand: disc.clone(),
    };
    let lambda2 = lambda1.conj();
    FrobeniusData {
        a: a.clone(),
        q: q.clone(),
        disc,
        lambda1,
        lambda2,
    }
}

/// `s_0 = 2`, `s_1 = a`, `s_m = a·s_{m-1} - q·s_{m-2}`.
pub fn power_sums(a: &BigInt, q: &BigInt, m_max: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::from(2), a.clone()];
    for m in 2..=m_max {
        let next = a * &s[m - 1] - q * &s[m - 2];
        s.push(next);
    }
    s.truncate(m_max + 1);
    s
}

/// `|E(F_q)| = 1 - a + q`.
pub fn count_via_character(a: &BigInt, q: &BigInt) -> Result<BigInt> {
    if q < &BigInt::one() {
        return Err(Error::InvalidFieldSize(q.to_string()));
    }
    if a * a > BigInt::from(4) * q {
        return Err(Error::HasseViolation {
            a: a.to_string(),
            q: q.to_string(),
        });
    }
    Ok(BigInt::one() - a + q)
}

/// `N_m = q^m + 1 - s_m` for `m = 1..=m_max`.
pub fn counts_over_extensions(a: &BigInt, q: &BigInt, m_max: usize) -> Vec<BigInt> {
    power_sums(a, q, m_max)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(m, s)| big_pow(q, m) + 1 - s)
        .collect()
}

/// One prime in a sweep over `y² = x³ - x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmRow {
    pub p: u64,
    pub count: BigInt,
    pub trace: BigInt,
    pub character_trace: BigInt,
    pub character_count: BigInt,
    pub psi: Option<GaussianInt>,
}

impl CmRow {
    pub fn agrees(&self) -> bool {
        self.trace == self.character_trace && self.count == self.character_count
    }
}

pub fn cm_row(p: u64) -> Result<CmRow> {
    let count = ec_count(-1, 0, p)?;
    let trace = BigInt::from(p) + 1 - &count;
    let psi = primary_gaussian_prime(p)?;
    let character_trace = grossencharacter_trace_d1(p)?;
    let character_count = count_via_character(&character_trace, &BigInt::from(p))?;
    Ok(CmRow {
        p,
        count,
        trace,
        character_trace,
        character_count,
        psi,
    })
}

/// Rows for every prime `p` in `[from, to]` with `p > 3`.
pub fn cm_sweep(from: u64, to: u64) -> Result<Vec<CmRow>> {
    (from.max(5)..=to).filter(|&p| is_prime(p)).map(cm_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::DEFAULT_BUDGET;
    use crate::variety::{count_points, VarietySpec};
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn traces() {
        assert_eq!(frobenius_trace(-1, 0, 5).unwrap(), b(-2));
        assert_eq!(frobenius_trace(-1, 0, 7).unwrap(), b(0));
        assert_eq!(frobenius_trace(-1, 0, 13).unwrap(), b(6));
        assert_eq!(frobenius_trace(0, 0, 5).unwrap_err(), Error::SingularCurve { p: 5 });
    }

    #[test]
    fn character_examples() {
        assert_eq!(grossencharacter_trace_d1(5).unwrap(), b(-2));
        assert_eq!(grossencharacter_trace_d1(13).unwrap(), b(6));
        assert_eq!(grossencharacter_trace_d1(7).unwrap(), b(0));
        assert_eq!(primary_gaussian_prime(5).unwrap(), Some(GaussianInt::new(-1, 2)));
        assert!(grossencharacter_trace_d1(3).is_err());
        assert!(grossencharacter_trace_d1(9).is_err());
    }

    #[test]
    fn character_matches_point_count_up_to_997() {
        for p in (5..=997u64).filter(|&p| is_prime(p)) {
            let row = cm_row(p).unwrap();
            assert!(row.agrees(), "p = {p}: {row:?}");
            if let Some(psi) = row.psi {
                assert_eq!(psi.norm(), p as i128);
                assert_eq!(psi.mul(psi.conj()), GaussianInt::new(p as i64, 0));
            }
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let f = frobenius_eigenvalues(&b(-2), &b(5));
        assert_eq!(f.lambda1.to_string(), "-1 + 1/2·√16·i");
        let z = f.lambda1.to_complex();
        assert!((z - Complex64::new(-1.0, 2.0)).norm() < 1e-12);
        assert_eq!(f.modulus_squared(), Some(rat(5, 1)));
        let f = frobenius_eigenvalues(&b(0), &b(7));
        assert!(f.lambda1.rational.is_zero());
        assert_eq!(f.product(), rat(7, 1));
        let f = frobenius_eigenvalues(&b(2), &b(1));
        assert_eq!(f.lambda1, f.lambda2);
        assert_eq!(f.lambda1.rational, rat(1, 1));
        assert_eq!(f.modulus_squared(), None);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_via_character(&b(-2), &b(5)).unwrap(), b(8));
        assert_eq!(count_via_character(&b(0), &b(7)).unwrap(), b(8));
        assert_eq!(count_via_character(&b(1), &b(1)).unwrap(), b(1));
        assert!(matches!(
            count_via_character(&b(0), &b(0)),
            Err(Error::InvalidFieldSize(_))
        ));
        assert!(matches!(
            count_via_character(&b(5), &b(5)),
            Err(Error::HasseViolation { .. })
        ));
    }

    #[test]
    fn extension_counts_match_enumeration() {
        for p in [5u64, 7, 11, 13] {
            for (a, bb) in [(-1i64, 0i64), (1, 1), (2, 3)] {
                let Ok(t) = frobenius_trace(a, bb, p) else { continue };
                let v = VarietySpec::weierstrass(a, bb, p).unwrap();
                let predicted = counts_over_extensions(&t, &b(p as i64), 2);
                for m in 1..=2 {
                    assert_eq!(
                        predicted[m - 1],
                        count_points(&v, m, DEFAULT_BUDGET).unwrap(),
                        "A={a} B={bb} p={p} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn power_sums_start() {
        assert_eq!(power_sums(&b(-2), &b(5), 3), vec![b(2), b(-2), b(-6), b(22)]);
        assert_eq!(power_sums(&b(1), &b(1), 0), vec![b(2)]);
    }

    proptest! {
        #[test]
        fn eigenvalue_invariants(q in 1i64..10_000, frac in -1.0f64..=1.0) {
            let bound = (4 * q).sqrt();
            let a = (frac * bound as f64).round() as i64;
            let f = frobenius_eigenvalues(&b(a), &b(q));
            prop_assert_eq!(f.sum(), rat(a, 1));
            prop_assert_eq!(f.product(), rat(q, 1));
            if let Some(m) = f.modulus_squared() {
                prop_assert_eq!(m, rat(q, 1));
            }
        }
    }
}
