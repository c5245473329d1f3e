//! Exact arithmetic in a real number field `Q(θ)`, where `θ` is one real root
//! of a monic irreducible integer polynomial, singled out by an isolating
//! interval. Signs and comparisons are decided by refining that interval.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{common_denominator, fmt_rational, rat_int, rational_to_decimal};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::linalg::{charpoly, RatMatrix};
use crate::poly::{sturm_count, QPoly, ZPoly};

pub struct NumberField {
    minpoly: ZPoly,
    minpoly_q: QPoly,
    /// Current isolating interval `(lo, hi]`; only ever shrinks.
    interval: Mutex<(BigRational, BigRational)>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.interval();
        f.debug_struct("NumberField")
            .field("minpoly", &self.minpoly.to_string())
            .field("interval", &(fmt_rational(&lo), fmt_rational(&hi)))
            .finish()
    }
}

impl NumberField {
    /// The root of `minpoly` in `(lo, hi]`, which must be unique.
    pub fn new(minpoly: &ZPoly, lo: BigRational, hi: BigRational) -> Result<Arc<Self>> {
        if minpoly.deg() == 0 || !minpoly.leading().is_one() {
            return Err(Error::InvalidNumberField(format!(
                "{minpoly} is not monic of positive degree"
            )));
        }
        if !is_irreducible(minpoly)? {
            return Err(Error::InvalidNumberField(format!(
                "{minpoly} is reducible over Q"
            )));
        }
        if lo >= hi {
            return Err(Error::InvalidNumberField(format!(
                "empty interval [{}, {}]",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        let mq = minpoly.to_q();
        let n = mq.count_real_roots(&lo, &hi);
        if n != 1 {
            return Err(Error::InvalidNumberField(format!(
                "{n} roots of {minpoly} in ({}, {}]",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        Ok(Arc::new(NumberField {
            minpoly: minpoly.clone(),
            minpoly_q: mq,
            interval: Mutex::new((lo, hi)),
        }))
    }

    /// `Q` itself, as `Q(θ)` with `θ = 0`.
    pub fn rationals() -> Arc<Self> {
        NumberField::new(&ZPoly::from_ints(&[0, 1]), BigRational::from_integer((-1).into()), BigRational::one())
            .expect("x is irreducible with one root in (-1, 1]")
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn minpoly(&self) -> &ZPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> (BigRational, BigRational) {
        self.interval.lock().expect("interval lock").clone()
    }

    /// Halves the isolating interval once.
    fn bisect(&self) {
        let mut guard = self.interval.lock().expect("interval lock");
        let (lo, hi) = guard.clone();
        let mid = (&lo + &hi) / rat_int(2);
        let at_mid = self.minpoly_q.eval(&mid);
        if at_mid.is_zero() {
            // rational root: only possible in degree one
            *guard = (&mid - (&hi - &lo) / rat_int(4), mid);
        } else if self.minpoly_q.eval(&lo).is_positive() != at_mid.is_positive() {
            // the root is simple and alone in (lo, hi], so a sign change locates it
            *guard = (lo, mid);
        } else {
            *guard = (mid, hi);
        }
    }

    /// Same defining polynomial and the same chosen root.
    pub fn same_as(&self, other: &NumberField) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.minpoly != other.minpoly {
            return false;
        }
        let (a, b) = self.interval();
        let (c, d) = other.interval();
        let lo = a.max(c);
        let hi = b.min(d);
        lo < hi && self.minpoly_q.count_real_roots(&lo, &hi) == 1
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<RealAlgebraic> {
        if coords.len() > self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        let mut coords = coords;
        coords.resize(self.degree(), BigRational::zero());
        Ok(RealAlgebraic {
            field: Arc::clone(self),
            coords,
        })
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> RealAlgebraic {
        self.element(vec![r]).expect("degree is positive")
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> RealAlgebraic {
        self.from_rational(rat_int(v))
    }

    /// The generator `θ` (or the rational root itself in degree one).
    pub fn theta(self: &Arc<Self>) -> RealAlgebraic {
        if self.degree() == 1 {
            return self.from_rational(-rat_int(self.minpoly.coeff(0)));
        }
        self.element(vec![BigRational::zero(), BigRational::one()])
            .expect("degree at least two")
    }
}

/// `Σ c_k θ^k` with rational coordinates in the power basis.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coords == other.coords
    }
}

impl Eq for RealAlgebraic {}

impl RealAlgebraic {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn as_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    fn from_poly(&self, p: QPoly) -> RealAlgebraic {
        let r = p.rem(&self.field.minpoly_q);
        let mut coords = r.coeffs().to_vec();
        coords.resize(self.field.degree(), BigRational::zero());
        RealAlgebraic {
            field: Arc::clone(&self.field),
            coords,
        }
    }

    fn check(&self, other: &RealAlgebraic) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &RealAlgebraic) -> Result<RealAlgebraic> {
        self.check(other)?;
        Ok(RealAlgebraic {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &RealAlgebraic) -> Result<RealAlgebraic> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RealAlgebraic {
        RealAlgebraic {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> RealAlgebraic {
        RealAlgebraic {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &RealAlgebraic) -> Result<RealAlgebraic> {
        self.check(other)?;
        Ok(self.from_poly(self.as_poly().mul(&other.as_poly())))
    }

    pub fn pow(&self, e: usize) -> RealAlgebraic {
        let mut acc = self.field.from_int(1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm against the minimal
    /// polynomial.
    pub fn inv(&self) -> Result<RealAlgebraic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // s·a + t·m = 1
        let (mut r0, mut r1) = (self.field.minpoly_q.clone(), self.as_poly());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant because the minimal polynomial is irreducible
        let c = BigRational::one() / r0.coeff(0);
        Ok(self.from_poly(s0.scale(&c)))
    }

    pub fn div(&self, other: &RealAlgebraic) -> Result<RealAlgebraic> {
        self.mul(&other.inv()?)
    }

    /// Exact sign of the real number.
    pub fn signum(&self) -> Ordering {
        let a = self.as_poly();
        match a.degree() {
            None => return Ordering::Equal,
            Some(0) => return a.coeff(0).cmp(&BigRational::zero()),
            _ => {}
        }
        let s = a.squarefree();
        let seq = s.sturm_sequence();
        loop {
            let (lo, hi) = self.field.interval();
            if !s.eval(&lo).is_zero() && sturm_count(&seq, &lo, &hi) == 0 {
                return a.eval(&hi).cmp(&BigRational::zero());
            }
            self.field.bisect();
        }
    }

    pub fn compare(&self, other: &RealAlgebraic) -> Result<Ordering> {
        Ok(self.sub(other)?.signum())
    }

    /// Largest integer `≤ self`.
    pub fn floor(&self) -> BigInt {
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        let at = |n: &BigInt| self.sub(&self.field.from_rational(rat_int(n.clone()))).expect("same field").signum();
        while at(&n) == Ordering::Less {
            n -= 1;
        }
        while at(&(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    /// Rational approximation within `tol` of the value.
    pub fn approximate(&self, tol: &BigRational) -> BigRational {
        let a = self.as_poly();
        loop {
            let (lo, hi) = self.field.interval();
            // |a(x) - a(y)| ≤ |x - y| · Σ k|a_k| R^{k-1}
            let r = lo.abs().max(hi.abs());
            let mut lip = BigRational::zero();
            let mut rk = BigRational::one();
            for k in 1..a.coeffs().len() {
                lip += a.coeff(k).abs() * rat_int(k as i64) * &rk;
                rk *= &r;
            }
            if (&hi - &lo) * lip <= *tol {
                return a.eval(&hi);
            }
            self.field.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(18));
        self.approximate(&tol).to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion to `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 2));
        rational_to_decimal(&self.approximate(&tol), digits)
    }

    /// Matrix of multiplication by `self` on the power basis; column `j` is
    /// `self · θ^j`.
    pub fn mult_matrix(&self) -> RatMatrix {
        let n = self.field.degree();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        let mut basis = QPoly::one();
        for j in 0..n {
            let col = self.from_poly(self.as_poly().mul(&basis));
            for i in 0..n {
                m[i][j] = col.coords[i].clone();
            }
            basis = basis.mul(&QPoly::x());
        }
        m
    }

    pub fn trace(&self) -> BigRational {
        let m = self.mult_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// Characteristic polynomial of the multiplication map, monic over Q.
    pub fn charpoly(&self) -> QPoly {
        let m = self.mult_matrix();
        let d = common_denominator(m.iter().flatten());
        let scaled: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| row.iter().map(|v| (v * rat_int(d.clone())).to_integer()).collect())
            .collect();
        // χ_A(x) = d^{-n} χ_{dA}(d x)
        let n = m.len();
        let dq = rat_int(d.clone());
        charpoly(&scaled)
            .to_q()
            .scale_arg(&dq)
            .scale(&(BigRational::one() / dq.pow(n as i32)))
    }

    /// Monic minimal polynomial over Q.
    pub fn minimal_polynomial(&self) -> QPoly {
        self.charpoly().squarefree().monic()
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_rational(c),
                1 => format!("{}·θ", fmt_rational(c)),
                _ => format!("{}·θ^{k}", fmt_rational(c)),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    /// Q(√2, √3) = Q(θ), θ = √2 + √3 the root of x⁴ - 10x² + 1 in (3, 4].
    pub(crate) fn biquadratic() -> Arc<NumberField> {
        NumberField::new(&ZPoly::from_ints(&[1, 0, -10, 0, 1]), rat(3, 1), rat(4, 1)).unwrap()
    }

    fn sqrt2_field() -> Arc<NumberField> {
        NumberField::new(&ZPoly::from_ints(&[-2, 0, 1]), rat(1, 1), rat(2, 1)).unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(NumberField::new(&ZPoly::from_ints(&[-4, 0, 1]), rat(1, 1), rat(3, 1)).is_err());
        assert!(NumberField::new(&ZPoly::from_ints(&[-2, 0, 1]), rat(-2, 1), rat(2, 1)).is_err());
        assert!(NumberField::new(&ZPoly::from_ints(&[-2, 0, 2]), rat(1, 1), rat(2, 1)).is_err());
        assert!(NumberField::new(&ZPoly::from_ints(&[-2, 0, 1]), rat(2, 1), rat(3, 1)).is_err());
        let q = NumberField::new(&ZPoly::from_ints(&[-3, 1]), rat(0, 1), rat(5, 1)).unwrap();
        assert_eq!(q.theta().coords(), &[rat(3, 1)]);
    }

    #[test]
    fn sqrt2_arithmetic_and_sign() {
        let k = sqrt2_field();
        let r = k.theta();
        assert_eq!(r.mul(&r).unwrap(), k.from_int(2));
        let x = k.element(vec![rat(-7, 5), rat(1, 1)]).unwrap(); // √2 - 1.4 > 0
        assert_eq!(x.signum(), Ordering::Greater);
        let y = k.element(vec![rat(-142, 100), rat(1, 1)]).unwrap(); // √2 - 1.42 < 0
        assert_eq!(y.signum(), Ordering::Less);
        let inv = x.inv().unwrap();
        assert_eq!(inv.mul(&x).unwrap(), k.from_int(1));
        assert_eq!(r.to_decimal(30), "1.41421356237309504880168872420");
        assert_eq!(r.floor(), BigInt::from(1));
        assert_eq!(r.neg().floor(), BigInt::from(-2));
    }

    #[test]
    fn biquadratic_embeddings() {
        let k = biquadratic();
        let t = k.theta();
        let half = rat(1, 2);
        // √2 = (θ³ - 9θ)/2, √3 = (11θ - θ³)/2
        let s2 = t.pow(3).sub(&t.scale(&rat(9, 1))).unwrap().scale(&half);
        let s3 = t.scale(&rat(11, 1)).sub(&t.pow(3)).unwrap().scale(&half);
        assert_eq!(s2.mul(&s2).unwrap(), k.from_int(2));
        assert_eq!(s3.mul(&s3).unwrap(), k.from_int(3));
        assert_eq!(s2.signum(), Ordering::Greater);
        assert_eq!(s2.compare(&s3).unwrap(), Ordering::Less);
        assert!((s2.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s2.minimal_polynomial(), QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(t.minimal_polynomial(), QPoly::from_ints(&[1, 0, -10, 0, 1]));
        assert_eq!(s2.trace(), rat(0, 1));
    }

    #[test]
    fn field_mismatch() {
        let a = sqrt2_field().theta();
        let b = biquadratic().theta();
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
        // separately built copies of the same field are compatible
        let c = sqrt2_field().theta();
        assert!(a.add(&c).is_ok());
        let other_root = NumberField::new(&ZPoly::from_ints(&[-2, 0, 1]), rat(-2, 1), rat(-1, 1)).unwrap();
        assert_eq!(a.add(&other_root.theta()).unwrap_err(), Error::FieldMismatch);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn order_matches_difference_sign(
            a in proptest::collection::vec(-20i64..20, 4),
            b in proptest::collection::vec(-20i64..20, 4),
        ) {
            let k = biquadratic();
            let x = k.element(a.iter().map(|&v| rat(v, 1)).collect()).unwrap();
            let y = k.element(b.iter().map(|&v| rat(v, 1)).collect()).unwrap();
            let ord = x.compare(&y).unwrap();
            prop_assert_eq!(ord, y.compare(&x).unwrap().reverse());
            prop_assert_eq!(ord, x.sub(&y).unwrap().signum());
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-6 {
                prop_assert_eq!(ord, fx.partial_cmp(&fy).unwrap());
            }
            if !x.is_zero() {
                prop_assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), k.from_int(1));
            }
        }
    }
}
