//! Dimension groups `lim (Z^b --T--> Z^b --T--> ..)` of primitive integer
//! matrices, their Perron-Frobenius trace into `Q(λ)`, and the shift.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{NumberField, RealAlgebraic};
use crate::arith::{is_prime, rat_int};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::linalg::{charpoly, det, mat_mul, mat_vec, IntMatrix};
use crate::poly::{sturm_count, ZPoly};

/// Square non-negative integer matrix, optionally tagged with the
/// determinant `ℓ` it is meant to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeLikeMatrix {
    t: IntMatrix,
    ell: Option<BigInt>,
}

impl HeckeLikeMatrix {
    /// With `ell` set, also requires `T` symmetric with `det T = ell`.
    pub fn new(t: IntMatrix, ell: Option<BigInt>) -> Result<Self> {
        let b = t.len();
        if b == 0 || t.iter().any(|r| r.len() != b) {
            return Err(Error::InvalidMatrix("matrix must be square and nonempty".into()));
        }
        if t.iter().flatten().any(Signed::is_negative) {
            return Err(Error::InvalidMatrix("entries must be non-negative".into()));
        }
        if let Some(l) = &ell {
            if (0..b).any(|i| (0..i).any(|j| t[i][j] != t[j][i])) {
                return Err(Error::InvalidMatrix("matrix is not symmetric".into()));
            }
            let d = det(&t);
            if &d != l {
                return Err(Error::InvalidMatrix(format!("determinant is {d}, expected {l}")));
            }
        }
        Ok(HeckeLikeMatrix { t, ell })
    }

    pub fn size(&self) -> usize {
        self.t.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.t
    }

    pub fn ell(&self) -> Option<&BigInt> {
        self.ell.as_ref()
    }

    /// Some power `T^s` with `s ≤ (b-1)² + 1` is entrywise positive.
    pub fn is_primitive(&self) -> bool {
        let b = self.size();
        let pattern: Vec<Vec<bool>> = self
            .t
            .iter()
            .map(|r| r.iter().map(|v| !v.is_zero()).collect())
            .collect();
        let mut power = pattern.clone();
        for _ in 0..(b - 1) * (b - 1) + 1 {
            if power.iter().flatten().all(|&x| x) {
                return true;
            }
            power = (0..b)
                .map(|i| (0..b).map(|j| (0..b).any(|k| power[i][k] && pattern[k][j])).collect())
                .collect();
        }
        false
    }
}

/// `(v, k)` stands for `v` placed at level `k` of the direct limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimElement {
    pub v: Vec<BigInt>,
    pub k: usize,
}

impl DimElement {
    pub fn new(v: &[i64], k: usize) -> Self {
        DimElement {
            v: v.iter().map(|&x| BigInt::from(x)).collect(),
            k,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DimensionGroup {
    matrix: HeckeLikeMatrix,
    field: Arc<NumberField>,
    lambda: RealAlgebraic,
    w: Vec<RealAlgebraic>,
}

/// Solves `A x = rhs` over a number field; free variables are set to zero.
fn solve_in_field(a: &[Vec<RealAlgebraic>], rhs: &[RealAlgebraic]) -> Result<Vec<RealAlgebraic>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<RealAlgebraic>> = a
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for j in 0..=cols {
            m[r][j] = m[r][j].mul(&inv)?;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let d = f.mul(&m[r][j])?;
                    m[i][j] = m[i][j].sub(&d)?;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::Internal("inconsistent eigenvector system".into()));
    }
    let field = rhs
        .first()
        .map(|x| Arc::clone(x.field()))
        .ok_or_else(|| Error::Internal("empty system".into()))?;
    let mut x = vec![field.from_int(0); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Ok(x)
}

impl DimensionGroup {
    pub fn build(matrix: HeckeLikeMatrix) -> Result<Self> {
        if !matrix.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let b = matrix.size();
        let chi = charpoly(&matrix.t);
        let roots = chi.to_q().isolate_real_roots();
        let (lo, hi) = roots
            .last()
            .cloned()
            .ok_or_else(|| Error::Internal("no real eigenvalue".into()))?;
        // the irreducible factor of χ vanishing on the top interval
        let mut minpoly = None;
        for (f, _) in factor(&chi)?.factors {
            let fq = f.to_q();
            if sturm_count(&fq.sturm_sequence(), &lo, &hi) > 0 {
                minpoly = Some(if f.leading().is_negative() { f.neg() } else { f });
                break;
            }
        }
        let minpoly = minpoly.ok_or_else(|| Error::Internal("eigenvalue factor not found".into()))?;
        let field = NumberField::new(&minpoly, lo, hi)?;
        let lambda = field.theta();
        if lambda.compare(&field.from_int(1))? != Ordering::Greater {
            return Err(Error::DegenerateSpectrum);
        }
        // w (T - λ I) = 0 with w_1 = 1: unknowns w_2..w_b, one equation per column
        let entry = |i: usize, j: usize| -> Result<RealAlgebraic> {
            let t = field.from_rational(rat_int(matrix.t[i][j].clone()));
            if i == j {
                t.sub(&lambda)
            } else {
                Ok(t)
            }
        };
        let mut w = vec![field.from_int(1)];
        if b > 1 {
            let mut a = Vec::with_capacity(b);
            let mut rhs = Vec::with_capacity(b);
            for j in 0..b {
                a.push((1..b).map(|i| entry(i, j)).collect::<Result<Vec<_>>>()?);
                rhs.push(entry(0, j)?.neg());
            }
            w.extend(solve_in_field(&a, &rhs)?);
        }
        let g = DimensionGroup {
            matrix,
            field,
            lambda,
            w,
        };
        if !g.left_eigen_ok()? {
            return Err(Error::Internal("w T != λ w".into()));
        }
        Ok(g)
    }

    fn left_eigen_ok(&self) -> Result<bool> {
        let b = self.matrix.size();
        for j in 0..b {
            let mut lhs = self.field.from_int(0);
            for i in 0..b {
                let t = rat_int(self.matrix.t[i][j].clone());
                lhs = lhs.add(&self.w[i].scale(&t))?;
            }
            if lhs != self.lambda.mul(&self.w[j])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn matrix(&self) -> &HeckeLikeMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn lambda(&self) -> &RealAlgebraic {
        &self.lambda
    }

    pub fn eigenvector(&self) -> &[RealAlgebraic] {
        &self.w
    }

    fn check_len(&self, x: &DimElement) -> Result<()> {
        if x.v.len() != self.matrix.size() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.size(),
                got: x.v.len(),
            });
        }
        Ok(())
    }

    /// `⟨v, w⟩ / λ^k`.
    pub fn trace_value(&self, x: &DimElement) -> Result<RealAlgebraic> {
        self.check_len(x)?;
        let mut s = self.field.from_int(0);
        for (vi, wi) in x.v.iter().zip(&self.w) {
            s = s.add(&wi.scale(&rat_int(vi.clone())))?;
        }
        s.div(&self.lambda.pow(x.k))
    }

    fn apply(&self, v: &[BigInt], times: usize) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for _ in 0..times {
            out = mat_vec(&self.matrix.t, &out);
        }
        out
    }

    /// `T^{m-j} v = T^{m-k} v'` at a common level `m`.
    pub fn equivalent(&self, x: &DimElement, y: &DimElement) -> Result<bool> {
        self.check_len(x)?;
        self.check_len(y)?;
        let start = x.k.max(y.k);
        let end = if det(&self.matrix.t).is_zero() {
            x.k + y.k + self.matrix.size()
        } else {
            start
        };
        let mut a = self.apply(&x.v, start - x.k);
        let mut b = self.apply(&y.v, start - y.k);
        for _ in start..=end {
            if a == b {
                return Ok(true);
            }
            a = mat_vec(&self.matrix.t, &a);
            b = mat_vec(&self.matrix.t, &b);
        }
        Ok(false)
    }

    /// `(v, k) ↦ (T v, k)`: multiplies the trace by `λ`.
    pub fn shift(&self, x: &DimElement) -> DimElement {
        DimElement {
            v: mat_vec(&self.matrix.t, &x.v),
            k: x.k,
        }
    }

    /// `(v, k) ↦ (v, k + 1)`.
    pub fn unshift(&self, x: &DimElement) -> DimElement {
        DimElement {
            v: x.v.clone(),
            k: x.k + 1,
        }
    }

    /// `(v, k) ↦ (T v, k + 1)`, the same element one level up.
    pub fn raise(&self, x: &DimElement) -> DimElement {
        DimElement {
            v: mat_vec(&self.matrix.t, &x.v),
            k: x.k + 1,
        }
    }

    /// `λ/ℓ` and whether it is an algebraic unit.
    pub fn unit_decomposition(&self, ell: &BigInt) -> Result<UnitDecomposition> {
        if ell < &BigInt::from(2) {
            return Err(Error::InvalidMatrix(format!("ℓ = {ell} must be at least 2")));
        }
        let u = self
            .lambda
            .scale(&BigRational::new(BigInt::one(), ell.clone()));
        let monic = u.minimal_polynomial();
        let verified = monic
            .to_integral()
            .is_some_and(|p| p.constant_term().abs().is_one());
        Ok(UnitDecomposition {
            minpoly: monic.primitive_part(),
            lambda_unit: u,
            verified,
        })
    }

    /// `λ` is the larger root of `x² - a x + ℓ`.
    pub fn frobenius_shift_matches_eigenvalue(&self, a: &BigInt, ell: &BigInt) -> Result<bool> {
        if self.matrix.size() != 2 || a * a < BigInt::from(4) * ell {
            return Ok(false);
        }
        let l = &self.lambda;
        let a_el = self.field.from_rational(rat_int(a.clone()));
        let value = l
            .mul(l)?
            .sub(&l.mul(&a_el)?)?
            .add(&self.field.from_rational(rat_int(ell.clone())))?;
        if !value.is_zero() {
            return Ok(false);
        }
        let other = a_el.sub(l)?;
        Ok(l.compare(&other)? != Ordering::Less)
    }

    /// `T^k` applied as a matrix power, for reports.
    pub fn matrix_power(&self, k: usize) -> IntMatrix {
        let b = self.matrix.size();
        let mut m = crate::linalg::identity(b);
        for _ in 0..k {
            m = mat_mul(&m, &self.matrix.t);
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub lambda_unit: RealAlgebraic,
    /// Primitive integer minimal polynomial of `λ/ℓ`.
    pub minpoly: ZPoly,
    pub verified: bool,
}

/// Symmetric `[[s, u], [u, t]]` with `s + t = a`, `st - u² = ℓ`, `u ≥ 1`,
/// searching `s` downward from `a`.
pub fn hecke_companion(a: &BigInt, ell: &BigInt) -> Result<HeckeLikeMatrix> {
    let not_rep = || Error::NotRepresentable {
        a: a.to_string(),
        ell: ell.to_string(),
    };
    match ell.to_string().parse::<u64>() {
        Ok(l) if is_prime(l) => {}
        _ => return Err(Error::InvalidMatrix(format!("ℓ = {ell} is not a prime"))),
    }
    if a.is_negative() || a * a < BigInt::from(4) * ell {
        return Err(not_rep());
    }
    let mut s = a.clone();
    while !s.is_negative() {
        let t = a - &s;
        let u2 = &s * &t - ell;
        if u2.is_positive() {
            let u = u2.sqrt();
            if &u * &u == u2 && &u <= a {
                return HeckeLikeMatrix::new(
                    vec![vec![s.clone(), u.clone()], vec![u, t]],
                    Some(ell.clone()),
                );
            }
        }
        s -= 1;
    }
    Err(not_rep())
}

/// Whitespace-separated integer rows; `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut rows: IntMatrix = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut col = 0;
        for tok in line.split_whitespace() {
            col = raw[col..].find(tok).map_or(col, |p| col + p);
            let v: BigInt = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                column: col + 1,
                message: format!("not an integer: {tok:?}"),
            })?;
            row.push(v);
            col += tok.len();
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    column: 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no matrix rows".into(),
        });
    }
    Ok(rows)
}
