//! Finitely generated subgroups `Z g_1 + .. + Z g_b` of the reals, with
//! generators in one real number field and `g_1 = 1`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::{NumberField, RealAlgebraic};
use crate::arith::{fmt_rational, rat_int};
use crate::error::{Error, Result};
use crate::linalg::{integral_solutions, mat_mul, rank, rref, solve, trace, IntMatrix, RatMatrix};

#[derive(Clone, Debug)]
pub struct PseudoLattice {
    field: Arc<NumberField>,
    gens: Vec<RealAlgebraic>,
}

impl PartialEq for PseudoLattice {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for PseudoLattice {}

impl PseudoLattice {
    /// Checks `g_1 = 1`, a shared field and independence over Q.
    pub fn new(gens: Vec<RealAlgebraic>) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::NotNormalized("a lattice needs at least one generator".into()))?;
        let field = Arc::clone(first.field());
        if *first != field.from_int(1) {
            return Err(Error::NotNormalized(format!("first generator is {first}, not 1")));
        }
        for g in &gens {
            if !g.field().same_as(&field) {
                return Err(Error::FieldMismatch);
            }
        }
        let coords: RatMatrix = gens.iter().map(|g| g.coords().to_vec()).collect();
        if rank(&coords) != gens.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(PseudoLattice { field, gens })
    }

    /// The rank-one lattice `Z` inside `field`.
    pub fn integers(field: &Arc<NumberField>) -> Self {
        PseudoLattice {
            field: Arc::clone(field),
            gens: vec![field.from_int(1)],
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn generators(&self) -> &[RealAlgebraic] {
        &self.gens
    }

    /// `Σ c_j g_j`.
    pub fn combination(&self, c: &[BigInt]) -> RealAlgebraic {
        self.gens
            .iter()
            .zip(c)
            .fold(self.field.from_int(0), |acc, (g, k)| {
                acc.add(&g.scale(&rat_int(k.clone()))).expect("same field")
            })
    }

    /// Rational coordinates of `x` on the generators, if it lies in their
    /// Q-span.
    pub fn express(&self, x: &RealAlgebraic) -> Result<Option<Vec<BigRational>>> {
        if !x.field().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let a: RatMatrix = (0..n)
            .map(|k| self.gens.iter().map(|g| g.coords()[k].clone()).collect())
            .collect();
        Ok(solve(&a, x.coords()))
    }

    pub fn contains(&self, x: &RealAlgebraic) -> Result<bool> {
        Ok(self
            .express(x)?
            .is_some_and(|c| c.iter().all(BigRational::is_integer)))
    }

    pub fn is_endomorphism(&self, alpha: &RealAlgebraic) -> Result<bool> {
        for g in &self.gens {
            if !self.contains(&alpha.mul(g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Integer matrix `M` with `α g_j = Σ_k M_{kj} g_k`.
    pub fn endo_matrix(&self, alpha: &RealAlgebraic) -> Result<IntMatrix> {
        let b = self.rank();
        let mut m = vec![vec![BigInt::zero(); b]; b];
        for (j, g) in self.gens.iter().enumerate() {
            let c = self.express(&alpha.mul(g)?)?.ok_or(Error::NotEndomorphism)?;
            for (k, v) in c.iter().enumerate() {
                if !v.is_integer() {
                    return Err(Error::NotEndomorphism);
                }
                m[k][j] = v.to_integer();
            }
        }
        Ok(m)
    }

    /// `{α : α L ⊆ L}` as a Z-module.
    ///
    /// Since `1 ∈ L`, every such `α` lies in `L`, so `α = Σ x_j g_j` with
    /// `x ∈ Z^b`. Completing the generators to a basis of the field, each
    /// `α g_i` must have zero coordinates outside the span and integer
    /// coordinates inside it; the solution lattice comes from a Hermite
    /// normal form.
    pub fn endo_ring(&self) -> Result<EndRing> {
        let b = self.rank();
        let n = self.field.degree();
        let basis = self.completed_basis();
        // change of coordinates: power basis -> completed basis
        let cols: RatMatrix = (0..n)
            .map(|k| basis.iter().map(|v| v[k].clone()).collect())
            .collect();
        let to_basis = |x: &RealAlgebraic| -> Result<Vec<BigRational>> {
            solve(&cols, x.coords()).ok_or_else(|| Error::Internal("basis is not spanning".into()))
        };
        let mut zero_rows = Vec::new();
        let mut int_rows = Vec::new();
        for gi in &self.gens {
            let images: Vec<Vec<BigRational>> = self
                .gens
                .iter()
                .map(|gj| to_basis(&gj.mul(gi)?))
                .collect::<Result<_>>()?;
            for k in 0..n {
                let row: Vec<BigRational> = images.iter().map(|y| y[k].clone()).collect();
                if k < b {
                    int_rows.push(row);
                } else {
                    zero_rows.push(row);
                }
            }
        }
        let sol = integral_solutions(&zero_rows, &int_rows, b);
        let basis = sol.iter().map(|x| self.combination(x)).collect();
        Ok(EndRing {
            rank: sol.len(),
            coefficients: sol,
            basis,
        })
    }

    /// Generator coordinates followed by unit vectors that complete them to
    /// a basis of the field.
    fn completed_basis(&self) -> Vec<Vec<BigRational>> {
        let n = self.field.degree();
        let mut basis: Vec<Vec<BigRational>> = self.gens.iter().map(|g| g.coords().to_vec()).collect();
        for k in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[k] = BigRational::one();
            let mut trial = basis.clone();
            trial.push(e);
            if rank(&trial) == trial.len() {
                basis = trial;
            }
        }
        basis
    }

    /// An element of `L` in `(0, eps)` built from continued-fraction
    /// convergents of `g_2`, with its integer coefficients.
    pub fn density_witness(&self, eps: &BigRational) -> Result<Option<(Vec<BigInt>, RealAlgebraic)>> {
        if self.rank() < 2 {
            return Ok(None);
        }
        let theta = &self.gens[1];
        let eps_el = self.field.from_rational(eps.clone());
        // convergents p_k / q_k of θ
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let mut x = theta.clone();
        let a0 = x.floor();
        let (mut p1, mut q1) = (a0.clone(), BigInt::one());
        x = x.sub(&self.field.from_rational(rat_int(a0)))?;
        for _ in 0..400 {
            // q θ - p
            let e = theta.scale(&rat_int(q1.clone())).sub(&self.field.from_rational(rat_int(p1.clone())))?;
            let (sign, e) = match e.signum() {
                Ordering::Less => (-1, e.neg()),
                _ => (1, e),
            };
            if !e.is_zero() && e.compare(&eps_el)? == Ordering::Less {
                let mut c = vec![BigInt::zero(); self.rank()];
                c[0] = -&p1 * sign;
                c[1] = &q1 * sign;
                return Ok(Some((c, e)));
            }
            if x.is_zero() {
                break;
            }
            x = x.inv()?;
            let a = x.floor();
            x = x.sub(&self.field.from_rational(rat_int(a.clone())))?;
            let p2 = &a * &p1 + &p0;
            let q2 = &a * &q1 + &q0;
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
        }
        Err(Error::Internal("continued fraction did not reach the target".into()))
    }
}

/// `End(L)`: rank and a Z-basis, both as field elements and as coefficient
/// vectors on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndRing {
    pub rank: usize,
    pub coefficients: IntMatrix,
    pub basis: Vec<RealAlgebraic>,
}

/// `(H^0, H^1, H^2)` of a genus-`g` curve: `Z`, `Z + Z θ_1 + .. + Z θ_{2g-1}`, `Z`.
pub fn curve_trace_cohomology(
    g: usize,
    thetas: &[RealAlgebraic],
) -> Result<(PseudoLattice, PseudoLattice, PseudoLattice)> {
    if g == 0 || thetas.len() != 2 * g - 1 {
        return Err(Error::DimensionMismatch {
            expected: (2 * g).saturating_sub(1),
            got: thetas.len(),
        });
    }
    let field = Arc::clone(thetas[0].field());
    let mut gens = vec![field.from_int(1)];
    gens.extend(thetas.iter().cloned());
    let h1 = PseudoLattice::new(gens)?;
    let z = PseudoLattice::integers(&field);
    Ok((z.clone(), h1, z))
}

/// A Frobenius given either as a real multiplier of the lattice or directly
/// as an integer matrix on its generators (needed when its eigenvalues are
/// not real).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusAction {
    Multiplier(RealAlgebraic),
    Matrix(IntMatrix),
}

/// `1 + q - tr(ω)` on `L`.
pub fn point_count_from_frobenius(
    l: &PseudoLattice,
    omega: &FrobeniusAction,
    q: &BigInt,
) -> Result<BigInt> {
    let m = match omega {
        FrobeniusAction::Multiplier(alpha) => l.endo_matrix(alpha)?,
        FrobeniusAction::Matrix(m) => {
            if m.len() != l.rank() || m.iter().any(|r| r.len() != l.rank()) {
                return Err(Error::DimensionMismatch {
                    expected: l.rank(),
                    got: m.len(),
                });
            }
            m.clone()
        }
    };
    Ok(BigInt::one() + q - trace(&m))
}

/// Pairwise products and commutators of the endomorphism basis, checked as
/// matrices: `M(α)M(β) = M(αβ) = M(β)M(α)`.
pub fn check_endo_homomorphism(l: &PseudoLattice, ring: &EndRing) -> Result<bool> {
    for a in &ring.basis {
        for b in &ring.basis {
            let ma = l.endo_matrix(a)?;
            let mb = l.endo_matrix(b)?;
            let mab = l.endo_matrix(&a.mul(b)?)?;
            if mat_mul(&ma, &mb) != mab || mat_mul(&mb, &ma) != mab {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Parsed lattice file: the lattice plus optional multipliers to test and a
/// Frobenius with its field size.
#[derive(Clone, Debug)]
pub struct LatticeFile {
    pub lattice: PseudoLattice,
    pub endos: Vec<RealAlgebraic>,
    pub frobenius: Option<(BigInt, FrobeniusAction)>,
}

fn parse_rational(tok: &str, line: usize) -> Result<BigRational> {
    let err = || Error::Parse {
        line,
        column: 1,
        message: format!("not a rational number: {tok:?}"),
    };
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(rat_int(tok.parse::<BigInt>().map_err(|_| err())?)),
    }
}

fn parse_list(s: &str, line: usize) -> Result<Vec<BigRational>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t, line))
        .collect()
}

/// Reads
///
/// ```text
/// field minpoly=-2,0,1
/// root in [1, 2]
/// gen 1
/// gen 0 1
/// endo 0 1
/// frobenius q=5 matrix 0 -5 ; 1 -2
/// ```
///
/// Coordinates are on the power basis of the root, lowest degree first.
pub fn parse_lattice(text: &str) -> Result<LatticeFile> {
    let mut minpoly: Option<(usize, Vec<BigRational>)> = None;
    let mut interval: Option<(usize, BigRational, BigRational)> = None;
    let mut gens: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut endos: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut frob: Option<(usize, BigInt, String)> = None;
    let perr = |line: usize, message: String| Error::Parse { line, column: 1, message };
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "field" => {
                let coeffs = rest
                    .strip_prefix("minpoly=")
                    .ok_or_else(|| perr(ln, "expected minpoly=<coefficients>".into()))?;
                minpoly = Some((ln, parse_list(coeffs, ln)?));
            }
            "root" => {
                let body = rest
                    .strip_prefix("in")
                    .map(str::trim)
                    .and_then(|s| s.strip_prefix('['))
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| perr(ln, "expected root in [lo, hi]".into()))?;
                let v = parse_list(body, ln)?;
                if v.len() != 2 {
                    return Err(perr(ln, "interval needs two endpoints".into()));
                }
                interval = Some((ln, v[0].clone(), v[1].clone()));
            }
            "gen" => gens.push((ln, parse_list(rest, ln)?)),
            "endo" => endos.push((ln, parse_list(rest, ln)?)),
            "frobenius" => {
                let (qtok, action) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let q = qtok
                    .strip_prefix("q=")
                    .and_then(|s| s.parse::<BigInt>().ok())
                    .ok_or_else(|| perr(ln, "expected q=<integer>".into()))?;
                frob = Some((ln, q, action.trim().to_string()));
            }
            other => return Err(perr(ln, format!("unknown directive {other:?}"))),
        }
    }
    let (mln, mcoeffs) = minpoly.ok_or_else(|| perr(1, "missing field line".into()))?;
    let minpoly = crate::poly::QPoly::new(mcoeffs)
        .to_integral()
        .ok_or_else(|| perr(mln, "minimal polynomial needs integer coefficients".into()))?;
    let (_, lo, hi) = interval.ok_or_else(|| perr(mln, "missing root line".into()))?;
    let field = NumberField::new(&minpoly, lo, hi)?;
    let element = |ln: usize, c: Vec<BigRational>| -> Result<RealAlgebraic> {
        field.element(c).map_err(|e| perr(ln, e.to_string()))
    };
    let gens = gens
        .into_iter()
        .map(|(ln, c)| element(ln, c))
        .collect::<Result<Vec<_>>>()?;
    let lattice = PseudoLattice::new(gens)?;
    let endos = endos
        .into_iter()
        .map(|(ln, c)| element(ln, c))
        .collect::<Result<Vec<_>>>()?;
    let frobenius = match frob {
        None => None,
        Some((ln, q, action)) => {
            let (kind, body) = action.split_once(char::is_whitespace).unwrap_or((&action, ""));
            let act = match kind {
                "multiplier" => FrobeniusAction::Multiplier(element(ln, parse_list(body, ln)?)?),
                "matrix" => {
                    let rows = body
                        .split(';')
                        .map(|r| {
                            parse_list(r, ln)?
                                .into_iter()
                                .map(|v| {
                                    if v.is_integer() {
                                        Ok(v.to_integer())
                                    } else {
                                        Err(perr(ln, format!("matrix entry {} is not an integer", fmt_rational(&v))))
                                    }
                                })
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    FrobeniusAction::Matrix(rows)
                }
                _ => return Err(perr(ln, "expected multiplier or matrix".into())),
            };
            Some((q, act))
        }
    };
    Ok(LatticeFile {
        lattice,
        endos,
        frobenius,
    })
}

/// Rank of the rational coordinate matrix of `elems`.
pub fn rational_rank(elems: &[RealAlgebraic]) -> usize {
    let mut m: RatMatrix = elems.iter().map(|e| e.coords().to_vec()).collect();
    rref(&mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::linalg::int_matrix;
    use crate::poly::ZPoly;
    use std::collections::BTreeSet;

    fn quad(d: i64) -> Arc<NumberField> {
        let s = (d as f64).sqrt();
        NumberField::new(
            &ZPoly::from_ints(&[-d, 0, 1]),
            rat(s.floor() as i64, 1),
            rat(s.floor() as i64 + 1, 1),
        )
        .unwrap()
    }

    fn el(k: &Arc<NumberField>, c: &[i64]) -> RealAlgebraic {
        k.element(c.iter().map(|&v| rat(v, 1)).collect()).unwrap()
    }

    fn z_sqrt(d: i64) -> PseudoLattice {
        let k = quad(d);
        PseudoLattice::new(vec![el(&k, &[1]), el(&k, &[0, 1])]).unwrap()
    }

    /// Q(√2, √3) as Q(θ) with θ = √2 + √3.
    fn biquadratic_gens() -> (Arc<NumberField>, Vec<RealAlgebraic>) {
        let k = NumberField::new(&ZPoly::from_ints(&[1, 0, -10, 0, 1]), rat(3, 1), rat(4, 1)).unwrap();
        let c = |v: &[BigRational]| k.element(v.to_vec()).unwrap();
        let z = rat(0, 1);
        let s2 = c(&[z.clone(), rat(-9, 2), z.clone(), rat(1, 2)]);
        let s3 = c(&[z.clone(), rat(11, 2), z.clone(), rat(-1, 2)]);
        let s6 = c(&[rat(-5, 2), z.clone(), rat(1, 2)]);
        (k, vec![s2, s3, s6])
    }

    /// Brute scan of `α = (u + v θ)/w` over small heights, where the lattice
    /// lives in a quadratic field with generator `θ`.
    fn scan_rank(l: &PseudoLattice) -> usize {
        let k = l.field();
        let n = k.degree();
        let mut found: Vec<Vec<BigRational>> = Vec::new();
        let mut seen = BTreeSet::new();
        for w in 1..=4i64 {
            for u in -5..=5i64 {
                for v in -5..=5i64 {
                    let mut c = vec![rat(0, 1); n];
                    c[0] = rat(u, w);
                    if n > 1 {
                        c[1] = rat(v, w);
                    } else if v != 0 {
                        continue;
                    }
                    let alpha = k.element(c.clone()).unwrap();
                    if l.is_endomorphism(&alpha).unwrap() && seen.insert(format!("{c:?}")) {
                        found.push(c);
                    }
                }
            }
        }
        crate::linalg::rank(&found)
    }

    #[test]
    fn contains_examples() {
        let l = z_sqrt(2);
        let k = l.field().clone();
        assert!(l.contains(&el(&k, &[3, 5])).unwrap());
        assert!(!l.contains(&k.from_rational(rat(1, 2))).unwrap());
        let r = el(&k, &[0, 1]);
        assert!(l.contains(&r.mul(&r).unwrap()).unwrap());
        let other = quad(3);
        assert_eq!(l.contains(&el(&other, &[0, 1])).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn endomorphism_examples() {
        let l = z_sqrt(2);
        let k = l.field().clone();
        assert!(l.is_endomorphism(&el(&k, &[0, 1])).unwrap());
        assert!(!l.is_endomorphism(&k.from_rational(rat(1, 2))).unwrap());
        assert!(l.is_endomorphism(&k.from_int(1)).unwrap());
        assert_eq!(l.endo_matrix(&el(&k, &[0, 1])).unwrap(), int_matrix(&[&[0, 2], &[1, 0]]));
        assert_eq!(l.endo_matrix(&k.from_int(1)).unwrap(), int_matrix(&[&[1, 0], &[0, 1]]));
        assert_eq!(
            l.endo_matrix(&k.from_rational(rat(1, 2))).unwrap_err(),
            Error::NotEndomorphism
        );
        // m + n√d acts as [[m, nd], [n, m]]
        let l5 = z_sqrt(5);
        let k5 = l5.field().clone();
        assert_eq!(
            l5.endo_matrix(&el(&k5, &[2, 3])).unwrap(),
            int_matrix(&[&[2, 15], &[3, 2]])
        );
    }

    #[test]
    fn endo_ring_examples() {
        let l = z_sqrt(2);
        let ring = l.endo_ring().unwrap();
        assert_eq!(ring.rank, 2);
        assert_eq!(ring.rank, scan_rank(&l));
        assert!(check_endo_homomorphism(&l, &ring).unwrap());

        // Z + Z·2^{1/3}: the square of the generator leaves the span
        let k = NumberField::new(&ZPoly::from_ints(&[-2, 0, 0, 1]), rat(1, 1), rat(2, 1)).unwrap();
        let l3 = PseudoLattice::new(vec![el(&k, &[1]), el(&k, &[0, 1])]).unwrap();
        let ring = l3.endo_ring().unwrap();
        assert_eq!(ring.rank, 1);
        assert_eq!(ring.basis, vec![k.from_int(1)]);
        assert_eq!(scan_rank(&l3), 1);

        let z = PseudoLattice::integers(&k);
        assert_eq!(z.endo_ring().unwrap().rank, 1);

        // Z + Z·√2/2 = Z + Z(1/√2): End is Z[√2] again, rank 2
        let half = PseudoLattice::new(vec![
            quad(2).from_int(1),
            quad(2).element(vec![rat(0, 1), rat(1, 2)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(half.endo_ring().unwrap().rank, scan_rank(&half));
    }

    #[test]
    fn order_five_in_z_sqrt5() {
        // Z + Z·(1+√5)/2 is the full ring of integers; End has rank 2 and
        // contains the golden ratio
        let k = quad(5);
        let phi = k.element(vec![rat(1, 2), rat(1, 2)]).unwrap();
        let l = PseudoLattice::new(vec![k.from_int(1), phi.clone()]).unwrap();
        let ring = l.endo_ring().unwrap();
        assert_eq!(ring.rank, 2);
        assert!(l.is_endomorphism(&phi).unwrap());
        assert_eq!(ring.rank, scan_rank(&l));
    }

    #[test]
    fn curve_cohomology() {
        let k = quad(7);
        let (h0, h1, h2) = curve_trace_cohomology(1, &[el(&k, &[0, 1])]).unwrap();
        assert_eq!((h0.rank(), h1.rank(), h2.rank()), (1, 2, 1));
        let (_, gens) = biquadratic_gens();
        let (_, h1, _) = curve_trace_cohomology(2, &gens).unwrap();
        assert_eq!(h1.rank(), 4);
        assert_eq!(rational_rank(h1.generators()), 4);
        let ring = h1.endo_ring().unwrap();
        assert!(ring.rank >= 1 && ring.rank <= 4);
        assert!(check_endo_homomorphism(&h1, &ring).unwrap());
        assert_eq!(
            curve_trace_cohomology(1, &[k.from_int(2)]).unwrap_err(),
            Error::DependentGenerators
        );
    }

    #[test]
    fn biquadratic_endo_ring_is_full() {
        // Z[√2, √3] is closed under multiplication, so End(L) = L
        let (k, gens) = biquadratic_gens();
        let mut all = vec![k.from_int(1)];
        all.extend(gens);
        let l = PseudoLattice::new(all).unwrap();
        let ring = l.endo_ring().unwrap();
        assert_eq!(ring.rank, 4);
        for g in l.generators() {
            assert!(l.is_endomorphism(g).unwrap());
        }
    }

    #[test]
    fn frobenius_counts() {
        let l = z_sqrt(5);
        let q = BigInt::from(5);
        let m = FrobeniusAction::Matrix(int_matrix(&[&[0, -5], &[1, -2]]));
        assert_eq!(point_count_from_frobenius(&l, &m, &q).unwrap(), BigInt::from(8));
        let id = FrobeniusAction::Multiplier(l.field().from_int(1));
        assert_eq!(point_count_from_frobenius(&l, &id, &q).unwrap(), BigInt::from(4));
        let zero = FrobeniusAction::Multiplier(l.field().from_int(0));
        assert_eq!(point_count_from_frobenius(&l, &zero, &q).unwrap(), BigInt::from(6));
        let bad = FrobeniusAction::Multiplier(l.field().from_rational(rat(1, 3)));
        assert_eq!(point_count_from_frobenius(&l, &bad, &q).unwrap_err(), Error::NotEndomorphism);
    }

    #[test]
    fn density() {
        let eps = rat(1, 1000);
        for l in [z_sqrt(2), z_sqrt(5), z_sqrt(7)] {
            let (c, e) = l.density_witness(&eps).unwrap().unwrap();
            assert_eq!(l.combination(&c), e);
            assert_eq!(e.signum(), Ordering::Greater);
            assert_eq!(e.compare(&l.field().from_rational(eps.clone())).unwrap(), Ordering::Less);
        }
        let k = quad(2);
        assert!(PseudoLattice::integers(&k).density_witness(&eps).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_lattices() {
        let k = quad(2);
        assert!(matches!(
            PseudoLattice::new(vec![el(&k, &[0, 1])]),
            Err(Error::NotNormalized(_))
        ));
        assert_eq!(
            PseudoLattice::new(vec![el(&k, &[1]), el(&k, &[3])]).unwrap_err(),
            Error::DependentGenerators
        );
    }

    #[test]
    fn parse_lattice_file() {
        let text = "\
# Z + Z sqrt2
field minpoly=-2,0,1
root in [1, 2]
gen 1
gen 0 1
endo 0 1
frobenius q=5 matrix 0 -5 ; 1 -2
";
        let f = parse_lattice(text).unwrap();
        assert_eq!(f.lattice, z_sqrt(2));
        assert_eq!(f.endos.len(), 1);
        let (q, act) = f.frobenius.unwrap();
        assert_eq!(q, BigInt::from(5));
        assert_eq!(act, FrobeniusAction::Matrix(int_matrix(&[&[0, -5], &[1, -2]])));
        let bad = "field minpoly=-2,0,1\nroot in [1, 2]\ngen 1\ngen 1/x\n";
        assert!(matches!(parse_lattice(bad), Err(Error::Parse { line: 4, .. })));
        let unknown = "field minpoly=-2,0,1\nbogus\n";
        assert!(matches!(parse_lattice(unknown), Err(Error::Parse { line: 2, .. })));
    }
}
