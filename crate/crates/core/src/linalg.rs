//! Exact linear algebra over Q and Z: elimination, Hermite normal form,
//! integer kernels, characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::ZPoly;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn trace(a: &IntMatrix) -> BigInt {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier; every
/// division is exact over Z.
pub fn charpoly(a: &IntMatrix) -> ZPoly {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        coeffs[n - k] = -trace(&am) / BigInt::from(k);
    }
    ZPoly::new(coeffs)
}

pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    let c0 = charpoly(a).coeff(0);
    if n % 2 == 0 {
        c0
    } else {
        -c0
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Solves `A x = b`; free variables are set to zero. `None` if inconsistent.
pub fn solve(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·M = H`, `U`
/// unimodular, `H` in row echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h = m.clone();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at r.
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !h[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&i| h[i][c].abs())
                .expect("nonempty");
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in (r + 1)..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                for j in 0..cols {
                    let d = &q * &h[r][j];
                    h[i][j] -= d;
                }
                for j in 0..rows {
                    let d = &q * &u[r][j];
                    u[i][j] -= d;
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for v in h[r].iter_mut() {
                *v = -&*v;
            }
            for v in u[r].iter_mut() {
                *v = -&*v;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let d = &q * &h[r][j];
                h[i][j] -= d;
            }
            for j in 0..rows {
                let d = &q * &u[r][j];
                u[i][j] -= d;
            }
        }
        r += 1;
    }
    (h, u)
}

/// Z-basis of `{x ∈ Z^n : A x = 0}` for an `m × n` integer matrix.
pub fn integer_kernel(a: &IntMatrix, n: usize) -> IntMatrix {
    let at: IntMatrix = if a.is_empty() {
        vec![Vec::new(); n]
    } else {
        transpose(a)
    };
    let (h, u) = hermite_normal_form(&at);
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect()
}

/// Z-basis (HNF rows) of the lattice spanned by `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(gens);
    h.into_iter()
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect()
}

/// Z-basis of `{x ∈ Z^n : Z·x = 0, I·x ∈ Z^k}` where `zero_rows` and
/// `int_rows` are rational constraint rows over `n` unknowns.
pub fn integral_solutions(
    zero_rows: &[Vec<BigRational>],
    int_rows: &[Vec<BigRational>],
    n: usize,
) -> IntMatrix {
    let den = zero_rows
        .iter()
        .chain(int_rows)
        .flatten()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let k = int_rows.len();
    let scaled = |r: &BigRational| r.numer() * (&den / r.denom());
    // Unknowns: x (n) followed by slack z (k) with den·I x - den·z = 0.
    let mut system: IntMatrix = Vec::new();
    for row in zero_rows {
        let mut r: Vec<BigInt> = row.iter().map(scaled).collect();
        r.resize(n + k, BigInt::zero());
        system.push(r);
    }
    for (idx, row) in int_rows.iter().enumerate() {
        let mut r: Vec<BigInt> = row.iter().map(scaled).collect();
        r.resize(n + k, BigInt::zero());
        r[n + idx] = -den.clone();
        system.push(r);
    }
    let kernel = integer_kernel(&system, n + k);
    let projected: IntMatrix = kernel.into_iter().map(|v| v[..n].to_vec()).collect();
    lattice_basis(&projected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn charpoly_and_det() {
        let t = int_matrix(&[&[3, 1], &[1, 1]]);
        assert_eq!(charpoly(&t), ZPoly::from_ints(&[2, -4, 1]));
        assert_eq!(det(&t), BigInt::from(2));
        let m = int_matrix(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 1]]);
        // det = 2(3) - 0 + 1(1) = 7
        assert_eq!(det(&m), BigInt::from(7));
    }

    #[test]
    fn hnf_is_unimodular_transform() {
        let m = int_matrix(&[&[4, 6], &[6, 9], &[2, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(mat_mul(&u, &m), h);
        assert_eq!(det(&u).abs(), BigInt::one());
        assert_eq!(h[0], vec![BigInt::from(2), BigInt::from(3)]);
        assert!(h[1].iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_of_integer_matrix() {
        let a = int_matrix(&[&[1, 2, 3]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn half_integer_constraint() {
        // x/2 integral -> x in 2Z
        let sol = integral_solutions(&[], &[vec![rat(1, 2)]], 1);
        assert_eq!(sol, vec![vec![BigInt::from(2)]]);
    }

    #[test]
    fn solve_inconsistent_and_consistent() {
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]];
        assert!(solve(&a, &[rat(1, 1), rat(3, 1)]).is_none());
        let x = solve(&a, &[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(0, 1)]);
    }
}
