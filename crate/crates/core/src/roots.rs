//! Numeric complex roots of integer polynomials (Aberth-Ehrlich iteration).
//!
//! Only weight assignment and the root-modulus check consume floating point;
//! everything upstream is exact.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::ZPoly;

/// Largest accepted relative backward error `|p(z)| / Σ|a_k||z|^k`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let r = z.norm();
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * r.powi(k as i32))
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All complex roots of `p` with multiplicity, each with certified relative
/// residual below [`RESIDUAL_TOLERANCE`].
pub fn complex_roots(p: &ZPoly) -> Result<Vec<Complex64>> {
    let d = match p.degree() {
        None => return Err(Error::RootFinding("zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::RootFinding("coefficients exceed f64 range".into()));
    }
    // Zero roots split off exactly.
    let zeros = coeffs.iter().take_while(|c| **c == 0.0).count();
    let work = &coeffs[zeros..];
    let n = d - zeros;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return Ok(roots);
    }
    let lead = work[n].abs();
    let radius = 1.0
        + work[..n]
            .iter()
            .map(|c| c.abs() / lead)
            .fold(0.0f64, f64::max);
    // Geometric mean of root moduli is a better starting radius than the bound.
    let start = (work[0].abs() / lead).powf(1.0 / n as f64).min(radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(start, angle)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (pv, dpv) = horner(work, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0) / diff
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for root in &z {
        let res = relative_residual(work, *root);
        if !(res < RESIDUAL_TOLERANCE) {
            return Err(Error::RootFinding(format!(
                "residual {res:e} at root {root} of {p}"
            )));
        }
    }
    roots.extend(z);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_with_complex_roots() {
        // 1 + 2t + 5t^2 has roots (-1 ± 2i)/5
        let roots = complex_roots(&ZPoly::from_ints(&[1, 2, 5])).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!((r.re + 0.2).abs() < 1e-12);
            assert!((r.im.abs() - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn repeated_roots_pass_residual_check() {
        // (1 - 3t)^2 (1 - t)
        let p = ZPoly::from_ints(&[1, -3]).pow(2).mul(&ZPoly::from_ints(&[1, -1]));
        let roots = complex_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        let near_third = roots.iter().filter(|r| (r.re - 1.0 / 3.0).abs() < 1e-6).count();
        assert_eq!(near_third, 2);
    }

    #[test]
    fn zero_roots_split_off() {
        let roots = complex_roots(&ZPoly::from_ints(&[0, 0, 1, 1])).unwrap();
        assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
    }
}
