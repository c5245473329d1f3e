//! The full pipeline from a variety to its checked Weil factorization:
//! counts, zeta series, rational reconstruction, weight split, functional
//! equation, root moduli and Betti numbers.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::variety::{count_series, Ambient, PointCountSeries, VarietySpec};
use crate::zeta::{
    betti_check, curve_numerator, curve_zeta, functional_equation_check, pade_degrees,
    pade_reconstruct, point_count_from_zeta, rh_check, weight_split, zeta_series, BettiLine,
    CurveMode, FeSign, RationalFunctionQ, RhReport, WeilFactorization,
};

#[derive(Clone, Debug)]
pub struct WeilConfig {
    pub m_max: usize,
    pub budget: u64,
    pub rh_tol: f64,
    pub weight_tol: f64,
    /// Betti numbers supplied by the caller; derived when possible otherwise.
    pub betti: Option<Vec<usize>>,
}

impl Default for WeilConfig {
    fn default() -> Self {
        WeilConfig {
            m_max: 4,
            budget: crate::ffield::DEFAULT_BUDGET,
            rh_tol: 1e-9,
            weight_tol: 0.25,
            betti: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiSource {
    Given,
    Derived,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct WeilOutcome {
    pub counts: PointCountSeries,
    pub betti: Option<Vec<usize>>,
    pub betti_source: BettiSource,
    pub method: String,
    pub zeta: RationalFunctionQ,
    pub factorization: WeilFactorization,
    pub fe: std::result::Result<FeSign, Error>,
    pub rh: Vec<(usize, RhReport)>,
    pub betti_lines: Option<Vec<BettiLine>>,
    /// Set when the Betti vector does not have `2n + 1` entries.
    pub betti_mismatch: Option<String>,
    pub endpoints_ok: bool,
    pub roundtrip_ok: bool,
    pub timings: Vec<(String, Duration)>,
}

impl WeilOutcome {
    pub fn pass(&self) -> bool {
        self.fe.is_ok()
            && self.rh.iter().all(|(_, r)| r.pass)
            && self
                .betti_lines
                .as_ref()
                .is_none_or(|ls| ls.iter().all(|l| l.pass))
            && self.betti_mismatch.is_none()
            && self.roundtrip_ok
    }
}

/// Betti numbers of projective space and of a smooth projective
/// hypersurface; `None` for anything else. The length reflects the actual
/// dimension, not the declared one.
pub fn derived_betti(v: &VarietySpec) -> Option<Vec<usize>> {
    let Ambient::Projective(big_n) = v.ambient() else {
        return None;
    };
    let even_only = |n: usize| -> Vec<usize> { (0..=2 * n).map(|i| usize::from(i % 2 == 0)).collect() };
    match v.polys() {
        [] => Some(even_only(big_n)),
        [f] if big_n >= 1 && f.total_degree() >= 1 => {
            let n = big_n - 1;
            let d = f.total_degree() as i64;
            let ni = n as i64;
            // χ = ((1 - d)^{n+2} - 1)/d + n + 2
            let chi = ((1 - d).pow(n as u32 + 2) - 1) / d + ni + 2;
            let middle = if n % 2 == 0 { chi - ni } else { ni + 1 - chi };
            let mut b = even_only(n);
            b[n] = usize::try_from(middle).ok()?;
            Some(b)
        }
        _ => None,
    }
}

fn reconstruct(
    counts: &PointCountSeries,
    betti: Option<&[usize]>,
) -> Result<(RationalFunctionQ, String)> {
    let series = zeta_series(counts)?;
    match betti {
        Some(b) if b.len() == 3 && b[0] == 1 && b[2] == 1 && b[1] % 2 == 0 => {
            let g = b[1] / 2;
            let p1 = curve_numerator(counts, g, CurveMode::Full)?;
            Ok((curve_zeta(&p1, counts.q)?, format!("curve numerator, genus {g}")))
        }
        Some(b) => {
            let (l, m) = pade_degrees(b);
            Ok((pade_reconstruct(&series, l, m)?, format!("pade ({l}, {m})")))
        }
        None => {
            // smallest total degree whose fit reproduces every available term
            let order = series.order();
            for s in 0..order {
                for m in 0..=s {
                    let l = s - m;
                    if let Ok(z) = pade_reconstruct(&series, l, m) {
                        if z.series(order) == series {
                            return Ok((z, format!("pade ({l}, {m}), minimal degree")));
                        }
                    }
                }
            }
            Err(Error::NoRationalFit(format!(
                "no rational function of total degree below {order} fits {order} counts"
            )))
        }
    }
}

pub fn run_weil(v: &VarietySpec, cfg: &WeilConfig) -> Result<WeilOutcome> {
    let mut timings = Vec::new();
    let n = v.dim();
    let t0 = Instant::now();
    let counts = count_series(v, cfg.m_max, cfg.budget)?;
    timings.push(("count_points".to_string(), t0.elapsed()));

    let (betti, betti_source) = match (&cfg.betti, derived_betti(v)) {
        (Some(b), _) => (Some(b.clone()), BettiSource::Given),
        (None, Some(b)) => (Some(b), BettiSource::Derived),
        (None, None) => (None, BettiSource::Unknown),
    };

    let t1 = Instant::now();
    let (zeta, method) = reconstruct(&counts, betti.as_deref())?;
    timings.push(("reconstruct".to_string(), t1.elapsed()));

    let t2 = Instant::now();
    let q = counts.q;
    let mut factorization = weight_split(&zeta, q, n, cfg.weight_tol)?;
    let fe = functional_equation_check(&zeta, q, n, factorization.chi);
    factorization.sign = fe.as_ref().ok().copied();
    let rh = factorization
        .factors
        .iter()
        .enumerate()
        .filter(|(_, p)| p.deg() > 0)
        .map(|(i, p)| Ok((i, rh_check(p, q, i, cfg.rh_tol)?)))
        .collect::<Result<Vec<_>>>()?;
    let (betti_lines, betti_mismatch) = match &betti {
        Some(b) if b.len() == 2 * n + 1 => (Some(betti_check(&factorization, b)?), None),
        Some(b) => (
            None,
            Some(format!("{} Betti numbers for declared dimension {n}", b.len())),
        ),
        None => (None, None),
    };
    let roundtrip_ok = counts
        .counts
        .iter()
        .enumerate()
        .map(|(i, c)| Ok(point_count_from_zeta(&zeta, i + 1)? == *c))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|ok| ok);
    timings.push(("checks".to_string(), t2.elapsed()));

    Ok(WeilOutcome {
        endpoints_ok: factorization.endpoints_ok(),
        counts,
        betti,
        betti_source,
        method,
        zeta,
        factorization,
        fe,
        rh,
        betti_lines,
        betti_mismatch,
        roundtrip_ok,
        timings,
    })
}

/// `N_m` recomputed from a zeta function for `m = 1..=m_max`.
pub fn counts_from_zeta(z: &RationalFunctionQ, m_max: usize) -> Result<Vec<BigInt>> {
    (1..=m_max).map(|m| point_count_from_zeta(z, m)).collect()
}
