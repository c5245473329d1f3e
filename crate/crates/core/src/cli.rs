//! Command layer behind the `weilzeta` binary: configuration, the five
//! subcommands and a plain-text report whose only run-dependent lines start
//! with `# timing`.

use std::fmt::{self, Display};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{NumberField, RealAlgebraic};
use crate::arith::fmt_rational;
use crate::cmcurve::cm_sweep;
use crate::dimgroup::{parse_matrix, DimElement, DimensionGroup, HeckeLikeMatrix};
use crate::error::{Error, Result};
use crate::linalg::{det, IntMatrix};
use crate::pseudolattice::{check_endo_homomorphism, parse_lattice, point_count_from_frobenius, FrobeniusAction};
use crate::variety::{count_series, parse_variety, VarietySpec};
use crate::weil::{run_weil, BettiSource, WeilConfig};

pub const TIMING_PREFIX: &str = "# timing";
pub const DECIMAL_DIGITS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Count { input: PathBuf },
    Weil { input: PathBuf, betti: Option<Vec<usize>> },
    Cm { from: u64, to: u64 },
    Lattice { input: PathBuf },
    Dimgroup { input: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Weil { .. } => "weil",
            Command::Cm { .. } => "cm",
            Command::Lattice { .. } => "lattice",
            Command::Dimgroup { .. } => "dimgroup",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub m_max: usize,
    pub budget: u64,
    pub rh_tol: f64,
    pub weight_tol: f64,
    /// For `dimgroup`: require `T` symmetric with this determinant.
    pub det_check: Option<BigInt>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            m_max: 3,
            budget: crate::ffield::DEFAULT_BUDGET,
            rh_tol: 1e-9,
            weight_tol: 0.25,
            det_check: None,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.budget < 1 {
            return bad("budget must be at least 1".into());
        }
        if self.m_max < 1 {
            return bad("mmax must be at least 1".into());
        }
        for (name, t) in [("rh-tol", self.rh_tol), ("weight-tol", self.weight_tol)] {
            if !(t > 0.0 && t < 0.5) {
                return bad(format!("{name} = {t} must lie in (0, 0.5)"));
            }
        }
        if let Command::Cm { from, to } = self.command {
            if from > to {
                return bad(format!("empty prime range [{from}, {to}]"));
            }
        }
        Ok(())
    }

    fn weil_config(&self, betti: Option<Vec<usize>>) -> WeilConfig {
        WeilConfig {
            m_max: self.m_max,
            budget: self.budget,
            rh_tol: self.rh_tol,
            weight_tol: self.weight_tol,
            betti,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub lines: Vec<String>,
}

impl Section {
    pub fn kv(&mut self, key: impl Display, value: impl Display) -> &mut Self {
        self.lines.push(format!("{key} = {value}"));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
    pub timings: Vec<(String, Duration)>,
    failures: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            sections: Vec::new(),
            timings: Vec::new(),
            failures: Vec::new(),
        }
    }

    /// The named section, created at the end on first use.
    pub fn section(&mut self, name: &str) -> &mut Section {
        let idx = match self.sections.iter().position(|s| s.name == name) {
            Some(i) => i,
            None => {
                self.sections.push(Section {
                    name: name.to_string(),
                    lines: Vec::new(),
                });
                self.sections.len() - 1
            }
        };
        &mut self.sections[idx]
    }

    /// Records a pass/fail line under `[checks]`.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl Display) {
        let detail = detail.to_string();
        let verdict = match (ok, detail.is_empty()) {
            (true, true) => "ok".to_string(),
            (true, false) => format!("ok ({detail})"),
            (false, true) => "FAIL".to_string(),
            (false, false) => format!("FAIL ({detail})"),
        };
        self.section("checks").kv(name, verdict);
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    pub fn timing(&mut self, name: &str, d: Duration) {
        self.timings.push((name.to_string(), d));
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("weilzeta {}\n", self.command);
        for s in &self.sections {
            out.push_str(&format!("\n[{}]\n", s.name));
            for l in &s.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        out.push('\n');
        for (name, d) in &self.timings {
            out.push_str(&format!("{TIMING_PREFIX} {name} = {:.6} s\n", d.as_secs_f64()));
        }
        out.push_str(&format!("status = {}\n", if self.pass() { "PASS" } else { "FAIL" }));
        out
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Report text with timing lines removed, for comparing runs.
pub fn strip_timing(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with(TIMING_PREFIX))
        .map(|l| format!("{l}\n"))
        .collect()
}

/// One-line diagnostic for an error: tag, then message.
pub fn diagnostic(e: &Error) -> String {
    let msg = e.to_string();
    let body = msg
        .strip_prefix(e.tag())
        .map_or(msg.as_str(), |m| m.trim_start_matches(':').trim_start());
    format!("error[{}]: {body}", e.tag())
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn list<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Power-basis coordinates plus an advisory decimal.
pub fn fmt_algebraic(x: &RealAlgebraic) -> String {
    let coords: Vec<String> = x.coords().iter().map(fmt_rational).collect();
    format!("[{}] ≈ {}", coords.join(", "), x.to_decimal(DECIMAL_DIGITS))
}

fn fmt_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = m.iter().map(|r| list(r)).collect();
    format!("[{}]", rows.join(", "))
}

fn field_section(report: &mut Report, name: &str, field: &NumberField) {
    let (lo, hi) = field.interval();
    report
        .section(name)
        .kv("minpoly", field.minpoly().display_in("x"))
        .kv("degree", field.degree())
        .kv("root_interval", format!("({}, {}]", fmt_rational(&lo), fmt_rational(&hi)));
}

fn variety_section(report: &mut Report, path: &Path, v: &VarietySpec) {
    let s = report.section("input");
    s.kv("file", path.display())
        .kv("p", v.p())
        .kv("ambient", v.ambient())
        .kv("vardim", v.dim());
    for (i, f) in v.polys().iter().enumerate() {
        s.kv(format!("poly[{i}]"), f);
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    match &cfg.command {
        Command::Count { .. } => cmd_count(cfg),
        Command::Weil { .. } => cmd_weil(cfg),
        Command::Cm { .. } => cmd_cm(cfg),
        Command::Lattice { .. } => cmd_lattice(cfg),
        Command::Dimgroup { .. } => cmd_dimgroup(cfg),
    }
}

fn expect_input(cfg: &RunConfig) -> Result<&Path> {
    match &cfg.command {
        Command::Count { input }
        | Command::Weil { input, .. }
        | Command::Lattice { input }
        | Command::Dimgroup { input } => Ok(input),
        Command::Cm { .. } => Err(Error::InvalidConfig("cm takes no input file".into())),
    }
}

pub fn cmd_count(cfg: &RunConfig) -> Result<Report> {
    let path = expect_input(cfg)?;
    let v = parse_variety(&read_input(path)?)?;
    let mut report = Report::new("count");
    variety_section(&mut report, path, &v);
    let t = Instant::now();
    let series = count_series(&v, cfg.m_max, cfg.budget)?;
    report.timing("count_points", t.elapsed());
    let s = report.section("counts");
    s.kv("q", series.q).kv("m_max", cfg.m_max);
    for (m, n) in series.counts.iter().enumerate() {
        s.kv(format!("N_{}", m + 1), n);
    }
    let mut within = true;
    let mut qm = BigInt::one();
    for n in &series.counts {
        qm *= series.q;
        let bound = v
            .ambient()
            .size_over(u128::try_from(&qm).unwrap_or(u128::MAX))
            .map(BigInt::from);
        within &= bound.is_none_or(|b| n <= &b);
    }
    report.check("ambient_bound", within, "");
    Ok(report)
}

pub fn cmd_weil(cfg: &RunConfig) -> Result<Report> {
    let path = expect_input(cfg)?;
    let betti = match &cfg.command {
        Command::Weil { betti, .. } => betti.clone(),
        _ => None,
    };
    let v = parse_variety(&read_input(path)?)?;
    let mut report = Report::new("weil");
    variety_section(&mut report, path, &v);
    let out = run_weil(&v, &cfg.weil_config(betti))?;
    for (name, d) in &out.timings {
        report.timing(name, *d);
    }

    let s = report.section("counts");
    s.kv("q", out.counts.q);
    for (m, n) in out.counts.counts.iter().enumerate() {
        s.kv(format!("N_{}", m + 1), n);
    }

    let s = report.section("zeta");
    s.kv("method", &out.method);
    match (&out.betti, out.betti_source) {
        (Some(b), BettiSource::Given) => s.kv("betti", format!("{} given", list(b))),
        (Some(b), _) => s.kv("betti", format!("{} derived", list(b))),
        (None, _) => s.kv("betti", "unknown"),
    };
    s.kv("numerator", out.zeta.num()).kv("denominator", out.zeta.den());

    let f = &out.factorization;
    let s = report.section("factors");
    for (i, p) in f.factors.iter().enumerate() {
        s.kv(format!("P_{i}"), format!("{p}  (degree {})", p.deg()));
    }
    s.kv("chi", f.chi);

    match &out.fe {
        Ok(sign) => report.check("functional_equation", true, format!("sign {sign}")),
        Err(e) => report.check("functional_equation", false, diagnostic(e)),
    }
    for (i, r) in &out.rh {
        let recip = match r.reciprocal_ok {
            Some(true) => "reciprocal ok",
            Some(false) => "reciprocal FAIL",
            None => "reciprocal n/a",
        };
        report.check(
            &format!("rh_P_{i}"),
            r.pass,
            format!("max |α|/q^(i/2) deviation {:.3e}, {recip}", r.max_modulus_deviation),
        );
    }
    if let Some(lines) = &out.betti_lines {
        for l in lines {
            report.check(
                &format!("betti_{}", l.weight),
                l.pass,
                format!("deg P_{} = {}, expected {}", l.weight, l.degree, l.expected),
            );
        }
    }
    if let Some(m) = &out.betti_mismatch {
        report.check("betti_length", false, m);
    }
    report.check("roundtrip_counts", out.roundtrip_ok, "");
    report
        .section("notes")
        .kv("endpoints_trivial", out.endpoints_ok);
    Ok(report)
}

pub fn cmd_cm(cfg: &RunConfig) -> Result<Report> {
    let Command::Cm { from, to } = cfg.command else {
        return Err(Error::InvalidConfig("cm needs a prime range".into()));
    };
    let mut report = Report::new("cm");
    report
        .section("input")
        .kv("curve", "y^2 = x^3 - x")
        .kv("range", format!("[{from}, {to}]"));
    let t = Instant::now();
    let rows = cm_sweep(from, to)?;
    report.timing("sweep", t.elapsed());

    let mut mismatches = 0usize;
    let mut hasse = 0usize;
    let s = report.section("table");
    s.line("p | count | trace | psi | character trace | character count | agree");
    for r in &rows {
        let psi = r.psi.map_or("inert".to_string(), |g| g.to_string());
        s.line(format!(
            "{} | {} | {} | {} | {} | {} | {}",
            r.p,
            r.count,
            r.trace,
            psi,
            r.character_trace,
            r.character_count,
            if r.agrees() { "yes" } else { "NO" }
        ));
        if !r.agrees() {
            mismatches += 1;
        }
        // a² ≤ 4p, exact
        if &r.trace * &r.trace > BigInt::from(4 * r.p) {
            hasse += 1;
        }
    }
    report
        .section("summary")
        .kv("primes", rows.len())
        .kv("mismatches", mismatches)
        .kv("hasse_violations", hasse);
    report.check("character_matches_bruteforce", mismatches == 0, format!("{mismatches} mismatches"));
    report.check("hasse_bound", hasse == 0, format!("{hasse} violations"));
    Ok(report)
}

pub fn cmd_lattice(cfg: &RunConfig) -> Result<Report> {
    let path = expect_input(cfg)?;
    let file = parse_lattice(&read_input(path)?)?;
    let l = &file.lattice;
    let mut report = Report::new("lattice");
    report.section("input").kv("file", path.display());
    field_section(&mut report, "field", l.field());
    let s = report.section("lattice");
    s.kv("rank", l.rank());
    for (i, g) in l.generators().iter().enumerate() {
        s.kv(format!("g_{}", i + 1), fmt_algebraic(g));
    }

    let t = Instant::now();
    let ring = l.endo_ring()?;
    report.timing("endo_ring", t.elapsed());
    let s = report.section("endomorphisms");
    s.kv("rank", ring.rank);
    for (i, b) in ring.basis.iter().enumerate() {
        s.kv(format!("basis_{}", i + 1), fmt_algebraic(b));
    }
    for (i, b) in ring.basis.iter().enumerate() {
        s.kv(format!("matrix_{}", i + 1), fmt_matrix(&l.endo_matrix(b)?));
    }
    report.check(
        "end_rank_range",
        (1..=l.rank()).contains(&ring.rank),
        format!("1 <= {} <= {}", ring.rank, l.rank()),
    );
    report.check("endo_homomorphism_and_commutativity", check_endo_homomorphism(l, &ring)?, "");

    for (i, alpha) in file.endos.iter().enumerate() {
        let key = format!("endo[{i}]");
        let value = if l.is_endomorphism(alpha)? {
            format!("{} -> {}", alpha, fmt_matrix(&l.endo_matrix(alpha)?))
        } else {
            format!("{alpha} -> not an endomorphism")
        };
        report.section("requested").kv(key, value);
    }

    if let Some((q, omega)) = &file.frobenius {
        let count = point_count_from_frobenius(l, omega, q)?;
        let desc = match omega {
            FrobeniusAction::Multiplier(a) => format!("multiplier {a}"),
            FrobeniusAction::Matrix(m) => format!("matrix {}", fmt_matrix(m)),
        };
        report
            .section("frobenius")
            .kv("q", q)
            .kv("omega", desc)
            .kv("count", &count);
        // Hasse-type bound for the rank-2g lattice: |count - 1 - q| ≤ rank·√q
        let dev = (&count - BigInt::one() - q).abs();
        let r = BigInt::from(l.rank());
        report.check(
            "frobenius_count_bound",
            &dev * &dev <= &r * &r * q,
            format!("|N - 1 - q| = {dev}"),
        );
    }

    if l.rank() >= 2 {
        let eps = BigRational::new(BigInt::one(), BigInt::from(1000));
        let witness = l.density_witness(&eps)?;
        let detail = match &witness {
            Some((c, x)) => format!("{} -> {}", list(c), x.to_decimal(12)),
            None => "none".into(),
        };
        report.check("density_witness_below_1e-3", witness.is_some(), detail);
    }
    Ok(report)
}

fn sample_elements(b: usize) -> Vec<DimElement> {
    let mut out = Vec::new();
    for k in 0..3 {
        for i in 0..b {
            let mut v = vec![0i64; b];
            v[i] = 1;
            out.push(DimElement::new(&v, k));
        }
    }
    let ramp: Vec<i64> = (0..b as i64).map(|i| 2 * i - 1).collect();
    out.push(DimElement::new(&ramp, 1));
    out.push(DimElement::new(&vec![1; b], 2));
    out
}

fn fmt_element(x: &DimElement) -> String {
    format!("({}, {})", list(&x.v), x.k)
}

pub fn cmd_dimgroup(cfg: &RunConfig) -> Result<Report> {
    let path = expect_input(cfg)?;
    let t_mat = parse_matrix(&read_input(path)?)?;
    let mut report = Report::new("dimgroup");
    report
        .section("input")
        .kv("file", path.display())
        .kv("matrix", fmt_matrix(&t_mat))
        .kv(
            "det_check",
            cfg.det_check.as_ref().map_or("off".to_string(), ToString::to_string),
        );
    let d = det(&t_mat);
    let hm = HeckeLikeMatrix::new(t_mat, cfg.det_check.clone())?;
    let t = Instant::now();
    let g = DimensionGroup::build(hm)?;
    report.timing("build", t.elapsed());

    field_section(&mut report, "field", g.field());
    let s = report.section("perron_frobenius");
    s.kv("lambda", fmt_algebraic(g.lambda()));
    for (i, w) in g.eigenvector().iter().enumerate() {
        s.kv(format!("w_{}", i + 1), fmt_algebraic(w));
    }

    let lambda = g.lambda().clone();
    let mut coherent = true;
    let mut scaling = true;
    let mut positive = true;
    for x in sample_elements(g.matrix().size()) {
        let tv = g.trace_value(&x)?;
        report
            .section("traces")
            .kv(fmt_element(&x), fmt_algebraic(&tv));
        coherent &= g.trace_value(&g.raise(&x))? == tv;
        coherent &= g.equivalent(&x, &g.raise(&x))?;
        scaling &= g.trace_value(&g.shift(&x))? == lambda.mul(&tv)?;
        if x.v.iter().all(|c| !c.is_negative()) && x.v.iter().any(|c| !c.is_zero()) {
            positive &= tv.signum() == std::cmp::Ordering::Greater;
        }
    }
    report.check("level_coherence", coherent, "");
    report.check("shift_multiplies_by_lambda", scaling, "");
    report.check("positive_cone", positive, "");

    let ell = cfg.det_check.clone().unwrap_or(d);
    let s = report.section("unit_decomposition");
    s.kv("ell", &ell);
    if ell >= BigInt::from(2) {
        let u = g.unit_decomposition(&ell)?;
        s.kv("lambda_over_ell", fmt_algebraic(&u.lambda_unit))
            .kv("minpoly", u.minpoly.display_in("x"))
            .kv("verified", u.verified);
        if g.matrix().size() == 2 {
            let a: BigInt = g.matrix().matrix()[0][0].clone() + &g.matrix().matrix()[1][1];
            let matches = g.frobenius_shift_matches_eigenvalue(&a, &ell)?;
            report
                .section("unit_decomposition")
                .kv("lambda_is_top_root_of_x^2-ax+ell", format!("{matches} (a = {a})"));
        }
    } else {
        s.kv("verified", "skipped (ell < 2)");
    }
    Ok(report)
}
