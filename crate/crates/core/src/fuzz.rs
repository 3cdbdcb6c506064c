//! Seeded randomized property driver.
//!
//! Each trial draws one [`TrialInput`] from its own ChaCha8 stream (seed,
//! stream = trial index) and then evaluates it without further randomness, so
//! a stored input replays to the same record.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certify::{
    certify_real_rooted_with_stats, certify_unit_circle_with_stats, squarefree_float_roots, Certificate, Verdict,
};
use crate::construct::{
    build_hn_recursive, build_hn_subset, circle_poly, lee_yang_poly, lee_yang_solve_last, polya_shift, CouplingMatrix,
    Instance, Limits, RealRootedG, DEGREE_DROP_COS_TOL,
};
use crate::error::{Error, Result};
use crate::hb::hb_random;
use crate::json;
use crate::numeric::{int, rat, ComplexF, Rational, TolerancePolicy};
use crate::poly::{ExactPoly, FloatPoly};
use crate::roots::find_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FuzzMode {
    /// Exact identities and certificates only.
    Exact,
    /// Float cross-checks and the float-only constructions.
    Float,
    #[default]
    Both,
}

impl FuzzMode {
    fn exact(self) -> bool {
        self != FuzzMode::Float
    }

    fn float(self) -> bool {
        self != FuzzMode::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Largest degree of each `w_k`.
    pub degree_max: usize,
    pub seed: u64,
    pub mode: FuzzMode,
    /// Largest number of real zeros of `G`, origin included.
    pub g_roots_max: usize,
    /// Bound on `|Im|` of float roots and on `||t| - 1|` for circle roots.
    pub float_tol: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            n_min: 1,
            n_max: 4,
            degree_max: 3,
            seed: 1,
            mode: FuzzMode::Both,
            g_roots_max: 6,
            float_tol: 1e-8,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.trials == 0 {
            return bad("fuzz needs trials >= 1".into());
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!("fuzz needs 1 <= n_min <= n_max, got {}..{}", self.n_min, self.n_max));
        }
        if self.n_max > limits.exact_cap {
            return bad(format!("n_max = {} exceeds the exact cap {}", self.n_max, limits.exact_cap));
        }
        if self.degree_max == 0 {
            return bad("fuzz needs degree_max >= 1".into());
        }
        if !(self.float_tol.is_finite() && self.float_tol > 0.0) {
            return bad("float_tol must be positive".into());
        }
        Ok(())
    }
}

/// Input of the Pólya-shift check: `F = lead * prod (z - roots)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyaCase {
    pub lead: f64,
    pub roots: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
}

impl PolyaCase {
    pub fn polynomial(&self) -> FloatPoly {
        let one = ComplexF::new(1.0, 0.0);
        let roots: Vec<ComplexF> = self.roots.iter().map(|&r| ComplexF::new(r, 0.0)).collect();
        FloatPoly::from_roots(one * self.lead, &roots)
    }

    pub fn phase(&self) -> f64 {
        self.b + self.alpha * self.a
    }
}

/// Everything one trial evaluates.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialInput {
    /// `G`, `a`, `w`: used for `H_n` and, through `G` and `a`, for the
    /// circle polynomial.
    pub instance: Instance,
    pub matrix: CouplingMatrix,
    /// `x_1 .. x_{n-1}` with `|x_k| >= 1` for the Lee-Yang implication.
    pub lee_yang_prefix: Vec<ComplexF>,
    pub polya: PolyaCase,
}

impl TrialInput {
    pub fn to_json(&self) -> Value {
        json!({
            "instance": json::instance_to_json(&self.instance),
            "lee_yang": {
                "A": json::matrix_to_json(&self.matrix)["A"],
                "prefix": self.lee_yang_prefix.iter().map(|z| json!({ "re": z.re, "im": z.im })).collect::<Vec<_>>(),
            },
            "polya": serde_json::to_value(&self.polya).expect("plain data"),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let ly = get("lee_yang")?;
        let prefix = ly
            .get("prefix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing lee_yang.prefix".into()))?
            .iter()
            .map(|z| match (z.get("re").and_then(Value::as_f64), z.get("im").and_then(Value::as_f64)) {
                (Some(re), Some(im)) => Ok(ComplexF::new(re, im)),
                _ => Err(Error::Parse("prefix entries are {re, im}".into())),
            })
            .collect::<Result<_>>()?;
        let polya = serde_json::from_value(get("polya")?.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self {
            instance: json::instance_from_json(get("instance")?)?,
            matrix: json::matrix_from_json(ly)?,
            lee_yang_prefix: prefix,
            polya,
        })
    }

    pub fn digest(&self) -> String {
        json::digest(&self.to_json())
    }
}

/// Rational `p/d` with `d` in `1..=max_den` and `|p/d| <= bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let d = rng.random_range(1..=max_den);
    rat(rng.random_range(-bound * d..=bound * d), d)
}

pub fn random_positive_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let d = rng.random_range(1..=max_den);
    rat(rng.random_range(1..=bound * d), d)
}

/// `G = lead * prod (z - r)` with up to `max_roots` rational roots in
/// `[-8, 8]`; repeats and zeros at the origin occur.
pub fn random_g<R: Rng>(rng: &mut R, max_roots: usize) -> RealRootedG {
    let m = rng.random_range(0..=max_roots);
    let mut roots: Vec<Rational> = Vec::with_capacity(m);
    for _ in 0..m {
        if !roots.is_empty() && rng.random_bool(0.15) {
            let k = rng.random_range(0..roots.len());
            roots.push(roots[k].clone());
        } else {
            roots.push(random_rational(rng, 8, 4));
        }
    }
    let mut lead = random_rational(rng, 4, 3);
    if lead.is_zero() {
        lead = int(1);
    }
    RealRootedG::from_leading_and_roots(lead, &roots).expect("nonzero leading coefficient")
}

pub fn random_instance<R: Rng>(rng: &mut R, n: usize, degree_max: usize, g_roots_max: usize) -> Instance {
    let g = random_g(rng, g_roots_max);
    let a = (0..n).map(|_| random_positive_rational(rng, 4, 4)).collect();
    let omegas = (0..n)
        .map(|_| {
            let d = rng.random_range(1..=degree_max);
            hb_random(d, rng.random()).expect("degree >= 1")
        })
        .collect();
    Instance::new(g, a, omegas).expect("generated instance is valid")
}

/// Symmetric matrix with off-diagonal entries `p/d`, `|p| < d`; the diagonal
/// is zero.
pub fn random_coupling_matrix<R: Rng>(rng: &mut R, n: usize) -> CouplingMatrix {
    let mut a = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = rng.random_range(2..=16);
            let v = rat(rng.random_range(-(d - 1)..=d - 1), d);
            a[i][j] = v.clone();
            a[j][i] = v;
        }
    }
    CouplingMatrix::new(a).expect("entries in (-1, 1)")
}

/// Real-rooted float `F` of degree 1..=6 with a Pólya-shift parameter set; in
/// a quarter of the cases `b` is chosen so that `cos(b + alpha a) = 0` up to
/// rounding.
pub fn random_polya_case<R: Rng>(rng: &mut R) -> PolyaCase {
    let degree = rng.random_range(1..=6);
    let roots = (0..degree).map(|_| rng.random_range(-5.0..5.0)).collect();
    let lead = rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let a = rng.random_range(0.1..2.0);
    let alpha = if rng.random_bool(0.5) { 0.0 } else { rng.random_range(-1.0..1.0) };
    let b = if rng.random_bool(0.25) {
        let k = rng.random_range(-2i32..=2) as f64;
        FRAC_PI_2 + k * PI - alpha * a
    } else {
        rng.random_range(-PI..PI)
    };
    PolyaCase { lead, roots, a, b, alpha }
}

pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn generate_trial(cfg: &FuzzConfig, index: usize) -> TrialInput {
    let mut rng = trial_rng(cfg.seed, index);
    let n = rng.random_range(cfg.n_min..=cfg.n_max);
    let instance = random_instance(&mut rng, n, cfg.degree_max, cfg.g_roots_max);
    let matrix = random_coupling_matrix(&mut rng, n);
    let lee_yang_prefix =
        (0..n - 1).map(|_| ComplexF::from_polar(rng.random_range(1.0..3.0), rng.random_range(-PI..PI))).collect();
    let polya = random_polya_case(&mut rng);
    TrialInput { instance, matrix, lee_yang_prefix, polya }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Float residuals of one trial; `None` where the check did not run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// Largest `|Im|` over float roots of `H_n`.
    pub hn_imag: Option<f64>,
    /// Largest `||t| - 1|` over float roots of the circle polynomial.
    pub circle: Option<f64>,
    /// Largest `||t| - 1|` over float roots of the Lee-Yang polynomial.
    pub lee_yang: Option<f64>,
    /// Largest `|Im|` over float roots of the Pólya shift.
    pub polya_imag: Option<f64>,
    /// Relative error of the Pólya shift's leading coefficient.
    pub polya_lead: Option<f64>,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        [self.hn_imag, self.circle, self.lee_yang, self.polya_imag, self.polya_lead]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub digest: String,
    pub n: usize,
    pub omega_degrees: Vec<usize>,
    pub g_zero_count: usize,
    pub verdict: Verdict,
    /// Real-rootedness certificate of `H_n(0, z)`.
    pub certificate: Option<Certificate>,
    pub checks: Vec<Check>,
    pub residuals: Residuals,
    pub sturm_bits: u64,
    pub elapsed_ms: f64,
    /// Full input, present on FAIL records.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, false, format!("error: {e}"));
                None
            }
        }
    }
}

fn max_imag_of_squarefree(h: &ExactPoly, policy: &TolerancePolicy) -> Result<f64> {
    if h.degree().unwrap_or(0) == 0 {
        return Ok(0.0);
    }
    squarefree_float_roots(h, policy)?.max_imag_residual()
}

fn max_circle_of_squarefree(h: &ExactPoly, policy: &TolerancePolicy) -> Result<f64> {
    if h.degree().unwrap_or(0) == 0 {
        return Ok(0.0);
    }
    squarefree_float_roots(h, policy)?.max_circle_residual()
}

/// Checks for `H_n(0, z)`: both paths agree, coefficients are real, and the
/// result certifies real-rooted. Returns the polynomial when it was built.
fn check_hn(
    c: &mut Checker,
    inst: &Instance,
    mode: FuzzMode,
    cfg: &FuzzConfig,
    policy: &TolerancePolicy,
    limits: &Limits,
    out: &mut TrialRecord,
) {
    let Some(subset) = c.result("hn_build", build_hn_subset(inst, limits)) else { return };
    if mode.exact() {
        if let Some(rec) = c.result("hn_dual_path", build_hn_recursive(inst, &Rational::zero(), limits)) {
            c.record("hn_dual_path", rec == subset, "subset and recursive expansions");
        }
        c.record("hn_real_coefficients", subset.is_real(), "H* = H");
        if let Some((cert, stats)) = c.result("hn_certificate", certify_real_rooted_with_stats(&subset)) {
            c.record("hn_certificate", cert.passed(), format!("{} of {} real roots", cert.count, cert.degree));
            out.sturm_bits = out.sturm_bits.max(stats.sturm_bits);
            out.certificate = Some(cert);
        }
    }
    if mode.float() {
        if let Some(r) = c.result("hn_float", max_imag_of_squarefree(&subset, policy)) {
            c.record("hn_float", r < cfg.float_tol, format!("max |Im| = {r:.3e}"));
            out.residuals.hn_imag = Some(r);
        }
    }
}

fn check_circle(
    c: &mut Checker,
    inst: &Instance,
    mode: FuzzMode,
    cfg: &FuzzConfig,
    policy: &TolerancePolicy,
    limits: &Limits,
    out: &mut TrialRecord,
) {
    let Some(p) = c.result("circle_build", circle_poly(inst.g(), inst.a(), limits)) else { return };
    if mode.exact() {
        let n = inst.n();
        let coeffs = p.coeffs();
        let symmetric = coeffs.len() == n + 1 && (0..=n).all(|j| coeffs[j] == coeffs[n - j].conj());
        c.record("circle_self_inversive", symmetric, "c_j = conj(c_{n-j})");
        if let Some((cert, stats)) = c.result("circle_certificate", certify_unit_circle_with_stats(&p)) {
            c.record("circle_certificate", cert.passed(), format!("{} of {} on the circle", cert.count, cert.degree));
            out.sturm_bits = out.sturm_bits.max(stats.sturm_bits);
        }
    }
    if mode.float() {
        if let Some(r) = c.result("circle_float", max_circle_of_squarefree(&p, policy)) {
            c.record("circle_float", r < cfg.float_tol, format!("max ||t| - 1| = {r:.3e}"));
            out.residuals.circle = Some(r);
        }
    }
}

fn check_lee_yang(
    c: &mut Checker,
    input: &TrialInput,
    mode: FuzzMode,
    cfg: &FuzzConfig,
    policy: &TolerancePolicy,
    limits: &Limits,
    out: &mut TrialRecord,
) {
    let Some(p) = c.result("lee_yang_build", lee_yang_poly(&input.matrix, limits)) else { return };
    if mode.exact() {
        if let Some((cert, stats)) = c.result("lee_yang_certificate", certify_unit_circle_with_stats(&p)) {
            c.record("lee_yang_certificate", cert.passed(), format!("{} of {} on the circle", cert.count, cert.degree));
            out.sturm_bits = out.sturm_bits.max(stats.sturm_bits);
        }
    }
    if mode.float() {
        if let Some(r) = c.result("lee_yang_float", max_circle_of_squarefree(&p, policy)) {
            c.record("lee_yang_float", r < cfg.float_tol, format!("max ||t| - 1| = {r:.3e}"));
            out.residuals.lee_yang = Some(r);
        }
        if !input.lee_yang_prefix.is_empty() {
            if let Some(x) =
                c.result("lee_yang_implication", lee_yang_solve_last(&input.matrix, &input.lee_yang_prefix))
            {
                let ok = x.norm() <= 1.0 + cfg.float_tol;
                c.record("lee_yang_implication", ok, format!("|x_n| = {:.12}", x.norm()));
            }
        }
    }
}

fn check_polya(c: &mut Checker, case: &PolyaCase, cfg: &FuzzConfig, policy: &TolerancePolicy, out: &mut TrialRecord) {
    let f = case.polynomial();
    let Some(h) = c.result("polya_build", polya_shift(&f, case.a, case.b, case.alpha)) else { return };
    let n = f.degree().expect("F is nonzero");
    let cos = case.phase().cos();
    let drops = cos.abs() < DEGREE_DROP_COS_TOL;
    let expected_degree = if drops { n - 1 } else { n };
    c.record(
        "polya_degree",
        h.degree() == Some(expected_degree),
        format!("degree {:?}, expected {expected_degree}", h.degree()),
    );
    let (got, want) = if drops {
        let sin = case.phase().sin();
        let d = 2.0 * f.coeff(n - 1).re * cos - 2.0 * case.a * n as f64 * f.coeff(n).re * sin;
        (h.coeff(n - 1).re, d)
    } else {
        (h.coeff(n).re, 2.0 * f.coeff(n).re * cos)
    };
    let rel = (got - want).abs() / want.abs().max(f64::MIN_POSITIVE);
    c.record("polya_leading", rel < 1e-10, format!("relative error {rel:.3e}"));
    out.residuals.polya_lead = Some(rel);
    if h.degree().unwrap_or(0) > 0 {
        if let Some(roots) = c.result("polya_roots", find_roots(&h, policy)) {
            if let Some(r) = c.result("polya_roots", roots.max_imag_residual()) {
                c.record("polya_roots", r < cfg.float_tol, format!("max |Im| = {r:.3e}"));
                out.residuals.polya_imag = Some(r);
            }
        }
    }
}

/// Evaluates one input. Deterministic apart from `elapsed_ms`.
pub fn evaluate_trial(
    index: usize,
    input: &TrialInput,
    cfg: &FuzzConfig,
    policy: &TolerancePolicy,
    limits: &Limits,
) -> TrialRecord {
    let start = Instant::now();
    let inst = &input.instance;
    let mut out = TrialRecord {
        index,
        digest: input.digest(),
        n: inst.n(),
        omega_degrees: inst.omegas().iter().map(|w| w.degree()).collect(),
        g_zero_count: inst.g().zero_count(),
        verdict: Verdict::Pass,
        certificate: None,
        checks: vec![],
        residuals: Residuals::default(),
        sturm_bits: 0,
        elapsed_ms: 0.0,
        input: None,
    };
    let mut c = Checker { checks: vec![] };
    check_hn(&mut c, inst, cfg.mode, cfg, policy, limits, &mut out);
    check_circle(&mut c, inst, cfg.mode, cfg, policy, limits, &mut out);
    check_lee_yang(&mut c, input, cfg.mode, cfg, policy, limits, &mut out);
    if cfg.mode.float() {
        check_polya(&mut c, &input.polya, cfg, policy, &mut out);
    }
    out.checks = c.checks;
    if out.checks.iter().any(|k| !k.passed) {
        out.verdict = Verdict::Fail;
        out.input = Some(input.to_json());
    }
    out.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    out
}

/// Aggregate over trials sharing `(n, max deg w, zero count of G)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stratum {
    pub n: usize,
    pub max_omega_degree: usize,
    pub g_zero_count: usize,
    pub trials: usize,
    pub pass_count: usize,
    pub worst_sturm_bits: u64,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub pass_count: usize,
    pub fail_count: usize,
    pub max_residual: f64,
    pub worst_sturm_bits: u64,
    pub strata: Vec<Stratum>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: FuzzConfig,
    pub policy: TolerancePolicy,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.fail_count == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }
}

fn summarize(records: &[TrialRecord]) -> Summary {
    let mut strata: BTreeMap<(usize, usize, usize), Stratum> = BTreeMap::new();
    for r in records {
        let deg = r.omega_degrees.iter().copied().max().unwrap_or(0);
        let s = strata.entry((r.n, deg, r.g_zero_count)).or_insert(Stratum {
            n: r.n,
            max_omega_degree: deg,
            g_zero_count: r.g_zero_count,
            trials: 0,
            pass_count: 0,
            worst_sturm_bits: 0,
            max_residual: 0.0,
        });
        s.trials += 1;
        s.pass_count += usize::from(r.verdict == Verdict::Pass);
        s.worst_sturm_bits = s.worst_sturm_bits.max(r.sturm_bits);
        s.max_residual = s.max_residual.max(r.residuals.max());
    }
    let pass_count = records.iter().filter(|r| r.verdict == Verdict::Pass).count();
    Summary {
        trials: records.len(),
        pass_count,
        fail_count: records.len() - pass_count,
        max_residual: records.iter().map(|r| r.residuals.max()).fold(0.0, f64::max),
        worst_sturm_bits: records.iter().map(|r| r.sturm_bits).max().unwrap_or(0),
        strata: strata.into_values().collect(),
    }
}

/// Runs `cfg.trials` trials on all available cores. Records come back in
/// trial-index order regardless of scheduling.
pub fn run_fuzz(cfg: &FuzzConfig, policy: &TolerancePolicy, limits: &Limits) -> Result<Report> {
    cfg.validate(limits)?;
    policy.validate()?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cfg.trials);
    let mut slots: Vec<Option<TrialRecord>> = vec![None; cfg.trials];
    std::thread::scope(|scope| {
        let chunks: Vec<_> = slots
            .chunks_mut(cfg.trials.div_ceil(workers))
            .enumerate()
            .map(|(w, chunk)| (w * cfg.trials.div_ceil(workers), chunk))
            .collect();
        for (base, chunk) in chunks {
            scope.spawn(move || {
                for (k, slot) in chunk.iter_mut().enumerate() {
                    let input = generate_trial(cfg, base + k);
                    *slot = Some(evaluate_trial(base + k, &input, cfg, policy, limits));
                }
            });
        }
    });
    let records: Vec<TrialRecord> = slots.into_iter().map(|r| r.expect("every slot is filled")).collect();
    let summary = summarize(&records);
    Ok(Report { config: *cfg, policy: *policy, records, summary })
}

/// Re-evaluates the stored input of a record.
pub fn replay_record(
    record: &TrialRecord,
    cfg: &FuzzConfig,
    policy: &TolerancePolicy,
    limits: &Limits,
) -> Result<TrialRecord> {
    let input = match &record.input {
        Some(v) => TrialInput::from_json(v)?,
        None => generate_trial(cfg, record.index),
    };
    Ok(evaluate_trial(record.index, &input, cfg, policy, limits))
}

/// Replays every FAIL record of a report; a report without failures
/// replays every record.
pub fn replay_report(report: &Report, limits: &Limits) -> Result<Vec<TrialRecord>> {
    let targets: Vec<&TrialRecord> =
        if report.passed() { report.records.iter().collect() } else { report.failures().collect() };
    targets.into_iter().map(|r| replay_record(r, &report.config, &report.policy, limits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> FuzzConfig {
        FuzzConfig { trials: 12, n_max: 3, degree_max: 2, ..FuzzConfig::default() }
    }

    #[test]
    fn deterministic_from_seed() {
        let cfg = small();
        for i in 0..4 {
            assert_eq!(generate_trial(&cfg, i), generate_trial(&cfg, i));
        }
        assert_ne!(generate_trial(&cfg, 0).digest(), generate_trial(&cfg, 1).digest());
        let other = FuzzConfig { seed: 2, ..cfg };
        assert_ne!(generate_trial(&cfg, 0).digest(), generate_trial(&other, 0).digest());
    }

    #[test]
    fn input_json_round_trip() {
        let input = generate_trial(&small(), 3);
        let back = TrialInput::from_json(&input.to_json()).unwrap();
        assert_eq!(back, input);
        assert_eq!(back.digest(), input.digest());
    }

    #[test]
    fn small_run_passes_and_counts_add_up() {
        let report = run_fuzz(&small(), &TolerancePolicy::default(), &Limits::default()).unwrap();
        assert_eq!(report.summary.pass_count + report.summary.fail_count, report.summary.trials);
        assert!(report.passed(), "{:#?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.summary.strata.iter().map(|s| s.trials).sum::<usize>(), 12);
        assert!(report.records.iter().enumerate().all(|(i, r)| r.index == i));
    }

    #[test]
    fn replay_reproduces_certificates() {
        let report =
            run_fuzz(&FuzzConfig { trials: 4, ..small() }, &TolerancePolicy::default(), &Limits::default()).unwrap();
        for (orig, again) in report.records.iter().zip(replay_report(&report, &Limits::default()).unwrap()) {
            assert_eq!(orig.digest, again.digest);
            assert_eq!(orig.certificate, again.certificate);
            assert_eq!(orig.verdict, again.verdict);
        }
    }

    #[test]
    fn failing_record_carries_its_input() {
        // a float tolerance of zero cannot be met by any rounded root
        let cfg = FuzzConfig { trials: 1, float_tol: f64::MIN_POSITIVE, ..small() };
        let input = generate_trial(&cfg, 0);
        let rec = evaluate_trial(0, &input, &cfg, &TolerancePolicy::default(), &Limits::default());
        if rec.verdict == Verdict::Fail {
            let again = replay_record(&rec, &cfg, &TolerancePolicy::default(), &Limits::default()).unwrap();
            assert_eq!(again.verdict, Verdict::Fail);
            assert_eq!(again.checks, rec.checks);
            assert!(rec.input.is_some());
        }
    }

    #[test]
    fn config_validation() {
        let l = Limits::default();
        assert!(FuzzConfig { n_max: 13, ..small() }.validate(&l).is_err());
        assert!(FuzzConfig { n_min: 0, ..small() }.validate(&l).is_err());
        assert!(FuzzConfig { n_min: 4, n_max: 3, ..small() }.validate(&l).is_err());
        assert!(FuzzConfig { trials: 0, ..small() }.validate(&l).is_err());
        assert!(FuzzConfig { degree_max: 0, ..small() }.validate(&l).is_err());
        assert!(small().validate(&l).is_ok());
    }
}
